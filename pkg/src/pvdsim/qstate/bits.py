from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class BitString:
    """Fixed-length bit string.

    ``value`` stores the bits big-endian: the first bit is the most
    significant, so ordering by ``(n, value)`` is lexicographic order of the
    bit sequence and ``value`` doubles as the computational-basis index.
    """

    n: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"bit strings need length >= 1, got {self.n}")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitString":
        return cls.from_str("".join("1" if b else "0" for b in bits))

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(n, 0)

    @classmethod
    def from_bytes(cls, data: bytes, n: int) -> "BitString":
        return cls(n, int.from_bytes(data, "big") & ((1 << n) - 1))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.n - 1 - i)) & 1 for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.bits)

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")

    def _check(self, other: "BitString") -> None:
        if not isinstance(other, BitString):
            raise TypeError(f"expected BitString, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "BitString") -> "BitString":
        self._check(other)
        return BitString(self.n, self.value ^ other.value)

    def dot(self, other: "BitString") -> int:
        """Inner product over GF(2)."""
        self._check(other)
        return (self.value & other.value).bit_count() & 1

    def to_bytes(self) -> bytes:
        return self.value.to_bytes((self.n + 7) // 8, "big")

    def is_zero(self) -> bool:
        return self.value == 0


def parity(x: int) -> int:
    return x.bit_count() & 1


def all_strings(n: int) -> Iterable[BitString]:
    for v in range(1 << n):
        yield BitString(n, v)
