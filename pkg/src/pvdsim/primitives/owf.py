from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from ..qstate import BitString

TOY_MAX_N = 16


@dataclass(frozen=True)
class OwfSpec:
    """A function {0,1}^n -> {0,1}^m; ``table`` is set when it is enumerable."""

    name: str
    n: int
    m: int
    _fn: Callable[[int], int] = field(repr=False, compare=False)
    table: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    seed: Optional[int] = None

    def eval(self, x: BitString) -> BitString:
        if x.n != self.n:
            raise ValueError(f"{self.name} takes {self.n}-bit inputs, got {x.n}")
        return BitString(self.m, self._fn(x.value))

    __call__ = eval

    @property
    def enumerable(self) -> bool:
        return self.table is not None

    @cached_property
    def _inverse(self) -> dict[int, tuple[int, ...]]:
        if self.table is None:
            raise ValueError(f"{self.name} is not enumerable")
        inv: dict[int, list[int]] = {}
        for x, y in enumerate(self.table.tolist()):
            inv.setdefault(y, []).append(x)
        return {y: tuple(xs) for y, xs in inv.items()}

    def preimages(self, y: BitString) -> list[BitString]:
        """All x with F(x) = y, in increasing order (enumerable specs only)."""
        return [BitString(self.n, x) for x in self._inverse.get(y.value, ())]

    def colliding_pairs(self) -> int:
        return sum(len(xs) * (len(xs) - 1) // 2 for xs in self._inverse.values())


def owf_hash(n: int, m: int) -> OwfSpec:
    """SHAKE-256 of the input, domain-separated by (n, m), cut to m bits."""
    if n < 8 or m < 8:
        raise ValueError(f"hash OWF needs n, m >= 8 (got n={n}, m={m})")
    prefix = b"pvdsim/owf" + struct.pack(">II", n, m)
    out_len = (m + 7) // 8
    in_len = (n + 7) // 8
    shift = 8 * out_len - m

    def fn(x: int) -> int:
        digest = hashlib.shake_256(prefix + x.to_bytes(in_len, "big")).digest(out_len)
        return int.from_bytes(digest, "big") >> shift

    return OwfSpec(f"hash(n={n},m={m})", n, m, fn)


def owf_toy(n: int, m: int, seed: int) -> OwfSpec:
    """Seeded random lookup table with 2**n entries; brute-force invertible."""
    if not 1 <= n <= TOY_MAX_N:
        raise ValueError(f"toy OWF needs 1 <= n <= {TOY_MAX_N}, got {n}")
    if not 1 <= m <= 64:
        raise ValueError(f"toy OWF needs 1 <= m <= 64, got {m}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, n, m])))
    table = rng.integers(0, np.iinfo(np.uint64).max, size=1 << n, dtype=np.uint64,
                         endpoint=True)
    if m < 64:
        table &= np.uint64((1 << m) - 1)
    table.setflags(write=False)
    values = table.tolist()
    return OwfSpec(f"toy(n={n},m={m},seed={seed})", n, m, values.__getitem__, table, seed)
