"""Underlying public-key encryption schemes.

``GroupPke`` is hashed ElGamal in the order-q subgroup of Z_p^* for a safe
prime p = 2q + 1: pk = g^sk, and a message is masked with SHAKE-256 of the
ephemeral value and the shared secret. ``TransparentPke`` is a correctness
stub whose ciphertext reveals the message; it exists so harness runs can
swap encryption out when hiding is irrelevant.
"""
from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import gmpy2
import sympy

from ..qstate import BitString
from ..randomness import Rng, random_below
from .encoding import DecodeError, bytes_int, decode_bits, encode_bits, int_bytes, pack, unpack

GROUP_TAG = b"G"
TRANSPARENT_TAG = b"T"


@dataclass(frozen=True)
class GroupParams:
    p: int
    q: int
    g: int

    def validate(self) -> "GroupParams":
        if self.p != 2 * self.q + 1:
            raise ValueError("p must equal 2q + 1")
        if not (sympy.isprime(self.q) and sympy.isprime(self.p)):
            raise ValueError("p and q must both be prime")
        if not 1 < self.g < self.p - 1 or pow(self.g, self.q, self.p) != 1:
            raise ValueError("g must generate the order-q subgroup")
        return self

    @property
    def width(self) -> int:
        return (self.p.bit_length() + 7) // 8

    def to_json(self) -> dict:
        return {"p": hex(self.p), "q": hex(self.q), "g": hex(self.g)}

    @classmethod
    def from_json(cls, obj: dict) -> "GroupParams":
        try:
            return cls(*(int(str(obj[k]), 0) for k in ("p", "q", "g"))).validate()
        except KeyError as exc:
            raise ValueError(f"group parameters missing field {exc.args[0]!r}") from None


# 256-bit safe prime, generator 4 (a quadratic residue, so of order q)
SAFE256 = GroupParams(
    p=0x9addb7e07e13b0dddb8e66b68b3c4535f8d74e242a99c6e323d0968a4b4de7fb,
    q=0x4d6edbf03f09d86eedc7335b459e229afc6ba712154ce37191e84b4525a6f3fd,
    g=4,
)

NAMED_GROUPS = {"safe256": SAFE256}


def load_group(source: Union[str, Path, dict]) -> GroupParams:
    """Named group, path to a JSON parameter file, or an already-parsed dict."""
    if isinstance(source, dict):
        return GroupParams.from_json(source)
    if str(source) in NAMED_GROUPS:
        return NAMED_GROUPS[str(source)]
    return GroupParams.from_json(json.loads(Path(source).read_text()))


@dataclass(frozen=True)
class GroupPublicKey:
    params: GroupParams
    h: int

    def to_bytes(self) -> bytes:
        w = self.params.width
        return pack(b"P", *(int_bytes(v, w) for v in (self.params.p, self.params.q,
                                                         self.params.g, self.h)))


@dataclass(frozen=True)
class GroupSecretKey:
    params: GroupParams
    x: int

    def to_bytes(self) -> bytes:
        w = self.params.width
        return pack(b"S", *(int_bytes(v, w) for v in (self.params.p, self.params.q,
                                                         self.params.g, self.x)))


@dataclass(frozen=True)
class TransparentKey:
    def to_bytes(self) -> bytes:
        return pack(b"K")


Key = Union[GroupPublicKey, GroupSecretKey, TransparentKey]


def decode_key(data: bytes) -> Key:
    tag, fields = unpack(data)
    if tag == b"K" and not fields:
        return TransparentKey()
    if tag in (b"P", b"S") and len(fields) == 4:
        p, q, g, v = (bytes_int(f) for f in fields)
        params = GroupParams(p, q, g)
        return GroupPublicKey(params, v) if tag == b"P" else GroupSecretKey(params, v)
    raise DecodeError(f"unrecognised key record (tag {tag!r}, {len(fields)} fields)")


def _powmod(base: int, exp: int, mod: int) -> int:
    return int(gmpy2.powmod(base, exp, mod))


def _mask(u: bytes, shared: bytes, length: int) -> bytes:
    return hashlib.shake_256(b"pvdsim/elgamal" + u + shared).digest(length)


class GroupPke:
    name = "group"

    def __init__(self, params: GroupParams = SAFE256):
        self.params = params

    def keygen(self, rng: Rng) -> tuple[GroupPublicKey, GroupSecretKey]:
        x = 1 + random_below(rng, self.params.q - 1)
        return GroupPublicKey(self.params, _powmod(self.params.g, x, self.params.p)), \
            GroupSecretKey(self.params, x)

    def sample_randomness(self, rng: Rng) -> int:
        return 1 + random_below(rng, self.params.q - 1)

    def encrypt(self, pk: GroupPublicKey, message: BitString, rng: Optional[Rng] = None,
                r: Optional[int] = None) -> bytes:
        if r is None:
            if rng is None:
                raise ValueError("encrypt needs rng or explicit randomness r")
            r = self.sample_randomness(rng)
        prm = pk.params
        u = int_bytes(_powmod(prm.g, r, prm.p), prm.width)
        shared = int_bytes(_powmod(pk.h, r, prm.p), prm.width)
        body = message.to_bytes()
        v = bytes(a ^ b for a, b in zip(body, _mask(u, shared, len(body))))
        return pack(GROUP_TAG, u, struct.pack(">I", message.n), v)

    def decrypt(self, sk: GroupSecretKey, ciphertext: bytes) -> BitString:
        _, fields = unpack(ciphertext, GROUP_TAG)
        if len(fields) != 3:
            raise DecodeError("group ciphertext must have 3 fields")
        u, nbits, v = fields
        prm = sk.params
        shared = int_bytes(_powmod(bytes_int(u), sk.x, prm.p), prm.width)
        body = bytes(a ^ b for a, b in zip(v, _mask(u, shared, len(v))))
        return BitString.from_bytes(body, struct.unpack(">I", nbits)[0])

    def ciphertext_length(self, nbits: int) -> int:
        """Bytes in a ciphertext of an ``nbits`` message: tag, 3 prefixes, u, n, body."""
        return 1 + 3 * 4 + self.params.width + 4 + (nbits + 7) // 8


class TransparentPke:
    name = "transparent"

    def keygen(self, rng: Rng) -> tuple[TransparentKey, TransparentKey]:
        return TransparentKey(), TransparentKey()

    def encrypt(self, pk: TransparentKey, message: BitString, rng: Optional[Rng] = None,
                r: Optional[int] = None) -> bytes:
        return pack(TRANSPARENT_TAG, encode_bits(message))

    def decrypt(self, sk: TransparentKey, ciphertext: bytes) -> BitString:
        _, fields = unpack(ciphertext, TRANSPARENT_TAG)
        if len(fields) != 1:
            raise DecodeError("transparent ciphertext must have 1 field")
        return decode_bits(fields[0])


PkeSpec = Union[GroupPke, TransparentPke]


def pke_group(params: Union[GroupParams, str, Path, dict] = SAFE256) -> GroupPke:
    if not isinstance(params, GroupParams):
        params = load_group(params)
    return GroupPke(params)


def pke_transparent() -> TransparentPke:
    return TransparentPke()
