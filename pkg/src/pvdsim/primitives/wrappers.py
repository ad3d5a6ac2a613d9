"""Semantic wrappers: hide the string z = x0 xor x1, pass everything else through.

A wrapper is the operation that produces the adversary's input from
(z, aux0, aux1, quantum part). The classical output depends only on z and
the wrapper's randomness; aux values and the quantum part are forwarded
as-is.
"""
from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from typing import Any, Optional

from ..qstate import BitString
from ..randomness import Rng, random_bits
from .encoding import pack
from .pke import PkeSpec

COMMIT_NONCE_BITS = 256


@dataclass(frozen=True)
class Hidden:
    payload: bytes
    opening: Optional[bytes] = None


@dataclass(frozen=True)
class AdversaryInput:
    payload: bytes
    aux0: Any
    aux1: Any
    quantum: Any


class PkeWrapper:
    """Encrypt z under the underlying scheme."""

    kind = "pke"

    def __init__(self, pke: PkeSpec, pk):
        self.pke = pke
        self.pk = pk

    def hide(self, z: BitString, rng: Rng) -> Hidden:
        return Hidden(self.pke.encrypt(self.pk, z, rng))


class CommitmentWrapper:
    """Hash commitment SHA-256(tag || nonce || n || z).

    Computationally binding and hiding in the random-oracle sense only; no
    statistical binding is claimed.
    """

    kind = "commit"

    def hide(self, z: BitString, rng: Rng) -> Hidden:
        nonce = random_bits(rng, COMMIT_NONCE_BITS).to_bytes(COMMIT_NONCE_BITS // 8, "big")
        return Hidden(pack(b"C", commit_digest(z, nonce)), opening=nonce)

    @staticmethod
    def verify(payload: bytes, z: BitString, opening: bytes) -> bool:
        return payload == pack(b"C", commit_digest(z, opening))


def commit_digest(z: BitString, nonce: bytes) -> bytes:
    return hashlib.sha256(b"pvdsim/com" + nonce + struct.pack(">I", z.n) + z.to_bytes()).digest()


class TransparentWrapper:
    """Test stub: the payload is z itself."""

    kind = "transparent"

    def hide(self, z: BitString, rng: Rng) -> Hidden:
        return Hidden(pack(b"Z", struct.pack(">I", z.n) + z.to_bytes()))


class ZeroingWrapper:
    """Run another wrapper on 0^n instead of z, with the same randomness use."""

    def __init__(self, inner):
        self.inner = inner
        self.kind = f"{inner.kind}-zero"

    def hide(self, z: BitString, rng: Rng) -> Hidden:
        return self.inner.hide(BitString.zeros(z.n), rng)


SemanticWrapper = PkeWrapper | CommitmentWrapper | TransparentWrapper | ZeroingWrapper


def wrap(semantic, z: BitString, aux0, aux1, quantum, rng: Rng) -> AdversaryInput:
    return AdversaryInput(semantic.hide(z, rng).payload, aux0, aux1, quantum)
