"""Public-key encryption with publicly-verifiable deletion.

Encrypting a bit b samples x0 != x1, publishes vk = (F(x0), F(x1)) (or
states phi_x0, phi_x1 for a one-way state generator) and outputs
(Enc(pk, x0 xor x1), (|x0> + (-1)^b |x1>)/sqrt(2)). Decryption measures in
the Hadamard basis and returns (x0 xor x1) . w; deletion measures in the
computational basis and the outcome is the certificate, which anyone holding
vk can check.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional, Union

from .primitives import (CommitmentWrapper, GroupPke, GroupPublicKey, GroupSecretKey,
                         OwfSpec, OwsgSpec, PkeWrapper, TransparentKey, TransparentPke,
                         decode_bits, encode_bits, pack, unpack)
from .primitives.encoding import DecodeError
from .primitives.wrappers import AdversaryInput
from .qstate import (BitString, DenseState, TwoBranchState, computational_measure, decrypt_bit,
                     hadamard_measure)
from .randomness import Rng, random_bits


class ConsumedError(RuntimeError):
    """A quantum part or verification-key copy was used after being measured."""


class SerializationRefused(RuntimeError):
    pass


class QuantumPart:
    """Consume-once holder for a ciphertext's two-branch state.

    ``inspect`` exists for tests only and is refused unless the part was
    created in test mode.
    """

    def __init__(self, state: TwoBranchState, test_mode: bool = False,
                 labels: Optional[tuple[BitString, BitString]] = None):
        self._state: Optional[TwoBranchState] = state
        self._lock = threading.Lock()
        self.n = state.n
        self.test_mode = test_mode
        self._record = state if test_mode else None
        self._labels = (labels or state.support()) if test_mode else None

    @property
    def consumed(self) -> bool:
        return self._state is None

    def take(self) -> TwoBranchState:
        with self._lock:
            if self._state is None:
                raise ConsumedError("quantum part already consumed")
            state, self._state = self._state, None
        return state

    def inspect(self) -> TwoBranchState:
        if not self.test_mode:
            raise PermissionError("introspection is only available in test mode")
        return self._record

    def labels(self) -> tuple[BitString, BitString]:
        """(x0, x1) in sampling order, i.e. x_i is the preimage of y_i (test mode only)."""
        if not self.test_mode:
            raise PermissionError("introspection is only available in test mode")
        return self._labels

    def __repr__(self):
        status = "consumed" if self.consumed else "live"
        return f"QuantumPart(n={self.n}, {status})"


@dataclass(frozen=True)
class PvdKeyPair:
    pk: Union[GroupPublicKey, TransparentKey]
    sk: Union[GroupSecretKey, TransparentKey]


@dataclass(frozen=True)
class ClassicalVerificationKey:
    y0: BitString
    y1: BitString
    owf: OwfSpec = field(repr=False, compare=False)


class QuantumVerificationKey:
    """(phi_x0^{⊗t}, phi_x1^{⊗t}); each verification sub-check uses one copy."""

    def __init__(self, owsg: OwsgSpec, phi0: DenseState, phi1: DenseState, t: int = 1):
        if t < 1:
            raise ValueError("copy count t must be >= 1")
        self.owsg = owsg
        self.t = t
        self._copies = [[phi0] * t, [phi1] * t]
        self._lock = threading.Lock()

    def remaining(self) -> tuple[int, int]:
        return len(self._copies[0]), len(self._copies[1])

    def take_copy(self, i: int) -> DenseState:
        with self._lock:
            if not self._copies[i]:
                raise ConsumedError(f"no copies of phi_x{i} left (t={self.t})")
            return self._copies[i].pop()

    def peek(self, i: int) -> DenseState:
        """The stored state itself, for exact probability computations."""
        if not self._copies[i]:
            raise ConsumedError(f"no copies of phi_x{i} left (t={self.t})")
        return self._copies[i][-1]

    def __repr__(self):
        return (f"QuantumVerificationKey(m={self.owsg.m}, t={self.t}, "
                f"remaining={self.remaining()})")


VerificationKey = Union[ClassicalVerificationKey, QuantumVerificationKey]


@dataclass(frozen=True)
class PvdCiphertext:
    classical: bytes
    quantum: QuantumPart


@dataclass(frozen=True)
class DeletionCertificate:
    pi: BitString

    @property
    def n(self) -> int:
        return self.pi.n


@dataclass(frozen=True)
class Compiled:
    """Output of ``compile``: what the receiver holds, plus the sender's opening."""

    payload: AdversaryInput
    opening: Optional[bytes] = None


def scheme_for(key) -> Union[GroupPke, TransparentPke]:
    if isinstance(key, (GroupPublicKey, GroupSecretKey)):
        return GroupPke(key.params)
    if isinstance(key, TransparentKey):
        return TransparentPke()
    raise TypeError(f"unsupported key type {type(key).__name__}")


def sample_branches(n: int, rng: Rng) -> tuple[BitString, BitString]:
    """x0, x1 uniform on {0,1}^n conditioned on x0 != x1 (resample on collision)."""
    if n == 1:
        x0 = random_bits(rng, 1)
        return BitString(1, x0), BitString(1, 1 - x0)
    x0 = random_bits(rng, n)
    x1 = random_bits(rng, n)
    while x1 == x0:
        x1 = random_bits(rng, n)
    return BitString(n, x0), BitString(n, x1)


def compile(wrapper, primitive: Union[OwfSpec, OwsgSpec], b: int, rng: Rng, t: int = 1,
            test_mode: bool = False) -> tuple[VerificationKey, Compiled]:
    """Generic compiler: vk plus wrapper(x0 xor x1, aux0, aux1, two-branch state)."""
    if b not in (0, 1):
        raise ValueError(f"plaintext must be a bit, got {b!r}")
    if not isinstance(primitive, (OwfSpec, OwsgSpec)):
        raise TypeError(f"unsupported primitive {type(primitive).__name__}")
    x0, x1 = sample_branches(primitive.n, rng)
    if isinstance(primitive, OwfSpec):
        vk = ClassicalVerificationKey(primitive.eval(x0), primitive.eval(x1), primitive)
        aux0, aux1 = vk.y0, vk.y1
    else:
        vk = QuantumVerificationKey(primitive, primitive.stategen(x0), primitive.stategen(x1), t)
        aux0, aux1 = vk.peek(0), vk.peek(1)
    # (|x1> + (-1)^b |x0>) = (-1)^b (|x0> + (-1)^b |x1>): canonical order only drops a global phase
    quantum = QuantumPart(TwoBranchState(x0, x1, b), test_mode, labels=(x0, x1))
    hidden = wrapper.hide(x0 ^ x1, rng)
    return vk, Compiled(AdversaryInput(hidden.payload, aux0, aux1, quantum), hidden.opening)


def pv_gen(pke, rng: Rng) -> PvdKeyPair:
    pk, sk = pke.keygen(rng)
    return PvdKeyPair(pk, sk)


def pv_enc(pk, b: int, owf: OwfSpec, rng: Rng,
           test_mode: bool = False) -> tuple[ClassicalVerificationKey, PvdCiphertext]:
    vk, out = compile(PkeWrapper(scheme_for(pk), pk), owf, b, rng, test_mode=test_mode)
    return vk, PvdCiphertext(out.payload.payload, out.payload.quantum)


def pv_enc_owsg(pk, b: int, owsg: OwsgSpec, rng: Rng, t: int = 1,
                test_mode: bool = False) -> tuple[QuantumVerificationKey, PvdCiphertext]:
    vk, out = compile(PkeWrapper(scheme_for(pk), pk), owsg, b, rng, t=t, test_mode=test_mode)
    return vk, PvdCiphertext(out.payload.payload, out.payload.quantum)


def pv_dec(sk, ct: PvdCiphertext, rng: Rng) -> int:
    z = scheme_for(sk).decrypt(sk, ct.classical)
    w = hadamard_measure(ct.quantum.take(), rng)
    return decrypt_bit(z, w)


def pv_del(ct: PvdCiphertext, rng: Rng) -> DeletionCertificate:
    return DeletionCertificate(computational_measure(ct.quantum.take(), rng))


def matching_image(vk: ClassicalVerificationKey, pi: BitString) -> Optional[int]:
    """The index i with F(pi) = y_i (0 preferred if y0 = y1), or None."""
    if pi.n != vk.owf.n:
        return None
    y = vk.owf.eval(pi)
    if y == vk.y0:
        return 0
    if y == vk.y1:
        return 1
    return None


def pv_vrfy(vk: VerificationKey, cert: DeletionCertificate, rng: Optional[Rng] = None) -> bool:
    if isinstance(vk, ClassicalVerificationKey):
        return matching_image(vk, cert.pi) is not None
    if isinstance(vk, QuantumVerificationKey):
        if rng is None:
            raise ValueError("quantum verification keys need an rng")
        return pv_vrfy_owsg(vk, cert, rng)
    raise TypeError(f"unsupported verification key {type(vk).__name__}")


def pv_vrfy_owsg(vk: QuantumVerificationKey, cert: DeletionCertificate, rng: Rng) -> bool:
    if cert.pi.n != vk.owsg.n:
        return False
    for i in (0, 1):
        if vk.owsg.ver(cert.pi, vk.take_copy(i), rng):
            return True
    return False


def owsg_accept_branches(vk: QuantumVerificationKey, pi: BitString) -> list[tuple[Optional[int], float]]:
    """Exact outcome distribution of ``pv_vrfy_owsg``: (accepted index or None, probability)."""
    f0 = vk.owsg.accept_probability(pi, vk.peek(0))
    f1 = vk.owsg.accept_probability(pi, vk.peek(1))
    out = [(0, f0), (1, (1 - f0) * f1), (None, (1 - f0) * (1 - f1))]
    return [(i, p) for i, p in out if p > 0]


pv_dec_owsg = pv_dec
pv_del_owsg = pv_del


# -- serialization ----------------------------------------------------------

def serialize_vk(vk: VerificationKey) -> bytes:
    if isinstance(vk, QuantumVerificationKey):
        raise SerializationRefused("quantum verification keys cannot be serialised")
    return pack(b"V", encode_bits(vk.y0), encode_bits(vk.y1))


def deserialize_vk(data: bytes, owf: OwfSpec) -> ClassicalVerificationKey:
    _, fields = unpack(data, b"V")
    if len(fields) != 2:
        raise DecodeError("verification key must have 2 fields")
    return ClassicalVerificationKey(decode_bits(fields[0]), decode_bits(fields[1]), owf)


def serialize_ciphertext(ct: PvdCiphertext, include_quantum: bool = False) -> bytes:
    """Classical part only, unless the ciphertext is in test mode and asks for the state."""
    if not include_quantum:
        return pack(b"E", ct.classical)
    if not ct.quantum.test_mode:
        raise SerializationRefused("quantum parts are only serialised in test mode")
    st = ct.quantum.inspect()
    return pack(b"Q", ct.classical, encode_bits(st.x0), encode_bits(st.x1), bytes([st.phase]))


def deserialize_ciphertext(data: bytes) -> tuple[bytes, Optional[TwoBranchState]]:
    tag, fields = unpack(data)
    if tag == b"E" and len(fields) == 1:
        return fields[0], None
    if tag == b"Q" and len(fields) == 4:
        state = TwoBranchState(decode_bits(fields[1]), decode_bits(fields[2]), fields[3][0])
        return fields[0], state
    raise DecodeError(f"unrecognised ciphertext record (tag {tag!r})")


__all__ = [
    "ClassicalVerificationKey", "Compiled", "CommitmentWrapper", "ConsumedError",
    "DeletionCertificate", "PvdCiphertext", "PvdKeyPair", "QuantumPart",
    "QuantumVerificationKey", "SerializationRefused", "compile", "deserialize_ciphertext",
    "deserialize_vk", "matching_image", "owsg_accept_branches", "pv_dec", "pv_dec_owsg",
    "pv_del", "pv_del_owsg", "pv_enc", "pv_enc_owsg", "pv_gen", "pv_vrfy", "pv_vrfy_owsg",
    "sample_branches", "scheme_for", "serialize_ciphertext", "serialize_vk",
]
