"""One-way functions, PKE schemes, commitments and one-way state generators."""
from .encoding import DecodeError, decode_bits, encode_bits, pack, unpack
from .owf import OwfSpec, owf_hash, owf_toy
from .owsg import OwsgSpec, owsg_toy
from .pke import (SAFE256, GroupParams, GroupPke, GroupPublicKey, GroupSecretKey, PkeSpec,
                  TransparentKey, TransparentPke, decode_key, load_group, pke_group,
                  pke_transparent)
from .wrappers import (AdversaryInput, CommitmentWrapper, Hidden, PkeWrapper, SemanticWrapper,
                       TransparentWrapper, ZeroingWrapper, wrap)

__all__ = [
    "AdversaryInput", "CommitmentWrapper", "DecodeError", "GroupParams", "GroupPke",
    "GroupPublicKey", "GroupSecretKey", "Hidden", "OwfSpec", "OwsgSpec", "PkeSpec",
    "PkeWrapper", "SAFE256", "SemanticWrapper", "TransparentKey", "TransparentPke",
    "TransparentWrapper", "ZeroingWrapper", "decode_bits", "decode_key", "encode_bits", "load_group",
    "owf_hash", "owf_toy", "owsg_toy", "pack", "pke_group", "pke_transparent", "unpack", "wrap",
]
