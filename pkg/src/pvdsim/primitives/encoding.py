"""Length-prefixed byte layout shared by keys, ciphertexts and verification keys.

    record := tag (1 byte) || field*
    field  := length (4 bytes, big-endian) || bytes

Integers are encoded big-endian; bit strings as ``n`` (4 bytes) followed by
``ceil(n/8)`` bytes holding the bits right-aligned.
"""
from __future__ import annotations

import struct

from ..qstate import BitString


class DecodeError(ValueError):
    pass


def pack(tag: bytes, *fields: bytes) -> bytes:
    if len(tag) != 1:
        raise ValueError("tag must be a single byte")
    out = [tag]
    for f in fields:
        out.append(struct.pack(">I", len(f)))
        out.append(f)
    return b"".join(out)


def unpack(data: bytes, tag: bytes | None = None) -> tuple[bytes, list[bytes]]:
    if not data:
        raise DecodeError("empty record")
    got, pos, fields = data[:1], 1, []
    if tag is not None and got != tag:
        raise DecodeError(f"expected tag {tag!r}, found {got!r}")
    while pos < len(data):
        if pos + 4 > len(data):
            raise DecodeError("truncated length prefix")
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        pos += 4
        if pos + length > len(data):
            raise DecodeError("truncated field")
        fields.append(data[pos:pos + length])
        pos += length
    return got, fields


def int_bytes(x: int, width: int | None = None) -> bytes:
    width = max(1, (x.bit_length() + 7) // 8) if width is None else width
    return x.to_bytes(width, "big")


def bytes_int(b: bytes) -> int:
    return int.from_bytes(b, "big")


def encode_bits(x: BitString) -> bytes:
    return struct.pack(">I", x.n) + x.to_bytes()


def decode_bits(b: bytes) -> BitString:
    if len(b) < 4:
        raise DecodeError("truncated bit string")
    (n,) = struct.unpack(">I", b[:4])
    body = b[4:]
    if len(body) != (n + 7) // 8:
        raise DecodeError(f"bit string of length {n} needs {(n + 7) // 8} bytes, got {len(body)}")
    return BitString.from_bytes(body, n)
