"""Code-based Merkle-Damgard hashing and weight-bounded syndrome hashing.

The compression function selects one column per column-block of a parity
check matrix: an s-bit state splits into w chunks, chunk i picks column
(chunk + 1) within block i, and the output is the XOR of the picked
columns.  Equivalently it is the syndrome of the "regular word" of the
state: the weight-w vector with exactly one bit per block.

Conventions the paper-free file formats rely on:
  * message bytes enter the bit stream most significant bit first;
  * padding is a 1 bit, zero fill, then a 64-bit big-endian bit length,
    rounding up to a whole number of s-bit blocks;
  * chunks are read big-endian within the state;
  * the initial state is all zeros;
  * combine(chain, block) truncates or zero-extends the chain value to
    s bits and XORs the block into it.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable

from .errors import BadParameters, DimensionError, WeightBoundViolation
from .linalg import BitMatrix, BitVector, mat_vec
from .metering import tick_compression


class HashConfig:
    """Parameters of the code-based hash: the matrix plus the block split."""

    def __init__(self, h_matrix: BitMatrix, w: int, iv: BitVector | None = None):
        n = h_matrix.cols
        if w < 1 or n % w:
            raise BadParameters(f"block count w={w} must divide n={n}")
        l = n // w
        if l < 2 or l & (l - 1):
            raise BadParameters(f"block size n/w={l} must be a power of two >= 2")
        self.h = h_matrix
        self.n = n
        self.w = w
        self.l = l
        self.chunk_bits = l.bit_length() - 1
        self.s = w * self.chunk_bits
        self.r = h_matrix.rows
        if iv is None:
            iv = BitVector.zeros(self.s)
        if iv.n != self.s:
            raise BadParameters("IV length must equal the state length s")
        self.iv = iv
        self._columns = h_matrix.columns_as_ints()
        # big-endian chunk read = bit-reversal of the packed little-endian value
        c = self.chunk_bits
        self._rev = [int(format(v, f"0{c}b")[::-1], 2) for v in range(l)]

    def __repr__(self) -> str:
        return f"HashConfig(n={self.n}, w={self.w}, s={self.s}, r={self.r})"


def split(x: BitVector, cfg: HashConfig) -> tuple[int, ...]:
    """The s-bit state as w integers in [0, l), big-endian per chunk."""
    if x.n != cfg.s:
        raise DimensionError(f"state must be {cfg.s} bits, got {x.n}")
    bits = x.to_int()
    c = cfg.chunk_bits
    mask = cfg.l - 1
    return tuple(cfg._rev[(bits >> (i * c)) & mask] for i in range(cfg.w))


def regular_word(x: BitVector, cfg: HashConfig) -> BitVector:
    """Injective embedding of an s-bit state as a weight-w word with one
    set bit per length-l block: block i carries its bit at offset split(x)[i]."""
    acc = 0
    for i, chunk in enumerate(split(x, cfg)):
        acc |= 1 << (i * cfg.l + chunk)
    return BitVector(cfg.n, acc)


def compress(x: BitVector, cfg: HashConfig) -> BitVector:
    """One column XOR per block; equals the syndrome of regular_word(x)."""
    tick_compression()
    acc = 0
    for i, chunk in enumerate(split(x, cfg)):
        acc ^= cfg._columns[i * cfg.l + chunk]
    return BitVector(cfg.r, acc)


def _fit(v: BitVector, s: int) -> BitVector:
    """Truncate or zero-extend to s bits (keeps the leading coordinates)."""
    if v.n == s:
        return v
    if v.n > s:
        return BitVector(s, v.to_int() & ((1 << s) - 1))
    return BitVector(s, v.to_int())


def _padded_blocks(msg: bytes, cfg: HashConfig) -> list[BitVector]:
    """Message bits, then 1, zero fill and a 64-bit length, as s-bit blocks."""
    s = cfg.s
    nbits = 8 * len(msg)
    acc = 0
    pos = 0
    for byte in msg:
        for k in range(7, -1, -1):
            acc |= ((byte >> k) & 1) << pos
            pos += 1
    acc |= 1 << pos
    pos += 1
    pos += (-(pos + 64)) % s
    for k in range(63, -1, -1):
        acc |= ((nbits >> k) & 1) << pos
        pos += 1
    mask = (1 << s) - 1
    return [BitVector(s, (acc >> (i * s)) & mask) for i in range(pos // s)]


def md_hash(msg: bytes, cfg: HashConfig) -> BitVector:
    """Full Merkle-Damgard digest: r bits."""
    chain: BitVector = cfg.iv
    digest = None
    for block in _padded_blocks(msg, cfg):
        state = _fit(chain, cfg.s) ^ block
        digest = compress(state, cfg)
        chain = digest
    return digest


def md_final_state(msg: bytes, cfg: HashConfig) -> BitVector:
    """The last chaining state, i.e. the digest pipeline halted just before
    its final compression: s bits."""
    chain: BitVector = cfg.iv
    state = None
    for i, block in enumerate(_padded_blocks(msg, cfg)):
        if i:
            chain = compress(state, cfg)
        state = _fit(chain, cfg.s) ^ block
    return state


def digest_bits(data: bytes, nbits: int) -> BitVector:
    """SHA-256 in counter mode, truncated to exactly nbits."""
    out = b""
    counter = 0
    while 8 * len(out) < nbits:
        out += hashlib.sha256(data + counter.to_bytes(4, "big")).digest()
        counter += 1
    full = BitVector.from_bytes(out, 8 * len(out))
    return _fit(full, nbits)


@dataclass(frozen=True)
class BoundedWeightEncoder:
    """A map from s-bit states to n-bit words of weight at most max_weight."""

    name: str
    max_weight: int
    fn: Callable[[BitVector], BitVector]

    def __call__(self, x: BitVector) -> BitVector:
        return self.fn(x)


def make_encoder(encoder_id: str, cfg: HashConfig, t: int) -> BoundedWeightEncoder:
    """Registered encoders:

    regular -- the one-bit-per-block embedding (weight exactly w; needs w <= t)
    digits  -- base-n digits of the state select up to t positions
    zero    -- the constant zero word (degenerate but within every bound)
    """
    if encoder_id == "regular":
        if cfg.w > t:
            raise BadParameters(f"regular encoder has weight {cfg.w} > bound {t}")
        return BoundedWeightEncoder("regular", t, lambda x: regular_word(x, cfg))
    if encoder_id == "digits":

        def digits(x: BitVector) -> BitVector:
            v = x.to_int()
            positions = set()
            for _ in range(t):
                positions.add(v % cfg.n)
                v //= cfg.n
            return BitVector.from_indices(cfg.n, positions)

        return BoundedWeightEncoder("digits", t, digits)
    if encoder_id == "zero":
        return BoundedWeightEncoder("zero", t, lambda x: BitVector.zeros(cfg.n))
    raise BadParameters(f"unknown encoder id {encoder_id!r}")


ENCODER_IDS = ("regular", "digits", "zero")


def syndrome_hash(
    msg: bytes,
    h_matrix: BitMatrix,
    encoder: BoundedWeightEncoder,
    inner_hash: Callable[[bytes], BitVector],
) -> BitVector:
    """Hash into the decodable-syndrome set: H * encoder(inner_hash(msg)).

    The encoder's weight bound is what guarantees decodability, so it is
    enforced here on every call.
    """
    word = encoder(inner_hash(msg))
    if word.weight > encoder.max_weight:
        raise WeightBoundViolation(
            f"encoder {encoder.name!r} produced weight {word.weight} > {encoder.max_weight}"
        )
    return mat_vec(h_matrix, word)


def hash_test_vectors(cfg: HashConfig, messages) -> list[str]:
    """One `msg_hex digest_hex state_hex` line per message, for committed
    configurations (empty message serializes as '-')."""
    lines = []
    for msg in messages:
        digest = md_hash(msg, cfg)
        state = md_final_state(msg, cfg)
        lines.append(f"{msg.hex() or '-'} {digest.to_hex()} {state.to_hex()}")
    return lines


def parse_hash_test_vector(line: str, cfg: HashConfig) -> tuple[bytes, BitVector, BitVector]:
    msg_hex, digest_hex, state_hex = line.split()
    msg = b"" if msg_hex == "-" else bytes.fromhex(msg_hex)
    return msg, BitVector.from_hex(digest_hex, cfg.r), BitVector.from_hex(state_hex, cfg.s)
