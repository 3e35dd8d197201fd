"""The four signature schemes: counter-based (cfs), nonce-based (mcfs),
the code-hash variant with no scrambler (mcfsc), and the generalized
encoder-based variant (tilde).

All verifiers work from public data only.  Counters and nonces are bound
into the hash as 8-byte big-endian fields so that message/counter splits
are unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codehash import (
    BoundedWeightEncoder,
    HashConfig,
    digest_bits,
    md_final_state,
    md_hash,
    make_encoder,
    syndrome_hash,
)
from .errors import (
    AttemptLimitExceeded,
    BadParameters,
    DecodingInvariantError,
)
from .goppa import GoppaCode, goppa_keygen, patterson_decode
from .linalg import BitMatrix, BitVector, Permutation, mat_mul, mat_vec, rand_invertible

SCHEMES = ("cfs", "mcfs", "mcfsc", "tilde")
HASH_IDS = ("sha256", "md-stopped")

# generic digests usable as the counter-scheme hash h; output width is a
# free parameter, so anything XOF-like fits
GENERIC_HASHES = {"sha256": digest_bits}

DEFAULT_ATTEMPT_CAP = 1 << 20


def _counter_bytes(value: int) -> bytes:
    return value.to_bytes(8, "big")


def message_hash(msg: bytes, counter: int, nbits: int, hash_id: str = "sha256") -> BitVector:
    """The generic signing hash h(msg || counter), nbits wide."""
    try:
        fn = GENERIC_HASHES[hash_id]
    except KeyError:
        raise BadParameters(f"unknown generic hash id {hash_id!r}") from None
    return fn(msg + _counter_bytes(counter), nbits)


# --------------------------------------------------------------------------
# cfs / mcfs: scrambled keys, generic hash, retry loop
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CfsPublicKey:
    h_pub: BitMatrix
    t: int
    hash_id: str


@dataclass(frozen=True)
class CfsSecretKey:
    code: GoppaCode
    scrambler: BitMatrix
    scrambler_inv: BitMatrix
    perm: Permutation
    hash_id: str

    @property
    def t(self) -> int:
        return self.code.t


@dataclass(frozen=True)
class CfsSignature:
    counter: int
    error: BitVector


@dataclass(frozen=True)
class McfsSignature:
    nonce: int
    error: BitVector


@dataclass(frozen=True)
class TildeSignature:
    error: BitVector


def cfs_keys_from_parts(
    code: GoppaCode,
    scrambler: BitMatrix,
    scrambler_inv: BitMatrix,
    perm: Permutation,
    hash_id: str = "sha256",
) -> tuple[CfsSecretKey, CfsPublicKey]:
    if hash_id not in GENERIC_HASHES:
        raise BadParameters(f"unknown generic hash id {hash_id!r}")
    h_pub = perm.permute_columns(mat_mul(scrambler, code.h))
    sk = CfsSecretKey(code, scrambler, scrambler_inv, perm, hash_id)
    pk = CfsPublicKey(h_pub, code.t, hash_id)
    return sk, pk


def cfs_keygen(m: int, t: int, rng, hash_id: str = "sha256") -> tuple[CfsSecretKey, CfsPublicKey]:
    """Goppa code, random scrambler S and permutation P; public H = S*H*P."""
    code = goppa_keygen(m, t, rng)
    s, s_inv = rand_invertible(code.n_minus_k, rng)
    perm = Permutation.random(code.n, rng)
    return cfs_keys_from_parts(code, s, s_inv, perm, hash_id)


def _decode_scrambled(sk: CfsSecretKey, digest: BitVector) -> BitVector | None:
    return patterson_decode(sk.code, mat_vec(sk.scrambler_inv, digest))


def cfs_sign(msg: bytes, sk: CfsSecretKey, max_attempts: int = DEFAULT_ATTEMPT_CAP) -> CfsSignature:
    """Increment a counter from 0 until the digest decodes; deterministic."""
    r = sk.code.n_minus_k
    for counter in range(max_attempts):
        e = _decode_scrambled(sk, message_hash(msg, counter, r, sk.hash_id))
        if e is not None:
            return CfsSignature(counter, sk.perm.apply(e))
    raise AttemptLimitExceeded(f"no decodable digest in {max_attempts} attempts")


def cfs_verify(msg: bytes, sig: CfsSignature, pk: CfsPublicKey) -> bool:
    if sig.error.n != pk.h_pub.cols or sig.error.weight > pk.t:
        return False
    a = message_hash(msg, sig.counter, pk.h_pub.rows, pk.hash_id)
    return a == mat_vec(pk.h_pub, sig.error)


def mcfs_sign(
    msg: bytes, sk: CfsSecretKey, rng, max_attempts: int = DEFAULT_ATTEMPT_CAP
) -> McfsSignature:
    """Like cfs_sign but with a fresh random nonce per attempt."""
    r = sk.code.n_minus_k
    for _ in range(max_attempts):
        nonce = rng.randrange(1, (1 << r) + 1)
        e = _decode_scrambled(sk, message_hash(msg, nonce, r, sk.hash_id))
        if e is not None:
            return McfsSignature(nonce, sk.perm.apply(e))
    raise AttemptLimitExceeded(f"no decodable digest in {max_attempts} attempts")


def mcfs_verify(msg: bytes, sig: McfsSignature, pk: CfsPublicKey) -> bool:
    if sig.error.n != pk.h_pub.cols or sig.error.weight > pk.t:
        return False
    a = message_hash(msg, sig.nonce, pk.h_pub.rows, pk.hash_id)
    return a == mat_vec(pk.h_pub, sig.error)


# --------------------------------------------------------------------------
# mcfsc: public H = H*P (no scrambler), digests from the code-based hash
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class McfscPublicKey:
    h_pub: BitMatrix
    t: int
    w: int
    cfg: HashConfig

    @property
    def r(self) -> int:
        return self.h_pub.rows


@dataclass(frozen=True)
class McfscSecretKey:
    code: GoppaCode
    perm: Permutation
    w: int
    cfg: HashConfig  # built on the public matrix; signing hashes with it

    @property
    def t(self) -> int:
        return self.code.t


def mcfsc_keys_from_parts(code: GoppaCode, perm: Permutation, w: int) -> tuple[McfscSecretKey, McfscPublicKey]:
    if not 1 <= w < code.t:
        raise BadParameters(f"block count w={w} must be less than t={code.t}")
    h_pub = perm.permute_columns(code.h)
    cfg = HashConfig(h_pub, w)  # validates divisibility and power-of-two block size
    sk = McfscSecretKey(code, perm, w, cfg)
    pk = McfscPublicKey(h_pub, code.t, w, cfg)
    return sk, pk


def mcfsc_keygen(m: int, t: int, w: int, rng) -> tuple[McfscSecretKey, McfscPublicKey]:
    code = goppa_keygen(m, t, rng)
    perm = Permutation.random(code.n, rng)
    return mcfsc_keys_from_parts(code, perm, w)


def chained_digest(msg: bytes, nonce: int, cfg: HashConfig) -> BitVector:
    """h(h(msg) || nonce) with the inner digest re-entering as plain bytes."""
    inner = md_hash(msg, cfg)
    return md_hash(inner.to_bytes() + _counter_bytes(nonce), cfg)


def mcfsc_sign(msg: bytes, sk: McfscSecretKey, rng) -> McfsSignature:
    """Single decode, no retry: the digest is a weight-w syndrome by
    construction, and w < t keeps it inside the decoder's reach."""
    nonce = rng.randrange(1, (1 << sk.code.n_minus_k) + 1)
    digest = chained_digest(msg, nonce, sk.cfg)
    # H_pub = H*P, so the digest is, bit for bit, also a syndrome under H
    # (of the un-permuted error); it can be decoded directly.
    e = patterson_decode(sk.code, digest)
    if e is None:
        raise DecodingInvariantError("a weight-w syndrome failed to decode")
    return McfsSignature(nonce, sk.perm.apply(e))


def mcfsc_verify(msg: bytes, sig: McfsSignature, pk: McfscPublicKey) -> bool:
    if sig.error.n != pk.h_pub.cols or sig.error.weight > pk.t:
        return False
    a = chained_digest(msg, sig.nonce, pk.cfg)
    return a == mat_vec(pk.h_pub, sig.error)


# --------------------------------------------------------------------------
# tilde: scrambled keys, digest = H_pub * encoder(inner_hash(msg))
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TildePublicKey:
    h_pub: BitMatrix
    t: int
    w: int
    hash_id: str
    encoder_id: str
    cfg: HashConfig


@dataclass(frozen=True)
class TildeSecretKey:
    code: GoppaCode
    scrambler: BitMatrix
    scrambler_inv: BitMatrix
    perm: Permutation
    w: int
    hash_id: str
    encoder_id: str
    cfg: HashConfig

    @property
    def t(self) -> int:
        return self.code.t


def tilde_inner_hash(hash_id: str, cfg: HashConfig):
    """Resolve the inner hash: the stopped code-based chain, or a generic
    digest truncated to the state length."""
    if hash_id == "md-stopped":
        return lambda msg: md_final_state(msg, cfg)
    if hash_id == "sha256":
        return lambda msg: digest_bits(msg, cfg.s)
    raise BadParameters(f"unknown hash id {hash_id!r}")


def tilde_encoder(pk_or_sk) -> BoundedWeightEncoder:
    return make_encoder(pk_or_sk.encoder_id, pk_or_sk.cfg, pk_or_sk.t)


def tilde_keys_from_parts(
    code: GoppaCode,
    scrambler: BitMatrix,
    scrambler_inv: BitMatrix,
    perm: Permutation,
    w: int,
    encoder_id: str = "regular",
    hash_id: str = "md-stopped",
) -> tuple[TildeSecretKey, TildePublicKey]:
    h_pub = perm.permute_columns(mat_mul(scrambler, code.h))
    cfg = HashConfig(h_pub, w)
    make_encoder(encoder_id, cfg, code.t)  # validate eagerly
    tilde_inner_hash(hash_id, cfg)
    sk = TildeSecretKey(code, scrambler, scrambler_inv, perm, w, hash_id, encoder_id, cfg)
    pk = TildePublicKey(h_pub, code.t, w, hash_id, encoder_id, cfg)
    return sk, pk


def tilde_keygen(
    m: int,
    t: int,
    w: int,
    rng,
    encoder_id: str = "regular",
    hash_id: str = "md-stopped",
) -> tuple[TildeSecretKey, TildePublicKey]:
    code = goppa_keygen(m, t, rng)
    s, s_inv = rand_invertible(code.n_minus_k, rng)
    perm = Permutation.random(code.n, rng)
    return tilde_keys_from_parts(code, s, s_inv, perm, w, encoder_id, hash_id)


def tilde_digest(msg: bytes, key) -> BitVector:
    """The scheme's message digest: H_pub * encoder(inner_hash(msg))."""
    inner = tilde_inner_hash(key.hash_id, key.cfg)
    return syndrome_hash(msg, key.cfg.h, tilde_encoder(key), inner)


def tilde_sign(msg: bytes, sk: TildeSecretKey) -> TildeSignature:
    """Single decode of the unscrambled digest; the encoder's weight bound
    guarantees a preimage exists."""
    digest = tilde_digest(msg, sk)
    e = patterson_decode(sk.code, mat_vec(sk.scrambler_inv, digest))
    if e is None:
        raise DecodingInvariantError("a weight-bounded syndrome failed to decode")
    return TildeSignature(sk.perm.apply(e))


def tilde_verify(msg: bytes, sig: TildeSignature, pk: TildePublicKey) -> bool:
    if sig.error.n != pk.h_pub.cols or sig.error.weight > pk.t:
        return False
    return tilde_digest(msg, pk) == mat_vec(pk.h_pub, sig.error)
