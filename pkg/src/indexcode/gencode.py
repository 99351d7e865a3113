"""General index codes: nonlinear encoders, per-user decoders, verification.

A code here is a pair of plain callables over a finite alphabet.  The
encoder maps a message tuple to a codeword tuple.  Decoder i receives the
codeword plus user i's side information as a dict keyed by 1-based user
index and must return message i.  Every builtin is written so the same
callable runs on single symbols or, transparently, on numpy arrays of
symbols; exhaustive verification over 2^26 messages is a few dozen
vectorized sweeps, not a Python loop.

Two verifiers are provided.  ``verify_decoders`` runs the shipped decoders
against the encoder.  ``verify_confusability`` needs only the encoder: user
i is served exactly when no two messages agreeing on A_i but differing in
message i collide to the same codeword.  The two must agree whenever both
apply, and the test suite holds them to that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    AlphabetMismatch,
    BudgetExceeded,
    LengthMismatch,
    UnknownCode,
)
from .fields import Matrix, column_block, dot, nullspace
from .instances import Instance, catalog_get
from .lincode import LinearCode, linear_catalog_get

DEFAULT_SEED = 0x1D5EED
EXHAUSTIVE_BUDGET = 2**26
TRUTHTABLE_BUDGET = 2**24
_CHUNK = 2**20


@dataclass(frozen=True)
class GeneralCode:
    """An encoder with optional per-user decoders over alphabet {0..q-1}."""

    m: int
    q: int
    r: int
    encoder: Callable[[Sequence], tuple]
    decoders: tuple | None
    t: int = 1
    name: str | None = None
    # for composed codes: (mode, code_a, code_b), else None
    parts: tuple | None = None

    @property
    def rate(self) -> Fraction:
        return Fraction(self.r, self.t)


def encode(code: GeneralCode, x: Sequence[int]) -> tuple[int, ...]:
    """Encode one message tuple, with alphabet and length checks."""
    if len(x) != code.m:
        raise LengthMismatch(f"expected {code.m} message symbols, got {len(x)}")
    vals = []
    for v in x:
        v = int(v)
        if v < 0 or v >= code.q:
            raise AlphabetMismatch(f"symbol {v} outside alphabet 0..{code.q - 1}")
        vals.append(v)
    z = code.encoder(tuple(vals))
    return tuple(int(v) for v in z)


def _require_same_users(inst: Instance, code: GeneralCode):
    if inst.m != code.m:
        raise LengthMismatch(f"code covers {code.m} users, instance has {inst.m}")


def _index_planes(start: int, stop: int, m: int, q: int) -> tuple:
    """Message symbols of indices start..stop-1 as one uint8 array per user.

    Message index convention: index = sum of x_j * q^(j-1), so user 1 is
    the fastest-cycling digit.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    planes = []
    if q == 2:
        for j in range(m):
            planes.append(((idx >> j) & 1).astype(np.uint8))
    else:
        div = 1
        for j in range(m):
            planes.append(((idx // div) % q).astype(np.uint8))
            div *= q
    return tuple(planes)


def _message_of_index(index: int, m: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        out.append(index % q)
        index //= q
    return tuple(out)


# ---------------------------------------------------------------------------
# decoder verification

@dataclass(frozen=True)
class DecoderCheck:
    user: int
    ok: bool
    failures: int
    first_failure: tuple[int, ...] | None


@dataclass(frozen=True)
class DecoderReport:
    ok: bool
    mode: str
    inputs: int
    checks: tuple[DecoderCheck, ...]

    def failures(self) -> tuple[int, ...]:
        return tuple(c.user for c in self.checks if not c.ok)


def verify_decoders(
    inst: Instance,
    code: GeneralCode,
    *,
    mode: str = "auto",
    samples: int = 10**7,
    seed: int = DEFAULT_SEED,
    budget: int = EXHAUSTIVE_BUDGET,
    chunk: int = _CHUNK,
) -> DecoderReport:
    """Check every decoder against the encoder, exhaustively or sampled.

    Mode "auto" enumerates the whole message space when q^m fits the
    budget and otherwise falls back to seeded sampling; the report says
    which happened and over how many inputs.  Mode "exhaustive" refuses
    oversized spaces with BudgetExceeded instead of silently sampling.
    """
    _require_same_users(inst, code)
    if code.decoders is None:
        raise ValueError("code ships no decoders; run verify_confusability instead")
    m, q = code.m, code.q
    space = q**m
    if mode == "auto":
        mode = "exhaustive" if space <= budget else "sampled"
    if mode == "exhaustive":
        if space > budget:
            raise BudgetExceeded(
                f"message space {q}^{m} exceeds the exhaustive budget {budget}"
            )
        total = space
    elif mode == "sampled":
        total = samples
    else:
        raise ValueError(f"unknown mode {mode!r}")

    rng = np.random.default_rng(seed) if mode == "sampled" else None
    side_keys = [sorted(inst.side_info[i - 1]) for i in range(1, m + 1)]
    fail_count = [0] * m
    first_fail: list[tuple[int, ...] | None] = [None] * m

    done = 0
    while done < total:
        n = min(chunk, total - done)
        if mode == "exhaustive":
            planes = _index_planes(done, done + n, m, q)
        else:
            draw = rng.integers(0, q, size=(m, n), dtype=np.uint8)
            planes = tuple(draw[j] for j in range(m))
        z = tuple(code.encoder(planes))
        for i in range(1, m + 1):
            side = {j: planes[j - 1] for j in side_keys[i - 1]}
            got = code.decoders[i - 1](z, side)
            bad = np.flatnonzero(got != planes[i - 1])
            if bad.size:
                fail_count[i - 1] += int(bad.size)
                if first_fail[i - 1] is None:
                    k = int(bad[0])
                    first_fail[i - 1] = tuple(int(p[k]) for p in planes)
        done += n

    checks = tuple(
        DecoderCheck(
            user=i,
            ok=fail_count[i - 1] == 0,
            failures=fail_count[i - 1],
            first_failure=first_fail[i - 1],
        )
        for i in range(1, m + 1)
    )
    return DecoderReport(
        ok=all(c.ok for c in checks), mode=mode, inputs=total, checks=checks
    )


# ---------------------------------------------------------------------------
# confusability

@dataclass(frozen=True)
class ConfusabilityCheck:
    user: int
    ok: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None


@dataclass(frozen=True)
class ConfusabilityReport:
    ok: bool
    inputs: int
    checks: tuple[ConfusabilityCheck, ...]

    def failures(self) -> tuple[int, ...]:
        return tuple(c.user for c in self.checks if not c.ok)


def _packed_codewords(code: GeneralCode, space: int, chunk: int) -> np.ndarray:
    """Codeword of every message index, packed into one integer per input."""
    q, r = code.q, code.r
    bits = r if q == 2 else int(np.ceil(r * np.log2(q)))
    if bits <= 8:
        dtype = np.uint8
    elif bits <= 16:
        dtype = np.uint16
    elif bits <= 32:
        dtype = np.uint32
    else:
        dtype = np.uint64
    out = np.empty(space, dtype=dtype)
    for start in range(0, space, chunk):
        stop = min(start + chunk, space)
        z = tuple(code.encoder(_index_planes(start, stop, code.m, q)))
        acc = np.zeros(stop - start, dtype=np.int64)
        mult = 1
        for k in range(r):
            acc += np.asarray(z[k], dtype=np.int64) * mult
            mult *= q
        out[start:stop] = acc.astype(dtype)
    return out


def _witness_pair(
    inst: Instance, code: GeneralCode, user: int, keys_of, bad_key: int, chunk: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Recover two concrete colliding messages once a bad key is known."""
    m, q = code.m, code.q
    space = q**m
    seen: dict[int, int] = {}
    for start in range(0, space, chunk):
        stop = min(start + chunk, space)
        planes = _index_planes(start, stop, m, q)
        keys = keys_of(start, stop, planes)
        hit = np.flatnonzero(keys == bad_key)
        for k in hit:
            xi = int(planes[user - 1][k])
            if xi not in seen:
                seen[xi] = start + int(k)
            if len(seen) >= 2:
                a, b = sorted(seen.values())
                return (
                    _message_of_index(a, m, q),
                    _message_of_index(b, m, q),
                )
    raise AssertionError("collision key vanished on rescan")


def verify_confusability(
    inst: Instance,
    code: GeneralCode,
    *,
    budget: int = EXHAUSTIVE_BUDGET,
    chunk: int = _CHUNK,
) -> ConfusabilityReport:
    """Decoder-free validity check straight from the definition.

    For each user, every pair of messages that agrees on the user's side
    information and maps to the same codeword must agree on the user's own
    message.  Works for any encoder, including truth tables; memory scales
    with q^m, so the budget is a hard gate.
    """
    _require_same_users(inst, code)
    m, q, r = code.m, code.q, code.r
    space = q**m
    if space > budget:
        raise BudgetExceeded(
            f"message space {q}^{m} exceeds the confusability budget {budget}"
        )
    zpack = _packed_codewords(code, space, chunk)
    checks = []
    for i in range(1, m + 1):
        known = sorted(inst.side_info[i - 1])
        if q == 2:
            kbits = len(known) + r
        else:
            kbits = (len(known) + r) * np.log2(q)
        if kbits > 62:
            raise BudgetExceeded(f"user {i}: side information key exceeds 62 bits")
        if q == 2:
            ok, witness = _confusable_binary(inst, code, i, known, zpack, space, chunk)
        else:
            ok, witness = _confusable_generic(inst, code, i, known, zpack, space, chunk)
        checks.append(ConfusabilityCheck(user=i, ok=ok, witness=witness))
    return ConfusabilityReport(
        ok=all(c.ok for c in checks), inputs=space, checks=tuple(checks)
    )


def _confusable_binary(inst, code, i, known, zpack, space, chunk):
    """q=2 path: one key per input, split by the wanted bit, set intersect."""
    r = code.r
    kbits = len(known) + r
    dtype = np.uint32 if kbits <= 32 else np.uint64

    def keys_of(start, stop, planes):
        acc = np.asarray(zpack[start:stop], dtype=dtype)
        for pos, j in enumerate(known):
            acc = acc | (planes[j - 1].astype(dtype) << (pos + r))
        return acc

    half = space // 2
    k0 = np.empty(half, dtype=dtype)
    k1 = np.empty(half, dtype=dtype)
    p0 = p1 = 0
    for start in range(0, space, chunk):
        stop = min(start + chunk, space)
        planes = _index_planes(start, stop, code.m, 2)
        keys = keys_of(start, stop, planes)
        want = planes[i - 1]
        zero = keys[want == 0]
        one = keys[want == 1]
        k0[p0 : p0 + zero.size] = zero
        k1[p1 : p1 + one.size] = one
        p0 += zero.size
        p1 += one.size
    assert p0 == half and p1 == half
    k0.sort()
    k1.sort()
    pos = np.searchsorted(k0, k1)
    pos[pos == half] = half - 1
    hits = np.flatnonzero(k0[pos] == k1)
    if hits.size == 0:
        return True, None
    bad_key = int(k1[int(hits[0])])
    return False, _witness_pair(inst, code, i, keys_of, bad_key, chunk)


def _confusable_generic(inst, code, i, known, zpack, space, chunk):
    """Any q: sort (side-info, codeword) keys, scan runs for mixed values."""
    m, q = code.m, code.q
    qr = q**code.r

    def keys_of(start, stop, planes):
        acc = np.asarray(zpack[start:stop], dtype=np.int64)
        mult = qr
        for j in known:
            acc = acc + planes[j - 1].astype(np.int64) * mult
            mult *= q
        return acc

    keys = np.empty(space, dtype=np.int64)
    vals = np.empty(space, dtype=np.uint8)
    for start in range(0, space, chunk):
        stop = min(start + chunk, space)
        planes = _index_planes(start, stop, m, q)
        keys[start:stop] = keys_of(start, stop, planes)
        vals[start:stop] = planes[i - 1]
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    vs = vals[order]
    mixed = np.flatnonzero((ks[1:] == ks[:-1]) & (vs[1:] != vs[:-1]))
    if mixed.size == 0:
        return True, None
    j = int(mixed[0])
    a, b = sorted((int(order[j]), int(order[j + 1])))
    return False, (_message_of_index(a, m, q), _message_of_index(b, m, q))


# ---------------------------------------------------------------------------
# composition

def compose_codes(
    code_a: GeneralCode, code_b: GeneralCode, mode: str, *, name: str | None = None
) -> GeneralCode:
    """Combine block codes the same way the instances combine.

    "noway" concatenates codewords, so rates add.  "twoway" adds the two
    codewords symbol-wise (shorter one zero-padded), so the rate is the
    max: each side knows the other block entirely, recomputes its codeword
    from side information, subtracts it off and decodes as before.
    """
    if code_a.q != code_b.q:
        raise AlphabetMismatch(f"alphabets differ: {code_a.q} vs {code_b.q}")
    if code_a.t != code_b.t:
        raise LengthMismatch(f"message lengths differ: {code_a.t} vs {code_b.t}")
    q = code_a.q
    ma, mb = code_a.m, code_b.m
    ra, rb = code_a.r, code_b.r
    enc_a, enc_b = code_a.encoder, code_b.encoder

    if mode == "noway":
        def encoder(x):
            x = tuple(x)
            return tuple(enc_a(x[:ma])) + tuple(enc_b(x[ma:]))

        r = ra + rb
    elif mode == "twoway":
        def encoder(x):
            x = tuple(x)
            za = tuple(enc_a(x[:ma]))
            zb = tuple(enc_b(x[ma:]))
            out = []
            for k in range(max(ra, rb)):
                if k < ra and k < rb:
                    out.append((za[k] + zb[k]) % q)
                elif k < ra:
                    out.append(za[k])
                else:
                    out.append(zb[k])
            return tuple(out)

        r = max(ra, rb)
    else:
        raise ValueError(f"unknown composition mode {mode!r}")

    decoders = None
    if code_a.decoders is not None and code_b.decoders is not None:
        decs = []
        for i in range(1, ma + 1):
            if mode == "noway":
                def dec(z, s, _d=code_a.decoders[i - 1]):
                    return _d(tuple(z[:ra]), {k: v for k, v in s.items() if k <= ma})
            else:
                def dec(z, s, _d=code_a.decoders[i - 1]):
                    xb = tuple(s[ma + j] for j in range(1, mb + 1))
                    zb = tuple(enc_b(xb))
                    za = tuple(
                        (z[k] + q - zb[k]) % q if k < rb else z[k] for k in range(ra)
                    )
                    return _d(za, {k: v for k, v in s.items() if k <= ma})
            decs.append(dec)
        for i in range(1, mb + 1):
            if mode == "noway":
                def dec(z, s, _d=code_b.decoders[i - 1]):
                    return _d(
                        tuple(z[ra:]), {k - ma: v for k, v in s.items() if k > ma}
                    )
            else:
                def dec(z, s, _d=code_b.decoders[i - 1]):
                    xa = tuple(s[j] for j in range(1, ma + 1))
                    za = tuple(enc_a(xa))
                    zb = tuple(
                        (z[k] + q - za[k]) % q if k < ra else z[k] for k in range(rb)
                    )
                    return _d(zb, {k - ma: v for k, v in s.items() if k > ma})
            decs.append(dec)
        decoders = tuple(decs)

    return GeneralCode(
        m=ma + mb,
        q=q,
        r=r,
        encoder=encoder,
        decoders=decoders,
        t=code_a.t,
        name=name,
        parts=(mode, code_a, code_b),
    )


# ---------------------------------------------------------------------------
# linear codes as general codes

def _matrix_encoder(F, H, r: int):
    row_terms = [
        [(j, int(c)) for j, c in enumerate(H[k]) if c] for k in range(r)
    ]

    def encoder(x, _rows=row_terms, _F=F):
        out = []
        for terms in _rows:
            acc = None
            for j, c in terms:
                v = x[j] if c == 1 else _F.mul[c, x[j]]
                acc = v if acc is None else _F.add[acc, v]
            out.append(0 if acc is None else acc)
        return tuple(out)

    return encoder


def linear_encoder_view(
    inst: Instance, lin: LinearCode, *, name: str | None = None
) -> GeneralCode:
    """The matrix code as an encoder-only general code, decoders omitted.

    Unlike from_linear this never fails: it is the right front end for
    the confusability checker when the matrix may not be decodable.
    """
    if lin.t != 1:
        raise LengthMismatch("only t=1 matrix codes translate to general codes")
    if lin.m != inst.m:
        raise LengthMismatch(f"code covers {lin.m} users, instance has {inst.m}")
    F = lin.matrix.field
    return GeneralCode(
        m=inst.m,
        q=F.q,
        r=lin.matrix.rows,
        encoder=_matrix_encoder(F, lin.matrix.data, lin.matrix.rows),
        decoders=None,
        name=name,
    )


def from_linear(inst: Instance, lin: LinearCode, *, name: str | None = None) -> GeneralCode:
    """Wrap a verified-decodable matrix code with explicit decoders.

    For user i a decoding row u with u.H[B_i] = 0 and u.H_i = 1 is read off
    the nullspace of the interference block; then u.z minus the known terms
    u.H_j x_j over j in A_i leaves exactly x_i.  Raises ValueError for any
    user the matrix cannot serve.
    """
    if lin.t != 1:
        raise LengthMismatch("only t=1 matrix codes translate to general codes")
    if lin.m != inst.m:
        raise LengthMismatch(f"code covers {lin.m} users, instance has {inst.m}")
    F = lin.matrix.field
    H = lin.matrix.data
    r = lin.matrix.rows
    encoder = _matrix_encoder(F, H, r)

    decoders = []
    for i in range(1, inst.m + 1):
        interferers = sorted(inst.interfering(i))
        block = column_block(lin.matrix, interferers, t=1)
        hi = tuple(int(v) for v in H[:, i - 1])
        u = None
        for cand in nullspace(Matrix(F, block.data.T)):
            d = dot(F, cand, hi)
            if d:
                scale = int(F.inv[d])
                u = tuple(int(F.mul[scale, c]) for c in cand)
                break
        if u is None:
            raise ValueError(f"user {i} cannot decode from this matrix")
        zterms = [(k, c) for k, c in enumerate(u) if c]
        sterms = []
        for j in sorted(inst.side_info[i - 1]):
            c = dot(F, u, tuple(int(v) for v in H[:, j - 1]))
            if c:
                sterms.append((j, int(c)))

        def dec(z, s, _z=zterms, _s=sterms, _F=F):
            acc = None
            for k, c in _z:
                v = z[k] if c == 1 else _F.mul[c, z[k]]
                acc = v if acc is None else _F.add[acc, v]
            for j, c in _s:
                v = s[j] if c == 1 else _F.mul[c, s[j]]
                acc = _F.sub[acc, v]
            return acc

        decoders.append(dec)

    return GeneralCode(
        m=inst.m,
        q=F.q,
        r=r,
        encoder=encoder,
        decoders=tuple(decoders),
        t=1,
        name=name or lin.name,
    )


# ---------------------------------------------------------------------------
# the 26-user quadratic binary code

def _i2_encode(x):
    (x1, x2, x3, x4, x5, x6, x7, x8, x9, x10,
     x11, x12, x13, x14, x15, x16, x17, x18, x19, x20,
     x21, x22, x23, x24, x25, x26) = x
    z1 = x1 ^ x4 ^ x6 ^ x7 ^ x10 ^ x21
    z2 = x11 ^ x14 ^ x16 ^ x17 ^ x20 ^ x22 ^ (x4 & x6) ^ (x4 & x7) ^ (x6 & x7)
    z3 = x2 ^ x4 ^ x5 ^ x7 ^ x8 ^ x23
    z4 = x12 ^ x14 ^ x15 ^ x17 ^ x18 ^ x24 ^ (x4 & x5) ^ (x4 & x7) ^ (x5 & x7)
    z5 = x3 ^ x5 ^ x6 ^ x7 ^ x9 ^ x25
    z6 = x13 ^ x15 ^ x16 ^ x17 ^ x19 ^ x26 ^ (x5 & x6) ^ (x5 & x7) ^ (x6 & x7)
    return (z1, z2, z3, z4, z5, z6)


# Users 1-3 know every other term of their transmission and peel it off.
def _i2_u1(z, s):
    return z[0] ^ s[4] ^ s[6] ^ s[7] ^ s[10] ^ s[21]


def _i2_u2(z, s):
    return z[2] ^ s[4] ^ s[5] ^ s[7] ^ s[8] ^ s[23]


def _i2_u3(z, s):
    return z[4] ^ s[5] ^ s[6] ^ s[7] ^ s[9] ^ s[25]


# Users 4-6 see none of x4,x5,x6 but recover two pairwise sums from the
# linear transmissions; the product of the two sums plus the symmetric
# quadratic x4x5+x4x6+x5x6 (taken from z2+z4+z6) collapses to the wanted
# message because squaring is the identity on bits.
def _i2_symmetric_quad(z, s):
    return (
        z[1] ^ z[3] ^ z[5]
        ^ s[11] ^ s[12] ^ s[13] ^ s[17] ^ s[18] ^ s[19] ^ s[20]
        ^ s[22] ^ s[24] ^ s[26]
    )


def _i2_u4(z, s):
    a = z[0] ^ s[1] ^ s[7] ^ s[10] ^ s[21]
    b = z[2] ^ s[2] ^ s[7] ^ s[8] ^ s[23]
    return (a & b) ^ _i2_symmetric_quad(z, s)


def _i2_u5(z, s):
    a = z[2] ^ s[2] ^ s[7] ^ s[8] ^ s[23]
    b = z[4] ^ s[3] ^ s[7] ^ s[9] ^ s[25]
    return (a & b) ^ _i2_symmetric_quad(z, s)


def _i2_u6(z, s):
    a = z[0] ^ s[1] ^ s[7] ^ s[10] ^ s[21]
    b = z[4] ^ s[3] ^ s[7] ^ s[9] ^ s[25]
    return (a & b) ^ _i2_symmetric_quad(z, s)


def _i2_u7(z, s):
    return z[0] ^ s[1] ^ s[4] ^ s[6] ^ s[10] ^ s[21]


# Users 8-10 miss two messages of their own transmission, but their sum is
# exposed by another transmission, and the sum is all that interferes.
def _i2_u8(z, s):
    c = z[4] ^ s[3] ^ s[6] ^ s[9] ^ s[25]
    return z[2] ^ s[2] ^ s[4] ^ c ^ s[23]


def _i2_u9(z, s):
    c = z[0] ^ s[1] ^ s[4] ^ s[10] ^ s[21]
    return z[4] ^ s[3] ^ s[5] ^ c ^ s[25]


def _i2_u10(z, s):
    c = z[2] ^ s[2] ^ s[5] ^ s[8] ^ s[23]
    return z[0] ^ s[1] ^ s[6] ^ c ^ s[21]


# Users 11-13 know x4..x7, so the quadratic terms are directly computable.
def _i2_u11(z, s):
    return (
        z[1] ^ s[14] ^ s[16] ^ s[17] ^ s[20] ^ s[22]
        ^ (s[4] & s[6]) ^ (s[4] & s[7]) ^ (s[6] & s[7])
    )


def _i2_u12(z, s):
    return (
        z[3] ^ s[14] ^ s[15] ^ s[17] ^ s[18] ^ s[24]
        ^ (s[4] & s[5]) ^ (s[4] & s[7]) ^ (s[5] & s[7])
    )


def _i2_u13(z, s):
    return (
        z[5] ^ s[15] ^ s[16] ^ s[17] ^ s[19] ^ s[26]
        ^ (s[5] & s[6]) ^ (s[5] & s[7]) ^ (s[6] & s[7])
    )


# Users 14-17 miss a single low message; a linear transmission recovers it,
# after which the quadratic transmission opens like for 11-13.
def _i2_u14(z, s):
    x4 = z[0] ^ s[1] ^ s[6] ^ s[7] ^ s[10] ^ s[21]
    return (
        z[1] ^ s[11] ^ s[16] ^ s[17] ^ s[20] ^ s[22]
        ^ (x4 & s[6]) ^ (x4 & s[7]) ^ (s[6] & s[7])
    )


def _i2_u15(z, s):
    x5 = z[2] ^ s[2] ^ s[4] ^ s[7] ^ s[8] ^ s[23]
    return (
        z[3] ^ s[12] ^ s[14] ^ s[17] ^ s[18] ^ s[24]
        ^ (s[4] & x5) ^ (s[4] & s[7]) ^ (x5 & s[7])
    )


def _i2_u16(z, s):
    x6 = z[4] ^ s[3] ^ s[5] ^ s[7] ^ s[9] ^ s[25]
    return (
        z[5] ^ s[13] ^ s[15] ^ s[17] ^ s[19] ^ s[26]
        ^ (s[5] & x6) ^ (s[5] & s[7]) ^ (x6 & s[7])
    )


def _i2_u17(z, s):
    x7 = z[0] ^ s[1] ^ s[4] ^ s[6] ^ s[10] ^ s[21]
    return (
        z[1] ^ s[11] ^ s[14] ^ s[16] ^ s[20] ^ s[22]
        ^ (s[4] & s[6]) ^ (s[4] & x7) ^ (s[6] & x7)
    )


# Users 18-20: summing two quadratic transmissions factors the unknown
# products into (known sum) & (sum exposed by a linear transmission).
def _i2_u18(z, s):
    c = z[4] ^ s[3] ^ s[6] ^ s[9] ^ s[25]
    return (
        z[3] ^ z[5]
        ^ s[12] ^ s[13] ^ s[14] ^ s[16] ^ s[19] ^ s[24] ^ s[26]
        ^ ((s[4] ^ s[6]) & c)
    )


def _i2_u19(z, s):
    c = z[0] ^ s[1] ^ s[4] ^ s[10] ^ s[21]
    return (
        z[1] ^ z[5]
        ^ s[11] ^ s[13] ^ s[14] ^ s[15] ^ s[20] ^ s[22] ^ s[26]
        ^ ((s[4] ^ s[5]) & c)
    )


def _i2_u20(z, s):
    c = z[2] ^ s[2] ^ s[5] ^ s[8] ^ s[23]
    return (
        z[1] ^ z[3]
        ^ s[11] ^ s[12] ^ s[15] ^ s[16] ^ s[18] ^ s[22] ^ s[24]
        ^ ((s[5] ^ s[6]) & c)
    )


# Users 21-26 rebuild their two missing low messages from the linear
# transmissions (and, for the even ones, the two missing mid messages from
# the quadratic ones), then peel their own transmission clean.
def _i2_u21(z, s):
    x4 = z[2] ^ s[2] ^ s[5] ^ s[7] ^ s[8] ^ s[23]
    x6 = z[4] ^ s[3] ^ s[5] ^ s[7] ^ s[9] ^ s[25]
    return z[0] ^ s[1] ^ x4 ^ x6 ^ s[7] ^ s[10]


def _i2_u22(z, s):
    x4 = z[2] ^ s[2] ^ s[5] ^ s[7] ^ s[8] ^ s[23]
    x6 = z[4] ^ s[3] ^ s[5] ^ s[7] ^ s[9] ^ s[25]
    x14 = (
        z[3] ^ s[12] ^ s[15] ^ s[17] ^ s[18] ^ s[24]
        ^ (x4 & s[5]) ^ (x4 & s[7]) ^ (s[5] & s[7])
    )
    x16 = (
        z[5] ^ s[13] ^ s[15] ^ s[17] ^ s[19] ^ s[26]
        ^ (s[5] & x6) ^ (s[5] & s[7]) ^ (x6 & s[7])
    )
    return (
        z[1] ^ s[11] ^ x14 ^ x16 ^ s[17] ^ s[20]
        ^ (x4 & x6) ^ (x4 & s[7]) ^ (x6 & s[7])
    )


def _i2_u23(z, s):
    x4 = z[0] ^ s[1] ^ s[6] ^ s[7] ^ s[10] ^ s[21]
    x5 = z[4] ^ s[3] ^ s[6] ^ s[7] ^ s[9] ^ s[25]
    return z[2] ^ s[2] ^ x4 ^ x5 ^ s[7] ^ s[8]


def _i2_u24(z, s):
    x4 = z[0] ^ s[1] ^ s[6] ^ s[7] ^ s[10] ^ s[21]
    x5 = z[4] ^ s[3] ^ s[6] ^ s[7] ^ s[9] ^ s[25]
    x14 = (
        z[1] ^ s[11] ^ s[16] ^ s[17] ^ s[20] ^ s[22]
        ^ (x4 & s[6]) ^ (x4 & s[7]) ^ (s[6] & s[7])
    )
    x15 = (
        z[5] ^ s[13] ^ s[16] ^ s[17] ^ s[19] ^ s[26]
        ^ (x5 & s[6]) ^ (x5 & s[7]) ^ (s[6] & s[7])
    )
    return (
        z[3] ^ s[12] ^ x14 ^ x15 ^ s[17] ^ s[18]
        ^ (x4 & x5) ^ (x4 & s[7]) ^ (x5 & s[7])
    )


def _i2_u25(z, s):
    x5 = z[2] ^ s[2] ^ s[4] ^ s[7] ^ s[8] ^ s[23]
    x6 = z[0] ^ s[1] ^ s[4] ^ s[7] ^ s[10] ^ s[21]
    return z[4] ^ s[3] ^ x5 ^ x6 ^ s[7] ^ s[9]


def _i2_u26(z, s):
    x5 = z[2] ^ s[2] ^ s[4] ^ s[7] ^ s[8] ^ s[23]
    x6 = z[0] ^ s[1] ^ s[4] ^ s[7] ^ s[10] ^ s[21]
    x15 = (
        z[3] ^ s[12] ^ s[14] ^ s[17] ^ s[18] ^ s[24]
        ^ (s[4] & x5) ^ (s[4] & s[7]) ^ (x5 & s[7])
    )
    x16 = (
        z[1] ^ s[11] ^ s[14] ^ s[17] ^ s[20] ^ s[22]
        ^ (s[4] & x6) ^ (s[4] & s[7]) ^ (x6 & s[7])
    )
    return (
        z[5] ^ s[13] ^ x15 ^ x16 ^ s[17] ^ s[19]
        ^ (x5 & x6) ^ (x5 & s[7]) ^ (x6 & s[7])
    )


_I2_DECODERS = (
    _i2_u1, _i2_u2, _i2_u3, _i2_u4, _i2_u5, _i2_u6, _i2_u7, _i2_u8, _i2_u9,
    _i2_u10, _i2_u11, _i2_u12, _i2_u13, _i2_u14, _i2_u15, _i2_u16, _i2_u17,
    _i2_u18, _i2_u19, _i2_u20, _i2_u21, _i2_u22, _i2_u23, _i2_u24, _i2_u25,
    _i2_u26,
)


# ---------------------------------------------------------------------------
# truth tables

def code_to_truthtable(code: GeneralCode, *, budget: int = TRUTHTABLE_BUDGET) -> str:
    """Dump the encoder as text: header "m r q", one codeword line per index."""
    space = code.q**code.m
    if space > budget:
        raise BudgetExceeded(f"truth table with {space} lines exceeds budget {budget}")
    lines = [f"{code.m} {code.r} {code.q}"]
    for start in range(0, space, _CHUNK):
        stop = min(start + _CHUNK, space)
        z = tuple(
            np.asarray(v) for v in code.encoder(_index_planes(start, stop, code.m, code.q))
        )
        block = np.broadcast_arrays(*(np.asarray(v, dtype=np.uint8) for v in z))
        stacked = np.stack(block, axis=1)
        lines.extend(" ".join(str(int(v)) for v in row) for row in stacked)
    return "\n".join(lines) + "\n"


def truthtable_to_code(text: str, *, name: str | None = None) -> GeneralCode:
    """Parse the truth-table format; the result has no decoders."""
    rows = text.split("\n")
    header = rows[0].split()
    if len(header) != 3:
        raise LengthMismatch('truth table header must be "m r q"')
    m, r, q = (int(v) for v in header)
    space = q**m
    body = [row for row in rows[1:] if row.strip()]
    if len(body) != space:
        raise LengthMismatch(f"expected {space} codeword lines, got {len(body)}")
    table = np.zeros((space, r), dtype=np.uint8)
    for k, row in enumerate(body):
        vals = row.split()
        if len(vals) != r:
            raise LengthMismatch(f"line {k + 2}: expected {r} symbols")
        for c, v in enumerate(vals):
            v = int(v)
            if v < 0 or v >= q:
                raise AlphabetMismatch(f"line {k + 2}: symbol {v} outside 0..{q - 1}")
            table[k, c] = v

    def encoder(x, _table=table, _q=q, _m=m):
        if _m and isinstance(x[0], np.ndarray):
            idx = np.zeros(x[0].shape, dtype=np.int64)
            mult = 1
            for j in range(_m):
                idx += x[j].astype(np.int64) * mult
                mult *= _q
            rows = _table[idx]
            return tuple(rows[:, k] for k in range(rows.shape[1]))
        idx = 0
        mult = 1
        for j in range(_m):
            idx += int(x[j]) * mult
            mult *= _q
        return tuple(int(v) for v in _table[idx])

    return GeneralCode(m=m, q=q, r=r, encoder=encoder, decoders=None, name=name)


# ---------------------------------------------------------------------------
# catalog

def _build_general_catalog() -> dict[str, GeneralCode]:
    i1_linear = from_linear(
        catalog_get("I1").instance, linear_catalog_get("I1-binary")
    )
    i2 = GeneralCode(
        m=26, q=2, r=6, encoder=_i2_encode, decoders=_I2_DECODERS,
        name="I2-quadratic",
    )
    return {
        "I1-binary": i1_linear,
        "I2-quadratic": i2,
        "I3-concat": compose_codes(i1_linear, i2, "noway", name="I3-concat"),
        "I4-sum": compose_codes(i1_linear, i2, "twoway", name="I4-sum"),
    }


_GENERAL_CATALOG = _build_general_catalog()

# alternate spellings accepted by the loaders
_CODE_ALIASES = {
    "paper-I2": "I2-quadratic",
    "paper-I3": "I3-concat",
    "paper-I4": "I4-sum",
}

GENERAL_CATALOG_NAMES = tuple(sorted(_GENERAL_CATALOG))


def general_catalog_get(name: str) -> GeneralCode:
    key = _CODE_ALIASES.get(name, name)
    try:
        return _GENERAL_CATALOG[key]
    except KeyError:
        raise UnknownCode(
            f"unknown code {name!r}; catalog has {', '.join(GENERAL_CATALOG_NAMES)}"
        ) from None


def load_general_code(spec: str) -> GeneralCode:
    """Resolve a catalog code name or a truth-table file to a GeneralCode."""
    if spec in _GENERAL_CATALOG or spec in _CODE_ALIASES:
        return general_catalog_get(spec)
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            return truthtable_to_code(fh.read())
    except FileNotFoundError:
        raise UnknownCode(
            f"{spec!r} is neither a catalog code nor a readable file"
        ) from None
