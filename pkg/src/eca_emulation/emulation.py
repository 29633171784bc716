"""Deciding and certifying the emulation relation between elementary CA.

A rule f is emulated by a rule g with supercell size k when an injective
encoding of f's two states into k-bit supercells turns g's k-step block
dynamics into f exactly: for every neighborhood (s1, s2, s3),

    enc(f(s1, s2, s3)) == supercell_step(g, k, enc(s1), enc(s2), enc(s3)).

Two decision procedures are provided.  ``check_emulation_naive`` scans all
ordered encoding pairs for one candidate f (the naive algorithm);
``emulated_rules`` enumerates the two-element subalgebras of the supercell
algebra of g, which yields *all* emulated rules in a single pass (the
subalgebra algorithm).  Both use the same documented scan order - words
read as little-endian integers, enc0 ascending then enc1 ascending - so
results are deterministic and the two procedures can cross-check each
other on small instances.

The closure machinery (``singleton_closure``, ``pair_closure``,
``proper_subalgebra_search``) answers the stronger question of whether the
supercell algebra contains *any* proper subalgebra with at least two
elements, i.e. whether g can emulate any automaton with more than one
state, non-trivially, at this supercell size.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .rules import EcaRule, _DUAL, rule_from_wolfram
from .supercell import (
    MAX_SUPERCELL_BITS,
    _TABLE_MAX_K,
    _gk_table_list,
    _unravel_batch,
    _unravel_bits,
    supercell_step,
)
from .words import Word

# Chunk size for the batched scans; results never depend on it.
_CHUNK = 1 << 16

_DUAL_ARR = np.array(_DUAL, dtype=np.uint16)


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"supercell size {k} < 1")
    if 3 * k > MAX_SUPERCELL_BITS:
        raise ValueError(f"supercell size {k} exceeds the packed kernel limit")


@dataclass(frozen=True)
class Encoding:
    """An injective encoding of the two states into k-bit supercells."""

    k: int
    enc0: Word
    enc1: Word

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"supercell size {self.k} < 1")
        for name, w in (("enc0", self.enc0), ("enc1", self.enc1)):
            if len(w) != self.k:
                raise ValueError(f"{name} has {len(w)} cells, expected {self.k}")
        if self.enc0 == self.enc1:
            raise ValueError("encoding must be one-to-one: enc0 == enc1")

    def encode_bit(self, b: int) -> Word:
        if b not in (0, 1):
            raise ValueError(f"state {b!r} is not a bit")
        return self.enc1 if b else self.enc0

    def __repr__(self) -> str:
        return f"Encoding(k={self.k}, enc0={self.enc0.text}, enc1={self.enc1.text})"


def encode_config(e: Encoding, w: Word) -> Word:
    """Blockwise extension of the encoding: block i of the output is enc(w[i])."""
    bits = 0
    e0, e1 = e.enc0.bits, e.enc1.bits
    for i in range(len(w)):
        bits |= (e1 if (w.bits >> i) & 1 else e0) << (e.k * i)
    return Word(bits, e.k * len(w))


def decode_config(e: Encoding, w: Word) -> Word:
    """Inverse of encode_config; raises if some block is not a code word."""
    k = e.k
    if len(w) % k:
        raise ValueError(f"word of {len(w)} cells is not a sequence of {k}-cell blocks")
    n = len(w) // k
    mask = (1 << k) - 1
    out = 0
    for i in range(n):
        block = (w.bits >> (k * i)) & mask
        if block == e.enc1.bits:
            out |= 1 << i
        elif block != e.enc0.bits:
            raise ValueError(f"block {i} ({Word(block, k).text}) is not a code word")
    return Word(out, n)


@dataclass(frozen=True)
class EmulationWitness:
    """A certified instance of the relation emulated <=_k emulator."""

    emulated: EcaRule
    emulator: EcaRule
    k: int
    encoding: Encoding

    def __post_init__(self):
        if self.k != self.encoding.k:
            raise ValueError(f"witness size {self.k} != encoding size {self.encoding.k}")

    def holds(self) -> bool:
        """Check the eight defining equations directly."""
        e = self.encoding
        for i in range(8):
            s1, s2, s3 = (i >> 2) & 1, (i >> 1) & 1, i & 1
            got = supercell_step(self.emulator, self.k, e.encode_bit(s1),
                                 e.encode_bit(s2), e.encode_bit(s3))
            if got != e.encode_bit(self.emulated(s1, s2, s3)):
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "f": self.emulated.wolfram,
            "g": self.emulator.wolfram,
            "k": self.k,
            "enc0": self.encoding.enc0.text,
            "enc1": self.encoding.enc1.text,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "EmulationWitness":
        k = int(d["k"])
        enc = Encoding(k, Word.from_text(d["enc0"]), Word.from_text(d["enc1"]))
        return cls(rule_from_wolfram(int(d["f"])), rule_from_wolfram(int(d["g"])), k, enc)


def _make_witness(f: EcaRule, g: EcaRule, k: int, e0: int, e1: int) -> EmulationWitness:
    return EmulationWitness(f, g, k, Encoding(k, Word(e0, k), Word(e1, k)))


# ---------------------------------------------------------------------------
# Naive decision procedure: scan all encodings for one fixed candidate f.

def check_emulation_naive(f: EcaRule, g: EcaRule, k: int) -> Encoding | None:
    """Search for an encoding witnessing f <=_k g; None if there is none.

    Scans ordered pairs (enc0, enc1) with enc0 != enc1, enc0 ascending then
    enc1 ascending (words read as little-endian integers), and returns the
    first pair satisfying all eight equations.
    """
    _check_k(k)
    if k <= _TABLE_MAX_K:
        return _naive_scan_scalar(f, g, k)
    return _naive_scan_batched(f, g, k)


def _naive_scan_scalar(f: EcaRule, g: EcaRule, k: int) -> Encoding | None:
    tab = _gk_table_list(g.wolfram, k)
    fbits = f.table
    n = 1 << k
    k2 = 2 * k
    for e0 in range(n):
        for e1 in range(n):
            if e0 == e1:
                continue
            enc = (e0, e1)
            for i in range(8):
                w = enc[(i >> 2) & 1] | enc[(i >> 1) & 1] << k | enc[i & 1] << k2
                if tab[w] != enc[fbits[i]]:
                    break
            else:
                return Encoding(k, Word(e0, k), Word(e1, k))
    return None


def _naive_scan_batched(f: EcaRule, g: EcaRule, k: int) -> Encoding | None:
    n = 1 << k
    fbits = f.table
    total = n * n
    for lo in range(0, total, _CHUNK):
        p = np.arange(lo, min(lo + _CHUNK, total), dtype=np.uint64)
        e0 = p >> k
        e1 = p & np.uint64(n - 1)
        keep = e0 != e1
        e0, e1 = e0[keep], e1[keep]
        for i in range(8):
            if not len(e0):
                break
            sel = (e0, e1)
            w = (sel[(i >> 2) & 1]
                 | sel[(i >> 1) & 1] << np.uint64(k)
                 | sel[i & 1] << np.uint64(2 * k))
            r = _unravel_batch(g.wolfram, w, 3 * k, k)
            keep = r == sel[fbits[i]]
            e0, e1 = e0[keep], e1[keep]
        if len(e0):
            return Encoding(k, Word(int(e0[0]), k), Word(int(e1[0]), k))
    return None


# ---------------------------------------------------------------------------
# Subalgebra procedure: enumerate two-element subalgebras, all f at once.

# Stage order for the pair scan: mixed patterns first, they filter fastest.
# The two constant patterns (000, 111) are handled by the diagonal prefilter.
_MIXED_PATTERNS = (1, 2, 4, 3, 5, 6)


def _diagonal_map(wolfram: int, k: int) -> np.ndarray:
    """d[u] = supercell_step(g, k, u, u, u) for every supercell u."""
    e = np.arange(1 << k, dtype=np.uint64)
    return _unravel_batch(wolfram, e | e << np.uint64(k) | e << np.uint64(2 * k), 3 * k, k)


def _closed_pairs(wolfram: int, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All unordered pairs {u, v} (u < v) closed under the supercell operation.

    Returns (U, V, R) where R[:, i] is the operation applied to the i-th
    selection pattern of the pair (i = 4*s1 + 2*s2 + s3, selecting v where
    the pattern bit is 1).  The constant patterns (000, 111) prune the
    candidate set without touching the pair space: a closed pair must
    consist of diagonal fixed points, or pair an element directly with its
    diagonal image.  The remaining patterns are evaluated chunk-wise.
    """
    n = 1 << k
    diag = _diagonal_map(wolfram, k)
    elems = np.arange(n, dtype=np.uint64)
    moved = diag != elems
    fix = elems[~moved]
    parts = []
    if len(fix) >= 2:
        iu, iv = np.triu_indices(len(fix), 1)
        parts.append(fix[iu] * n + fix[iv])
    if moved.any():
        a, b = elems[moved], diag[moved]
        db = diag[b.astype(np.int64)]
        ok = (db == a) | (db == b)
        a, b = a[ok], b[ok]
        parts.append(np.minimum(a, b) * n + np.maximum(a, b))
    if not parts:
        return (np.empty(0, np.uint64),) * 2 + (np.empty((0, 8), np.uint64),)
    keys = np.unique(np.concatenate(parts))  # sorted, so scan order is kept
    U = keys // n
    V = keys % n

    survivors_u = []
    survivors_v = []
    for lo in range(0, len(U), _CHUNK):
        u = U[lo:lo + _CHUNK]
        v = V[lo:lo + _CHUNK]
        for i in _MIXED_PATTERNS:
            if not len(u):
                break
            a = v if (i >> 2) & 1 else u
            b = v if (i >> 1) & 1 else u
            c = v if i & 1 else u
            r = _unravel_batch(wolfram, a | b << np.uint64(k) | c << np.uint64(2 * k),
                               3 * k, k)
            keep = (r == u) | (r == v)
            u, v = u[keep], v[keep]
        survivors_u.append(u)
        survivors_v.append(v)
    U = np.concatenate(survivors_u) if survivors_u else np.empty(0, np.uint64)
    V = np.concatenate(survivors_v) if survivors_v else np.empty(0, np.uint64)

    R = np.empty((len(U), 8), dtype=np.uint64)
    if len(U):
        R[:, 0] = diag[U.astype(np.int64)]
        R[:, 7] = diag[V.astype(np.int64)]
        for i in _MIXED_PATTERNS:
            a = V if (i >> 2) & 1 else U
            b = V if (i >> 1) & 1 else U
            c = V if i & 1 else U
            R[:, i] = _unravel_batch(wolfram, a | b << np.uint64(k) | c << np.uint64(2 * k),
                                     3 * k, k)
    return U, V, R


def _pair_entries(U: np.ndarray, V: np.ndarray, R: np.ndarray
                  ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Both orientations of each closed pair as (wolfram, enc0, enc1) columns."""
    m = len(U)
    w1 = np.zeros(m, dtype=np.uint16)
    for i in range(8):
        w1 |= (R[:, i] == V).astype(np.uint16) << i
    w2 = _DUAL_ARR[w1]  # swapping the orientation induces the dual rule
    wol = np.concatenate([w1, w2])
    e0 = np.concatenate([U, V])
    e1 = np.concatenate([V, U])
    return wol, e0, e1


def emulated_rules(g: EcaRule, k: int) -> list[tuple[EcaRule, Encoding]]:
    """All rules f with f <=_k g, each with a witnessing encoding.

    Every closed pair is reported in both orientations, so the result is
    closed under duality.  Entries are sorted by (wolfram, enc0, enc1) and
    de-duplicated.  Permissive rules at large k can admit millions of
    closed pairs; use emulated_rule_map when only the set of rules and one
    witness per rule are needed.
    """
    _check_k(k)
    wol, e0, e1 = _pair_entries(*_closed_pairs(g.wolfram, k))
    order = np.lexsort((e1, e0, wol))
    wol, e0, e1 = wol[order], e0[order], e1[order]
    out = []
    prev = None
    for w, a, b in zip(wol.tolist(), e0.tolist(), e1.tolist()):
        entry = (w, a, b)
        if entry == prev:
            continue
        prev = entry
        out.append((rule_from_wolfram(w), Encoding(k, Word(a, k), Word(b, k))))
    return out


def emulated_rule_map(g: EcaRule, k: int) -> dict[int, Encoding]:
    """Map each emulated Wolfram number to its minimal witnessing encoding.

    Same relation as emulated_rules, aggregated: for every f with f <=_k g
    the value is the scan-order-minimal (enc0, enc1) pair.  At most 256
    entries regardless of k.
    """
    _check_k(k)
    wol, e0, e1 = _pair_entries(*_closed_pairs(g.wolfram, k))
    if not len(wol):
        return {}
    order = np.lexsort((e1, e0, wol))
    wol, e0, e1 = wol[order], e0[order], e1[order]
    _, first = np.unique(wol, return_index=True)
    return {
        int(wol[i]): Encoding(k, Word(int(e0[i]), k), Word(int(e1[i]), k))
        for i in first
    }


# ---------------------------------------------------------------------------
# Witness verification and composition.

def verify_witness(w: EmulationWitness, length: int, horizon: int,
                   samples: int = 100, seed: int = 0) -> bool:
    """Check the commuting identity on random open words.

    Draws ``samples`` pseudo-random words of ``length`` cells (Mersenne
    Twister, ``random.Random(seed)``, one ``getrandbits(length)`` per
    sample) and checks, for t = 1..horizon, that encoding the t-fold
    unravelling of the word equals the (k*t)-fold unravelling of the
    encoded word.  The eight 3-cell neighborhoods are always checked first,
    so a witness violating the defining equations fails regardless of the
    sample draw.
    """
    if horizon < 0:
        raise ValueError(f"negative horizon {horizon}")
    if length < 2 * horizon + 1 or length < 3:
        raise ValueError(f"length {length} too short for horizon {horizon}")
    if samples < 0:
        raise ValueError(f"negative sample count {samples}")
    if not w.holds():
        return False
    f, g, k, enc = w.emulated.wolfram, w.emulator.wolfram, w.k, w.encoding

    # 8-cell chunk table makes blockwise encoding ~8x faster.
    e0, e1 = enc.enc0.bits, enc.enc1.bits
    chunk = [0] * 256
    for byte in range(256):
        acc = 0
        for i in range(8):
            acc |= (e1 if (byte >> i) & 1 else e0) << (k * i)
        chunk[byte] = acc

    def encode_bits(bits: int, m: int) -> int:
        acc = 0
        for j in range((m + 7) // 8):
            acc |= chunk[(bits >> (8 * j)) & 0xFF] << (8 * k * j)
        return acc & ((1 << (k * m)) - 1)

    rng = random.Random(seed)
    for _ in range(samples):
        c = rng.getrandbits(length)
        gbits = encode_bits(c, length)
        fbits = c
        m = length
        for _t in range(horizon):
            fbits = _unravel_bits(f, fbits, m)
            for s in range(k):
                gbits = _unravel_bits(g, gbits, k * m - 2 * s)
            m -= 2
            if gbits != encode_bits(fbits, m):
                return False
    return True


def compose_witnesses(w1: EmulationWitness, w2: EmulationWitness) -> EmulationWitness:
    """From f <=_k g and g <=_l h, produce f <=_(k*l) h.

    The composite encoding maps each state through the first encoding and
    then encodes every cell of the result with the second.
    """
    if w1.emulator != w2.emulated:
        raise ValueError(
            f"cannot compose: first witness emulator is rule {w1.emulator.wolfram}, "
            f"second emulated is rule {w2.emulated.wolfram}")
    enc = Encoding(w1.k * w2.k,
                   encode_config(w2.encoding, w1.encoding.enc0),
                   encode_config(w2.encoding, w1.encoding.enc1))
    out = EmulationWitness(w1.emulated, w2.emulator, w1.k * w2.k, enc)
    if not out.holds():
        raise AssertionError("composed witness fails the defining equations")
    return out


# ---------------------------------------------------------------------------
# Subalgebra closures.

@dataclass(frozen=True)
class Subalgebra:
    """A subset of the k-bit supercells closed under the supercell operation."""

    rule: EcaRule
    k: int
    elements: frozenset[Word]

    @property
    def is_proper(self) -> bool:
        return len(self.elements) < 1 << self.k

    def op(self, u: Word, v: Word, x: Word) -> Word:
        """The induced ternary operation (agrees with supercell_step)."""
        return supercell_step(self.rule, self.k, u, v, x)

    def induced_table(self) -> dict[tuple[Word, Word, Word], Word]:
        """Materialized operation table; only for small element sets."""
        if len(self.elements) ** 3 > 1 << 15:
            raise ValueError(f"refusing to materialize {len(self.elements)}^3 entries")
        elems = sorted(self.elements, key=lambda w: w.bits)
        return {(u, v, x): self.op(u, v, x) for u in elems for v in elems for x in elems}

    def is_closed(self) -> bool:
        """Re-check the closure property (trivial for the full algebra)."""
        if not self.is_proper:
            return True
        elems = sorted(w.bits for w in self.elements)
        # closed exactly when closing the set adds nothing
        return _close(self.rule.wolfram, self.k, elems, len(elems)) is not None


def _close(wolfram: int, k: int, seeds: list[int], cap: int | None,
           full_generators: np.ndarray | None = None) -> list[int] | None:
    """Closure of the seed set under the supercell operation.

    Incremental: each round evaluates only the triples touching elements
    added in the previous round, in chunks, aborting as soon as the element
    count exceeds ``cap`` (None = unbounded).  Reaching all 2^k supercells
    short-circuits: the full set is always closed.  ``full_generators`` may
    mark elements already known to generate the full algebra; absorbing one
    makes this closure full too, so it is resolved without further work.
    """
    n = 1 << k
    member = np.zeros(n, dtype=bool)
    elems: list[int] = []

    def full_result() -> list[int] | None:
        return None if cap is not None and cap < n else list(range(n))

    for s in seeds:
        if not member[s]:
            member[s] = True
            elems.append(s)
            if full_generators is not None and full_generators[s]:
                return full_result()
    if cap is not None and len(elems) > cap:
        return None

    new_from = 0
    while new_from < len(elems):
        if len(elems) == n:
            return list(range(n))
        old = np.array(elems[:new_from], dtype=np.uint64)
        new = np.array(elems[new_from:], dtype=np.uint64)
        cur = np.array(elems, dtype=np.uint64)
        new_from = len(elems)
        # Triples with at least one new coordinate, without duplicates:
        # (new, cur, cur) + (old, new, cur) + (old, old, new).
        blocks = ((new, cur, cur), (old, new, cur), (old, old, new))
        for xs, ys, zs in blocks:
            total = len(xs) * len(ys) * len(zs)
            if not total:
                continue
            ny, nz = len(ys), len(zs)
            for lo in range(0, total, _CHUNK):
                t = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
                x = xs[t // (ny * nz)]
                y = ys[(t // nz) % ny]
                z = zs[t % nz]
                w = x | y << np.uint64(k) | z << np.uint64(2 * k)
                r = _unravel_batch(wolfram, w, 3 * k, k).astype(np.int64)
                fresh = np.unique(r[~member[r]])
                if len(fresh):
                    if full_generators is not None and full_generators[fresh].any():
                        return full_result()
                    member[fresh] = True
                    elems.extend(fresh.tolist())
                    if cap is not None and len(elems) > cap:
                        return None
                    if len(elems) == n:
                        return list(range(n))
    return elems


def _as_subalgebra(g: EcaRule, k: int, elems: list[int]) -> Subalgebra:
    return Subalgebra(g, k, frozenset(Word(e, k) for e in elems))


def singleton_closure(g: EcaRule, k: int, u: Word) -> Subalgebra:
    """Smallest subalgebra containing the single supercell u."""
    _check_k(k)
    if len(u) != k:
        raise ValueError(f"supercell has {len(u)} cells, expected {k}")
    return _as_subalgebra(g, k, _close(g.wolfram, k, [u.bits], None))


def pair_closure(g: EcaRule, k: int, u: Word, v: Word,
                 cap: int | None = None) -> Subalgebra | None:
    """Smallest subalgebra containing {u, v}; None once it grows past ``cap``.

    The default cap is 2^k - 1, i.e. the closure is reported only while it
    can still be a proper subalgebra.
    """
    _check_k(k)
    for name, w in (("u", u), ("v", v)):
        if len(w) != k:
            raise ValueError(f"supercell {name} has {len(w)} cells, expected {k}")
    if u == v:
        raise ValueError("pair_closure needs two distinct supercells")
    if cap is None:
        cap = (1 << k) - 1
    elems = _close(g.wolfram, k, [u.bits, v.bits], cap)
    return None if elems is None else _as_subalgebra(g, k, elems)


def proper_subalgebra_search(g: EcaRule, k: int) -> Subalgebra | None:
    """Some proper subalgebra with >= 2 elements, or None if there is none.

    Any closed pair found by the pair scan is already an answer.  Otherwise
    every singleton closure is computed: a proper one with >= 2 elements is
    an answer, the full ones disqualify their element from further pairing,
    and the fixed points are paired up and closed under the cap 2^k - 1.
    This is exhaustive: a proper subalgebra S with u, v in S forces the
    singleton closures of u and v to stay inside S, so once the singleton
    sweep found nothing, only pairs of fixed points remain possible seeds.
    """
    _check_k(k)
    n = 1 << k
    U, V, _ = _closed_pairs(g.wolfram, k)
    if len(U):
        return _as_subalgebra(g, k, [int(U[0]), int(V[0])])
    fixed: list[int] = []
    blows_up = np.zeros(n, dtype=bool)
    for u in range(n):
        elems = _close(g.wolfram, k, [u], None, blows_up)
        if elems is None or len(elems) == n:
            blows_up[u] = True
        elif len(elems) >= 2:
            return _as_subalgebra(g, k, elems)
        else:
            fixed.append(u)
    for i, u in enumerate(fixed):
        for v in fixed[i + 1:]:
            elems = _close(g.wolfram, k, [u, v], n - 1, blows_up)
            if elems is not None:
                return _as_subalgebra(g, k, elems)
    return None


def is_self_similar(f: EcaRule, kmax: int) -> int | None:
    """Smallest k in 2..kmax with f <=_k f, or None if there is none."""
    if kmax < 2:
        raise ValueError(f"kmax {kmax} < 2")
    for k in range(2, kmax + 1):
        if f.wolfram in emulated_rule_map(f, k):
            return k
    return None
