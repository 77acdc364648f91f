"""Exhaustive SL_n(Z) norm-ball enumeration and congruence counting, n = 2, 3.

The n = 2 enumerator sweeps (a, b, c) with d solved from the determinant,
vectorized in per-a slabs.  The n = 3 enumerator iterates the first two
rows with norm pruning and solves the third row on the affine lattice
{x : (r1 x r2) . x = 1} inside the remaining norm budget.  All counts are
exact; norms are compared as integers (norm_sq <= floor(R^2)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import Iterator

import numpy as np

from . import baselines

__all__ = [
    "BudgetExceededError",
    "NonSquareFreeError",
    "IntegerMatrix",
    "CongruenceLevel",
    "CountRecord",
    "DrsFit",
    "ball_enumerate",
    "ball_count",
    "brute_force_count_n2",
    "brute_force_count_n3",
    "sl_count_mod",
    "sl_count_mod_brute",
    "gamma_q_count",
    "sarnak_xue_scan",
    "drs_fit",
    "minimal_lift_search",
]

GUARD_R = {2: 300.0, 3: 40.0}


class BudgetExceededError(RuntimeError):
    """Predicted enumeration size exceeds the configured cap."""


class NonSquareFreeError(ValueError):
    """Congruence level must be square-free."""


@dataclass(frozen=True)
class IntegerMatrix:
    n: int
    entries: tuple  # row-major, length n*n
    norm_sq: int

    def __post_init__(self):
        if len(self.entries) != self.n * self.n:
            raise ValueError("entry count does not match dimension")
        if self.det() != 1:
            raise ValueError(f"determinant must be 1, got {self.det()}")
        if self.norm_sq != sum(e * e for e in self.entries):
            raise ValueError("norm_sq inconsistent with entries")

    def det(self) -> int:
        e = self.entries
        if self.n == 2:
            return e[0] * e[3] - e[1] * e[2]
        return (e[0] * (e[4] * e[8] - e[5] * e[7])
                - e[1] * (e[3] * e[8] - e[5] * e[6])
                + e[2] * (e[3] * e[7] - e[4] * e[6]))

    def residues(self, q: int) -> tuple:
        return tuple(e % q for e in self.entries)


def _factorize(q: int):
    fac = []
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        fac.append((m, 1))
    return tuple(fac)


@dataclass(frozen=True)
class CongruenceLevel:
    q: int
    factorization: tuple

    @classmethod
    def from_int(cls, q: int) -> "CongruenceLevel":
        if q < 1:
            raise ValueError("q must be positive")
        return cls(q=q, factorization=_factorize(q))

    @property
    def square_free(self) -> bool:
        return all(e == 1 for _, e in self.factorization)


def _as_q(q) -> int:
    if isinstance(q, CongruenceLevel):
        return q.q
    return int(q)


def _r2int(R: float) -> int:
    return int(math.floor(R * R + 1e-9))


def _check_guards(n: int, R: float, cap: int):
    if n not in (2, 3):
        raise ValueError("n must be 2 or 3")
    if R > GUARD_R[n]:
        raise ValueError(f"R = {R} beyond desk-scale guard {GUARD_R[n]} for n = {n}")
    predicted = baselines.DRS_C.get(n, 6.0) * R ** (n * (n - 1)) + 10
    if predicted > cap:
        raise BudgetExceededError(
            f"predicted ball size {predicted:.3g} exceeds cap {cap:.3g}")


# ---------------------------------------------------------------------------
# n = 2
# ---------------------------------------------------------------------------

def _slabs_n2(R: float, q: int = 1):
    """Per-a arrays (a, b, c, d) of ball members, lexicographic within slab.

    With q > 1 only matrices congruent to the identity mod q are emitted.
    """
    R2 = _r2int(R)
    A = int(math.isqrt(max(R2 - 1, 0)))
    for a in range(-A, A + 1):
        rem_a = R2 - a * a
        if rem_a < 1:
            continue
        if a == 0:
            if q > 1 or R2 < 2:
                continue  # 0 is never 1 mod q
            # bc = -1, d free within norm budget
            rows = []
            for b, c in ((-1, 1), (1, -1)):
                dmax = int(math.isqrt(R2 - 2))
                for d in range(-dmax, dmax + 1):
                    rows.append((0, b, c, d))
            if rows:
                yield np.array(rows, dtype=np.int64)
            continue
        if q > 1 and (a - 1) % q != 0:
            continue
        B = int(math.isqrt(rem_a - 1))
        bs = np.arange(-B, B + 1, dtype=np.int64)
        bb, cc = np.meshgrid(bs, bs, indexing="ij")
        num = 1 + bb * cc
        ok = num % a == 0
        dd = np.where(ok, num // np.int64(a), np.int64(0))
        norm = a * a + bb * bb + cc * cc + dd * dd
        ok &= norm <= R2
        if q > 1:
            ok &= (bb % q == 0) & (cc % q == 0) & ((dd - 1) % q == 0)
        if not ok.any():
            continue
        sel = np.argwhere(ok)
        rows = np.empty((len(sel), 4), dtype=np.int64)
        rows[:, 0] = a
        rows[:, 1] = bb[ok]
        rows[:, 2] = cc[ok]
        rows[:, 3] = dd[ok]
        yield rows


# ---------------------------------------------------------------------------
# n = 3 third-row machinery
# ---------------------------------------------------------------------------

def _ext_gcd(a: int, b: int):
    if b == 0:
        if a >= 0:
            return a, 1, 0
        return -a, -1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _unimodular_to_e1(w):
    """V in GL3(Z), |det V| = 1, with V @ w = (gcd(w), 0, 0)."""
    w1, w2, w3 = int(w[0]), int(w[1]), int(w[2])
    g12, x, y = _ext_gcd(w1, w2)
    if g12 == 0:
        A = np.eye(3, dtype=np.int64)
    else:
        A = np.array([[x, y, 0],
                      [-(w2 // g12), w1 // g12, 0],
                      [0, 0, 1]], dtype=np.int64)
    g2, x2, y2 = _ext_gcd(g12, w3)
    B = np.array([[x2, 0, y2],
                  [0, 1, 0],
                  [-(w3 // g2) if g2 else 0, 0, (g12 // g2) if g2 else 1]],
                 dtype=np.int64)
    return B @ A


def _plane_rows(w, budget: int):
    """Integer rows x with w . x = 1 and |x|^2 <= budget, sorted lex."""
    g = gcd(gcd(abs(int(w[0])), abs(int(w[1]))), abs(int(w[2])))
    if g != 1:
        return []
    V = _unimodular_to_e1(w)
    x0 = V[0].copy()
    v2, v3 = V[1], V[2]
    a22 = int(v2 @ v2); a23 = int(v2 @ v3); a33 = int(v3 @ v3)
    b2 = int(x0 @ v2); b3 = int(x0 @ v3); c0 = int(x0 @ x0)
    det = a22 * a33 - a23 * a23  # = |w|^2 > 0
    sols = []
    kstar = (a23 * b2 - a22 * b3) / det
    krad = math.isqrt(max(int(budget * a22 / det), 0)) + 2
    for k in range(math.floor(kstar) - krad, math.ceil(kstar) + krad + 1):
        Bq = a23 * k + b2
        Cq = a33 * k * k + 2 * b3 * k + c0 - budget
        disc = Bq * Bq - a22 * Cq
        if disc < 0:
            continue
        sq = math.sqrt(disc)
        for m in range(math.ceil((-Bq - sq) / a22), math.floor((-Bq + sq) / a22) + 1):
            x = x0 + m * v2 + k * v3
            sols.append((int(x[0]), int(x[1]), int(x[2])))
    sols.sort()
    return sols


def _row_pool(R2: int, room: int):
    """Nonzero integer 3-vectors with |r|^2 <= R2 - room, lex sorted."""
    A = int(math.isqrt(max(R2 - room, 0)))
    rng = np.arange(-A, A + 1, dtype=np.int64)
    g1, g2, g3 = np.meshgrid(rng, rng, rng, indexing="ij")
    pts = np.stack([g1.ravel(), g2.ravel(), g3.ravel()], axis=1)
    n2 = (pts ** 2).sum(axis=1)
    keep = (n2 >= 1) & (n2 <= R2 - room)
    pts, n2 = pts[keep], n2[keep]
    order = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0]))
    return pts[order], n2[order]


def _enumerate_n3(R: float) -> Iterator[tuple]:
    """9-tuples of SL3(Z) ball members in row-major lex order."""
    R2 = _r2int(R)
    if R2 < 3:
        return
    pts, n2 = _row_pool(R2, 2)
    for i in range(len(pts)):
        r1, m1 = pts[i], int(n2[i])
        room = R2 - m1 - 1
        sel = n2 <= room
        cand = pts[sel]
        cn2 = n2[sel]
        cross = np.cross(np.broadcast_to(r1, cand.shape), cand)
        gcds = np.gcd(np.gcd(np.abs(cross[:, 0]), np.abs(cross[:, 1])),
                      np.abs(cross[:, 2]))
        good = gcds == 1
        for r2, m2, w in zip(cand[good], cn2[good], cross[good]):
            budget = R2 - m1 - int(m2)
            for r3 in _plane_rows(w, budget):
                yield (int(r1[0]), int(r1[1]), int(r1[2]),
                       int(r2[0]), int(r2[1]), int(r2[2]),
                       r3[0], r3[1], r3[2])


# ---------------------------------------------------------------------------
# public enumeration / counting
# ---------------------------------------------------------------------------

def ball_enumerate(n: int, R: float, cap: int = 50_000_000) -> Iterator[IntegerMatrix]:
    """Stream every gamma in SL_n(Z) with ||gamma|| <= R exactly once.

    Deterministic row-major lexicographic order by entries.
    """
    _check_guards(n, R, cap)
    if n == 2:
        slabs = sorted(
            (row for slab in _slabs_n2(R) for row in slab.tolist()))
        for a, b, c, d in slabs:
            yield IntegerMatrix(2, (a, b, c, d), a * a + b * b + c * c + d * d)
    else:
        for e in _enumerate_n3(R):
            yield IntegerMatrix(3, e, sum(v * v for v in e))


def ball_count(n: int, R: float, q=1, cap: int = 50_000_000) -> int:
    """Exact count of {gamma in Gamma(q) : ||gamma|| <= R}."""
    q = _as_q(q)
    _check_guards(n, R, cap)
    if n == 2:
        return sum(len(slab) for slab in _slabs_n2(R, q=q))
    if q == 1:
        return sum(1 for _ in _enumerate_n3(R))
    count = 0
    target = (1, 0, 0, 0, 1, 0, 0, 0, 1)
    for e in _enumerate_n3(R):
        if all((v - t) % q == 0 for v, t in zip(e, target)):
            count += 1
    return count


def brute_force_count_n2(R: float, q: int = 1) -> int:
    """Independent n = 2 oracle: plain nested loops over (a, b, c), solve d."""
    R2 = _r2int(R)
    A = int(math.isqrt(max(R2 - 1, 0)))
    count = 0
    for b in range(-A, A + 1):
        for c in range(-A, A + 1):
            for a in range(-A, A + 1):
                if a == 0:
                    if b * c != -1:
                        continue
                    rem = R2 - b * b - c * c
                    if rem < 0:
                        continue
                    dmax = math.isqrt(rem)
                    for d in range(-dmax, dmax + 1):
                        if q == 1 or (b % q == 0 and c % q == 0 and
                                      (0 - 1) % q == 0):
                            count += 1
                    continue
                num = 1 + b * c
                if num % a != 0:
                    continue
                d = num // a
                if a * a + b * b + c * c + d * d > R2:
                    continue
                if q > 1 and not ((a - 1) % q == 0 and b % q == 0 and
                                  c % q == 0 and (d - 1) % q == 0):
                    continue
                count += 1
    return count


def brute_force_count_n3(R: float) -> int:
    """Independent n = 3 oracle: fix rows one and three, solve the middle row."""
    R2 = _r2int(R)
    if R2 < 3:
        return 0
    pts, n2 = _row_pool(R2, 2)
    count = 0
    for i in range(len(pts)):
        r1, m1 = pts[i], int(n2[i])
        room = R2 - m1 - 1
        sel = n2 <= room
        cand = pts[sel]
        cn2 = n2[sel]
        # det[r1; r2; r3] = r2 . (r3 x r1)
        cross = np.cross(cand, np.broadcast_to(r1, cand.shape))
        gcds = np.gcd(np.gcd(np.abs(cross[:, 0]), np.abs(cross[:, 1])),
                      np.abs(cross[:, 2]))
        good = gcds == 1
        for m3, w in zip(cn2[good], cross[good]):
            count += len(_plane_rows(w, R2 - m1 - int(m3)))
    return count


# ---------------------------------------------------------------------------
# congruence quotients and scans
# ---------------------------------------------------------------------------

def sl_count_mod(n: int, q) -> int:
    """|SL_n(Z/qZ)| for square-free q, exact integer."""
    lvl = q if isinstance(q, CongruenceLevel) else CongruenceLevel.from_int(int(q))
    if not lvl.square_free:
        raise NonSquareFreeError(f"q = {lvl.q} is not square-free")
    total = 1
    for p, _ in lvl.factorization:
        size = p ** (n * n - 1)
        for k in range(2, n + 1):
            size = size * (p ** k - 1) // p ** k
        total *= size
    return total


def sl_count_mod_brute(n: int, q: int) -> int:
    """Exhaustive residue count, for q small enough that q^(n^2) is tiny."""
    import itertools

    count = 0
    for entries in itertools.product(range(q), repeat=n * n):
        m = IntegerMatrix.__new__(IntegerMatrix)
        object.__setattr__(m, "n", n)
        object.__setattr__(m, "entries", entries)
        object.__setattr__(m, "norm_sq", 0)
        if m.det() % q == 1 % q:
            count += 1
    return count


@dataclass(frozen=True)
class CountRecord:
    n: int
    q: int
    R: float
    count: int
    main_term: float
    sx_bound: float
    ratio_sx: float


def _sx_bound(n: int, q: int, R: float) -> float:
    e = n * (n - 1)
    return R ** e / q ** (n * n - 1) + R ** (e / 2.0)


def gamma_q_count(n: int, q, R: float, c_n: float | None = None,
                  cap: int = 50_000_000) -> CountRecord:
    """Count Gamma(q) ball members plus the reference main term and SX bound."""
    q = _as_q(q)
    count = ball_count(n, R, q=q, cap=cap)
    if c_n is None:
        c_n = baselines.DRS_C[n]
    main = c_n * R ** (n * (n - 1)) / sl_count_mod(n, q)
    sx = _sx_bound(n, q, R)
    return CountRecord(n=n, q=q, R=float(R), count=count, main_term=main,
                       sx_bound=sx, ratio_sx=count / sx)


def sarnak_xue_scan(n: int, qs, Rs, cap: int = 50_000_000):
    """CountRecord table over the (q, R) grid; returns (records, max ratio)."""
    records = []
    for q in qs:
        for R in Rs:
            records.append(gamma_q_count(n, q, R, cap=cap))
    return records, max(r.ratio_sx for r in records)


@dataclass(frozen=True)
class DrsFit:
    c_n: float
    exponent: float
    residuals: tuple
    free_exponent: bool


def drs_fit(n: int, Rs, counts=None, free_exponent: bool = False,
            cap: int = 50_000_000) -> DrsFit:
    """Least-squares fit of ball counts against c R^(n(n-1)).

    With ``free_exponent`` both log c and the exponent are fitted; otherwise
    the exponent is pinned to n(n-1).  Residuals are per-point relative.
    """
    Rs = list(Rs)
    if len(Rs) < 4:
        raise ValueError("need at least 4 radii for a stable fit")
    if counts is None:
        counts = [ball_count(n, R, cap=cap) for R in Rs]
    e = n * (n - 1)
    lr = np.log(np.asarray(Rs, dtype=float))
    lc = np.log(np.asarray(counts, dtype=float))
    if free_exponent:
        design = np.vstack([lr, np.ones_like(lr)]).T
        (slope, intercept), *_ = np.linalg.lstsq(design, lc, rcond=None)
        c = math.exp(intercept)
        expo = float(slope)
    else:
        intercept = float(np.mean(lc - e * lr))
        c = math.exp(intercept)
        expo = float(e)
    fitted = c * np.asarray(Rs, dtype=float) ** expo
    resid = tuple((np.asarray(counts) - fitted) / fitted)
    return DrsFit(c_n=c, exponent=expo, residuals=resid, free_exponent=free_exponent)


def minimal_lift_search(n: int, q, target_residues: tuple, R_max: float,
                        cap: int = 50_000_000):
    """Minimal-norm ball member congruent to the target; lexicographic ties.

    Returns an IntegerMatrix or None when no lift exists within R_max.
    """
    q = _as_q(q)
    best = None
    for m in ball_enumerate(n, R_max, cap=cap):
        if m.residues(q) != target_residues:
            continue
        key = (m.norm_sq, m.entries)
        if best is None or key < (best.norm_sq, best.entries):
            best = m
    return best
