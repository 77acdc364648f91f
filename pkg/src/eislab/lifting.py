"""Optimal lifting experiments: residue coverage of SL_n(Z/qZ) by norm balls.

Coverage walks the ball once and collects packed residue keys; totals come
from the exact quotient order, so full enumeration of SL_n(Z/qZ) is never
needed outside the tiny brute-force oracles.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import (
    IntegerMatrix,
    _as_q,
    _enumerate_n3,
    _slabs_n2,
    _check_guards,
    minimal_lift_search,
    sl_count_mod,
)

__all__ = [
    "MemoryCapError",
    "ResidueClass",
    "CoverageRecord",
    "coverage",
    "lifting_exponent_scan",
    "minimal_lift",
]


class MemoryCapError(RuntimeError):
    """Residue table would exceed the configured memory cap."""


@dataclass(frozen=True)
class ResidueClass:
    n: int
    q: int
    entries: tuple  # row-major, values in [0, q)

    def __post_init__(self):
        if any(not 0 <= e < self.q for e in self.entries):
            raise ValueError("residue entries must lie in [0, q)")
        m = IntegerMatrix.__new__(IntegerMatrix)
        object.__setattr__(m, "n", self.n)
        object.__setattr__(m, "entries", self.entries)
        object.__setattr__(m, "norm_sq", 0)
        if m.det() % self.q != 1 % self.q:
            raise ValueError("residue determinant is not 1 mod q")

    @classmethod
    def identity(cls, n: int, q: int) -> "ResidueClass":
        e = tuple(1 if i % (n + 1) == 0 else 0 for i in range(n * n))
        return cls(n=n, q=q, entries=tuple(v % q for v in e))


@dataclass(frozen=True)
class CoverageRecord:
    n: int
    q: int
    R: float
    covered: int
    total: int
    uncovered_fraction: float


def _pack_keys(cols, q: int) -> np.ndarray:
    key = np.zeros(len(cols[0]), dtype=np.int64)
    for col in cols:
        key = key * q + (col % q)
    return key


def coverage(n: int, q, R: float, memory_cap: int = 10_000_000,
             cap: int = 50_000_000) -> CoverageRecord:
    """Exact count of residues mod q realized by the ball of radius R."""
    q = _as_q(q)
    total = sl_count_mod(n, q)
    if total > memory_cap:
        raise MemoryCapError(f"|SL_{n}(Z/{q})| = {total} exceeds cap {memory_cap}")
    if q == 1:
        return CoverageRecord(n=n, q=1, R=float(R), covered=1, total=1,
                              uncovered_fraction=0.0)
    _check_guards(n, R, cap)
    seen = set()
    if n == 2:
        for slab in _slabs_n2(R):
            cols = [slab[:, j] for j in range(4)]
            seen.update(_pack_keys(cols, q).tolist())
    else:
        for e in _enumerate_n3(R):
            key = 0
            for v in e:
                key = key * q + (v % q)
            seen.add(key)
    covered = len(seen)
    return CoverageRecord(n=n, q=q, R=float(R), covered=covered, total=total,
                          uncovered_fraction=1.0 - covered / total)


def lifting_exponent_scan(n: int, qs, epsilon: float,
                          memory_cap: int = 10_000_000,
                          cap: int = 50_000_000):
    """Coverage at R = q^(1 + 1/n + epsilon) per q, plus fitted decay slope.

    The slope is the least-squares exponent of uncovered_fraction against q
    over the q with nonzero uncovered fraction; NaN when saturation leaves
    fewer than two usable points (coverage is then complete).
    """
    records = []
    for q in qs:
        R = float(q) ** (1.0 + 1.0 / n + epsilon)
        records.append(coverage(n, q, R, memory_cap=memory_cap, cap=cap))
    qv = np.array([r.q for r in records], dtype=float)
    uv = np.array([r.uncovered_fraction for r in records])
    mask = uv > 0
    if mask.sum() >= 2:
        slope = float(np.polyfit(np.log(qv[mask]), np.log(uv[mask]), 1)[0])
    else:
        slope = float("nan")
    return records, slope


def minimal_lift(n: int, q, r: ResidueClass, R_max: float,
                 cap: int = 50_000_000):
    """Minimal Frobenius-norm lift of the residue class, or None."""
    q = _as_q(q)
    if r.n != n or r.q != q:
        raise ValueError("residue class does not match (n, q)")
    return minimal_lift_search(n, q, r.entries, R_max, cap=cap)
