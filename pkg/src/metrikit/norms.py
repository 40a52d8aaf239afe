"""p-norms on R^n (p = inf and 0 < p < 1 included) and sample-based checks
of the standard inequalities between them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

INF = math.inf

# relative slack allowed when comparing two sides of an inequality
RTOL = 1e-12


def parse_exponent(value) -> float:
    """Accept numbers, "inf"/"∞", or fraction strings like "1/2"."""
    if isinstance(value, str):
        s = value.strip().lower()
        if s in ("inf", "infinity", "∞", "+inf"):
            return INF
        value = float(Fraction(s))
    p = float(value)
    if not p > 0:
        raise ValueError(f"exponent must be positive or inf, got {value!r}")
    return p


def format_exponent(p: float) -> str:
    return "inf" if p == INF else repr(float(p))


def norm_rows(x: np.ndarray, p: float) -> np.ndarray:
    """‖row‖_p for each row of a 2-d array."""
    a = np.abs(np.asarray(x, dtype=np.float64))
    if a.ndim == 1:
        a = a[None, :]
    top = a.max(axis=1)
    if p == INF:
        return top
    out = np.zeros_like(top)
    nz = top > 0
    scaled = a[nz] / top[nz, None]
    out[nz] = top[nz] * np.sum(scaled**p, axis=1) ** (1.0 / p)
    return out


def norm(x, p: float = 2.0) -> float:
    """‖x‖_p, computed as max|x_j| * (Σ (|x_j|/max)^p)^(1/p) to stay in range."""
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size == 0:
        raise ValueError("norm of an empty vector")
    return float(norm_rows(x[None, :], p)[0])


def pth_power_sum(x, p: float) -> float:
    """Σ |x_j|^p, i.e. ‖x‖_p^p without the root."""
    return float(np.sum(np.abs(np.asarray(x, dtype=np.float64)) ** p))


def _as_samples(samples) -> np.ndarray:
    arr = np.asarray(samples, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("samples must be a nonempty list of equal-length vectors")
    return arr


def _exceeds(lhs, rhs, atol):
    return lhs > rhs + RTOL * np.abs(rhs) + atol


@dataclass
class NormVerdict:
    passed: bool
    checks: dict = field(default_factory=dict)
    counterexample: dict | None = None


def verify_norm_axioms(p: float, samples, scalars=(-3.0, -1.0, 0.5, 2.0), atol: float = 1e-12) -> NormVerdict:
    """Positivity, homogeneity and the triangle inequality over every sample pair.

    For 0 < p < 1 and dim >= 2 the triangle inequality fails as soon as two
    basis vectors are among the samples.
    """
    xs = _as_samples(samples)
    nx = norm_rows(xs, p)
    checks = {}

    zero = np.all(xs == 0, axis=1)
    bad = np.flatnonzero((nx > 0) == zero)
    checks["positivity"] = bad.size == 0
    if bad.size:
        return NormVerdict(False, checks, {"axiom": "positivity", "x": xs[bad[0]].tolist()})

    for t in scalars:
        lhs = norm_rows(t * xs, p)
        rhs = abs(t) * nx
        bad = np.flatnonzero(np.abs(lhs - rhs) > 4 * np.finfo(float).eps * rhs + atol)
        if bad.size:
            checks["homogeneity"] = False
            return NormVerdict(False, checks, {"axiom": "homogeneity", "x": xs[bad[0]].tolist(), "t": t})
    checks["homogeneity"] = True

    for i in range(xs.shape[0]):
        lhs = norm_rows(xs[i] + xs[i:], p)
        rhs = nx[i] + nx[i:]
        bad = np.flatnonzero(_exceeds(lhs, rhs, atol))
        if bad.size:
            j = i + int(bad[0])
            checks["triangle"] = False
            return NormVerdict(
                False,
                checks,
                {"axiom": "triangle", "x": xs[i].tolist(), "y": xs[j].tolist(),
                 "lhs": float(lhs[bad[0]]), "rhs": float(rhs[bad[0]])},
            )
    checks["triangle"] = True
    return NormVerdict(True, checks)


def verify_quasinorm_p(p: float, samples, atol: float = 1e-12, cross_check: bool = True) -> NormVerdict:
    """‖x + y‖_p^p <= ‖x‖_p^p + ‖y‖_p^p on all pairs, for 0 < p < 1.

    With ``cross_check`` the matrix ‖x_i - x_j‖_p^p over the samples is also
    classified and must come out a metric.
    """
    if not 0 < p < 1:
        raise ValueError("the p-th power triangle inequality is for 0 < p < 1")
    xs = _as_samples(samples)
    powered = np.sum(np.abs(xs) ** p, axis=1)
    checks = {}
    for i in range(xs.shape[0]):
        lhs = np.sum(np.abs(xs[i] + xs[i:]) ** p, axis=1)
        rhs = powered[i] + powered[i:]
        bad = np.flatnonzero(_exceeds(lhs, rhs, atol))
        if bad.size:
            j = i + int(bad[0])
            checks["pth_power_triangle"] = False
            return NormVerdict(
                False, checks,
                {"axiom": "pth_power_triangle", "x": xs[i].tolist(), "y": xs[j].tolist(),
                 "lhs": float(lhs[bad[0]]), "rhs": float(rhs[bad[0]])},
            )
    checks["pth_power_triangle"] = True

    if cross_check:
        from .core import DISTANCE, SEMIDISTANCE, FiniteDistanceSpace
        from .properties import quasimetric_constant

        diff = xs[:, None, :] - xs[None, :, :]
        mat = np.sum(np.abs(diff) ** p, axis=2)
        distinct = len({tuple(r) for r in xs.tolist()}) == xs.shape[0]
        space = FiniteDistanceSpace(mat, kind=DISTANCE if distinct else SEMIDISTANCE)
        c, _ = quasimetric_constant(space)
        checks["powered_distance_is_metric"] = c <= 1 + 1e-9
        if not checks["powered_distance_is_metric"]:
            return NormVerdict(False, checks, {"axiom": "powered_distance_is_metric", "constant": c})
    return NormVerdict(True, checks)


@dataclass
class ComparisonRow:
    name: str
    violations: int
    worst_slack: float  # min of rhs - lhs over the samples
    worst_index: int


def comparison_sides(xs: np.ndarray, p: float, q: float) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """lhs/rhs arrays for the four comparisons between ‖·‖_p, ‖·‖_q, ‖·‖_inf."""
    n = xs.shape[1]
    np_ = norm_rows(xs, p)
    nq = norm_rows(xs, q)
    ninf = norm_rows(xs, INF)
    inv_p = 0.0 if p == INF else 1.0 / p
    inv_q = 0.0 if q == INF else 1.0 / q
    return {
        "inf_le_p": (ninf, np_),
        "p_le_n^(1/p)_inf": (np_, n**inv_p * ninf),
        "q_le_p": (nq, np_),
        "p_le_n^(1/p-1/q)_q": (np_, n ** (inv_p - inv_q) * nq),
    }


def verify_comparisons(p: float, q: float, samples, atol: float = 1e-12) -> list[ComparisonRow]:
    if not 0 < p < q:
        raise ValueError("need 0 < p < q <= inf")
    xs = _as_samples(samples)
    rows = []
    for name, (lhs, rhs) in comparison_sides(xs, p, q).items():
        slack = rhs - lhs
        worst = int(np.argmin(slack))
        rows.append(ComparisonRow(name, int(np.count_nonzero(_exceeds(lhs, rhs, atol))), float(slack[worst]), worst))
    return rows


@dataclass
class PowerMeanVerdict:
    holds: bool
    rows: list  # (name, lhs, rhs, holds)


def power_mean_inequalities(a: float, b: float, q: float, atol: float = 1e-12) -> PowerMeanVerdict:
    """(a+b)^q <= 2^(q-1)(a^q+b^q) for q >= 1 and (a+b)^q <= a^q+b^q for q <= 1."""
    if a < 0 or b < 0 or not q > 0:
        raise ValueError("need a, b >= 0 and q > 0")
    lhs = (a + b) ** q
    rows = []
    if q >= 1:
        rhs = 2 ** (q - 1) * (a**q + b**q)
        rows.append(("convex", lhs, rhs, not _exceeds(lhs, rhs, atol)))
    if q <= 1:
        rhs = a**q + b**q
        rows.append(("subadditive", lhs, rhs, not _exceeds(lhs, rhs, atol)))
    return PowerMeanVerdict(all(r[3] for r in rows), rows)


def fuzz_vectors(count: int, dim: int, seed: int = 0) -> np.ndarray:
    """Gaussian vectors with log-uniform scales, some sparse, reproducible by seed."""
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((count, dim))
    xs *= 10.0 ** rng.uniform(-3, 3, size=(count, 1))
    mask = rng.random((count, dim)) < 0.2
    xs[mask] = 0.0
    return xs
