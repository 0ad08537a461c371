"""Probability distributions over N outcomes and their information geometry.

The simplex of N-outcome distributions carries the information metric

    ds^2 = (1/4) * sum_i dp_i^2 / p_i

whose geodesic distance between two distributions is the angle

    d_S(p, p') = arccos( sum_i sqrt(p_i * p'_i) ).

The square-root embedding q_i = sqrt(p_i) maps the simplex onto the positive
orthant of the unit sphere and turns the metric into the Euclidean one, which
is why d_S is an arccos of a dot product.  The KL divergence (in nats) agrees
with 2 * ds^2 to second order along any tangent direction; the remainder is
cubic in the step size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AbsoluteContinuityViolation,
    DimensionMismatch,
    SingularMetric,
    ValidationError,
)

NORMALIZATION_TOL = 1e-12


def _as_readonly_float_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ProbDist:
    """A distribution over N >= 2 outcomes.

    Entries must be nonnegative and sum to 1 within 1e-12.  Zeros are legal;
    the operations below raise typed errors only where a zero actually
    matters.  Use :meth:`renormalized` for raw user input.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_readonly_float_array(self.probs, "probs")
        if arr.size < 2:
            raise ValidationError("a distribution needs at least 2 outcomes")
        if np.any(arr < 0.0):
            raise ValidationError("probabilities must be nonnegative")
        total = float(arr.sum())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(
                f"probabilities sum to {total!r}, not 1 within {NORMALIZATION_TOL}"
            )
        object.__setattr__(self, "probs", arr)

    @classmethod
    def renormalized(cls, values) -> "ProbDist":
        """Scale nonnegative weights to sum exactly to 1."""
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1 or arr.size < 2:
            raise ValidationError("need a one-dimensional vector of >= 2 weights")
        if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
            raise ValidationError("weights must be finite and nonnegative")
        total = arr.sum()
        if total <= 0.0:
            raise ValidationError("weights must have positive sum")
        return cls(arr / total)

    @property
    def n(self) -> int:
        return int(self.probs.size)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class TangentVec:
    """A tangent direction to the simplex: N reals summing to 0 within 1e-12."""

    deltas: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_readonly_float_array(self.deltas, "deltas")
        if arr.size < 2:
            raise ValidationError("a tangent vector needs at least 2 components")
        if abs(arr.sum()) > NORMALIZATION_TOL:
            raise ValidationError("tangent components must sum to 0 within 1e-12")
        object.__setattr__(self, "deltas", arr)

    @property
    def n(self) -> int:
        return int(self.deltas.size)


def _check_same_dim(a_size: int, b_size: int) -> None:
    if a_size != b_size:
        raise DimensionMismatch(f"dimension mismatch: {a_size} vs {b_size}")


def fisher_quadratic(p: ProbDist, dp: TangentVec) -> float:
    """Quadratic form of the information metric, (1/4) * sum dp_i^2 / p_i.

    Raises SingularMetric when dp points off a face of the simplex, i.e.
    dp_i != 0 where p_i = 0.  Terms with dp_i = 0 contribute nothing even
    at p_i = 0.
    """
    _check_same_dim(p.n, dp.n)
    probs, deltas = p.probs, dp.deltas
    moving = deltas != 0.0
    if np.any(moving & (probs == 0.0)):
        raise SingularMetric("dp is nonzero on an outcome with zero probability")
    terms = np.zeros_like(probs)
    np.divide(deltas**2, probs, out=terms, where=moving)
    return 0.25 * float(terms.sum())


def statistical_distance(p: ProbDist, p2: ProbDist) -> float:
    """Geodesic distance arccos(sum_i sqrt(p_i * p2_i)), in [0, pi/2].

    Equals 0 iff the distributions coincide and pi/2 iff their supports are
    disjoint.
    """
    _check_same_dim(p.n, p2.n)
    overlap = float(np.sqrt(p.probs * p2.probs).sum())
    return float(np.arccos(np.clip(overlap, 0.0, 1.0)))


def kl_divergence(p: ProbDist, p2: ProbDist) -> float:
    """KL divergence sum_i p_i ln(p_i / p2_i) in nats.

    Terms with p_i = 0 contribute 0.  Raises AbsoluteContinuityViolation if
    p puts mass on an outcome where p2 has none.
    """
    _check_same_dim(p.n, p2.n)
    support = p.probs > 0.0
    if np.any(support & (p2.probs == 0.0)):
        raise AbsoluteContinuityViolation("p has mass where p2 vanishes")
    a = p.probs[support]
    b = p2.probs[support]
    return float(np.sum(a * np.log(a / b)))


def sqrt_embed(p: ProbDist) -> np.ndarray:
    """Entry-wise square root: a unit vector on the positive orthant.

    The Euclidean angle between two embedded distributions is their
    statistical distance: arccos(sqrt_embed(p) . sqrt_embed(p2)) = d_S(p, p2).
    """
    return np.sqrt(p.probs)
