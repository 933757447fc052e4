"""Shannon entropy and the zero-mass-constrained maximum entropy.

All entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from scipy.optimize import minimize

from .phimap import PhiVariant

Mass = Union[Fraction, float, int]

FLOAT_SUM_TOL = 1e-12
NUMERIC_MAX_ITER = 10**5


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EntropyDistribution:
    """Probability masses; exact mode when every mass is a ``Fraction`` or ``int``."""

    masses: tuple[Mass, ...]

    def __post_init__(self) -> None:
        masses = tuple(self.masses)
        if not masses:
            raise ValueError("empty distribution")
        for m in masses:
            if m < 0:
                raise ValueError(f"negative mass {m}")
        total = sum(masses)
        if self.exact:
            if total != 1:
                raise ValueError(f"masses sum to {total}, not 1")
        elif abs(float(total) - 1.0) > FLOAT_SUM_TOL:
            raise ValueError(f"masses sum to {float(total)!r}, not 1 within {FLOAT_SUM_TOL}")
        object.__setattr__(self, "masses", masses)

    @property
    def exact(self) -> bool:
        return all(isinstance(m, (Fraction, int)) for m in self.masses)

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "EntropyDistribution":
        total = sum(counts)
        return cls(tuple(Fraction(c, total) for c in counts))

    def __len__(self) -> int:
        return len(self.masses)


def entropy(dist: EntropyDistribution | Sequence[Mass]) -> float:
    """``-sum p log2 p`` with ``0 log 0 = 0``."""
    if not isinstance(dist, EntropyDistribution):
        dist = EntropyDistribution(tuple(dist))
    h = 0.0
    for m in dist.masses:
        if m > 0:
            p = float(m)
            h -= p * math.log2(p)
    return h


def entropy_of_counts(counts: Sequence[int]) -> float:
    """Entropy of the empirical distribution ``counts / sum(counts)``."""
    total = sum(counts)
    return math.log2(total) - sum(c * math.log2(c) for c in counts if c) / total


def constrained_alphabet_size(q: int, variant: PhiVariant = PhiVariant.SEPARABLE) -> int:
    return variant.alphabet_size(q)


def max_constrained_entropy(
    q: int, variant: PhiVariant = PhiVariant.SEPARABLE
) -> tuple[float, EntropyDistribution]:
    """Maximum entropy over ``|D|`` symbols when symbol 0 has mass at least ``1/q``.

    The optimum puts exactly ``1/q`` on 0 and spreads the rest evenly. For the
    separable alphabet (``q^2 - q + 1`` symbols) the value is
    ``log2(q) * (2q - 1) / q``; for the difference alphabet (``2q - 1`` symbols)
    it is ``log2(q) + (q - 1) / q``.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    K = variant.alphabet_size(q)
    rest = Fraction(q - 1, q * (K - 1))
    dist = EntropyDistribution((Fraction(1, q),) + (rest,) * (K - 1))
    if variant is PhiVariant.SEPARABLE:
        bits = math.log2(q) * (2 * q - 1) / q
    else:
        bits = math.log2(q) + (q - 1) / q
    return bits, dist


def max_constrained_entropy_numeric(
    q: int, tol: float = 1e-9, variant: PhiVariant = PhiVariant.SEPARABLE, constrained: bool = True
) -> float:
    """Numerically maximize entropy on the simplex subject to ``alpha_0 >= 1/q``.

    Generic SLSQP from the uniform distribution; shares nothing with the closed
    form. ``constrained=False`` drops the zero-mass constraint. Raises
    :class:`ConvergenceError` if the solver fails or its point is infeasible
    beyond ``tol``.
    """
    if not 2 <= q <= 64:
        raise ValueError(f"numeric maximizer supports q in [2, 64], got {q}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    K = variant.alphabet_size(q)
    ln2 = math.log(2.0)

    def neg_h(a):
        a = np.clip(a, 1e-300, None)
        return float(np.sum(a * np.log2(a)))

    def neg_h_grad(a):
        a = np.clip(a, 1e-300, None)
        return np.log2(a) + 1.0 / ln2

    e0 = np.zeros(K)
    e0[0] = 1.0
    cons = [{"type": "eq", "fun": lambda a: np.sum(a) - 1.0, "jac": lambda a: np.ones(K)}]
    if constrained:
        cons.append({"type": "ineq", "fun": lambda a: a[0] - 1.0 / q, "jac": lambda a: e0})
    res = minimize(
        neg_h,
        np.full(K, 1.0 / K),
        jac=neg_h_grad,
        method="SLSQP",
        bounds=[(0.0, 1.0)] * K,
        constraints=cons,
        options={"ftol": min(tol * 1e-3, 1e-12), "maxiter": NUMERIC_MAX_ITER},
    )
    if not res.success:
        raise ConvergenceError(f"SLSQP failed for q={q}: {res.message}")
    a = np.clip(res.x, 0.0, None)
    if abs(a.sum() - 1.0) > tol or (constrained and a[0] < 1.0 / q - tol):
        raise ConvergenceError(f"SLSQP returned an infeasible point for q={q}")
    a = a / a.sum()
    return entropy(a.tolist())
