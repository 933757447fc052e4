"""Finite-n verification of the entropy argument behind the rate bounds.

For a concrete code and prefix length ``e`` every exact (non-asymptotic) step
of the argument is evaluated and compared:

1. ``M^2 / q^e <= sum |P_i|^2`` (Cauchy-Schwarz over the ``q^e`` prefix classes),
2. the pair entropy ``H(X, Y)`` equals ``log2 sum |P_i|^2``,
3. phi is injective on distinct same-class pairs,
4. ``Pr(Z = 0) = M / sum |P_i|^2`` and ``Pr(Z = 0) <= q^e / M``,
5. every coordinate of ``Z`` is zero with frequency at least ``1/q``,
6. ``H(X, Y | Z = 0) = log2 M``,
7. ``log2 sum |P_i|^2 <= f * cap + Pr(Z = 0) log2 M`` with ``cap`` the
   constrained per-coordinate maximum entropy.

The empirical ``H(Z)`` and the chain-rule residual are reported for
information only.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import Code, partition_by_prefix, sum_of_squares
from .entropy import entropy_of_counts, max_constrained_entropy
from .phimap import PhiVariant, check_injectivity, encode_symbol, zero_frequency
from .predicates import find_b2_violation, find_separable_violation

FLOAT_TOL = 1e-9


class ChainPreconditionError(ValueError):
    """The code does not have the property the chosen phi variant needs."""

    def __init__(self, message: str, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness


def choose_prefix_length(M: int, q: int, n: int | None = None) -> int:
    """Largest ``e`` with ``q^e <= 2M / log2 M``, clamped to ``[0, n]``.

    ``M = 1`` has ``log2 M = 0`` and gets ``e = 0``.
    """
    if M < 1 or q < 2:
        raise ValueError(f"need M >= 1 and q >= 2, got M={M}, q={q}")
    if M == 1:
        return 0
    x = 2 * M / math.log2(M)
    e = max(0, math.floor(math.log(x) / math.log(q)))
    # repair float rounding around exact powers
    while q ** (e + 1) <= x:
        e += 1
    while e > 0 and q**e > x:
        e -= 1
    if n is not None:
        e = min(e, n)
    return e


@dataclass(frozen=True)
class ChainStep:
    name: str
    lhs: Any
    relation: str
    rhs: Any
    passed: bool
    tol: float = 0.0


def _step(name: str, lhs, relation: str, rhs, tol: float = 0.0) -> ChainStep:
    # exact values (Fraction, int) are compared without any slack
    if relation == "<=":
        ok = lhs <= rhs + tol if tol else lhs <= rhs
    elif relation == ">=":
        ok = lhs + tol >= rhs if tol else lhs >= rhs
    elif relation == "==":
        ok = abs(lhs - rhs) <= tol if tol else lhs == rhs
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return ChainStep(name, lhs, relation, rhs, bool(ok), tol)


@dataclass(frozen=True)
class ChainReport:
    q: int
    n: int
    variant: PhiVariant
    M: int
    e: int
    r: int
    f: int
    sum_sq: int
    h_xy: float
    h_z_cap: float
    pr_zero: Fraction
    h_cond: float
    injective: bool
    steps: tuple[ChainStep, ...]
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    def failed_steps(self) -> list[ChainStep]:
        return [s for s in self.steps if not s.passed]

    def key_values(self) -> list[str]:
        kv = {
            "q": self.q,
            "n": self.n,
            "variant": self.variant.value,
            "M": self.M,
            "e": self.e,
            "r": self.r,
            "f": self.f,
            "sum_sq": self.sum_sq,
            "h_xy": _num(self.h_xy),
            "h_z_cap": _num(self.h_z_cap),
            "pr_zero": self.pr_zero,
            "h_cond": _num(self.h_cond),
            "injective": str(self.injective).lower(),
        }
        for k, v in self.info.items():
            kv[f"info.{k}"] = _num(v) if isinstance(v, float) else v
        for s in self.steps:
            kv[f"step.{s.name}"] = "pass" if s.passed else "FAIL"
        kv["pass"] = str(self.passed).lower()
        return [f"{k}={v}" for k, v in kv.items()]

    def format_text(self) -> str:
        rows = [(s.name, _num(s.lhs), s.relation, _num(s.rhs), "pass" if s.passed else "FAIL") for s in self.steps]
        widths = [max(len(r[i]) for r in rows + [("step", "lhs", "rel", "rhs", "")]) for i in range(5)]
        head = (
            f"proof chain: q={self.q} n={self.n} variant={self.variant.value} "
            f"M={self.M} e={self.e} f={self.f} r={self.r}"
        )
        lines = [head]
        for r in [("step", "lhs", "rel", "rhs", "")] + rows:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        lines.append(f"result: {'all steps pass' if self.passed else 'FAILED'}")
        return "\n".join(lines)


def _num(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def verify_proof_chain(code: Code, e: int | None = None, variant: PhiVariant = PhiVariant.SEPARABLE) -> ChainReport:
    """Evaluate every finite-n step of the argument on ``code``.

    ``e=None`` picks :func:`choose_prefix_length` capped at ``n``.
    Raises :class:`ChainPreconditionError` if ``code`` lacks the property
    (2-bar-separable for ``SEPARABLE``, B2 for ``B2DIFF``).
    """
    q, n, M = code.q, code.n, code.size
    if variant is PhiVariant.SEPARABLE:
        bad = find_separable_violation(code, 2)
        rule = "2-bar-separable"
    else:
        bad = find_b2_violation(code)
        rule = "B2"
    if bad is not None:
        raise ChainPreconditionError(f"code is not {rule}: witness {bad}", bad)
    if e is None:
        e = choose_prefix_length(M, q, n)
    if not 0 <= e <= n:
        raise ValueError(f"prefix length e={e} out of range [0, {n}]")

    part = partition_by_prefix(code, e)
    f, r = part.f, part.r
    S = sum_of_squares(part)
    steps: list[ChainStep] = []

    steps.append(_step("cauchy_schwarz", Fraction(M * M, r), "<=", Fraction(S)))

    # enumerate ordered same-class pairs and their images
    z_counts: Counter = Counter()
    coord_counts = [Counter() for _ in range(f)]
    n_pairs = 0
    zero_pairs_diagonal = True
    for prefix, suffixes in part.classes.items():
        for i, a in enumerate(suffixes):
            for j, b in enumerate(suffixes):
                n_pairs += 1
                syms = tuple(encode_symbol(variant, x, y, q) for x, y in zip(a, b))
                z_counts[syms] += 1
                for l, s in enumerate(syms):
                    coord_counts[l][s] += 1
                if not any(syms) and i != j:
                    zero_pairs_diagonal = False

    h_xy = entropy_of_counts([1] * n_pairs)
    steps.append(_step("pair_entropy", h_xy, "==", math.log2(S), FLOAT_TOL))

    inj = check_injectivity(part, variant)
    nonzero_images = sum(1 for k in z_counts if any(k))
    if inj.injective != (nonzero_images == S - M):
        raise AssertionError("image count and collision scan disagree on injectivity")
    steps.append(_step("injectivity", nonzero_images, "==", S - M))

    zero_key = (0,) * f
    zero_count = z_counts.get(zero_key, 0)
    pr_zero = Fraction(zero_count, S)
    steps.append(_step("zero_probability", pr_zero, "==", Fraction(M, S)))
    steps.append(_step("zero_probability_bound", pr_zero, "<=", Fraction(r, M)))

    if f:
        class_min = min(
            zero_frequency(suffixes, l) for suffixes in part.classes.values() for l in range(f)
        )
        pooled_min = min(Fraction(cc[0], n_pairs) for cc in coord_counts)
    else:
        # no suffix coordinates: the bound is vacuous
        class_min = pooled_min = Fraction(1)
    steps.append(_step("zero_frequency_class_min", class_min, ">=", Fraction(1, q)))
    steps.append(_step("zero_frequency_pooled_min", pooled_min, ">=", Fraction(1, q)))

    # the zero fiber is the diagonal: M equally likely pairs
    h_cond = math.log2(zero_count) if zero_pairs_diagonal and zero_count else float("nan")
    steps.append(_step("conditional_entropy", h_cond, "==", math.log2(M), FLOAT_TOL))

    cap, _ = max_constrained_entropy(q, variant)
    h_z_cap = f * cap
    rhs = h_z_cap + float(pr_zero) * math.log2(M)
    steps.append(_step("entropy_cap", math.log2(S), "<=", rhs, FLOAT_TOL))

    h_z = entropy_of_counts(list(z_counts.values()))
    h_coords = sum(entropy_of_counts(list(cc.values())) for cc in coord_counts)
    info = {
        "h_z": h_z,
        "sum_h_zi": h_coords,
        "chain_rule_residual": h_xy - (h_z + float(pr_zero) * math.log2(M)),
        "prefix_eq7": float(Fraction(r, M)) * math.log2(M) if M > 1 else 0.0,
        "pairs_checked": inj.pairs_checked,
    }
    return ChainReport(
        q=q,
        n=n,
        variant=variant,
        M=M,
        e=e,
        r=r,
        f=f,
        sum_sq=S,
        h_xy=h_xy,
        h_z_cap=h_z_cap,
        pr_zero=pr_zero,
        h_cond=h_cond,
        injective=inj.injective,
        steps=tuple(steps),
        info=info,
    )
