"""Exact parameter calculus for distance-regular graphs with classical parameters.

Everything here is rational arithmetic on :class:`fractions.Fraction`; no
floating point is involved anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import InfeasibleParams, UnexpectedOrdering, WrongDiameter


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused so that a stray ``0.1`` can never sneak inexact
    values into the exact pipeline.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def gaussian_binomial(j: int, b: int) -> int:
    """Return ``[j 1]_b = 1 + b + ... + b**(j-1)`` (zero for ``j == 0``)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return sum(b**i for i in range(j))


@dataclass(frozen=True)
class ClassicalParams:
    D: int
    b: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "D", int(self.D))
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "beta", as_fraction(self.beta))

    def as_tuple(self):
        return (self.D, self.b, self.alpha, self.beta)


@dataclass(frozen=True)
class IntersectionArray:
    """``{b_0, ..., b_{D-1}; c_1, ..., c_D}`` with derived ``a_i``, ``d`` and ``n``.

    Equality compares the array itself, so an array detected on a concrete
    graph compares equal to the one computed from parameters.
    """

    b_list: Tuple[Fraction, ...]
    c_list: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "b_list", tuple(Fraction(x) for x in self.b_list))
        object.__setattr__(self, "c_list", tuple(Fraction(x) for x in self.c_list))
        if len(self.b_list) != len(self.c_list):
            raise ValueError("b_list and c_list must both have D entries")

    @property
    def diameter(self) -> int:
        return len(self.b_list)

    @property
    def degree_d(self) -> Fraction:
        return self.b_list[0]

    def b(self, i: int) -> Fraction:
        """``b_i`` with the convention ``b_D = 0``."""
        return self.b_list[i] if i < self.diameter else Fraction(0)

    def c(self, i: int) -> Fraction:
        """``c_i`` with the convention ``c_0 = 0``."""
        return self.c_list[i - 1] if i > 0 else Fraction(0)

    def a(self, i: int) -> Fraction:
        return self.degree_d - self.b(i) - self.c(i)

    @property
    def a_list(self) -> Tuple[Fraction, ...]:
        return tuple(self.a(i) for i in range(self.diameter + 1))

    @property
    def vertex_count_n(self) -> Fraction:
        return vertex_count(self)

    def __str__(self):
        fmt = lambda xs: ",".join(str(x) for x in xs)  # noqa: E731
        return "{" + fmt(self.b_list) + ";" + fmt(self.c_list) + "}"


def vertex_count(array: IntersectionArray) -> Fraction:
    """Number of vertices from ``n_0 = 1`` and ``n_{i+1} = b_i n_i / c_{i+1}``."""
    n_i = Fraction(1)
    total = Fraction(1)
    for i in range(array.diameter):
        n_i = n_i * array.b(i) / array.c(i + 1)
        total += n_i
    return total


def _raw_lists(params: ClassicalParams):
    D, b, alpha, beta = params.as_tuple()
    gD = gaussian_binomial(D, b)
    b_list = [(gD - gaussian_binomial(i, b)) * (beta - alpha * gaussian_binomial(i, b)) for i in range(D)]
    c_list = [
        gaussian_binomial(i, b) * (1 + alpha * gaussian_binomial(i - 1, b))
        for i in range(1, D + 1)
    ]
    return [Fraction(x) for x in b_list], [Fraction(x) for x in c_list]


@dataclass(frozen=True)
class Violation:
    id: str
    value: Optional[Fraction] = None

    def __str__(self):
        return self.id if self.value is None else f"{self.id} ({self.value})"


@dataclass
class FeasibilityReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not self.violations

    @property
    def ids(self) -> List[str]:
        return [v.id for v in self.violations]


def validate(params: ClassicalParams) -> FeasibilityReport:
    """Check every necessary condition and report all failures, not just the first."""
    report = FeasibilityReport()
    flag = lambda id_, value=None: report.violations.append(Violation(id_, value))  # noqa: E731
    D, b, alpha, beta = params.as_tuple()

    if D < 1:
        flag("D_nonpositive", Fraction(D))
        return report
    if b in (0, -1):
        flag("b forbidden", Fraction(b))
    k = (1 + b) * alpha
    if k.denominator != 1:
        flag("(1+b)alpha_nonintegral", k)
    if D >= 3:
        if b >= 1 and alpha < 0:
            flag("Lemma4(i)", alpha)
        if b <= -2 and not alpha < -1:
            flag("Lemma4(ii)", alpha)
    if D == 3 and not beta >= 1 + k >= 1:
        flag("Lemma4(iii)", beta)

    b_list, c_list = _raw_lists(params)
    array = IntersectionArray(b_list, c_list)
    for i, x in enumerate(b_list):
        if x <= 0:
            flag(f"b{i}_nonpositive", x)
        elif x.denominator != 1:
            flag(f"b{i}_nonintegral", x)
    for i, x in enumerate(c_list, start=1):
        if x <= 0:
            flag(f"c{i}_nonpositive", x)
        elif x.denominator != 1:
            flag(f"c{i}_nonintegral", x)
    for i, x in enumerate(array.a_list):
        if x < 0:
            flag(f"a{i}_negative", x)
        elif x.denominator != 1:
            flag(f"a{i}_nonintegral", x)
    if all(c != 0 for c in c_list):
        n = vertex_count(array)
        if n.denominator != 1:
            flag("n_nonintegral", n)
    return report


def intersection_array(params: ClassicalParams) -> IntersectionArray:
    report = validate(params)
    if not report.feasible:
        raise InfeasibleParams(
            f"infeasible classical parameters {params.as_tuple()}: "
            + ", ".join(report.ids),
            report.violations,
        )
    return IntersectionArray(*_raw_lists(params))


def adjacency_eigenvalues(params: ClassicalParams) -> Tuple[Fraction, ...]:
    """``theta_i = b_i / b**i - [i 1]_b`` for ``i = 0..D`` (so ``theta_0 = d``)."""
    if params.b in (0, -1):
        raise InfeasibleParams("b forbidden", [Violation("b forbidden", Fraction(params.b))])
    b_list, _ = _raw_lists(params)
    b_list = b_list + [Fraction(0)]
    b = params.b
    return tuple(b_list[i] / Fraction(b) ** i - gaussian_binomial(i, b) for i in range(params.D + 1))


@dataclass(frozen=True)
class EigenvalueTriple:
    """Nontrivial Laplacian eigenvalues in ascending order.

    ``gamma_permutation[j]`` is the index ``i`` of the unsorted eigenvalue
    ``gamma_i = d - theta_i`` that landed in sorted position ``j + 1``.
    """

    lambda1: Fraction
    lambda2: Fraction
    lambda3: Fraction
    gamma_permutation: Tuple[int, int, int]

    def as_tuple(self):
        return (self.lambda1, self.lambda2, self.lambda3)


def laplacian_eigenvalues_sorted(params: ClassicalParams) -> EigenvalueTriple:
    if params.D != 3:
        raise WrongDiameter(f"diameter 3 required, got D={params.D}")
    theta = adjacency_eigenvalues(params)
    d = theta[0]
    gammas = {i: d - theta[i] for i in (1, 2, 3)}
    order = tuple(sorted(gammas, key=gammas.__getitem__))
    values = [gammas[i] for i in order]
    expected = (1, 2, 3) if params.b >= 1 else (2, 3, 1)
    if order != expected or not 0 < values[0] < values[1] < values[2]:
        raise UnexpectedOrdering(
            f"eigenvalues {[str(gammas[i]) for i in (1, 2, 3)]} for b={params.b} "
            f"do not satisfy the ordering {expected}"
        )
    return EigenvalueTriple(*values, gamma_permutation=order)
