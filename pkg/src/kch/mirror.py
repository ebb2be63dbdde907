"""Branches of a mirror/augmentation curve and the disk potential.

A curve A(X, P) with Laurent coefficients in remaining parameters (typically
Q) vanishes along branches P(X).  Near X = 0 a simple root P0 extends to a
unique power series P(X) = P0 + c1 X + ..., solved order by order from the
linearization: if A(X, S + c X^k) = A(X, S) + c X^k dA/dP(0, P0) + O(X^{k+1}),
each residual coefficient divides out against d = dA/dP(0, P0).

The logarithm p(X) = log(P(X)/P0) is the momentum series; integrating it
coefficientwise (divide X^k by k) gives the disk potential W with
p = x-derivative of W, where the derivative acts as X d/dX on series in
X = e^x.  Any constant log(P0) is carried symbolically, never numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DomainError
from .laurent import LaurentPolynomial
from .scalars import Scalar
from .series import FormalSeries


@dataclass(frozen=True)
class BranchSeries:
    """A local parameterization P(X) of a curve branch at X = 0."""

    curve: LaurentPolynomial
    x_variable: str
    p_variable: str
    base: Scalar
    series: FormalSeries

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.series.ring


@dataclass(frozen=True)
class PotentialSeries:
    """Disk potential: linear-in-x coefficient plus a series in X = e^x."""

    linear_coefficient: LaurentPolynomial
    series: FormalSeries


@dataclass(frozen=True)
class CurveResidualReport:
    ok: bool
    first_failure: int | None
    residual: FormalSeries


def _split_curve(
    curve: LaurentPolynomial, x_variable: str, p_variable: str
) -> tuple[tuple[str, ...], LaurentPolynomial]:
    if x_variable not in curve.variables or p_variable not in curve.variables:
        raise DomainError(
            f"curve ring {curve.variables!r} must contain {x_variable!r} and {p_variable!r}"
        )
    if x_variable == p_variable:
        raise DomainError("x and p variables must differ")
    parameters = tuple(v for v in curve.variables if v not in (x_variable, p_variable))
    # negative exponents are monomial units on the torus; strip them so the
    # series substitution never needs an inverse
    stripped, _ = curve.strip_monomial_factor()
    return parameters, stripped


def _substitute_branch(
    curve: LaurentPolynomial,
    x_variable: str,
    p_variable: str,
    parameters: tuple[str, ...],
    branch: FormalSeries,
) -> FormalSeries:
    """A(X, branch(X)) as a series; exponents were normalized nonnegative."""
    order = branch.order
    x_index = curve.variables.index(x_variable)
    p_index = curve.variables.index(p_variable)
    param_positions = [curve.variables.index(v) for v in parameters]
    powers: dict[int, FormalSeries] = {0: FormalSeries.one("X", order, parameters)}

    def branch_power(exponent: int) -> FormalSeries:
        known = powers.get(exponent)
        if known is None:
            known = branch_power(exponent - 1) * branch
            powers[exponent] = known
        return known

    total = FormalSeries.zero("X", order, parameters)
    for exps, coeff in curve.terms():
        e_x = exps[x_index]
        e_p = exps[p_index]
        if e_x < 0 or e_p < 0:
            raise DomainError("curve exponents must be normalized nonnegative")
        if e_x > order:
            continue
        param_exps = tuple(exps[pos] for pos in param_positions)
        scale = LaurentPolynomial.monomial(parameters, param_exps, coeff)
        total = total + (branch_power(e_p) * scale).shifted(e_x)
    return total


def branch_series(
    curve: LaurentPolynomial,
    base: Scalar | int | Fraction,
    order: int,
    *,
    x_variable: str = "X",
    p_variable: str = "P",
) -> BranchSeries:
    """The unique series branch P(X) with P(0) = base, A(X, P(X)) = O(X^{order+1}).

    The base must be a simple root of A(0, P): a root where dA/dP does not
    vanish.  Each coefficient is obtained by exact division against that
    derivative value, which must divide exactly in the parameter ring; base
    points making it a nonconstant polynomial may therefore be rejected even
    off a branch point, reported as such.
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    base = Scalar.of(base)
    if base.is_zero():
        raise DomainError("branch base P(0) must be nonzero on the torus")
    parameters, stripped = _split_curve(curve, x_variable, p_variable)

    at_origin = stripped.substitute(x_variable, 0).substitute(p_variable, base)
    if not at_origin.is_zero():
        raise DomainError(
            f"base {base} is not a root of the curve at {x_variable} = 0"
        )
    derivative = (
        stripped.derivative(p_variable)
        .substitute(x_variable, 0)
        .substitute(p_variable, base)
    )
    if derivative.is_zero():
        raise DomainError(
            f"base {base} is a branch point: dA/d{p_variable} vanishes at {x_variable} = 0"
        )

    coefficients = [LaurentPolynomial.constant(parameters, base)]
    for k in range(1, order + 1):
        partial = FormalSeries("X", k, coefficients + [LaurentPolynomial.zero(parameters)])
        residual = _substitute_branch(stripped, x_variable, p_variable, parameters, partial)
        r_k = residual.coefficient(k)
        if r_k.is_zero():
            coefficients.append(LaurentPolynomial.zero(parameters))
            continue
        try:
            correction = r_k.exact_divide(derivative)
        except DomainError as exc:
            raise DomainError(
                f"coefficient of {x_variable}^{k} does not separate: "
                f"dA/d{p_variable} = {derivative} does not divide {r_k} "
                "in the parameter ring"
            ) from exc
        coefficients.append(-correction)
    series = FormalSeries("X", order, coefficients)
    return BranchSeries(curve, x_variable, p_variable, base, series)


def p_series(branch: BranchSeries) -> FormalSeries:
    """log(P(X)/P0) as an exact series with zero constant term.

    The constant log(P0) is not a series coefficient; report it symbolically
    when P0 is not 1.
    """
    inverse_base = LaurentPolynomial.constant(branch.parameters, branch.base.inverse())
    return (branch.series * inverse_base).log()


def potential_series(p: FormalSeries) -> PotentialSeries:
    """Integrate: the X^k coefficient divides by k; the constant becomes linear in x."""
    coefficients = [LaurentPolynomial.zero(p.ring)]
    for k in range(1, p.order + 1):
        coefficients.append(p.coefficient(k).scale(Scalar.of(Fraction(1, k))))
    return PotentialSeries(
        linear_coefficient=p.coefficient(0),
        series=FormalSeries(p.variable, p.order, coefficients),
    )


def potential_x_derivative(potential: PotentialSeries) -> FormalSeries:
    """x-derivative (X d/dX plus the linear part) recovering the p series."""
    series = potential.series
    coefficients = [potential.linear_coefficient]
    for k in range(1, series.order + 1):
        coefficients.append(series.coefficient(k).scale(Scalar.of(k)))
    return FormalSeries(series.variable, series.order, coefficients)


def verify_on_curve(
    curve: LaurentPolynomial, branch: BranchSeries, order: int | None = None
) -> CurveResidualReport:
    """Substitute P0 * exp(p_series) back into the curve; residual must vanish.

    The branch is recomputed through exp of its own logarithm, so the check
    exercises the log/exp round trip as well as the root solving.
    """
    if order is None:
        order = branch.order
    if order > branch.order:
        raise DomainError(
            f"cannot verify to order {order}: branch only carries order {branch.order}"
        )
    parameters, stripped = _split_curve(curve, branch.x_variable, branch.p_variable)
    if parameters != branch.parameters:
        raise DomainError("branch was built from a curve with different parameters")
    reconstructed = p_series(branch).truncate(order).exp() * LaurentPolynomial.constant(
        parameters, branch.base
    )
    residual = _substitute_branch(
        stripped, branch.x_variable, branch.p_variable, parameters, reconstructed
    )
    first_failure = None
    for k in range(order + 1):
        if not residual.coefficient(k).is_zero():
            first_failure = k
            break
    return CurveResidualReport(first_failure is None, first_failure, residual)
