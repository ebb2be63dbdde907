"""Symmetric-power traces of a holonomy spectrum.

For eigenvalues lambda_1..lambda_n the trace of the k-th symmetric power is
the complete homogeneous symmetric polynomial h_k, and the generating series
sum_k h_k t^k equals prod_i (1 - lambda_i t)^{-1}.  The series variable t
stands for e^{-x}.  Coefficients are computed from power sums through
Newton's identity k h_k = sum_{j=1..k} p_j h_{k-j} and verified in place
against the independent geometric-series product expansion.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import DomainError, VerificationError
from .scalars import ONE, ZERO, Scalar
from .series import FormalSeries

SERIES_VARIABLE = "t"


class HolonomySpectrum:
    """Nonzero eigenvalues of a holonomy matrix."""

    __slots__ = ("eigenvalues",)

    def __init__(self, eigenvalues: Iterable[Scalar | int | Fraction]) -> None:
        values = tuple(Scalar.of(v) for v in eigenvalues)
        if not values:
            raise DomainError("a holonomy spectrum needs at least one eigenvalue")
        for idx, value in enumerate(values):
            if value.is_zero():
                raise DomainError(f"eigenvalue {idx} is zero; holonomies are invertible")
        object.__setattr__(self, "eigenvalues", values)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("HolonomySpectrum is immutable")

    def __len__(self) -> int:
        return len(self.eigenvalues)


def power_sums(spectrum: HolonomySpectrum, order: int) -> list[Scalar]:
    """p_1..p_order with p_j = sum of j-th powers."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    powers = list(spectrum.eigenvalues)
    sums = []
    for j in range(1, order + 1):
        if j > 1:
            powers = [p * base for p, base in zip(powers, spectrum.eigenvalues)]
        total = ZERO
        for p in powers:
            total = total + p
        sums.append(total)
    return sums


def complete_homogeneous(spectrum: HolonomySpectrum, order: int) -> list[Scalar]:
    """h_0..h_order by Newton's identity from power sums."""
    p = power_sums(spectrum, order)
    h = [ONE]
    for k in range(1, order + 1):
        total = ZERO
        for j in range(1, k + 1):
            total = total + p[j - 1] * h[k - j]
        h.append(total * Scalar.of(Fraction(1, k)))
    return h


def complete_homogeneous_direct(spectrum: HolonomySpectrum, k: int) -> Scalar:
    """h_k straight from the definition: sum over degree-k monomial multisets."""
    if k < 0:
        raise DomainError("degree must be nonnegative")
    if k == 0:
        return ONE
    total = ZERO
    for combo in combinations_with_replacement(spectrum.eigenvalues, k):
        product = ONE
        for factor in combo:
            product = product * factor
        total = total + product
    return total


def determinant_product_series(spectrum: HolonomySpectrum, order: int) -> FormalSeries:
    """Expansion of prod_i (1 - lambda_i t)^{-1} by geometric series."""
    result = FormalSeries.one(SERIES_VARIABLE, order)
    for value in spectrum.eigenvalues:
        powers = [ONE]
        for _ in range(order):
            powers.append(powers[-1] * value)
        result = result * FormalSeries.from_scalars(SERIES_VARIABLE, powers)
    return result


def symmetric_trace_series(spectrum: HolonomySpectrum, order: int) -> FormalSeries:
    """sum_k h_k t^k, asserted equal to the determinant-inverse expansion."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    series = FormalSeries.from_scalars(
        SERIES_VARIABLE, complete_homogeneous(spectrum, order)
    )
    oracle = determinant_product_series(spectrum, order)
    if series != oracle:
        raise VerificationError(
            "Newton-identity traces disagree with the determinant product expansion"
        )
    return series
