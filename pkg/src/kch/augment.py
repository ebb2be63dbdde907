"""Augmentations of a graded algebra and their variety over the torus ring.

An augmentation sends every degree-zero generator to a scalar, every other
generator to zero, and must annihilate each differential image.  Collecting
the image of each degree-one generator under that evaluation yields a
polynomial system in one unknown per degree-zero generator, with coefficients
Laurent in the torus variables.  Eliminating the unknowns (after inverting
the torus variables by saturation) cuts out the augmentation variety.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .dga import DGA, AlgebraElement
from .errors import DomainError
from .groebner import ideal_contains_one, reduced_groebner_basis
from .laurent import LaurentPolynomial
from .scalars import Scalar

SATURATION_VARIABLE = "_w"


@dataclass(frozen=True)
class AugmentationSystem:
    """Equations epsilon(d(a)) = 0, one per degree-one generator."""

    dga_name: str
    torus_variables: tuple[str, ...]
    unknowns: tuple[str, ...]
    unknown_of: Mapping[str, str]
    ring: tuple[str, ...]
    equations: tuple[tuple[str, LaurentPolynomial], ...]


@dataclass(frozen=True)
class AugmentationVarietyResult:
    principal: bool
    polynomial: LaurentPolynomial | None
    generators: tuple[LaurentPolynomial, ...]
    notes: tuple[str, ...]


def augmentation_system(dga: DGA) -> AugmentationSystem:
    report = dga.check()
    if not report.ok:
        problems = list(report.degree_violations)
        problems += [f"d(d({g})) = {im}" for g, im in report.nonzero_images()]
        raise DomainError(
            f"algebra {dga.name!r} fails structural checks: " + "; ".join(problems)
        )
    degree_zero = [g.name for g in dga.generators if g.degree == 0]
    unknown_of = {name: f"u_{name}" for name in degree_zero}
    unknowns = tuple(unknown_of[name] for name in degree_zero)
    forbidden = set(dga.torus_variables) | {g.name for g in dga.generators}
    for unknown in unknowns:
        if unknown in forbidden:
            raise DomainError(f"unknown name {unknown!r} collides with a declared name")
    if len(set(unknowns)) != len(unknowns):
        raise DomainError("degree-zero generator names produce colliding unknowns")
    ring = unknowns + dga.torus_variables
    equations = []
    for g in dga.generators:
        if g.degree != 1:
            continue
        poly = _epsilon_image(dga, dga.differential_of(g.name), ring, unknown_of)
        equations.append((g.name, poly))
    return AugmentationSystem(
        dga_name=dga.name,
        torus_variables=dga.torus_variables,
        unknowns=unknowns,
        unknown_of=unknown_of,
        ring=ring,
        equations=tuple(equations),
    )


def _epsilon_image(
    dga: DGA,
    element: AlgebraElement,
    ring: tuple[str, ...],
    unknown_of: Mapping[str, str],
) -> LaurentPolynomial:
    total = LaurentPolynomial.zero(ring)
    for word, coeff in element.terms():
        if any(dga.generator(letter).degree != 0 for letter in word):
            continue
        term = coeff.with_variables(ring)
        for letter in word:
            term = term * LaurentPolynomial.variable(ring, unknown_of[letter])
        total = total + term
    return total


def _validated_point(
    torus_variables: tuple[str, ...], point: Mapping[str, Scalar | int | Fraction]
) -> dict[str, Scalar]:
    values = {}
    for name in torus_variables:
        if name not in point:
            raise DomainError(f"no value supplied for torus variable {name!r}")
        value = Scalar.of(point[name])
        if value.is_zero():
            raise DomainError(f"torus coordinate {name!r} must be nonzero")
        values[name] = value
    extras = set(point) - set(torus_variables)
    if extras:
        raise DomainError(f"unexpected torus coordinates {sorted(extras)!r}")
    return values


def is_augmentation(
    dga: DGA,
    values: Mapping[str, Scalar | int | Fraction],
    point: Mapping[str, Scalar | int | Fraction],
) -> bool:
    """Check a concrete assignment of degree-zero generator values at a torus point."""
    system = augmentation_system(dga)
    assignment = {}
    for gen_name, unknown in system.unknown_of.items():
        if gen_name not in values:
            raise DomainError(f"no value supplied for degree-zero generator {gen_name!r}")
        assignment[unknown] = Scalar.of(values[gen_name])
    extras = set(values) - set(system.unknown_of)
    if extras:
        raise DomainError(f"values supplied for non-degree-zero names {sorted(extras)!r}")
    full = dict(assignment)
    full.update(_validated_point(system.torus_variables, point))
    return all(eq.evaluate(full).is_zero() for _, eq in system.equations)


def augmentation_exists(
    dga: DGA,
    point: Mapping[str, Scalar | int | Fraction],
    *,
    max_steps: int | None = None,
) -> bool:
    """Decide solvability of the augmentation equations at a fixed torus point.

    The specialized system generates an ideal in the unknowns alone; by the
    Nullstellensatz it has a solution over the complex numbers exactly when
    the reduced basis avoids the unit ideal.
    """
    system = augmentation_system(dga)
    values = _validated_point(system.torus_variables, point)
    specialized = []
    for _, eq in system.equations:
        poly = eq
        for name in system.torus_variables:
            poly = poly.substitute(name, values[name])
        specialized.append(poly)
    if not system.unknowns:
        return all(poly.is_zero() for poly in specialized)
    return not ideal_contains_one(specialized, max_steps=max_steps)


def _clear_torus_negatives(poly: LaurentPolynomial, first_torus_index: int) -> LaurentPolynomial:
    """Multiply by a torus monomial so torus exponents are nonnegative.

    Torus variables are units, and the ideal is saturated against them, so
    this does not change the variety.  Unknown exponents are untouched: the
    unknowns are not invertible and stripping them would drop components.
    """
    width = len(poly.variables)
    mins = [0] * width
    for exps, _ in poly.terms():
        for k in range(first_torus_index, width):
            if exps[k] < mins[k]:
                mins[k] = exps[k]
    if not any(mins):
        return poly
    return poly.shift(tuple(-m for m in mins))


def eliminate_augmentation_ideal(
    dga: DGA, *, max_steps: int | None = None
) -> AugmentationVarietyResult:
    """Project the augmentation ideal onto the torus variables.

    Variables are ordered unknowns, saturation variable, torus block; under
    lex order the reduced basis elements supported on the torus block form a
    basis of the elimination ideal.  Each survivor is normalized to integer
    content one with a positive leading coefficient.
    """
    system = augmentation_system(dga)
    elim_ring = system.unknowns + (SATURATION_VARIABLE,) + system.torus_variables
    lead_width = len(system.unknowns) + 1
    notes = [
        f"unknowns: {', '.join(system.unknowns) if system.unknowns else '(none)'}",
        f"equations from degree-one generators: {len(system.equations)}",
    ]
    generators = []
    for _, eq in system.equations:
        poly = _clear_torus_negatives(eq.with_variables(elim_ring), lead_width)
        if not poly.is_zero():
            generators.append(poly)
    saturation_exps = tuple(
        0 if k < len(system.unknowns) else 1 for k in range(len(elim_ring))
    )
    saturation = LaurentPolynomial.one(elim_ring) - LaurentPolynomial.monomial(
        elim_ring, saturation_exps
    )
    generators.append(saturation)
    notes.append(
        f"saturated against {SATURATION_VARIABLE}*{'*'.join(system.torus_variables)}"
    )
    basis = reduced_groebner_basis(generators, max_steps=max_steps)
    eliminated = []
    for g in basis:
        if all(all(exps[k] == 0 for k in range(lead_width)) for exps, _ in g.terms()):
            torus_poly = LaurentPolynomial(
                system.torus_variables,
                [(exps[lead_width:], coeff) for exps, coeff in g.terms()],
            )
            torus_poly = torus_poly.strip_monomial_factor()[0].primitive_normalized()
            eliminated.append(torus_poly)
    eliminated.sort(key=lambda p: (len(tuple(p.terms())), str(p)))
    notes.append(
        f"reduced basis has {len(basis)} elements, {len(eliminated)} in the torus block"
    )
    if not eliminated:
        notes.append("no torus constraints: the variety is the whole torus")
        return AugmentationVarietyResult(True, None, (), tuple(notes))
    principal = len(eliminated) == 1
    polynomial = eliminated[0] if principal else None
    if principal and polynomial is not None and polynomial.is_constant():
        notes.append("the variety is empty: the ideal meets the coefficient field")
    return AugmentationVarietyResult(principal, polynomial, tuple(eliminated), tuple(notes))
