"""Perturbative expansion of a cubic deformation of a Gaussian integral.

The partition function of exp(-1/2 Q_ij x_i x_j + hbar C_ijk x_i x_j x_k),
normalized so the pure Gaussian contributes 1, expands as

    Z(hbar) = sum_m  hbar^m / m! * < V^m >,    V = sum_ijk C_ijk x_i x_j x_k,

where the expectation is the Gaussian one with covariance Q^{ij} (the matrix
inverse of Q_ij).  The coefficient of hbar^m is computed two independent ways:

* graph route: sum over perfect matchings of the 3m half-edges (three per
  vertex), each matching weighted by the full tensor contraction of vertex
  factors C against edge factors Q^{ij};
* oracle route: expand V^m as a polynomial and evaluate Gaussian moments by
  the integration-by-parts recursion <x_i P> = sum_j Q^{ij} <dP/dx_j>.

The two share no moment code and must agree exactly.

The Hermitian one-matrix analogue replaces the vertex by tr M^3 and the
propagator by <M_ab M_cd> = delta_ad delta_bc; each matching then closes index
loops, contributing N per loop.  Matchings are fattened into ribbon graphs
whose face count h, loop count r and genus g satisfy 2 - 2g - h = 1 - r.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .laurent import LaurentPolynomial
from .scalars import ONE, ZERO, Scalar
from .series import FormalSeries

Edge = tuple[int, int]


def _to_scalar_grid(rows: Sequence[Sequence]) -> tuple[tuple[Scalar, ...], ...]:
    return tuple(tuple(Scalar.of(entry) for entry in row) for row in rows)


def _invert_matrix(matrix: tuple[tuple[Scalar, ...], ...]) -> tuple[tuple[Scalar, ...], ...]:
    n = len(matrix)
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        if pivot_row is None:
            raise DomainError("quadratic form is singular")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        inv = work[col][col].inverse()
        work[col] = [entry * inv for entry in work[col]]
        for r in range(n):
            if r == col or work[r][col].is_zero():
                continue
            factor = work[r][col]
            work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


class QuadraticForm:
    """Symmetric invertible matrix Q_ij with its cached inverse Q^{ij}."""

    __slots__ = ("matrix", "propagator")

    def __init__(self, rows: Sequence[Sequence]) -> None:
        matrix = _to_scalar_grid(rows)
        n = len(matrix)
        if n == 0 or any(len(row) != n for row in matrix):
            raise DomainError("quadratic form must be a nonempty square matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i][j] != matrix[j][i]:
                    raise DomainError(f"quadratic form is not symmetric at ({i},{j})")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "propagator", _invert_matrix(matrix))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("QuadraticForm is immutable")

    @property
    def dimension(self) -> int:
        return len(self.matrix)


class CubicForm:
    """Fully symmetric rank-3 coefficient array C_ijk."""

    __slots__ = ("dimension", "_entries")

    def __init__(self, dimension: int, entries: Mapping[tuple[int, int, int], Scalar]) -> None:
        if dimension <= 0:
            raise DomainError("cubic form needs a positive dimension")
        canonical: dict[tuple[int, int, int], Scalar] = {}
        for key, value in entries.items():
            i, j, k = key
            if not all(0 <= t < dimension for t in (i, j, k)):
                raise DomainError(f"cubic index {key!r} out of range for dimension {dimension}")
            value = Scalar.of(value)
            sorted_key = tuple(sorted(key))
            if sorted_key in canonical and canonical[sorted_key] != value:
                raise DomainError(f"cubic form entries conflict at {sorted_key!r}")
            canonical[sorted_key] = value
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "_entries", canonical)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("CubicForm is immutable")

    @classmethod
    def from_array(cls, array: Sequence[Sequence[Sequence]]) -> "CubicForm":
        n = len(array)
        entries = {}
        for i in range(n):
            if len(array[i]) != n:
                raise DomainError("cubic array is not n*n*n")
            for j in range(n):
                if len(array[i][j]) != n:
                    raise DomainError("cubic array is not n*n*n")
                for k in range(n):
                    value = Scalar.of(array[i][j][k])
                    key = tuple(sorted((i, j, k)))
                    if key in entries:
                        if entries[key] != value:
                            raise DomainError(
                                f"cubic array is not symmetric at ({i},{j},{k})"
                            )
                    else:
                        entries[key] = value
        return cls(n, entries)

    def entry(self, i: int, j: int, k: int) -> Scalar:
        return self._entries.get(tuple(sorted((i, j, k))), ZERO)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self._entries.values())


# -- pairings of half-edges ---------------------------------------------------


@dataclass(frozen=True)
class Pairing:
    """Perfect matching on the 3m half-edges; vertex v owns 3v, 3v+1, 3v+2."""

    m: int
    matching: tuple[Edge, ...]

    def __post_init__(self):
        total = 3 * self.m
        if total % 2:
            raise DomainError("a perfect matching needs an even number of half-edges")
        seen = set()
        for a, b in self.matching:
            if not (0 <= a < b < total):
                raise DomainError(f"half-edge pair ({a},{b}) out of range or unordered")
            seen.add(a)
            seen.add(b)
        if len(seen) != total or len(self.matching) != total // 2:
            raise DomainError("matching is not a perfect matching")
        object.__setattr__(self, "matching", tuple(sorted(self.matching)))

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.matching:
            out[a] = b
            out[b] = a
        return out

    def vertex_edges(self) -> tuple[Edge, ...]:
        """Edges as unordered vertex pairs, sorted; the labeled multigraph."""
        return tuple(sorted((min(a // 3, b // 3), max(a // 3, b // 3)) for a, b in self.matching))


def enumerate_pairings(m: int) -> tuple[Pairing, ...]:
    """All perfect matchings of 3m half-edges, smallest-first deterministic order."""
    if m < 0:
        raise DomainError("vertex count must be nonnegative")
    total = 3 * m
    if total % 2:
        return ()
    if total == 0:
        return (Pairing(0, ()),)
    out: list[Pairing] = []
    pairs: list[Edge] = []
    unmatched = list(range(total))

    def extend():
        if not unmatched:
            out.append(Pairing(m, tuple(pairs)))
            return
        a = unmatched[0]
        for idx in range(1, len(unmatched)):
            b = unmatched[idx]
            rest = unmatched[1:idx] + unmatched[idx + 1 :]
            pairs.append((a, b))
            saved = unmatched[:]
            unmatched[:] = rest
            extend()
            unmatched[:] = saved
            pairs.pop()

    extend()
    return tuple(out)


def double_factorial(k: int) -> int:
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


# -- multigraph bookkeeping ---------------------------------------------------


def _connected(m: int, edges: Sequence[Edge]) -> bool:
    # the empty graph has zero components, not one
    if m == 0:
        return False
    if m == 1:
        return True
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    root = find(0)
    return all(find(v) == root for v in range(m))


def canonical_graph_class(m: int, edges: Sequence[Edge]) -> tuple[Edge, ...]:
    """Isomorphism-class label: minimum relabeled edge multiset over vertex permutations."""
    best = None
    for perm in permutations(range(m)):
        relabeled = tuple(
            sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges)
        )
        if best is None or relabeled < best:
            best = relabeled
    return best if best is not None else ()


@lru_cache(maxsize=None)
def _multigraph_census(m: int) -> tuple[tuple[tuple[Edge, ...], int], ...]:
    """How many pairings realize each labeled multigraph (an optimization only:
    the contraction weight depends on the multigraph, not the half-edge choice)."""
    census = Counter(p.vertex_edges() for p in enumerate_pairings(m))
    return tuple(sorted(census.items()))


def connected_isomorphism_classes(m: int) -> dict[tuple[Edge, ...], int]:
    """Pairing counts per connected-graph isomorphism class at order m."""
    out: Counter = Counter()
    for edges, count in _multigraph_census(m):
        if _connected(m, edges):
            out[canonical_graph_class(m, edges)] += count
    return dict(sorted(out.items()))


# -- scalar model -------------------------------------------------------------


def _contract_multigraph(
    edges: Sequence[Edge], m: int, propagator, cubic: CubicForm
) -> Scalar:
    """Tensor contraction of one labeled multigraph.

    Vertices are consumed in order; the state maps each edge with exactly one
    visited endpoint to the index carried at that endpoint.  Symmetry of C
    makes the stub ordering at a vertex irrelevant.
    """
    n = cubic.dimension
    indexed = list(enumerate(edges))
    states: dict[tuple[tuple[int, int], ...], Scalar] = {(): ONE}
    for v in range(m):
        loops = [eid for eid, (a, b) in indexed if a == v and b == v]
        closing = [eid for eid, (a, b) in indexed if (a == v) != (b == v) and min(a, b) < v]
        opening = [eid for eid, (a, b) in indexed if (a == v) != (b == v) and max(a, b) > v]
        stubs = 2 * len(loops) + len(closing) + len(opening)
        if stubs != 3:
            raise DomainError("multigraph is not trivalent")
        next_states: dict[tuple[tuple[int, int], ...], Scalar] = {}
        for state_key, weight in states.items():
            state = dict(state_key)
            for idx in product(range(n), repeat=3):
                factor = cubic.entry(*idx)
                if factor.is_zero():
                    continue
                pos = 0
                for eid in loops:
                    a, b = idx[pos], idx[pos + 1]
                    pos += 2
                    factor = factor * propagator[a][b]
                ok = True
                for eid in closing:
                    other = state[eid]
                    factor = factor * propagator[other][idx[pos]]
                    pos += 1
                    if factor.is_zero():
                        ok = False
                        break
                if not ok:
                    continue
                new_state = {k: val for k, val in state.items() if k not in closing}
                for eid in opening:
                    new_state[eid] = idx[pos]
                    pos += 1
                key = tuple(sorted(new_state.items()))
                total = next_states.get(key, ZERO) + weight * factor
                if total.is_zero():
                    next_states.pop(key, None)
                else:
                    next_states[key] = total
        states = next_states
        if not states:
            return ZERO
    return states.get((), ZERO)


def _graph_coefficient(
    m: int, propagator, cubic: CubicForm, *, connected_only: bool
) -> Scalar:
    if (3 * m) % 2:
        return ZERO
    total = ZERO
    for edges, count in _multigraph_census(m):
        if connected_only and not _connected(m, edges):
            continue
        weight = _contract_multigraph(edges, m, propagator, cubic)
        if not weight.is_zero():
            total = total + weight * Scalar.of(count)
    return total * Scalar.of(Fraction(1, factorial(m)))


def _check_model(q: QuadraticForm, c: CubicForm, order: int) -> None:
    if q.dimension != c.dimension:
        raise DomainError(
            f"quadratic dimension {q.dimension} differs from cubic dimension {c.dimension}"
        )
    if order < 0:
        raise DomainError("expansion order must be nonnegative")


def scalar_model_series(q: QuadraticForm, c: CubicForm, order: int) -> FormalSeries:
    """Coefficient of hbar^m is (1/m!) * sum over pairings of the contraction."""
    _check_model(q, c, order)
    values = [
        _graph_coefficient(m, q.propagator, c, connected_only=False)
        for m in range(order + 1)
    ]
    return FormalSeries.from_scalars("hbar", values)


def connected_scalar_series(q: QuadraticForm, c: CubicForm, order: int) -> FormalSeries:
    """Same weights as scalar_model_series but restricted to connected graphs."""
    _check_model(q, c, order)
    values = [
        _graph_coefficient(m, q.propagator, c, connected_only=True) for m in range(order + 1)
    ]
    return FormalSeries.from_scalars("hbar", values)


# -- moment oracle ------------------------------------------------------------


def _cubic_polynomial(c: CubicForm) -> dict[tuple[int, ...], Scalar]:
    """V as a polynomial: exponent vector of length n -> coefficient."""
    n = c.dimension
    out: dict[tuple[int, ...], Scalar] = {}
    for triple in product(range(n), repeat=3):
        value = c.entry(*triple)
        if value.is_zero():
            continue
        exps = [0] * n
        for t in triple:
            exps[t] += 1
        key = tuple(exps)
        out[key] = out.get(key, ZERO) + value
    return out


def _poly_multiply(
    a: dict[tuple[int, ...], Scalar], b: dict[tuple[int, ...], Scalar]
) -> dict[tuple[int, ...], Scalar]:
    out: dict[tuple[int, ...], Scalar] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            total = out.get(key, ZERO) + c1 * c2
            if total.is_zero():
                out.pop(key, None)
            else:
                out[key] = total
    return out


def stein_oracle_series(q: QuadraticForm, c: CubicForm, order: int) -> FormalSeries:
    """Moment-recursion evaluation of the same expansion; no graphs involved.

    Gaussian moments follow <x_i x^alpha> = sum_j Q^{ij} alpha_j <x^{alpha - e_j}>,
    the integration-by-parts identity, memoized over exponent vectors.
    """
    _check_model(q, c, order)
    n = q.dimension
    propagator = q.propagator
    moments: dict[tuple[int, ...], Scalar] = {(0,) * n: ONE}

    def moment(exps: tuple[int, ...]) -> Scalar:
        known = moments.get(exps)
        if known is not None:
            return known
        if sum(exps) % 2:
            moments[exps] = ZERO
            return ZERO
        i = next(k for k, e in enumerate(exps) if e > 0)
        reduced = list(exps)
        reduced[i] -= 1
        total = ZERO
        for j in range(n):
            if reduced[j] == 0 or propagator[i][j].is_zero():
                continue
            lower = list(reduced)
            lower[j] -= 1
            total = total + propagator[i][j] * Scalar.of(reduced[j]) * moment(tuple(lower))
        moments[exps] = total
        return total

    cubic_poly = _cubic_polynomial(c)
    power: dict[tuple[int, ...], Scalar] = {(0,) * n: ONE}
    values = []
    for m in range(order + 1):
        if m > 0:
            power = _poly_multiply(power, cubic_poly)
        expectation = ZERO
        for exps, coeff in sorted(power.items()):
            value = moment(exps)
            if not value.is_zero():
                expectation = expectation + coeff * value
        values.append(expectation * Scalar.of(Fraction(1, factorial(m))))
    return FormalSeries.from_scalars("hbar", values)


# -- connected/disconnected bookkeeping ---------------------------------------


def connected_log(z: FormalSeries) -> FormalSeries:
    """Formal log of a full expansion; the sum over connected graphs."""
    return z.log()


def connected_exp(f: FormalSeries) -> FormalSeries:
    """Formal exp of a connected sum; inverse of connected_log."""
    return f.exp()


# -- ribbon graphs ------------------------------------------------------------


@dataclass(frozen=True)
class RibbonGraph:
    """A pairing fattened by a cyclic half-edge order at each vertex.

    ``rotation`` lists one 3-cycle per vertex; cycle (a, b, c) sends a to b,
    b to c, c to a.  Cycle v must consist of exactly {3v, 3v+1, 3v+2}.
    """

    pairing: Pairing
    rotation: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if len(self.rotation) != self.pairing.m:
            raise DomainError("need exactly one rotation cycle per vertex")
        for v, cycle in enumerate(self.rotation):
            if sorted(cycle) != [3 * v, 3 * v + 1, 3 * v + 2]:
                raise DomainError(
                    f"rotation cycle {cycle!r} is not the half-edge triple of vertex {v}"
                )

    @classmethod
    def standard(cls, pairing: Pairing) -> "RibbonGraph":
        """The matrix-model rotations: (3v, 3v+1, 3v+2) at each vertex."""
        return cls(
            pairing, tuple((3 * v, 3 * v + 1, 3 * v + 2) for v in range(pairing.m))
        )

    def vertex_count(self) -> int:
        return self.pairing.m

    def edge_count(self) -> int:
        return len(self.pairing.matching)


def trace_faces(graph: RibbonGraph) -> int:
    """Number of cycles of (rotation o edge involution): the boundary faces."""
    sigma = {}
    for a, b, c in graph.rotation:
        sigma[a] = b
        sigma[b] = c
        sigma[c] = a
    alpha = graph.pairing.partner()
    remaining = set(sigma)
    faces = 0
    while remaining:
        start = min(remaining)
        h = start
        while True:
            remaining.discard(h)
            h = sigma[alpha[h]]
            if h == start:
                break
        faces += 1
    return faces


def ribbon_faces(graph: RibbonGraph) -> tuple[int, int, int]:
    """(h, g, r) for a connected ribbon graph: faces, genus, loops.

    Euler count: 2 - 2g - h = chi(surface) = chi(graph) = 1 - r with
    r = e - v + 1.
    """
    m = graph.pairing.m
    if not _connected(m, graph.pairing.vertex_edges()):
        raise DomainError("ribbon graph is disconnected; split components first")
    h = trace_faces(graph)
    v = graph.vertex_count()
    e = graph.edge_count()
    r = e - v + 1
    genus2 = 1 + r - h
    if genus2 % 2 or genus2 < 0:
        raise DomainError(f"inconsistent face count h={h} for loop count r={r}")
    return h, genus2 // 2, r


# -- matrix model -------------------------------------------------------------

MATRIX_VARIABLE = "N"


@lru_cache(maxsize=None)
def _face_census(m: int) -> tuple[tuple[int, int], ...]:
    """(face count, pairings) pairs at order m with the standard rotations."""
    census = Counter(trace_faces(RibbonGraph.standard(p)) for p in enumerate_pairings(m))
    return tuple(sorted(census.items()))


def matrix_model_series(
    order: int, *, matrix_variable: str = MATRIX_VARIABLE
) -> FormalSeries:
    """Genus expansion of the Hermitian one-matrix model with vertex tr M^3.

    Coefficient of g^m is (1/m!) * sum over pairings of N^h, h the face count
    of the standard-rotation ribbon; returned as polynomials in the symbolic
    matrix size, independent of any particular N.
    """
    if order < 0:
        raise DomainError("expansion order must be nonnegative")
    ring = (matrix_variable,)
    coefficients = []
    for m in range(order + 1):
        poly = LaurentPolynomial.zero(ring)
        inv_fact = Scalar.of(Fraction(1, factorial(m)))
        for faces, count in _face_census(m):
            poly = poly + LaurentPolynomial.monomial(
                ring, (faces,), Scalar.of(count) * inv_fact
            )
        coefficients.append(poly)
    return FormalSeries("g", order, coefficients)


def matrix_wick_oracle_series(size: int, order: int) -> FormalSeries:
    """Entry-level Wick oracle for <(tr M^3)^m> at a concrete matrix size.

    tr M^3 = sum M_{i0 i1} M_{i1 i2} M_{i2 i0}; the propagator
    <M_ab M_cd> = delta_ad delta_bc identifies index variables, and each
    resulting identification class ranges freely over the size, contributing
    one factor of size per class.  No ribbon structure is consulted.
    """
    if size < 1:
        raise DomainError("matrix size must be at least 1")
    if order < 0:
        raise DomainError("expansion order must be nonnegative")
    values = []
    for m in range(order + 1):
        if (3 * m) % 2:
            values.append(ZERO)
            continue
        total = 0
        # index variable s of vertex v: factor s is M_{index(v,s), index(v,s+1 mod 3)}
        count_vars = 3 * m
        for pairing in enumerate_pairings(m):
            parent = list(range(count_vars))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(x, y):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry

            for f, g in pairing.matching:
                fv, fs = divmod(f, 3)
                gv, gs = divmod(g, 3)
                row_f = 3 * fv + fs
                col_f = 3 * fv + (fs + 1) % 3
                row_g = 3 * gv + gs
                col_g = 3 * gv + (gs + 1) % 3
                union(row_f, col_g)
                union(col_f, row_g)
            classes = len({find(x) for x in range(count_vars)})
            total += size**classes
        values.append(Scalar.of(Fraction(total, factorial(m))))
    return FormalSeries.from_scalars("g", values)


def evaluate_matrix_series(series: FormalSeries, size: int) -> FormalSeries:
    """Substitute a concrete matrix size into a symbolic matrix-model series."""
    if size < 1:
        raise DomainError("matrix size must be at least 1")
    ring = series.ring
    if len(ring) != 1:
        raise DomainError("expected a series with one symbolic matrix-size variable")
    coefficients = [
        coeff.substitute(ring[0], Scalar.of(size)) for coeff in series.coefficients
    ]
    return FormalSeries(series.variable, series.order, coefficients)


def ribbon_census(order: int) -> tuple[dict[tuple[int, int], int], int]:
    """(g,h) census of connected standard-rotation ribbons at one order.

    Returns the counter and the number of disconnected pairings, which carry
    no single (g,h) and are tallied separately.
    """
    if order < 0:
        raise DomainError("expansion order must be nonnegative")
    census: Counter = Counter()
    skipped = 0
    for pairing in enumerate_pairings(order):
        if not _connected(pairing.m, pairing.vertex_edges()):
            skipped += 1
            continue
        h, genus, _ = ribbon_faces(RibbonGraph.standard(pairing))
        census[(genus, h)] += 1
    return dict(sorted(census.items())), skipped
