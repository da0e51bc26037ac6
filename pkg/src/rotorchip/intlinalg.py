"""Exact integer linear algebra over Laplacian lattices.

Everything here works with arbitrary-precision ints (and exact rationals
internally), never floats: the answers are lattice memberships and
primitive kernel vectors, where rounding would be wrong and multiplicities
may be huge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .multigraph import (
    DirectedMultigraph,
    IntMatrix,
    IntVector,
    SccDecomposition,
    induced_subgraph,
    is_strongly_connected,
    scc_decompose,
)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (x, y, g) with x*a + y*b == g == gcd(a, b)."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hermite_row_reduce(rows: IntMatrix) -> tuple[list[list[int]], list[list[int]]]:
    """Unimodular row reduction to Hermite (row echelon) form.

    Returns (H, U) with U @ rows == H, U unimodular.  Pivots are positive
    and entries above each pivot are reduced modulo it, which keeps
    intermediate growth tame.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    h = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if h[i][c] == 0:
                continue
            if piv is None:
                piv = i
                continue
            a, b = h[piv][c], h[i][c]
            x, y, g = _xgcd(a, b)
            aa, bb = a // g, b // g
            h[piv], h[i] = (
                [x * p + y * q for p, q in zip(h[piv], h[i])],
                [-bb * p + aa * q for p, q in zip(h[piv], h[i])],
            )
            u[piv], u[i] = (
                [x * p + y * q for p, q in zip(u[piv], u[i])],
                [-bb * p + aa * q for p, q in zip(u[piv], u[i])],
            )
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        u[r], u[piv] = u[piv], u[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [p - q * s for p, s in zip(h[i], h[r])]
                u[i] = [p - q * s for p, s in zip(u[i], u[r])]
        r += 1
    return h, u


def solve_integer(a: IntMatrix, d: IntVector) -> IntVector | None:
    """Some integer x with a @ x == d, or None when no integer solution exists.

    Reduces the column lattice of ``a`` to Hermite form and expresses d in
    it, so cost is polynomial in the bit length of the entries.
    """
    m = len(a)
    if len(d) != m:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    ncols = len(a[0]) if m else 0
    # rows of b are the columns of a; the column lattice becomes a row lattice
    b = tuple(tuple(a[i][j] for i in range(m)) for j in range(ncols))
    h, u = hermite_row_reduce(b)
    residual = list(d)
    coeff = [0] * ncols
    for i in range(ncols):
        pivot_col = next((j for j, val in enumerate(h[i]) if val), None)
        if pivot_col is None:
            continue
        if residual[pivot_col] == 0:
            continue
        q, rem = divmod(residual[pivot_col], h[i][pivot_col])
        if rem:
            return None
        coeff[i] = q
        residual = [p - q * s for p, s in zip(residual, h[i])]
    if any(residual):
        return None
    # d == coeff @ h == coeff @ u @ b, so x = u^T @ coeff solves a @ x == d
    return tuple(sum(coeff[i] * u[i][j] for i in range(ncols)) for j in range(ncols))


def primitive_period_vector(g: DirectedMultigraph) -> IntVector:
    """The unique positive coprime vector p with laplacian(g) @ p == 0.

    Only strongly connected graphs have one; a single isolated vertex
    yields (1,).
    """
    if not is_strongly_connected(g):
        raise ValueError("period vector requires a strongly connected graph")
    n = g.n
    if n == 1:
        return (1,)
    rows = [[Fraction(x) for x in row] for row in g.laplacian()]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ArithmeticError("Laplacian kernel of a strongly connected graph must be one-dimensional")
    sol = [Fraction(0)] * n
    sol[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        sol[c] = -rows[i][free[0]]
    denom = lcm(*(x.denominator for x in sol))
    ints = [int(x * denom) for x in sol]
    common = gcd(*ints)
    ints = [x // common for x in ints]
    if ints[free[0]] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise ArithmeticError("primitive period vector must be positive on a strongly connected graph")
    return tuple(ints)


@dataclass(frozen=True)
class PeriodBasis:
    """Per-component primitive period vectors and the total period length.

    ``component_vectors[i]`` is the primitive period vector of component i
    taken as a standalone graph, embedded as a full-length vector (zero
    outside the component).  Only the sink components' vectors lie in the
    kernel of the whole graph's Laplacian; they have pairwise disjoint
    supports and generate it.  ``per`` sums the coordinates of every
    component's vector, sinks or not.
    """

    scc: SccDecomposition
    component_vectors: tuple[IntVector, ...]
    sink_indices: tuple[int, ...]
    per: int

    def kernel_vectors(self) -> tuple[IntVector, ...]:
        return tuple(self.component_vectors[i] for i in self.sink_indices)


def period_basis(g: DirectedMultigraph) -> PeriodBasis:
    scc = scc_decompose(g)
    vectors = []
    total = 0
    for comp in scc.components:
        sub, remap = induced_subgraph(g, comp)
        p = primitive_period_vector(sub)
        embedded = [0] * g.n
        for v in comp:
            embedded[v] = p[remap[v]]
        vectors.append(tuple(embedded))
        total += sum(p)
    return PeriodBasis(
        scc=scc,
        component_vectors=tuple(vectors),
        sink_indices=scc.sink_component_ids(),
        per=total,
    )


def nonneg_reduced_solution(g: DirectedMultigraph, d: IntVector) -> IntVector | None:
    """The unique reduced f >= 0 with laplacian(g) @ f == d, or None.

    Entries outside sink components are forced; inside each sink component
    the solution is shifted by the component's period vector until it is
    nonnegative and does not dominate it.
    """
    if len(d) != g.n:
        raise ValueError("dimension mismatch between graph and right-hand side")
    f = solve_integer(g.laplacian(), d)
    if f is None:
        return None
    basis = period_basis(g)
    out = list(f)
    in_sink = [False] * g.n
    for i in basis.sink_indices:
        for v in basis.scc.components[i]:
            in_sink[v] = True
    if any(out[v] < 0 for v in range(g.n) if not in_sink[v]):
        return None
    for i in basis.sink_indices:
        p = basis.component_vectors[i]
        comp = basis.scc.components[i]
        shift = min(out[v] // p[v] for v in comp)
        if shift:
            for v in comp:
                out[v] -= shift * p[v]
    return tuple(out)


def is_reduced(g: DirectedMultigraph, f: IntVector) -> bool:
    """True when f >= 0 dominates no nonzero period vector.

    Equivalently: in every sink component some vertex stays below the
    component's primitive period vector.
    """
    _check_nonneg(g, f)
    basis = period_basis(g)
    for i in basis.sink_indices:
        p = basis.component_vectors[i]
        if all(f[v] >= p[v] for v in basis.scc.components[i]):
            return False
    return True


def is_routing_reduced(g: DirectedMultigraph, r: IntVector) -> bool:
    """True when r >= 0 dominates no nonzero routing period vector.

    Routing period vectors scale each period vector entry by the vertex
    out-degree.  Trivial sink components (out-degree-zero vertices) have
    the zero routing period vector and impose no constraint.
    """
    _check_nonneg(g, r)
    degs = g.out_degrees()
    basis = period_basis(g)
    for i in basis.sink_indices:
        if basis.scc.is_trivial[i]:
            continue
        p = basis.component_vectors[i]
        if all(r[v] >= p[v] * degs[v] for v in basis.scc.components[i]):
            return False
    return True


def reduce_vector(g: DirectedMultigraph, f: IntVector) -> IntVector:
    """The reduced representative of f >= 0 modulo the period lattice."""
    _check_nonneg(g, f)
    basis = period_basis(g)
    out = list(f)
    for i in basis.sink_indices:
        p = basis.component_vectors[i]
        comp = basis.scc.components[i]
        shift = min(out[v] // p[v] for v in comp)
        if shift:
            for v in comp:
                out[v] -= shift * p[v]
    return tuple(out)


def reduce_routing_vector(g: DirectedMultigraph, r: IntVector) -> IntVector:
    """The routing-reduced representative of r >= 0 modulo routing periods."""
    _check_nonneg(g, r)
    degs = g.out_degrees()
    basis = period_basis(g)
    out = list(r)
    for i in basis.sink_indices:
        if basis.scc.is_trivial[i]:
            continue
        p = basis.component_vectors[i]
        comp = basis.scc.components[i]
        shift = min(out[v] // (p[v] * degs[v]) for v in comp)
        if shift:
            for v in comp:
                out[v] -= shift * p[v] * degs[v]
    return tuple(out)


def _check_nonneg(g: DirectedMultigraph, vec: IntVector) -> None:
    if len(vec) != g.n:
        raise ValueError("vector length must match the vertex count")
    if any(x < 0 for x in vec):
        raise ValueError("vector must be nonnegative")
