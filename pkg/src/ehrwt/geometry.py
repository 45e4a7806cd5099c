"""Exact polyhedral geometry over the integer lattice.

Polytopes are given by integer vertex lists. The H-representation is
recovered by eliminating barycentric coordinates (Gauss substitution
where an equation is available, Fourier-Motzkin otherwise) and pruned
to essential rows with an exact rational LP. Dilations are enumerated
coordinate by coordinate with exact interval propagation. Membership
is settled by a barycentric feasibility LP that never looks at the
facet pipeline, so the two routes can serve as mutual oracles.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ._simplex import simplex_feasible, simplex_maximize
from .errors import ConsistencyError, EnumerationLimitError

__all__ = [
    "LatticePolytope",
    "Graph",
    "dimension",
    "facets",
    "lattice_points",
    "interior_lattice_points",
    "contains",
    "edge_polytope",
    "bipartite_components",
    "require_nonnegative_vertices",
]

DEFAULT_ENUMERATION_CAP = 10**8


def _fraction(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise TypeError(f"floating point {what} {value!r} is not allowed")
    return Fraction(value)


class LatticePolytope:
    """Convex hull of a finite integer point list.

    The point list is stored exactly as given (duplicates and interior
    points are tolerated); the exact H-representation, affine hull
    equations plus essential facet inequalities with integer rows, is
    computed on first use and cached. Hashable on the point list.
    """

    __slots__ = ("_vertices", "_hull", "_facets")

    def __init__(self, vertices: Iterable[Sequence[int]]):
        rows = []
        for v in vertices:
            row = []
            for c in v:
                if not isinstance(c, int) or isinstance(c, bool):
                    raise ValueError(f"vertex coordinate {c!r} is not an integer")
                row.append(c)
            rows.append(tuple(row))
        if not rows:
            raise ValueError("a polytope needs at least one vertex")
        s = len(rows[0])
        if s < 1:
            raise ValueError("ambient dimension must be at least 1")
        if any(len(r) != s for r in rows):
            raise ValueError("all vertices must have the same length")
        self._vertices = tuple(rows)
        self._hull = None
        self._facets = None

    @property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return self._vertices

    @property
    def ambient_dim(self) -> int:
        return len(self._vertices[0])

    @property
    def affine_hull(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Equations a.x = b (integer, primitive) cutting out the hull."""
        if self._hull is None:
            self._hull = _affine_hull(self._vertices)
        return self._hull

    @property
    def dim(self) -> int:
        """Affine dimension of the hull."""
        return self.ambient_dim - len(self.affine_hull)

    @property
    def facet_inequalities(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Essential inequalities a.x <= b (integer rows) on the hull."""
        if self._facets is None:
            self._facets = _facet_inequalities(self)
        return self._facets

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self._vertices == other._vertices

    def __hash__(self) -> int:
        return hash(("LatticePolytope", self._vertices))

    def __repr__(self) -> str:
        return f"LatticePolytope({list(self._vertices)!r})"


class Graph:
    """Finite simple undirected graph on vertices 1..vertex_count."""

    __slots__ = ("_n", "_edges")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if not isinstance(vertex_count, int) or vertex_count < 1:
            raise ValueError("vertex_count must be a positive integer")
        seen = set()
        for e in edges:
            i, j = e
            if not isinstance(i, int) or not isinstance(j, int):
                raise ValueError(f"edge {e!r} must be a pair of integers")
            if not (1 <= i <= vertex_count and 1 <= j <= vertex_count):
                raise ValueError(f"edge {e!r} leaves the vertex range 1..{vertex_count}")
            if i == j:
                raise ValueError(f"loop at vertex {i} is not allowed")
            seen.add((min(i, j), max(i, j)))
        self._n = vertex_count
        self._edges = tuple(sorted(seen))

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash(("Graph", self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph({self._n}, {list(self._edges)!r})"


def _rref(rows):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), -1)
        if pivot < 0:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][col]
        mat[r] = [v / inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [v - f * p for v, p in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _integerize(values):
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values]


def _primitive_ineq(row, rhs):
    """Integer primitive form of a.x <= b; None when the row is trivial."""
    ints = _integerize([Fraction(v) for v in row] + [Fraction(rhs)])
    coeffs, b = ints[:-1], ints[-1]
    g = 0
    for v in coeffs:
        g = math.gcd(g, v)
    if g == 0:
        if b < 0:
            raise ConsistencyError("derived an infeasible constraint; this is a bug")
        return None
    g = math.gcd(g, b)
    return tuple(v // g for v in coeffs), b // g


def _primitive_eq(row, rhs):
    """Integer primitive sign-normalized form of a.x = b; None when trivial."""
    ints = _integerize([Fraction(v) for v in row] + [Fraction(rhs)])
    coeffs, b = ints[:-1], ints[-1]
    lead = next((v for v in coeffs if v != 0), 0)
    if lead == 0:
        if b != 0:
            raise ConsistencyError("derived an inconsistent equation; this is a bug")
        return None
    g = 0
    for v in coeffs:
        g = math.gcd(g, v)
    g = math.gcd(g, b)
    if lead < 0:
        g = -g
    return tuple(v // g for v in coeffs), b // g


def _affine_hull(vertices):
    """Primitive integer equations of the affine hull, from vertex differences."""
    base = vertices[0]
    s = len(base)
    diffs = [[Fraction(v[j] - base[j]) for j in range(s)] for v in vertices[1:]]
    rref, pivots = _rref(diffs)
    eqs = []
    for free in (j for j in range(s) if j not in pivots):
        normal = [Fraction(0)] * s
        normal[free] = Fraction(1)
        for r, p in enumerate(pivots):
            normal[p] = -rref[r][free]
        rhs = sum(c * b for c, b in zip(normal, base))
        prim = _primitive_eq(normal, rhs)
        if prim is not None:
            eqs.append(prim)
    return tuple(sorted(eqs))


def _substitute(con, eq, var):
    row, rhs = con
    k = row[var]
    if k == 0:
        return con
    erow, erhs = eq
    f = k / erow[var]
    return ([a - f * b for a, b in zip(row, erow)], rhs - f * erhs)


def _affine_rank(points) -> int:
    """Affine dimension of a point list; -1 when the list is empty."""
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    _, pivots = _rref(diffs)
    return len(pivots)


def _keep_facet_rows(ineqs, points, active):
    """Keep only rows supporting a facet of the projected point hull.

    The elimination state always describes the convex hull of the
    projected ``points`` together with a complete equation block for its
    affine hull, so a valid inequality is essential exactly when its
    tight point set spans one dimension less than the hull. Implicit
    equalities (tight everywhere) are carried by the equation block and
    dropped here too. This is what keeps intermediate row counts small.
    """
    proj = [[Fraction(p[c]) for c in active] for p in points]
    dim_q = _affine_rank(proj)
    if dim_q <= 0:
        return []
    keep = []
    for row, rhs in ineqs:
        tight = [
            q
            for p, q in zip(points, proj)
            if sum(c * v for c, v in zip(row, p)) == rhs
        ]
        if _affine_rank(tight) == dim_q - 1:
            keep.append((row, rhs))
    return keep


def _tidy(cons):
    """Normalize rows, drop tautologies, keep the tightest rhs per normal."""
    best = {}
    for row, rhs in cons:
        prim = _primitive_ineq(row, rhs)
        if prim is None:
            continue
        key, val = prim
        if key not in best or val < best[key]:
            best[key] = val
    return [
        ([Fraction(c) for c in key], Fraction(val)) for key, val in sorted(best.items())
    ]


def _facet_inequalities(P):
    verts = P.vertices
    m, s = len(verts), P.ambient_dim
    if P.dim == 0:
        return ()

    # barycentric system: x = V.lam, sum(lam) = 1, lam >= 0, variables (lam, x)
    width = m + s
    eqs = []
    for j in range(s):
        row = [Fraction(verts[i][j]) for i in range(m)] + [Fraction(0)] * s
        row[m + j] = Fraction(-1)
        eqs.append((row, Fraction(0)))
    eqs.append(([Fraction(1)] * m + [Fraction(0)] * s, Fraction(1)))
    ineqs = []
    for i in range(m):
        row = [Fraction(0)] * width
        row[i] = Fraction(-1)
        ineqs.append((row, Fraction(0)))
    # images of the barycentric vertices; projections of their hull are
    # exactly what each elimination state describes
    images = []
    for i, v in enumerate(verts):
        unit = [0] * m
        unit[i] = 1
        images.append(tuple(unit) + v)

    remaining = set(range(m))
    while remaining:
        pick = None
        for eq in eqs:
            var = next((v for v in sorted(remaining) if eq[0][v] != 0), None)
            if var is not None:
                pick = (var, eq)
                break
        if pick is not None:
            var, eq = pick
            eqs = [_substitute(c, eq, var) for c in eqs if c is not eq]
            eqs = [e for e in eqs if any(v != 0 for v in e[0])]
            ineqs = _tidy(_substitute(c, eq, var) for c in ineqs)
        else:
            # no equation mentions a remaining variable: Fourier-Motzkin round
            def fm_cost(v):
                pos = sum(1 for row, _ in ineqs if row[v] > 0)
                neg = sum(1 for row, _ in ineqs if row[v] < 0)
                return (pos * neg, v)

            var = min(remaining, key=fm_cost)
            pos = [c for c in ineqs if c[0][var] > 0]
            neg = [c for c in ineqs if c[0][var] < 0]
            keep = [c for c in ineqs if c[0][var] == 0]
            for prow, prhs in pos:
                alpha = prow[var]
                for nrow, nrhs in neg:
                    beta = -nrow[var]
                    row = [beta * a + alpha * b for a, b in zip(prow, nrow)]
                    keep.append((row, beta * prhs + alpha * nrhs))
            ineqs = _tidy(keep)
        remaining.discard(var)
        active = sorted(remaining) + list(range(m, width))
        ineqs = _keep_facet_rows(ineqs, images, active)

    # lambdas are gone; project onto the x block
    projected = []
    for row, rhs in ineqs:
        if any(c != 0 for c in row[:m]):
            raise ConsistencyError("elimination left a barycentric coefficient behind")
        projected.append((row[m:], rhs))

    # canonical representative modulo the hull equations
    hull = P.affine_hull
    hull_rows = [[Fraction(c) for c in a] + [Fraction(b)] for a, b in hull]
    rref, pivots = _rref(hull_rows)
    best = {}
    for row, rhs in projected:
        u = [Fraction(c) for c in row] + [Fraction(rhs)]
        for rr, p in zip(rref, pivots):
            f = u[p]
            if f != 0:
                u = [a - f * b for a, b in zip(u, rr)]
        prim = _primitive_ineq(u[:-1], u[-1])
        if prim is None:
            continue
        key, val = prim
        if key not in best or val < best[key]:
            best[key] = val
    rows = sorted(best.items())

    # exact-LP pruning down to essential rows
    kept = list(rows)
    for target in rows:
        if target not in kept or len(kept) == 1:
            continue
        others = [r for r in kept if r != target]
        if _lp_implied(target, hull, others, s):
            kept.remove(target)
    return tuple(kept)


def _lp_implied(target, equations, inequalities, s):
    """True when max of target's normal over the other rows stays <= its rhs."""
    ta, tb = target
    k = len(inequalities)
    rows = []
    rhs = []
    for a, b in equations:
        rows.append([Fraction(c) for c in a] + [Fraction(-c) for c in a] + [Fraction(0)] * k)
        rhs.append(Fraction(b))
    for idx, (a, b) in enumerate(inequalities):
        line = [Fraction(c) for c in a] + [Fraction(-c) for c in a] + [Fraction(0)] * k
        line[2 * s + idx] = Fraction(1)
        rows.append(line)
        rhs.append(Fraction(b))
    objective = [Fraction(c) for c in ta] + [Fraction(-c) for c in ta] + [Fraction(0)] * k
    status, value, _ = simplex_maximize(rows, rhs, objective)
    if status == "unbounded":
        return False
    if status == "infeasible":
        raise ConsistencyError("H-representation became infeasible while pruning")
    return value <= tb


def _enumeration_cap() -> int:
    raw = os.environ.get("EHRWT_MAX_POINTS")
    if raw is None:
        return DEFAULT_ENUMERATION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"EHRWT_MAX_POINTS must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise ValueError("EHRWT_MAX_POINTS must be positive")
    return cap


@lru_cache(maxsize=64)
def _points(P: LatticePolytope, n: int, strict: bool):
    s = P.ambient_dim
    verts = P.vertices
    rows = []
    for a, b in P.facet_inequalities:
        # integer rows make "< n*b" the same as "<= n*b - 1"
        rows.append((a, n * b - 1 if strict else n * b))
    for a, b in P.affine_hull:
        rows.append((a, n * b))
        rows.append((tuple(-c for c in a), -n * b))
    lo = [n * min(v[j] for v in verts) for j in range(s)]
    hi = [n * max(v[j] for v in verts) for j in range(s)]
    # per-row minimum possible contribution of coordinates j..s-1 over the box
    tails = []
    for a, _ in rows:
        t = [0] * (s + 1)
        for j in range(s - 1, -1, -1):
            t[j] = t[j + 1] + min(a[j] * lo[j], a[j] * hi[j])
        tails.append(t)
    cap = _enumeration_cap()
    visited = 0
    out = []
    point = [0] * s

    def descend(k, partials):
        nonlocal visited
        if k == s:
            out.append(tuple(point))
            return
        low, high = lo[k], hi[k]
        for idx, (a, b) in enumerate(rows):
            c = a[k]
            if c == 0:
                continue
            slack = b - partials[idx] - tails[idx][k + 1]
            if c > 0:
                bound = slack // c
                if bound < high:
                    high = bound
            else:
                bound = -(slack // -c)
                if bound > low:
                    low = bound
        for x in range(low, high + 1):
            visited += 1
            if visited > cap:
                raise EnumerationLimitError(
                    f"enumeration exceeded EHRWT_MAX_POINTS={cap} candidate cells; "
                    "raise the cap to allow larger jobs"
                )
            point[k] = x
            descend(k + 1, [p + a[k] * x for (a, _), p in zip(rows, partials)])

    descend(0, [0] * len(rows))
    return tuple(out)


def dimension(P: LatticePolytope) -> int:
    """Affine dimension of the polytope."""
    return P.dim


def facets(P: LatticePolytope):
    """Exact H-representation: (affine hull equations, facet inequalities).

    Both parts use primitive integer rows (a, b) meaning a.x = b and
    a.x <= b respectively; together they cut out exactly the polytope.
    """
    return list(P.affine_hull), list(P.facet_inequalities)


def lattice_points(P: LatticePolytope, n: int) -> list[tuple[int, ...]]:
    """Lattice points of the n-th dilation, lexicographically sorted.

    The 0-th dilation is the origin. Work is capped by the
    EHRWT_MAX_POINTS environment variable (default 10^8 candidate
    cells); beyond the cap an EnumerationLimitError is raised.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("dilation factor must be a nonnegative integer")
    if n == 0:
        return [(0,) * P.ambient_dim]
    return list(_points(P, n, False))


def interior_lattice_points(P: LatticePolytope, n: int) -> list[tuple[int, ...]]:
    """Lattice points in the relative interior of the n-th dilation.

    For a 0-dimensional polytope the relative interior is the point
    itself. Requires n >= 1.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("dilation factor must be a positive integer")
    return list(_points(P, n, True))


def contains(P: LatticePolytope, point: Sequence, n=1) -> bool:
    """Exact membership of a rational point in the n-th dilation (n > 0 rational).

    Feasibility of the barycentric system {n*V.lam = point, sum(lam) = 1,
    lam >= 0}, solved by the exact simplex. Independent of the facet
    pipeline by design.
    """
    scale = _fraction(n, "dilation factor")
    if scale <= 0:
        raise ValueError("dilation factor must be positive")
    coords = [_fraction(c, "coordinate") for c in point]
    if len(coords) != P.ambient_dim:
        raise ValueError(f"point has length {len(coords)}, expected {P.ambient_dim}")
    m = len(P.vertices)
    rows = [[scale * v[j] for v in P.vertices] for j in range(P.ambient_dim)]
    rows.append([Fraction(1)] * m)
    rhs = coords + [Fraction(1)]
    return simplex_feasible(rows, rhs)


def edge_polytope(G: Graph) -> LatticePolytope:
    """Polytope spanned by e_i + e_j over the edges of the graph.

    Every vertex must meet an edge, otherwise the polytope would live in
    a smaller coordinate space than advertised.
    """
    touched = {v for e in G.edges for v in e}
    isolated = sorted(set(range(1, G.vertex_count + 1)) - touched)
    if isolated:
        raise ValueError(
            f"graph has isolated vertices {isolated}; every vertex must meet an edge"
        )
    rows = []
    for i, j in G.edges:
        row = [0] * G.vertex_count
        row[i - 1] = 1
        row[j - 1] = 1
        rows.append(row)
    return LatticePolytope(rows)


def bipartite_components(G: Graph) -> int:
    """Number of connected components admitting a proper 2-coloring.

    Isolated vertices count as trivially bipartite components.
    """
    adj = {v: [] for v in range(1, G.vertex_count + 1)}
    for i, j in G.edges:
        adj[i].append(j)
        adj[j].append(i)
    color = {}
    count = 0
    for start in adj:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        good = True
        while stack:
            u = stack.pop()
            for nb in adj[u]:
                if nb not in color:
                    color[nb] = color[u] ^ 1
                    stack.append(nb)
                elif color[nb] == color[u]:
                    good = False
        if good:
            count += 1
    return count


def require_nonnegative_vertices(P: LatticePolytope, operation: str) -> None:
    """Reject polytopes leaving the nonnegative orthant where an operation needs it."""
    for v in P.vertices:
        if any(c < 0 for c in v):
            raise ValueError(
                f"{operation} requires vertices in the nonnegative orthant, got {v}"
            )
