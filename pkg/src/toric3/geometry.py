"""Exact integer lattice geometry in dimensions 2 and 3.

All computations are over exact integers (Python ints, or int64 numpy
arrays for bulk point filtering; coordinates stay far below overflow at
the scales this library targets).  Volumes of lower-dimensional polytopes
are measured in the affine lattice aff(P) & Z^n, whose basis is obtained
from the Smith normal form of the edge-vector matrix, so relative
normalized volumes are always integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

import numpy as np

Vec = tuple  # tuple of ints


# ---------------------------------------------------------------------------
# vector / matrix helpers

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)

def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vgcd(a):
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    return g


def is_primitive(a):
    return vgcd(a) == 1


def primitive(a):
    """Divide out the gcd of the coordinates (zero vector stays zero)."""
    g = vgcd(a)
    if g <= 1:
        return tuple(a)
    return tuple(x // g for x in a)


def canonical_sign(a):
    """Flip sign so the first nonzero coordinate is positive."""
    for x in a:
        if x > 0:
            return tuple(a)
        if x < 0:
            return vneg(a)
    return tuple(a)


def cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def mat_vec(M, v):
    return tuple(vdot(row, v) for row in M)


def mat_mul(A, B):
    cols = list(zip(*B))
    return tuple(tuple(vdot(row, col) for col in cols) for row in A)


def mat_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
                - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
                + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
    raise ValueError("only n <= 3 supported")


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(M):
    return tuple(zip(*M))


def mat_inverse_unimodular(M):
    """Exact inverse of an integer matrix with determinant +-1."""
    d = mat_det(M)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    n = len(M)
    if n == 1:
        return ((d,),)
    if n == 2:
        a, b = M[0]
        c, e = M[1]
        return tuple(tuple(x * d for x in row)
                     for row in ((e, -b), (-c, a)))
    # adjugate for 3x3
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            sub = [[M[r][c] for c in range(3) if c != j]
                   for r in range(3) if r != i]
            cof[i][j] = (-1) ** (i + j) * (sub[0][0] * sub[1][1]
                                           - sub[0][1] * sub[1][0])
    return tuple(tuple(cof[j][i] * d for j in range(3)) for i in range(3))


def solve_rational(M, b):
    """Solve M x = b exactly over the rationals (M square, invertible)."""
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(b[i])]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return tuple(A[i][n] for i in range(n))


def int_rank(vectors):
    """Rank over Q of a list of integer vectors (fraction-free elimination)."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(rows):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                a, b = pr[col], rows[r][col]
                rows[r] = [a * x - b * y for x, y in zip(rows[r], pr)]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# Smith normal form (with transforms) and saturated lattice bases

def smith_normal_form(A):
    """Return (S, U, V) with U A V = S, U and V unimodular, S diagonal.

    A is a list of rows of equal length; entries are Python ints.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(row) for row in A]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        S[dst] = [x + f * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in S:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    def diagonalize_from(t0):
        t = t0
        while t < min(m, n):
            # pivot: nonzero entry of smallest absolute value in S[t:, t:]
            piv = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if S[i][j] and (best is None or abs(S[i][j]) < best):
                        best = abs(S[i][j])
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            done = False
            while not done:
                done = True
                for i in range(t + 1, m):
                    if S[i][t]:
                        add_row(t, i, -(S[i][t] // S[t][t]))
                        if S[i][t]:
                            swap_rows(t, i)
                            done = False
                for j in range(t + 1, n):
                    if S[t][j]:
                        add_col(t, j, -(S[t][j] // S[t][t]))
                        if S[t][j]:
                            swap_cols(t, j)
                            done = False
            if S[t][t] < 0:
                S[t] = [-x for x in S[t]]
                U[t] = [-x for x in U[t]]
            t += 1
        return t

    rank = diagonalize_from(0)
    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            if S[i + 1][i + 1] % S[i][i] != 0:
                add_col(i + 1, i, 1)
                diagonalize_from(i)
                changed = True
                break
    return S, U, V


def saturated_basis(diffs, n):
    """Basis (list of vectors) of the saturation of the lattice generated
    by ``diffs`` inside Z^n, i.e. of span_Q(diffs) & Z^n."""
    rows = [list(d) for d in diffs if any(d)]
    if not rows:
        return []
    S, U, V = smith_normal_form(rows)
    r = sum(1 for i in range(min(len(rows), n)) if S[i][i] != 0)
    # rows of (U A) = S V^{-1}; row i of S V^{-1} is d_i * (row i of V^{-1}).
    Vinv = mat_inverse_unimodular(tuple(tuple(row) for row in V))
    return [tuple(Vinv[i]) for i in range(r)]


def complete_to_unimodular(basis, n):
    """Extend a saturated lattice basis (rows) to a unimodular n x n matrix
    whose first rows are the basis."""
    r = len(basis)
    if r == n:
        M = tuple(tuple(row) for row in basis)
        if mat_det(M) not in (1, -1):
            raise ValueError("basis of full rank is not unimodular")
        return M
    rows = [list(b) for b in basis]
    S, U, V = smith_normal_form(rows)
    for i in range(r):
        if S[i][i] != 1:
            raise ValueError("basis is not saturated")
    # B = U^{-1} [I 0] V^{-1}... easier: rows of B together with the last
    # n-r rows of V^{-1} form a basis of Z^n.
    Vinv = mat_inverse_unimodular(tuple(tuple(row) for row in V))
    ext = [tuple(row) for row in basis] + [tuple(Vinv[i]) for i in range(r, n)]
    M = tuple(ext)
    if mat_det(M) not in (1, -1):
        raise ValueError("completion failed")
    return M


# ---------------------------------------------------------------------------
# affine unimodular maps

@dataclass(frozen=True)
class UnimodularMap:
    """Affine unimodular map x -> M x + t with det(M) = +-1."""

    matrix: tuple
    translation: tuple

    def __post_init__(self):
        if mat_det(self.matrix) not in (1, -1):
            raise ValueError("determinant must be +-1")

    @property
    def dim(self):
        return len(self.translation)

    def __call__(self, v):
        return vadd(mat_vec(self.matrix, v), self.translation)

    def apply_polytope(self, P):
        return convex_hull([self(v) for v in P.vertices])

    def compose(self, other):
        """self after other: x -> self(other(x))."""
        M = mat_mul(self.matrix, other.matrix)
        t = vadd(mat_vec(self.matrix, other.translation), self.translation)
        return UnimodularMap(M, t)

    def inverse(self):
        Mi = mat_inverse_unimodular(self.matrix)
        return UnimodularMap(Mi, vneg(mat_vec(Mi, self.translation)))

    @staticmethod
    def identity(n):
        return UnimodularMap(mat_identity(n), (0,) * n)


# ---------------------------------------------------------------------------
# convex hull

def _hull_2d(points):
    """Andrew's monotone chain; returns hull vertices in ccw order,
    minimal (collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                turn = ((a[0] - o[0]) * (p[1] - o[1])
                        - (a[1] - o[1]) * (p[0] - o[0]))
                if turn <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all collinear segment degenerates
        hull = [pts[0], pts[-1]]
    return hull


def _facets_3d(points):
    """Facet half-spaces of a full-dimensional hull in R^3.

    Vectorized brute force over triples; callers prune large inputs first.
    Returns a sorted tuple of (primitive normal, offset) with
    <normal, x> >= offset for all points.
    """
    pts = sorted(set(points))
    arr = np.array(pts, dtype=np.int64)
    m = len(pts)
    idx = np.array(list(itertools.combinations(range(m), 3)), dtype=np.int64)
    a = arr[idx[:, 0]]
    b = arr[idx[:, 1]] - a
    c = arr[idx[:, 2]] - a
    normals = np.cross(b, c)
    nz = np.any(normals != 0, axis=1)
    normals = normals[nz]
    a = a[nz]
    offs = np.einsum("ij,ij->i", normals, a)
    dots = normals @ arr.T  # (ntriples, m)
    mx = dots.max(axis=1)
    mn = dots.min(axis=1)
    lower = mn == offs  # all points on >= side after flipping below
    upper = mx == offs
    facets = set()
    for k in np.nonzero(lower | upper)[0]:
        nvec = tuple(int(x) for x in normals[k])
        off = int(offs[k])
        if mx[k] == offs[k]:  # all points <= off: flip so >= holds
            nvec = vneg(nvec)
            off = -off
        g = vgcd(nvec)
        facets.add((tuple(x // g for x in nvec), off // g if off % g == 0
                    else Fraction(off, g)))
    # offsets always divide exactly: the facet plane passes through lattice
    # points, so <n/g, x> is an integer there.
    return tuple(sorted((n, int(o)) for n, o in facets))


def _prune_candidates_3d(points):
    """Cheap exact pruning for large inputs: hull of directional extremes,
    then keep only points on or outside that inner hull."""
    pts = sorted(set(points))
    if len(pts) <= 40:
        return pts
    arr = np.array(pts, dtype=np.int64)
    dirs = [d for d in itertools.product((-1, 0, 1), repeat=3) if any(d)]
    seed = set()
    for d in dirs:
        vals = arr @ np.array(d, dtype=np.int64)
        seed.add(pts[int(vals.argmax())])
    seed = sorted(seed)
    if int_rank([vsub(p, seed[0]) for p in seed[1:]]) < 3:
        return pts
    inner = _facets_3d(seed)
    keep = set(seed)
    normals = np.array([n for n, _ in inner], dtype=np.int64)
    offs = np.array([o for _, o in inner], dtype=np.int64)
    dots = arr @ normals.T
    strict_inside = np.all(dots > offs, axis=1)
    for i, p in enumerate(pts):
        if not strict_inside[i]:
            keep.add(p)
    return sorted(keep)


class Polytope:
    """Immutable lattice polytope in Z^2 or Z^3.

    Construct through :func:`convex_hull`. For full-dimensional polytopes
    ``facets`` holds the irredundant half-space system
    ``<normal, x> >= offset`` with primitive normals.  Lower-dimensional
    polytopes carry an exact embedding of an intrinsic full-dimensional
    polytope over the affine lattice aff(P) & Z^n.
    """

    __slots__ = ("ambient", "dim", "vertices", "facets", "_origin", "_basis",
                 "_inner", "_points", "__weakref__")

    def __init__(self, ambient, dim, vertices, facets=None, origin=None,
                 basis=None, inner=None):
        self.ambient = ambient
        self.dim = dim
        self.vertices = tuple(sorted(vertices))
        self.facets = facets
        self._origin = origin
        self._basis = basis
        self._inner = inner
        self._points = None

    def __eq__(self, other):
        return (isinstance(other, Polytope)
                and self.ambient == other.ambient
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.ambient, self.vertices))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={list(self.vertices)})"

    # -- lattice points ----------------------------------------------------

    @property
    def lattice_points(self):
        if self._points is None:
            self._points = self._compute_points()
        return self._points

    def _compute_points(self):
        if self.dim == 0:
            return self.vertices
        if self.dim < self.ambient:
            inner_pts = self._inner.lattice_points
            return tuple(sorted(self._embed(c) for c in inner_pts))
        arr = np.array(self.vertices, dtype=np.int64)
        lo = arr.min(axis=0)
        hi = arr.max(axis=0)
        axes = [np.arange(lo[i], hi[i] + 1, dtype=np.int64)
                for i in range(self.ambient)]
        grids = np.meshgrid(*axes, indexing="ij")
        box = np.stack([g.ravel() for g in grids], axis=1)
        normals = np.array([n for n, _ in self.facets], dtype=np.int64)
        offs = np.array([o for _, o in self.facets], dtype=np.int64)
        ok = np.all(box @ normals.T >= offs, axis=1)
        return tuple(sorted(map(tuple, box[ok].tolist())))

    def _embed(self, c):
        v = self._origin
        for coef, bvec in zip(c, self._basis):
            v = vadd(v, tuple(coef * x for x in bvec))
        return v

    def _intrinsic_coords(self, p):
        """Exact coordinates of an ambient lattice point of aff(P) in the
        intrinsic basis."""
        d = vsub(p, self._origin)
        # solve c * basis = d  (basis rows); least-squares free since exact
        B = self._basis
        n = self.ambient
        # build square system using B B^T
        G = [[vdot(B[i], B[j]) for j in range(len(B))] for i in range(len(B))]
        rhs = [vdot(B[i], d) for i in range(len(B))]
        sol = solve_rational(G, rhs)
        coords = tuple(int(x) for x in sol)
        if any(Fraction(c) != s for c, s in zip(coords, sol)):
            raise ValueError("point not in the affine lattice")
        if self._embed(coords) != p:
            raise ValueError("point not in aff(P)")
        return coords

    def contains(self, p):
        if self.dim == 0:
            return tuple(p) == self.vertices[0]
        if self.dim == self.ambient:
            return all(vdot(n, p) >= b for n, b in self.facets)
        try:
            c = self._intrinsic_coords(p)
        except ValueError:
            return False
        return self._inner.contains(c)

    # -- invariants --------------------------------------------------------

    @property
    def n_points(self):
        return len(self.lattice_points)

    def translate(self, v):
        return convex_hull([vadd(w, v) for w in self.vertices])


def convex_hull(points):
    """Exact convex hull of integer points in Z^2 or Z^3."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    n = len(pts[0])
    if n not in (2, 3):
        raise ValueError("only ambient dimensions 2 and 3 are supported")
    if any(len(p) != n for p in pts):
        raise ValueError("mixed dimensions in input")
    p0 = pts[0]
    diffs = [vsub(p, p0) for p in pts[1:]]
    dim = int_rank(diffs)

    if dim == 0:
        return Polytope(n, 0, (p0,))

    if dim == n:
        if n == 2:
            hull = _hull_2d(pts)
            facets = []
            for i in range(len(hull)):
                a, b = hull[i], hull[(i + 1) % len(hull)]
                d = vsub(b, a)
                nvec = primitive((-d[1], d[0]))  # inward for ccw order
                facets.append((nvec, vdot(nvec, a)))
            return Polytope(n, 2, hull, tuple(sorted(facets)))
        cand = _prune_candidates_3d(pts)
        facets = _facets_3d(cand)
        normals = [np.array(f[0], dtype=np.int64) for f in facets]
        verts = []
        arr = np.array(cand, dtype=np.int64)
        nmat = np.array([f[0] for f in facets], dtype=np.int64)
        offs = np.array([f[1] for f in facets], dtype=np.int64)
        dots = arr @ nmat.T
        onfac = dots == offs
        for i, p in enumerate(cand):
            inc = [facets[j][0] for j in np.nonzero(onfac[i])[0]]
            if len(inc) >= 3 and int_rank(inc) == 3:
                verts.append(p)
        return Polytope(n, 3, verts, facets)

    # degenerate: map to intrinsic coordinates over the saturated lattice
    basis = saturated_basis(diffs, n)
    inner_pts = []
    proto = Polytope(n, dim, pts, origin=p0, basis=tuple(basis))
    for p in pts:
        inner_pts.append(proto._intrinsic_coords(p))
    inner = convex_hull(inner_pts) if dim >= 2 else _hull_1d(inner_pts)
    verts = [proto._embed(c) for c in inner.vertices]
    return Polytope(n, dim, verts, facets=inner.facets, origin=p0,
                    basis=tuple(basis), inner=inner)


def _hull_1d(points):
    """Hull of 1-dim intrinsic coordinate tuples (length-1 tuples)."""
    vals = sorted(p[0] for p in points)
    lo, hi = vals[0], vals[-1]
    P = Polytope(1, 1 if lo != hi else 0,
                 tuple({(lo,), (hi,)}),
                 facets=(((1,), lo), ((-1,), -hi)))
    P._points = tuple((v,) for v in range(lo, hi + 1))
    return P


# ---------------------------------------------------------------------------
# basic operations

def lattice_points(P):
    return list(P.lattice_points)


def minkowski_sum(P, Q):
    if P.ambient != Q.ambient:
        raise ValueError("dimension mismatch")
    sums = {vadd(p, q) for p in P.vertices for q in Q.vertices}
    return convex_hull(sums)


def _relative_vol2(P):
    """Normalized area (2 * Euclidean area) of a polygon given as a
    ccw-ordered vertex cycle in Z^2."""
    verts = P if isinstance(P, (list, tuple)) else P.vertices
    hull = _hull_2d(verts)
    s = 0
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)]
        s += a[0] * b[1] - a[1] * b[0]
    return abs(s)


def normalized_volume(P):
    """dim!-normalized volume of P measured in the lattice of aff(P)."""
    if P.dim == 0:
        return 0
    if P.dim < P.ambient:
        return normalized_volume(P._inner) if P._inner is not None else 0
    if P.ambient == 1 or P.dim == 1:
        vals = [v[0] for v in P.vertices]
        return max(vals) - min(vals)
    if P.dim == 2:
        return _relative_vol2(P.vertices)
    # dim 3: fan triangulation from the first vertex over the facets
    v0 = P.vertices[0]
    total = 0
    for nvec, off in P.facets:
        if vdot(nvec, v0) == off:
            continue  # facet contains v0, pyramid is flat
        fpts = [p for p in P.vertices if vdot(nvec, p) == off]
        # order the facet polygon in its plane
        basis = saturated_basis([vsub(p, fpts[0]) for p in fpts[1:]], 3)
        proto = Polytope(3, 2, fpts, origin=fpts[0], basis=tuple(basis))
        flat = [proto._intrinsic_coords(p) for p in fpts]
        cyc = _hull_2d(flat)
        back = {c: p for c, p in zip(flat, fpts)}
        cyc3 = [back[c] for c in cyc]
        a = cyc3[0]
        for i in range(1, len(cyc3) - 1):
            M = (vsub(cyc3[i], a), vsub(cyc3[i + 1], a), vsub(v0, a))
            total += abs(mat_det(M))
    return total


def ambient_vol3(P):
    """Normalized 3-volume in Z^3; zero for polytopes of dimension < 3."""
    if P.ambient != 3:
        raise ValueError("ambient dimension must be 3")
    if P.dim < 3:
        return 0
    return normalized_volume(P)


def vol2(P):
    """Normalized area; zero when dim(P) < 2."""
    if P.dim < 2:
        return 0
    if P.dim > 2:
        raise ValueError("vol2 of a 3-dimensional polytope")
    return normalized_volume(P)


def mixed_area(P0, P1):
    """Normalized mixed volume V(P0, P1) of planar polytopes, with the
    convention V(P, P) = Vol2(P).

    Both polytopes must have dim <= 2 and lie in parallel planes (their
    Minkowski sum must be at most 2-dimensional).
    """
    if P0.ambient != P1.ambient:
        raise ValueError("dimension mismatch")
    if P0.dim > 2 or P1.dim > 2:
        raise ValueError("inputs must be at most 2-dimensional")
    S = minkowski_sum(P0, P1)
    if S.dim > 2:
        raise ValueError("polytopes do not lie in parallel planes")
    if P0.ambient == 2:
        v = _relative_vol2(P0.vertices) if P0.dim == 2 else 0
        w = _relative_vol2(P1.vertices) if P1.dim == 2 else 0
        s = _relative_vol2(S.vertices) if S.dim == 2 else 0
        return (s - v - w) // 2
    # ambient 3: measure all three in the plane lattice of the sum
    if S.dim < 2:
        return 0
    basis = S._basis
    origin = S._origin

    def flat_area(P):
        if P.dim < 2:
            return 0
        ref = P.vertices[0]
        proto = Polytope(3, 2, P.vertices, origin=ref, basis=basis)
        return _relative_vol2([proto._intrinsic_coords(p) for p in P.vertices])

    return (flat_area(S) - flat_area(P0) - flat_area(P1)) // 2


# ---------------------------------------------------------------------------
# width

def width_in_direction(P, v):
    if not is_primitive(v):
        raise ValueError("direction must be primitive")
    vals = [vdot(u, v) for u in P.vertices]
    return max(vals) - min(vals)


def lattice_width(P):
    """Lattice width and a witness direction (lex-smallest canonical witness).

    The search region is rigorous: pick affinely independent lattice points
    p_0..p_dim of P; for the optimal primitive v one has
    |<v, p_i - p_0>| <= w_v(P) <= B with B = min_i w_{e_i}(P), so it is
    enough to scan the (bounded) dual box {v : |<v, d_i>| <= B}.
    """
    if P.dim != P.ambient:
        raise ValueError("lattice_width needs a full-dimensional polytope")
    n = P.ambient
    B = min(width_in_direction(P, tuple(1 if i == j else 0 for j in range(n)))
            for i in range(n))
    # affinely independent vertex subset
    p0 = P.vertices[0]
    dirs = []
    for p in P.vertices[1:]:
        d = vsub(p, p0)
        if int_rank(dirs + [d]) > len(dirs):
            dirs.append(d)
        if len(dirs) == n:
            break
    system = RationalHalfSpaceSystem(
        [(d, -B) for d in dirs] + [(vneg(d), -B) for d in dirs])
    best = (B, tuple(1 if i == 0 else 0 for i in range(n)))
    for v in system.integer_points():
        if not any(v) or not is_primitive(v):
            continue
        cv = canonical_sign(v)
        w = width_in_direction(P, cv)
        if w < best[0] or (w == best[0] and cv < best[1]):
            best = (w, cv)
    return best


# ---------------------------------------------------------------------------
# erosion

def erode(points, u):
    """{x in S : x + u in S}; the zonotope-fitting primitive."""
    S = points if isinstance(points, (set, frozenset)) else set(points)
    return {x for x in S if vadd(x, u) in S}


# ---------------------------------------------------------------------------
# rational half-space systems (erosion regions, the good-polytope region)

@dataclass(frozen=True)
class RationalHalfSpaceSystem:
    """Finite system of inequalities <normal, x> >= bound with integer data.

    Only the integer points of the described region are exposed; the region
    itself may have rational vertices.
    """

    inequalities: tuple

    def __init__(self, inequalities):
        object.__setattr__(self, "inequalities",
                           tuple((tuple(n), int(b)) for n, b in inequalities))

    def contains(self, x):
        return all(vdot(n, x) >= b for n, b in self.inequalities)

    def _bounding_box(self):
        """Exact bounding box via rational vertex enumeration.

        Raises if the region is unbounded (no vertex certificate gives a
        finite box and some direction escapes)."""
        ineqs = self.inequalities
        if not ineqs:
            raise ValueError("empty system is unbounded")
        n = len(ineqs[0][0])
        verts = []
        for combo in itertools.combinations(range(len(ineqs)), n):
            M = [list(ineqs[i][0]) for i in combo]
            b = [ineqs[i][1] for i in combo]
            try:
                x = solve_rational(M, b)
            except ValueError:
                continue
            if all(sum(Fraction(c) * xi for c, xi in zip(nv, x)) >= bv
                   for nv, bv in ineqs):
                verts.append(x)
        if not verts:
            return None  # empty region
        los = [min(v[i] for v in verts) for i in range(n)]
        his = [max(v[i] for v in verts) for i in range(n)]
        import math
        return ([math.floor(x) for x in los], [math.ceil(x) for x in his])

    def integer_points(self):
        box = self._bounding_box()
        if box is None:
            return []
        lo, hi = box
        axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
        grids = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        normals = np.array([n for n, _ in self.inequalities], dtype=np.int64)
        offs = np.array([b for _, b in self.inequalities], dtype=np.int64)
        ok = np.all(pts @ normals.T >= offs, axis=1)
        return [tuple(p) for p in pts[ok].tolist()]

    def primitive_points(self):
        return sorted({canonical_sign(p) for p in self.integer_points()
                       if any(p) and is_primitive(p)})


# ---------------------------------------------------------------------------
# AGL(n, Z)-equivalence

def _affinely_independent_tuple(P):
    """First dim+1 affinely independent vertices in canonical order."""
    verts = P.vertices
    chosen = [verts[0]]
    dirs = []
    for p in verts[1:]:
        d = vsub(p, chosen[0])
        if int_rank(dirs + [d]) > len(dirs):
            dirs.append(d)
            chosen.append(p)
        if len(dirs) == P.dim:
            break
    return chosen


def _solve_linear_map(src_dirs, dst_dirs, n):
    """Unimodular integer matrix M with M s_j = d_j, or None.

    src_dirs must span R^n; overdetermined inputs are checked for
    consistency on the first n independent sources and verified after.
    """
    src = list(src_dirs)
    dst = list(dst_dirs)
    base_idx = []
    for i, s in enumerate(src):
        if int_rank([src[j] for j in base_idx] + [s]) > len(base_idx):
            base_idx.append(i)
        if len(base_idx) == n:
            break
    if len(base_idx) < n:
        return None
    A = [list(src[i]) for i in base_idx]  # rows are source vectors
    rows = []
    for i in range(n):
        # row m_i of M satisfies  <m_i, s_j> = d_j[i]  for each source s_j
        rhs = [dst[j][i] for j in base_idx]
        sol = solve_rational(A, rhs)
        if any(s.denominator != 1 for s in sol):
            return None
        rows.append(tuple(int(s) for s in sol))
    M = tuple(rows)
    if mat_det(M) not in (1, -1):
        return None
    if any(mat_vec(M, s) != tuple(d) for s, d in zip(src, dst)):
        return None
    return M


def equivalent(P, Q):
    """Witness affine unimodular map with phi(P) = Q, or None.

    Deterministic: the first witness in the canonical enumeration order
    (sorted vertex tuples) is returned.
    """
    if P.ambient != Q.ambient:
        raise ValueError("dimension mismatch")
    if P.dim != Q.dim or len(P.vertices) != len(Q.vertices):
        return None
    if P.n_points != Q.n_points:
        return None
    n = P.ambient
    if P.dim < P.ambient:
        # reduce to the intrinsic full-dimensional polytopes and lift
        if P.dim == 0:
            return UnimodularMap(mat_identity(n),
                                 vsub(Q.vertices[0], P.vertices[0]))
        innerP, innerQ = P._inner, Q._inner
        if P.dim == 1:
            if normalized_volume(P) != normalized_volume(Q):
                return None
            loP = min(v[0] for v in innerP.vertices)
            loQ = min(v[0] for v in innerQ.vertices)
            inner_map = UnimodularMap(((1,),), (loQ - loP,))
        else:
            inner_map = equivalent(innerP, innerQ)
        if inner_map is None:
            return None
        CP = complete_to_unimodular(list(P._basis), n)  # rows
        CQ = complete_to_unimodular(list(Q._basis), n)
        d = P.dim
        Md = inner_map.matrix
        block = [[Md[i][j] if i < d and j < d else (1 if i == j else 0)
                  for j in range(n)] for i in range(n)]
        # column-convention: x = p0 + B_P^T c  with B rows as basis vectors
        BPt = mat_transpose(CP)  # columns are basis vectors
        BQt = mat_transpose(CQ)
        M = mat_mul(mat_mul(BQt, tuple(tuple(r) for r in block)),
                    mat_inverse_unimodular(BPt))
        if mat_det(M) not in (1, -1):
            return None
        # translation: match one vertex pair through the intrinsic map
        p0 = P.vertices[0]
        cp0 = P._intrinsic_coords(p0)
        cq0 = inner_map(cp0)
        q0 = Q._embed(cq0)
        t = vsub(q0, mat_vec(M, p0))
        phi = UnimodularMap(M, t)
        if tuple(sorted(phi(v) for v in P.vertices)) == Q.vertices:
            return phi
        return None

    src = _affinely_independent_tuple(P)
    src_dirs = [vsub(p, src[0]) for p in src[1:]]
    qverts = Q.vertices
    for tup in itertools.permutations(qverts, n + 1):
        dst_dirs = [vsub(t, tup[0]) for t in tup[1:]]
        M = _solve_linear_map(src_dirs, dst_dirs, n)
        if M is None:
            continue
        t = vsub(tup[0], mat_vec(M, src[0]))
        phi = UnimodularMap(M, t)
        if tuple(sorted(phi(v) for v in P.vertices)) == qverts:
            return phi
    return None


def tuple_equivalent(Ps, Qs):
    """Shared-linear-part equivalence of polytope tuples.

    Returns (phi, translations) with phi(P_i) + v_i = Q_i for all i, where
    phi has translation 0, or None.
    """
    if len(Ps) != len(Qs):
        raise ValueError("tuple length mismatch")
    if not Ps:
        raise ValueError("empty tuples")
    n = Ps[0].ambient
    for P, Q in zip(Ps, Qs):
        if P.ambient != n or Q.ambient != n:
            raise ValueError("dimension mismatch")
        if P.dim != Q.dim or len(P.vertices) != len(Q.vertices):
            return None
        if P.n_points != Q.n_points:
            return None

    # build a frame of n independent directions, drawn greedily from the
    # polytopes in order
    frame = []  # (polytope index, direction)
    for i, P in enumerate(Ps):
        base = P.vertices[0]
        for v in P.vertices[1:]:
            d = vsub(v, base)
            if int_rank([f[1] for f in frame] + [d]) > len(frame):
                frame.append((i, d))
            if len(frame) == n:
                break
        if len(frame) == n:
            break
    if len(frame) < n:
        raise ValueError("degenerate tuple: directions do not span R^n")

    used = sorted({i for i, _ in frame})
    # for each used polytope, enumerate ordered vertex tuples of Q_i as
    # images of (base, base + d...) positions
    per_poly_positions = {}
    for i in used:
        base = Ps[i].vertices[0]
        pos = [base] + [vadd(base, d) for j, d in frame if j == i]
        per_poly_positions[i] = pos

    def candidate_maps():
        choices = []
        for i in used:
            npos = len(per_poly_positions[i])
            choices.append(list(itertools.permutations(Qs[i].vertices, npos)))
        for combo in itertools.product(*choices):
            src_dirs, dst_dirs = [], []
            ok = True
            for i, imgs in zip(used, combo):
                pos = per_poly_positions[i]
                for k in range(1, len(pos)):
                    src_dirs.append(vsub(pos[k], pos[0]))
                    dst_dirs.append(vsub(imgs[k], imgs[0]))
            if not ok:
                continue
            M = _solve_linear_map(src_dirs, dst_dirs, n)
            if M is not None:
                yield M

    for M in candidate_maps():
        phi = UnimodularMap(M, (0,) * n)
        translations = []
        good = True
        for P, Q in zip(Ps, Qs):
            mp = sorted(phi(v) for v in P.vertices)
            qv = list(Q.vertices)
            shift = vsub(qv[0], mp[0])
            if [vadd(v, shift) for v in mp] != qv:
                good = False
                break
            translations.append(shift)
        if good:
            return phi, tuple(translations)
    return None


# ---------------------------------------------------------------------------
# shape predicates

@dataclass(frozen=True)
class ShapeInfo:
    is_empty: bool
    is_clean: bool
    interior_count: int
    boundary_count: int
    facet_count: int


def shape_predicates(P):
    pts = P.lattice_points
    verts = set(P.vertices)
    if P.dim < P.ambient:
        inner = P._inner if P._inner is not None else P
        if P.dim == 0:
            return ShapeInfo(True, True, 0, 1, 0)
        if P.dim == 1:
            bnd = 2
            interior = len(pts) - 2
            return ShapeInfo(len(pts) == 2, len(pts) == 2, interior, bnd,
                             len(inner.facets or ()))
        info = shape_predicates(inner)
        return info
    facets = P.facets
    boundary = 0
    interior = 0
    nonvert_boundary = 0
    for p in pts:
        on = any(vdot(n, p) == b for n, b in facets)
        if on:
            boundary += 1
            if p not in verts:
                nonvert_boundary += 1
        else:
            interior += 1
    return ShapeInfo(is_empty=(len(pts) == len(verts)),
                     is_clean=(nonvert_boundary == 0),
                     interior_count=interior,
                     boundary_count=boundary,
                     facet_count=len(facets))
