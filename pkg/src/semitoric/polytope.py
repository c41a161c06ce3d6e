"""Lattice polytopes with exact rational vertices.

Conversions between half-space and vertex descriptions, face lattices,
lattice-point and relative-interior-point enumeration, normalized volumes,
dilation, reflexive duality and normal fans.  Inequalities are always read
as <m, normal> >= rhs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import lattice
from .errors import PreconditionError, RationalVertexError, ValidationError
from .linalg import lp_feasible, solve_linear, solve_unique


@dataclass(frozen=True)
class HPolytope:
    """Finite intersection of half-spaces {m : <m, normal> >= rhs}."""

    inequalities: tuple

    def __post_init__(self):
        ineqs = tuple((tuple(int(x) for x in n), int(r)) for n, r in self.inequalities)
        for n, _ in ineqs:
            if not any(n):
                raise ValidationError("zero normal in inequality system")
        object.__setattr__(self, "inequalities", ineqs)

    @property
    def dim(self) -> int:
        return len(self.inequalities[0][0]) if self.inequalities else 0


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _clear_denominators(vec):
    from math import lcm

    den = lcm(*[Fraction(x).denominator for x in vec]) if vec else 1
    return tuple(int(Fraction(x) * den) for x in vec), den


def _enumerate_integer_points(ineqs, lo, hi):
    """All integer points of a box satisfying a·t >= c for each (a, c).

    Depth-first scan with per-level interval tightening; suitable for the
    simplex-like regions that arise here.
    """
    k = len(lo)
    if any(l > h for l, h in zip(lo, hi)):
        return []
    if k == 0:
        return [()] if all(c <= 0 for _, c in ineqs) else []
    # suffix_max[i][j]: largest possible contribution of coordinates >= j
    suffix_max = []
    for a, _ in ineqs:
        sm = [0] * (k + 1)
        for j in range(k - 1, -1, -1):
            sm[j] = sm[j + 1] + max(a[j] * lo[j], a[j] * hi[j])
        suffix_max.append(sm)
    out = []
    point = [0] * k

    def descend(j, partials):
        if j == k:
            out.append(tuple(point))
            return
        lo_j, hi_j = lo[j], hi[j]
        for idx, (a, c) in enumerate(ineqs):
            rest = suffix_max[idx][j + 1]
            aj = a[j]
            need = c - partials[idx] - rest
            if aj == 0:
                if need > 0:
                    return
            elif aj > 0:
                lo_j = max(lo_j, -((-need) // aj))
            else:
                hi_j = min(hi_j, need // aj)
        for t in range(lo_j, hi_j + 1):
            point[j] = t
            descend(j + 1, [p + a[j] * t for p, (a, _) in zip(partials, ineqs)])

    descend(0, [0] * len(ineqs))
    return out


class LatticePolytope:
    """Convex polytope given by its exact (possibly rational) vertices.

    The affine-span lattice is tracked so that relative volumes and
    relative-interior points of lower-dimensional faces come out right.
    """

    def __init__(self, vertices, hrep=None, _trusted=False):
        pts = [tuple(Fraction(x) for x in v) for v in vertices]
        if pts and len({len(p) for p in pts}) != 1:
            raise ValidationError("vertices of mixed dimensions")
        if not _trusted:
            pts = _extreme_points(pts)
        self.vertices = tuple(sorted(set(pts)))
        self.ambient_dim = len(self.vertices[0]) if self.vertices else (
            hrep.dim if isinstance(hrep, HPolytope) else 0)
        self._hrep = hrep
        self._span = None
        self._facets = None
        self._faces = None
        self._polar = None

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={len(self.vertices)})"

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def require_lattice(self):
        if not self.is_lattice:
            raise RationalVertexError(
                "operation requires a lattice polytope but vertices are rational")

    @property
    def dim(self) -> int:
        if self.is_empty:
            return -1
        return len(self._span_data()[1])

    def _span_data(self):
        """(base point, direction-lattice basis rows, integer anchor or None)."""
        if self._span is None:
            base = self.vertices[0]
            dirs = []
            for v in self.vertices[1:]:
                d, _ = _clear_denominators([x - y for x, y in zip(v, base)])
                if any(d):
                    dirs.append(d)
            basis = lattice.saturation_basis(dirs, self.ambient_dim)
            anchor = self._integer_anchor(base, basis)
            self._span = (base, basis, anchor)
        return self._span

    def _integer_anchor(self, base, basis):
        """Some lattice point of the affine span, or None."""
        if all(x.denominator == 1 for x in base):
            return tuple(int(x) for x in base)
        constraints = lattice.integer_kernel([list(b) for b in basis],
                                             ncols=self.ambient_dim)
        if not constraints:
            return None  # full-dimensional span always has lattice points
        rhs = [sum(Fraction(c) * b for c, b in zip(row, base)) for row in constraints]
        if any(q.denominator != 1 for q in rhs):
            return None
        return lattice.solve_integer([list(r) for r in constraints],
                                     [int(q) for q in rhs])

    def _to_span_coords(self, x):
        """Coordinates of ambient point x in the affine-span basis."""
        base, basis, _ = self._span_data()
        rel = [Fraction(a) - b for a, b in zip(x, base)]
        cols = [[basis[j][i] for j in range(len(basis))] for i in range(self.ambient_dim)]
        return solve_unique(cols, rel)

    def _vertex_span_coords(self):
        return [self._to_span_coords(v) for v in self.vertices]

    # -- facets and faces --------------------------------------------------

    def facets(self):
        """Irredundant facet list [(normal, rhs, tight vertex index set)].

        Normals are primitive integer vectors in ambient coordinates; the
        facet inequality is <x, normal> >= rhs (rhs rational in general).
        For polytopes of positive dimension only.
        """
        if self._facets is not None:
            return self._facets
        k = self.dim
        if k <= 0:
            raise PreconditionError("facets of an empty or 0-dimensional polytope")
        if self._hrep is not None:
            cands = [(tuple(n), Fraction(r)) for n, r in self._hrep.inequalities]
        else:
            cands = self._facet_candidates_from_vertices()
        facets = []
        seen = set()
        for n, r in cands:
            tight = frozenset(i for i, v in enumerate(self.vertices)
                              if lattice.pairing_q(v, n) == r)
            if not tight or tight in seen:
                continue
            pts = [self.vertices[i] for i in tight]
            if _affine_dim(pts) == k - 1:
                seen.add(tight)
                facets.append((n, r, tight))
        self._facets = facets
        return facets

    def _facet_candidates_from_vertices(self):
        k = self.dim
        base, basis, _ = self._span_data()
        vs = self.vertices
        cands = []
        for idx in combinations(range(len(vs)), k):
            pts = [vs[i] for i in idx]
            dirs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
            # normal inside the span: orthogonal to dirs and to nothing else
            rows = dirs + [list(c) for c in lattice.integer_kernel(
                [list(b) for b in basis], ncols=self.ambient_dim)]
            kern = lattice.integer_kernel([r for r in rows if any(r)],
                                          ncols=self.ambient_dim)
            if len(kern) != 1:
                continue
            n = kern[0]
            c = lattice.pairing_q(pts[0], n)
            vals = [lattice.pairing_q(v, n) for v in vs]
            if all(v >= c for v in vals) and any(v > c for v in vals):
                cands.append((n, c))
            elif all(v <= c for v in vals) and any(v < c for v in vals):
                cands.append((tuple(-x for x in n), -c))
        return cands

    def faces(self, k: int):
        """All k-dimensional faces, each exactly once."""
        if self.is_empty:
            raise PreconditionError("faces of the empty polytope")
        if not 0 <= k <= self.dim:
            raise ValidationError(f"face dimension {k} out of range 0..{self.dim}")
        return [f for f in self.all_faces() if f.dim == k]

    def all_faces(self):
        """Every nonempty face (the polytope itself included)."""
        if self._faces is not None:
            return self._faces
        everything = frozenset(range(len(self.vertices)))
        if self.dim <= 0:
            faces = {everything: Face(self, everything, max(self.dim, 0))}
            self._faces = list(faces.values())
            return self._faces
        facet_sets = [t for _, _, t in self.facets()]
        seen = {everything}
        queue = [everything]
        while queue:
            cur = queue.pop()
            for fs in facet_sets:
                nxt = cur & fs
                if nxt and nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        faces = []
        for s in seen:
            pts = [self.vertices[i] for i in s]
            faces.append(Face(self, s, _affine_dim(pts)))
        faces.sort(key=lambda f: (f.dim, sorted(f.vertex_indices)))
        self._faces = faces
        return faces

    # -- point enumeration -------------------------------------------------

    def _span_inequalities(self):
        """Facet inequalities transported to span coordinates: a·t >= c (rational)."""
        k = self.dim
        _, basis, anchor = self._span_data()
        out = []
        if k == 0:
            return out
        for n, r, _ in self.facets():
            a = tuple(lattice.pairing(b, n) for b in basis)
            c = Fraction(r) - lattice.pairing_q(anchor, n)
            out.append((a, c))
        return out

    def _points(self, strict: bool):
        if self.is_empty:
            return []
        _, basis, anchor = self._span_data()
        if anchor is None:
            return []
        k = len(basis)
        if k == 0:
            x = tuple(int(v) for v in self.vertices[0]) if self.is_lattice else None
            return [x] if x is not None else []
        tcoords = [self._to_span_coords(v) for v in self.vertices]
        lo = [_ceil(min(t[j] for t in tcoords)) for j in range(k)]
        hi = [_floor(max(t[j] for t in tcoords)) for j in range(k)]
        ineqs = []
        for a, c in self._span_inequalities():
            if strict:
                ineqs.append((a, _floor(c) + 1))
            else:
                ineqs.append((a, _ceil(c)))
        pts = _enumerate_integer_points(ineqs, lo, hi)
        out = []
        for t in pts:
            x = tuple(anchor[i] + sum(t[j] * basis[j][i] for j in range(k))
                      for i in range(self.ambient_dim))
            out.append(x)
        out.sort()
        return out

    def lattice_points(self):
        """All integer points, in lexicographic order."""
        return self._points(strict=False)

    def relative_interior_points(self):
        """Integer points strictly inside every facet of the affine span."""
        return self._points(strict=True)

    def n_lattice_points(self) -> int:
        return len(self.lattice_points())

    def n_interior_points(self) -> int:
        return len(self.relative_interior_points())

    def contains(self, x) -> bool:
        if self.is_empty:
            return False
        t = self._to_span_coords(x)
        if t is None:
            return False
        if self.dim == 0:
            return tuple(Fraction(a) for a in x) == self.vertices[0]
        return all(lattice.pairing_q(x, n) >= r for n, r, _ in self.facets())

    # -- metric and algebraic operations ------------------------------------

    def normalized_volume(self) -> Fraction:
        """k! times the k-dimensional volume, measured in the affine-span lattice."""
        if self.is_empty:
            return Fraction(0)
        k = self.dim
        if k == 0:
            return Fraction(1)
        total = Fraction(0)
        for simplex in self._triangulate():
            t0 = self._to_span_coords(simplex[0])
            rows = []
            for v in simplex[1:]:
                tv = self._to_span_coords(v)
                rows.append([a - b for a, b in zip(tv, t0)])
            total += abs(_rational_det(rows))
        return total

    def _triangulate(self):
        """Simplices (tuples of vertex coordinate tuples) covering the polytope."""
        k = self.dim
        vs = self.vertices
        if len(vs) == k + 1:
            return [tuple(vs)]
        v0 = vs[0]
        out = []
        for _, _, tight in self.facets():
            if 0 in tight:
                continue
            face = Face(self, tight, k - 1).as_polytope()
            for s in face._triangulate():
                out.append((v0,) + s)
        return out

    def dilate(self, factor: int) -> "LatticePolytope":
        if factor < 1:
            raise ValidationError("dilation factor must be a positive integer")
        return LatticePolytope([tuple(x * factor for x in v) for v in self.vertices],
                               _trusted=True)

    def translate(self, vec) -> "LatticePolytope":
        return LatticePolytope([tuple(x + Fraction(y) for x, y in zip(v, vec))
                                for v in self.vertices], _trusted=True)

    # -- reflexive duality ---------------------------------------------------

    def _check_dualizable(self):
        if self.is_empty or self.dim != self.ambient_dim:
            raise PreconditionError("polar dual requires a full-dimensional polytope")
        for _, r, _ in self.facets():
            if r >= 0:
                raise PreconditionError("polar dual requires 0 in the interior")

    def dual_polytope(self) -> "LatticePolytope":
        """Polar dual {y : <x, y> >= -1 for all x}; 0 must be interior.

        The partner is cached both ways: polarity is involutive, and the
        cache keeps duals of polytopes with many facets affordable.
        """
        if self._polar is not None:
            return self._polar
        self._check_dualizable()
        h = HPolytope([(v_int, -1) for v_int in self._integral_vertex_rows()])
        dual = vertices_from_inequalities(h)
        self._polar = dual
        dual._polar = self
        return dual

    def _integral_vertex_rows(self):
        rows = []
        for v in self.vertices:
            r, den = _clear_denominators(v)
            rows.append(r if den == 1 else None)
        if any(r is None for r in rows):
            raise RationalVertexError("polar dual of a rational-vertex polytope")
        return rows

    def is_reflexive(self) -> bool:
        if self.is_empty or self.dim != self.ambient_dim or not self.is_lattice:
            return False
        try:
            self._check_dualizable()
        except PreconditionError:
            return False
        return self.dual_polytope().is_lattice

    def dual_face(self, face: "Face") -> "Face":
        """The face {y in dual : <x, y> = -1 for x in face} of the dual polytope."""
        if face.polytope is not self and face.polytope != self:
            raise ValidationError("face does not belong to this polytope")
        if not self.is_reflexive():
            raise PreconditionError("dual faces are defined for reflexive polytopes")
        dual = self.dual_polytope()
        fverts = [face.polytope.vertices[i] for i in face.vertex_indices]
        idx = frozenset(i for i, w in enumerate(dual.vertices)
                        if all(lattice.pairing_q(v, [int(x) for x in w]) == -1
                               for v in fverts))
        pts = [dual.vertices[i] for i in idx]
        return Face(dual, idx, _affine_dim(pts))

    # -- normal fan ----------------------------------------------------------

    def normal_fan(self):
        """Complete fan whose maximal cones are the vertex normal cones."""
        from .fan import Fan

        if self.is_empty or self.dim != self.ambient_dim:
            raise PreconditionError("normal fan requires a full-dimensional polytope")
        rays = [lattice.primitivize(n) for n, _, _ in self.facets()]
        tights = [t for _, _, t in self.facets()]
        cones = []
        for i, _ in enumerate(self.vertices):
            cones.append(frozenset(j for j, t in enumerate(tights) if i in t))
        return Fan(rays, cones)

    def face_at_direction(self, n) -> "Face":
        """The face on which <., n> attains its minimum."""
        if self.is_empty:
            raise PreconditionError("face of the empty polytope")
        vals = [lattice.pairing_q(v, n) for v in self.vertices]
        m = min(vals)
        idx = frozenset(i for i, v in enumerate(vals) if v == m)
        return Face(self, idx, _affine_dim([self.vertices[i] for i in idx]))


@dataclass(frozen=True)
class Face:
    """A face of a polytope, recorded by its vertex subset."""

    polytope: LatticePolytope
    vertex_indices: frozenset
    dim: int

    def vertices(self):
        return tuple(self.polytope.vertices[i] for i in sorted(self.vertex_indices))

    def as_polytope(self) -> LatticePolytope:
        return LatticePolytope(self.vertices(), _trusted=True)

    def __repr__(self):
        return f"Face(dim={self.dim}, vertices={sorted(self.vertex_indices)})"


def _affine_dim(points) -> int:
    if not points:
        return -1
    base = points[0]
    dirs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    dirs = [d for d in dirs if any(d)]
    if not dirs:
        return 0
    return lattice.matrix_rank(dirs)


def _rational_det(rows) -> Fraction:
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def _extreme_points(points):
    pts = sorted(set(points))
    if len(pts) <= 1:
        return pts
    out = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        n = len(others)
        eqs = []
        for c in range(len(p)):
            eqs.append(([Fraction(q[c]) for q in others], Fraction(p[c])))
        eqs.append(([Fraction(1)] * n, Fraction(1)))
        if lp_feasible(n, eqs=eqs, nonneg=True) is None:
            out.append(p)
    return out


def vertices_from_inequalities(h: HPolytope) -> LatticePolytope:
    """Exact vertex enumeration of a bounded H-polytope.

    Every d-subset of inequalities with an invertible normal matrix yields a
    candidate basic point; the feasible ones are exactly the vertices.
    Infeasible systems give the empty polytope; unbounded ones are rejected.
    """
    ineqs = h.inequalities
    d = h.dim
    normals = [list(n) for n, _ in ineqs]
    verts = set()
    for idx in combinations(range(len(ineqs)), d):
        rows = [normals[i] for i in idx]
        rhs = [ineqs[i][1] for i in idx]
        x = solve_unique(rows, rhs)
        if x is None:
            continue
        if all(lattice.pairing_q(x, n) >= r for n, r in ineqs):
            verts.add(tuple(x))
    if not verts:
        if lattice.matrix_rank(normals) < d and lp_feasible(
                d, ineqs=[(n, r) for n, r in ineqs]) is not None:
            raise PreconditionError("inequality system is feasible but unbounded")
        return LatticePolytope([], hrep=h, _trusted=True)
    # boundedness: the recession cone {y : <y, n> >= 0} must be trivial
    if _recession_ray_exists(normals, d):
        raise PreconditionError("inequality system is unbounded, not a polytope")
    return LatticePolytope(sorted(verts), hrep=h, _trusted=True)


def _recession_ray_exists(normals, d) -> bool:
    if lattice.matrix_rank(normals) < d:
        return True
    for idx in combinations(range(len(normals)), d - 1):
        rows = [normals[i] for i in idx]
        kern = lattice.integer_kernel([r for r in rows if any(r)] or [[0] * d], ncols=d)
        for y in kern:
            for cand in (y, tuple(-a for a in y)):
                if any(cand) and all(lattice.pairing(cand, n) >= 0 for n in normals):
                    return True
    return False
