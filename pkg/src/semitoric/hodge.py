"""Lattice-point Hodge-number formulas for regular semiample hypersurfaces.

Subdivision counts a_k(gamma), face-level e-numbers, the h^{d-1-p,2} formula,
the reflexive-polytope formula for h^{2,1} of crepant Calabi-Yau threefolds,
and the end-to-end mirror comparison that exhibits the failure of Hodge-number
duality for singular 7-dimensional mirror pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import lattice
from .errors import InconsistencyError, PreconditionError, ValidationError
from .fan import ConeRef, Fan, cone_contains
from .linalg import solve_linear
from .polytope import Face, LatticePolytope


# -- subdivision counts ------------------------------------------------------


@dataclass
class SubdivisionCounts:
    """a_k(gamma) = number of k-cones of the fine fan whose smallest
    containing cone in the coarse fan is gamma, for k = 1, 2."""

    coarse: Fan
    a1: dict
    a2: dict

    def a(self, gamma: ConeRef, k: int) -> int:
        table = {1: self.a1, 2: self.a2}[k]
        return table.get(gamma.ray_indices, 0)


def subdivision_counts(fine: Fan, coarse: Fan) -> SubdivisionCounts:
    if not fine.is_refinement(coarse):
        raise PreconditionError("subdivision counts require a refinement")
    a1, a2 = {}, {}
    for k, table in ((1, a1), (2, a2)):
        for sigma in fine.cones(k):
            gamma = coarse.smallest_containing_cone(sigma)
            table[gamma.ray_indices] = table.get(gamma.ray_indices, 0) + 1
    return SubdivisionCounts(coarse, a1, a2)


# -- face-level e-numbers -------------------------------------------------------


def _as_polytope(face) -> LatticePolytope:
    return face.as_polytope() if isinstance(face, Face) else face


def _l_star(face) -> int:
    return len(_as_polytope(face).relative_interior_points())


def _l(face) -> int:
    return len(_as_polytope(face).lattice_points())


def _facet_interior_sum(poly: LatticePolytope) -> int:
    if poly.dim <= 0:
        return 0
    return sum(_l_star(f) for f in poly.faces(poly.dim - 1))


def _bracket(poly: LatticePolytope, d: int, p: int) -> int:
    """l*(2 Gamma) - (d-p+1) l*(Gamma) - sum of l* over codim-1 faces."""
    return (_l_star(poly.dilate(2)) - (d - p + 1) * _l_star(poly)
            - _facet_interior_sum(poly))


def e_face_values(face, d: int, p: int):
    """The two e-numbers of the open stratum attached to a face of the
    section polytope: (e^{d-2-p,1}, e^{d-3-p,0}).

    Which closed form applies is read off the face dimension: d-p for the
    first entry, d-p-1 or d-p-2 for the second; the entry whose display does
    not apply at this dimension is reported as 0.
    """
    poly = _as_polytope(face)
    k = poly.dim
    if k == d - p:
        return ((-1) ** (d - p - 1) * _bracket(poly, d, p), 0)
    if k == d - p - 1:
        return (0, (-1) ** (d - p - 2) * _facet_interior_sum(poly))
    if k == d - p - 2:
        return (0, (-1) ** (d - p - 3) * _l_star(poly))
    raise PreconditionError(
        f"face of dimension {k} matches no display for d={d}, p={p}")


# -- the h^{d-1-p,2} formula -------------------------------------------------------


def _face_of_cone(delta: LatticePolytope, gamma: ConeRef) -> Face:
    return delta.face_at_direction(gamma.relint_point())


def h_p2(delta: LatticePolytope, fine: Fan, coarse: Fan, p: int) -> int:
    """h^{d-1-p,2} of a regular semiample hypersurface with section polytope
    delta, computed from subdivision counts and face lattice-point counts.

    Valid for 2 < p <= d-2 with p != d-3: beyond d-2 the stratum behind the
    first closed form degenerates to points and the displays no longer apply.
    """
    d = fine.dim
    if not (2 < p <= d - 2 and p != d - 3):
        raise PreconditionError(
            f"the formula applies for 2 < p <= d-2, p != d-3; got p={p}, d={d}")
    if delta.normal_fan() != coarse:
        raise PreconditionError("the coarse fan must be the normal fan of delta")
    counts = subdivision_counts(fine, coarse)
    total = 0
    for gamma in coarse.cones(p):
        a1 = counts.a(gamma, 1)
        if a1 == 0:
            continue
        total += a1 * _bracket(_face_of_cone(delta, gamma).as_polytope(), d, p)
    for gamma in coarse.cones(p + 2):
        lstar = _l_star(_face_of_cone(delta, gamma))
        if lstar == 0:
            continue
        coeff = counts.a(gamma, 2) - (p + 1) * counts.a(gamma, 1)
        for tau in coarse.cones(p + 1):
            if tau.ray_indices <= gamma.ray_indices:
                coeff -= counts.a(tau, 1)
        total += lstar * coeff
    return total


# -- the reflexive h^{2,1} formula ---------------------------------------------------


def h21_batyrev(delta: LatticePolytope) -> int:
    """l(Delta) - 5 - sum over facets of l* + sum over codim-2 faces of
    l*(face) l*(dual face), for a 4-dimensional reflexive polytope."""
    if delta.ambient_dim != 4 or not delta.is_reflexive():
        raise PreconditionError("the formula is for 4-dimensional reflexive polytopes")
    total = _l(delta) - 5
    for theta in delta.faces(3):
        total -= _l_star(theta)
    for theta in delta.faces(2):
        total += _l_star(theta) * _l_star(delta.dual_face(theta))
    return total


# -- triangulations with all boundary points as rays -----------------------------------


def triangulation_helper(q: LatticePolytope, reverse: bool = False) -> Fan:
    """A simplicial refinement of the fan over the faces of a reflexive
    polytope using every nonzero lattice point as a ray.

    Facets are triangulated by pulling at lexicographically least vertices;
    the remaining boundary points are added by stellar subdivision in
    lexicographic order (reverse=True flips both orders, giving a second,
    generally different, triangulation with the same rays).  Projectivity of
    the result is not checked.
    """
    if not q.is_reflexive():
        raise PreconditionError("the triangulation helper expects a reflexive polytope")
    d = q.ambient_dim
    all_faces = q.all_faces()
    children = {}
    for f in all_faces:
        children[f.vertex_indices] = [
            g for g in all_faces
            if g.dim == f.dim - 1 and g.vertex_indices < f.vertex_indices]
    dim_of = {f.vertex_indices: f.dim for f in all_faces}
    memo = {}

    def pull(fset):
        if fset in memo:
            return memo[fset]
        dim = dim_of[fset]
        if len(fset) == dim + 1:
            memo[fset] = [fset]
            return memo[fset]
        v = (max if reverse else min)(fset, key=lambda i: q.vertices[i])
        out = []
        for g in children[fset]:
            if v in g.vertex_indices:
                continue
            for s in pull(g.vertex_indices):
                out.append(s | {v})
        memo[fset] = out
        return out

    rays = [tuple(int(x) for x in v) for v in q.vertices]
    ray_index = {r: i for i, r in enumerate(rays)}
    cones = []
    for f in all_faces:
        if f.dim != d - 1:
            continue
        for s in pull(f.vertex_indices):
            cones.append(frozenset(ray_index[tuple(int(x) for x in q.vertices[i])]
                                   for i in s))
    extra = [p for p in q.lattice_points()
             if any(p) and p not in ray_index]
    for point in sorted(extra, reverse=reverse):
        ray_index[point] = len(rays)
        rays.append(point)
        qi = ray_index[point]
        new_cones = []
        for c in cones:
            gens = [rays[i] for i in sorted(c)]
            cols = [[g[k] for g in gens] for k in range(d)]
            sol = solve_linear(cols, list(point))
            coeffs = None
            if sol is not None and not sol[1]:
                coeffs = sol[0]
            if coeffs is None or any(x < 0 for x in coeffs):
                new_cones.append(c)
                continue
            idx = sorted(c)
            for g_pos, lam in enumerate(coeffs):
                if lam > 0:
                    new_cones.append(frozenset(
                        [i for ii, i in enumerate(idx) if ii != g_pos] + [qi]))
        cones = new_cones
    fan = Fan(rays, cones, dim=d)
    boundary = {p for p in q.lattice_points() if any(p)}
    if set(fan.rays) != boundary:
        raise InconsistencyError("triangulation rays differ from the boundary points")
    if not fan.is_simplicial:
        raise InconsistencyError("triangulation produced a non-simplicial fan")
    return fan


# -- the mirror comparison -------------------------------------------------------------


@dataclass
class HodgeValue:
    p: int
    q: int
    value: int
    formula: str
    witnesses: list = field(default_factory=list)


@dataclass
class HodgeReport:
    """Named Hodge numbers of one side of a mirror pair, with witnesses."""

    label: str
    values: list

    def value(self, p: int, q: int) -> int:
        for v in self.values:
            if (v.p, v.q) == (p, q):
                return v.value
        raise ValidationError(f"no recorded value h^{p},{q}")


def _carrier_face_counts(dual: LatticePolytope):
    """Classify the nonzero lattice points of a reflexive polytope by their
    carrier face; returns {face vertex set: [points]}."""
    facets = dual.facets()
    by_face = {}
    for pt in dual.lattice_points():
        if not any(pt):
            continue
        tight = [t for n, r, t in facets if lattice.pairing(pt, n) == r]
        if not tight:
            raise InconsistencyError("nonzero interior point in a reflexive polytope")
        carrier = frozenset.intersection(*tight)
        by_face.setdefault(carrier, []).append(pt)
    return by_face


def _h32_of_side(section: LatticePolytope, label: str) -> HodgeValue:
    """h^{3,2} of the MPCP hypersurface with the given section polytope.

    When every nonzero lattice point of the dual is a vertex the refinement
    is trivial and the full formula runs on the honest fan.  Otherwise the
    first sum is evaluated by classifying the subdividing rays by carrier
    face; the second sum needs the actual triangulation only when some dual
    2-face weight l* is nonzero, in which case the full fan is built.
    """
    d = section.ambient_dim
    p = d - 4  # h^{d-1-p,2} = h^{3,2}
    dual = section.dual_polytope()
    boundary = {pt for pt in dual.lattice_points() if any(pt)}
    vertex_pts = {tuple(int(x) for x in v) for v in dual.vertices}
    second_sum_weights = [
        _l_star(dual.dual_face(f)) for f in dual.faces(p + 1)]
    if boundary == vertex_pts or any(second_sum_weights):
        fine = triangulation_helper(dual)
        coarse = section.normal_fan()
        value = h_p2(section, fine, coarse, p)
        return HodgeValue(3, 2, value, "subdivision-count formula", [])

    by_face = _carrier_face_counts(dual)
    total = 0
    witnesses = []
    for f in dual.faces(2):
        pts = by_face.get(f.vertex_indices, [])
        a1 = len(pts)
        if a1 == 0:
            continue
        gamma_face = dual.dual_face(f)
        bracket = _bracket(gamma_face.as_polytope(), d, p)
        if bracket == 0:
            continue
        total += a1 * bracket
        doubled = gamma_face.as_polytope().dilate(2)
        witnesses.append({
            "face": [list(map(int, v)) for v in gamma_face.vertices()],
            "double_face_interior_points": [list(pt) for pt in
                                            doubled.relative_interior_points()],
            "dual_face": [list(map(int, v)) for v in f.vertices()],
            "subdividing_points": [list(pt) for pt in pts],
        })
    return HodgeValue(3, 2, total, "carrier-face classification", witnesses)


@dataclass
class MirrorReport:
    side: HodgeReport
    mirror_side: HodgeReport

    @property
    def symmetric(self) -> bool:
        return self.side.value(3, 2) == self.mirror_side.value(3, 2)


def mirror_check(delta: LatticePolytope) -> MirrorReport:
    """Compare h^{3,2} of the two MPCP hypersurfaces attached to a
    7-dimensional reflexive polytope and its dual."""
    if delta.ambient_dim != 7:
        raise PreconditionError("the mirror comparison is run in dimension 7")
    if not delta.is_reflexive():
        raise PreconditionError("mirror comparison requires a reflexive polytope")
    dual = delta.dual_polytope()
    side = HodgeReport("section polytope", [_h32_of_side(delta, "delta")])
    mirror_side = HodgeReport("dual section polytope", [_h32_of_side(dual, "dual")])
    for report in (side, mirror_side):
        for v in report.values:
            if v.value < 0:
                raise InconsistencyError("negative Hodge number computed")
    return MirrorReport(side, mirror_side)
