"""Torus-invariant divisors on complete toric varieties.

Support functions, convexity tests, section polytopes, intersection numbers
against orbit closures, the coarsened fan of a semiample divisor (computed by
three independent algorithms that must agree), push-forward/pull-back along
the associated birational morphism, intersection-number criteria for global
generation and ampleness, and the orbit stratification of a regular
semiample hypersurface.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import lattice
from .errors import InconsistencyError, NotCartierError, PreconditionError, ValidationError
from .fan import ConeRef, Fan, cone_contains, extreme_rays_of_dual
from .linalg import lp_feasible, solve_unique
from .polytope import HPolytope, LatticePolytope, vertices_from_inequalities


@dataclass(frozen=True)
class SupportFunction:
    """The piecewise-linear function of a Cartier divisor: one linear
    functional m_sigma per maximal cone, with <m_sigma, e_i> = -a_i on rays."""

    fan: Fan
    per_max_cone: tuple

    def m_of_max_cone(self, ci: int):
        return self.per_max_cone[ci]

    def m_of_cone(self, cone: ConeRef):
        for ci, c in enumerate(self.fan.max_cones):
            if cone.ray_indices <= c:
                return self.per_max_cone[ci]
        for ci, c in enumerate(self.fan.max_cones):
            gens = [self.fan.rays[i] for i in c]
            if all(cone_contains(gens, g) for g in cone.generators()):
                return self.per_max_cone[ci]
        raise ValidationError("cone does not belong to the fan of this divisor")

    def value(self, n):
        """psi_D(n), exact."""
        for ci, c in enumerate(self.fan.max_cones):
            if cone_contains([self.fan.rays[i] for i in c], n):
                return lattice.pairing_q(n, self.per_max_cone[ci])
        raise PreconditionError("support function evaluated outside a complete fan")


@dataclass(frozen=True)
class StratumRecord:
    """One stratum of a regular semiample hypersurface: a cone of the fine
    fan, its smallest container in the coarse fan, and the rank of the torus
    factor (C*)^k of the stratum."""

    cone: ConeRef
    container: ConeRef
    torus_factor_dim: int


class TorusInvariantDivisor:
    """D = sum a_i D_i on a complete fan, with one integer coefficient per ray."""

    def __init__(self, fan: Fan, coeffs):
        coeffs = tuple(int(a) for a in coeffs)
        if len(coeffs) != len(fan.rays):
            raise ValidationError(
                f"{len(coeffs)} coefficients for {len(fan.rays)} rays")
        self.fan = fan
        self.coeffs = coeffs
        self._support = None
        self._polytope = None

    def __repr__(self):
        return f"TorusInvariantDivisor({self.coeffs})"

    def __eq__(self, other):
        return (isinstance(other, TorusInvariantDivisor)
                and self.fan == other.fan and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.fan, self.coeffs))

    def __add__(self, other):
        if other.fan is not self.fan and other.fan != self.fan:
            raise ValidationError("divisors on different fans")
        return TorusInvariantDivisor(self.fan,
                                     [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, k: int):
        return TorusInvariantDivisor(self.fan, [int(k) * a for a in self.coeffs])

    # -- support function and convexity --------------------------------------

    def support_function(self) -> SupportFunction:
        """Solve <m_sigma, e_i> = -a_i on every maximal cone; Cartier test."""
        if self._support is not None:
            return self._support
        if not self.fan.is_complete:
            raise PreconditionError("support functions require a complete fan")
        per_cone = []
        for c in self.fan.max_cones:
            rows = [list(self.fan.rays[i]) for i in sorted(c)]
            rhs = [-self.coeffs[i] for i in sorted(c)]
            m = solve_unique(rows, rhs)
            if m is None:
                raise NotCartierError(
                    f"no linear function matches the coefficients on cone "
                    f"{sorted(c)}")
            if any(x.denominator != 1 for x in m):
                raise NotCartierError(
                    f"support function on cone {sorted(c)} is not integral: {m}")
            per_cone.append(tuple(int(x) for x in m))
        self._support = SupportFunction(self.fan, tuple(per_cone))
        return self._support

    def is_cartier(self) -> bool:
        try:
            self.support_function()
            return True
        except NotCartierError:
            return False

    def is_globally_generated(self) -> bool:
        """Convexity of the support function."""
        sf = self.support_function()
        for ci in range(len(self.fan.max_cones)):
            m = sf.per_max_cone[ci]
            for j, e in enumerate(self.fan.rays):
                if lattice.pairing(m, e) < -self.coeffs[j]:
                    return False
        return True

    def is_strictly_convex(self) -> bool:
        """Strict convexity: equality on a maximal cone only for its own rays."""
        sf = self.support_function()
        for ci, c in enumerate(self.fan.max_cones):
            m = sf.per_max_cone[ci]
            for j, e in enumerate(self.fan.rays):
                val = lattice.pairing(m, e)
                if val < -self.coeffs[j]:
                    return False
                if val == -self.coeffs[j] and j not in c:
                    return False
        return True

    # -- section polytope ------------------------------------------------------

    def polytope_of_divisor(self) -> HPolytope:
        """The half-space system {m : <m, e_i> >= -a_i}, one row per ray."""
        return HPolytope([(e, -a) for e, a in zip(self.fan.rays, self.coeffs)])

    def section_polytope(self) -> LatticePolytope:
        if self._polytope is None:
            self._polytope = vertices_from_inequalities(self.polytope_of_divisor())
        return self._polytope

    def is_semiample(self) -> bool:
        """Globally generated with full-dimensional section polytope."""
        return self.is_globally_generated() and \
            self.section_polytope().dim == self.fan.dim

    # -- intersection numbers ---------------------------------------------------

    def intersection_number(self, k: int, sigma: ConeRef) -> Fraction:
        """(D^k · V(sigma)) = k! vol_k(Delta_D ∩ (sigma-perp + m_sigma)).

        Defined here for globally generated D; sigma must have dimension
        d - k.  The volume is measured in the lattice induced on the slice.
        """
        if not self.is_globally_generated():
            raise PreconditionError(
                "intersection numbers via volumes require a globally generated "
                "divisor; use the curve-intersection helpers for general ones")
        d = self.fan.dim
        if sigma.dim != d - k:
            raise ValidationError(
                f"cone of dimension {sigma.dim} paired with D^{k} in rank {d}")
        m_sigma = self.support_function().m_of_cone(sigma)
        ineqs = list(self.polytope_of_divisor().inequalities)
        for g in sigma.generators():
            c = lattice.pairing(m_sigma, g)
            ineqs.append((g, c))
            ineqs.append((tuple(-x for x in g), -c))
        face = vertices_from_inequalities(HPolytope(ineqs))
        if face.is_empty or face.dim < k:
            return Fraction(0)
        return face.normalized_volume()

    def degree(self) -> Fraction:
        """(D^d) = d! vol(Delta_D)."""
        return self.intersection_number(self.fan.dim,
                                        ConeRef(self.fan, frozenset(), 0))

    # -- the coarsened fan -------------------------------------------------------

    def sigma_d(self) -> Fan:
        """The complete fan on which D becomes ample.

        Three mutually verifying constructions: (a) glue maximal cones that
        share the same linear function m_sigma, (b) glue across facets with
        (D·V(tau)) = 0, (c) the normal fan of the section polytope.  All
        three must agree exactly.
        """
        if not self.is_semiample():
            raise PreconditionError("the coarsened fan is defined for semiample divisors")
        fan_a = self._sigma_d_by_gluing()
        fan_b = self._sigma_d_by_zero_facets()
        fan_c = self.section_polytope().normal_fan()
        if not (fan_a == fan_b == fan_c):
            raise InconsistencyError(
                "the three constructions of the coarsened fan disagree")
        result = Fan([tuple(r) for r in fan_a.rays],
                     fan_a.max_cones,
                     dim=self.fan.dim,
                     ample_hint=self.pushforward(fan_a).coeffs)
        return result

    def _sigma_d_by_gluing(self):
        sf = self.support_function()
        groups = {}
        for ci in range(len(self.fan.max_cones)):
            groups.setdefault(sf.per_max_cone[ci], []).append(ci)
        return self._assemble_glued_fan(groups, method="dual")

    def _sigma_d_by_zero_facets(self):
        sf = self.support_function()
        parent = list(range(len(self.fan.max_cones)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        inc = self.fan._facet_incidence()
        for tau, (a, b) in ((t, cis) for t, cis in inc.items() if len(cis) == 2):
            tau_ref = ConeRef(self.fan, tau, self.fan.dim - 1)
            if self.intersection_number(1, tau_ref) == 0:
                parent[find(a)] = find(b)
        groups = {}
        for ci in range(len(self.fan.max_cones)):
            groups.setdefault(find(ci), []).append(ci)
        # keyed by representative support value for assembly symmetry
        sfgroups = {}
        for cis in groups.values():
            keys = {sf.per_max_cone[ci] for ci in cis}
            if len(keys) != 1:
                raise InconsistencyError(
                    "zero-facet gluing merged cones with different linear parts")
            sfgroups[keys.pop()] = cis
        return self._assemble_glued_fan(sfgroups, method="extreme-test")

    def _assemble_glued_fan(self, groups, method: str):
        sf = self.support_function()
        d = self.fan.dim
        all_rays = []
        cones = []
        for m, cis in sorted(groups.items()):
            member_rays = sorted({i for ci in cis for i in self.fan.max_cones[ci]})
            gens = [self.fan.rays[i] for i in member_rays]
            if method == "dual":
                normals = sorted({
                    lattice.primitivize(tuple(a - b for a, b in zip(m2, m)))
                    for m2 in sf.per_max_cone if m2 != m})
                if not normals:
                    extremes = [tuple(r) for r in gens]
                else:
                    extremes = extreme_rays_of_dual(normals, d)
            else:
                extremes = []
                for i in member_rays:
                    others = [self.fan.rays[j] for j in member_rays if j != i]
                    if not cone_contains(others, self.fan.rays[i]):
                        extremes.append(self.fan.rays[i])
            extremes = sorted(extremes)
            for r in extremes:
                if r not in self.fan.rays:
                    raise InconsistencyError(
                        f"glued cone has extreme ray {r} outside the original fan")
                if r not in all_rays:
                    all_rays.append(r)
            cones.append(frozenset(all_rays.index(r) for r in extremes))
        order = sorted(range(len(all_rays)), key=lambda i: all_rays[i])
        rank_of = {old: new for new, old in enumerate(order)}
        return Fan([all_rays[i] for i in order],
                   [frozenset(rank_of[i] for i in c) for c in cones],
                   dim=d)

    # -- push-forward / pull-back --------------------------------------------------

    def pushforward(self, coarse: Fan) -> "TorusInvariantDivisor":
        """Keep the coefficients at rays surviving in the coarse fan."""
        if not self.fan.is_refinement(coarse):
            raise PreconditionError("push-forward requires the fan to refine the target")
        index_of = {r: i for i, r in enumerate(self.fan.rays)}
        coeffs = []
        for r in coarse.rays:
            if r not in index_of:
                raise PreconditionError(
                    f"ray {r} of the coarse fan is not a ray of the fine fan")
            coeffs.append(self.coeffs[index_of[r]])
        return TorusInvariantDivisor(coarse, coeffs)

    # -- stratification ---------------------------------------------------------------

    def stratify(self):
        """Smallest containing cone and torus-factor rank for every cone."""
        coarse = self.sigma_d()
        out = []
        for cone in self.fan.all_cones():
            container = coarse.smallest_containing_cone(cone)
            out.append(StratumRecord(cone, container, container.dim - cone.dim))
        return out

    # -- intersection-number criteria ----------------------------------------------------

    def curve_intersection(self, tau: ConeRef) -> Fraction:
        """(D · V(tau)) for any Cartier D, by writing D as a difference of
        globally generated divisors."""
        self.support_function()
        if self.is_globally_generated():
            return self.intersection_number(1, tau)
        ample = find_ample(self.fan)
        k = 1
        while not (self + k * ample).is_globally_generated():
            k *= 2
            if k > 2 ** 24:
                raise InconsistencyError("difference decomposition did not terminate")
        plus = self + k * ample
        minus = k * ample
        return plus.intersection_number(1, tau) - minus.intersection_number(1, tau)

    def nakai_globally_generated(self) -> bool:
        """(D · V(tau)) >= 0 for every (d-1)-cone tau."""
        return all(self.curve_intersection(tau) >= 0
                   for tau in self.fan.cones(self.fan.dim - 1))

    def nakai_ample(self) -> bool:
        """(D · V(tau)) > 0 for every (d-1)-cone tau."""
        return all(self.curve_intersection(tau) > 0
                   for tau in self.fan.cones(self.fan.dim - 1))


def pullback(divisor: TorusInvariantDivisor, fine: Fan) -> TorusInvariantDivisor:
    """Pull a Cartier divisor back along a subdivision: a_i = -psi(e_i)."""
    if not fine.is_refinement(divisor.fan):
        raise PreconditionError("pull-back requires a refinement of the divisor's fan")
    sf = divisor.support_function()
    coeffs = []
    for e in fine.rays:
        v = sf.value(e)
        if v.denominator != 1:
            raise InconsistencyError("support function non-integral at a lattice ray")
        coeffs.append(-int(v))
    return TorusInvariantDivisor(fine, coeffs)


def find_ample(fan: Fan) -> TorusInvariantDivisor:
    """Some ample torus-invariant divisor on a projective complete fan.

    Tries the fan's recorded hint and the anticanonical guess before solving
    the strict-convexity feasibility problem exactly.
    """
    cached = getattr(fan, "_ample_cache", None)
    if cached is not None:
        return cached
    candidates = []
    if fan.ample_hint is not None:
        candidates.append(fan.ample_hint)
    candidates.append((1,) * len(fan.rays))
    for cand in candidates:
        div = TorusInvariantDivisor(fan, cand)
        try:
            if div.is_strictly_convex():
                fan._ample_cache = div
                return div
        except NotCartierError:
            pass
    div = _ample_by_lp(fan)
    if div is None:
        raise PreconditionError(
            "requires a projective fan: no strictly convex support function exists")
    fan._ample_cache = div
    return div


def _ample_by_lp(fan: Fan):
    """Solve for (m_sigma)_sigma and a with <m_sigma,e_i> = -a_i on rays of
    sigma and <m_sigma,e_j> >= -a_j + 1 off sigma; scale to integers."""
    d = fan.dim
    ncones = len(fan.max_cones)
    n = len(fan.rays)
    nvars = ncones * d + n

    def mvar(ci, j):
        return ci * d + j

    def avar(i):
        return ncones * d + i

    eqs = []
    ineqs = []
    for ci, c in enumerate(fan.max_cones):
        for i in range(n):
            row = [0] * nvars
            e = fan.rays[i]
            for j in range(d):
                row[mvar(ci, j)] = e[j]
            row[avar(i)] = 1
            if i in c:
                eqs.append((row, 0))
            else:
                ineqs.append((row, 1))
    sol = lp_feasible(nvars, eqs=eqs, ineqs=ineqs)
    if sol is None:
        return None
    scale = lcm(*[Fraction(x).denominator for x in sol])
    coeffs = [int(Fraction(sol[avar(i)]) * scale) for i in range(n)]
    div = TorusInvariantDivisor(fan, coeffs)
    if not div.is_strictly_convex():
        raise InconsistencyError("ample search produced a non-ample divisor")
    return div
