"""Delta-set fans of cyclic one-relator modules and their local structure.

For a relator r with support S in Z^n, the Delta set is the tropical locus
of characters whose minimum over S is attained at least twice:

    Delta = union over pairs a != b in S of
            {chi : chi(a) = chi(b) <= chi(c) for all c in S}.

The initial form of r at a rational character chi keeps the chi-minimal
terms, normalizes them into the kernel lattice B of chi, and generates the
one-relator module over B whose Delta set describes the local cone of the
ambient Delta set at chi.  The checkers in this module verify that identity,
the dimension identity and the induced-module law on concrete instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polyhedral, torus
from .lattice import (
    Sublattice,
    Subspace,
    dot,
    kernel_lattice,
    saturate,
    solve_left,
)
from .polyhedral import Cone, Fan
from .rng import derive, rational


@dataclass(frozen=True)
class Character:
    """Rational point of Hom(A, R) for A = Z^n."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           tuple(Fraction(x) for x in self.coords))

    @staticmethod
    def zero(n):
        return Character((0,) * n)

    @property
    def n(self):
        return len(self.coords)

    @property
    def is_zero(self):
        return not any(self.coords)

    def value(self, exp):
        return dot(self.coords, exp)

    def kernel(self) -> Sublattice:
        """Saturated kernel sublattice of Z^n."""
        return saturate(kernel_lattice([self.coords], self.n))

    @property
    def rank(self):
        """Rank of the image, computed as n - rank(kernel)."""
        return self.n - self.kernel().rank


@dataclass(frozen=True)
class OneRelatorModule:
    """Cyclic module presented by a single nonzero relator."""

    relator: torus.QTorusElement
    cocycle: torus.CocycleForm

    def __post_init__(self):
        if self.relator.is_zero:
            raise ValueError("relator must be nonzero")
        if self.relator.rank != self.cocycle.rank:
            raise ValueError("relator and cocycle rank mismatch")

    @property
    def rank(self):
        return self.relator.rank


def _delta_fan_of_support(support, n):
    if len(support) < 2:
        return Fan(n)
    cones = []
    for i in range(len(support)):
        for j in range(i + 1, len(support)):
            a, b = support[i], support[j]
            eq = [tuple(x - y for x, y in zip(a, b))]
            ineq = [tuple(x - y for x, y in zip(c, a))
                    for c in support if c != a and c != b]
            cones.append(Cone.from_constraints(n, eq, ineq))
    return Fan(n, cones)


def delta_set(module: OneRelatorModule) -> Fan:
    """Delta set of the module as a fan over the pairwise tie cones of the
    relator support, with redundant cones pruned."""
    return _delta_fan_of_support(module.relator.support, module.rank)


@dataclass(frozen=True)
class InitialFormResult:
    relator: torus.QTorusElement      # in the coordinates of kernel.basis
    kernel: Sublattice                # B = saturate(ker chi)
    cocycle: torus.CocycleForm        # twist restricted to the kernel basis


def initial_form(module: OneRelatorModule, chi: Character) -> InitialFormResult:
    """Chi-minimal part of the relator, moved into the kernel lattice of chi.

    The minimizing terms are left-multiplied by the inverse of the monomial
    at the lexicographically least minimizing support point (so the twist
    acts on the coefficients exactly) and re-expressed in the coordinates of
    the canonical basis of B = saturate(ker chi).
    """
    r = module.relator
    if chi.n != module.rank:
        raise ValueError("character of wrong length")
    minimum = torus.chi_min(r, chi.coords)
    min_support = sorted(a for a in r.support if chi.value(a) == minimum)
    base = min_support[0]
    trimmed = torus.QTorusElement(r.rank, r.s,
                                  {a: r.coefficient(a) for a in min_support})
    inverse = torus.monomial_inverse(base, r.s, module.cocycle)
    shifted = torus.multiply(inverse, trimmed, module.cocycle)
    B = chi.kernel()
    terms = {}
    for a in shifted.support:
        coords = B.coordinates(a)
        if coords is None:
            raise AssertionError("initial form support escaped the kernel lattice")
        terms[coords] = shifted.coefficient(a)
    restricted = torus.QTorusElement(B.rank, r.s, terms)
    return InitialFormResult(restricted, B, module.cocycle.restrict(B))


def tc_delta(module: OneRelatorModule, chi: Character) -> Fan:
    """Delta set of the trailing-coefficient module at chi, inside the dual
    of the kernel lattice; empty exactly when chi is outside the Delta set."""
    init = initial_form(module, chi)
    return _delta_fan_of_support(init.relator.support, init.kernel.rank)


@dataclass(frozen=True)
class LocalConeReport:
    chi: Character
    lhs: Fan
    rhs: Fan
    equal: bool

    def to_json(self):
        from . import jsonio
        return {
            "chi": jsonio.vector_to_json(self.chi.coords),
            "lhs": jsonio.fan_to_json(self.lhs),
            "rhs": jsonio.fan_to_json(self.rhs),
            "equal": self.equal,
        }


def check_lemma31(module: OneRelatorModule, chi: Character) -> LocalConeReport:
    """Compare the local cone of the Delta set at chi with the pullback of
    the trailing-coefficient Delta set along the restriction to ker chi."""
    fan = delta_set(module)
    lhs = polyhedral.local_cone(fan, chi.coords)
    init = initial_form(module, chi)
    inner = _delta_fan_of_support(init.relator.support, init.kernel.rank)
    rhs = polyhedral.preimage(inner, init.kernel.basis,
                              domain_dim=module.rank)
    return LocalConeReport(chi, lhs, rhs, polyhedral.fan_equal(lhs, rhs))


@dataclass(frozen=True)
class DimReport:
    chi: Character
    chi_rank: int
    tc_dim: int
    delta_dim: int

    @property
    def holds(self):
        return self.chi_rank + self.tc_dim == self.delta_dim

    def to_json(self):
        from . import jsonio
        return {
            "chi": jsonio.vector_to_json(self.chi.coords),
            "chi_rank": self.chi_rank,
            "tc_dim": self.tc_dim,
            "delta_dim": self.delta_dim,
            "holds": self.holds,
        }


def check_dim_identity(module: OneRelatorModule, chi: Character) -> DimReport:
    """Verify rank(chi) + dim Delta(TC_chi) = dim Delta at a character in
    the closure of the regular part of the Delta set."""
    fan = delta_set(module)
    star = polyhedral.delta_star(fan)
    if not star.member(chi.coords):
        raise ValueError("character outside the regular part of the Delta set")
    tc = tc_delta(module, chi)
    return DimReport(chi, chi.rank, polyhedral.fan_dim(tc),
                     polyhedral.fan_dim(fan))


@dataclass(frozen=True)
class InducedReport:
    chi: Character
    lhs: Fan
    rhs: Fan
    equal: bool

    def to_json(self):
        from . import jsonio
        return {
            "chi": jsonio.vector_to_json(self.chi.coords),
            "lhs": jsonio.fan_to_json(self.lhs),
            "rhs": jsonio.fan_to_json(self.rhs),
            "equal": self.equal,
        }


def check_induced(module: OneRelatorModule, sublattice: Sublattice,
                  chi: Character) -> InducedReport:
    """Induced-module law: the trailing-coefficient Delta set of a relator
    supported in a saturated sublattice A1 equals the pullback, along the
    restriction of ker(chi) to ker(chi) - cap - A1, of the one computed
    inside A1 at the restricted character."""
    n = module.rank
    if sublattice.ambient_rank != n:
        raise ValueError("sublattice ambient rank mismatch")
    if saturate(sublattice) != sublattice:
        raise ValueError("sublattice must be saturated")
    H1 = sublattice.basis
    inner_terms = {}
    for a in module.relator.support:
        coords = sublattice.coordinates(a)
        if coords is None:
            raise ValueError("relator support outside the sublattice")
        inner_terms[coords] = module.relator.coefficient(a)
    inner_relator = torus.QTorusElement(sublattice.rank, module.relator.s,
                                        inner_terms)
    inner_module = OneRelatorModule(inner_relator,
                                    module.cocycle.restrict(sublattice))
    chi1 = Character(tuple(dot(chi.coords, h) for h in H1))

    lhs = tc_delta(module, chi)
    B = chi.kernel()
    inner_fan = tc_delta(inner_module, chi1)
    B1 = chi1.kernel()
    # basis of B cap A1 aligned with the inner kernel basis
    rows_in_ambient = [tuple(dot(y, [h[j] for h in H1]) for j in range(n))
                       for y in B1.basis]
    restriction = []
    for row in rows_in_ambient:
        coeffs = solve_left(B.basis, row)
        if coeffs is None:
            raise AssertionError("kernel intersection escaped the kernel")
        restriction.append(coeffs)
    rhs = polyhedral.preimage(inner_fan, restriction, domain_dim=B.rank)
    return InducedReport(chi, lhs, rhs, polyhedral.fan_equal(lhs, rhs))


def generic_for(module: OneRelatorModule, chi: Character,
                space: Subspace) -> bool:
    """True iff the local cone of the regular part at chi lies inside the
    subspace.  The character itself must belong to the subspace."""
    if space.ambient_dim != module.rank:
        raise ValueError("subspace of wrong dimension")
    if not space.contains_vector(chi.coords):
        raise ValueError("character outside the subspace")
    star = polyhedral.delta_star(delta_set(module))
    lc = polyhedral.local_cone(star, chi.coords)
    return all(space.contains(c.span()) for c in lc.cones)


def sample_delta_point(module: OneRelatorModule, cone_index: int,
                       seed: int) -> Character:
    """Deterministic rational point in the relative interior of the indexed
    Delta cone: the sum of its extreme rays plus a seeded nonzero rational
    combination of the lineality basis."""
    fan = delta_set(module)
    if not 0 <= cone_index < len(fan.cones):
        raise IndexError("cone index out of range")
    cone = fan.cones[cone_index]
    rng = derive(seed, "delta-sample", cone_index)
    point = [Fraction(x) for x in cone.relint_point()]
    weights = []
    for _ in cone.lineality:
        weights.append(rational(rng, nonzero=False))
    if cone.lineality and not cone.rays and not any(weights):
        weights[0] = rational(rng, nonzero=True)
    for w, l in zip(weights, cone.lineality):
        point = [p + w * x for p, x in zip(point, l)]
    return Character(tuple(point))
