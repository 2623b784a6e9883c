"""Ulrich ideal certification, structure-condition checks, the type
relation, model rings, the circulant determinantal family, and the
instance-level vanishing-implies-free checker.

Freeness of I/I^2 and I/q is decided by the length criterion: a surjection
from a free module of the right rank is bijective iff the lengths agree.
All lengths are standard-monomial counts in the ambient polynomial ring, so
every verdict is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotArtinianError, PreconditionError
from .groebner import IdealHandle, _as_budget
from .polyring import RingPresentation, parse_poly
from .quotient import (
    ArtinianModule,
    QuotientRing,
    as_presentation,
    is_complete_intersection,
    is_free_module,
    minimal_generator_count,
    quotient_of,
    socle_dim,
    _hom_rank,
)
from .resolve import (
    PresentedModule,
    ResolutionBuilder,
    is_regular_sequence,
    module_length,
)


def _handle(ring, gens) -> IdealHandle:
    if isinstance(gens, IdealHandle):
        return gens
    return IdealHandle(ring, gens)


def _length(ring, gens, budget) -> int:
    return module_length(IdealHandle(ring, list(gens)), budget)


def is_parameter_ideal(R, q, d: int, budget=None) -> bool:
    """True iff q has exactly d homogeneous generators and R/q is Artinian."""
    ring = as_presentation(R)
    q = _handle(ring, q)
    if len(q.gens) != d:
        return False
    for g in q.gens:
        if g.homogeneous_degree() is None:
            return False
    try:
        _length(ring, q.gens, budget)
    except NotArtinianError:
        return False
    return True


@dataclass
class UlrichReport:
    """Certification record for a candidate Ulrich ideal."""

    q_is_parameter_reduction: bool
    I_not_q: bool
    I2_eq_qI: bool
    ImodI2_free: bool
    ImodI2_rank: int
    residue_complete_intersection: bool
    residue_gorenstein: bool
    len_R_mod_I: int
    len_I_mod_q: int
    mu_I: int

    @property
    def is_ulrich(self) -> bool:
        return self.I_not_q and self.I2_eq_qI and self.ImodI2_free

    def as_dict(self):
        return {
            "is_ulrich": self.is_ulrich,
            "q_is_parameter_reduction": self.q_is_parameter_reduction,
            "I_not_q": self.I_not_q,
            "I2_eq_qI": self.I2_eq_qI,
            "ImodI2_free": self.ImodI2_free,
            "ImodI2_rank": self.ImodI2_rank,
            "residue_complete_intersection": self.residue_complete_intersection,
            "residue_gorenstein": self.residue_gorenstein,
            "len_R_mod_I": self.len_R_mod_I,
            "len_I_mod_q": self.len_I_mod_q,
            "mu_I": self.mu_I,
        }


def is_ulrich(R, I, q, d: int, budget=None) -> UlrichReport:
    """Certify the Ulrich conditions for I with the supplied reduction q.

    Preconditions: q is a parameter ideal of d homogeneous generators with
    Artinian quotient, and q is contained in I.
    """
    ring = as_presentation(R)
    I = _handle(ring, I)
    q = _handle(ring, q)
    budget = _as_budget(budget)
    if not is_parameter_ideal(R, q, d, budget):
        raise PreconditionError("q is not a parameter ideal of the stated dimension")
    if not all(I.contains_poly(g, budget) for g in q.gens):
        raise PreconditionError("q is not contained in I")

    len_RI = _length(ring, I.gens, budget)
    len_Rq = _length(ring, q.gens, budget)
    mu = minimal_generator_count(ring, I.gens, budget)

    I2 = I.power(2)
    qI = q.product(I) if q.gens else IdealHandle(ring, ())
    i2_eq_qi = I2.equal(qI, budget)
    i_not_q = not I.equal(q, budget)

    len_RI2 = _length(ring, I2.gens, budget)
    free = (len_RI2 - len_RI) == mu * len_RI

    ci, _v, _mu = is_complete_intersection(ring, I.gens, budget)
    gor = socle_dim(quotient_of(ring, I.gens), budget) == 1

    return UlrichReport(
        q_is_parameter_reduction=i2_eq_qi,
        I_not_q=i_not_q,
        I2_eq_qI=i2_eq_qi,
        ImodI2_free=free,
        ImodI2_rank=mu,
        residue_complete_intersection=ci,
        residue_gorenstein=gor,
        len_R_mod_I=len_RI,
        len_I_mod_q=len_Rq - len_RI,
        mu_I=mu,
    )


@dataclass
class StructureReport:
    """Checks for the parameter-square presentation conditions: I^2 inside a
    parameter ideal q strictly below I, I/q free over R/I, and R/I a
    complete intersection."""

    i2_in_q: bool
    q_proper_in_I: bool
    ImodQ_free: bool
    ImodQ_rank: int
    residue_complete_intersection: bool
    len_R_mod_I: int
    len_I_mod_q: int

    @property
    def ok(self) -> bool:
        return (
            self.i2_in_q
            and self.q_proper_in_I
            and self.ImodQ_free
            and self.residue_complete_intersection
        )

    def as_dict(self):
        return {
            "ok": self.ok,
            "i2_in_q": self.i2_in_q,
            "q_proper_in_I": self.q_proper_in_I,
            "ImodQ_free": self.ImodQ_free,
            "ImodQ_rank": self.ImodQ_rank,
            "residue_complete_intersection": self.residue_complete_intersection,
            "len_R_mod_I": self.len_R_mod_I,
            "len_I_mod_q": self.len_I_mod_q,
        }


def check_structure_conditions(R, I, q, d: int, budget=None) -> StructureReport:
    ring = as_presentation(R)
    I = _handle(ring, I)
    q = _handle(ring, q)
    budget = _as_budget(budget)
    if not is_parameter_ideal(R, q, d, budget):
        raise PreconditionError("q is not a parameter ideal of the stated dimension")
    if not all(I.contains_poly(g, budget) for g in q.gens):
        raise PreconditionError("q is not contained in I")

    I2 = I.power(2)
    i2_in_q = all(q.contains_poly(g, budget) for g in I2.gens)
    q_proper = not I.equal(q, budget)
    len_RI = _length(ring, I.gens, budget)
    len_Rq = _length(ring, q.gens, budget)
    len_ImodQ = len_Rq - len_RI
    m_gens = ring.gens()
    mI_gens = [v * g for v in m_gens for g in I.gens]
    # rank of a minimal free cover of I/q over R/I: dim I/(q + mI)
    rank = _length(ring, list(q.gens) + mI_gens, budget) - len_RI
    free = i2_in_q and len_ImodQ == rank * len_RI
    ci, _v, _mu = is_complete_intersection(ring, I.gens, budget)
    return StructureReport(
        i2_in_q=i2_in_q,
        q_proper_in_I=q_proper,
        ImodQ_free=free,
        ImodQ_rank=rank,
        residue_complete_intersection=ci,
        len_R_mod_I=len_RI,
        len_I_mod_q=len_ImodQ,
    )


def type_relation_check(R, I, q, d: int, budget=None):
    """Compare r(R) with (mu(I) - d) * r(R/I) after verifying that q sits
    inside I as part of a minimal generating set, I^2 is inside q, and I/q
    is free over R/I.  Returns (lhs, rhs, equal, mu)."""
    ring = as_presentation(R)
    I = _handle(ring, I)
    q = _handle(ring, q)
    budget = _as_budget(budget)
    if not is_parameter_ideal(R, q, d, budget):
        raise PreconditionError("q is not a parameter ideal of the stated dimension")
    if not all(I.contains_poly(g, budget) for g in q.gens):
        raise PreconditionError("q is not contained in I")

    len_RI = _length(ring, I.gens, budget)
    len_Rq = _length(ring, q.gens, budget)
    mu = minimal_generator_count(ring, I.gens, budget)
    m_gens = ring.gens()
    mI_gens = [v * g for v in m_gens for g in I.gens]
    len_q_mI = _length(ring, list(q.gens) + mI_gens, budget)
    if mu - (len_q_mI - len_RI) != d:
        raise PreconditionError(
            "q generators are not part of a minimal generating set of I"
        )
    I2 = I.power(2)
    if not all(q.contains_poly(g, budget) for g in I2.gens):
        raise PreconditionError("I^2 is not contained in q")
    if (len_Rq - len_RI) != (mu - d) * len_RI:
        raise PreconditionError("I/q is not free over R/I (length mismatch)")

    lhs = socle_dim(quotient_of(ring, q.gens), budget)
    rhs = (mu - d) * socle_dim(quotient_of(ring, I.gens), budget)
    return lhs, rhs, lhs == rhs, mu


def ulrich_model_ring(r: int, v: int, field=None):
    """The Artinian model k[X_1..X_v]/[(X_1..X_r)^2 + (X_{r+1}..X_v)],
    together with the ideal I = (X_1..X_r).  For 1 <= r <= v this carries
    the square-zero Ulrich-style ideal with complete-intersection residue."""
    if not 1 <= r <= v:
        raise PreconditionError("need 1 <= r <= v")
    names = [f"X{i}" for i in range(1, v + 1)]
    base = RingPresentation(names, [1] * v, field)
    rels = []
    for i in range(r):
        for j in range(i, r):
            rels.append(base.var(names[i]) * base.var(names[j]))
    for i in range(r, v):
        rels.append(base.var(names[i]))
    ring = base.extend_relations(rels)
    R = QuotientRing(ring)
    I = IdealHandle(ring, [ring.var(names[i]) for i in range(r)])
    return R, I


def circulant_ulrich_family(S: RingPresentation, f, g, h, f1=None, budget=None):
    """Quotient by the 2x2 minors of [[f, g, h], [h, f, g]], i.e. by
    (f^2 - g*h, g^2 - h*f, h^2 - f*g), for a homogeneous regular sequence
    f, g, h.  Certifies I = (f, g, h) with reduction (f); when a factor f1
    of f is supplied, also certifies I1 = (f1, g, h) with reduction (f1).

    Returns (R, report) or (R, report, report1).
    """
    budget = _as_budget(budget)
    f, g, h = (parse_poly(p, S) if isinstance(p, str) else p for p in (f, g, h))
    if not is_regular_sequence(S, [f, g, h], budget):
        raise PreconditionError("f, g, h is not a regular sequence of length 3")
    rels = [f * f - g * h, g * g - h * f, h * h - f * g]
    R = quotient_of(S, rels)
    ring = R.presentation
    lift = lambda p: p.transfer(ring)
    I = IdealHandle(ring, [lift(f), lift(g), lift(h)])
    q = IdealHandle(ring, [lift(f)])
    report = is_ulrich(R, I, q, 1, budget)
    if f1 is None:
        return R, report
    f1 = parse_poly(f1, S) if isinstance(f1, str) else f1
    if not IdealHandle(S, [f1]).contains_poly(f, budget):
        raise PreconditionError("f1 does not divide f")
    I1 = IdealHandle(ring, [lift(f1), lift(g), lift(h)])
    q1 = IdealHandle(ring, [lift(f1)])
    report1 = is_ulrich(R, I1, q1, 1, budget)
    return R, report, report1


@dataclass
class ArVerdict:
    """Outcome of the bounded vanishing-implies-free instance check."""

    bound: int
    module_free: bool
    first_nonvanishing: tuple[int, str] | None
    ext_self: list[int] = field(default_factory=list)
    ext_ring: list[int] = field(default_factory=list)

    @property
    def classification(self) -> str:
        if self.first_nonvanishing is not None:
            return "hypothesis_fails"
        return "consistent_free" if self.module_free else "counterexample_candidate"

    def as_dict(self):
        return {
            "bound": self.bound,
            "module_free": self.module_free,
            "first_nonvanishing": list(self.first_nonvanishing)
            if self.first_nonvanishing
            else None,
            "classification": self.classification,
            "ext_self": list(self.ext_self),
            "ext_ring": list(self.ext_ring),
        }


def ar_instance_check(R, module: PresentedModule, bound: int, budget=None) -> ArVerdict:
    """Check Ext^i(M, M) and Ext^i(M, R) for i = 1..bound over an Artinian
    quotient, stopping at the first nonvanishing group.  Classification:
    hypothesis_fails when some Ext is nonzero, consistent_free when all
    vanish and M is free, counterexample_candidate otherwise (with the
    bound recorded; no proof claim is made)."""
    ring = as_presentation(R)
    budget = _as_budget(budget)
    if bound < 1:
        raise PreconditionError("bound must be >= 1")
    free, _rank = is_free_module(R, module, budget)

    builder = ResolutionBuilder(module, budget, over_quotient=True)
    target_self = ArtinianModule.from_presented(module, budget)
    target_ring = ArtinianModule(ring, [], 1, budget)

    def rank_at(i):
        return builder.modules[i].rank if i < len(builder.modules) else 0

    hom_ranks = {"self": {}, "ring": {}}

    def hom_rank(which, target, i):
        """Rank of Hom(d_i, N)."""
        cache = hom_ranks[which]
        if i not in cache:
            builder.extend(i)
            if i > len(builder.maps):
                cache[i] = 0
            else:
                cache[i] = _hom_rank(
                    builder.maps[i - 1], rank_at(i - 1), rank_at(i), target
                )
        return cache[i]

    verdict = ArVerdict(bound=bound, module_free=free, first_nonvanishing=None)
    for i in range(1, bound + 1):
        builder.extend(i + 1)
        if rank_at(i) == 0:
            verdict.ext_self.append(0)
            verdict.ext_ring.append(0)
            continue
        dims = {}
        for which, target in (("self", target_self), ("ring", target_ring)):
            d_i = target.dim * rank_at(i)
            dims[which] = d_i - hom_rank(which, target, i + 1) - hom_rank(which, target, i)
        verdict.ext_self.append(dims["self"])
        verdict.ext_ring.append(dims["ring"])
        if dims["self"]:
            verdict.first_nonvanishing = (i, "Ext(M,M)")
            break
        if dims["ring"]:
            verdict.first_nonvanishing = (i, "Ext(M,R)")
            break
    return verdict
