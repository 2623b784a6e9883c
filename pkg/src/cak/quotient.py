"""Homological algebra over quotient rings R = S/J.

Minimal R-free resolutions are computed by the lift-to-ambient method
(syzygies in S of the columns together with J times every basis vector,
projected back).  Ext and Tor are finite-dimensional linear algebra over the
coefficient field on a standard-monomial basis, so R (and the second
argument) must be Artinian; positive-dimensional inputs are first cut down
by an explicit parameter sequence, as the certification workflows do.
"""

from __future__ import annotations

import itertools

from ._linalg import matrix_rank
from .errors import CakError, NotArtinianError, PreconditionError
from .groebner import (
    GroebnerEngine,
    IdealHandle,
    ModuleContext,
    _as_budget,
    minimal_generator_count,
    standard_monomials,
)
from .polyring import Polynomial, RingPresentation, parse_poly
from .resolve import (
    ChainComplex,
    GradedFreeModule,
    PolyMatrix,
    PresentedModule,
    lead_module_per_component,
    minimal_free_resolution,
    presentation_minimalize,
)


def as_presentation(R) -> RingPresentation:
    return R.presentation if isinstance(R, QuotientRing) else R


class QuotientRing:
    """Ring presentation with relations, plus cached Artinian data."""

    __slots__ = ("presentation", "_std", "_socle")

    def __init__(self, presentation: RingPresentation):
        self.presentation = presentation
        self._std = None
        self._socle = None

    @property
    def ring(self) -> RingPresentation:
        return self.presentation

    def ideal(self, gens) -> IdealHandle:
        return IdealHandle(self.presentation, gens)

    def maximal_ideal(self) -> IdealHandle:
        return IdealHandle(self.presentation, self.presentation.gens())

    def standard_basis(self, budget=None):
        """Standard monomials of the defining ideal (Artinian case)."""
        if self._std is None:
            handle = IdealHandle(self.presentation, ())
            if handle.is_unit(budget):
                raise CakError("relations generate the unit ideal")
            self._std = tuple(standard_monomials(handle, budget))
        return self._std

    def length(self, budget=None) -> int:
        return len(self.standard_basis(budget))

    def is_artinian(self, budget=None) -> bool:
        try:
            self.standard_basis(budget)
            return True
        except NotArtinianError:
            return False

    def socle_dim(self, budget=None) -> int:
        if self._socle is None:
            self._socle = socle_dim(self, budget)
        return self._socle

    def __repr__(self):
        return f"QuotientRing({self.presentation!r})"


def quotient_of(R, extra) -> QuotientRing:
    """R/(extra) as a new quotient presentation."""
    ring = as_presentation(R)
    return QuotientRing(ring.extend_relations(extra))


# -- basic invariants ---------------------------------------------------------


def embedding_dim(R) -> int:
    """dim m/m^2: variables minus the rank of the relations' linear parts."""
    ring = as_presentation(R)
    n = len(ring.vars)
    rows = []
    unit_keys = [ring.var_key(i) for i in range(n)]
    for rel in ring.relations:
        row = [rel.terms.get(k, 0) for k in unit_keys]
        if any(row):
            rows.append(row)
    return n - matrix_rank(rows, ring.field.p)


class _ArtinianBasis:
    """k-basis of an Artinian quotient with multiplication tables on demand."""

    def __init__(self, R: QuotientRing, budget=None):
        self.R = R
        self.ring = R.presentation
        self.budget = _as_budget(budget)
        self.basis = R.standard_basis(self.budget)
        self.index = {m.exponents: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._handle = IdealHandle(self.ring, ())
        self._handle.groebner_basis(self.budget)

    def var_matrix(self, i: int):
        """Matrix (rows = basis) of multiplication by the i-th variable."""
        ring = self.ring
        cols = []
        for m in self.basis:
            prod = ring.var(ring.vars[i]) * Polynomial(
                ring, {ring.encode(m.exponents): ring.field.coerce(1)}
            )
            nf = self._handle.normal_form(prod)
            vec = [0] * self.dim
            for k, c in nf.terms.items():
                vec[self.index[ring.decode(k)]] = c
            cols.append(vec)
        return [[cols[j][i2] for j in range(self.dim)] for i2 in range(self.dim)]


def socle_dim(R, budget=None) -> int:
    """Dimension of (0 : m) in an Artinian quotient."""
    R = R if isinstance(R, QuotientRing) else QuotientRing(as_presentation(R))
    ab = _ArtinianBasis(R, budget)
    ring = ab.ring
    stacked = []
    for i in range(len(ring.vars)):
        mat = ab.var_matrix(i)
        stacked.extend(mat)
    cols = ab.dim
    rows = [[stacked[r][c] for c in range(cols)] for r in range(len(stacked))]
    return cols - matrix_rank(rows, ring.field.p)


def cm_type(R, params, budget=None) -> int:
    """Cohen-Macaulay type via the socle of the Artinian reduction R/(params).

    ``params`` must be a homogeneous system of parameters; this is validated
    by the Artinian check after cutting.
    """
    ring = as_presentation(R)
    params = [p if isinstance(p, Polynomial) else parse_poly(p, ring) for p in params]
    for p in params:
        if p.is_zero() or p.homogeneous_degree() is None:
            raise PreconditionError("parameters must be nonzero homogeneous")
    cut = quotient_of(ring, params)
    if not cut.is_artinian(budget):
        raise PreconditionError("params are not a system of parameters (quotient not Artinian)")
    return socle_dim(cut, budget)


# -- module presentations over R ---------------------------------------------


def is_free_module(R, module: PresentedModule, budget=None):
    """(True, rank) iff the minimalized presentation has no relations left."""
    minimized = presentation_minimalize(module, budget)
    if minimized.relations.ncols == 0:
        return True, minimized.ambient.rank
    return False, None


def syzygy_over_quotient(R, matrix, steps: int, budget=None) -> ChainComplex:
    """First ``steps`` maps of a minimal R-free resolution of coker(matrix)."""
    ring = as_presentation(R)
    if isinstance(matrix, PresentedModule):
        module = matrix
    else:
        module = PresentedModule(
            ring, GradedFreeModule(ring, (0,) * matrix.nrows), matrix
        )
    res = minimal_free_resolution(
        module, max_length=steps, budget=budget, over_quotient=True
    )
    return res.complex


def module_standard_basis(ring, columns, nrows, budget=None):
    """Standard monomial basis (component, exponents) of coker(columns) over
    ring/(relations); errors when the quotient is not finite-dimensional."""
    budget = _as_budget(budget)
    per = lead_module_per_component(
        ring, columns, nrows, quotient_relations=ring.relations, budget=budget
    )
    n = len(ring.vars)
    basis = []
    for comp, leads in enumerate(per):
        if any(sum(e) == 0 for e in leads):
            continue  # component dies
        bounds = [None] * n
        for e in leads:
            support = [i for i in range(n) if e[i]]
            if len(support) == 1 and (
                bounds[support[0]] is None or e[support[0]] < bounds[support[0]]
            ):
                bounds[support[0]] = e[support[0]]
        if any(b is None for b in bounds):
            raise NotArtinianError(
                f"module component {comp} is not finite-dimensional"
            )
        for expo in itertools.product(*[range(b) for b in bounds]):
            if any(all(expo[i] >= e[i] for i in range(n)) for e in leads):
                continue
            basis.append((comp, expo))
    basis.sort(key=lambda ce: (ce[0], ring.encode(ce[1])))
    return basis


class ArtinianModule:
    """Finite-dimensional module over an Artinian quotient: a standard basis
    plus normal-form machinery giving exact coordinates."""

    def __init__(self, ring: RingPresentation, columns, nrows: int, budget=None):
        self.ring = ring
        self.nrows = nrows
        self.budget = _as_budget(budget)
        self.ctx = ModuleContext(ring, nrows)
        self.engine = GroebnerEngine(self.ctx, ring.field, self.budget)
        for rel in ring.relations:
            for i in range(nrows):
                self.engine.add_raw({self.ctx.key(i, k): c for k, c in rel.terms.items()})
        for col in columns:
            self.engine.add_raw(self.ctx.from_column(col))
        self.engine.complete()
        self.basis = module_standard_basis(ring, columns, nrows, self.budget)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._op_cache: dict = {}

    @classmethod
    def from_presented(cls, module: PresentedModule, budget=None):
        return cls(module.ring, module.relations.columns(), module.ambient.rank, budget)

    def coords(self, terms: dict):
        """Exact coordinates of a term dict in the standard basis."""
        nf = self.engine.reduce(terms)
        vec = [0] * self.dim
        for k, c in nf.items():
            comp, mono = self.ctx.decode(k)
            vec[self.index[(comp, self.ring.decode(mono))]] = c
        return vec

    def basis_times(self, f: Polynomial, b: int):
        """Coordinates of f * (basis element b)."""
        cache = self._op_cache.get(f)
        if cache is None:
            cache = {}
            self._op_cache[f] = cache
        got = cache.get(b)
        if got is None:
            comp, expo = self.basis[b]
            mono_key = self.ring.encode(expo)
            terms = {}
            for k, c in f.terms.items():
                terms[self.ctx.key(comp, self.ring.mul_keys(k, mono_key))] = c
            got = self.coords(terms)
            cache[b] = got
        return got


def _resolution_maps(R, module: PresentedModule, steps: int, budget):
    """Minimal resolution data: ranks r_0..r_steps and maps d_1..d_steps
    (entries NF-reduced), padding with zero maps past termination."""
    ring = as_presentation(R)
    res = minimal_free_resolution(
        module, max_length=steps, budget=budget, over_quotient=True
    )
    cx = res.complex
    ranks = [m.rank for m in cx.modules]
    maps = list(cx.maps)
    while len(ranks) <= steps:
        ranks.append(0)
    while len(maps) < steps:
        nr = ranks[len(maps)]
        maps.append(PolyMatrix.zero(ring, nr, ranks[len(maps) + 1]))
    return ranks, maps


def ext_dims(R, module: PresentedModule, against: PresentedModule, bound: int, budget=None):
    """dim_k Ext^i(M, N) for i = 1..bound over the Artinian quotient."""
    ring = as_presentation(R)
    budget = _as_budget(budget)
    if bound < 1:
        raise PreconditionError("bound must be >= 1")
    ranks, maps = _resolution_maps(R, module, bound + 1, budget)
    target = ArtinianModule.from_presented(against, budget)
    rank_delta = []
    for i in range(bound + 1):
        rank_delta.append(_hom_rank(maps[i], ranks[i], ranks[i + 1], target))
    dims = []
    for i in range(1, bound + 1):
        d_i = target.dim * ranks[i]
        dims.append(d_i - rank_delta[i] - rank_delta[i - 1])
    return dims


def _hom_rank(mat: PolyMatrix, r_lo: int, r_hi: int, target: ArtinianModule) -> int:
    """Rank of Hom(d, N): Hom(F_lo, N) -> Hom(F_hi, N)."""
    if r_lo == 0 or r_hi == 0 or target.dim == 0:
        return 0
    rows = []
    # column index: (j, b) over F_lo basis x N basis; row blocks over F_hi x N
    for j in range(r_lo):
        for b in range(target.dim):
            col = [0] * (r_hi * target.dim)
            for c in range(r_hi):
                entry = mat.entries[j][c]
                if entry.is_zero():
                    continue
                vec = target.basis_times(entry, b)
                base = c * target.dim
                for t, v in enumerate(vec):
                    if v:
                        col[base + t] = v
            rows.append(col)
    # rank of the transpose equals the rank
    return matrix_rank(rows, target.ring.field.p)


def tor_dims(R, module: PresentedModule, against: PresentedModule, bound: int, budget=None):
    """dim_k Tor_i(M, N) for i = 1..bound over the Artinian quotient."""
    ring = as_presentation(R)
    budget = _as_budget(budget)
    if bound < 1:
        raise PreconditionError("bound must be >= 1")
    ranks, maps = _resolution_maps(R, module, bound + 1, budget)
    target = ArtinianModule.from_presented(against, budget)
    rank_t = []
    for i in range(bound + 1):
        rank_t.append(_tensor_rank(maps[i], ranks[i], ranks[i + 1], target))
    dims = []
    for i in range(1, bound + 1):
        d_i = target.dim * ranks[i]
        dims.append(d_i - rank_t[i - 1] - rank_t[i])
    return dims


def _tensor_rank(mat: PolyMatrix, r_lo: int, r_hi: int, target: ArtinianModule) -> int:
    """Rank of d (x) N : N^(r_hi) -> N^(r_lo)."""
    if r_lo == 0 or r_hi == 0 or target.dim == 0:
        return 0
    rows = []
    for c in range(r_hi):
        for b in range(target.dim):
            col = [0] * (r_lo * target.dim)
            for j in range(r_lo):
                entry = mat.entries[j][c]
                if entry.is_zero():
                    continue
                vec = target.basis_times(entry, b)
                base = j * target.dim
                for t, v in enumerate(vec):
                    if v:
                        col[base + t] = v
            rows.append(col)
    return matrix_rank(rows, target.ring.field.p)


def tor_zero_dim(R, module: PresentedModule, against: PresentedModule, budget=None) -> int:
    """dim_k (M tensor N) = dim Tor_0."""
    ring = as_presentation(R)
    budget = _as_budget(budget)
    ranks, maps = _resolution_maps(R, module, 1, budget)
    target = ArtinianModule.from_presented(against, budget)
    r1 = _tensor_rank(maps[0], ranks[0], ranks[1], target)
    return ranks[0] * target.dim - r1


def free_module_presentation(R, rank: int = 1, twists=None) -> PresentedModule:
    ring = as_presentation(R)
    return PresentedModule.free(ring, twists if twists is not None else (0,) * rank)


def residue_field_presentation(R) -> PresentedModule:
    ring = as_presentation(R)
    return PresentedModule.cyclic(ring, ring.gens())


def cyclic_presentation(R, gens) -> PresentedModule:
    ring = as_presentation(R)
    gens = [parse_poly(g, ring) if isinstance(g, str) else g for g in gens]
    return PresentedModule.cyclic(ring, gens)


# -- minimal presentations and complete intersections --------------------------


def minimal_presentation(ring: RingPresentation, extra_gens=(), budget=None):
    """Substitute away every variable that occurs linearly in a defining
    relation.  Returns (polynomial subring, defining generators there)."""
    gens = [g for g in itertools.chain(ring.relations, extra_gens) if not g.is_zero()]
    work_ring = ring.polynomial_ambient()
    gens = [g.transfer(work_ring) for g in gens]
    while True:
        hit = None
        for g in gens:
            for i in range(len(work_ring.vars)):
                c = g.terms.get(work_ring.var_key(i))
                if c:
                    hit = (g, i, c)
                    break
            if hit:
                break
        if hit is None:
            break
        g, i, c = hit
        name = work_ring.vars[i]
        rest = g - work_ring.var(name).scale(c)
        image = rest.scale(work_ring.field.neg(work_ring.field.inv(c)))
        substituted = [q.substitute({name: image}) for q in gens]
        keep = [v for v in work_ring.vars if v != name]
        new_ring = work_ring.restrict(keep)
        gens = [q.reencode(new_ring) for q in substituted if not q.is_zero()]
        work_ring = new_ring
    return work_ring, gens


def is_complete_intersection(ring: RingPresentation, extra_gens=(), budget=None):
    """Whether ring/(relations + extra) is an Artinian complete intersection.

    Reduces to a minimal presentation, then compares the minimal number of
    defining relations with the number of remaining variables (= codimension
    for a zero-dimensional quotient).  Returns (flag, embdim, mu).
    """
    sub_ring, gens = minimal_presentation(ring, extra_gens, budget)
    handle = IdealHandle(sub_ring, gens)
    standard_monomials(handle, budget)  # raises if not finite-dimensional
    mu = minimal_generator_count(sub_ring, gens, budget)
    v = len(sub_ring.vars)
    return mu == v, v, mu
