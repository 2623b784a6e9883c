"""Buchberger engine and ideal-level operations.

One engine serves polynomial rings and free modules: a term position is a
single int key (see :mod:`cak.polyring`), and a "context" object supplies the
layout constants (component mask, divisibility segments, guard bits).  Module
keys put the component rank in the low 32 bits and, for syzygy elimination,
a block bit above the monomial part so that target components dominate.

Ideals of a quotient ring R = S/J are handled through their full preimage:
an :class:`IdealHandle` always computes the reduced Groebner basis of
``gens + ring.relations`` in the ambient polynomial ring, which makes
membership, equality, colon and intersection uniform across S and S/J.
"""

from __future__ import annotations

import heapq
import itertools

from ._kernel import axpy_terms, divides_key, normal_form_terms
from .errors import CakError, PreconditionError, NotArtinianError, ResourceLimitError
from .polyring import Field, Monomial, Polynomial, RingPresentation

DEFAULT_BUDGET = 10**6


class Budget:
    """Pair-reduction counter.  Exceeding the limit is an error, never a
    wrong answer."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = DEFAULT_BUDGET if limit is None else int(limit)
        self.used = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise ResourceLimitError(
                f"pair-reduction budget of {self.limit} exceeded"
            )


def _as_budget(budget) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


class RingContext:
    """Layout facade for polynomial (rank-one) term keys."""

    __slots__ = ("ring", "compmask", "segs", "guard")

    def __init__(self, ring: RingPresentation):
        self.ring = ring
        self.compmask = 0
        self.segs = ring.div_segments
        self.guard = ring.guard

    def lcm(self, k1: int, k2: int) -> int:
        return self.ring.lcm_key(k1, k2)

    def degree(self, key: int) -> int:
        return self.ring.key_degree(key)

    def coprime(self, k1: int, k2: int, lcm_key: int) -> bool:
        return lcm_key == k1 + k2 - self.ring.one_key


class ModuleContext:
    """Layout for terms of a free module of rank ``ncomp``.

    The first ``fhigh`` components form the dominant order block (used to
    read syzygies off an elimination Groebner basis); with ``fhigh=0`` the
    order is plain term-over-position with earlier components breaking ties.
    """

    COMP_BITS = 32

    __slots__ = ("ring", "ncomp", "fhigh", "blockbit", "compmask", "segs", "guard", "_rk_mask")

    def __init__(self, ring: RingPresentation, ncomp: int, fhigh: int = 0):
        if ncomp >= 1 << self.COMP_BITS:
            raise CakError("module rank too large")
        self.ring = ring
        self.ncomp = ncomp
        self.fhigh = fhigh
        self.blockbit = 1 << (self.COMP_BITS + ring.key_bits)
        self.compmask = ((1 << self.COMP_BITS) - 1) | self.blockbit
        self.segs = tuple(
            (c << self.COMP_BITS, g << self.COMP_BITS) for c, g in ring.div_segments
        )
        self.guard = ring.guard << self.COMP_BITS
        self._rk_mask = (1 << ring.key_bits) - 1

    def key(self, comp: int, mono_key: int) -> int:
        k = (mono_key << self.COMP_BITS) + (self.ncomp - 1 - comp)
        if comp < self.fhigh:
            k += self.blockbit
        return k

    def decode(self, key: int):
        comp = self.ncomp - 1 - (key & ((1 << self.COMP_BITS) - 1))
        mono = (key >> self.COMP_BITS) & self._rk_mask
        return comp, mono

    def lcm(self, k1: int, k2: int):
        if (k1 ^ k2) & self.compmask:
            return None
        comp, m1 = self.decode(k1)
        _, m2 = self.decode(k2)
        return self.key(comp, self.ring.lcm_key(m1, m2))

    def degree(self, key: int) -> int:
        return self.ring.key_degree(self.decode(key)[1])

    def coprime(self, k1: int, k2: int, lcm_key: int) -> bool:
        # the product criterion is not valid for module positions
        return False

    # -- element conversion ------------------------------------------------

    def from_column(self, column) -> dict:
        """Column of polynomials (length ncomp) -> term dict."""
        terms = {}
        for i, poly in enumerate(column):
            if poly is None:
                continue
            for k, c in poly.terms.items():
                terms[self.key(i, k)] = c
        return terms

    def to_column(self, terms: dict) -> list:
        """Term dict -> column of polynomials (length ncomp)."""
        per = [dict() for _ in range(self.ncomp)]
        for k, c in terms.items():
            comp, mono = self.decode(k)
            per[comp][mono] = c
        return [Polynomial(self.ring, d) for d in per]


def _monic(terms: dict, field: Field) -> dict:
    lc = terms[max(terms)]
    one = field.coerce(1)
    if lc == one:
        return terms
    inv = field.inv(lc)
    p = field.p
    if p is None:
        return {k: v * inv for k, v in terms.items()}
    return {k: v * inv % p for k, v in terms.items()}


class GroebnerEngine:
    """Incremental Buchberger with normal pair strategy (minimal lcm degree
    first, ties by pair index) plus product and chain criteria."""

    def __init__(self, ctx, field: Field, budget: Budget):
        self.ctx = ctx
        self.field = field
        self.budget = budget
        self.G: list[dict] = []
        self.leads: list[int] = []
        self._ones: list = []
        self._heap: list = []
        self._pending: set = set()
        self._groups: dict[int, list[int]] = {}  # component bits -> indices

    def reduce(self, terms: dict) -> dict:
        return normal_form_terms(
            dict(terms),
            self.leads,
            self._ones,
            self.G,
            self.field.p,
            self.ctx.compmask,
            self.ctx.segs,
            self.ctx.guard,
        )

    def contains(self, terms: dict) -> bool:
        return not self.reduce(terms)

    def _append(self, terms: dict):
        t = len(self.G)
        self.G.append(terms)
        lk = max(terms)
        self.leads.append(lk)
        self._ones.append(1)
        # pairs exist only within a component group
        group = self._groups.setdefault(lk & self.ctx.compmask, [])
        for i in group:
            lcm_key = self.ctx.lcm(self.leads[i], lk)
            if lcm_key is None:
                continue
            heapq.heappush(self._heap, (self.ctx.degree(lcm_key), i, t, lcm_key))
            self._pending.add((i, t))
        group.append(t)

    def add_raw(self, terms: dict):
        """Insert a generator without pre-reduction (classic Buchberger)."""
        if terms:
            self._append(_monic(dict(terms), self.field))

    def add(self, terms: dict) -> bool:
        """Reduce, insert if nonzero, re-complete; True if basis grew."""
        nf = self.reduce(terms)
        if not nf:
            return False
        self._append(_monic(nf, self.field))
        self.complete()
        return True

    def complete(self):
        ctx, G, leads = self.ctx, self.G, self.leads
        p = self.field.p
        while self._heap:
            _, i, j, lcm_key = heapq.heappop(self._heap)
            self._pending.discard((i, j))
            self.budget.spend()
            if ctx.coprime(leads[i], leads[j], lcm_key):
                continue
            skip = False
            for t in self._groups.get(lcm_key & ctx.compmask, ()):
                if t == i or t == j:
                    continue
                if leads[t] > lcm_key or not divides_key(
                    leads[t], lcm_key, ctx.compmask, ctx.segs
                ):
                    continue
                a = (i, t) if i < t else (t, i)
                b = (j, t) if j < t else (t, j)
                if a not in self._pending and b not in self._pending:
                    skip = True
                    break
            if skip:
                continue
            s: dict = {}
            axpy_terms(s, G[i], 1, lcm_key - leads[i], p, ctx.guard)
            axpy_terms(s, G[j], -1, lcm_key - leads[j], p, ctx.guard)
            nf = self.reduce(s)
            if nf:
                self._append(_monic(nf, self.field))

    def reduced_basis(self) -> list[dict]:
        """Unique reduced (monic, auto-reduced) basis, sorted by lead key."""
        ctx = self.ctx
        order = sorted(range(len(self.G)), key=lambda t: self.leads[t])
        survivors: list[int] = []
        by_group: dict[int, list[int]] = {}
        for t in order:
            lk = self.leads[t]
            grp = by_group.setdefault(lk & ctx.compmask, [])
            if any(
                divides_key(self.leads[s], lk, ctx.compmask, ctx.segs) for s in grp
            ):
                continue
            survivors.append(t)
            grp.append(t)
        out = []
        for t in survivors:
            others = [s for s in survivors if s != t]
            nf = normal_form_terms(
                self.G[t],
                [self.leads[s] for s in others],
                [1] * len(others),
                [self.G[s] for s in others],
                self.field.p,
                ctx.compmask,
                ctx.segs,
                ctx.guard,
            )
            out.append(_monic(nf, self.field))
        return out


def buchberger(gens, ctx, field: Field, budget=None) -> list[dict]:
    """Reduced Groebner basis of the given term dicts."""
    engine = GroebnerEngine(ctx, field, _as_budget(budget))
    for g in gens:
        engine.add_raw(g)
    engine.complete()
    return engine.reduced_basis()


# -- ideals -----------------------------------------------------------------


class IdealHandle:
    """Generator list within a ring presentation with a cached reduced
    Groebner basis of the full preimage (generators + ring relations).

    The cache is write-once; concurrent duplicate computation is harmless
    because the reduced basis is canonical.
    """

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring: RingPresentation, gens):
        self.ring = ring
        parsed = []
        for g in gens:
            if isinstance(g, str):
                from .polyring import parse_poly

                g = parse_poly(g, ring)
            if g.ring is not ring:
                raise CakError("ideal generator from a different ring")
            if not g.is_zero():
                parsed.append(g)
        self.gens = tuple(parsed)
        self._gb = None

    def groebner_basis(self, budget=None) -> list[Polynomial]:
        if self._gb is None:
            ctx = RingContext(self.ring)
            dicts = [
                g.terms for g in itertools.chain(self.gens, self.ring.relations)
            ]
            gb = buchberger(dicts, ctx, self.ring.field, budget)
            self._gb = tuple(Polynomial(self.ring, d) for d in gb)
        return list(self._gb)

    def normal_form(self, p: Polynomial, budget=None) -> Polynomial:
        if p.ring is not self.ring:
            raise CakError("polynomial from a different ring")
        gb = self.groebner_basis(budget)
        ctx = RingContext(self.ring)
        nf = normal_form_terms(
            p.terms,
            [g.lead_key() for g in gb],
            [1] * len(gb),
            [g.terms for g in gb],
            self.ring.field.p,
            ctx.compmask,
            ctx.segs,
            ctx.guard,
        )
        return Polynomial(self.ring, nf)

    def contains_poly(self, p: Polynomial, budget=None) -> bool:
        return self.normal_form(p, budget).is_zero()

    def contains(self, other: "IdealHandle", budget=None) -> bool:
        self._check(other)
        return all(self.contains_poly(g, budget) for g in other.gens)

    def equal(self, other: "IdealHandle", budget=None) -> bool:
        self._check(other)
        mine = [g.terms for g in self.groebner_basis(budget)]
        theirs = [g.terms for g in other.groebner_basis(budget)]
        return mine == theirs

    def is_zero(self, budget=None) -> bool:
        return not self.groebner_basis(budget)

    def is_unit(self, budget=None) -> bool:
        gb = self.groebner_basis(budget)
        return len(gb) == 1 and gb[0].lead_key() == self.ring.one_key

    def _check(self, other):
        if self.ring is not other.ring:
            raise CakError("ideals live in different rings")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        self._check(other)
        return IdealHandle(self.ring, self.gens + other.gens)

    def product(self, other: "IdealHandle") -> "IdealHandle":
        self._check(other)
        gens = [a * b for a in self.gens for b in other.gens]
        return IdealHandle(self.ring, gens)

    def power(self, n: int) -> "IdealHandle":
        if n < 1:
            raise PreconditionError("ideal power wants an exponent >= 1")
        out = self
        for _ in range(n - 1):
            out = out.product(self)
        return out

    def intersection(self, other: "IdealHandle", budget=None) -> "IdealHandle":
        self._check(other)
        a = list(self.gens) + list(self.ring.relations)
        b = list(other.gens) + list(other.ring.relations)
        if not a or not b:
            return IdealHandle(self.ring, ())
        cols = [[f] for f in a] + [[g] for g in b]
        syz = module_syzygies(self.ring, cols, budget=budget)
        gens = []
        for col in syz:
            acc = self.ring.zero()
            for coeff, f in zip(col[: len(a)], a):
                acc = acc + coeff * f
            if not acc.is_zero():
                gens.append(acc)
        return IdealHandle(self.ring, gens)

    def colon(self, other: "IdealHandle", budget=None) -> "IdealHandle":
        """(self : other), computed generator-by-generator via syzygies."""
        self._check(other)
        others = [g for g in other.gens if not g.is_zero()]
        if not others:
            return IdealHandle(self.ring, [self.ring.one()])
        result = None
        full = list(self.gens) + list(self.ring.relations)
        for g in others:
            cols = [[g]] + [[f] for f in full]
            syz = module_syzygies(self.ring, cols, budget=budget)
            gens = [col[0] for col in syz if not col[0].is_zero()]
            part = IdealHandle(self.ring, gens)
            result = part if result is None else result.intersection(part, budget)
        return result


def ideal_ops(op: str, left: IdealHandle, right=None, budget=None):
    """Dispatch ideal arithmetic per the CLI surface."""
    if op == "sum":
        return left + right
    if op == "product":
        return left.product(right)
    if op == "power":
        return left.power(int(right))
    if op == "intersection":
        return left.intersection(right, budget)
    if op == "colon":
        return left.colon(right, budget)
    if op == "equal":
        return left.equal(right, budget)
    if op == "contains":
        return left.contains(right, budget)
    raise CakError(f"unknown ideal op {op!r}")


def groebner_basis(ideal: IdealHandle, budget=None) -> list[Polynomial]:
    return ideal.groebner_basis(budget)


def normal_form(p: Polynomial, ideal: IdealHandle, budget=None) -> Polynomial:
    return ideal.normal_form(p, budget)


# -- syzygies ----------------------------------------------------------------


def module_syzygies(
    ring: RingPresentation,
    columns,
    *,
    budget=None,
    quotient_relations=(),
    nrows: int | None = None,
):
    """Generators of the syzygy module of the given columns.

    Each column is a list of polynomials (one per row).  When
    ``quotient_relations`` is nonempty the syzygies are taken over
    R = S/(relations): the relation multiples of every basis vector are
    adjoined as extra columns whose coefficients are discarded.

    Returns a list of syzygy columns of length ``len(columns)``.
    """
    columns = [list(c) for c in columns]
    if not columns:
        return []
    if nrows is None:
        nrows = len(columns[0])
    ncols = len(columns)
    ctx = ModuleContext(ring, nrows + ncols, fhigh=nrows)
    field = ring.field
    one = field.coerce(1)
    gens = []
    for j, col in enumerate(columns):
        if len(col) != nrows:
            raise CakError("ragged matrix")
        terms = {}
        for i, poly in enumerate(col):
            for k, c in poly.terms.items():
                terms[ctx.key(i, k)] = c
        terms[ctx.key(nrows + j, ring.one_key)] = one
        gens.append(terms)
    for rel in quotient_relations:
        for i in range(nrows):
            terms = {ctx.key(i, k): c for k, c in rel.terms.items()}
            gens.append(terms)
    gb = buchberger(gens, ctx, field, budget)
    out = []
    for g in gb:
        if any(k & ctx.blockbit for k in g):
            continue
        per = [dict() for _ in range(ncols)]
        for k, c in g.items():
            comp, mono = ctx.decode(k)
            per[comp - nrows][mono] = c
        out.append([Polynomial(ring, d) for d in per])
    return out


def module_membership_engine(
    ring: RingPresentation,
    columns,
    nrows: int,
    *,
    quotient_relations=(),
    budget=None,
):
    """Membership oracle for the submodule generated by ``columns`` plus the
    quotient relations times every basis vector.  Returns (ctx, engine)."""
    ctx = ModuleContext(ring, nrows)
    engine = GroebnerEngine(ctx, ring.field, _as_budget(budget))
    for rel in quotient_relations:
        for i in range(nrows):
            engine.add_raw({ctx.key(i, k): c for k, c in rel.terms.items()})
    for col in columns:
        engine.add_raw(ctx.from_column(col))
    engine.complete()
    return ctx, engine


def minimal_generator_count(ring: RingPresentation, gens, budget=None) -> int:
    """mu of a homogeneous ideal over the local graded ring ring/(relations)."""
    gens = [g for g in gens if not g.is_zero()]
    degs = []
    for g in gens:
        d = g.homogeneous_degree()
        if d is None:
            raise PreconditionError("minimal generator count wants homogeneous input")
        degs.append(d)
    kept = minimal_generating_subset(
        ring, [[g] for g in gens], degs, nrows=1,
        quotient_relations=tuple(ring.relations), budget=budget,
    )
    return len(kept)


def minimal_generating_subset(
    ring: RingPresentation,
    columns,
    degrees,
    *,
    nrows: int | None = None,
    quotient_relations=(),
    budget=None,
):
    """Indices of a minimal homogeneous generating subset of the columns.

    Requires the stated degrees; columns are visited in weakly increasing
    degree (ties by index), keeping a column iff it is not a combination of
    the kept ones, which by the graded Nakayama argument yields a minimal
    generating set.
    """
    columns = [list(c) for c in columns]
    if not columns:
        return []
    if nrows is None:
        nrows = len(columns[0])
    ctx = ModuleContext(ring, nrows)
    budget = _as_budget(budget)
    engine = GroebnerEngine(ctx, ring.field, budget)
    for rel in quotient_relations:
        for i in range(nrows):
            engine.add_raw({ctx.key(i, k): c for k, c in rel.terms.items()})
    engine.complete()
    kept = []
    for idx in sorted(range(len(columns)), key=lambda t: (degrees[t], t)):
        elem = ctx.from_column(columns[idx])
        if engine.add(elem):
            kept.append(idx)
    return sorted(kept)


# -- elimination and ring maps ----------------------------------------------


def eliminate(ideal: IdealHandle, drop_vars, budget=None) -> IdealHandle:
    """Generators of (ideal + relations) intersected with k[remaining vars].

    The result lives in a fresh presentation on the remaining variables.
    """
    ring = ideal.ring
    drop = set(drop_vars)
    unknown = drop - set(ring.vars)
    if unknown:
        raise CakError(f"cannot drop unknown variables {sorted(unknown)}")
    drop_idx = tuple(i for i, v in enumerate(ring.vars) if v in drop)
    keep_idx = tuple(i for i, v in enumerate(ring.vars) if v not in drop)
    keep_names = [ring.vars[i] for i in keep_idx]
    if not drop_idx:
        new_ring = ring.restrict(keep_names)
        return IdealHandle(
            new_ring,
            [g.reencode(new_ring) for g in itertools.chain(ideal.gens, ring.relations)],
        )
    elim_ring = ring.polynomial_ambient().with_blocks((drop_idx, keep_idx))
    ctx = RingContext(elim_ring)
    dicts = [
        g.reencode(elim_ring).terms
        for g in itertools.chain(ideal.gens, ring.relations)
    ]
    gb = buchberger(dicts, ctx, ring.field, budget)
    drop_block = elim_ring._layout[0]
    new_ring = ring.restrict(keep_names)
    kept = []
    for terms in gb:
        if all(k & drop_block.cmask == drop_block.cmask for k in terms):
            kept.append(Polynomial(elim_ring, terms).reencode(new_ring))
    return IdealHandle(new_ring, kept)


class RingMap:
    """Ring homomorphism given by the images of the source variables."""

    def __init__(self, source: RingPresentation, target: RingPresentation, images):
        if len(images) != len(source.vars):
            raise CakError("one image per source variable required")
        if source.field != target.field:
            raise CakError("source and target must share the coefficient field")
        imgs = []
        for im in images:
            if isinstance(im, str):
                from .polyring import parse_poly

                im = parse_poly(im, target)
            if im.ring is not target:
                raise CakError("image from a different ring")
            imgs.append(im)
        self.source = source
        self.target = target
        self.images = tuple(imgs)

    def is_graded(self) -> bool:
        for w, im in zip(self.source.weights, self.images):
            if im.is_zero():
                continue
            if im.homogeneous_degree() != w:
                return False
        return True

    def apply(self, p: Polynomial) -> Polynomial:
        """Image of a source polynomial."""
        if p.ring is not self.source:
            raise CakError("polynomial from a different ring")
        out = self.target.zero()
        src = self.source
        for k, c in p.terms.items():
            term = self.target.constant(c)
            for i, e in enumerate(src.decode(k)):
                if e:
                    term = term * self.images[i] ** e
            out = out + term
        return out


def ring_map_kernel(rmap: RingMap, budget=None) -> IdealHandle:
    """Kernel ideal of the map in its source ring (graph + elimination)."""
    src, tgt = rmap.source, rmap.target
    rename = {}
    for v in tgt.vars:
        nv = v
        while nv in src.var_index or nv in rename.values():
            nv = "_" + nv
        rename[v] = nv
    uvars = [rename[v] for v in tgt.vars] + list(src.vars)
    uweights = list(tgt.weights) + list(src.weights)
    nt = len(tgt.vars)
    blocks = (tuple(range(nt)), tuple(range(nt, nt + len(src.vars))))
    uring = RingPresentation(uvars, uweights, src.field, (), blocks)

    def move_target(p: Polynomial) -> Polynomial:
        out = {}
        for k, c in p.terms.items():
            expo = tgt.decode(k)
            target = [0] * len(uvars)
            target[: len(expo)] = expo
            out[uring.encode(tuple(target))] = c
        return Polynomial(uring, out)

    gens = [move_target(r) for r in tgt.relations]
    for i, v in enumerate(src.vars):
        gens.append(uring.var(v) - move_target(rmap.images[i]))
    ctx = RingContext(uring)
    gb = buchberger([g.terms for g in gens], ctx, src.field, budget)
    drop_block = uring._layout[0]
    kept = []
    for terms in gb:
        if all(k & drop_block.cmask == drop_block.cmask for k in terms):
            kept.append(Polynomial(uring, terms).reencode(src.polynomial_ambient()).transfer(src))
    return IdealHandle(src, kept)


# -- standard monomials -------------------------------------------------------


def lead_exponents(ideal: IdealHandle, budget=None):
    """Exponent vectors of the minimal generators of the lead-term ideal."""
    ring = ideal.ring
    return [ring.decode(g.lead_key()) for g in ideal.groebner_basis(budget)]


def standard_monomials(ideal: IdealHandle, budget=None) -> list[Monomial]:
    """Monomials outside the lead-term ideal of (gens + relations).

    Errors when some variable has no pure power among the lead terms, in
    which case the quotient is not a finite-dimensional vector space.
    """
    ring = ideal.ring
    leads = lead_exponents(ideal, budget)
    n = len(ring.vars)
    if any(sum(e) == 0 for e in leads):
        return []  # unit ideal: the quotient is the zero space
    bounds = [None] * n
    for e in leads:
        support = [i for i in range(n) if e[i]]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or e[i] < bounds[i]:
                bounds[i] = e[i]
    missing = [ring.vars[i] for i in range(n) if bounds[i] is None]
    if missing:
        raise NotArtinianError(
            "quotient is not finite-dimensional: no pure power of "
            + ", ".join(missing)
            + " in the lead-term ideal"
        )
    out = []
    for expo in itertools.product(*[range(b) for b in bounds]):
        if any(all(expo[i] >= e[i] for i in range(n)) for e in leads):
            continue
        out.append(expo)
    out.sort(key=ring.encode)
    return [Monomial(ring, e) for e in out]
