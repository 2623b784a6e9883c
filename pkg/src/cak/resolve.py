"""Graded free modules, syzygies, minimal free resolutions, Betti tables,
lengths and Hilbert-series bookkeeping.

Resolutions are computed syzygy-by-syzygy.  Every step keeps a minimal
generating set (graded Nakayama greedy), so all differentials have entries of
strictly positive weighted degree and the ranks are Betti numbers; a final
unit-cancellation pass (`minimalize`) exists for complexes built by other
constructors (mapping cones, tensor products).
"""

from __future__ import annotations

import math

from .errors import CakError, NotArtinianError, PreconditionError
from .groebner import (
    IdealHandle,
    ModuleContext,
    GroebnerEngine,
    _as_budget,
    minimal_generating_subset,
    minimal_generator_count,
    module_syzygies,
    standard_monomials,
)
from .polyring import Polynomial, RingPresentation


class GradedFreeModule:
    """Free module with one integer degree shift per basis element."""

    __slots__ = ("ring", "twists")

    def __init__(self, ring: RingPresentation, twists):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)

    @property
    def rank(self) -> int:
        return len(self.twists)

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeModule)
            and self.ring is other.ring
            and self.twists == other.twists
        )

    def __repr__(self):
        return f"F(rank {self.rank}, twists {self.twists})"


class PolyMatrix:
    """Dense matrix of polynomials, row-major.  Columns are module elements."""

    __slots__ = ("ring", "nrows", "ncols", "entries")

    def __init__(self, ring: RingPresentation, entries, ncols: int | None = None):
        self.ring = ring
        self.entries = tuple(tuple(row) for row in entries)
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else (ncols or 0)
        for row in self.entries:
            if len(row) != self.ncols:
                raise CakError("ragged matrix")
            for p in row:
                if p.ring is not ring:
                    raise CakError("matrix entry from a different ring")

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def from_columns(cls, ring, nrows, columns):
        cols = list(columns)
        rows = [[col[i] for col in cols] for i in range(nrows)]
        return cls(ring, rows, ncols=len(cols))

    def column(self, j) -> list[Polynomial]:
        return [self.entries[i][j] for i in range(self.nrows)]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def compose(self, other: "PolyMatrix") -> "PolyMatrix":
        """Matrix product self * other."""
        if self.ncols != other.nrows:
            raise CakError("matrix shapes do not compose")
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, ncols=other.ncols)

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[fn(p) for p in row] for row in self.entries])

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"


def column_degree(ring, column, ambient_twists):
    """Internal degree of a homogeneous column; None for the zero column."""
    deg = None
    for i, p in enumerate(column):
        if p.is_zero():
            continue
        d = p.homogeneous_degree()
        if d is None:
            raise CakError("matrix column is not homogeneous")
        d += ambient_twists[i]
        if deg is None:
            deg = d
        elif deg != d:
            raise CakError("matrix column has inconsistent degrees")
    return deg


class PresentedModule:
    """Cokernel presentation: ambient graded free module and a relation
    matrix whose columns are the relations."""

    __slots__ = ("ring", "ambient", "relations", "column_degrees")

    def __init__(self, ring, ambient: GradedFreeModule, relations: PolyMatrix):
        if relations.nrows != ambient.rank:
            raise CakError("relation matrix must have one row per ambient basis element")
        self.ring = ring
        self.ambient = ambient
        self.relations = relations
        degs = []
        for j in range(relations.ncols):
            d = column_degree(ring, relations.column(j), ambient.twists)
            degs.append(d)
        self.column_degrees = tuple(degs)

    @classmethod
    def cyclic(cls, ring, gens) -> "PresentedModule":
        """R/(gens) as a module over the ring presentation."""
        gens = [g for g in gens if not g.is_zero()]
        amb = GradedFreeModule(ring, (0,))
        return cls(ring, amb, PolyMatrix(ring, [list(gens)]))

    @classmethod
    def free(cls, ring, twists=(0,)) -> "PresentedModule":
        amb = GradedFreeModule(ring, twists)
        return cls(ring, amb, PolyMatrix(ring, [[] for _ in range(len(twists))]))


class ChainComplex:
    """Complex of graded free modules; maps[i] : modules[i+1] -> modules[i]."""

    __slots__ = ("ring", "modules", "maps")

    def __init__(self, ring, modules, maps, check: bool = True):
        self.ring = ring
        self.modules = list(modules)
        self.maps = list(maps)
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise CakError("complex needs one map between consecutive modules")
        for i, m in enumerate(self.maps):
            if m.nrows != self.modules[i].rank or m.ncols != self.modules[i + 1].rank:
                raise CakError(f"map {i + 1} has the wrong shape")
        if check:
            err = self.composition_defect()
            if err is not None:
                raise CakError(f"d o d != 0 between steps {err} and {err + 1}")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def differential(self, i: int) -> PolyMatrix:
        """d_i : F_i -> F_{i-1} (1-based)."""
        return self.maps[i - 1]

    def ranks(self) -> tuple[int, ...]:
        return tuple(m.rank for m in self.modules)

    def composition_defect(self):
        """Index i where d_i o d_{i+1} != 0, or None if a complex."""
        for i in range(len(self.maps) - 1):
            if not self.maps[i].compose(self.maps[i + 1]).is_zero():
                return i + 1
        return None

    def betti_table(self) -> "BettiTable":
        entries = {}
        for i, mod in enumerate(self.modules):
            for t in mod.twists:
                entries[(i, t)] = entries.get((i, t), 0) + 1
        return BettiTable(entries)


class BettiTable:
    """Map (homological degree, internal degree) -> rank."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict):
        self.entries = dict(entries)

    def total_ranks(self) -> tuple[int, ...]:
        if not self.entries:
            return ()
        top = max(i for i, _ in self.entries)
        out = [0] * (top + 1)
        for (i, _), r in self.entries.items():
            out[i] += r
        return tuple(out)

    def as_rows(self):
        """Sorted [homological degree, internal degree, rank] triples."""
        return [[i, j, self.entries[(i, j)]] for (i, j) in sorted(self.entries)]

    def format_macaulay(self) -> str:
        """Rows indexed by internal degree - homological degree; rows with no
        entries (possible under non-standard weights) are skipped."""
        if not self.entries:
            return "(empty)"
        cols = range(max(i for i, _ in self.entries) + 1)
        slopes = sorted({j - i for (i, j) in self.entries})
        width = max(6, max(len(str(r)) for r in self.entries.values()) + 2)
        lines = ["      " + "".join(f"{i:>{width}}" for i in cols)]
        totals = self.total_ranks()
        lines.append("total:" + "".join(f"{t:>{width}}" for t in totals))
        for s in slopes:
            cells = []
            for i in cols:
                r = self.entries.get((i, s + i))
                cells.append(f"{r if r else '.':>{width}}")
            lines.append(f"{s:>5}:" + "".join(cells))
        return "\n".join(lines)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({self.total_ranks()})"


# -- syzygies and resolutions -------------------------------------------------


def syzygies(
    matrix: PolyMatrix,
    ambient_twists=None,
    *,
    quotient_relations=(),
    budget=None,
) -> PolyMatrix:
    """Matrix whose columns minimally generate the kernel of the map given
    by ``matrix`` (columns = images of basis vectors)."""
    ring = matrix.ring
    if ambient_twists is None:
        ambient_twists = (0,) * matrix.nrows
    col_degs = [
        column_degree(ring, matrix.column(j), ambient_twists)
        for j in range(matrix.ncols)
    ]
    cols = module_syzygies(
        ring,
        matrix.columns(),
        nrows=matrix.nrows,
        quotient_relations=quotient_relations,
        budget=budget,
    )
    twists = [d if d is not None else 0 for d in col_degs]
    degs = [column_degree(ring, c, twists) for c in cols]
    keep = minimal_generating_subset(
        ring, cols, degs, nrows=matrix.ncols,
        quotient_relations=quotient_relations, budget=budget,
    )
    return PolyMatrix.from_columns(ring, matrix.ncols, [cols[j] for j in keep])


class Resolution:
    """A computed free resolution with its Betti table."""

    __slots__ = ("complex", "betti", "complete")

    def __init__(self, complex: ChainComplex, complete: bool):
        self.complex = complex
        self.betti = complex.betti_table()
        self.complete = complete

    def total_ranks(self) -> tuple[int, ...]:
        return self.complex.ranks()


def _relations_handle(ring, budget) -> IdealHandle | None:
    if not ring.relations:
        return None
    h = IdealHandle(ring, ())
    h.groebner_basis(budget)
    return h


def presentation_minimalize(module: PresentedModule, budget=None):
    """Isomorphic presentation with no unit relation entries and no zero or
    redundant relation columns.  Returns a new PresentedModule."""
    ring = module.ring
    budget = _as_budget(budget)
    relh = _relations_handle(ring, budget)
    nf = (lambda p: relh.normal_form(p)) if relh else (lambda p: p)
    twists = list(module.ambient.twists)
    rows = [[nf(p) for p in row] for row in module.relations.entries]

    def find_unit():
        for i, row in enumerate(rows):
            for j, p in enumerate(row):
                if p.terms and set(p.terms) == {ring.one_key}:
                    return i, j
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        r, c = hit
        u_inv = ring.field.inv(rows[r][c].terms[ring.one_key])
        new_rows = []
        for i in range(len(rows)):
            if i == r:
                continue
            new_row = []
            for j in range(len(rows[0])):
                if j == c:
                    continue
                adj = rows[i][j] - rows[i][c].scale(u_inv) * rows[r][j]
                new_row.append(nf(adj))
            new_rows.append(new_row)
        rows = new_rows
        del twists[r]
        if not rows:
            break

    ncols = len(rows[0]) if rows else 0
    keep = []
    for j in range(ncols):
        if any(rows[i][j] for i in range(len(rows))):
            keep.append(j)
    rows = [[row[j] for j in keep] for row in rows]
    amb = GradedFreeModule(ring, twists)
    mat = PolyMatrix(ring, rows if rows else [[] for _ in range(len(twists))])
    return PresentedModule(ring, amb, mat)


class ResolutionBuilder:
    """Incremental minimal free resolution: one syzygy step at a time.

    Each step keeps a minimal generating set, so the produced differentials
    have positive-degree entries throughout and ranks are Betti numbers.
    ``over_quotient`` divides out the ring's relations (lift-to-ambient
    syzygies); minimal resolutions are then generally infinite.
    """

    def __init__(self, module: PresentedModule, budget=None, *, over_quotient=False):
        ring = module.ring
        if not over_quotient and ring.relations:
            raise PreconditionError(
                "ambient has relations: resolve over the quotient explicitly"
            )
        self.ring = ring
        self.budget = _as_budget(budget)
        self.qrels = tuple(ring.relations) if over_quotient else ()
        module = presentation_minimalize(module, self.budget)
        twists0 = module.ambient.twists
        self.modules = [GradedFreeModule(ring, twists0)]
        self.maps: list[PolyMatrix] = []
        self.complete = False
        cols = module.relations.columns()
        degs = [column_degree(ring, c, twists0) for c in cols]
        keep = minimal_generating_subset(
            ring, cols, degs, nrows=len(twists0),
            quotient_relations=self.qrels, budget=self.budget,
        )
        self._cols = [cols[j] for j in keep]
        self._degs = [degs[j] for j in keep]
        if not self._cols:
            self._cols = None
            self.complete = True

    def extend(self, n_maps: int):
        """Ensure at least ``n_maps`` differentials (or completion)."""
        ring = self.ring
        while len(self.maps) < n_maps and not self.complete:
            if self._cols is None:
                last = self.maps[-1]
                prev = self.modules[-1].twists
                syz = module_syzygies(
                    ring, last.columns(), nrows=last.nrows,
                    quotient_relations=self.qrels, budget=self.budget,
                )
                degs = [column_degree(ring, c, prev) for c in syz]
                kept = minimal_generating_subset(
                    ring, syz, degs, nrows=len(prev),
                    quotient_relations=self.qrels, budget=self.budget,
                )
                self._cols = [syz[j] for j in kept]
                self._degs = [degs[j] for j in kept]
            if not self._cols:
                self._cols = None
                self.complete = True
                break
            mat = PolyMatrix.from_columns(
                ring, self.modules[-1].rank, self._cols
            )
            self.maps.append(mat)
            self.modules.append(GradedFreeModule(ring, self._degs))
            self._cols = None

    def as_complex(self) -> ChainComplex:
        return ChainComplex(self.ring, self.modules, self.maps, check=False)


def minimal_free_resolution(
    module: PresentedModule,
    max_length: int | None = None,
    budget=None,
    *,
    over_quotient: bool = False,
) -> Resolution:
    """Minimal graded free resolution of coker(relations), to ``max_length``.

    Over the polynomial ambient the default length bound is the number of
    variables (the global-dimension bound), and the resolution is flagged
    complete when the kernel vanishes or that bound is reached.  With
    ``over_quotient`` the ring's relations are divided out (resolutions are
    generally infinite; an explicit ``max_length`` is required).
    """
    if over_quotient and max_length is None:
        raise PreconditionError(
            "resolutions over a quotient ring need an explicit length bound"
        )
    if max_length is None:
        max_length = len(module.ring.vars)
    builder = ResolutionBuilder(module, budget, over_quotient=over_quotient)
    builder.extend(max_length)
    complete = builder.complete
    if not complete and not over_quotient and len(builder.maps) >= len(module.ring.vars):
        # Hilbert bound: a minimal resolution over the polynomial ring stops
        complete = True
    return Resolution(builder.as_complex(), complete)


def minimalize(complex: ChainComplex, budget=None) -> ChainComplex:
    """Homotopy-equivalent complex with every unit (degree-0) differential
    entry cancelled.  Idempotent on already-minimal complexes."""
    ring = complex.ring
    relh = _relations_handle(ring, _as_budget(budget))
    nf = (lambda p: relh.normal_form(p)) if relh else (lambda p: p)
    mats = [[list(map(nf, row)) for row in m.entries] for m in complex.maps]
    twists = [list(m.twists) for m in complex.modules]

    def find_unit():
        for idx, mat in enumerate(mats):
            for r, row in enumerate(mat):
                for c, p in enumerate(row):
                    if p.terms and set(p.terms) == {ring.one_key}:
                        return idx, r, c
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        idx, r, c = hit
        mat = mats[idx]
        u_inv = ring.field.inv(mat[r][c].terms[ring.one_key])
        nrows, ncols = len(mat), len(mat[0])
        new = []
        for i in range(nrows):
            if i == r:
                continue
            row = []
            for j in range(ncols):
                if j == c:
                    continue
                row.append(nf(mat[i][j] - mat[i][c].scale(u_inv) * mat[r][j]))
            new.append(row)
        mats[idx] = new
        if idx + 1 < len(mats):
            mats[idx + 1] = [row for i, row in enumerate(mats[idx + 1]) if i != c]
        if idx - 1 >= 0:
            mats[idx - 1] = [
                [p for j, p in enumerate(row) if j != r] for row in mats[idx - 1]
            ]
        del twists[idx][r]
        del twists[idx + 1][c]

    while len(twists) > 1 and not twists[-1]:
        twists.pop()
        mats.pop()
    modules = [GradedFreeModule(ring, t) for t in twists]
    maps = [
        PolyMatrix(ring, m, ncols=modules[i + 1].rank) for i, m in enumerate(mats)
    ]
    return ChainComplex(ring, modules, maps, check=False)


# -- lengths, Hilbert data, regular sequences ---------------------------------


def module_length(ideal: IdealHandle, budget=None) -> int:
    """Vector-space dimension of ring/(ideal + relations); requires the
    quotient to be Artinian and supported at the origin."""
    try:
        return len(standard_monomials(ideal, budget))
    except NotArtinianError as e:
        raise NotArtinianError(f"not Artinian at origin: {e}") from None


def hilbert_numerator(gens, weights) -> dict[int, int]:
    """K-polynomial of S/(monomial ideal): numerator of the Hilbert series
    over the product of (1 - t^w).  ``gens`` are exponent tuples."""
    gens = _minimalize_monomials(gens)
    weights = tuple(weights)

    def wdeg(e):
        return sum(a * w for a, w in zip(e, weights))

    memo = {}

    def rec(fs):
        if not fs:
            return {0: 1}
        got = memo.get(fs)
        if got is not None:
            return got
        lst = sorted(fs, key=lambda e: (wdeg(e), e))
        pivot = lst[-1]
        rest = tuple(e for e in lst if e != pivot)
        base = rec(rest)
        colon = _minimalize_monomials(
            [tuple(max(a - b, 0) for a, b in zip(e, pivot)) for e in rest]
        )
        sub = rec(tuple(sorted(colon)))
        out = dict(base)
        shift = wdeg(pivot)
        for d, c in sub.items():
            out[d + shift] = out.get(d + shift, 0) - c
            if not out[d + shift]:
                del out[d + shift]
        memo[fs] = out
        return out

    return rec(tuple(sorted(gens)))


def _minimalize_monomials(gens):
    gens = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if any(all(h[i] <= g[i] for i in range(len(g))) for h in out):
            continue
        out.append(g)
    return tuple(out)


def lead_module_per_component(ring, columns, nrows, *, quotient_relations=(), budget=None):
    """Minimal monomial generators of the lead-term module, per component."""
    ctx = ModuleContext(ring, nrows)
    engine = GroebnerEngine(ctx, ring.field, _as_budget(budget))
    for rel in quotient_relations:
        for i in range(nrows):
            engine.add_raw({ctx.key(i, k): c for k, c in rel.terms.items()})
    for col in columns:
        engine.add_raw(ctx.from_column(col))
    engine.complete()
    per = [[] for _ in range(nrows)]
    for terms in engine.reduced_basis():
        comp, mono = ctx.decode(max(terms))
        per[comp].append(ring.decode(mono))
    return [_minimalize_monomials(g) for g in per]


def quotient_hilbert_numerator(ring, columns, twists, *, budget=None) -> dict[int, int]:
    """K-polynomial of coker(columns) inside the free module with the given
    twists, over the polynomial ambient."""
    per = lead_module_per_component(ring, columns, len(twists), budget=budget)
    out: dict[int, int] = {}
    for tau, gens in zip(twists, per):
        num = hilbert_numerator(gens, ring.weights)
        for d, c in num.items():
            out[d + tau] = out.get(d + tau, 0) + c
            if not out[d + tau]:
                del out[d + tau]
    return out


def alternating_twist_sum(complex: ChainComplex) -> dict[int, int]:
    """Sum over i of (-1)^i t^(twists of F_i), as an integer polynomial."""
    out: dict[int, int] = {}
    for i, mod in enumerate(complex.modules):
        s = -1 if i % 2 else 1
        for t in mod.twists:
            out[t] = out.get(t, 0) + s
            if not out[t]:
                del out[t]
    return out


def is_regular_sequence(ring, elems, budget=None) -> bool:
    """First-Koszul-homology test: the given homogeneous nonunits form a
    regular sequence iff every syzygy lies in the Koszul submodule."""
    elems = list(elems)
    budget = _as_budget(budget)
    if any(e.is_zero() for e in elems):
        return False
    for e in elems:
        if e.homogeneous_degree() is None:
            raise PreconditionError("regular-sequence test wants homogeneous elements")
        if e.degree() == 0:
            return False
    n = len(elems)
    if n == 0:
        return True
    qrels = tuple(ring.relations)
    syz = module_syzygies(
        ring, [[e] for e in elems], nrows=1,
        quotient_relations=qrels, budget=budget,
    )
    if n == 1:
        koszul_cols = []
    else:
        z = ring.zero()
        koszul_cols = []
        for i in range(n):
            for j in range(i + 1, n):
                col = [z] * n
                col[i] = elems[j]
                col[j] = -elems[i]
                koszul_cols.append(col)
    ctx = ModuleContext(ring, n)
    engine = GroebnerEngine(ctx, ring.field, budget)
    for rel in qrels:
        for i in range(n):
            engine.add_raw({ctx.key(i, k): c for k, c in rel.terms.items()})
    for col in koszul_cols:
        engine.add_raw(ctx.from_column(col))
    engine.complete()
    return all(engine.contains(ctx.from_column(col)) for col in syz)


def graded_rank_check(ring, q_ideal: IdealHandle, i: int, budget=None) -> int:
    """Minimal generator count of Q^i/Q^(i+1) for an ideal Q of the
    polynomial ring generated by a homogeneous regular sequence; asserts it
    equals binom(i + n - 1, n - 1).

    Regularity is certified by the length criterion (len(S/Q) * prod(weights)
    = prod(degrees)) when S/Q is Artinian, by first Koszul homology otherwise;
    in the Artinian case, the layer length is also checked against a free
    S/Q-module of the asserted rank.
    """
    budget = _as_budget(budget)
    if ring.relations:
        raise PreconditionError("graded_rank_check works over the polynomial ring")
    gens = list(q_ideal.gens)
    n = len(gens)
    if n == 0 or i < 1:
        raise PreconditionError("need a nonempty ideal and i >= 1")
    for g in gens:
        if g.homogeneous_degree() is None:
            raise PreconditionError("parameter ideal generators must be homogeneous")
    try:
        len_sq = module_length(q_ideal, budget)
    except NotArtinianError:
        len_sq = None
    if len_sq is not None and n == len(ring.vars):
        prod_deg = math.prod(g.degree() for g in gens)
        prod_w = math.prod(ring.weights)
        if len_sq * prod_w != prod_deg:
            raise PreconditionError("non-regular sequence detected (length test)")
    elif not is_regular_sequence(ring, gens, budget):
        raise PreconditionError("non-regular sequence detected (Koszul test)")
    qi = q_ideal.power(i)
    # Q^(i+1) sits inside m*Q^i, so mu(Q^i / Q^(i+1)) = mu(Q^i)
    mu = minimal_generator_count(ring, qi.gens, budget)
    expected = math.comb(i + n - 1, n - 1)
    if mu != expected:
        raise CakError(f"rank of Q^{i}/Q^{i + 1} is {mu}, expected {expected}")
    if len_sq is not None:
        layer = module_length(q_ideal.power(i + 1), budget) - module_length(qi, budget)
        if layer != expected * len_sq:
            raise CakError("layer length does not match a free S/Q-module of that rank")
    return mu
