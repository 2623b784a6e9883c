import math

import pytest

from cak import RingPresentation
from cak.errors import NotArtinianError, PreconditionError
from cak.groebner import IdealHandle
from cak.resolve import (
    ChainComplex,
    GradedFreeModule,
    PolyMatrix,
    PresentedModule,
    alternating_twist_sum,
    graded_rank_check,
    is_regular_sequence,
    minimal_free_resolution,
    minimalize,
    module_length,
    quotient_hilbert_numerator,
    syzygies,
)
from conftest import P, PL, R1_RELATIONS


def test_syzygy_koszul_pair(kxy):
    mat = PolyMatrix(kxy, [PL(kxy, "x; y")])
    out = syzygies(mat)
    assert out.ncols == 1
    assert [str(p) for p in out.column(0)] == ["-y", "x"]


def test_syzygy_nonzerodivisor(kxy):
    out = syzygies(PolyMatrix(kxy, [[P(kxy, "x")]]))
    assert out.ncols == 0


def test_syzygy_hilbert_burch():
    # minors ordered (d12, d13, d23): the syzygy of row (a1, a2, a3) is the
    # cofactor vector (a3, -a2, a1)
    ring = RingPresentation(["X", "Y", "Z"], [10, 14, 16])
    minors = PL(ring, "X*Z^2 - Y^3; X^3 - Y*Z; X^2*Y^2 - Z^3")
    mat = PolyMatrix(ring, [minors])
    syz = syzygies(mat)
    assert syz.ncols == 2
    cofactor_rows = [
        PL(ring, "Z; -Y^2; X"),
        PL(ring, "X^2; -Z^2; Y"),
    ]
    from cak.groebner import Budget, GroebnerEngine, ModuleContext

    def engine_for(cols):
        ctx = ModuleContext(ring, 3)
        eng = GroebnerEngine(ctx, ring.field, Budget())
        for col in cols:
            eng.add_raw(ctx.from_column(col))
        eng.complete()
        return ctx, eng

    ctx, eng = engine_for(cofactor_rows)
    for j in range(2):
        assert eng.contains(ctx.from_column(syz.column(j)))
    ctx2, eng2 = engine_for([syz.column(j) for j in range(2)])
    for col in cofactor_rows:
        assert eng2.contains(ctx2.from_column(col))


def test_resolution_monomial_curve(r1_ambient):
    res = minimal_free_resolution(
        PresentedModule.cyclic(r1_ambient, PL(r1_ambient, R1_RELATIONS))
    )
    assert res.total_ranks() == (1, 4, 5, 2)
    assert res.complex.length == 3
    assert res.complete
    assert res.complex.composition_defect() is None


def test_resolution_residue_field(kxy):
    res = minimal_free_resolution(PresentedModule.cyclic(kxy, PL(kxy, "x; y")))
    assert res.total_ranks() == (1, 2, 1)


def test_resolution_square_three_vars():
    ring = RingPresentation(["x1", "x2", "x3"], [1, 1, 1])
    Q2 = IdealHandle(ring, PL(ring, "x1; x2; x3")).power(2)
    res = minimal_free_resolution(PresentedModule.cyclic(ring, Q2.gens))
    assert res.total_ranks() == (1, 6, 8, 3)


def test_resolution_minimality_positive_degrees(r1_ambient):
    res = minimal_free_resolution(
        PresentedModule.cyclic(r1_ambient, PL(r1_ambient, R1_RELATIONS))
    )
    for mat in res.complex.maps:
        for row in mat.entries:
            for p in row:
                assert p.is_zero() or p.degree() > 0


def test_betti_invariance_redundant_generators(r1_ambient):
    gens = PL(r1_ambient, R1_RELATIONS)
    redundant = gens + [gens[0] * gens[1], gens[2].scale(7)]
    shuffled = redundant[::-1]
    res = minimal_free_resolution(PresentedModule.cyclic(r1_ambient, shuffled))
    base = minimal_free_resolution(PresentedModule.cyclic(r1_ambient, gens))
    assert res.betti.entries == base.betti.entries


def test_presentation_unit_cancellation(kxy):
    amb = GradedFreeModule(kxy, (0, -1))
    mat = PolyMatrix(kxy, [[kxy.one(), P(kxy, "x^2")], [kxy.zero(), P(kxy, "x^3")]])
    res = minimal_free_resolution(PresentedModule(kxy, amb, mat))
    # the unit entry folds the presentation down to one generator
    assert res.total_ranks() == (1, 1)
    assert str(res.complex.differential(1).entries[0][0]) == "x^3"


def test_minimalize_unit_complex(kxy):
    modules = [GradedFreeModule(kxy, (0,)), GradedFreeModule(kxy, (0,))]
    maps = [PolyMatrix(kxy, [[kxy.one()]])]
    out = minimalize(ChainComplex(kxy, modules, maps, check=False))
    assert out.ranks() == (0,)


def test_minimalize_idempotent_on_minimal(r1_ambient):
    res = minimal_free_resolution(
        PresentedModule.cyclic(r1_ambient, PL(r1_ambient, R1_RELATIONS))
    )
    out = minimalize(res.complex)
    assert out.ranks() == res.complex.ranks()


def test_module_length_examples(kxy, r1_ambient):
    assert module_length(IdealHandle(kxy, PL(kxy, "x^2; x*y; y^2"))) == 3
    ring3 = RingPresentation(["x1", "x2", "x3"], [1, 1, 1])
    assert module_length(IdealHandle(ring3, PL(ring3, "x1; x2; x3"))) == 1
    gens = PL(r1_ambient, R1_RELATIONS) + PL(r1_ambient, "X; Z; W")
    assert module_length(IdealHandle(r1_ambient, gens)) == 2
    with pytest.raises(NotArtinianError, match="not Artinian at origin"):
        module_length(IdealHandle(kxy, PL(kxy, "x")))


@pytest.mark.parametrize(
    "n,i,expected",
    [(2, 1, 2), (3, 2, 6), (2, 3, 4), (1, 2, 1), (3, 1, 3)],
)
def test_graded_rank_check(n, i, expected):
    ring = RingPresentation([f"x{k}" for k in range(1, n + 1)], [1] * n)
    Q = IdealHandle(ring, ring.gens())
    assert graded_rank_check(ring, Q, i) == expected
    assert expected == math.comb(i + n - 1, n - 1)


def test_graded_rank_check_rejects_nonregular():
    ring = RingPresentation(["x1", "x2", "x3"], [1, 1, 1])
    bad = IdealHandle(ring, PL(ring, "x1; x1*x2"))
    with pytest.raises(PreconditionError, match="non-regular"):
        graded_rank_check(ring, bad, 1)


def test_graded_rank_check_non_artinian_branch():
    # a regular sequence shorter than the variable count: Koszul-certified
    ring = RingPresentation(["x1", "x2", "x3"], [1, 1, 1])
    Q = IdealHandle(ring, PL(ring, "x1; x2"))
    assert graded_rank_check(ring, Q, 2) == 3


def test_is_regular_sequence(kxy, kxyz):
    assert is_regular_sequence(kxy, PL(kxy, "x; y"))
    assert not is_regular_sequence(kxy, PL(kxy, "x; x*y"))
    assert is_regular_sequence(kxyz, PL(kxyz, "x; y; z"))
    quotient = kxyz.extend_relations(PL(kxyz, "z"))
    assert not is_regular_sequence(
        quotient, PL(quotient, "x; y; z")
    )


def test_filtration_length_additivity():
    # len(S/Q^l) = sum of binom(i+n-1, n-1) * len(S/Q) over i < l
    for n in (2, 3):
        ring = RingPresentation([f"x{k}" for k in range(1, n + 1)], [1] * n)
        Q = IdealHandle(ring, ring.gens())
        len_sq = module_length(Q)
        for ell in (2, 3):
            total = module_length(Q.power(ell))
            expected = sum(
                math.comb(i + n - 1, n - 1) * len_sq for i in range(ell)
            )
            assert total == expected


def test_euler_characteristic_identity(r1_ambient):
    gens = PL(r1_ambient, R1_RELATIONS)
    res = minimal_free_resolution(PresentedModule.cyclic(r1_ambient, gens))
    lhs = alternating_twist_sum(res.complex)
    rhs = quotient_hilbert_numerator(r1_ambient, [[g] for g in gens], (0,))
    assert lhs == rhs


def test_resolution_over_quotient_requires_bound(r1_ring):
    M = PresentedModule.cyclic(r1_ring, PL(r1_ring, "X"))
    with pytest.raises(PreconditionError):
        minimal_free_resolution(M, over_quotient=True)


def test_resolution_of_rank_two_module(kxy):
    # coker of [[x, y^2], [y, 0]]: a non-cyclic graded module
    amb = GradedFreeModule(kxy, (0, 0))
    mat = PolyMatrix(kxy, [PL(kxy, "x; y^2"), PL(kxy, "y; 0")])
    res = minimal_free_resolution(PresentedModule(kxy, amb, mat))
    assert res.complete
    cx = res.complex
    assert cx.composition_defect() is None
    assert cx.modules[0].rank == 2
    from cak.complexes import verify_resolution

    rep = verify_resolution(cx, PresentedModule(kxy, amb, mat))
    assert rep.ok, rep.messages


def test_computed_resolution_self_verifies(r1_ambient):
    from cak.complexes import verify_resolution

    target = PresentedModule.cyclic(r1_ambient, PL(r1_ambient, R1_RELATIONS))
    res = minimal_free_resolution(target)
    rep = verify_resolution(res.complex, target)
    assert rep.ok, rep.messages
