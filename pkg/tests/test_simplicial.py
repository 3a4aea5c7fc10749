import random

import pytest
from hypothesis import given, strategies as st

from helpers import mono, poly, rand_complex
from seqcm.algebra import AlgebraError, Field, QQ
from seqcm.analysis import as_module, is_scm_schenzel, lc_series
from seqcm.monomial import MonomialIdeal, NotMonomialError
from seqcm.simplicial import (
    SimplicialComplex, alexander_dual, complex_of_ideal, has_linear_resolution, hochster_lc, is_cm,
    is_componentwise_linear, is_scm_duval, pure_skeleton, reduced_homology, stanley_reisner_ideal,
)

SQUARE = SimplicialComplex.parse("complex on 4: {1,2} {2,3} {3,4} {1,4}")
TWO_EDGES = SimplicialComplex.parse("complex on 4: {1,2} {3,4}")
# six-vertex triangulation of the real projective plane
RP2 = SimplicialComplex(6, [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                            (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)])


def test_parse_and_facets():
    D = SimplicialComplex.parse("complex on 5: {1,2,3} {1,2} {4} {}")
    assert D.facets == (frozenset({1, 2, 3}), frozenset({4}))
    assert D.dimension == 2 and not D.is_pure()
    assert D.f_vector()[:3] == [1, 4, 3]
    with pytest.raises(AlgebraError):
        SimplicialComplex.parse("complex on 3: {1,4}")
    with pytest.raises(AlgebraError):
        SimplicialComplex.parse("complex 3: {1}")


def test_stanley_reisner_examples():
    assert stanley_reisner_ideal(SQUARE) == mono(4, "x1*x3, x2*x4")
    assert stanley_reisner_ideal(SimplicialComplex.simplex(3)) == MonomialIdeal(3)
    assert complex_of_ideal(mono(4, "x1*x3, x2*x4")) == SQUARE
    with pytest.raises(NotMonomialError):
        complex_of_ideal(mono(2, "x1**2"))


@given(st.integers(0, 10_000))
def test_stanley_reisner_round_trip(seed):
    D = rand_complex(random.Random(seed))
    I = stanley_reisner_ideal(D)
    assert I.is_squarefree()
    assert complex_of_ideal(I) == D
    # Hilbert series of k[D] from the f-vector: sum_i f_{i-1} z^i / (1 - z)^i
    hs = as_module(I).hilbert_series()
    assert hs.dimension == D.dimension + 1


def test_void_and_irrelevant_complexes():
    void = SimplicialComplex.void(3)
    irr = SimplicialComplex(3, [()])
    assert void.is_void() and not irr.is_void()
    assert stanley_reisner_ideal(void).is_unit()
    assert stanley_reisner_ideal(irr) == mono(3, "x1, x2, x3")
    assert reduced_homology(void) == {} and reduced_homology(irr) == {-1: 1}
    assert is_cm(void) and is_cm(irr)
    assert is_scm_duval(void) and is_scm_duval(irr)
    assert alexander_dual(void) == SimplicialComplex.simplex(3)
    assert alexander_dual(SimplicialComplex.simplex(3)) == void


def test_pure_skeleton():
    D = SimplicialComplex.parse("complex on 4: {1,2,3} {3,4}")
    assert pure_skeleton(D, 1).facets == tuple(sorted(
        (frozenset(s) for s in ({1, 2}, {1, 3}, {2, 3}, {3, 4})), key=lambda f: sorted(f)))
    assert pure_skeleton(D, 2) == SimplicialComplex(4, [(1, 2, 3)])
    assert pure_skeleton(D, -1) == SimplicialComplex(4, [()])
    with pytest.raises(AlgebraError):
        pure_skeleton(D, 3)


def test_reduced_homology_examples():
    assert reduced_homology(SQUARE) == {-1: 0, 0: 0, 1: 1}
    assert reduced_homology(TWO_EDGES) == {-1: 0, 0: 1, 1: 0}
    assert reduced_homology(SimplicialComplex.simplex(4)) == {i: 0 for i in range(-1, 4)}
    # the projective plane sees 2-torsion only over F_2
    assert reduced_homology(RP2) == {-1: 0, 0: 0, 1: 0, 2: 0}
    assert reduced_homology(RP2, Field(2)) == {-1: 0, 0: 0, 1: 1, 2: 1}


def test_cohen_macaulay_complexes():
    assert is_cm(SQUARE)
    assert not is_cm(TWO_EDGES)
    assert is_cm(RP2) and not is_cm(RP2, Field(2))
    report = is_scm_duval(TWO_EDGES)
    assert not report and report.failing == (1,)
    assert is_scm_duval(SimplicialComplex.parse("complex on 5: {1,2,3} {3,4} {5}"))


def test_alexander_dual_examples():
    assert alexander_dual(SQUARE) == TWO_EDGES.__class__(4, [(1, 3), (2, 4)])
    # Eagon-Reiner: D is CM iff I of the dual has a linear resolution
    dual = alexander_dual(SQUARE)
    assert is_componentwise_linear(stanley_reisner_ideal(dual))


@given(st.integers(0, 10_000))
def test_alexander_dual_is_an_involution(seed):
    D = rand_complex(random.Random(seed))
    assert alexander_dual(alexander_dual(D)) == D


def test_componentwise_linear_examples():
    rep = is_componentwise_linear(mono(2, "x1**2, x2**3"))
    assert not rep and rep.failing_degree == 3 and rep.method == "components"
    assert is_componentwise_linear(mono(3, "x1*x2, x2*x3"))
    assert not is_componentwise_linear(mono(4, "x1*x2, x3*x4"))
    assert is_componentwise_linear(mono(3, "x1**2, x1*x2, x2**2, x1*x3"))
    assert has_linear_resolution([poly(3, "x1**2"), poly(3, "x1*x2"), poly(3, "x2**2")], 3)
    assert not has_linear_resolution([poly(3, "x1**2"), poly(3, "x2**2")], 3)


def test_componentwise_linear_squarefree_route_agrees_with_resolutions():
    rng = random.Random(5)
    for _ in range(15):
        I = stanley_reisner_ideal(rand_complex(rng, nmax=5))
        if I.is_unit() or not I.gens:
            continue
        fast = bool(is_componentwise_linear(I))
        slow = bool(is_componentwise_linear(I.to_elements()))
        assert fast == slow


def test_hochster_examples():
    D = SimplicialComplex.parse("complex on 5: {1,2,3} {3,4} {5}")
    assert [str(hochster_lc(D, i)) for i in range(4)] == ["0", "z/(z-1)", "z/(z-1)^2", "1/(z-1)^3"]
    assert hochster_lc(SimplicialComplex.simplex(3), 3) == lc_series(as_module(MonomialIdeal(3)), 3)


@given(st.integers(0, 10_000))
def test_duval_agrees_with_schenzel_and_hochster(seed):
    D = rand_complex(random.Random(seed), nmax=6)
    I = stanley_reisner_ideal(D)
    M = as_module(I)
    assert bool(is_scm_duval(D)) == bool(is_scm_schenzel(M))
    for i in range(I.n + 1):
        assert hochster_lc(D, i) == lc_series(M, i)
    assert bool(is_componentwise_linear(stanley_reisner_ideal(alexander_dual(D)))) == bool(is_scm_duval(D))


def test_field_dependence_reaches_scm_verdicts():
    assert is_scm_duval(RP2, QQ)
    assert not is_scm_duval(RP2, Field(2))
