import itertools
import random
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from helpers import mono, poly, quotient, rand_ideal, syms, to_sympy
from seqcm.algebra import QQ, FreeModule, ring
from seqcm.analysis import as_module, saturation
from seqcm.groebner import DegreeCapExceeded
from seqcm.hilbert import HilbertSeries, LCHilbert
from seqcm.homological import INF, GradedModule, free_resolution

EX1 = "x1**4, x1**2*x2**2, x1**3*x3, x1**2*x2*x3, x1**2*x2*x4"
GIULIO = ("x1**3, x1**2*x2*x4, x1*x5, x1*x6, x2*x5, x2*x6, x2**2*x7**2, x3*x5, x3*x6, x3*x7, "
          "x4*x5, x4*x6, x4*x7, x7**3")


def brute_hilbert_function(n, gens, upto):
    """dim_k (R/I)_d by ranks of multiplication matrices, computed in sympy."""
    xs = syms(n)
    sgens = [to_sympy(g) for g in gens]
    out = {}
    for d in range(upto + 1):
        basis = [sympy.Mul(*[x ** e for x, e in zip(xs, m)])
                 for m in itertools.product(range(d + 1), repeat=n) if sum(m) == d]
        index = {b: i for i, b in enumerate(basis)}
        rows = []
        for g in sgens:
            dg = sympy.Poly(g, *xs).total_degree()
            if dg > d:
                continue
            for m in itertools.product(range(d - dg + 1), repeat=n):
                if sum(m) != d - dg:
                    continue
                prod = sympy.Poly(sympy.expand(g * sympy.Mul(*[x ** e for x, e in zip(xs, m)])), *xs)
                row = [0] * len(basis)
                for mon, c in prod.terms():
                    row[index[sympy.Mul(*[x ** e for x, e in zip(xs, mon)])]] = c
                rows.append(row)
        rank = sympy.Matrix(rows).rank() if rows else 0
        out[d] = len(basis) - rank
    return out


def toric_quartic():
    """Kernel of x1,x2,x3,x4 -> a^4, a^3 b, a b^3, b^4, by sympy elimination."""
    a, b = sympy.symbols("a b")
    xs = syms(4)
    images = [a**4, a**3 * b, a * b**3, b**4]
    G = sympy.groebner([x - im for x, im in zip(xs, images)], a, b, *xs, order="lex")
    kernel = [g for g in G.exprs if not g.has(a) and not g.has(b)]
    return GradedModule(ring(4), [poly(4, str(g)) for g in kernel])


# ---------------------------------------------------------------- Hilbert series


def test_hilbert_series_examples():
    assert quotient(2, "").hilbert_series() == HilbertSeries.from_parts({0: 1}, 2)
    # standard monomials 1, x1, x2, x2^2, ... give (1 + z - z^2)/(1 - z)
    assert quotient(2, "x1**2, x1*x2").hilbert_series() == HilbertSeries.from_parts({0: 1, 1: 1, 2: -1}, 1)
    assert str(quotient(2, "x1**2, x1*x2").hilbert_series()) == "(1 + z - z^2)/(1-z)"


@pytest.mark.parametrize("n,text", [
    (3, "x1**2 - x2*x3, x1*x2 - x3**2"),
    (3, "x1*x3 + x2**2, x3**3"),
    (4, "x1*x2 - 3*x2**2 + 5*x3**2, x1*x3, x2*x3 + 7*x3**2"),
])
def test_hilbert_function_against_linear_algebra(n, text):
    M = quotient(n, text)
    brute = brute_hilbert_function(n, M.gens, 6)
    hs = M.hilbert_series()
    assert {d: hs.coefficient(d) for d in range(7)} == brute


@given(st.integers(0, 10_000))
def test_hilbert_function_of_monomial_quotients_by_counting(seed):
    rng = random.Random(seed)
    I = rand_ideal(rng, nmax=4, gmax=4, dmax=3)
    hs = as_module(I).hilbert_series()
    for d in range(13):
        count = sum(1 for m in itertools.product(range(d + 1), repeat=I.n) if sum(m) == d and m not in I)
        assert hs.coefficient(d) == count


def test_dimension_examples():
    assert GradedModule.zero(3, QQ).dimension() == -1
    I = mono(5, "x1**2*x2, x1**2*x3, x1*x2*x4, x1*x2*x5, x1*x3*x4, x1*x3*x5")
    assert as_module(I).dimension() == 4
    assert quotient(7, GIULIO).dimension() == 3


# ---------------------------------------------------------------- resolutions


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_koszul_betti_numbers(n):
    M = quotient(n, ", ".join(f"x{i}" for i in range(1, n + 1)))
    res = M.resolution()
    assert [len(d) for d in res.degrees] == [comb(n, i) for i in range(n + 1)]
    assert res.is_complex() and res.is_minimal()


def test_depth_zero_gives_full_projective_dimension():
    M = quotient(5, "x1**2, x1*x2, x1*x3, x1*x4, x1*x5")
    assert M.depth() == 0
    assert M.resolution().length == 5


@given(st.integers(0, 10_000))
def test_first_betti_number_counts_minimal_generators(seed):
    I = rand_ideal(random.Random(seed), nmax=4, gmax=5, dmax=3)
    res = as_module(I).resolution()
    assert len(res.degrees[1]) == len(I.gens)
    assert sorted(res.degrees[1]) == sorted(sum(g) for g in I.gens)


def test_nonmonomial_resolution():
    # frozen from the linear-algebra Hilbert function: (1 + 2z - z^3)/(1 - z)^2
    M = quotient(4, "x1*x2 - 3*x2**2 + 5*x3**2, x1*x3, x2*x3 + 7*x3**2")
    assert M.hilbert_series() == HilbertSeries.from_parts({0: 1, 1: 2, 3: -1}, 2)
    res = M.resolution()
    assert [sorted(d) for d in res.degrees] == [[0], [2, 2, 2], [3, 4, 4], [5]]
    assert M.depth() == 1


def euler_characteristic(res):
    total = HilbertSeries.from_parts({}, 0)
    n = res.nvars
    for k, degs in enumerate(res.degrees):
        for d in degs:
            term = HilbertSeries.from_parts({d: 1}, n)
            total = total + term if k % 2 == 0 else total - term
    return total


@given(st.integers(0, 10_000))
def test_euler_characteristic_and_minimality(seed):
    rng = random.Random(seed)
    I = rand_ideal(rng, nmax=4, gmax=5, dmax=3)
    M = as_module(I)
    res = M.resolution()
    assert res.is_complex() and res.is_minimal()
    assert res.length <= I.n
    assert euler_characteristic(res) == M.hilbert_series()
    raw = free_resolution(M, minimize=False)
    assert raw.is_complex() and euler_characteristic(raw) == M.hilbert_series()


def test_module_resolution():
    F = FreeModule(3, (0, 1))
    x1, x2, x3 = (poly(3, f"x{i}") for i in (1, 2, 3))
    U = [F.vector([x1, ring(3).zero()]), F.vector([x2 * x3, x1]), F.vector([ring(3).zero(), x3 * x3])]
    M = GradedModule(F, U)
    res = M.resolution()
    assert res.is_complex() and res.is_minimal()
    assert euler_characteristic(res) == M.hilbert_series()


def test_degree_cap():
    M = quotient(3, "x1**5, x2**5, x3**5", )
    M = GradedModule(M.free, M.gens, degree_cap=10)
    with pytest.raises(DegreeCapExceeded):
        M.resolution()


# ---------------------------------------------------------------- depth


def test_depth_examples():
    assert quotient(4, "").depth() == 4
    assert quotient(7, GIULIO).depth() == 0
    assert GradedModule.zero(3, QQ).depth() is INF
    M = as_module(mono(4, EX1))
    assert M.depth() == 0
    assert saturation(M).depth() > 0


# ---------------------------------------------------------------- Ext and local cohomology


def test_ext_of_free_module_and_residue_field():
    F = quotient(3, "")
    assert all(F.ext(i).is_zero() for i in (1, 2, 3))
    k = quotient(3, "x1, x2, x3")
    assert [k.ext(i).is_zero() for i in range(4)] == [True, True, True, False]
    assert k.ext(3).hilbert_series() == HilbertSeries.from_parts({0: 1}, 0)


def test_ext_of_cohen_macaulay_module_concentrates():
    M = quotient(4, "x1*x2 - x3*x4, x1**2 + x2*x4")
    d = M.dimension()
    assert M.is_cohen_macaulay()
    for i in range(5):
        assert M.ext(4 - i).is_zero() == (i != d)


def test_local_cohomology_examples():
    M = quotient(2, "x1**2, x1*x2")
    assert M.lc(0) == LCHilbert.from_parts({1: 1}, 0)
    assert str(M.lc(0)) == "z"
    F = quotient(3, "")
    assert all(F.lc(i).is_zero() for i in range(3))
    assert F.lc(3) == LCHilbert.from_parts({0: 1}, 3)


def test_cohen_macaulay_examples():
    assert quotient(2, "x1*x2").is_cohen_macaulay()
    T = toric_quartic()
    assert T.dimension() == 2 and T.depth() == 1
    assert not T.is_cohen_macaulay()
    assert GradedModule.zero(2, QQ).is_cohen_macaulay()


@given(st.integers(0, 10_000))
def test_grothendieck_envelope_and_ext_dimensions(seed):
    I = rand_ideal(random.Random(seed), nmax=5, gmax=5, dmax=3)
    M = as_module(I)
    n, d, t = I.n, M.dimension(), M.depth()
    for i in range(n + 1):
        h = M.lc(i)
        if i < t or i > d:
            assert h.is_zero()
        if i in (t, d):
            assert not h.is_zero()
        assert M.ext(n - i).dimension() <= i


@given(st.integers(0, 10_000))
def test_unmixedness_criterion(seed):
    I = rand_ideal(random.Random(seed), nmax=5, gmax=5, dmax=3)
    M = as_module(I)
    n, d = I.n, M.dimension()
    primes = I.associated_primes()
    unmixed = len({n - P.height for P in primes}) == 1
    assert unmixed == all(M.ext(n - j).dimension() < j for j in range(d))


def test_local_duality_substitution():
    h = HilbertSeries.from_parts({0: 1, 1: 1}, 3).to_local_cohomology()
    assert h == LCHilbert.from_parts({3: 1, 2: 1}, 3)
    assert LCHilbert.from_parts({0: 1, 1: -1}, 1) == LCHilbert.from_parts({0: -1}, 0)
