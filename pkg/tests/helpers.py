"""Shared builders, sympy bridges and random corpora for the test suite."""

from __future__ import annotations

import random

import sympy

from seqcm.algebra import QQ, CoordinateChange, Element, FreeModule, apply_change, ring
from seqcm.analysis import as_module
from seqcm.homological import GradedModule
from seqcm.monomial import MonomialIdeal
from seqcm.simplicial import SimplicialComplex


def syms(n):
    return sympy.symbols(f"x1:{n + 1}")


def poly(n: int, text: str, field=QQ) -> Element:
    """Parse a polynomial in x1..xn through sympy (no dependence on the package parser)."""
    xs = syms(n)
    p = sympy.Poly(sympy.sympify(text, locals={str(x): x for x in xs}), *xs)
    R = ring(n, field)
    return Element(R, {tuple(m) + (0,): field(sympy.Rational(c).p) * field.inv(field(sympy.Rational(c).q))
                       for m, c in p.terms() if c})


def to_sympy(f: Element):
    xs = syms(f.free.nvars)
    out = 0
    for m, c in f.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator)) if hasattr(c, "numerator") else sympy.Integer(c)
        for x, e in zip(xs, m[:-1]):
            term *= x ** e
        out += term
    return sympy.expand(out)


def quotient(n: int, text: str, field=QQ) -> GradedModule:
    gens = [poly(n, t, field) for t in text.split(",")] if text.strip() else []
    return GradedModule(ring(n, field), gens)


def mono(n: int, text: str) -> MonomialIdeal:
    gens = []
    for t in text.split(","):
        f = poly(n, t)
        assert len(f.terms) == 1
        gens.append(next(iter(f.terms))[:-1])
    return MonomialIdeal(n, gens)


def monomial_gens(I: MonomialIdeal):
    return {tuple(g) for g in I.gens}


# ---------------------------------------------------------------- corpora


def rand_ideal(rng: random.Random, nmax=5, gmax=6, dmax=4):
    """Random monomial ideal with n <= nmax, at most gmax generators of degree <= dmax."""
    n = rng.randint(3, nmax)
    k = rng.randint(1, gmax)
    squarefree = rng.random() < 0.5
    gens = []
    for _ in range(k):
        d = rng.randint(1 if rng.random() < 0.1 else 2, dmax)
        e = [0] * n
        if squarefree and d <= n:
            for v in rng.sample(range(n), d):
                e[v] = 1
        else:
            for _ in range(d):
                e[rng.randrange(n)] += 1
        gens.append(tuple(e))
    return MonomialIdeal(n, gens)


def rand_mixed(rng: random.Random, nmax=5):
    """Intersection of powers of monomial primes, often of equal height (hence often not sCM)."""
    n = rng.randint(4, nmax)
    h = rng.randint(1, n - 2)
    I = None
    for _ in range(rng.randint(2, 3)):
        vs = rng.sample(range(n), h if rng.random() < 0.7 else rng.randint(1, n - 1))
        p = 1 if rng.random() < 0.6 else 2
        J = MonomialIdeal(n, [tuple(p if v == w else 0 for w in range(n)) for v in vs])
        I = J if I is None else I & J
    if rng.random() < 0.4:
        e = [0] * n
        for _ in range(rng.randint(3, 5)):
            e[rng.randrange(n)] += 1
        I = I + MonomialIdeal(n, [tuple(e)])
    return I


def pad(I: MonomialIdeal, extra: int) -> MonomialIdeal:
    """The same ideal in extra trailing free variables."""
    return MonomialIdeal(I.n + extra, [tuple(g) + (0,) * extra for g in I.gens])


def sparse_change(n: int, rng: random.Random, field=QQ) -> CoordinateChange:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.3:
                rows[i][j] = rng.choice([-2, -1, 1, 2, 3])
    return CoordinateChange(rows, field)


def moved(I: MonomialIdeal, rng: random.Random) -> GradedModule:
    """A non-monomial presentation isomorphic to S/I."""
    M = as_module(I)
    g = sparse_change(I.n, rng)
    return GradedModule(M.free, [apply_change(g, f) for f in M.gens])


def edepth_corpus(count: int, seed: int):
    """(monomial ideal, module) pairs; every third module is a non-monomial coordinate change."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        I = rand_mixed(rng) if rng.random() < 0.7 else rand_ideal(rng)
        if I.n < 5 and rng.random() < 0.5:
            I = pad(I, rng.randint(1, 6 - I.n))
        M = moved(I, rng) if k % 3 == 0 else as_module(I)
        out.append((I, M))
    return out


def rand_complex(rng: random.Random, nmax=7) -> SimplicialComplex:
    n = rng.randint(2, nmax)
    facets = []
    for _ in range(rng.randint(1, 5)):
        size = rng.randint(1, min(n, 4))
        facets.append(frozenset(rng.sample(range(1, n + 1), size)))
    return SimplicialComplex(n, facets)


def rand_element(rng: random.Random, free: FreeModule, terms=4, deg=3):
    out = {}
    for _ in range(terms):
        m = [0] * free.nvars
        for _ in range(rng.randint(0, deg)):
            m[rng.randrange(free.nvars)] += 1
        c = rng.randint(-5, 5)
        if c:
            out[tuple(m) + (rng.randrange(free.rank),)] = free.field(c)
    return Element(free, out)
