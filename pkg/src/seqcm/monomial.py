"""Monomial ideals and componentwise monomial submodules: decompositions, associated
primes, dimension filtrations, weak stability and lex ideals."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations, islice
from math import comb

from .algebra import QQ, AlgebraError, Element, Field, FreeModule, format_monomial
from .hilbert import HilbertSeries, hilbert_series_monomial, kpoly


class NotMonomialError(AlgebraError):
    pass


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens):
    """Minimal generators of the monomial ideal spanned by exponent tuples."""
    gens = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), tuple(-a for a in g)))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def minimalize_flat(mons):
    """Minimal generators among flat module monomials (exponents + component)."""
    by_comp = {}
    for m in mons:
        by_comp.setdefault(m[-1], []).append(m[:-1])
    out = []
    for c in sorted(by_comp):
        out += [g + (c,) for g in minimalize(by_comp[c])]
    return out


def _lcm(a, b):
    return tuple(map(max, a, b))


class MonomialIdeal:
    """Monomial ideal of k[x1..xn] given by exponent tuples; stored minimally and sorted."""

    def __init__(self, n: int, gens=()):
        self.n = n
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != n:
                raise AlgebraError("exponent vector of the wrong length")
        self.gens = tuple(minimalize(gens))
        self._hs = None

    @classmethod
    def unit(cls, n):
        return cls(n, [(0,) * n])

    @classmethod
    def from_elements(cls, gens):
        gens = list(gens)
        if not gens:
            raise AlgebraError("need at least one generator to infer the ring")
        n = gens[0].free.nvars
        exps = []
        for g in gens:
            if len(g.terms) > 1:
                raise NotMonomialError(f"{g} is not a monomial")
            if g.terms:
                exps.append(next(iter(g.terms))[:-1])
        return cls(n, exps)

    def to_elements(self, field: Field = QQ):
        R = FreeModule(self.n, (0,), field)
        return [Element(R, {g + (0,): field.one}) for g in self.gens]

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.n == other.n and self.gens == other.gens

    def __hash__(self):
        return hash((self.n, self.gens))

    def __repr__(self):
        return f"MonomialIdeal({self})"

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(format_monomial(g) for g in self.gens) + ")"

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return any(sum(g) == 0 for g in self.gens)

    def contains(self, m) -> bool:
        return any(_divides(g, m) for g in self.gens)

    def __contains__(self, m):
        return self.contains(m)

    def issubset(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __add__(self, other):
        return MonomialIdeal(self.n, self.gens + other.gens)

    def __mul__(self, other):
        return MonomialIdeal(self.n, [tuple(a + b for a, b in zip(g, h)) for g in self.gens for h in other.gens])

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.n, [_lcm(g, h) for g in self.gens for h in other.gens])

    __and__ = intersect

    def colon_monomial(self, m) -> "MonomialIdeal":
        return MonomialIdeal(self.n, [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in self.gens])

    def colon_variable(self, i: int) -> "MonomialIdeal":
        e = [0] * self.n
        e[i] = 1
        return self.colon_monomial(e)

    def saturate_variable(self, i: int) -> "MonomialIdeal":
        """I : x_i^oo (0-based i) by exponent truncation."""
        return MonomialIdeal(self.n, [g[:i] + (0,) + g[i + 1:] for g in self.gens])

    def colon_prime(self, prime) -> "MonomialIdeal":
        """I : P for a monomial prime P (iterable of 0-based variables)."""
        prime = list(prime)
        if not prime:
            return self
        out = self.colon_variable(prime[0])
        for i in prime[1:]:
            out = out.intersect(self.colon_variable(i))
        return out

    def saturate_prime(self, prime) -> "MonomialIdeal":
        """I : P^oo by iterating the colon until it stabilizes."""
        cur = self
        while True:
            nxt = cur.colon_prime(prime)
            if nxt == cur:
                return cur
            cur = nxt

    def saturate_maximal(self):
        return self.saturate_prime(range(self.n))

    def support_max(self) -> int:
        """m(I): largest 1-based index of a variable dividing a generator (0 if none)."""
        best = 0
        for g in self.gens:
            for i in range(self.n - 1, -1, -1):
                if g[i]:
                    best = max(best, i + 1)
                    break
        return best

    def is_squarefree(self):
        return all(a <= 1 for g in self.gens for a in g)

    def hilbert_series(self) -> HilbertSeries:
        """Hilbert series of R/I."""
        if self._hs is None:
            self._hs = HilbertSeries.from_parts(kpoly(self.gens, self.n), self.n)
        return self._hs

    def dimension(self) -> int:
        return self.hilbert_series().dimension

    def degree_component(self, d: int):
        """All monomials of degree d in I."""
        return [m for m in monomials_of_degree(self.n, d) if self.contains(m)]

    @cached_property
    def irreducible_components(self):
        """Irredundant irreducible decomposition as exponent vectors b: Q_b = (x_i^b_i : b_i > 0)."""
        return irreducible_decomposition(self)

    def associated_primes(self):
        return sorted({MonomialPrime(frozenset(i for i, a in enumerate(b) if a))
                       for b in self.irreducible_components}, key=lambda P: (len(P.variables), sorted(P.variables)))

    def primary_decomposition(self):
        """Map prime -> primary component (intersection of irreducible components with that radical)."""
        groups = {}
        for b in self.irreducible_components:
            P = MonomialPrime(frozenset(i for i, a in enumerate(b) if a))
            Q = MonomialIdeal(self.n, [_pure_power(self.n, i, a) for i, a in enumerate(b) if a])
            groups[P] = groups[P].intersect(Q) if P in groups else Q
        return groups


def _pure_power(n, i, a):
    e = [0] * n
    e[i] = a
    return tuple(e)


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of total degree d, in decreasing lex order."""
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def monomials_of_degree_ascending(n: int, d: int):
    """All exponent vectors of total degree d, in increasing lex order."""
    if n == 1:
        yield (d,)
        return
    for a in range(d + 1):
        for rest in monomials_of_degree_ascending(n - 1, d - a):
            yield (a,) + rest


@dataclass(frozen=True)
class MonomialPrime:
    """Prime generated by a set of variables (0-based internally)."""

    variables: frozenset

    @property
    def is_initial_segment(self) -> bool:
        return self.variables == frozenset(range(len(self.variables)))

    @property
    def height(self):
        return len(self.variables)

    def ideal(self, n) -> MonomialIdeal:
        return MonomialIdeal(n, [_pure_power(n, i, 1) for i in self.variables])

    def __str__(self):
        if not self.variables:
            return "(0)"
        return "(" + ",".join(f"x{i + 1}" for i in sorted(self.variables)) + ")"

    def __lt__(self, other):
        return (len(self.variables), sorted(self.variables)) < (len(other.variables), sorted(other.variables))


def irreducible_decomposition(I: MonomialIdeal):
    """Recursive splitting on non-pure-power generators; returns irredundant exponent vectors."""
    n = I.n
    if I.is_unit():
        return []
    comps = set()
    stack = [I.gens]
    while stack:
        gens = stack.pop()
        if any(sum(g) == 0 for g in gens):
            continue
        split = next((g for g in gens if sum(1 for a in g if a) > 1), None)
        if split is None:
            b = [0] * n
            for g in gens:
                i = next(k for k, a in enumerate(g) if a)
                b[i] = g[i] if b[i] == 0 else min(b[i], g[i])
            comps.add(tuple(b))
            continue
        i = next(k for k, a in enumerate(split) if a)
        first = _pure_power(n, i, split[i])
        rest = split[:i] + (0,) + split[i + 1:]
        others = [g for g in gens if g != split]
        stack.append(tuple(minimalize(others + [first])))
        stack.append(tuple(minimalize(others + [rest])))

    comps = sorted(comps)
    out = []
    for b in comps:
        # b is redundant when some other component is contained in Q_b
        if any(c != b and _q_subset(c, b) for c in comps):
            continue
        out.append(b)
    return out


def _q_subset(c, b):
    """Q_c is contained in Q_b: every generator x_i^c_i of Q_c lies in Q_b."""
    return all(b[i] > 0 and b[i] <= c[i] for i in range(len(c)) if c[i] > 0)


# ---------------------------------------------------------------- monomial modules


@dataclass(frozen=True)
class MonomialModule:
    """U = sum_j I_j e_j inside F with basis degrees ``degrees``; M = F/U."""

    n: int
    degrees: tuple
    components: tuple  # MonomialIdeal per basis vector
    field: Field = QQ

    @classmethod
    def from_elements(cls, free: FreeModule, gens) -> "MonomialModule":
        comps = [[] for _ in range(free.rank)]
        for g in gens:
            if not g.terms:
                continue
            if len(g.terms) > 1:
                raise NotMonomialError(f"{g} is not a monomial; mixed monomial submodules are rejected")
            (m, _), = g.terms.items()
            comps[m[-1]].append(m[:-1])
        return cls(free.nvars, free.degrees, tuple(MonomialIdeal(free.nvars, c) for c in comps), free.field)

    @classmethod
    def from_ideal(cls, I: MonomialIdeal, field: Field = QQ):
        return cls(I.n, (0,), (I,), field)

    @property
    def free(self) -> FreeModule:
        return FreeModule(self.n, self.degrees, self.field)

    def to_elements(self):
        free = self.free
        one = self.field.one
        return [Element(free, {g + (j,): one}) for j, I in enumerate(self.components) for g in I.gens]

    def graded_module(self, cap=None):
        from .homological import GradedModule, DEFAULT_DEGREE_CAP
        return GradedModule(self.free, self.to_elements(), cap or DEFAULT_DEGREE_CAP)

    def map_components(self, fn) -> "MonomialModule":
        return MonomialModule(self.n, self.degrees, tuple(fn(I) for I in self.components), self.field)

    def hilbert_series(self) -> HilbertSeries:
        return hilbert_series_monomial([I.gens for I in self.components], self.degrees, self.n)

    def dimension(self) -> int:
        return self.hilbert_series().dimension

    def is_zero_quotient(self):
        return all(I.is_unit() for I in self.components)

    def issubset(self, other) -> bool:
        return all(a.issubset(b) for a, b in zip(self.components, other.components))

    def associated_primes(self):
        out = set()
        for I in self.components:
            out.update(I.associated_primes())
        return sorted(out)

    def saturate_prime(self, prime) -> "MonomialModule":
        return self.map_components(lambda I: I.saturate_prime(prime))

    def __str__(self):
        if len(self.components) == 1:
            return str(self.components[0])
        return " + ".join(f"{I}e{j + 1}" for j, I in enumerate(self.components))


def associated_primes(U) -> list:
    """Ass(F/U) for a monomial module (MonomialModule or MonomialIdeal)."""
    return U.associated_primes()


def _as_module(U) -> MonomialModule:
    if isinstance(U, MonomialIdeal):
        return MonomialModule.from_ideal(U)
    return U


def _saturate_by_primes(U: MonomialModule, primes):
    for P in primes:
        U = U.saturate_prime(P.variables)
    return U


@dataclass
class QuotientReport:
    i: int
    dimension: int
    hilbert_series: HilbertSeries
    cohen_macaulay: bool | None = None


@dataclass
class DimensionFiltration:
    """U = U^<-1> in U^<0> in ... in U^<d> = F; steps[k] = (i, U^<i>)."""

    module: MonomialModule
    steps: list
    reports: list = dc_field(default_factory=list)

    @property
    def dimension(self):
        return self.steps[-1][0]

    def bracket(self, i):
        for j, V in self.steps:
            if j == i:
                return V
        raise AlgebraError(f"index {i} outside the filtration range")

    def distinct_chain(self):
        """The strictly increasing chain of submodules (repeated steps removed)."""
        out = []
        for _, V in self.steps:
            if not out or out[-1] != V:
                out.append(V)
        return out

    def report(self, i) -> QuotientReport:
        for r in self.reports:
            if r.i == i:
                return r
        raise KeyError(i)


def dimension_filtration(U, with_cm: bool = True) -> DimensionFiltration:
    """delta_i(F/U) = U^<i>/U with U^<i> = U : a_i^oo, a_i the product of the primes in Ass_{<= i}."""
    U = _as_module(U)
    n = U.n
    d = U.dimension()
    ass = U.associated_primes()
    steps = [(-1, U)]
    for i in range(0, d + 1):
        primes = [P for P in ass if n - P.height <= i]
        steps.append((i, _saturate_by_primes(U, primes)))
    filt = DimensionFiltration(U, steps)
    for k in range(1, len(steps)):
        i, V = steps[k]
        W = steps[k - 1][1]
        hs = W.hilbert_series() - V.hilbert_series()
        rep = QuotientReport(i, hs.dimension, hs)
        if with_cm:
            rep.cohen_macaulay = quotient_is_cm(W, V)
        filt.reports.append(rep)
    return filt


def quotient_presentation(small: MonomialModule, big: MonomialModule, cap=None):
    """GradedModule presenting big/small for monomial modules small inside big.

    Per component: generators m_k of J; relations are the binomial syzygies
    of the m_k and the colons (I : m_k) e_k.
    """
    from .homological import GradedModule, DEFAULT_DEGREE_CAP
    n = small.n
    degs = []
    gens_index = []
    for j, (I, J) in enumerate(zip(small.components, big.components)):
        for m in J.gens:
            if not I.contains(m):
                degs.append(sum(m) + small.degrees[j])
                gens_index.append((j, m))
    field = small.field
    if not degs:
        return GradedModule.zero(n, field)
    free = FreeModule(n, tuple(degs), field)
    one = field.one
    rels = []
    for k, (j, m) in enumerate(gens_index):
        for g in small.components[j].colon_monomial(m).gens:
            rels.append(Element(free, {g + (k,): one}))
    for (k, (j, m)), (l, (j2, m2)) in combinations(enumerate(gens_index), 2):
        if j != j2:
            continue
        L = _lcm(m, m2)
        a = tuple(x - y for x, y in zip(L, m))
        b = tuple(x - y for x, y in zip(L, m2))
        rels.append(Element(free, {a + (k,): one, b + (l,): -one if not field.p else field.p - 1}))
    return GradedModule(free, rels, cap or DEFAULT_DEGREE_CAP)


def quotient_is_cm(small: MonomialModule, big: MonomialModule) -> bool:
    return quotient_presentation(small, big).is_cohen_macaulay()


def bracket(U, j: int):
    """U^<j>: the preimage of delta_j(F/U) in F."""
    U = _as_module(U)
    d = U.dimension()
    if not -1 <= j <= max(d, -1):
        raise AlgebraError(f"j must lie in [-1, {d}]")
    if j == -1:
        return U
    ass = U.associated_primes()
    return _saturate_by_primes(U, [P for P in ass if U.n - P.height <= j])


# ---------------------------------------------------------------- weak stability


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    witness: tuple | None = None  # (u, i, j) with 1-based variable indices

    def __bool__(self):
        return self.stable


def is_weakly_stable(I: MonomialIdeal) -> StabilityResult:
    """Check x_j^t u / x_i^l in I for u in G(I), j < i, l the x_i-exponent of u."""
    n = I.n
    sats = [I.saturate_variable(j) for j in range(n)]
    for u in I.gens:
        for i in range(n):
            ell = u[i]
            if not ell:
                continue
            v = u[:i] + (0,) + u[i + 1:]
            for j in range(i):
                if not sats[j].contains(v):
                    return StabilityResult(False, (u, i + 1, j + 1))
    return StabilityResult(True)


def weakly_stable_by_primes(I: MonomialIdeal) -> bool:
    """All associated primes are initial segments of the variables."""
    return all(P.is_initial_segment for P in I.associated_primes())


def ass_totally_ordered(I: MonomialIdeal) -> bool:
    ps = I.associated_primes()
    return all(a.variables <= b.variables or b.variables <= a.variables for a, b in combinations(ps, 2))


@dataclass
class StableChain:
    """I = J_0 in J_1 in ... in J_k = (1) from iterated saturation, with CM verdicts of J_{t+1}/J_t."""

    ideals: list
    saturated_by: list  # 1-based variable used at each step
    quotient_cm: list

    def all_cm(self):
        return all(self.quotient_cm)


def weakly_stable_filtration(I: MonomialIdeal, verify: bool = True) -> StableChain:
    st = is_weakly_stable(I)
    if not st:
        raise AlgebraError(f"ideal is not weakly stable; witness {st.witness}")
    n = I.n
    chain = [I]
    used = []
    J = I
    while not J.is_unit():
        m = J.support_max()
        if m == 0:
            J = MonomialIdeal.unit(n)
            used.append(0)
        else:
            J = J.saturate_variable(m - 1)
            used.append(m)
        chain.append(J)
    cms = []
    if verify:
        for a, b in zip(chain, chain[1:]):
            cms.append(quotient_is_cm(MonomialModule.from_ideal(a), MonomialModule.from_ideal(b)))
    return StableChain(chain, used, cms)


# ---------------------------------------------------------------- lex ideals


class MacaulayError(AlgebraError):
    pass


def macaulay_representation(a: int, d: int):
    """a = C(k_d, d) + C(k_{d-1}, d-1) + ... with k_d > k_{d-1} > ... >= j >= 1."""
    out = []
    while a > 0 and d > 0:
        k = d
        while comb(k + 1, d) <= a:
            k += 1
        out.append((k, d))
        a -= comb(k, d)
        d -= 1
    return out


def macaulay_bound(a: int, d: int) -> int:
    """a^<d>: the largest possible value in degree d+1 after a in degree d."""
    return sum(comb(k + 1, j + 1) for k, j in macaulay_representation(a, d))


def lex_ideal(h, n: int) -> MonomialIdeal:
    """Lex-segment ideal L with dim (R/L)_d = h[d] for the listed degrees.

    The ideal is generated by its lex segments in degrees 0..len(h)-1.
    """
    h = [int(x) for x in h]
    if not h:
        raise MacaulayError("empty Hilbert function")
    if h[0] not in (0, 1):
        raise MacaulayError(f"degree 0: value {h[0]} must be 0 or 1")
    gens = []
    prev = None
    for d, hd in enumerate(h):
        total = comb(n + d - 1, d)
        if hd < 0 or hd > total:
            raise MacaulayError(f"degree {d}: value {hd} outside [0, {total}]")
        if d >= 1 and h[d - 1] >= 0:
            bound = macaulay_bound(h[d - 1], d - 1) if d - 1 >= 1 else (n if h[0] else 0)
            if hd > bound:
                raise MacaulayError(f"degree {d}: value {hd} exceeds the Macaulay bound {bound}")
        # R/L in degree d is spanned by the hd lex-smallest monomials
        std = set(islice(monomials_of_degree_ascending(n, d), hd))
        if prev is None:
            if not std:
                gens.append((0,) * n)
        else:
            for m in std:
                if any(m[i] and m[:i] + (m[i] - 1,) + m[i + 1:] not in prev for i in range(n)):
                    raise MacaulayError(f"degree {d}: value {hd} violates Macaulay's growth condition")
            # a minimal generator is a non-standard x_i*s, s standard, all of whose quotients are standard
            for t in prev:
                for i in range(n):
                    m = t[:i] + (t[i] + 1,) + t[i + 1:]
                    if m not in std and all(not m[k] or m[:k] + (m[k] - 1,) + m[k + 1:] in prev for k in range(n)):
                        gens.append(m)
        prev = std
    return MonomialIdeal(n, gens)


def hilbert_function(hs: HilbertSeries, upto: int):
    return [hs.coefficient(d) for d in range(upto + 1)]


def lex_ideal_of(I: MonomialIdeal | HilbertSeries, n: int | None = None, degree_cap: int = 64) -> MonomialIdeal:
    """The lex ideal with the same Hilbert function as R/I (all degrees)."""
    hs = I.hilbert_series() if isinstance(I, MonomialIdeal) else I
    n = I.n if isinstance(I, MonomialIdeal) else n
    start = max((sum(g) for g in I.gens), default=0) if isinstance(I, MonomialIdeal) else 0
    # doubling is safe: once D reaches the top generator degree the segments stop changing
    D = max(start, 1)
    while True:
        D = min(D, degree_cap)
        L = lex_ideal(hilbert_function(hs, D), n)
        if L.hilbert_series() == hs:
            return L
        if D == degree_cap:
            break
        D *= 2
    from .groebner import DegreeCapExceeded
    raise DegreeCapExceeded(f"lex ideal needs generators above degree cap {degree_cap}")


def is_lex_segment_ideal(I: MonomialIdeal, upto: int | None = None) -> bool:
    """Every degree component (up to ``upto``) is an initial lex segment."""
    top = upto if upto is not None else max((sum(g) for g in I.gens), default=0)
    for d in range(top + 1):
        mons = list(monomials_of_degree(I.n, d))
        inside = [I.contains(m) for m in mons]
        k = sum(inside)
        if inside != [True] * k + [False] * (len(mons) - k):
            return False
    return True
