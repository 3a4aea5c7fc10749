"""Simplicial complexes and the Stanley-Reisner dictionary."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .algebra import QQ, AlgebraError, Field
from .hilbert import LCHilbert
from .monomial import MonomialIdeal, NotMonomialError


class SimplicialComplex:
    """Complex on vertices 1..n given by its facets.

    ``facets == ()`` is the void complex (no faces at all); ``(frozenset(),)``
    is the irrelevant complex {emptyset}.
    """

    def __init__(self, n: int, facets):
        self.n = n
        fs = {frozenset(f) for f in facets}
        for f in fs:
            if any(not 1 <= v <= n for v in f):
                raise AlgebraError(f"vertex outside 1..{n} in facet {sorted(f)}")
        # keep maximal sets only
        self.facets = tuple(sorted((f for f in fs if not any(f < g for g in fs)),
                                   key=lambda f: (-len(f), sorted(f))))

    @classmethod
    def simplex(cls, n):
        return cls(n, [range(1, n + 1)])

    @classmethod
    def void(cls, n):
        return cls(n, [])

    @classmethod
    def parse(cls, text: str) -> "SimplicialComplex":
        """Read ``complex on 5: {1,2,3} {1,4} {4,5}``."""
        m = re.fullmatch(r"\s*complex\s+on\s+(\d+)\s*:(.*)", text, re.S)
        if not m:
            raise AlgebraError(f"cannot parse complex: {text!r}")
        n = int(m.group(1))
        body = m.group(2).strip()
        facets = []
        for grp in re.findall(r"\{([^}]*)\}", body):
            grp = grp.strip()
            facets.append([int(v) for v in re.split(r"[,\s]+", grp)] if grp else [])
        if re.sub(r"\{[^}]*\}", "", body).strip():
            raise AlgebraError(f"unexpected text in facet list: {body!r}")
        return cls(n, facets)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.n == other.n and self.facets == other.facets

    def __hash__(self):
        return hash((self.n, self.facets))

    def __str__(self):
        return f"complex on {self.n}: " + " ".join("{" + ",".join(map(str, sorted(f))) + "}" for f in self.facets)

    __repr__ = __str__

    def is_void(self):
        return not self.facets

    @property
    def dimension(self) -> int:
        """max |F| - 1; the void complex gets -2 by convention."""
        if not self.facets:
            return -2
        return len(self.facets[0]) - 1

    def is_pure(self):
        return len({len(f) for f in self.facets}) <= 1

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for f in self.facets:
            s = sorted(f)
            for k in range(len(s) + 1):
                out.update(frozenset(c) for c in combinations(s, k))
        return frozenset(out)

    def faces_of_dim(self, i: int):
        return sorted((f for f in self.faces if len(f) == i + 1), key=sorted)

    def __contains__(self, face):
        return frozenset(face) in self.faces

    def link(self, face) -> "SimplicialComplex":
        face = frozenset(face)
        if face not in self.faces:
            return SimplicialComplex.void(self.n)
        return SimplicialComplex(self.n, [f - face for f in self.facets if face <= f])

    def restriction(self, vertices) -> "SimplicialComplex":
        W = frozenset(vertices)
        if self.is_void():
            return self
        return SimplicialComplex(self.n, [f & W for f in self.facets])

    def f_vector(self):
        d = self.dimension
        return [len(self.faces_of_dim(i)) for i in range(-1, d + 1)]


# ---------------------------------------------------------------- Stanley-Reisner


def _indicator(n, face):
    return tuple(1 if v in face else 0 for v in range(1, n + 1))


def minimal_nonfaces(delta: SimplicialComplex):
    faces = delta.faces
    out = []
    if not faces:
        return [frozenset()]
    for k in range(1, delta.n + 1):
        for c in combinations(range(1, delta.n + 1), k):
            s = frozenset(c)
            if s in faces:
                continue
            if all(s - {v} in faces for v in s):
                out.append(s)
    return out


def stanley_reisner_ideal(delta: SimplicialComplex) -> MonomialIdeal:
    return MonomialIdeal(delta.n, [_indicator(delta.n, s) for s in minimal_nonfaces(delta)])


def complex_of_ideal(I: MonomialIdeal) -> SimplicialComplex:
    """Inverse of stanley_reisner_ideal; facets are the complements of the irreducible components."""
    if not I.is_squarefree():
        raise NotMonomialError(f"{I} is not squarefree")
    n = I.n
    if I.is_unit():
        return SimplicialComplex.void(n)
    # for squarefree I the components are primes P_F with F a facet complement
    facets = [frozenset(v for v in range(1, n + 1) if not b[v - 1]) for b in I.irreducible_components]
    if not I.gens:
        facets = [frozenset(range(1, n + 1))]
    return SimplicialComplex(n, facets)


def pure_skeleton(delta: SimplicialComplex, i: int) -> SimplicialComplex:
    """The pure subcomplex spanned by the i-dimensional faces."""
    if not -1 <= i <= delta.dimension:
        raise AlgebraError(f"skeleton index {i} outside [-1, {delta.dimension}]")
    return SimplicialComplex(delta.n, delta.faces_of_dim(i))


def alexander_dual(delta: SimplicialComplex) -> SimplicialComplex:
    """Faces are complements of non-faces; facets are complements of minimal non-faces."""
    V = frozenset(range(1, delta.n + 1))
    return SimplicialComplex(delta.n, [V - s for s in minimal_nonfaces(delta)])


# ---------------------------------------------------------------- homology


def matrix_rank(rows, field: Field) -> int:
    """Rank of a matrix given as a list of dict rows {column: entry}."""
    p = field.p
    rows = [{j: field(v) for j, v in r.items() if v} for r in rows]
    rows = [r for r in rows if r]
    rank = 0
    pivots = {}
    for r in rows:
        r = dict(r)
        while r:
            j = min(r)
            if j not in pivots:
                break
            pr = pivots[j]
            c = r[j]
            for k, v in pr.items():
                w = r.get(k, 0) - c * v
                if p:
                    w %= p
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        if r:
            j = min(r)
            inv = field.inv(r[j])
            pivots[j] = {k: (v * inv) % p if p else v * inv for k, v in r.items()}
            rank += 1
    return rank


def _boundary_rank(faces_hi, index_lo, field):
    rows = []
    for f in faces_hi:
        s = sorted(f)
        rows.append({index_lo[frozenset(s[:t] + s[t + 1:])]: (-1) ** t for t in range(len(s))})
    return matrix_rank(rows, field)


def reduced_homology(delta: SimplicialComplex, field: Field = QQ) -> dict:
    """{i: dim H~_i(delta; k)} for i = -1..dim; empty for the void complex."""
    if delta.is_void():
        return {}
    d = delta.dimension
    by_dim = {i: delta.faces_of_dim(i) for i in range(-1, d + 1)}
    index = {i: {f: k for k, f in enumerate(fs)} for i, fs in by_dim.items()}
    ranks = {i: _boundary_rank(by_dim[i], index[i - 1], field) for i in range(0, d + 1)}
    ranks[d + 1] = 0
    ranks[-1] = 0
    return {i: len(by_dim[i]) - ranks[i] - ranks[i + 1] for i in range(-1, d + 1)}


def is_cm(delta: SimplicialComplex, field: Field = QQ) -> bool:
    """Reisner: H~_i(lk F) = 0 for i < dim lk F, for every face F."""
    for F in delta.faces:
        lk = delta.link(F)
        h = reduced_homology(lk, field)
        if any(v for i, v in h.items() if i < lk.dimension):
            return False
    return True


@dataclass(frozen=True)
class DuvalReport:
    scm: bool
    failing: tuple
    field: Field

    def __bool__(self):
        return self.scm


def is_scm_duval(delta: SimplicialComplex, field: Field = QQ) -> DuvalReport:
    """k[delta] is sCM iff every pure skeleton is CM."""
    if delta.is_void():
        return DuvalReport(True, (), field)
    bad = tuple(i for i in range(-1, delta.dimension + 1) if not is_cm(pure_skeleton(delta, i), field))
    return DuvalReport(not bad, bad, field)


def hochster_lc(delta: SimplicialComplex, i: int, field: Field = QQ) -> LCHilbert:
    """h^i(k[delta]) = sum_F dim H~_{i-|F|-1}(lk F) / (z - 1)^|F|."""
    out = LCHilbert.zero()
    for F in delta.faces:
        h = reduced_homology(delta.link(F), field).get(i - len(F) - 1, 0)
        if h:
            out = out + LCHilbert.from_parts({0: h}, len(F))
    return out


# ---------------------------------------------------------------- componentwise linearity


def _squarefree_component(I: MonomialIdeal, d: int) -> MonomialIdeal:
    """I_[d]: generated by the squarefree monomials of degree d in I."""
    return MonomialIdeal(I.n, [_indicator(I.n, c) for c in combinations(range(1, I.n + 1), d)
                               if I.contains(_indicator(I.n, c))])


def has_linear_resolution_squarefree(I: MonomialIdeal, d: int, field: Field = QQ) -> bool:
    """Hochster's Betti formula: beta_{i,W}(I) = dim H~_{|W|-i-2}(delta_W); linear iff only H~_{d-2} occurs."""
    if not I.gens:
        return True
    delta = complex_of_ideal(I)
    for k in range(1, I.n + 1):
        for W in combinations(range(1, I.n + 1), k):
            h = reduced_homology(delta.restriction(W), field)
            if any(v for j, v in h.items() if j != d - 2):
                return False
    return True


def has_linear_resolution(gens, n: int, field: Field = QQ) -> bool:
    """The ideal generated by homogeneous ``gens`` of one degree d has a d-linear resolution."""
    from .homological import GradedModule
    from .algebra import ring
    gens = [g for g in gens if g]
    if not gens:
        return True
    d = gens[0].degree
    R = ring(n, field)
    res = GradedModule(R, gens).resolution()
    return all(deg == d + k - 1 for k in range(1, len(res.degrees)) for deg in res.degrees[k])


def _degree_component_gens(gens, d):
    """Spanning set of I_d: products of generators with monomials of complementary degree."""
    from .algebra import Element
    from .monomial import monomials_of_degree
    out = []
    for g in gens:
        e = d - g.degree
        if e < 0:
            continue
        for m in monomials_of_degree(g.free.nvars, e):
            out.append(g * Element.monomial(g.free, m))
    return out


@dataclass(frozen=True)
class LinearityReport:
    linear: bool
    checked_degrees: tuple
    failing_degree: int | None
    method: str

    def __bool__(self):
        return self.linear


def is_componentwise_linear(I, field: Field = QQ) -> LinearityReport:
    """Squarefree monomial ideals: every I_[d] is linear. Otherwise every I_<d>
    for d between the least generator degree and reg(I) is linear."""
    if isinstance(I, MonomialIdeal) and I.is_squarefree():
        if I.is_unit() or not I.gens:
            return LinearityReport(True, (), None, "squarefree")
        lo = min(sum(g) for g in I.gens)
        degs = tuple(range(lo, I.n + 1))
        for d in degs:
            if not has_linear_resolution_squarefree(_squarefree_component(I, d), d, field):
                return LinearityReport(False, degs[:degs.index(d) + 1], d, "squarefree")
        return LinearityReport(True, degs, None, "squarefree")
    from .homological import GradedModule
    from .algebra import ring
    if isinstance(I, MonomialIdeal):
        n = I.n
        gens = I.to_elements(field)
    else:
        gens = [g for g in I if g]
        n = gens[0].free.nvars
    gens = [g for g in gens if g]
    if not gens:
        return LinearityReport(True, (), None, "components")
    res = GradedModule(ring(n, gens[0].free.field), gens).resolution()
    reg = max(deg - (k - 1) for k in range(1, len(res.degrees)) for deg in res.degrees[k])
    lo = min(g.degree for g in gens)
    degs = tuple(range(lo, reg + 1))
    for d in degs:
        comp = _degree_component_gens(gens, d)
        if isinstance(I, MonomialIdeal):
            comp = MonomialIdeal.from_elements(comp).to_elements(gens[0].free.field)
        if not has_linear_resolution(comp, n, gens[0].free.field):
            return LinearityReport(False, degs[:degs.index(d) + 1], d, "components")
    return LinearityReport(True, degs, None, "components")
