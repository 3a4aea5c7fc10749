"""Graded module presentations, minimal free resolutions, depth, Ext and local cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .algebra import DEGREVLEX, AlgebraError, Element, FreeModule, axpy
from .groebner import (
    DegreeCapExceeded, GroebnerBasis, _check_homogeneous, buchberger, degrevlex_key,
    kernel_dicts, schreyer_key, schreyer_syzygies,
)
from .hilbert import HilbertSeries, LCHilbert, hilbert_series_monomial

DEFAULT_DEGREE_CAP = 64


@total_ordering
class _Infinity:
    """+oo, the depth of the zero module."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("inf")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _Infinity()


class GradedModule:
    """M = F/U for a free module F and homogeneous generators of U.

    Derived data (Groebner basis, resolution, Ext modules) is memoized; the
    presentation itself never changes after construction.
    """

    def __init__(self, free: FreeModule, gens=(), degree_cap: int = DEFAULT_DEGREE_CAP):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.free != free:
                raise AlgebraError("generator does not live in the given free module")
        _check_homogeneous(free, gens)
        self.free = free
        self.gens = gens
        self.degree_cap = degree_cap
        self._memo = {}

    @classmethod
    def quotient_ring(cls, gens, nvars=None, field=None, **kw):
        """R/I for polynomials ``gens`` (or the ring itself when gens is empty)."""
        gens = list(gens)
        free = gens[0].free if gens else FreeModule(nvars, (0,), field)
        return cls(free, gens, **kw)

    @classmethod
    def zero(cls, nvars, field):
        free = FreeModule(nvars, (0,), field)
        return cls(free, [free.unit(0)])

    @property
    def nvars(self):
        return self.free.nvars

    @property
    def field(self):
        return self.free.field

    def _get(self, name, fn):
        if name not in self._memo:
            self._memo[name] = fn()
        return self._memo[name]

    def groebner(self) -> GroebnerBasis:
        return self._get("gb", lambda: buchberger(self.gens, DEGREVLEX, self.free))

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.gens)

    def hilbert_series(self) -> HilbertSeries:
        return self._get("hs", lambda: hilbert_series(self))

    def dimension(self) -> int:
        return self.hilbert_series().dimension

    def is_zero(self) -> bool:
        return self.hilbert_series().is_zero()

    def resolution(self) -> "ResolutionData":
        return self._get("res", lambda: free_resolution(self, True, self.degree_cap))

    def depth(self):
        return self._get("depth", lambda: depth(self))

    def ext(self, i: int) -> "GradedModule":
        return self._get(("ext", i), lambda: ext_module(self, i))

    def lc(self, i: int) -> LCHilbert:
        return self._get(("lc", i), lambda: lc_hilbert(self, i))

    def is_cohen_macaulay(self) -> bool:
        return self._get("cm", lambda: is_cohen_macaulay(self))

    def direct_sum(self, other: "GradedModule") -> "GradedModule":
        if other.free.nvars != self.free.nvars or other.free.field != self.free.field:
            raise AlgebraError("modules over different rings")
        r = self.free.rank
        free = FreeModule(self.nvars, self.free.degrees + other.free.degrees, self.field)
        gens = [Element(free, dict(g.terms)) for g in self.gens]
        gens += [Element(free, {m[:-1] + (m[-1] + r,): c for m, c in g.terms.items()}) for g in other.gens]
        return GradedModule(free, gens, self.degree_cap)

    def __repr__(self):
        return f"GradedModule(rank={self.free.rank}, degrees={self.free.degrees}, gens={[str(g) for g in self.gens]})"


def hilbert_series(M: GradedModule) -> HilbertSeries:
    comps = [[] for _ in range(M.free.rank)]
    if M.gens:
        leads = ([next(iter(g.terms)) for g in M.gens] if M.is_monomial() else M.groebner().leads)
        for m in leads:
            comps[m[-1]].append(m[:-1])
    return hilbert_series_monomial(comps, M.free.degrees, M.nvars)


def dimension(M: GradedModule) -> int:
    return M.dimension()


# ---------------------------------------------------------------- resolutions


@dataclass
class ResolutionData:
    """F_0 <- F_1 <- ... ; ``maps[k]`` lists the columns of d_k as vectors in F_{k-1}."""

    nvars: int
    field: object
    degrees: list  # degrees[k] = basis degrees of F_k
    maps: list     # maps[0] is empty
    minimal: bool

    @property
    def length(self) -> int:
        k = len(self.degrees) - 1
        while k > 0 and not self.degrees[k]:
            k -= 1
        return k

    @property
    def betti(self) -> dict:
        out = {}
        for k, degs in enumerate(self.degrees):
            for d in degs:
                out[(k, d)] = out.get((k, d), 0) + 1
        return out

    def total_betti(self):
        return [len(d) for d in self.degrees[:self.length + 1]]

    def is_complex(self) -> bool:
        p = self.field.p
        for k in range(1, len(self.maps) - 1):
            prev = self.maps[k]
            for col in self.maps[k + 1]:
                acc = {}
                for m, c in col.items():
                    axpy(acc, c, prev[m[-1]], m[:-1] + (0,), p)
                if acc:
                    return False
        return True

    def is_minimal(self) -> bool:
        return all(any(m[:-1]) for cols in self.maps for col in cols for m in col)

    def betti_table(self) -> str:
        b = self.betti
        if not b:
            return "0"
        lo = min(j - i for i, j in b)
        hi = max(j - i for i, j in b)
        L = self.length
        rows = []
        for r in range(lo, hi + 1):
            rows.append(f"{r:>4}: " + " ".join(f"{b.get((i, i + r), 0) or '.':>4}" for i in range(L + 1)))
        return "\n".join(rows)


def _sort_by_var(cols, leads, var, n):
    if var >= n:
        return cols, leads
    order = sorted(range(len(cols)), key=lambda i: -leads[i][var])
    return [cols[i] for i in order], [leads[i] for i in order]


def free_resolution(M: GradedModule, minimize: bool = True,
                    degree_cap: int = DEFAULT_DEGREE_CAP) -> ResolutionData:
    """Schreyer resolution of F/U, optionally pruned to the minimal one."""
    free = M.free
    n, p = free.nvars, free.field.p
    key = degrevlex_key(free.degrees)
    degrees = [list(free.degrees)]
    maps = [[]]
    if M.gens:
        gb = M.groebner()
        cols = [dict(g.terms) for g in gb]
        leads = list(gb.leads)
        cols, leads = _sort_by_var(cols, leads, 0, n)
        degs = list(degrees[0])
        level = 1
        while cols:
            newdegs = [sum(lt[:-1]) + degs[lt[-1]] for lt in leads]
            if max(newdegs) > degree_cap:
                raise DegreeCapExceeded(
                    f"resolution reached degree {max(newdegs)} above the cap {degree_cap}")
            degrees.append(newdegs)
            maps.append(cols)
            nxt, nleads = schreyer_syzygies(cols, leads, key, p)
            key = schreyer_key(key, leads)
            nxt, nleads = _sort_by_var(nxt, nleads, level, n)
            cols, leads, degs = nxt, nleads, newdegs
            level += 1
    res = ResolutionData(n, free.field, degrees, maps, False)
    if minimize:
        res = minimize_resolution(res)
    return res


def minimize_resolution(res: ResolutionData) -> ResolutionData:
    """Cancel unit entries of the differentials until every entry lies in m."""
    p = res.field.p
    finv = res.field.inv
    L = len(res.maps) - 1
    maps = [dict(enumerate([dict(c) for c in cols])) for cols in res.maps]
    base = set(range(len(res.degrees[0])))
    for k in range(1, L + 1):
        cols = maps[k]
        while True:
            found = None
            for q in sorted(cols):
                for m, c in cols[q].items():
                    if not any(m[:-1]):
                        found = (q, m[-1], c)
                        break
                if found:
                    break
            if found is None:
                break
            q, row, c = found
            pivot = cols.pop(q)
            cinv = finv(c)
            for q2, col2 in cols.items():
                a = [(m[:-1] + (0,), v) for m, v in col2.items() if m[-1] == row]
                for am, av in a:
                    coef = -av * cinv
                    if p:
                        coef %= p
                    axpy(col2, coef, pivot, am, p)
            # basis vector q of F_k and row of F_{k-1} disappear
            if k + 1 <= L:
                for col in maps[k + 1].values():
                    for m in [m for m in col if m[-1] == q]:
                        del col[m]
            if k == 1:
                base.discard(row)
            else:
                maps[k - 1].pop(row)
    alive = [sorted(base)] + [sorted(maps[k]) for k in range(1, L + 1)]
    degrees = [[res.degrees[k][i] for i in alive[k]] for k in range(L + 1)]
    newmaps = [[]]
    for k in range(1, L + 1):
        pos = {old: new for new, old in enumerate(alive[k - 1])}
        newmaps.append([{m[:-1] + (pos[m[-1]],): c for m, c in maps[k][q].items()} for q in alive[k]])
    while len(degrees) > 1 and not degrees[-1]:
        degrees.pop()
        newmaps.pop()
    return ResolutionData(res.nvars, res.field, degrees, newmaps, True)


def betti_numbers(M: GradedModule) -> dict:
    return M.resolution().betti


def depth(M: GradedModule):
    """n - pd(M) by Auslander-Buchsbaum; INF for the zero module."""
    if M.is_zero():
        return INF
    return M.nvars - M.resolution().length


def is_cohen_macaulay(M: GradedModule) -> bool:
    if M.is_zero():
        return True
    return depth(M) == M.dimension()


# ---------------------------------------------------------------- Ext and local cohomology


def prune_presentation(degs, rels, p, finv):
    """Drop generators killed by relations with a unit entry; returns (degrees, relations)."""
    rels = [dict(r) for r in rels if r]
    alive = set(range(len(degs)))
    while True:
        found = None
        for ri, r in enumerate(rels):
            for m, c in r.items():
                if not any(m[:-1]):
                    found = (ri, m[-1], c)
                    break
            if found:
                break
        if found is None:
            break
        ri, j, c = found
        pivot = rels.pop(ri)
        cinv = finv(c)
        for r2 in rels:
            a = [(m[:-1] + (0,), v) for m, v in r2.items() if m[-1] == j]
            for am, av in a:
                coef = -av * cinv
                if p:
                    coef %= p
                axpy(r2, coef, pivot, am, p)
        rels = [r for r in rels if r]
        alive.discard(j)
    idx = sorted(alive)
    pos = {old: new for new, old in enumerate(idx)}
    return [degs[i] for i in idx], [{m[:-1] + (pos[m[-1]],): c for m, c in r.items()} for r in rels]


def _module_from(n, field, degs, rels, cap):
    if not degs:
        return GradedModule.zero(n, field)
    free = FreeModule(n, tuple(degs), field)
    return GradedModule(free, [Element(free, r) for r in rels], cap)


def ext_module(M: GradedModule, i: int) -> GradedModule:
    """Presentation of Ext^i_R(M, R(-n))."""
    n = M.nvars
    if not 0 <= i <= n:
        raise AlgebraError(f"Ext index must lie in [0, {n}]")
    field = M.field
    p = field.p
    if M.is_zero():
        return GradedModule.zero(n, field)
    res = M.resolution()
    degrees, maps = res.degrees, res.maps
    L = len(degrees) - 1
    if i > L or not degrees[i]:
        return GradedModule.zero(n, field)
    dual = [-d + n for d in degrees[i]]
    # columns of d_{i+1}^T: images of the dual basis of F_i in F_{i+1}^*
    if i + 1 <= L and degrees[i + 1]:
        dual_next = [-d + n for d in degrees[i + 1]]
        tcols = [dict() for _ in degrees[i]]
        for q, col in enumerate(maps[i + 1]):
            for m, c in col.items():
                tcols[m[-1]][m[:-1] + (q,)] = c
        kernel = kernel_dicts(tcols, dual_next, n, p)
    else:
        kernel = None
    bcols = []
    if i >= 1:
        bcols = [dict() for _ in degrees[i - 1]]
        for q, col in enumerate(maps[i]):
            for m, c in col.items():
                bcols[m[-1]][m[:-1] + (q,)] = c
        bcols = [b for b in bcols if b]
    if kernel is None:
        gdegs, rels = prune_presentation(dual, bcols, p, field.inv)
        return _module_from(n, field, gdegs, rels, M.degree_cap)
    if not kernel:
        return GradedModule.zero(n, field)
    kdegs = [sum(m[:-1]) + dual[m[-1]] for m in (next(iter(k)) for k in kernel)]
    s = len(kernel)
    if bcols:
        syz = kernel_dicts(kernel + bcols, dual, n, p)
        rels = [{m: c for m, c in v.items() if m[-1] < s} for v in syz]
    else:
        rels = []
    gdegs, rels = prune_presentation(kdegs, rels, p, field.inv)
    return _module_from(n, field, gdegs, rels, M.degree_cap)


def lc_hilbert(M: GradedModule, i: int) -> LCHilbert:
    """h^i(M)(z) = Hilb(Ext^{n-i}(M, R(-n)))(1/z)."""
    n = M.nvars
    if not 0 <= i <= n:
        raise AlgebraError(f"local cohomology index must lie in [0, {n}]")
    return M.ext(n - i).hilbert_series().to_local_cohomology()


def ext_depths(M: GradedModule):
    """depth(Ext^i(M, R)) for i = 0..n (twisting does not change depth)."""
    return [M.ext(i).depth() for i in range(M.nvars + 1)]


def multiplication_kernel_dim(M: GradedModule, ell: Element) -> int:
    """dim of the kernel of multiplication by ell on M, i.e. of (U : ell)/U."""
    from .groebner import colon_element
    if M.is_zero():
        return -1
    col = colon_element(M.free, M.gens, ell)
    big = GradedModule(M.free, list(M.gens) + col)
    diff = M.hilbert_series() - big.hilbert_series()
    return diff.dimension


def quotient_by(M: GradedModule, extra) -> GradedModule:
    """M / (images of ``extra`` elements of F)."""
    return GradedModule(M.free, list(M.gens) + [e for e in extra if e], M.degree_cap)


def submodule_quotient(free: FreeModule, big, small, cap=DEFAULT_DEGREE_CAP) -> GradedModule:
    """Presentation of V/U for U = (small) contained in V = (big), both in F.

    Generators of V give R^s -> V/U; the relations are the syzygies of
    [big | small] restricted to the first s coordinates.
    """
    big = [g for g in big if g]
    small = [g for g in small if g]
    n, p = free.nvars, free.field.p
    if not big:
        return GradedModule.zero(n, free.field)
    degs = [free.mdeg(next(iter(g.terms))) for g in big]
    s = len(big)
    syz = kernel_dicts([g.terms for g in big] + [g.terms for g in small], free.degrees, n, p)
    rels = [{m: c for m, c in v.items() if m[-1] < s} for v in syz]
    gdegs, rels = prune_presentation(degs, rels, p, free.field.inv)
    return _module_from(n, free.field, gdegs, rels, cap)


__all__ = [
    "GradedModule", "ResolutionData", "INF", "hilbert_series", "dimension", "free_resolution",
    "minimize_resolution", "betti_numbers", "depth", "is_cohen_macaulay", "ext_module",
    "lc_hilbert", "ext_depths", "multiplication_kernel_dim", "submodule_quotient",
    "prune_presentation", "quotient_by",
]
