"""Buchberger's algorithm for graded submodules of free modules, Schreyer syzygies,
colon and saturation, and sampled generic initial modules."""

from __future__ import annotations

import gmpy2

import heapq
import random
from dataclasses import dataclass, field as dc_field
from operator import add, sub

from .algebra import (
    DEGREVLEX, AlgebraError, CoordinateChange, Element, FreeModule, MonomialOrder, _KeyCache,
    axpy, change_terms, partial_initial_terms,
)


class NonHomogeneousError(AlgebraError):
    pass


class GinDisagreement(RuntimeError):
    """Random coordinate trials produced different initial modules."""

    def __init__(self, message, candidates, seed, trials):
        super().__init__(message)
        self.candidates = candidates
        self.seed = seed
        self.trials = trials


class DegreeCapExceeded(RuntimeError):
    pass


def degrevlex_key(degs):
    """Cached degrevlex module key for basis degrees ``degs`` (smaller key = bigger term)."""
    def fn(m):
        return (-(sum(m[:-1]) + degs[m[-1]]), m[-2::-1], m[-1])
    return _KeyCache(fn).__getitem__


def schreyer_key(parent_key, leads):
    """Key of the Schreyer order induced by the lead monomials ``leads``."""
    def fn(m):
        lm = leads[m[-1]]
        return (parent_key(tuple(map(add, m[:-1], lm[:-1])) + (lm[-1],)), m[-1])
    return _KeyCache(fn).__getitem__


def _monic(f: dict, key, p):
    lt = min(f, key=key)
    c = f[lt]
    if c == 1:
        return f, lt
    if p:
        inv = pow(int(c), -1, p)
        return {m: v * inv % p for m, v in f.items()}, lt
    inv = 1 / gmpy2.mpq(c)
    return {m: v * inv for m, v in f.items()}, lt


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Basis:
    """Working set of monic elements with lead monomials, indexed by basis position."""

    __slots__ = ("polys", "leads", "buckets", "key", "p")

    def __init__(self, key, p):
        self.polys = []
        self.leads = []
        self.buckets = {}
        self.key = key
        self.p = p

    def add(self, f, lt):
        self.buckets.setdefault(lt[-1], []).append(len(self.polys))
        self.polys.append(f)
        self.leads.append(lt)

    def divisor(self, t):
        for i in self.buckets.get(t[-1], ()):
            if _divides(self.leads[i], t):
                return i
        return None

    def top_reduce(self, f: dict) -> dict:
        key, p = self.key, self.p
        while f:
            t = min(f, key=key)
            i = self.divisor(t)
            if i is None:
                return f
            lm = self.leads[i]
            axpy(f, -f[t], self.polys[i], tuple(map(sub, t[:-1], lm[:-1])) + (0,), p)
        return f

    def full_reduce(self, f: dict) -> dict:
        key, p = self.key, self.p
        out = {}
        while f:
            t = min(f, key=key)
            i = self.divisor(t)
            if i is None:
                out[t] = f.pop(t)
                continue
            lm = self.leads[i]
            axpy(f, -f[t], self.polys[i], tuple(map(sub, t[:-1], lm[:-1])) + (0,), p)
        return out

    def reduce_recording(self, f: dict) -> dict:
        """Reduce f to zero, returning the quotients as a vector over the basis positions."""
        key, p = self.key, self.p
        q = {}
        while f:
            t = min(f, key=key)
            i = self.divisor(t)
            if i is None:
                raise AlgebraError("element does not reduce to zero; input is not a Groebner basis")
            lm = self.leads[i]
            c = f[t]
            shift = tuple(map(sub, t[:-1], lm[:-1]))
            axpy(f, -c, self.polys[i], shift + (0,), p)
            m = shift + (i,)
            v = q.get(m, 0) + c
            if p:
                v %= p
            if v:
                q[m] = v
            else:
                del q[m]
        return q


def _lcm(a, b):
    return tuple(map(max, a, b))


def groebner_dicts(polys, key, mdeg, p, rank1=False):
    """Reduced Groebner basis of homogeneous elements (as dicts), sorted by lead term.

    ``mdeg`` gives the standard degree of a flat monomial; pairs are treated in
    order of degree (normal strategy; sugar equals degree on graded input).
    """
    B = _Basis(key, p)
    heap = []
    serial = 0
    for f in polys:
        if f:
            lt = min(f, key=key)
            heapq.heappush(heap, (mdeg(lt), key(lt), serial, -1, dict(f)))
            serial += 1
    pairs = {}
    while heap:
        _, _, _, i, payload = heapq.heappop(heap)
        if i == -1:
            s = payload
        else:
            j = payload
            lcm = pairs.pop((i, j), None)
            if lcm is None:
                continue
            fi, fj = B.polys[i], B.polys[j]
            li, lj = B.leads[i], B.leads[j]
            s = {}
            axpy(s, 1, fi, tuple(map(sub, lcm[:-1], li[:-1])) + (0,), p)
            axpy(s, -1, fj, tuple(map(sub, lcm[:-1], lj[:-1])) + (0,), p)
        h = B.top_reduce(s)
        if not h:
            continue
        h, t = _monic(h, key, p)
        k = len(B.polys)
        # Gebauer-Moeller: criterion B on the existing pairs
        for (a, b), l in list(pairs.items()):
            if l[-1] == t[-1] and _divides(t, l) and _lcm(B.leads[a], t) != l and _lcm(B.leads[b], t) != l:
                del pairs[(a, b)]
        new = {}
        for a in B.buckets.get(t[-1], ()):
            new[a] = _lcm(B.leads[a], t)
        # criterion M: drop pairs whose lcm is a proper multiple of another new lcm
        lcms = set(new.values())
        keep = {a: l for a, l in new.items()
                if not any(o != l and _divides(o, l) for o in lcms)}
        groups = {}
        for a, l in sorted(keep.items()):
            groups.setdefault(l, []).append(a)
        for l, members in groups.items():
            if rank1 and any(all(x == 0 or y == 0 for x, y in zip(B.leads[a][:-1], t[:-1])) for a in members):
                continue  # product criterion, valid for ideals
            a = members[0]
            pairs[(a, k)] = l
            heapq.heappush(heap, (mdeg(l), key(l), serial, a, k))
            serial += 1
        B.add(h, t)
    # interreduce tails
    out = []
    for f, lt in zip(B.polys, B.leads):
        c = f[lt]
        tail = {m: v for m, v in f.items() if m != lt}
        red = B.full_reduce(tail)
        red[lt] = c
        out.append((key(lt), red))
    out.sort(key=lambda x: x[0])
    return [f for _, f in out]


def _check_homogeneous(free: FreeModule, gens):
    for g in gens:
        if len({free.mdeg(m) for m in g.terms}) > 1:
            raise NonHomogeneousError(f"non-homogeneous generator {g}")


@dataclass(frozen=True)
class GroebnerBasis:
    free: FreeModule
    order: MonomialOrder
    elements: tuple
    certificate: str = "reduced-unique"

    @property
    def leads(self):
        key = self.order.key(self.free)
        return tuple(min(g.terms, key=key) for g in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def _basis(self):
        key = self.order.key(self.free)
        B = _Basis(key, self.free.field.p)
        for g, lt in zip(self.elements, self.leads):
            B.add(g.terms, lt)
        return B

    def reduce(self, f: Element) -> Element:
        """Normal form of f."""
        return Element(self.free, self._basis().full_reduce(dict(f.terms)))

    def contains(self, f: Element) -> bool:
        return not self.reduce(f).terms

    def s_pairs_reduce_to_zero(self) -> bool:
        B = self._basis()
        p = self.free.field.p
        n = len(B.polys)
        for i in range(n):
            for j in range(i + 1, n):
                li, lj = B.leads[i], B.leads[j]
                if li[-1] != lj[-1]:
                    continue
                lcm = _lcm(li, lj)
                s = {}
                axpy(s, 1, B.polys[i], tuple(map(sub, lcm[:-1], li[:-1])) + (0,), p)
                axpy(s, -1, B.polys[j], tuple(map(sub, lcm[:-1], lj[:-1])) + (0,), p)
                if B.full_reduce(s):
                    return False
        return True


def buchberger(gens, order: MonomialOrder = DEGREVLEX, free: FreeModule | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``gens``."""
    gens = list(gens)
    if free is None:
        if not gens:
            raise AlgebraError("cannot infer the free module of an empty generator list")
        free = gens[0].free
    if not order.is_total:
        raise AlgebraError("Buchberger needs a total order")
    _check_homogeneous(free, gens)
    key = order.key(free)
    degs = free.degrees
    polys = groebner_dicts([g.terms for g in gens], key, lambda m: sum(m[:-1]) + degs[m[-1]],
                           free.field.p, rank1=free.rank == 1)
    return GroebnerBasis(free, order, tuple(Element(free, f) for f in polys))


def initial_module(gb: GroebnerBasis):
    """Monomial generators (monic) of the initial submodule."""
    one = gb.free.field.one
    return [Element(gb.free, {lt: one}) for lt in gb.leads]


def initial_module_partial(gens, r: int, free: FreeModule | None = None):
    """Generators of in_{rev_r}(U): partial initial forms of a degrevlex Groebner basis.

    Omega_{r,n} refined by degrevlex coincides with degrevlex on homogeneous
    elements, so the degrevlex basis is used directly.
    """
    gens = list(gens)
    free = free or gens[0].free
    n = free.nvars
    if not 0 <= r <= n:
        raise AlgebraError(f"r must lie in [0, {n}]")
    if r == 0:
        _check_homogeneous(free, gens)
        return [g for g in gens if g]
    gb = buchberger(gens, DEGREVLEX, free)
    return [Element(free, partial_initial_terms(g.terms, r, n)) for g in gb]


# ---------------------------------------------------------------- syzygies


def schreyer_syzygies(polys, leads, key, p, sort_var=None):
    """First syzygies of a Groebner basis (monic dicts with lead monomials) via Schreyer.

    Returns (syzygies, their lead monomials) where syzygies live in the free
    module on the basis positions.  The result is a Groebner basis for the
    Schreyer order ``schreyer_key(key, leads)``.  Redundant pairs (lead term
    divisible by another lead term at the same position) are skipped.
    """
    B = _Basis(key, p)
    for f, lt in zip(polys, leads):
        B.add(f, lt)
    out = []
    for i, li in enumerate(leads):
        cands = []
        for j in range(i + 1, len(leads)):
            lj = leads[j]
            if lj[-1] != li[-1]:
                continue
            lcm = _lcm(li, lj)
            cands.append((tuple(map(sub, lcm[:-1], li[:-1])), j, lcm))
        kept = []
        for a, (m, j, lcm) in enumerate(cands):
            red = False
            for b, (m2, j2, _) in enumerate(cands):
                if b != a and _divides(m2, m) and (m2 != m or b < a):
                    red = True
                    break
            if not red:
                kept.append((m, j, lcm))
        for m, j, lcm in kept:
            lj = leads[j]
            mj = tuple(map(sub, lcm[:-1], lj[:-1]))
            s = {}
            axpy(s, 1, polys[i], m + (0,), p)
            axpy(s, -1, polys[j], mj + (0,), p)
            q = B.reduce_recording(s)
            # m*e_i and mj*e_j both map to lcm, which the recorded quotients stay below
            syz = {mono: (-c) % p if p else -c for mono, c in q.items()}
            syz[m + (i,)] = 1
            syz[mj + (j,)] = p - 1 if p else -1
            out.append((syz, m + (i,)))
    return [s for s, _ in out], [lt for _, lt in out]


def syzygies(gb: GroebnerBasis):
    """First syzygy module of a Groebner basis as (free module F^s, generators).

    Generators are a Groebner basis for the Schreyer order induced by ``gb``.
    """
    free = gb.free
    key = gb.order.key(free)
    leads = gb.leads
    degs = tuple(free.mdeg(lt) for lt in leads) or (0,)
    syz, _ = schreyer_syzygies([g.terms for g in gb], leads, key, free.field.p)
    target = FreeModule(free.nvars, degs, free.field)
    return target, [Element(target, s) for s in syz]


def kernel_dicts(cols, degs, nvars, p):
    """Generators of the syzygy module of arbitrary homogeneous vectors ``cols``.

    ``cols`` live in a free module with basis degrees ``degs``.  Uses the
    elimination trick in F + R^m with F-terms above all unit-vector terms.
    Returns vectors in R^m (basis degree of e_j = degree of cols[j]).
    """
    r = len(degs)
    m = len(cols)
    coldeg = []
    for c in cols:
        coldeg.append(sum(next(iter(c))[:-1]) + degs[next(iter(c))[-1]] if c else None)
    alldegs = tuple(degs) + tuple(d if d is not None else 0 for d in coldeg)

    def fn(t):
        return (t[-1] >= r, -(sum(t[:-1]) + alldegs[t[-1]]), t[-2::-1], t[-1])
    key = _KeyCache(fn).__getitem__
    unit = (0,) * nvars
    polys = []
    zero_cols = []
    for j, c in enumerate(cols):
        if not c:
            zero_cols.append(j)
            continue
        f = dict(c)
        f[unit + (r + j,)] = 1
        polys.append(f)
    gb = groebner_dicts(polys, key, lambda t: sum(t[:-1]) + alldegs[t[-1]], p)
    out = []
    for f in gb:
        lt = min(f, key=key)
        if lt[-1] >= r:
            out.append({t[:-1] + (t[-1] - r,): v for t, v in f.items()})
    for j in zero_cols:
        out.append({unit + (j,): 1})
    return out


# ---------------------------------------------------------------- colon and saturation


def _permute(terms, perm):
    return {tuple(m[perm[i]] for i in range(len(perm))) + (m[-1],): c for m, c in terms.items()}


def colon_variable(free: FreeModule, gens, var: int):
    """Generators of U : x_var (0-based var) using a revlex basis with x_var moved last."""
    n = free.nvars
    perm = list(range(n))
    perm.remove(var)
    perm.append(var)
    inv = [perm.index(i) for i in range(n)]
    key = degrevlex_key(free.degrees)
    degs = free.degrees
    polys = groebner_dicts([_permute(g.terms, perm) for g in gens], key,
                           lambda m: sum(m[:-1]) + degs[m[-1]], free.field.p)
    out = []
    for f in polys:
        e = min(m[n - 1] for m in f)
        if e:
            f = {m[:n - 1] + (m[n - 1] - 1, m[-1]): c for m, c in f.items()}
        out.append(Element(free, _permute(f, inv)))
    return out


def _hilbert_key(free, gens):
    from .hilbert import hilbert_series_of
    return hilbert_series_of(free, gens)


def colon_saturate(free: FreeModule, gens, x="m"):
    """U : x^oo for a variable index x (0-based) or U : m^oo for x == 'm'.

    Monomial input is handled by exponent truncation; otherwise the colon is
    iterated until the Hilbert series stabilizes.
    """
    gens = [g for g in gens if g]
    _check_homogeneous(free, gens)
    if x == "m":
        n = free.nvars
        parts = [colon_saturate(free, gens, i) for i in range(n)]
        result = parts[0]
        for other in parts[1:]:
            result = intersect(free, result, other)
        return buchberger(result, DEGREVLEX, free).elements if result else []
    if all(len(g.terms) == 1 for g in gens):
        out = {}
        for g in gens:
            (m, _), = g.terms.items()
            m = m[:x] + (0,) + m[x + 1:]
            out[m] = free.field.one
        from .monomial import minimalize_flat
        return [Element(free, {m: free.field.one}) for m in minimalize_flat(list(out))]
    cur = buchberger(gens, DEGREVLEX, free).elements
    hs = _hilbert_key(free, cur)
    while True:
        nxt = colon_variable(free, cur, x)
        hs2 = _hilbert_key(free, nxt)
        if hs2 == hs:
            return list(buchberger(cur, DEGREVLEX, free).elements)
        cur, hs = nxt, hs2


def colon_element(free: FreeModule, gens, f: Element):
    """U : f = {a in F : f a in U} for a homogeneous polynomial f."""
    r = free.rank
    p = free.field.p
    cols = []
    for i in range(r):
        col = {}
        axpy(col, 1, f.terms, None, p)
        cols.append({m[:-1] + (i,): c for m, c in col.items()})
    cols += [g.terms for g in gens if g]
    ker = kernel_dicts(cols, free.degrees, free.nvars, p)
    out = []
    for v in ker:
        w = {m: c for m, c in v.items() if m[-1] < r}
        if w:
            out.append(Element(free, w))
    return out


def intersect(free: FreeModule, a, b):
    """U cap V via syzygies of [U | V]."""
    a = [g for g in a if g]
    b = [g for g in b if g]
    if not a or not b:
        return []
    cols = [g.terms for g in a] + [g.terms for g in b]
    ker = kernel_dicts(cols, free.degrees, free.nvars, free.field.p)
    p = free.field.p
    out = []
    for v in ker:
        acc = {}
        for m, c in v.items():
            if m[-1] < len(a):
                axpy(acc, c, a[m[-1]].terms, m[:-1] + (0,), p)
        if acc:
            out.append(Element(free, acc))
    return out


# ---------------------------------------------------------------- generic initial modules


@dataclass(frozen=True)
class GinResult:
    initial_module: tuple
    trials_agreed: int
    trials_total: int
    seed: int
    scope: str
    r: int
    bound: int = 997
    changes: tuple = dc_field(default=(), compare=False, repr=False)


def _trial_seeds(seed, trials):
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(trials)]


def _signature(free, gb_elems, r):
    """Data that generic trials must reproduce: lead monomials and term supports."""
    key = DEGREVLEX.key(free)
    leads = tuple(min(g.terms, key=key) for g in gb_elems)
    if r == free.nvars:
        return leads
    return leads, tuple(tuple(sorted(g.terms, key=key)) for g in gb_elems)


def _gin_attempt(free, gens, r, trials, seed, bound):
    n = free.nvars
    results = []
    changes = []
    for s in _trial_seeds(seed, trials):
        g = CoordinateChange.random(n, free.field, random.Random(s), None if r == n else r, bound)
        moved = [change_terms(g, f.terms) for f in gens]
        gb = buchberger([Element(free, t) for t in moved], DEGREVLEX, free)
        if r == n:
            mod = tuple(initial_module(gb))
        else:
            mod = tuple(Element(free, partial_initial_terms(e.terms, r, n)) for e in gb)
        results.append((_signature(free, mod, r), mod))
        changes.append(g)
    return results, changes


def _gin_common(free, gens, r, trials, seed, bound, retries):
    gens = [g for g in gens if g]
    _check_homogeneous(free, gens)
    if trials < 2:
        raise AlgebraError("at least two trials are required")
    scope = "all-variables" if r == free.nvars else "last-r-variables"
    if r == 0 or not gens:
        gb = buchberger(gens, DEGREVLEX, free).elements if gens else ()
        return GinResult(tuple(gb), trials, trials, seed, scope, r, bound)
    for attempt in range(retries + 1):
        results, changes = _gin_attempt(free, gens, r, trials, seed, bound)
        sigs = {sig for sig, _ in results}
        if len(sigs) == 1:
            return GinResult(results[0][1], trials, trials, seed, scope, r, bound, tuple(changes))
        if attempt < retries:
            bound *= 2
    best = max(sum(1 for s, _ in results if s == sig) for sig in sigs)
    raise GinDisagreement(
        f"{trials} random coordinate trials disagree ({best} agreed, seed {seed}); "
        "retry with more trials or another seed",
        [mod for _, mod in results], seed, trials)


def gin(free: FreeModule, gens, trials: int = 3, seed: int = 0, bound: int = 997, retries: int = 1) -> GinResult:
    """Gin(U) for degrevlex: initial module after a random change of all variables."""
    return _gin_common(free, gens, free.nvars, trials, seed, bound, retries)


def gin_r(free: FreeModule, gens, r: int, trials: int = 3, seed: int = 0, bound: int = 997,
          retries: int = 1) -> GinResult:
    """gin_r(U): partial initial module in_{rev_r} after a random change of the last r variables."""
    if not 0 <= r <= free.nvars:
        raise AlgebraError(f"r must lie in [0, {free.nvars}]")
    return _gin_common(free, gens, r, trials, seed, bound, retries)
