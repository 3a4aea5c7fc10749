"""Coefficient fields, free modules, module elements, term orders and coordinate changes.

Module monomials are flat tuples ``(a_1, ..., a_n, i)``: the exponent vector of
the ring monomial followed by the 0-based index of the basis vector.  Elements
store a dict from such tuples to nonzero coefficients.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from operator import add, sub

import gmpy2

MAX_VARS = 64


class AlgebraError(ValueError):
    pass


class Field:
    """Q (characteristic 0, exact rationals) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        p = int(p)
        if p != 0 and (p < 2 or p >= 2**31 or not gmpy2.is_prime(p)):
            raise AlgebraError(f"characteristic must be 0 or a prime < 2^31, got {p}")
        self.p = p

    @property
    def kind(self) -> str:
        return "rationals" if self.p == 0 else "prime-field"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        if self.p:
            if isinstance(x, (Fraction, type(gmpy2.mpq()))):
                return int(x.numerator) * pow(int(x.denominator), -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, str):
            return gmpy2.mpq(Fraction(x))
        return gmpy2.mpq(x)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return 1 / gmpy2.mpq(a)

    @property
    def one(self):
        return self(1)

    @property
    def zero(self):
        return self(0)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def coeff_str(c) -> str:
    if isinstance(c, int):
        return str(c)
    c = gmpy2.mpq(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class FreeModule:
    """F = R(-d_1) + ... + R(-d_r) over R = k[x1..xn]; ``degrees`` holds the d_i."""

    nvars: int
    degrees: tuple = (0,)
    field: Field = QQ

    def __post_init__(self):
        if not 1 <= self.nvars <= MAX_VARS:
            raise AlgebraError(f"number of variables must be in 1..{MAX_VARS}")
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not self.degrees:
            raise AlgebraError("free module must have positive rank")

    @classmethod
    def from_shifts(cls, nvars, shifts, field=QQ):
        """F(a_1,...,a_r): basis vector e_i has degree -a_i."""
        return cls(nvars, tuple(-int(a) for a in shifts), field)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def shifts(self):
        return tuple(-d for d in self.degrees)

    def mdeg(self, m) -> int:
        """Standard degree of the module monomial m."""
        return sum(m[:-1]) + self.degrees[m[-1]]

    def multidegree(self, m, r: int):
        """Z x Z^r degree of m: total degree followed by the exponents of the last r variables."""
        n = self.nvars
        return (self.mdeg(m),) + tuple(m[n - r:n])

    def unit(self, i: int) -> "Element":
        return Element(self, {(0,) * self.nvars + (i,): self.field.one})

    def zero(self) -> "Element":
        return Element(self, {})

    def element(self, terms) -> "Element":
        """Build an element from an iterable of (exponents, index, coefficient)."""
        out = {}
        f = self.field
        for exps, i, c in terms:
            m = tuple(exps) + (i,)
            v = out.get(m, 0) + f(c)
            if f.p:
                v %= f.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Element(self, out)

    def vector(self, polys) -> "Element":
        """Element with the given rank-1 polynomials as coordinates."""
        if len(polys) != self.rank:
            raise AlgebraError("vector length differs from the rank")
        out = {}
        for i, g in enumerate(polys):
            for m, c in g.terms.items():
                out[m[:-1] + (i,)] = c
        return Element(self, out)


def ring(nvars: int, field: Field = QQ) -> FreeModule:
    """The ring itself as a free module of rank 1."""
    return FreeModule(nvars, (0,), field)


class Element:
    """An element of a free module; polynomials are elements of rank-1 modules."""

    __slots__ = ("free", "terms")

    def __init__(self, free: FreeModule, terms: dict):
        self.free = free
        self.terms = terms

    @classmethod
    def variable(cls, free: FreeModule, i: int) -> "Element":
        e = [0] * free.nvars
        e[i] = 1
        return cls(free, {tuple(e) + (0,): free.field.one})

    @classmethod
    def monomial(cls, free: FreeModule, exps, comp: int = 0, coeff=1) -> "Element":
        return cls(free, {tuple(exps) + (comp,): free.field(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, Element) and self.free == other.free and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if self.free != other.free:
            raise AlgebraError("elements live in different free modules")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        axpy(out, 1, other.terms, None, self.free.field.p)
        return Element(self.free, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        axpy(out, -1, other.terms, None, self.free.field.p)
        return Element(self.free, out)

    def __neg__(self):
        p = self.free.field.p
        return Element(self.free, {m: (-c) % p if p else -c for m, c in self.terms.items()})

    def scale(self, c):
        f = self.free.field
        c = f(c)
        if not c:
            return self.free.zero()
        if f.p:
            return Element(self.free, {m: v * c % f.p for m, v in self.terms.items()})
        return Element(self.free, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        """Product by a scalar or by a polynomial (an element of a rank-1 module)."""
        if isinstance(other, Element):
            if other.free.rank != 1 or other.free.nvars != self.free.nvars:
                raise AlgebraError("can only multiply by a polynomial")
            return Element(self.free, mul_poly(self.terms, other.terms, self.free.field.p))
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if self.free.rank != 1:
            raise AlgebraError("powers need a polynomial")
        out = {(0,) * self.free.nvars + (0,): self.free.field.one}
        for _ in range(e):
            out = mul_poly(out, self.terms, self.free.field.p)
        return Element(self.free, out)

    def degrees(self):
        return {self.free.mdeg(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise AlgebraError("degree of a zero or non-homogeneous element")
        return ds.pop()

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_monomial(self, order: "MonomialOrder"):
        return min(self.terms, key=order.key(self.free))

    def coordinates(self):
        """The rank-1 polynomials forming the coordinates of this element."""
        R = ring(self.free.nvars, self.free.field)
        out = [dict() for _ in range(self.free.rank)]
        for m, c in self.terms.items():
            out[m[-1]][m[:-1] + (0,)] = c
        return [Element(R, t) for t in out]

    def __repr__(self):
        return f"Element({format_element(self)})"

    def __str__(self):
        return format_element(self)


def axpy(f: dict, c, g: dict, shift, p: int):
    """In place f += c * shift * g, where shift is a flat monomial with index 0 or None."""
    if shift is None:
        for m, v in g.items():
            nv = f.get(m, 0) + c * v
            if p:
                nv %= p
            if nv:
                f[m] = nv
            else:
                del f[m]
    else:
        for m, v in g.items():
            m = tuple(map(add, m, shift))
            nv = f.get(m, 0) + c * v
            if p:
                nv %= p
            if nv:
                f[m] = nv
            else:
                del f[m]


def mul_poly(f: dict, g: dict, p: int) -> dict:
    """Product of an element f by a polynomial g (g stored with index 0)."""
    out = {}
    for m, c in g.items():
        axpy(out, c, f, m, p)
    return out


def _var_name(i):
    return f"x{i + 1}"


def format_monomial(exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(_var_name(i))
        elif e:
            parts.append(f"{_var_name(i)}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(terms: dict, order=None) -> str:
    """Polynomial string with terms in decreasing degrevlex order."""
    if not terms:
        return "0"
    ms = sorted(terms, key=order or _default_key)
    out = []
    for m in ms:
        c = terms[m]
        mono = format_monomial(m[:-1])
        cs = coeff_str(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if mono == "1":
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _default_key(m):
    return (-sum(m[:-1]), m[-2::-1], m[-1])


def format_element(f: Element) -> str:
    if f.free.rank == 1:
        return format_poly(f.terms)
    coords = [dict() for _ in range(f.free.rank)]
    for m, c in f.terms.items():
        coords[m[-1]][m[:-1] + (0,)] = c
    return "[" + ", ".join(format_poly(t) for t in coords) + "]"


# ---------------------------------------------------------------- orders


class Cmp(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1
    EQ_PARTIAL = 2  # distinct monomials that a partial order cannot tell apart


class _KeyCache(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, m):
        v = self[m] = self.fn(m)
        return v


def omega(r: int, n: int):
    """Rows of Omega_{r,n}: omega_k has -1 at variable n-k+1 and 0 elsewhere."""
    if not 0 <= r <= n:
        raise AlgebraError(f"r must lie in [0, {n}]")
    rows = []
    for k in range(r):
        row = [0] * n
        row[n - 1 - k] = -1
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class MonomialOrder:
    """Weight rows refined by a tiebreak, extended to modules degree-then-monomial-then-position.

    With ``tiebreak=None`` the order is the bare partial order given by the
    weight rows alone (this is how rev_r is represented).  Keys are arranged so
    that the *smaller* key is the *bigger* monomial, so ``min`` finds leading terms.
    """

    weight_rows: tuple = ()
    tiebreak: str | None = "degrevlex"

    def __post_init__(self):
        object.__setattr__(self, "weight_rows", tuple(tuple(int(x) for x in w) for w in self.weight_rows))
        if self.tiebreak not in ("degrevlex", "lex", None):
            raise AlgebraError(f"unknown tiebreak {self.tiebreak!r}")

    @property
    def is_total(self) -> bool:
        return self.tiebreak is not None

    def _check(self, n):
        for w in self.weight_rows:
            if len(w) != n:
                raise AlgebraError("weight row length differs from the number of variables")

    def key(self, free: FreeModule):
        """Cached sort key on flat module monomials of ``free``."""
        n = free.nvars
        self._check(n)
        rows = self.weight_rows
        degs = free.degrees
        if self.tiebreak is None:
            def fn(m):
                return tuple(-sum(a * b for a, b in zip(w, m)) for w in rows)
        elif not rows and self.tiebreak == "degrevlex":
            def fn(m):
                return (-(sum(m[:-1]) + degs[m[-1]]), m[-2::-1], m[-1])
        elif self.tiebreak == "degrevlex":
            def fn(m):
                return (-(sum(m[:-1]) + degs[m[-1]]),
                        tuple(-sum(a * b for a, b in zip(w, m)) for w in rows),
                        m[-2::-1], m[-1])
        else:
            def fn(m):
                return (-(sum(m[:-1]) + degs[m[-1]]),
                        tuple(-sum(a * b for a, b in zip(w, m)) for w in rows),
                        tuple(-a for a in m[:-1]), m[-1])
        return _KeyCache(fn).__getitem__


DEGREVLEX = MonomialOrder()


def rev_order(r: int, n: int) -> MonomialOrder:
    """The partial order rev_r on k[x1..xn]."""
    return MonomialOrder(omega(r, n), None)


def rev_refined(r: int, n: int) -> MonomialOrder:
    """Omega_{r,n} refined by degrevlex (a total order equal to degrevlex on each degree)."""
    return MonomialOrder(omega(r, n), "degrevlex")


def compare(order: MonomialOrder, a, b, free: FreeModule | None = None) -> Cmp:
    """Compare two module monomials (flat tuples, or exponent tuples for polynomials)."""
    a, b = tuple(a), tuple(b)
    if free is None:
        if len(a) != len(b):
            raise AlgebraError("monomials of different length")
        a, b = a + (0,), b + (0,)
        free = ring(len(a) - 1)
    if len(a) != free.nvars + 1 or len(b) != free.nvars + 1:
        raise AlgebraError("monomial length does not match the module")
    if a == b:
        return Cmp.EQ
    key = order.key(free)
    ka, kb = key(a), key(b)
    if ka == kb:
        return Cmp.EQ_PARTIAL
    return Cmp.GT if ka < kb else Cmp.LT


def initial_form_partial(r: int, f: Element) -> Element:
    """Sum of the terms of f whose monomials are rev_r-maximal."""
    if f.is_zero():
        raise AlgebraError("initial form of the zero element")
    n = f.free.nvars
    if not 0 <= r <= n:
        raise AlgebraError(f"r must lie in [0, {n}]")
    return Element(f.free, partial_initial_terms(f.terms, r, n))


def partial_initial_terms(terms: dict, r: int, n: int) -> dict:
    if r == 0:
        return dict(terms)

    # maximal omega-weights <=> lexicographically smallest (a_n, a_{n-1}, ...)
    def w(m):
        return tuple(m[n - 1 - k] for k in range(r))

    best = min(w(m) for m in terms)
    return {m: c for m, c in terms.items() if w(m) == best}


# ---------------------------------------------------------------- coordinate changes


def _mat_inverse(mat, field: Field):
    n = len(mat)
    p = field.p
    a = [[field(x) for x in row] + [field(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = field.inv(a[col][col])
        a[col] = [x * inv % p if p else x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [(x - c * y) % p if p else x - c * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


class CoordinateChange:
    """Linear substitution x_i -> sum_j matrix[i][j] x_j.

    scope 'last-r' requires identity rows for x_1..x_{n-r}.
    """

    __slots__ = ("matrix", "scope", "r", "field", "_inverse")

    def __init__(self, matrix, field: Field = QQ, scope: str = "all", r: int | None = None):
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise AlgebraError("coordinate change must be square")
        self.field = field
        self.matrix = tuple(tuple(field(x) for x in row) for row in matrix)
        if scope not in ("all", "last-r"):
            raise AlgebraError(f"unknown scope {scope!r}")
        self.scope = scope
        self.r = n if scope == "all" else int(r)
        if scope == "last-r":
            if not 0 <= self.r <= n:
                raise AlgebraError("r out of range")
            for i in range(n - self.r):
                if any(self.matrix[i][j] != (1 if i == j else 0) for j in range(n)):
                    raise AlgebraError(f"row {i + 1} must be an identity row for scope last-{self.r}")
        inv = _mat_inverse(self.matrix, field)
        if inv is None:
            raise AlgebraError("singular coordinate change")
        self._inverse = inv

    @property
    def n(self):
        return len(self.matrix)

    def inverse(self) -> "CoordinateChange":
        return CoordinateChange(self._inverse, self.field, self.scope, self.r)

    @classmethod
    def identity(cls, n, field=QQ):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def random(cls, n: int, field: Field, rng: random.Random, r: int | None = None, bound: int = 997):
        """Random change; entries nonzero integers in [-bound, bound] (over F_p: uniform residues).

        With r given only the last r variables are moved. Zero is allowed over F_p,
        otherwise F_2 would only ever produce the singular all-ones matrix.
        """
        scope = "all" if r is None else "last-r"
        r = n if r is None else r

        def entry():
            if field.p:
                return rng.randrange(field.p)
            v = rng.randint(1, bound)
            return v if rng.random() < 0.5 else -v

        while True:
            rows = [[int(i == j) for j in range(n)] for i in range(n - r)]
            rows += [[entry() for _ in range(n)] for _ in range(r)]
            try:
                return cls(rows, field, scope, r)
            except AlgebraError:
                continue

    def __eq__(self, other):
        return isinstance(other, CoordinateChange) and self.matrix == other.matrix and self.field == other.field

    def __hash__(self):
        return hash(self.matrix)


def apply_change(g: CoordinateChange, f: Element) -> Element:
    if g.n != f.free.nvars or g.field != f.free.field:
        raise AlgebraError("coordinate change does not match the module")
    return Element(f.free, change_terms(g, f.terms))


def change_terms(g: CoordinateChange, terms: dict) -> dict:
    n = g.n
    p = g.field.p
    images = []
    for i, row in enumerate(g.matrix):
        lin = {}
        for j, c in enumerate(row):
            if c:
                e = [0] * (n + 1)
                e[j] = 1
                lin[tuple(e)] = c
        images.append(lin)
    identity = [len(images[i]) == 1 and images[i].get(tuple(int(k == i) for k in range(n)) + (0,)) == 1
                for i in range(n)]
    powers = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            if e == 1:
                powers[key] = images[i]
            else:
                powers[key] = mul_poly(power(i, e - 1), images[i], p)
        return powers[key]

    out = {}
    for m, c in terms.items():
        kept = tuple(a if identity[i] else 0 for i, a in enumerate(m[:-1])) + (m[-1],)
        prod = {kept: c}
        for i in range(n):
            if m[i] and not identity[i]:
                prod = mul_poly(prod, power(i, m[i]), p)
        axpy(out, 1, prod, None, p)
    return out


def hyperplane_restriction(f: Element, coeffs, target: FreeModule | None = None) -> Element:
    """g_n(f): substitute x_n -> a_1 x_1 + ... + a_{n-1} x_{n-1}, landing in n-1 variables.

    ``target`` defaults to the free module with the same basis degrees over k[x1..x_{n-1}].
    """
    n = f.free.nvars
    if n < 2 or len(coeffs) != n - 1:
        raise AlgebraError("need n >= 2 and n-1 coefficients")
    field = f.free.field
    target = target or FreeModule(n - 1, f.free.degrees, field)
    if target.nvars != n - 1 or target.degrees != f.free.degrees or target.field != field:
        raise AlgebraError("target module does not match")
    p = field.p
    lin = {}
    for j, a in enumerate(coeffs):
        a = field(a)
        if a:
            lin[tuple(int(k == j) for k in range(n - 1)) + (0,)] = a
    powers = [{(0,) * n: field.one}]
    out = {}
    for m, c in f.terms.items():
        while len(powers) <= m[n - 1]:
            powers.append(mul_poly(powers[-1], lin, p))
        axpy(out, 1, mul_poly({m[:n - 1] + (m[-1],): c}, powers[m[n - 1]], p), None, p)
    return Element(target, out)


def shift_monomial(exps, comp=0):
    return tuple(exps) + (comp,)


def monomial_divides(a, b) -> bool:
    """a | b for flat monomials in the same component."""
    return a[-1] == b[-1] and all(x <= y for x, y in zip(a, b))


def monomial_quotient(b, a):
    """b / a as a flat monomial with index 0."""
    return tuple(map(sub, b[:-1], a[:-1])) + (0,)
