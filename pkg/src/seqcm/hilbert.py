"""Hilbert series of graded quotients F/U and Laurent-type series of local cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

# Laurent polynomials with integer coefficients are dicts {exponent: coefficient}.


def lp_clean(a: dict) -> dict:
    return {e: c for e, c in a.items() if c}


def lp_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
    return lp_clean(out)


def lp_mul(a: dict, b: dict) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return lp_clean(out)


def lp_shift(a: dict, k: int) -> dict:
    return {e + k: c for e, c in a.items()}


def lp_eval1(a: dict) -> int:
    return sum(a.values())


def lp_div_one_minus_z(a: dict) -> dict:
    """Exact quotient a / (1 - z); a must vanish at z = 1."""
    if not a:
        return {}
    lo, hi = min(a), max(a)
    out = {}
    acc = 0
    # a = (1 - z) q  =>  q_e = sum_{k <= e} a_k
    for e in range(lo, hi):
        acc += a.get(e, 0)
        if acc:
            out[e] = acc
    if acc + a.get(hi, 0) != 0:
        raise ValueError("polynomial is not divisible by 1 - z")
    return out


def lp_substitute_inverse(a: dict) -> dict:
    return {-e: c for e, c in a.items()}


def lp_to_pairs(a: dict):
    return [[e, a[e]] for e in sorted(a)]


def lp_str(a: dict, var: str = "z") -> str:
    if not a:
        return "0"
    out = ""
    for e in sorted(a):
        c = a[e]
        if e == 0:
            mono = "1"
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}" if e > 0 else f"{var}^({e})"
        body = str(abs(c)) if mono == "1" else (mono if abs(c) == 1 else f"{abs(c)}*{mono}")
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _wrap(a: dict) -> str:
    text = lp_str(a)
    return text if len(a) == 1 and "(" not in text else f"({text})"


@dataclass(frozen=True)
class HilbertSeries:
    """numerator / (1 - z)^denominator_power in reduced form (numerator(1) != 0 unless zero)."""

    numerator: tuple  # sorted (exponent, coefficient) pairs
    denominator_power: int

    @classmethod
    def from_parts(cls, num: dict, power: int) -> "HilbertSeries":
        num = lp_clean(num)
        if not num:
            return cls((), 0)
        while power > 0 and lp_eval1(num) == 0:
            num = lp_div_one_minus_z(num)
            power -= 1
        return cls(tuple(sorted(num.items())), power)

    @property
    def num(self) -> dict:
        return dict(self.numerator)

    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def dimension(self) -> int:
        """Pole order at z = 1; -1 for the zero module."""
        return -1 if self.is_zero() else self.denominator_power

    def __add__(self, other):
        k = max(self.denominator_power, other.denominator_power)
        a = lp_mul(self.num, _one_minus_z_pow(k - self.denominator_power))
        b = lp_mul(other.num, _one_minus_z_pow(k - other.denominator_power))
        return HilbertSeries.from_parts(lp_add(a, b), k)

    def __sub__(self, other):
        k = max(self.denominator_power, other.denominator_power)
        a = lp_mul(self.num, _one_minus_z_pow(k - self.denominator_power))
        b = lp_mul(other.num, _one_minus_z_pow(k - other.denominator_power))
        return HilbertSeries.from_parts(lp_add(a, b, -1), k)

    def shifted(self, k: int) -> "HilbertSeries":
        """Series of N(-k), i.e. multiplied by z^k."""
        return HilbertSeries(tuple((e + k, c) for e, c in self.numerator), self.denominator_power)

    def coefficient(self, d: int) -> int:
        """dim_k N_d."""
        k = self.denominator_power
        total = 0
        for e, c in self.numerator:
            t = d - e
            if t < 0:
                continue
            total += c * (comb(t + k - 1, k - 1) if k > 0 else int(t == 0))
        return total

    def coefficients(self, upto: int):
        lo = min((e for e, _ in self.numerator), default=0)
        return {d: self.coefficient(d) for d in range(lo, upto + 1)}

    def to_local_cohomology(self) -> "LCHilbert":
        """Substitute z -> 1/z: N(1/z)/(1 - 1/z)^k = z^k N(1/z) / (z - 1)^k."""
        k = self.denominator_power
        num = lp_shift(lp_substitute_inverse(self.num), k)
        return LCHilbert.from_parts(num, k)

    def __str__(self):
        if self.is_zero():
            return "0"
        k = self.denominator_power
        if k == 0:
            return lp_str(self.num)
        return f"{_wrap(self.num)}/(1-z)" + (f"^{k}" if k > 1 else "")

    def to_json(self):
        return {"numerator": lp_to_pairs(self.num), "denominator_power": self.denominator_power}


def _one_minus_z_pow(k: int) -> dict:
    return {i: (-1) ** i * comb(k, i) for i in range(k + 1)}


def _z_minus_one_pow(k: int) -> dict:
    return {i: (-1) ** (k - i) * comb(k, i) for i in range(k + 1)}


@dataclass(frozen=True)
class LCHilbert:
    """numerator / (z - 1)^pole_power, expanded in powers of 1/z (degrees bounded above)."""

    numerator: tuple
    pole_power: int

    @classmethod
    def from_parts(cls, num: dict, power: int) -> "LCHilbert":
        num = lp_clean(num)
        if not num:
            return cls((), 0)
        while power > 0 and lp_eval1(num) == 0:
            # (z - 1) = -(1 - z)
            num = {e: -c for e, c in lp_div_one_minus_z(num).items()}
            power -= 1
        return cls(tuple(sorted(num.items())), power)

    @classmethod
    def zero(cls):
        return cls((), 0)

    @property
    def num(self) -> dict:
        return dict(self.numerator)

    def is_zero(self) -> bool:
        return not self.numerator

    def equals(self, other: "LCHilbert") -> bool:
        """Cross-multiplied identity a/(z-1)^p == b/(z-1)^q."""
        k = max(self.pole_power, other.pole_power)
        a = lp_mul(self.num, _z_minus_one_pow(k - self.pole_power))
        b = lp_mul(other.num, _z_minus_one_pow(k - other.pole_power))
        return a == b

    def __eq__(self, other):
        return isinstance(other, LCHilbert) and self.equals(other)

    def __hash__(self):
        return hash((self.numerator, self.pole_power))

    def __add__(self, other):
        k = max(self.pole_power, other.pole_power)
        a = lp_mul(self.num, _z_minus_one_pow(k - self.pole_power))
        b = lp_mul(other.num, _z_minus_one_pow(k - other.pole_power))
        return LCHilbert.from_parts(lp_add(a, b), k)

    def __sub__(self, other):
        k = max(self.pole_power, other.pole_power)
        a = lp_mul(self.num, _z_minus_one_pow(k - self.pole_power))
        b = lp_mul(other.num, _z_minus_one_pow(k - other.pole_power))
        return LCHilbert.from_parts(lp_add(a, b, -1), k)

    def top_degree(self):
        """Largest degree that can carry a nonzero coefficient."""
        if self.is_zero():
            return None
        return max(self.num) - self.pole_power

    def coefficient(self, d: int) -> int:
        """Coefficient of z^d in the expansion in 1/z.

        1/(z-1)^k = z^-k (1 - 1/z)^-k = sum_t C(t+k-1, k-1) z^(-k-t).
        """
        k = self.pole_power
        total = 0
        for e, c in self.numerator:
            t = e - k - d
            if t < 0:
                continue
            total += c * (comb(t + k - 1, k - 1) if k > 0 else int(t == 0))
        return total

    def leq(self, other: "LCHilbert", window: int = 40) -> bool:
        """Coefficientwise self <= other.

        Coefficients are checked from the top degree down through the
        numerator span plus ``window`` degrees; beyond that both sides are
        polynomial in the degree and the sign of the difference is read off
        its asymptotics.
        """
        diff = other - self
        if diff.is_zero():
            return True
        top = diff.top_degree()
        lo = min(diff.num) - diff.pole_power - window
        if any(diff.coefficient(d) < 0 for d in range(lo, top + 1)):
            return False
        # below lo the coefficient is sum_e c_e C(e-k-d+k-1, k-1): a polynomial in -d
        # with leading coefficient sum_e c_e / (k-1)!, positive iff numerator(1) > 0
        return diff.pole_power == 0 or lp_eval1(diff.num) > 0

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.pole_power == 0:
            return lp_str(self.num)
        k = self.pole_power
        return f"{_wrap(self.num)}/(z-1)" + (f"^{k}" if k > 1 else "")

    def to_json(self):
        return {"numerator": lp_to_pairs(self.num), "pole_power": self.pole_power}


# ---------------------------------------------------------------- monomial numerators


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def kpoly(gens, n: int) -> dict:
    """Numerator N with Hilb(R/I) = N / (1 - z)^n for the monomial ideal I = (gens)."""
    gens = _minimalize(tuple(g) for g in gens)
    return _kpoly(gens, n)


def _kpoly(gens, n):
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    # pairwise disjoint supports: a regular sequence
    used = [0] * n
    disjoint = True
    for g in gens:
        for i, a in enumerate(g):
            if a:
                if used[i]:
                    disjoint = False
                    break
                used[i] = 1
        if not disjoint:
            break
    if disjoint:
        out = {0: 1}
        for g in gens:
            out = lp_mul(out, {0: 1, sum(g): -1})
        return out
    # pivot on the variable shared by most generators
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    i = max(range(n), key=lambda v: (counts[v], -v))
    exps = sorted(g[i] for g in gens if g[i])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if k == i else 0 for k in range(n))
    # N(I) = N(I + (p)) + z^deg(p) N(I : p)
    plus = _minimalize(gens + [pivot])
    colon = _minimalize(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens)
    return lp_add(_kpoly(plus, n), lp_shift(_kpoly(colon, n), e))


def hilbert_series_monomial(components, degrees, n: int) -> HilbertSeries:
    """Hilb(F/U) for a componentwise monomial module U = sum I_j e_j.

    ``components[j]`` lists the exponent tuples generating I_j.
    """
    num = {}
    for gens, d in zip(components, degrees):
        num = lp_add(num, lp_shift(kpoly(gens, n), d))
    return HilbertSeries.from_parts(num, n)


def hilbert_series_of(free, gens) -> HilbertSeries:
    """Hilbert series of F/U for homogeneous generators of U."""
    from .groebner import buchberger
    from .algebra import DEGREVLEX
    gens = [g for g in gens if g]
    comps = [[] for _ in range(free.rank)]
    if gens:
        if all(len(g.terms) == 1 for g in gens):
            leads = [next(iter(g.terms)) for g in gens]
        else:
            leads = buchberger(gens, DEGREVLEX, free).leads
        for m in leads:
            comps[m[-1]].append(m[:-1])
    return hilbert_series_monomial(comps, free.degrees, free.nvars)
