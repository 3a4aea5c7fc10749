"""Input language: tokenizer, recursive-descent parser and canonical printer."""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from ..algebra import Field, format_monomial


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


KEYWORDS = ("ring", "ideal", "module", "complex", "check", "gin", "filtration", "hilb-lc", "lexcmp")
CHECKS = ("scm", "iscm", "edepth")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<kw>hilb-lc\b)
  | (?P<dots>\.\.)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[\[\](){},=^*+\-/;:])
""", re.X)


@dataclass(frozen=True)
class Token:
    kind: str   # 'int', 'name', 'sym', 'dots', 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str):
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            out.append(Token("name" if kind == "kw" else kind, tok, line, pos - line_start + 1))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# ---------------------------------------------------------------- document model


Poly = dict  # {exponent tuple: Fraction}


@dataclass
class Obj:
    kind: str          # 'ideal', 'module', 'complex'
    name: str
    data: tuple        # ideal: polys; module: (shifts, vectors); complex: (n, facets)
    line: int = dc_field(default=0, compare=False)


@dataclass
class Request:
    command: str       # 'scm', 'iscm', 'edepth', 'gin', 'filtration', 'hilb-lc', 'lexcmp'
    target: str
    params: dict
    line: int = dc_field(default=0, compare=False)

    def text(self):
        if self.command in CHECKS:
            extra = f" {self.params['i']}" if self.command == "iscm" else ""
            return f"check {self.command}{extra} {self.target}"
        opts = "".join(f" {k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.command} {self.target}{opts}"


@dataclass
class InputDocument:
    nvars: int | None
    field: Field | None
    objects: dict
    requests: list


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.nvars = None
        self.field = None
        self.objects = {}
        self.requests = []

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def take(self, text=None, kind=None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, found {got}")
        self.i += 1
        return t

    def at(self, text):
        return self.tok.text == text and self.tok.kind in ("sym", "name", "dots")

    def integer(self) -> int:
        neg = False
        if self.at("-"):
            self.i += 1
            neg = True
        v = int(self.take(kind="int").text)
        return -v if neg else v

    def document(self) -> InputDocument:
        while self.tok.kind != "eof":
            if self.at(";"):
                self.i += 1
                continue
            t = self.tok
            if t.kind != "name" or t.text not in KEYWORDS:
                raise self.error(f"expected a statement keyword, found {t.text!r}")
            getattr(self, "st_" + t.text.replace("-", "_"))()
        return InputDocument(self.nvars, self.field, self.objects, self.requests)

    # statements

    def st_ring(self):
        t = self.take("ring")
        if self.nvars is not None:
            raise self.error("ring declared twice", t)
        self.field = self.field_spec()
        self.take("[")
        first = self.variable(check=False)
        if first != 0:
            raise self.error("variables must start at x1")
        self.take(kind="dots")
        if self.tok.kind == "int":
            last = int(self.take().text)
        else:
            last = self.variable(check=False) + 1
        if last < 1:
            raise self.error("empty variable range")
        self.take("]")
        self.nvars = last

    def field_spec(self) -> Field:
        t = self.take(kind="name")
        if t.text in ("Q", "QQ"):
            return Field(0)
        if t.text == "GF":
            self.take("(")
            p = self.take(kind="int")
            self.take(")")
            try:
                return Field(int(p.text))
            except ValueError as e:
                raise self.error(str(e), p)
        raise self.error(f"unknown field {t.text!r}; use Q or GF(p)", t)

    def need_ring(self, t):
        if self.nvars is None:
            raise self.error("declare the ring before any ideal or module", t)

    def new_name(self):
        t = self.take(kind="name")
        if t.text in KEYWORDS:
            raise self.error(f"{t.text!r} is a reserved word", t)
        if t.text in self.objects:
            raise self.error(f"{t.text!r} is already defined", t)
        return t

    def st_ideal(self):
        t = self.take("ideal")
        self.need_ring(t)
        name = self.new_name().text
        self.take("=")
        polys = []
        while True:
            start = self.tok
            f = self.poly()
            if f and not _homogeneous(f):
                raise self.error("generator is not homogeneous", start)
            polys.append(f)
            if not self.at(","):
                break
            self.i += 1
        self.objects[name] = Obj("ideal", name, tuple(polys), t.line)

    def st_module(self):
        t = self.take("module")
        self.need_ring(t)
        name = self.new_name().text
        self.take("in")
        if self.tok.text != "F":
            raise self.error("expected a free module F(a1,...,ar)")
        self.i += 1
        self.take("(")
        shifts = [self.integer()]
        while self.at(","):
            self.i += 1
            shifts.append(self.integer())
        self.take(")")
        self.take("=")
        vecs = []
        while True:
            start = self.take("[")
            vec = [self.poly()]
            while self.at(","):
                self.i += 1
                vec.append(self.poly())
            self.take("]")
            if len(vec) != len(shifts):
                raise self.error(f"vector has {len(vec)} entries but F has rank {len(shifts)}", start)
            degs = {sum(m) - a for f, a in zip(vec, shifts) for m in f}
            if len(degs) > 1 or any(f and not _homogeneous(f) for f in vec):
                raise self.error("vector is not homogeneous", start)
            vecs.append(tuple(vec))
            if not self.at(","):
                break
            self.i += 1
        self.objects[name] = Obj("module", name, (tuple(shifts), tuple(vecs)), t.line)

    def st_complex(self):
        t = self.take("complex")
        name = self.new_name().text
        self.take("on")
        nt = self.take(kind="int")
        n = int(nt.text)
        if n < 1:
            raise self.error("a complex needs at least one vertex", nt)
        self.take("=")
        facets = []
        while self.at("{"):
            self.i += 1
            face = []
            if not self.at("}"):
                face.append(self.vertex(n))
                while self.at(","):
                    self.i += 1
                    face.append(self.vertex(n))
            self.take("}")
            facets.append(tuple(sorted(set(face))))
        self.objects[name] = Obj("complex", name, (n, tuple(facets)), t.line)

    def vertex(self, n):
        t = self.take(kind="int")
        v = int(t.text)
        if not 1 <= v <= n:
            raise self.error(f"vertex {v} outside 1..{n}", t)
        return v

    def target(self):
        t = self.take(kind="name")
        if t.text not in self.objects:
            raise self.error(f"unknown object {t.text!r}", t)
        return t.text

    def option(self, key, required=False):
        if self.tok.text == key and self.toks[self.i + 1].text == "=":
            self.i += 2
            return self.integer()
        if required:
            raise self.error(f"expected {key}=<integer>")
        return None

    def st_check(self):
        t = self.take("check")
        what = self.take(kind="name")
        if what.text not in CHECKS:
            raise self.error(f"unknown check {what.text!r}; expected one of {', '.join(CHECKS)}", what)
        params = {}
        if what.text == "iscm":
            params["i"] = self.integer()
        self.requests.append(Request(what.text, self.target(), params, t.line))

    def st_gin(self):
        t = self.take("gin")
        target = self.target()
        r = self.option("r")
        self.requests.append(Request("gin", target, {} if r is None else {"r": r}, t.line))

    def st_filtration(self):
        t = self.take("filtration")
        self.requests.append(Request("filtration", self.target(), {}, t.line))

    def st_hilb_lc(self):
        t = self.take("hilb-lc")
        target = self.target()
        i = self.option("i")
        self.requests.append(Request("hilb-lc", target, {} if i is None else {"i": i}, t.line))

    def st_lexcmp(self):
        t = self.take("lexcmp")
        target = self.target()
        self.requests.append(Request("lexcmp", target, {"i": self.option("i", True)}, t.line))

    # polynomials

    def variable(self, check=True) -> int:
        t = self.take(kind="name")
        m = re.fullmatch(r"x(\d+)", t.text)
        if not m or int(m.group(1)) < 1:
            raise self.error(f"unknown variable {t.text!r}; variables are x1..xn", t)
        k = int(m.group(1)) - 1
        if check and k >= self.nvars:
            raise self.error(f"unknown variable {t.text!r}; the ring has x1..x{self.nvars}", t)
        return k

    def poly(self) -> Poly:
        out = {}
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.take().text == "-" else 1
        while True:
            c, m = self.term()
            out[m] = out.get(m, 0) + sign * c
            if self.at("+") or self.at("-"):
                sign = -1 if self.take().text == "-" else 1
                continue
            break
        return {m: c for m, c in out.items() if c}

    def term(self):
        coeff = Fraction(1)
        exps = [0] * self.nvars
        while True:
            t = self.tok
            if t.kind == "int":
                self.i += 1
                num = Fraction(int(t.text))
                if self.at("/"):
                    self.i += 1
                    den = int(self.take(kind="int").text)
                    if den == 0:
                        raise self.error("division by zero", t)
                    num /= den
                coeff *= num
            elif t.kind == "name":
                k = self.variable()
                e = 1
                if self.at("^"):
                    self.i += 1
                    e = int(self.take(kind="int").text)
                exps[k] += e
            else:
                raise self.error(f"expected a coefficient or variable, found {t.text or 'end of input'!r}")
            if not self.at("*"):
                break
            self.i += 1
        return coeff, tuple(exps)


def _homogeneous(f: Poly) -> bool:
    return len({sum(m) for m in f}) <= 1


def parse(text: str) -> InputDocument:
    return _Parser(text).document()


# ---------------------------------------------------------------- printing


def _key(m):
    # degrevlex, largest first
    return (-sum(m), tuple(reversed(m)))


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    out = ""
    for m in sorted(f, key=_key):
        c = f[m]
        mono = format_monomial(m)
        a = abs(c)
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _field_text(F: Field) -> str:
    return "Q" if F.p == 0 else f"GF({F.p})"


def format_document(doc: InputDocument) -> str:
    lines = []
    if doc.nvars is not None:
        lines.append(f"ring {_field_text(doc.field or Field(0))}[x1..x{doc.nvars}]")
    for obj in doc.objects.values():
        if obj.kind == "ideal":
            lines.append(f"ideal {obj.name} = " + ", ".join(format_poly(f) for f in obj.data))
        elif obj.kind == "module":
            shifts, vecs = obj.data
            lines.append(f"module {obj.name} in F({','.join(map(str, shifts))}) = "
                         + ", ".join("[" + ", ".join(format_poly(f) for f in v) + "]" for v in vecs))
        else:
            n, facets = obj.data
            lines.append(f"complex {obj.name} on {n} = "
                         + " ".join("{" + ",".join(map(str, f)) + "}" for f in facets))
    lines += [r.text() for r in doc.requests]
    return "\n".join(lines) + "\n"
