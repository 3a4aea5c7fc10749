"""Execute the requests of an input document and assemble the report."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .. import __version__
from ..algebra import AlgebraError, Element, Field, FreeModule, format_element, ring
from ..analysis import (
    RouteDisagreement, edepth, filtration_json, gin_info, is_i_scm, lex_comparison, monomial_view,
)
from ..groebner import DegreeCapExceeded, GinDisagreement, NonHomogeneousError
from ..homological import INF, GradedModule
from ..monomial import MonomialIdeal, dimension_filtration, is_weakly_stable, weakly_stable_filtration
from ..simplicial import SimplicialComplex, is_scm_duval, stanley_reisner_ideal
from .grammar import InputDocument, Request, format_poly, parse

SCHEMA_VERSION = "1.0"


def load_schema() -> dict:
    """The JSON schema that every report validates against."""
    return json.loads(resources.files("seqcm").joinpath("schema/report.schema.json").read_text("utf-8"))


@dataclass(frozen=True)
class RunOptions:
    field: Field | None = None
    seed: int = 0
    trials: int = 3
    degree_cap: int = 64
    routes: str = "all"
    timings: bool = False
    jobs: int = 1


class _Target:
    """A parsed object turned into a module F/U, with its kind and optional complex."""

    def __init__(self, kind, name, module: GradedModule, complex_=None):
        self.kind, self.name, self.module, self.complex = kind, name, module, complex_

    @property
    def is_ideal(self):
        return self.module.free.rank == 1 and self.module.free.degrees == (0,)

    def monomial_ideal(self) -> MonomialIdeal | None:
        if not self.is_ideal or not self.module.is_monomial():
            return None
        return MonomialIdeal.from_elements(self.module.gens) if self.module.gens else MonomialIdeal(self.module.nvars)


def effective_field(doc: InputDocument, opts: RunOptions) -> Field:
    return opts.field or doc.field or Field(0)


def _coerce(c: Fraction, F: Field):
    return F(c)


def build_target(doc: InputDocument, name: str, opts: RunOptions) -> _Target:
    obj = doc.objects[name]
    F = effective_field(doc, opts)
    if obj.kind == "ideal":
        R = ring(doc.nvars, F)
        gens = [Element(R, {m + (0,): _coerce(c, F) for m, c in f.items()}) for f in obj.data]
        return _Target("ideal", name, GradedModule(R, gens, opts.degree_cap))
    if obj.kind == "module":
        shifts, vecs = obj.data
        free = FreeModule.from_shifts(doc.nvars, shifts, F)
        gens = [Element(free, {m + (j,): _coerce(c, F) for j, f in enumerate(v) for m, c in f.items()})
                for v in vecs]
        return _Target("module", name, GradedModule(free, gens, opts.degree_cap))
    n, facets = obj.data
    delta = SimplicialComplex(n, facets)
    I = stanley_reisner_ideal(delta)
    return _Target("complex", name, GradedModule(ring(n, F), I.to_elements(F), opts.degree_cap), delta)


# ---------------------------------------------------------------- formatting helpers


def gens_text(gens) -> list:
    return [format_element(g) for g in gens]


def _depth_json(d):
    return "inf" if d is INF else d


def _quotient_label(t: _Target):
    return "S/" + t.name if t.is_ideal else "F/" + t.name


def chain_text(t: _Target, ideals) -> str:
    """0 ⊂ (..)/I ⊂ ... ⊂ S/I from a list of nested monomial ideals or modules starting at U."""
    parts = ["0"]
    for V in ideals[1:]:
        if V.is_unit() if isinstance(V, MonomialIdeal) else V.is_zero_quotient():
            parts.append(_quotient_label(t))
        else:
            parts.append(f"{V}/{t.name}")
    return " ⊂ ".join(parts)


def _weak_stability(t: _Target, verify=True):
    I = t.monomial_ideal()
    if I is None:
        return None
    st = is_weakly_stable(I)
    out = {"stable": st.stable,
           "witness": None if st.stable else {"u": format_poly({st.witness[0]: 1}), "i": st.witness[1],
                                               "j": st.witness[2]}}
    if st.stable:
        ch = weakly_stable_filtration(I, verify)
        out["chain"] = [str(J) for J in ch.ideals]
        out["saturated_by"] = [f"x{k}" for k in ch.saturated_by]
        out["quotients_cm"] = ch.quotient_cm
        out["text"] = chain_text(t, ch.ideals)
    return out


def _filtration(t: _Target):
    U = monomial_view(t.module)
    if U is None:
        return None
    filt = dimension_filtration(U)
    js = filtration_json(filt)
    js["chain"] = chain_text(t, filt.distinct_chain())
    return filt, js


# ---------------------------------------------------------------- commands


def _verdict_json(v):
    return {
        "verdict": v.verdict,
        "i": v.i,
        "probabilistic": v.probabilistic,
        "routes": {k: r.to_json() for k, r in v.routes.items()},
    }


def cmd_scm(t: _Target, req: Request, opts: RunOptions):
    i = req.params.get("i", 0)
    v = is_i_scm(t.module, i, opts.routes, opts.trials, opts.seed)
    out = _verdict_json(v)
    if v.filtration is not None:
        out["filtration"] = filtration_json(v.filtration)
        out["filtration"]["chain"] = chain_text(t, v.filtration.distinct_chain())
    ws = _weak_stability(t)
    if ws is not None:
        out["weakly_stable"] = ws
    if t.complex is not None and i == 0:
        rep = is_scm_duval(t.complex, t.module.field)
        out["duval"] = {"result": rep.scm, "failing_skeleta": list(rep.failing)}
        if rep.scm != v.verdict and v.routes:
            raise RouteDisagreement("skeleton criterion disagrees with the module routes")
    lines = [f"{req.text()}: {str(v.verdict).lower()}"
             + (" (probabilistic)" if v.probabilistic else "")
             + "".join(f"  {k}={str(r.result).lower()}" for k, r in v.routes.items())]
    if v.filtration is not None:
        lines.append("  filtration: " + out["filtration"]["chain"])
    if ws is not None:
        lines.append(f"  weakly stable: {str(ws['stable']).lower()}")
        if ws["stable"]:
            lines.append("  saturation chain: " + ws["text"])
    return out, lines


def cmd_edepth(t: _Target, req: Request, opts: RunOptions):
    rep = edepth(t.module)
    out = {"edepth": rep.edepth, "ext_depths": [_depth_json(d) for d in rep.ext_depths]}
    return out, [f"{req.text()}: {rep.edepth}  (depth Ext^i: {', '.join(str(d) for d in out['ext_depths'])})"]


def cmd_gin(t: _Target, req: Request, opts: RunOptions):
    n = t.module.nvars
    r = req.params.get("r", n)
    if not 0 <= r <= n:
        raise AlgebraError(f"r must lie in [0, {n}]")
    info = gin_info(t.module, opts.trials, opts.seed, r)
    gens = sorted(info.initial_module, key=lambda g: g.degree)
    G = GradedModule(t.module.free, gens)
    out = {
        "r": r, "scope": info.scope, "seed": opts.seed, "trials": info.trials_total,
        "trials_agreed": info.trials_agreed, "generators": gens_text(gens),
        "hilbert_series": G.hilbert_series().to_json(),
    }
    label = "Gin" if r == n else f"gin_{r}"
    return out, [f"{req.text()}: {label}({t.name}) = (" + ", ".join(out["generators"]) + ")"]


def cmd_filtration(t: _Target, req: Request, opts: RunOptions):
    got = _filtration(t)
    if got is None:
        raise AlgebraError("the dimension filtration is only computed for monomial submodules")
    filt, out = got
    out["dimension"] = filt.dimension
    lines = [f"{req.text()}: {out['chain']}"]
    ws = _weak_stability(t)
    if ws is not None:
        out["weakly_stable"] = ws
        if ws["stable"]:
            lines.append("  saturation chain: " + ws["text"])
    return out, lines


def cmd_hilb_lc(t: _Target, req: Request, opts: RunOptions):
    M = t.module
    n = M.nvars
    idx = [req.params["i"]] if "i" in req.params else list(range(n + 1))
    for i in idx:
        if not 0 <= i <= n:
            raise AlgebraError(f"i must lie in [0, {n}]")
    hs = M.hilbert_series()
    out = {"hilbert_series": hs.to_json(), "dimension": M.dimension(), "depth": _depth_json(M.depth()), "lc": {}}
    lines = [f"{req.text()}: Hilb = {hs}, dim = {out['dimension']}, depth = {out['depth']}"]
    for i in idx:
        h = M.lc(i)
        out["lc"][str(i)] = dict(h.to_json(), text=str(h))
        lines.append(f"  h^{i} = {h}")
    return out, lines


def cmd_lexcmp(t: _Target, req: Request, opts: RunOptions):
    if not t.is_ideal:
        raise AlgebraError("lexcmp needs an ideal")
    rep = lex_comparison(t.module, req.params["i"], opts.trials, opts.seed)
    out = {"i": rep.i, "lex_ideal": [format_poly({g: 1}) for g in rep.lex_ideal.gens],
           "h_equal_lex": rep.cond1, "gin_equal_lex": rep.cond2, "all_above_equal_lex": rep.cond3,
           "conditions_agree": rep.agree, "chain_ok": rep.chain_ok, "i_scm": rep.i_scm}
    return out, [f"{req.text()}: {str(rep.cond1).lower()}  (lex ideal {rep.lex_ideal})"]


COMMANDS = {"scm": cmd_scm, "iscm": cmd_scm, "edepth": cmd_edepth, "gin": cmd_gin,
            "filtration": cmd_filtration, "hilb-lc": cmd_hilb_lc, "lexcmp": cmd_lexcmp}


def run_request(doc: InputDocument, req: Request, opts: RunOptions):
    """Returns (json entry, summary lines, internal_error flag)."""
    entry = {"request": req.text(), "command": req.command, "target": req.target}
    start = time.perf_counter()
    internal = False
    try:
        t = build_target(doc, req.target, opts)
        result, lines = COMMANDS[req.command](t, req, opts)
        entry["status"] = "ok"
        entry["result"] = result
    except GinDisagreement as e:
        entry["status"] = "error"
        entry["error"] = {"type": "probabilistic-failure", "message": str(e),
                          "hint": "rerun with more --trials or a different --seed"}
        lines = [f"{req.text()}: probabilistic failure: {e}"]
    except DegreeCapExceeded as e:
        entry["status"] = "error"
        entry["error"] = {"type": "degree-cap", "message": str(e), "hint": "raise --degree-cap"}
        lines = [f"{req.text()}: {e}"]
    except RouteDisagreement as e:
        internal = True
        entry["status"] = "error"
        entry["error"] = {"type": "internal", "message": str(e)}
        lines = [f"{req.text()}: INTERNAL ERROR: {e}"]
    except (AlgebraError, NonHomogeneousError) as e:
        entry["status"] = "error"
        entry["error"] = {"type": "invalid-request", "message": str(e)}
        lines = [f"{req.text()}: error: {e}"]
    if opts.timings:
        entry["seconds"] = round(time.perf_counter() - start, 6)
    return entry, lines, internal


def _worker(args):
    text, k, opts = args
    doc = parse(text)
    return run_request(doc, doc.requests[k], opts)


def run(doc: InputDocument, opts: RunOptions, text: str | None = None):
    """Run every request; returns (report dict, summary lines, exit status)."""
    if opts.jobs > 1 and text is not None and len(doc.requests) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as ex:
            results = list(ex.map(_worker, [(text, k, opts) for k in range(len(doc.requests))]))
    else:
        results = [run_request(doc, r, opts) for r in doc.requests]
    F = effective_field(doc, opts)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "seqcm", "version": __version__},
        "seed": opts.seed,
        "trials": opts.trials,
        "degree_cap": opts.degree_cap,
        "routes": opts.routes,
        "field": {"kind": F.kind, "characteristic": F.characteristic},
        "nvars": doc.nvars,
        "results": [r[0] for r in results],
    }
    lines = [line for r in results for line in r[1]]
    if any(r[2] for r in results):
        status = 1
    elif any(r[0]["status"] != "ok" for r in results):
        status = 3
    else:
        status = 0
    return report, lines, status
