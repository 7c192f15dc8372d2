"""Scenario files: YAML documents that fix a geometry, data blocks and a list
of commands, and the runner that turns them into deterministic reports.

Rationals are written as strings (``"1/4"``) or plain integers; YAML floats
are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Mapping

import yaml

from . import verify as verify_mod
from .algebra import RatFun, parse_rational
from .chow import ChowModel, Stratum, aggregate_local, local_to_global_check
from .cone_series import ConeSeries, Geometry, format_class
from .errors import DTParError, ParseError
from .git import Step, SubspaceDatum, WeightData, git_stability_test, hm_weight
from .lie import lie_transform_check
from .pt import gv_expand, l_series_solve, l_symmetry_report, pt_beta, rationality_check
from .transforms import (
    SlopeContext,
    N_from_dt_par,
    check_multcover_equiv,
    dt_par_from_N,
    format_table,
    multiple_cover_extend,
)

TOP_KEYS = {"geometry", "mu", "N", "N1", "dtpar_series", "gv", "pt_n_table", "chow_model", "run"}
COMMANDS = (
    "forward", "inverse", "multcover", "check-equiv", "lie-check", "gv-expand",
    "pt-rationality", "l-solve", "l-symmetry", "chow-aggregate", "local-global",
    "hm-weight", "git-test", "verify",
)


class ScenarioError(ParseError):
    pass


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------


def _keys(obj, allowed: set, where: str) -> Mapping:
    if not isinstance(obj, Mapping):
        raise ScenarioError(f"{where}: expected a mapping")
    unknown = set(obj) - allowed
    if unknown:
        raise ScenarioError(f"{where}: unknown keys {sorted(map(str, unknown))}")
    return obj


def _req(obj: Mapping, key: str, where: str):
    if key not in obj:
        raise ScenarioError(f"{where}: missing '{key}'")
    return obj[key]


def _rat(x, where: str) -> Fraction:
    if isinstance(x, float):
        raise ScenarioError(f"{where}: write rationals as strings like \"1/3\", not floats")
    try:
        return parse_rational(x if isinstance(x, (int, Fraction)) else str(x))
    except DTParError as exc:
        raise ScenarioError(f"{where}: {exc}") from exc


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ScenarioError(f"{where}: expected an integer, got {x!r}")
    return x


def _cls(x, arity: int | None, where: str) -> tuple:
    if not isinstance(x, list) or not all(isinstance(m, int) and not isinstance(m, bool) for m in x):
        raise ScenarioError(f"{where}: class must be a list of integers")
    if arity is not None and len(x) != arity:
        raise ScenarioError(f"{where}: class {x} has arity {len(x)}, expected {arity}")
    if any(m < 0 for m in x):
        raise ScenarioError(f"{where}: class {x} is not effective")
    return tuple(x)


def _list(x, where: str) -> list:
    if x is None:
        return []
    if not isinstance(x, list):
        raise ScenarioError(f"{where}: expected a list")
    return x


def _nb_table(entries, arity: int, where: str) -> dict:
    out: dict = {}
    for i, e in enumerate(_list(entries, where)):
        w = f"{where}[{i}]"
        _keys(e, {"n", "beta", "value"}, w)
        key = (_int(_req(e, "n", w), w), _cls(_req(e, "beta", w), arity, w))
        if key in out:
            raise ScenarioError(f"{w}: duplicate key {key}")
        out[key] = _rat(_req(e, "value", w), w)
    return out


def _beta_table(entries, arity: int | None, where: str, field_name: str = "beta") -> dict:
    out: dict = {}
    for i, e in enumerate(_list(entries, where)):
        w = f"{where}[{i}]"
        _keys(e, {field_name, "value"}, w)
        key = _cls(_req(e, field_name, w), arity, w)
        if key in out:
            raise ScenarioError(f"{w}: duplicate class {list(key)}")
        out[key] = _rat(_req(e, "value", w), w)
    return out


@dataclass
class Scenario:
    geometry: Geometry
    mu: Fraction | None = None
    N: dict | None = None
    N1: dict | None = None  # {(1, beta): value}
    dtpar_series: ConeSeries | None = None
    gv: dict | None = None
    pt_finite: dict = field(default_factory=dict)
    pt_cover: dict = field(default_factory=dict)
    chow_model: ChowModel | None = None
    run: list = field(default_factory=list)  # [(command, args)]

    @property
    def ctx(self) -> SlopeContext:
        if self.mu is None:
            raise ScenarioError("this command needs 'mu'")
        return SlopeContext(self.geometry, self.mu)


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from exc
    return parse_scenario(text)


def parse_scenario(text: str) -> Scenario:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"invalid YAML: {exc}") from exc
    doc = _keys(doc, TOP_KEYS, "scenario")
    try:
        geometry = Geometry.from_doc(_req(doc, "geometry", "scenario"))
    except (DTParError, TypeError, ValueError) as exc:
        raise ScenarioError(f"geometry: {exc}") from exc
    k = geometry.rank
    sc = Scenario(geometry)
    if "mu" in doc:
        sc.mu = _rat(doc["mu"], "mu")
    if "N" in doc:
        sc.N = _nb_table(doc["N"], k, "N")
    if "N1" in doc:
        sc.N1 = {(1, b): v for b, v in _beta_table(doc["N1"], k, "N1").items()}
    if "dtpar_series" in doc:
        terms = _nb_table(doc["dtpar_series"], k, "dtpar_series")
        terms.setdefault((0, geometry.zero), Fraction(1))
        sc.dtpar_series = ConeSeries(geometry, terms)
    if "gv" in doc:
        sc.gv = {}
        for i, e in enumerate(_list(doc["gv"], "gv")):
            w = f"gv[{i}]"
            _keys(e, {"g", "beta", "value"}, w)
            sc.gv[(_int(_req(e, "g", w), w), _cls(_req(e, "beta", w), k, w))] = _int(_req(e, "value", w), w)
    if "pt_n_table" in doc:
        pt = _keys(doc["pt_n_table"], {"finite", "multiple_cover"}, "pt_n_table")
        sc.pt_finite = _nb_table(pt.get("finite"), k, "pt_n_table.finite")
        sc.pt_cover = _beta_table(pt.get("multiple_cover"), k, "pt_n_table.multiple_cover")
    if "chow_model" in doc:
        sc.chow_model = _parse_chow(doc["chow_model"], geometry)
    for i, item in enumerate(_list(doc.get("run"), "run")):
        if isinstance(item, str):
            name, args = item, {}
        elif isinstance(item, Mapping):
            args = dict(item)
            name = args.pop("command", None)
        else:
            raise ScenarioError(f"run[{i}]: expected a command name or mapping")
        if name not in COMMANDS:
            raise ScenarioError(f"run[{i}]: unknown command {name!r}")
        sc.run.append((name, args))
    return sc


def _parse_chow(doc, geometry: Geometry) -> ChowModel:
    doc = _keys(doc, {"beta", "strata"}, "chow_model")
    beta = _cls(_req(doc, "beta", "chow_model"), geometry.rank, "chow_model.beta")
    strata = []
    for i, s in enumerate(_list(_req(doc, "strata", "chow_model"), "chow_model.strata")):
        w = f"chow_model.strata[{i}]"
        _keys(s, {"label", "chi", "gamma", "components", "dtpar", "n1"}, w)
        comps = tuple(_cls(c, geometry.rank, f"{w}.components") for c in _list(s.get("components"), w))
        gamma = _cls(_req(s, "gamma", w), len(comps) if comps else geometry.rank, f"{w}.gamma")
        arity = len(gamma)
        raw = s.get("dtpar") or {}
        if isinstance(raw, Mapping):
            # shorthand: n -> value at the stratum's own cycle gamma
            dtpar = {(_int(n, f"{w}.dtpar"), gamma): _rat(v, f"{w}.dtpar") for n, v in raw.items()}
        else:
            dtpar = {}
            for j, e in enumerate(_list(raw, f"{w}.dtpar")):
                ww = f"{w}.dtpar[{j}]"
                _keys(e, {"n", "class", "value"}, ww)
                dtpar[(_int(_req(e, "n", ww), ww), _cls(_req(e, "class", ww), arity, ww))] = _rat(
                    _req(e, "value", ww), ww
                )
        n1 = _beta_table(s.get("n1"), arity, f"{w}.n1", field_name="class")
        strata.append(
            Stratum(str(_req(s, "label", w)), _int(_req(s, "chi", w), w), gamma, comps, dtpar, n1)
        )
    try:
        return ChowModel(geometry, beta, tuple(strata))
    except DTParError as exc:
        raise ScenarioError(f"chow_model: {exc}") from exc


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


@dataclass
class Report:
    command: str
    ok: bool
    columns: tuple
    rows: list
    doc: Any = None
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "ok" if self.ok else "fail"

    def to_tsv(self) -> str:
        lines = [f"## {self.command}\t{self.status}"]
        lines += [f"# {n}" for n in self.notes]
        lines.append("# " + "\t".join(self.columns))
        lines += self.rows
        return "\n".join(lines) + "\n"

    def to_doc(self) -> dict:
        return {"command": self.command, "status": self.status, "notes": self.notes, "payload": self.doc}


def _series_report(cmd: str, s: ConeSeries, ok: bool = True) -> Report:
    rows = s.to_tsv().splitlines()
    return Report(cmd, ok, ("n", "beta", "coefficient"), rows, s.to_doc(), [f"series: {s.pretty()}"])


def _table_doc(N: Mapping, geometry: Geometry) -> list:
    keys = sorted(N, key=lambda k: (geometry.omega_degree(k[1]), tuple(k[1]), k[0]))
    return [{"n": n, "beta": list(b), "value": str(N[(n, b)])} for n, b in keys]


def _table_report(cmd: str, N: Mapping, geometry: Geometry) -> Report:
    return Report(cmd, True, ("n", "beta", "value"), format_table(N, geometry), _table_doc(N, geometry))


class Runner:
    """Executes the commands of one scenario in order."""

    def __init__(self, sc: Scenario):
        self.sc = sc
        self.last_forward: ConeSeries | None = None
        self.last_L: ConeSeries | None = None

    def _n_table(self) -> dict:
        if self.sc.N is not None:
            return self.sc.N
        if self.sc.N1 is not None:
            return multiple_cover_extend(self.sc.ctx, self.sc.N1)
        raise ScenarioError("command needs an 'N' or 'N1' block")

    def _need(self, attr: str):
        val = getattr(self.sc, attr)
        if val is None:
            raise ScenarioError(f"command needs a '{attr}' block")
        return val

    def run(self, name: str, args: Mapping) -> Report:
        handler: Callable = getattr(self, "cmd_" + name.replace("-", "_"))
        return handler(dict(args))

    def _no_args(self, args, name):
        if args:
            raise ScenarioError(f"{name}: unexpected arguments {sorted(args)}")

    def cmd_forward(self, args):
        self._no_args(args, "forward")
        s = dt_par_from_N(self.sc.ctx, self._n_table())
        self.last_forward = s
        return _series_report("forward", s)

    def cmd_inverse(self, args):
        self._no_args(args, "inverse")
        s = self.sc.dtpar_series or self.last_forward
        if s is None:
            raise ScenarioError("inverse needs a 'dtpar_series' block or an earlier 'forward'")
        return _table_report("inverse", N_from_dt_par(self.sc.ctx, s), self.sc.geometry)

    def cmd_multcover(self, args):
        self._no_args(args, "multcover")
        N = multiple_cover_extend(self.sc.ctx, self._need("N1"))
        return _table_report("multcover", N, self.sc.geometry)

    def cmd_check_equiv(self, args):
        self._no_args(args, "check-equiv")
        rows = check_multcover_equiv(self.sc.ctx, self._n_table(), self.sc.N1)
        return Report(
            "check-equiv",
            all(r.ok for r in rows),
            ("n", "beta", "dt_hat", "sign*(beta.H)*n_hat", "ok"),
            [r.tsv() for r in rows],
            [r.doc() for r in rows],
        )

    def cmd_lie_check(self, args):
        self._no_args(args, "lie-check")
        rows = lie_transform_check(self.sc.ctx, self._n_table())
        return Report(
            "lie-check",
            all(r.ok for r in rows),
            ("n", "beta", "dt_par_lie", "dt_par_product", "ok"),
            [r.tsv() for r in rows],
            [r.doc() for r in rows],
        )

    def _pt(self) -> ConeSeries:
        return gv_expand(self.sc.geometry, self._need("gv"))

    def cmd_gv_expand(self, args):
        self._no_args(args, "gv-expand")
        return _series_report("gv-expand", self._pt())

    def cmd_pt_rationality(self, args):
        if "f" in args:
            f = RatFun.parse(str(args.pop("f")))
            self._no_args(args, "pt-rationality")
            sym = rationality_check(f)
            return Report("pt-rationality", sym, ("f", "symmetric"), [f"{f}\t{str(sym).lower()}"],
                          [{"f": str(f), "symmetric": sym}])
        self._no_args(args, "pt-rationality")
        pt = self._pt()
        rows, doc = [], []
        for beta in self.sc.geometry.classes():
            f = pt_beta(pt, beta)
            if not f:
                continue
            sym = rationality_check(f)
            rows.append(f"{format_class(beta)}\t{f}\t{str(sym).lower()}")
            doc.append({"beta": list(beta), "f": str(f), "symmetric": sym})
        return Report("pt-rationality", all(d["symmetric"] for d in doc), ("beta", "pt_beta", "symmetric"), rows, doc)

    def _solve_L(self) -> ConeSeries:
        return l_series_solve(self.sc.geometry, self._pt(), self.sc.pt_finite, self.sc.pt_cover)

    def cmd_l_solve(self, args):
        self._no_args(args, "l-solve")
        self.last_L = self._solve_L()
        return _series_report("l-solve", self.last_L)

    def cmd_l_symmetry(self, args):
        self._no_args(args, "l-symmetry")
        L = self.last_L or self._solve_L()
        rows = l_symmetry_report(L)
        return Report(
            "l-symmetry",
            all(r.symmetric and r.laurent for r in rows),
            ("beta", "f_beta", "symmetric", "laurent"),
            [r.tsv() for r in rows],
            [r.doc() for r in rows],
        )

    def cmd_chow_aggregate(self, args):
        model = self._need("chow_model")
        if "n" in args:
            n = _int(args.pop("n"), "chow-aggregate.n")
        else:
            x = self.sc.ctx.mu * model.geometry.omega_degree(model.beta)
            if x.denominator != 1:
                raise ScenarioError("chow-aggregate: mu gives a non-integral n; pass 'n'")
            n = int(x)
        self._no_args(args, "chow-aggregate")
        v = aggregate_local(model, n)
        return Report("chow-aggregate", True, ("n", "beta", "dt_par"),
                      [f"{n}\t{format_class(model.beta)}\t{v}"],
                      {"n": n, "beta": list(model.beta), "dt_par": str(v)})

    def cmd_local_global(self, args):
        self._no_args(args, "local-global")
        rep = local_to_global_check(self._need("chow_model"), self.sc.ctx.mu)
        notes = [rep.summary()]
        if rep.inconsistent:
            notes.append(f"inconsistent strata: {', '.join(rep.inconsistent)}")
        return Report(
            "local-global",
            rep.ok and rep.regroup_ok,
            ("label", "chi", "div", "dt_hat", "n_hat", "ok"),
            rep.rows(),
            rep.doc(),
            notes,
        )

    def cmd_hm_weight(self, args):
        w = "hm-weight"
        _keys(args, {"dim_v", "steps", "chi_f", "dim_a"}, w)
        steps = []
        for i, s in enumerate(_list(_req(args, "steps", w), w)):
            _keys(s, {"dim_v", "chi_f", "dim_a"}, f"{w}.steps[{i}]")
            steps.append(Step(_int(s["dim_v"], w), str(s["chi_f"]), _int(s["dim_a"], w)))
        data = WeightData(_int(_req(args, "dim_v", w), w), tuple(steps), str(_req(args, "chi_f", w)),
                          _int(_req(args, "dim_a", w), w))
        p = hm_weight(data)
        return Report(w, True, ("weight",), [p.format("l")], {"weight": p.format("l")})

    def cmd_git_test(self, args):
        w = "git-test"
        _keys(args, {"dim_v", "chi_f", "dim_a", "sub"}, w)
        sub = _keys(_req(args, "sub", w), {"dim_v", "chi_f", "dim_a"}, f"{w}.sub")
        datum = SubspaceDatum(_int(sub["dim_v"], w), str(sub["chi_f"]), _int(sub["dim_a"], w))
        totals = (_int(_req(args, "dim_v", w), w), str(_req(args, "chi_f", w)), _int(_req(args, "dim_a", w), w))
        sign = git_stability_test(totals, datum)
        return Report(w, True, ("sign",), [str(sign)], {"sign": str(sign)})

    def cmd_verify(self, args):
        _keys(args, {"seed", "max_d"}, "verify")
        results = verify_mod.run_all(int(args.get("seed", 0)), int(args.get("max_d", 5)))
        return verify_report(results)


def verify_report(results) -> Report:
    return Report(
        "verify",
        all(r.passed for r in results),
        ("check", "trials", "failures", "status"),
        [f"{r.name}\t{r.trials}\t{r.failures}\t{'pass' if r.passed else 'FAIL'}" for r in results],
        [{"check": r.name, "trials": r.trials, "failures": r.failures, "passed": r.passed} for r in results],
    )


def run_scenario(sc: Scenario) -> list:
    runner = Runner(sc)
    reports = []
    for name, args in sc.run:
        try:
            reports.append(runner.run(name, args))
        except ScenarioError:
            raise
        except DTParError as exc:
            raise ScenarioError(f"{name}: {exc}") from exc
    return reports


def render(reports: list, fmt: str) -> str:
    if fmt == "doc":
        return json.dumps([r.to_doc() for r in reports], indent=2, sort_keys=True) + "\n"
    return "\n".join(r.to_tsv() for r in reports)


__all__ = ["Scenario", "ScenarioError", "Report", "load_scenario", "parse_scenario", "run_scenario", "render"]
