"""Command-line front end: single-point certification, sweeps, identity suites.

Usage::

    python -m parind certify --type A1 --p 3 --chi zero --levi "" --lambda 2
    python -m parind sweep --type A2 --p 3 --levi 1 --chi levi:J=2
    python -m parind identities --type B2 --p 3 --levi 2 --chi levi:J=1

Exit codes: 0 on success (Confirmed / NoClaim / all identities pass),
1 on input errors or failing identities, 2 when a certificate reports a
theorem violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .chevalley import build_chevalley
from .errors import ConfigError, InconsistentConstant, NoNonvanishingPoint, ParindError
from .gfield import is_prime, make_field
from .identities import run_identity_suite
from .induce import CONFIRMED, NO_CLAIM, VIOLATION, certify, check_compatible, compatible_weights, fit_c
from .pbw import PChar
from .rootsys import Weight, build_root_system, parabolic

COMMANDS = ("certify", "sweep", "identities", "constants")
_TYPE_RE = re.compile(r"^([A-Ga-g])(\d*)$")
_ASSIGN_RE = re.compile(r"\s*(f\[[^\]]*\]|e\[[^\]]*\]|h\d+)\s*=\s*([^;]*)")


# -- configuration -------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    command: str
    type_label: str
    rank: int
    p: int
    m: int = 1
    levi: tuple[int, ...] = ()
    chi: str = "zero"
    lam: tuple[str, ...] | None = None
    sweep: tuple[tuple[str, ...], ...] | None = None
    seed: int = 0
    chop_seed: int | None = None
    workers: int = 1
    out: str | None = None
    format: str = "json"
    timings: bool = False

    @property
    def type_name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def to_args(self) -> list[str]:
        args = [self.command, "--type", self.type_name, "--p", str(self.p)]
        if self.m != 1:
            args += ["--ext-degree", str(self.m)]
        args += ["--levi", ",".join(map(str, self.levi)), "--chi", self.chi]
        if self.lam is not None:
            args += ["--lambda", ",".join(self.lam)]
        if self.sweep is not None:
            args += ["--sweep", ";".join(",".join(t) for t in self.sweep) if self.sweep else "all"]
        args += ["--seed", str(self.seed)]
        if self.chop_seed is not None:
            args += ["--chop-seed", str(self.chop_seed)]
        if self.workers != 1:
            args += ["--workers", str(self.workers)]
        if self.out is not None:
            args += ["--out", self.out]
        args += ["--format", self.format]
        if self.timings:
            args.append("--timings")
        return args

    def render(self) -> str:
        return shlex.join(self.to_args())

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        return parse_args(shlex.split(text))

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "type": self.type_label,
            "rank": self.rank,
            "p": self.p,
            "ext_degree": self.m,
            "levi": list(self.levi),
            "chi": self.chi,
            "lambda": None if self.lam is None else list(self.lam),
            "sweep": None if self.sweep is None else [list(t) for t in self.sweep],
            "seed": self.seed,
            "chop_seed": self.chop_seed,
        }


class _Parser(argparse.ArgumentParser):
    """argparse with errors routed through ConfigError (exit code 1, not 2)."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parind", description="Simplicity certificates for parabolically induced modules.")
    parser.add_argument("--version", action="version", version=f"parind {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--type", required=True, help="root system type, e.g. A2 (or A with --rank 2)")
        sp.add_argument("--rank", type=int)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--ext-degree", type=int, default=1, dest="m")
        sp.add_argument("--levi", default="", help="comma-separated simple-root labels of I")
        sp.add_argument("--chi", default="zero", help="zero | levi:J=1,2 | f[a1]=1;h1=2")
        sp.add_argument("--lambda", dest="lam", help="comma-separated values lambda(h_1),...,lambda(h_l)")
        sp.add_argument("--sweep", nargs="?", const="all", help="'all' or ';'-separated weight list")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--chop-seed", type=int, dest="chop_seed")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    return parser


def _parse_type(text: str, rank: int | None) -> tuple[str, int]:
    m = _TYPE_RE.match(text.strip())
    if not m:
        raise ConfigError("bad --type; expected a letter A-G optionally followed by the rank", text, 0)
    letter, digits = m.group(1).upper(), m.group(2)
    if digits and rank is not None and int(digits) != rank:
        raise ConfigError(f"--type {text} conflicts with --rank {rank}", text, len(letter))
    if not digits and rank is None:
        raise ConfigError("rank missing; use e.g. --type A2 or --type A --rank 2", text, len(text))
    return letter, int(digits) if digits else rank


def _parse_int_list(text: str, what: str, full: str | None = None, offset: int = 0) -> tuple[int, ...]:
    """Comma-separated integers; diagnostics point into ``full`` (default ``text``)."""
    full = text if full is None else full
    out = []
    pos = offset
    for part in text.split(","):
        s = part.strip()
        if s:
            if not s.isdigit():
                raise ConfigError(f"bad {what} entry {s!r}", full, pos + part.index(s))
            out.append(int(s))
        pos += len(part) + 1
    return tuple(out)


def _parse_values(text: str) -> tuple[str, ...]:
    vals = tuple(s.strip() for s in text.split(","))
    if any(not v for v in vals):
        raise ConfigError("empty weight value", text, text.index(",") if "," in text else 0)
    return vals


def parse_chi_spec(text: str) -> tuple[str, object]:
    """Syntax check of a chi spec: ("zero", None), ("levi", J) or ("assign", pairs)."""
    s = text.strip()
    if s == "zero":
        return "zero", None
    if s.startswith("levi:"):
        body = s[5:]
        if not body.startswith("J="):
            raise ConfigError("expected 'levi:J=...'", text, text.index("levi:") + 5)
        start = text.index("levi:") + 7
        return "levi", _parse_int_list(body[2:], "J", text, start)
    pairs = []
    pos = 0
    for chunk in text.split(";"):
        if chunk.strip():
            m = _ASSIGN_RE.fullmatch(chunk)
            if not m:
                raise ConfigError("expected NAME=VALUE with NAME like f[a1], h1", text, pos + len(chunk) - len(chunk.lstrip()))
            name, value = m.group(1), m.group(2).strip()
            if not value:
                raise ConfigError(f"missing value for {name}", text, pos + m.end(1))
            pairs.append((name, value, pos + m.start(1)))
        pos += len(chunk) + 1
    if not pairs:
        raise ConfigError("empty chi spec", text, 0)
    return "assign", pairs


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    letter, rank = _parse_type(ns.type, ns.rank)
    if not is_prime(ns.p):
        raise ConfigError(f"--p {ns.p} is not prime")
    if ns.m < 1:
        raise ConfigError("--ext-degree must be >= 1")
    levi = tuple(sorted(set(_parse_int_list(ns.levi, "--levi"))))
    parse_chi_spec(ns.chi)
    lam = _parse_values(ns.lam) if ns.lam is not None else None
    sweep = None
    if ns.sweep is not None:
        sweep = () if ns.sweep.strip() == "all" else tuple(_parse_values(t) for t in ns.sweep.split(";") if t.strip())
    if ns.command == "certify" and lam is None:
        raise ConfigError("certify needs --lambda")
    if ns.command == "sweep" and sweep is None:
        sweep = ()
    if ns.workers < 1:
        raise ConfigError("--workers must be >= 1")
    return RunConfig(
        command=ns.command, type_label=letter, rank=rank, p=ns.p, m=ns.m, levi=levi, chi=ns.chi.strip(),
        lam=lam, sweep=sweep, seed=ns.seed, chop_seed=ns.chop_seed, workers=ns.workers, out=ns.out,
        format=ns.format, timings=ns.timings,
    )


# -- setup ---------------------------------------------------------------------


@dataclass
class Setup:
    cfg: RunConfig
    cb: object
    par: object
    chi: PChar
    upgraded: bool


def _build_chi(cb, spec: str) -> PChar:
    kind, data = parse_chi_spec(spec)
    if kind == "zero":
        return PChar.zero(cb)
    if kind == "levi":
        for j in data:
            if not 1 <= j <= cb.rank:
                raise ConfigError(f"J label {j} out of range 1..{cb.rank}", spec, spec.index("=") + 1)
        return PChar.standard_levi(cb, data)
    vals = [0] * cb.dim
    for name, value, col in data:
        if name not in cb.names:
            raise ConfigError(f"unknown basis element {name}", spec, col)
        try:
            code = cb.F.parse(value)
        except (ParindError, ValueError) as exc:
            raise ConfigError(f"bad field value {value!r} for F_{cb.F.q}", spec, col + len(name) + 1) from None
        if name.startswith("e[") and code:
            raise ConfigError("chi must vanish on n+ (positive root vectors)", spec, col)
        vals[cb.index(name)] = code
    return PChar(cb, tuple(vals))


def _has_toral_part(spec: str) -> bool:
    kind, data = parse_chi_spec(spec)
    if kind != "assign":
        return False
    for name, value, _ in data:
        if name.startswith("h"):
            try:
                if int(value):
                    return True
            except ValueError:
                return True
    return False


def setup(cfg: RunConfig) -> Setup:
    """Build root system, field, Chevalley basis, parabolic and chi for a config."""
    rs = build_root_system(cfg.type_label, cfg.rank)
    m, upgraded = cfg.m, False
    if m == 1 and _has_toral_part(cfg.chi):
        # lambda^p - lambda = chi(h)^p has no root in F_p when chi(h) != 0
        m, upgraded = cfg.p, True
    F = make_field(cfg.p, m)
    cb = build_chevalley(rs, F)
    par = parabolic(rs, cfg.levi)
    chi = _build_chi(cb, cfg.chi)
    return Setup(cfg, cb, par, chi, upgraded)


def _weight(s: Setup, vals) -> Weight:
    if len(vals) != s.cb.rank:
        raise ConfigError(f"weight needs {s.cb.rank} values, got {len(vals)}", ",".join(vals), 0)
    return Weight(s.cb.F, tuple(s.cb.F.parse(v) for v in vals))


# -- reports -------------------------------------------------------------------


@dataclass
class Report:
    config: RunConfig
    certificates: list = field(default_factory=list)
    fitted_c: str | None = None
    summary: dict = field(default_factory=dict)
    identities: list | None = None
    setup_info: dict = field(default_factory=dict)
    timings: dict | None = None
    version: str = __version__

    @property
    def exit_code(self) -> int:
        if self.identities is not None:
            return 0 if all(r.passed for r in self.identities) else 1
        return 2 if self.summary.get("violation", 0) else 0

    def to_json(self) -> dict:
        cfg = self.config.to_json()
        cfg.update(self.setup_info)
        out = {
            "config": cfg,
            "certificates": [_cert_json(c) for c in self.certificates],
            "fitted_c": self.fitted_c,
            "summary": self.summary,
            "version": self.version,
        }
        if self.identities is not None:
            out["identities"] = [r.to_json() for r in self.identities]
        if self.timings is not None:
            out["timings"] = self.timings
        return out

    def render(self, fmt: str | None = None) -> str:
        fmt = fmt or self.config.format
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        return self._csv()

    def _csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.identities is not None:
            w.writerow(["name", "passed", "vacuous", "checked", "counterexample"])
            for r in self.identities:
                w.writerow([r.name, _b(r.passed), _b(r.vacuous), r.checked, r.counterexample or ""])
            return buf.getvalue()
        w.writerow(csv_columns(self.config.rank))
        for c in self.certificates:
            d = _cert_json(c)
            w.writerow(d["lambda"] + [d["R_direct"], _b(d["simple"]), d["status"], "" if d["witness_dim"] is None else d["witness_dim"]])
        return buf.getvalue()


def _b(x):
    return "" if x is None else ("true" if x else "false")


def csv_columns(rank: int) -> list[str]:
    return [f"lambda_{i + 1}" for i in range(rank)] + ["R_direct", "simple", "status", "witness_dim"]


def read_csv(text: str) -> list[dict]:
    """Parse a certificate CSV back into the JSON certificate fields it carries."""
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for r in rows:
        lam = [r[k] for k in r if k.startswith("lambda_")]
        simple = {"true": True, "false": False, "": None}[r["simple"]]
        wd = int(r["witness_dim"]) if r["witness_dim"] else None
        out.append({"lambda": lam, "R_direct": r["R_direct"], "simple": simple, "status": r["status"], "witness_dim": wd})
    return out


def _cert_json(c) -> dict:
    d = c.to_json()
    d.update(c.extra)
    return d


def _summarize(certs, chop_checked: bool) -> dict:
    summary = {
        "total": len(certs),
        "confirmed": sum(c.theorem_status == CONFIRMED for c in certs),
        "no_claim": sum(c.theorem_status == NO_CLAIM for c in certs),
        "violation": sum(c.theorem_status == VIOLATION for c in certs),
    }
    converse = [c.lam.labels() for c in certs if c.R_direct.is_zero() and c.simple]
    summary["simple_with_R_zero"] = len(converse)
    if converse:
        summary["note"] = "R = 0 with a simple module is expected: nonvanishing of R is sufficient, not necessary"
    if chop_checked:
        summary["chop_seed_disagreements"] = [c.lam.labels() for c in certs if c.extra.get("chop_verdict_differs")]
    return summary


# -- commands ------------------------------------------------------------------


def _certify_task(args):
    cfg, vals = args
    s = setup(cfg)
    lam = Weight(s.cb.F, vals)
    cert = certify(s.cb, s.par, s.chi, lam, seed=cfg.seed)
    if cfg.chop_seed is not None:
        alt = certify(s.cb, s.par, s.chi, lam, seed=cfg.seed, chop_seed=cfg.chop_seed)
        cert.extra["chop_seed_simple"] = alt.simple
        cert.extra["chop_verdict_differs"] = alt.simple != cert.simple or str(alt.R_direct) != str(cert.R_direct)
    return cert


def _run_certs(cfg: RunConfig, weights) -> list:
    tasks = [(cfg, w.values) for w in weights]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_certify_task, tasks))
    return [_certify_task(t) for t in tasks]


def _setup_info(s: Setup) -> dict:
    return {"field_order": s.cb.F.q, "field_upgraded": s.upgraded, "chi_normalized": s.chi.spec()}


def cmd_certify(cfg: RunConfig) -> Report:
    s = setup(cfg)
    lam = _weight(s, cfg.lam)
    check_compatible(s.cb, s.chi, lam)
    cert = _certify_task((cfg, lam.values))
    fitted = None
    if not cert.R_direct.is_zero() and not cert.R_product.is_zero():
        fitted = str(cert.R_direct / cert.R_product)
    return Report(cfg, [cert], fitted, _summarize([cert], cfg.chop_seed is not None), setup_info=_setup_info(s))


def cmd_sweep(cfg: RunConfig) -> Report:
    s = setup(cfg)
    if cfg.sweep:
        weights = [_weight(s, vals) for vals in cfg.sweep]
        for w in weights:
            check_compatible(s.cb, s.chi, w)
    else:
        weights = list(compatible_weights(s.cb, s.chi))
        if not weights:
            raise ConfigError("no weight in this field is compatible with chi; try --ext-degree p")
    weights.sort(key=lambda w: w.values)
    certs = _run_certs(cfg, weights)
    summary = _summarize(certs, cfg.chop_seed is not None)
    fitted = None
    try:
        fitted = str(fit_c(certs))
    except NoNonvanishingPoint:
        pass
    except InconsistentConstant as exc:
        summary["c_inconsistent"] = str(exc)
    return Report(cfg, certs, fitted, summary, setup_info=_setup_info(s))


def cmd_identities(cfg: RunConfig) -> Report:
    s = setup(cfg)
    weights = [_weight(s, cfg.lam)] if cfg.lam is not None else None
    results = run_identity_suite(s.cb, s.par, s.chi, weights)
    summary = {
        "total": len(results),
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "vacuous": sum(r.vacuous for r in results),
    }
    return Report(cfg, [], None, summary, identities=results, setup_info=_setup_info(s))


def cmd_constants(cfg: RunConfig) -> str:
    s = setup(cfg)
    return s.cb.dump_csv()


def run(cfg: RunConfig) -> tuple[str, int]:
    """Execute a config; returns (rendered output, exit code)."""
    if cfg.command == "constants":
        return cmd_constants(cfg), 0
    t0 = time.perf_counter()
    report = {"certify": cmd_certify, "sweep": cmd_sweep, "identities": cmd_identities}[cfg.command](cfg)
    if cfg.timings:
        report.timings = {"wall_seconds": round(time.perf_counter() - t0, 3)}
    return report.render(), report.exit_code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
        text, code = run(cfg)
    except ParindError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def normalize(text: str) -> str:
    """Canonical form of a command line (render after parse)."""
    return RunConfig.parse(text).render()


__all__ = ["RunConfig", "Report", "parse_args", "parse_chi_spec", "run", "main", "normalize", "read_csv", "csv_columns"]
