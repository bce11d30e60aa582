"""Command-line front end.

Config files are flat ``key = value`` lines (``#`` starts a comment; values may
be quoted)::

    cone = lorentz:2
    S = identity
    f = spindual:[0.6,0.8]
    u = point:[0,0,1]
    seed = 1

Exit codes: 0 when every assertion passes, 1 on an assertion failure, 2 on a
usage or configuration error.
"""

import argparse
import configparser
import json
import re
import sys
from dataclasses import dataclass

from .cones import parse_cone
from .errors import ConeError, ConfigError
from .operators import rank_one_perturb
from .rng import stream
from .selftest import run_selftest
from .textforms import parse_functional, parse_map, parse_point
from .verify import Expectation, Scenario, golden_scenarios, run_paper_examples, run_property_suite, run_scenario
from .witnesses import nonpositive_inverse_witness

KEYS = ("cone", "S", "f", "u", "y", "seed", "budget", "tol", "format", "csv", "expect_witness")
_SECTION = "config"


@dataclass
class Config:
    cone: object
    s: object
    f: object
    u: object
    y: object = None
    seed: int = 0
    budget: int = 10_000
    tol: float = 1e-9
    format: str = "json"
    csv: str = None
    expect_witness: object = None


def _locate(lines, key):
    pat = re.compile(rf"^\s*{re.escape(key)}\s*=\s*")
    for i, line in enumerate(lines, 1):
        m = pat.match(line)
        if m:
            return i, m.end() + 1
    return None, None


def _unquote(v):
    v = v.strip()
    if len(v) >= 2 and v[0] == v[-1] and v[0] in "\"'":
        return v[1:-1]
    return v


def load_config(text):
    """Parse config text into a ``Config``; errors carry line and column when known."""
    lines = text.splitlines()
    parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#",),
                                       inline_comment_prefixes=("#",), interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(f"[{_SECTION}]\n" + text)
    except configparser.ParsingError as exc:
        lineno, raw = exc.errors[0]
        raise ConfigError(f"cannot parse {raw.strip()!r}", lineno - 1, 1) from None
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise ConfigError(exc.message.splitlines()[0], None if line is None else line - 1) from None
    raw = {k: _unquote(v) for k, v in parser[_SECTION].items()}
    for key in raw:
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", *_locate(lines, key))
    for key in ("cone", "f", "u"):
        if key not in raw:
            raise ConfigError(f"missing required key {key!r}")

    def field(key, parse):
        try:
            return parse(raw[key])
        except ConfigError as exc:
            raise ConfigError(exc.message, *_locate(lines, key)) from None
        except (ConeError, ValueError, TypeError) as exc:
            raise ConfigError(f"{key}: {type(exc).__name__}: {exc}", *_locate(lines, key)) from None

    cone = field("cone", parse_cone)
    cfg = Config(
        cone=cone,
        s=field("S", lambda v: parse_map(v, cone)) if "S" in raw else parse_map("identity", cone),
        f=field("f", lambda v: parse_functional(v, cone)),
        u=field("u", lambda v: parse_point(v, cone)),
    )
    if "y" in raw:
        cfg.y = field("y", lambda v: parse_point(v, cone))
    if "seed" in raw:
        cfg.seed = field("seed", int)
    if "budget" in raw:
        cfg.budget = field("budget", int)
    if "tol" in raw:
        cfg.tol = field("tol", float)
    if "format" in raw:
        cfg.format = field("format", _format)
    if "csv" in raw:
        cfg.csv = raw["csv"]
    if "expect_witness" in raw:
        cfg.expect_witness = field("expect_witness", _boolean)
    return cfg


def _format(v):
    if v not in ("json", "text"):
        raise ValueError("format must be json or text")
    return v


def _boolean(v):
    low = v.lower()
    if low not in ("true", "false"):
        raise ValueError("expected true or false")
    return low == "true"


def _read_config(path, args):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    cfg = load_config(text)
    for key in ("seed", "budget", "tol", "format", "csv"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    return cfg


def _emit(report, csv_path, fmt):
    out = report.to_json() + "\n" if fmt == "json" else report.to_text()
    sys.stdout.write(out)
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(report.to_csv())
    return 0 if report.passed else 1


def _build(cfg):
    rng = stream(cfg.seed, "cli", "build")
    return rank_one_perturb(cfg.s, cfg.f, cfg.u, cfg.cone, rng)


def cmd_examples(args):
    if args.name is not None and args.name not in golden_scenarios():
        raise ConfigError(f"unknown scenario {args.name!r}; choose from {', '.join(sorted(golden_scenarios()))}")
    return _emit(run_paper_examples(args.seed or 0, args.name), args.csv, args.format or "json")


def cmd_verify(args):
    cfg = _read_config(args.config, args)
    t = _build(cfg)
    exps = [
        Expectation("positive", "T positive (10⁴ samples)", True, tol=cfg.tol),
        Expectation("inverse_residual", "inverse residual", 1e-9, relation="le", tol=0.0),
        Expectation("witness", "witness search", cfg.expect_witness, cfg.y, params={"budget": cfg.budget}),
    ]
    sc = Scenario("config", cfg.cone, cfg.s, cfg.f, cfg.u, exps)
    report = run_scenario(sc, cfg.seed)
    for key, value in t.hypotheses.as_dict().items():
        report.notes.append(f"hypothesis {key} = {str(value).lower()}")
    return _emit(report, cfg.csv, cfg.format)


def cmd_witness(args):
    cfg = _read_config(args.config, args)
    t = _build(cfg)
    hints = [] if cfg.y is None else [cfg.y]
    rep = nonpositive_inverse_witness(t, cfg.cone, stream(cfg.seed, "cli", "witness"), cfg.budget, hints)
    record = {"cone": cfg.cone.to_text(), **rep.as_dict()}
    if cfg.format == "json":
        sys.stdout.write(json.dumps(record, indent=2, ensure_ascii=False) + "\n")
    else:
        for key, value in record.items():
            sys.stdout.write(f"{key}={json.dumps(value, ensure_ascii=False)}\n")
    if cfg.expect_witness is None:
        return 0
    return 0 if rep.found == cfg.expect_witness else 1


def cmd_properties(args):
    cone = parse_cone(args.cone)
    return _emit(run_property_suite(cone, args.seed or 0), args.csv, args.format or "json")


def cmd_selftest(args):
    return _emit(run_selftest(args.seed or 0), args.csv, args.format or "text")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit seed (default 0)")
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--csv", default=None, metavar="PATH", help="also write a CSV of the checks")
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--budget", type=int, default=None, help="witness search budget")
    search.add_argument("--tol", type=float, default=None, help="positivity tolerance")
    search.add_argument("--config", required=True, metavar="FILE")

    p = argparse.ArgumentParser(prog="coneperturb", description="Rank-one perturbations of cone automorphisms.")
    sub = p.add_subparsers(dest="command", required=True)
    ex = sub.add_parser("examples", parents=[common], help="run the golden scenarios")
    ex.add_argument("--name", default=None)
    ex.set_defaults(run=cmd_examples)
    sub.add_parser("verify", parents=[common, search], help="check a configured perturbation").set_defaults(run=cmd_verify)
    w = sub.add_parser("witness", parents=[common, search], help="search for a non-positive inverse witness")
    w.set_defaults(run=cmd_witness)
    pr = sub.add_parser("properties", parents=[common], help="run the property suite on one cone")
    pr.add_argument("--cone", required=True, metavar="SPEC")
    pr.set_defaults(run=cmd_properties)
    sub.add_parser("selftest", parents=[common], help="run the full default suite").set_defaults(run=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except ConfigError as exc:
        sys.stderr.write(f"coneperturb: config error: {exc}\n")
        return 2
    except ConeError as exc:
        sys.stderr.write(f"coneperturb: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
