"""Canonical text forms for functionals, maps and points.

Examples: ``covector:[1,0,2]``, ``spindual:[0.6,0.8]``, ``trace``, ``eval@0``,
``permdiag:(2,1):(0.5,2)``, ``identity``, ``point:[0,1]``. Arrays are JSON.
"""

import json
import re

import numpy as np

from .cones import GridNonneg
from .errors import ConfigError
from .functionals import (
    CPForm,
    DenseCovector,
    LexFirstCoord,
    PointEvaluation,
    Scaled,
    SpinDual,
    TraceForm,
    TrapezoidIntegral,
)
from .operators import Congruence, Dense, Identity, PermDiag, SpinAuto

_SCALED = re.compile(r"^\s*([0-9.eE+-]+)\s*\*\s*(.+)$")


def _json(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed array in {what}: {exc.msg}") from exc


def _nodes(cone, form):
    if not isinstance(cone, GridNonneg):
        raise ConfigError(f"{form} needs a grid cone")
    return cone.nodes


def parse_functional(text, cone):
    text = text.strip()
    m = _SCALED.match(text)
    if m:
        return Scaled(float(m.group(1)), parse_functional(m.group(2), cone))
    head, _, rest = text.partition(":")
    if head == "covector":
        return DenseCovector(np.asarray(_json(rest, "covector"), dtype=float))
    if head == "spindual":
        return SpinDual(_json(rest, "spindual"))
    if head == "trace":
        return TraceForm(np.eye(cone.ambient_shape[0]) if not rest else _json(rest, "trace"))
    if head == "cp":
        return CPForm(_json(rest, "cp"))
    if head == "integral" and not rest:
        return TrapezoidIntegral(_nodes(cone, "integral"))
    if head.startswith("eval@") and not rest:
        try:
            index = int(head[5:])
        except ValueError as exc:
            raise ConfigError(f"bad node index in {text!r}") from exc
        return PointEvaluation(_nodes(cone, "eval"), index)
    if head == "lexfirst" and not rest:
        return LexFirstCoord()
    raise ConfigError(f"unknown functional {text!r}")


def _tuple(text, cast):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ConfigError(f"expected a parenthesised list, got {text!r}")
    try:
        return [cast(x) for x in text[1:-1].split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad entry in {text!r}") from exc


def parse_map(text, cone):
    text = text.strip()
    head, _, rest = text.partition(":")
    if head == "identity" and not rest:
        return Identity(cone.ambient_shape)
    if head == "permdiag":
        perm, sep, diag = rest.partition("):")
        if not sep:
            raise ConfigError(f"permdiag needs (perm):(diag), got {text!r}")
        return PermDiag([i - 1 for i in _tuple(perm + ")", int)], _tuple(diag, float))
    if head == "spinauto":
        q, _, rho = rest.rpartition(":")
        return SpinAuto(_json(q, "spinauto"), float(rho))
    if head == "congruence":
        return Congruence(_json(rest, "congruence"))
    if head == "dense":
        return Dense(_json(rest, "dense"), cone.ambient_shape)
    raise ConfigError(f"unknown map {text!r}")


def parse_point(text, cone):
    text = text.strip()
    if text == "unit":
        return cone.unit()
    head, sep, rest = text.partition(":")
    body = rest if sep and head == "point" else text
    return cone.check(np.asarray(_json(body, "point"), dtype=float))
