"""Plain-text scenario files.

    [field]              mass, box_length, mode_cutoff, smear_width
    [scenario]           t_final, coupling_a, coupling_b, quad_steps, margin
    [object_a.right]     nodes = (t0,x0);(t1,x1);...   weights = (t0,s0);(t1,s1);...
    [object_a.left] [object_b.right] [object_b.left]
    [amplitudes]         alpha_r, alpha_l, beta_r, beta_l  (complex literals allowed)
    [qgem]               mass_a, mass_b, newton_g, t_final, d_min,
                         a_right = (t,x,y,z);...  a_left, b_right, b_left
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .field import FieldSpec
from .gaussian import DEFAULT_QUAD_STEPS
from .qgem import Path3D, QgemConfig
from .scenario import BALANCED, Scenario, Trajectory

BRANCH_SECTIONS = ("object_a.right", "object_a.left", "object_b.right", "object_b.left")
ALLOWED = {
    "field": {"mass", "box_length", "mode_cutoff", "smear_width"},
    "scenario": {"t_final", "coupling_a", "coupling_b", "quad_steps", "margin"},
    "amplitudes": {"alpha_r", "alpha_l", "beta_r", "beta_l"},
    "qgem": {"mass_a", "mass_b", "newton_g", "t_final", "d_min", "a_right", "a_left", "b_right", "b_left"},
    **{sec: {"nodes", "weights"} for sec in BRANCH_SECTIONS},
}


@dataclass
class RunConfig:
    field: FieldSpec
    scenario: Scenario | None
    quad_steps: int = DEFAULT_QUAD_STEPS
    margin: float = 0.0
    qgem: QgemConfig | None = None

    @property
    def quad_step(self) -> float:
        return self.scenario.t_final / self.quad_steps


def _where(sec: str, key: str) -> str:
    return f"[{sec}] {key}"


def _num(sec, key, raw, kind=float):
    try:
        return kind(raw.strip())
    except ValueError:
        raise ConfigError(f"{_where(sec, key)}: cannot parse {raw!r} as {kind.__name__}") from None


def _tuples(sec, key, raw, width):
    out = []
    for chunk in raw.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ConfigError(f"{_where(sec, key)}: expected '(a,b,...)' groups separated by ';', got {chunk!r}")
        parts = chunk[1:-1].split(",")
        if len(parts) != width:
            raise ConfigError(f"{_where(sec, key)}: expected {width} numbers per group, got {chunk!r}")
        out.append(tuple(_num(sec, key, p) for p in parts))
    if not out:
        raise ConfigError(f"{_where(sec, key)}: empty list")
    return tuple(out)


def _get(cp, sec, key, kind=float, default=None):
    if cp.has_option(sec, key):
        return _num(sec, key, cp.get(sec, key), kind)
    if default is None:
        raise ConfigError(f"{_where(sec, key)}: missing required key")
    return default


def _read(path) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    cp.optionxform = str
    text = Path(path).read_text()
    try:
        cp.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None
    for sec in cp.sections():
        if sec not in ALLOWED:
            raise ConfigError(f"{path}: unknown section [{sec}]")
        for key in cp.options(sec):
            if key not in ALLOWED[sec]:
                raise ConfigError(f"{path}: unknown key {_where(sec, key)}")
    return cp


def _amps(cp, prefix):
    if not cp.has_section("amplitudes"):
        return BALANCED
    keys = (f"{prefix}_r", f"{prefix}_l")
    present = [cp.has_option("amplitudes", k) for k in keys]
    if not any(present):
        return BALANCED
    return tuple(_get(cp, "amplitudes", k, complex) for k in keys)


def load_config(path, *, modes: int | None = None, box_length: float | None = None,
                quad_steps: int | None = None) -> RunConfig:
    cp = _read(path)
    fs = "field"
    spec = FieldSpec(
        mass=_get(cp, fs, "mass", float, 1.0) if cp.has_section(fs) else 1.0,
        box_length=box_length if box_length is not None else (_get(cp, fs, "box_length", float, 200.0) if cp.has_section(fs) else 200.0),
        mode_cutoff=modes if modes is not None else (_get(cp, fs, "mode_cutoff", int, 512) if cp.has_section(fs) else 512),
        smear_width=_get(cp, fs, "smear_width", float, 0.0) if cp.has_section(fs) else 0.0,
    )
    scenario = None
    steps = DEFAULT_QUAD_STEPS
    margin = 0.0
    if any(cp.has_section(s) for s in BRANCH_SECTIONS):
        trajs = []
        for sec in BRANCH_SECTIONS:
            if not cp.has_section(sec):
                raise ConfigError(f"{path}: missing section [{sec}]")
            if not cp.has_option(sec, "nodes"):
                raise ConfigError(f"{_where(sec, 'nodes')}: missing required key")
            nodes = _tuples(sec, "nodes", cp.get(sec, "nodes"), 2)
            weights = _tuples(sec, "weights", cp.get(sec, "weights"), 2) if cp.has_option(sec, "weights") else ((0.0, 1.0),)
            try:
                trajs.append(Trajectory(nodes, weights))
            except ConfigError as exc:
                raise ConfigError(f"[{sec}]: {exc}") from None
        ss = "scenario"
        has = cp.has_section(ss)
        scenario = Scenario(
            *trajs,
            alpha=_amps(cp, "alpha"),
            beta=_amps(cp, "beta"),
            coupling_a=_get(cp, ss, "coupling_a", float, 0.5) if has else 0.5,
            coupling_b=_get(cp, ss, "coupling_b", float, 0.5) if has else 0.5,
            t_final=_get(cp, ss, "t_final", float, trajs[0].t_final) if has else None,
        )
        steps = quad_steps if quad_steps is not None else (_get(cp, ss, "quad_steps", int, DEFAULT_QUAD_STEPS) if has else DEFAULT_QUAD_STEPS)
        if steps < 16:
            raise ConfigError(f"{_where(ss, 'quad_steps')}: need at least 16 steps, got {steps}")
        margin = _get(cp, ss, "margin", float, 0.0) if has else 0.0
    qgem = _load_qgem(cp) if cp.has_section("qgem") else None
    if scenario is None and qgem is None:
        raise ConfigError(f"{path}: no branch sections and no [qgem] section")
    return RunConfig(spec, scenario, steps, margin, qgem)


def _load_qgem(cp) -> QgemConfig:
    sec = "qgem"
    paths = {}
    for key in ("a_right", "a_left", "b_right", "b_left"):
        if not cp.has_option(sec, key):
            raise ConfigError(f"{_where(sec, key)}: missing required key")
        try:
            paths[key] = Path3D(_tuples(sec, key, cp.get(sec, key), 4))
        except ConfigError as exc:
            raise ConfigError(f"{_where(sec, key)}: {exc}") from None
    return QgemConfig(
        mass_a=_get(cp, sec, "mass_a"),
        mass_b=_get(cp, sec, "mass_b"),
        newton_g=_get(cp, sec, "newton_g"),
        t_final=_get(cp, sec, "t_final"),
        d_min=_get(cp, sec, "d_min", float, 1e-6),
        **paths,
    )


def qgem_amplitudes(path):
    cp = _read(path)
    return _amps(cp, "alpha"), _amps(cp, "beta")
