"""Run configuration: a sectioned key = value file (INI syntax).

Every key has a default; a missing key is filled in and recorded in
``RunConfig.defaults_applied``. Unknown sections or keys are errors. Floats
are written with ``repr`` so a parse/serialize round trip is bit-exact.
"""
from __future__ import annotations

import configparser
import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import estimation as est
from .dynamics import EvolutionGrid
from .model import (
    COUPLING_LABELS,
    DimensionlessParams,
    QuditModel,
    TruncationMode,
    default_model,
    default_params,
    truncate,
)

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        where = ""
        if key is not None:
            where = f"key '{key}'"
            if line is not None:
                where += f" (line {line})"
            where += ": "
        super().__init__(where + message)
        self.key = key
        self.line = line


@dataclass(frozen=True)
class _Key:
    default: Any
    parse: Callable[[str], Any]
    dump: Callable[[Any], str]
    check: Callable[[Any], str | None] = lambda v: None


def _floats(n: int):
    def parse(text):
        parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        if len(parts) != n:
            raise ValueError(f"expected {n} numbers, got {len(parts)}")
        values = tuple(float(p) for p in parts)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("values must be finite")
        return values

    return parse


def _float(text):
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("value must be finite")
    return value


def _dump_floats(values):
    return ", ".join(repr(float(v)) for v in values)


def _dump_float(value):
    return repr(float(value))


def _words(text):
    return tuple(w for w in re.split(r"[,\s]+", text.strip()) if w)


def _at_least(bound, strict=False):
    def check(v):
        if (v <= bound) if strict else (v < bound):
            return f"must be {'>' if strict else '>='} {bound}, got {v!r}"
        return None

    return check


def _float_key(default, check=lambda v: None):
    return _Key(default, _float, _dump_float, check)


def _int_key(default, check=lambda v: None):
    return _Key(default, int, str, check)


def _floats_key(default, check=lambda v: None):
    return _Key(tuple(default), _floats(len(default)), _dump_floats, check)


def _check_formats(v):
    bad = [w for w in v if w not in ("csv", "svg")]
    return f"unknown formats {bad}; allowed: csv, svg" if bad else None


def _check_sign(v):
    return None if v in (-1, 1) else f"must be 1 or -1, got {v}"


def _check_levels(v):
    return None if v[0] == 0.0 else f"first level ratio must be 0, got {v[0]!r}"


def _build_schema() -> dict[str, dict[str, _Key]]:
    m, p = default_model(), default_params()
    V = est.PC645_V
    pulse = est.PulseSpec.typical()
    return {
        "model": {
            "level_ratios": _floats_key(m.level_ratios, _check_levels),
            "dipole_ratios": _floats_key(m.dipole_ratios),
            "coupling_ratios": _floats_key(m.coupling_ratios),
            "truncation": _Key(m.truncation, lambda s: TruncationMode(s.strip()), lambda t: t.value),
            "coupling_sign": _int_key(m.coupling_sign, _check_sign),
        },
        "params": {
            "gamma": _float_key(p.gamma, _at_least(0.0)),
            "delta": _float_key(p.delta),
            "drive_ratio": _float_key(p.drive_ratio),
            "r": _float_key(p.r, _at_least(0.0)),
        },
        "grid": {
            "gamma2_max": _float_key(p.gamma2_max, _at_least(0.0, strict=True)),
            "samples": _int_key(200000, _at_least(2)),
            "gamma_min": _float_key(0.0, _at_least(0.0)),
            "gamma_max": _float_key(4.0, _at_least(0.0)),
            "gamma_samples": _int_key(201, _at_least(1)),
            "surface_gamma_samples": _int_key(81, _at_least(1)),
            "surface_gamma2_samples": _int_key(501, _at_least(2)),
        },
        "estimation": {
            "block_a_energies": _floats_key(est.PC645_BLOCK_A.site_energies),
            "block_a_coupling": _float_key(est.PC645_BLOCK_A.coupling),
            "block_b_energies": _floats_key(est.PC645_BLOCK_B.site_energies),
            "block_b_coupling": _float_key(est.PC645_BLOCK_B.coupling),
            "inter_pair_coupling": _floats_key(V.ravel().tolist()),
            "dipole_a1": _floats_key(est.PC645_DIPOLES_A[0].tolist()),
            "dipole_a2": _floats_key(est.PC645_DIPOLES_A[1].tolist()),
            "dipole_b1": _floats_key(est.PC645_DIPOLES_B[0].tolist()),
            "dipole_b2": _floats_key(est.PC645_DIPOLES_B[1].tolist()),
            "level3_ratio": _float_key(est.ASSIGNED_LEVEL3_RATIO),
            "dipole31_ratio": _float_key(est.ASSIGNED_DIPOLE31_RATIO),
            "assigned_couplings": _floats_key([est.ASSIGNED_COUPLINGS[k] for k in COUPLING_LABELS[4:]]),
            "pulse_energy": _float_key(pulse.energy, _at_least(0.0)),
            "pulse_duration": _float_key(pulse.duration, _at_least(0.0, strict=True)),
            "beam_cross_section": _float_key(pulse.cross_section, _at_least(0.0, strict=True)),
            "pulse_dipole_debye": _float_key(pulse.dipole / est.DEBYE, _at_least(0.0, strict=True)),
            "quoted_gamma": _float_key(est.QUOTED_GAMMA),
        },
        "output": {
            "directory": _Key("qudit_eet_output", str.strip, str),
            "formats": _Key(("csv",), _words, ", ".join, _check_formats),
        },
    }


SCHEMA = _build_schema()


@dataclass
class RunConfig:
    values: dict[str, dict[str, Any]]
    defaults_applied: list[str] = field(default_factory=list)
    source: str | None = None

    def __getitem__(self, section):
        return self.values[section]

    def model(self) -> QuditModel:
        s = self.values["model"]
        full = QuditModel(
            level_ratios=s["level_ratios"],
            dipole_ratios=s["dipole_ratios"],
            coupling_ratios=s["coupling_ratios"],
            truncation=TruncationMode.FOUR_LEVEL,
            coupling_sign=s["coupling_sign"],
        )
        return truncate(full, s["truncation"])

    def params(self) -> DimensionlessParams:
        s = self.values["params"]
        return DimensionlessParams(
            gamma=s["gamma"],
            delta=s["delta"],
            gamma2_max=self.values["grid"]["gamma2_max"],
            r=s["r"],
            drive_ratio=s["drive_ratio"],
        )

    def grid(self) -> EvolutionGrid:
        g = self.values["grid"]
        return EvolutionGrid.uniform(g["gamma2_max"], g["samples"])

    def gamma_values(self) -> np.ndarray:
        g = self.values["grid"]
        return np.linspace(g["gamma_min"], g["gamma_max"], g["gamma_samples"])

    def surface_gamma_values(self) -> np.ndarray:
        g = self.values["grid"]
        return np.linspace(g["gamma_min"], g["gamma_max"], g["surface_gamma_samples"])

    def surface_grid(self) -> EvolutionGrid:
        g = self.values["grid"]
        return EvolutionGrid.uniform(g["gamma2_max"], g["surface_gamma2_samples"])

    def estimation_inputs(self) -> dict[str, Any]:
        e = self.values["estimation"]
        return dict(
            block_a=est.FrenkelBlock(e["block_a_energies"], e["block_a_coupling"]),
            block_b=est.FrenkelBlock(e["block_b_energies"], e["block_b_coupling"]),
            V=np.array(e["inter_pair_coupling"]).reshape(4, 4),
            dipoles_a=np.array([e["dipole_a1"], e["dipole_a2"]]),
            dipoles_b=np.array([e["dipole_b1"], e["dipole_b2"]]),
            level3_ratio=e["level3_ratio"],
            dipole31_ratio=e["dipole31_ratio"],
            assigned_couplings=dict(zip(COUPLING_LABELS[4:], e["assigned_couplings"])),
        )

    def pulse(self) -> est.PulseSpec:
        e = self.values["estimation"]
        return est.PulseSpec(
            e["pulse_energy"], e["pulse_duration"], e["beam_cross_section"], e["pulse_dipole_debye"] * est.DEBYE
        )


def default_config() -> RunConfig:
    return parse_config_text("")


def _line_numbers(text: str) -> dict[tuple[str, str], int]:
    lines: dict[tuple[str, str], int] = {}
    section = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#;":
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            lines.setdefault((section, ""), no)
            continue
        key = re.split(r"[=:]", line, maxsplit=1)[0].strip()
        lines.setdefault((section, key), no)
    return lines


def parse_config_text(text: str, source: str | None = None) -> RunConfig:
    parser = configparser.ConfigParser(interpolation=None, default_section="__defaults__")
    parser.optionxform = str
    try:
        parser.read_string(text, source=source or "<config>")
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    lines = _line_numbers(text)

    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError("unknown section", key=f"[{section}]", line=lines.get((section, "")))
        for key in parser[section]:
            if key not in SCHEMA[section]:
                raise ConfigError("unknown key", key=f"{section}.{key}", line=lines.get((section, key)))

    values: dict[str, dict[str, Any]] = {}
    defaults_applied = []
    for section, keys in SCHEMA.items():
        values[section] = {}
        for key, spec in keys.items():
            name = f"{section}.{key}"
            if parser.has_option(section, key):
                raw = parser.get(section, key)
                line = lines.get((section, key))
                try:
                    value = spec.parse(raw)
                except ValueError as exc:
                    raise ConfigError(f"cannot parse {raw!r}: {exc}", key=name, line=line) from exc
                problem = spec.check(value)
                if problem:
                    raise ConfigError(problem, key=name, line=line)
            else:
                value = spec.default
                defaults_applied.append(name)
            values[section][key] = value
    if defaults_applied:
        log.info("config: %d keys missing, defaults applied: %s", len(defaults_applied), ", ".join(defaults_applied))

    config = RunConfig(values, defaults_applied, source)
    try:
        config.model()
        config.params()
        config.pulse()
    except ValueError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
    g = values["grid"]
    if g["gamma_max"] < g["gamma_min"]:
        raise ConfigError("gamma_max must be >= gamma_min", key="grid.gamma_max", line=lines.get(("grid", "gamma_max")))
    return config


def parse_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))


def serialize_config(config: RunConfig) -> str:
    out = []
    for section, keys in SCHEMA.items():
        out.append(f"[{section}]")
        for key, spec in keys.items():
            out.append(f"{key} = {spec.dump(config.values[section][key])}")
        out.append("")
    return "\n".join(out)
