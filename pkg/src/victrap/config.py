"""Config-file parsing and serialization.

The format is flat INI: ``key = value`` lines under ``[section]`` headers.
Sections are [decay], [drive], [chirp], [integration], [sweep], [output];
every key is optional and unknown keys or sections are errors.  An empty
config yields the baseline scenario (the fig2 preset).  A config containing
a [sweep] section describes a parameter sweep instead of a single run.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass

from .errors import ConfigError, InvalidParameterError
from .experiments import SWEEPABLE_PARAMETERS, SweepAxis, SweepSpec
from .model import (
    ChirpProfile,
    DensityMatrix,
    DriveConfig,
    Scenario,
    SystemParams,
    ground_state,
    initial_metastable,
    maximally_mixed,
)

__all__ = ["OutputOptions", "parse_config", "parse_config_full", "serialize_config"]

_INITIAL_STATES = {
    "metastable": initial_metastable,
    "ground": ground_state,
    "maximally_mixed": maximally_mixed,
}

_BOOLEAN_STATES = {
    "1": True, "yes": True, "true": True, "on": True,
    "0": False, "no": False, "false": False, "off": False,
}

_SCHEMA: dict[str, tuple[str, ...]] = {
    "decay": ("gamma01", "gamma02", "gamma03", "gamma_coll", "theta", "allow_wide_theta"),
    "drive": ("g01", "g02", "tau", "t0", "delta1", "delta2", "t_origin"),
    "chirp": ("enabled", "chi1", "chi2", "ramp", "profile"),
    "integration": (
        "t_start", "t_end", "sample_interval", "rtol", "atol",
        "trace_tol", "pos_tol", "initial_state",
    ),
    "sweep": (
        "parameter", "start", "stop", "points", "values",
        "parameter2", "start2", "stop2", "points2", "values2",
    ),
    "output": ("format", "path"),
}


@dataclass(frozen=True)
class OutputOptions:
    """Output preferences carried by the [output] section."""

    format: str = "csv"
    path: str | None = None


def _fail(section: str, key: str, message: str):
    raise ConfigError(f"[{section}] {key}: {message}")


def _as_float(section: str, key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        _fail(section, key, f"expected a number, got {raw!r}")
    if not math.isfinite(value):
        _fail(section, key, f"expected a finite number, got {raw!r}")
    return value


def _as_int(section: str, key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        _fail(section, key, f"expected an integer, got {raw!r}")


def _as_bool(section: str, key: str, raw: str) -> bool:
    state = _BOOLEAN_STATES.get(raw.strip().lower())
    if state is None:
        _fail(section, key, f"expected true/false, got {raw!r}")
    return state


def _as_float_list(section: str, key: str, raw: str) -> tuple[float, ...]:
    items = [item.strip() for item in raw.split(",") if item.strip()]
    if not items:
        _fail(section, key, "expected a comma-separated list of numbers")
    return tuple(_as_float(section, key, item) for item in items)


def _read_sections(text: str) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    sections: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(
                f"unknown section [{section}]; known sections: "
                + ", ".join(f"[{name}]" for name in _SCHEMA)
            )
        known = _SCHEMA[section]
        values: dict[str, str] = {}
        for key, raw in parser.items(section):
            if key not in known:
                raise ConfigError(
                    f"unknown key {key!r} in [{section}]; known keys: " + ", ".join(known)
                )
            values[key] = raw
        sections[section] = values
    return sections


def _build_scenario(sections: dict[str, dict[str, str]]) -> Scenario:
    decay = sections.get("decay", {})
    drive = sections.get("drive", {})
    chirp = sections.get("chirp", {})
    integration = sections.get("integration", {})

    params_kwargs = {}
    for key in ("gamma01", "gamma02", "gamma03", "gamma_coll", "theta"):
        if key in decay:
            params_kwargs[key] = _as_float("decay", key, decay[key])
    if "allow_wide_theta" in decay:
        params_kwargs["allow_wide_theta"] = _as_bool("decay", "allow_wide_theta", decay["allow_wide_theta"])

    drive_kwargs = {}
    for key in ("g01", "g02", "tau", "t0", "t_origin"):
        if key in drive:
            drive_kwargs[key] = _as_float("drive", key, drive[key])
    if "delta1" in drive:
        drive_kwargs["static_delta1"] = _as_float("drive", "delta1", drive["delta1"])
    if "delta2" in drive:
        drive_kwargs["static_delta2"] = _as_float("drive", "delta2", drive["delta2"])
    if "enabled" in chirp:
        drive_kwargs["chirp_enabled"] = _as_bool("chirp", "enabled", chirp["enabled"])
    for key in ("chi1", "chi2"):
        if key in chirp:
            drive_kwargs[key] = _as_float("chirp", key, chirp[key])
    if "ramp" in chirp:
        drive_kwargs["chirp_ramp"] = _as_float("chirp", "ramp", chirp["ramp"])
    if "profile" in chirp:
        raw = chirp["profile"].strip().lower()
        try:
            drive_kwargs["chirp_profile"] = ChirpProfile(raw)
        except ValueError:
            _fail("chirp", "profile", f"expected one of {[p.value for p in ChirpProfile]}, got {raw!r}")

    scenario_kwargs = {}
    for key in ("t_start", "t_end", "sample_interval", "rtol", "atol", "trace_tol", "pos_tol"):
        if key in integration:
            scenario_kwargs[key] = _as_float("integration", key, integration[key])
    initial = initial_metastable()
    if "initial_state" in integration:
        name = integration["initial_state"].strip().lower()
        factory = _INITIAL_STATES.get(name)
        if factory is None:
            _fail("integration", "initial_state",
                  f"expected one of {sorted(_INITIAL_STATES)}, got {name!r}")
        initial = factory()

    try:
        params = SystemParams(**params_kwargs)
        drive_config = DriveConfig(**drive_kwargs)
        return Scenario(params=params, drive=drive_config, initial_state=initial, **scenario_kwargs)
    except InvalidParameterError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc


def _build_axis(section: dict[str, str], suffix: str) -> SweepAxis | None:
    keys = {
        base: section[base + suffix]
        for base in ("parameter", "start", "stop", "points", "values")
        if base + suffix in section
    }
    if not keys:
        return None
    if "parameter" not in keys:
        raise ConfigError(f"[sweep] parameter{suffix} is required when other axis keys are set")
    parameter = keys["parameter"].strip()
    if parameter not in SWEEPABLE_PARAMETERS:
        _fail("sweep", "parameter" + suffix,
              f"unknown parameter {parameter!r}; choose one of {', '.join(SWEEPABLE_PARAMETERS)}")
    has_values = "values" in keys
    has_range = any(k in keys for k in ("start", "stop", "points"))
    if has_values and has_range:
        raise ConfigError(
            f"[sweep] give either values{suffix} or start{suffix}/stop{suffix}/points{suffix}, not both"
        )
    try:
        if has_values:
            return SweepAxis(parameter=parameter,
                             values=_as_float_list("sweep", "values" + suffix, keys["values"]))
        for needed in ("start", "stop", "points"):
            if needed not in keys:
                raise ConfigError(f"[sweep] {needed + suffix} is required for a range axis")
        return SweepAxis.linspace(
            parameter,
            _as_float("sweep", "start" + suffix, keys["start"]),
            _as_float("sweep", "stop" + suffix, keys["stop"]),
            _as_int("sweep", "points" + suffix, keys["points"]),
        )
    except InvalidParameterError as exc:
        raise ConfigError(f"invalid sweep axis: {exc}") from exc


def parse_config(text: str) -> Scenario | SweepSpec:
    """Parse config text into a fully validated Scenario or SweepSpec."""
    job, _ = parse_config_full(text)
    return job


def parse_config_full(text: str) -> tuple[Scenario | SweepSpec, OutputOptions]:
    """Like :func:`parse_config` but also returns the [output] preferences."""
    sections = _read_sections(text)
    scenario = _build_scenario(sections)

    output_raw = sections.get("output", {})
    fmt = output_raw.get("format", "csv").strip().lower()
    if fmt not in ("csv", "json"):
        _fail("output", "format", f"expected csv or json, got {fmt!r}")
    output = OutputOptions(format=fmt, path=output_raw.get("path"))

    if "sweep" in sections:
        axis1 = _build_axis(sections["sweep"], "")
        axis2 = _build_axis(sections["sweep"], "2")
        if axis1 is None:
            raise ConfigError("[sweep] section present but no axis defined (set 'parameter')")
        axes = (axis1,) if axis2 is None else (axis1, axis2)
        try:
            return SweepSpec(base=scenario, axes=axes), output
        except InvalidParameterError as exc:
            raise ConfigError(f"invalid sweep: {exc}") from exc
    return scenario, output


def _initial_state_name(state: DensityMatrix) -> str:
    for name, factory in _INITIAL_STATES.items():
        if state == factory():
            return name
    raise ConfigError(
        "initial state is not one of the named states "
        f"({', '.join(_INITIAL_STATES)}) and cannot be serialized"
    )


def serialize_config(job: Scenario | SweepSpec) -> str:
    """Render a Scenario or SweepSpec as config text; inverse of parse_config."""
    scenario = job.base if isinstance(job, SweepSpec) else job
    p, d = scenario.params, scenario.drive
    out = io.StringIO()
    out.write("[decay]\n")
    out.write(f"gamma01 = {p.gamma01!r}\n")
    out.write(f"gamma02 = {p.gamma02!r}\n")
    out.write(f"gamma03 = {p.gamma03!r}\n")
    out.write(f"gamma_coll = {p.gamma_coll!r}\n")
    out.write(f"theta = {p.theta!r}\n")
    out.write(f"allow_wide_theta = {'true' if p.allow_wide_theta else 'false'}\n")
    out.write("\n[drive]\n")
    out.write(f"g01 = {d.g01!r}\n")
    out.write(f"g02 = {d.g02!r}\n")
    out.write(f"tau = {d.tau!r}\n")
    out.write(f"t0 = {d.t0!r}\n")
    out.write(f"delta1 = {d.static_delta1!r}\n")
    out.write(f"delta2 = {d.static_delta2!r}\n")
    out.write(f"t_origin = {d.t_origin!r}\n")
    out.write("\n[chirp]\n")
    out.write(f"enabled = {'true' if d.chirp_enabled else 'false'}\n")
    out.write(f"chi1 = {d.chi1!r}\n")
    out.write(f"chi2 = {d.chi2!r}\n")
    out.write(f"ramp = {d.chirp_ramp!r}\n")
    out.write(f"profile = {d.chirp_profile.value}\n")
    out.write("\n[integration]\n")
    out.write(f"t_start = {scenario.t_start!r}\n")
    out.write(f"t_end = {scenario.t_end!r}\n")
    out.write(f"sample_interval = {scenario.sample_interval!r}\n")
    out.write(f"rtol = {scenario.rtol!r}\n")
    out.write(f"atol = {scenario.atol!r}\n")
    out.write(f"trace_tol = {scenario.trace_tol!r}\n")
    out.write(f"pos_tol = {scenario.pos_tol!r}\n")
    out.write(f"initial_state = {_initial_state_name(scenario.initial_state)}\n")
    if isinstance(job, SweepSpec):
        out.write("\n[sweep]\n")
        for axis, suffix in zip(job.axes, ("", "2")):
            out.write(f"parameter{suffix} = {axis.parameter}\n")
            out.write(f"values{suffix} = {', '.join(repr(v) for v in axis.values)}\n")
    return out.getvalue()
