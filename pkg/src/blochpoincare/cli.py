"""Scenario runner: JSON configs in, JSON/CSV files out.

One subcommand per scenario kind (evolve, optimize-coherence, mueller,
interference, correspondence). Configs are validated against per-kind JSON
schemas before any computation; outputs are byte-deterministic for identical
configs (sorted keys, fixed float formatting, no timestamps). Every
successful run re-validates the library invariants on its own outputs before
writing.

Exit codes: 0 success, 2 config/schema violation, 3 numerical gate failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np
from jsonschema import Draft202012Validator

from . import __version__
from .bloch import bloch_vector, fidelity, is_normalized
from .coherence import (
    OpticalScenario,
    QuantumScenario,
    correspondence_report,
    optimal_rotation,
    stokes_rotation_check,
)
from .interference import (
    classical_intensity,
    fringe_visibility,
    pancharatnam_intensity,
    quantum_probability,
)
from .mueller import (
    classify_mueller,
    is_unitary,
    mueller_from_jones,
    mueller_rotator,
    wigner_rotation,
)
from .polarization import (
    rotate_coherency,
    stokes_from_coherency,
    validate_coherency,
)
from .speed_limit import (
    Route,
    efficiency,
    evolve_state,
    synthesize_max_uncertainty,
    synthesize_min_time,
)

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

KINDS = ("evolve", "optimize-coherence", "mueller", "interference", "correspondence")

TRAJECTORY_HEADER = "t,re_c0,im_c0,re_c1,im_c1,bx,by,bz,fidelity"

_DEFAULT_SEED = 20240801
_DEFAULT_SAMPLES = 101


class ConfigError(Exception):
    """Configuration rejected before any computation."""


class NumericalGateError(Exception):
    """A validated computation failed one of its quantitative gates."""


# ---------------------------------------------------------------------------
# Config schemas
# ---------------------------------------------------------------------------

_COMPLEX = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}
_STATE = {"type": "array", "items": _COMPLEX, "minItems": 2, "maxItems": 2}
_MATRIX2 = {
    "type": "array",
    "items": {"type": "array", "items": _COMPLEX, "minItems": 2, "maxItems": 2},
    "minItems": 2,
    "maxItems": 2,
}
_GRID = {
    "type": "object",
    "properties": {
        "start": {"type": "number"},
        "stop": {"type": "number"},
        "count": {"type": "integer", "minimum": 1},
    },
    "required": ["start", "stop", "count"],
    "additionalProperties": False,
}

_PARAMETER_SCHEMAS = {
    "evolve": {
        "type": "object",
        "properties": {
            "initial": _STATE,
            "target": _STATE,
            "energy": {"type": "number", "exclusiveMinimum": 0},
            "route": {"enum": [r.value for r in Route]},
            "samples": {"type": "integer", "minimum": 2},
        },
        "required": ["initial", "target", "energy"],
        "additionalProperties": False,
    },
    "optimize-coherence": {
        "type": "object",
        "properties": {"coherency": _MATRIX2},
        "required": ["coherency"],
        "additionalProperties": False,
    },
    "mueller": {
        "type": "object",
        "properties": {
            "jones": _MATRIX2,
            "rotator_angle": {"type": "number"},
        },
        "required": ["jones"],
        "additionalProperties": False,
    },
    "interference": {
        "oneOf": [
            {
                "type": "object",
                "properties": {
                    "law": {"const": "classical"},
                    "coherency": _MATRIX2,
                    "analyzer_angles": _GRID,
                    "phase_delays": _GRID,
                },
                "required": ["law", "coherency", "analyzer_angles", "phase_delays"],
                "additionalProperties": False,
            },
            {
                "type": "object",
                "properties": {
                    "law": {"const": "pancharatnam"},
                    "intensity_a": {"type": "number", "minimum": 0},
                    "intensity_b": {"type": "number", "minimum": 0},
                    "sphere_angles": _GRID,
                    "phase_advances": _GRID,
                },
                "required": [
                    "law",
                    "intensity_a",
                    "intensity_b",
                    "sphere_angles",
                    "phase_advances",
                ],
                "additionalProperties": False,
            },
            {
                "type": "object",
                "properties": {
                    "law": {"const": "quantum"},
                    "state_a": _STATE,
                    "state_b": _STATE,
                    "amp_a": _COMPLEX,
                    "amp_b_modulus": {"type": "number", "minimum": 0},
                    "relative_phases": _GRID,
                },
                "required": [
                    "law",
                    "state_a",
                    "state_b",
                    "amp_a",
                    "amp_b_modulus",
                    "relative_phases",
                ],
                "additionalProperties": False,
            },
        ]
    },
    "correspondence": {
        "type": "object",
        "properties": {
            "initial": _STATE,
            "target": _STATE,
            "energy": {"type": "number", "exclusiveMinimum": 0},
            "samples": {"type": "integer", "minimum": 2},
            "coherency": _MATRIX2,
        },
        "required": ["initial", "target", "energy", "coherency"],
        "additionalProperties": False,
    },
}


def _scenario_schema(kind: str) -> dict:
    return {
        "type": "object",
        "properties": {
            "kind": {"const": kind},
            "parameters": _PARAMETER_SCHEMAS[kind],
            "hbar": {"type": "number", "exclusiveMinimum": 0},
            "tolerances": {
                "type": "object",
                "additionalProperties": {"type": "number", "exclusiveMinimum": 0},
            },
            "output": {
                "type": "object",
                "properties": {
                    "path": {"type": "string"},
                    "format": {"enum": ["json", "csv"]},
                },
                "required": ["path"],
                "additionalProperties": False,
            },
        },
        "required": ["parameters"],
        "additionalProperties": False,
    }


# Config fields holding angles in radians, converted when --degrees is set.
_ANGLE_FIELDS = {
    "mueller": ("rotator_angle",),
    "interference": (
        "analyzer_angles",
        "phase_delays",
        "sphere_angles",
        "phase_advances",
        "relative_phases",
    ),
}


def _validate_config(kind: str, config: dict) -> None:
    validator = Draft202012Validator(_scenario_schema(kind))
    errors = sorted(validator.iter_errors(config), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "<root>"
        raise ConfigError(f"config field '{where}': {first.message}")


def _as_complex(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    return complex(value[0], value[1])


def _as_state_array(entries) -> np.ndarray:
    return np.array([_as_complex(v) for v in entries], dtype=complex)


def _as_matrix(entries) -> np.ndarray:
    return np.array([[_as_complex(v) for v in row] for row in entries], dtype=complex)


def _grid_values(grid: dict) -> np.ndarray:
    return np.linspace(float(grid["start"]), float(grid["stop"]), int(grid["count"]))


def _convert_degrees(kind: str, params: dict) -> dict:
    """Convert the angle-valued fields of a config from degrees to radians."""
    converted = dict(params)
    for field in _ANGLE_FIELDS.get(kind, ()):
        if field not in converted:
            continue
        value = converted[field]
        if isinstance(value, dict):
            converted[field] = {
                "start": np.deg2rad(float(value["start"])),
                "stop": np.deg2rad(float(value["stop"])),
                "count": int(value["count"]),
            }
        else:
            converted[field] = float(np.deg2rad(float(value)))
    return converted


# ---------------------------------------------------------------------------
# Deterministic serialization
# ---------------------------------------------------------------------------


def format_float(x: float) -> str:
    """Fixed 17-significant-digit decimal form, enough to round-trip a double."""
    if isinstance(x, float) and not np.isfinite(x):
        raise ValueError("refusing to serialize a non-finite float")
    return format(float(x), ".17g")


def _json_fragment(value, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = []
        for key in sorted(value):
            items.append(f'{pad}  {json.dumps(str(key))}: {_json_fragment(value[key], indent + 1)}')
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not len(value):
            return "[]"
        items = [f"{pad}  {_json_fragment(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value)!r}")


def render_json(payload: dict) -> str:
    """Pretty JSON with sorted keys and 17-significant-digit floats."""
    return _json_fragment(payload, 0) + "\n"


def render_csv(header: str, rows: Iterable[Sequence[float]]) -> str:
    """Version comment, fixed header row, then one line per record."""
    lines = [f"# version={__version__}", header]
    for row in rows:
        lines.append(",".join(format_float(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IOError(f"cannot write output file {path!r}: {exc}") from exc


def emit_json(payload: dict, path: str) -> str:
    body = dict(payload)
    body["version"] = __version__
    text = render_json(body)
    _write_text(path, text)
    return text


def emit_csv(records: Iterable[Sequence[float]], header: str, path: str) -> str:
    text = render_csv(header, records)
    _write_text(path, text)
    return text


def _complex_pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _matrix_payload(m: np.ndarray) -> list:
    m = np.asarray(m)
    if np.iscomplexobj(m):
        return [[_complex_pair(complex(v)) for v in row] for row in m]
    return [[float(v) for v in row] for row in m]


# ---------------------------------------------------------------------------
# Scenario runners
# ---------------------------------------------------------------------------


def _tolerance(config: dict, key: str, fallback: float) -> float:
    tolerances = config.get("tolerances", {})
    return float(tolerances.get(key, tolerances.get("default", fallback)))


def _run_evolve(config: dict, fmt: str, out_path: str, hbar: float, seed: int) -> None:
    params = config["parameters"]
    initial = _as_state_array(params["initial"])
    target = _as_state_array(params["target"])
    energy = float(params["energy"])
    samples = int(params.get("samples", _DEFAULT_SAMPLES))
    route = Route(params.get("route", Route.TIME_MINIMIZATION.value))
    if not (is_normalized(initial, 1e-9) and is_normalized(target, 1e-9)):
        raise ConfigError("endpoint states must be normalized")

    try:
        if route is Route.TIME_MINIMIZATION:
            result = synthesize_min_time(initial, target, energy, hbar=hbar)
        else:
            result = synthesize_max_uncertainty(initial, target, energy, hbar=hbar)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    times = np.linspace(0.0, result.t_min, samples)
    records = []
    for t in times:
        state = evolve_state(result.hamiltonian, initial, float(t), hbar=hbar)
        if not is_normalized(state, 1e-10):
            raise NumericalGateError("trajectory sample lost normalization")
        vec = bloch_vector(state)
        records.append(
            (
                float(t),
                state[0].real,
                state[0].imag,
                state[1].real,
                state[1].imag,
                vec[0],
                vec[1],
                vec[2],
                fidelity(target, state),
            )
        )
    gate = _tolerance(config, "endpoint_fidelity", 1e-9)
    if records[-1][-1] < 1.0 - gate:
        raise NumericalGateError(
            f"endpoint fidelity {records[-1][-1]!r} below gate 1 - {gate!r}"
        )
    if any(curr[0] <= prev[0] for prev, curr in zip(records, records[1:])):
        raise NumericalGateError("trajectory times are not strictly increasing")

    if fmt == "csv":
        emit_csv(records, TRAJECTORY_HEADER, out_path)
    else:
        emit_json(
            {
                "kind": "evolve",
                "route": route.value,
                "t_min": result.t_min,
                "delta_e": result.delta_e,
                "hbar": hbar,
                "trajectory": [
                    {
                        "t": r[0],
                        "state": [[r[1], r[2]], [r[3], r[4]]],
                        "bloch": [r[5], r[6], r[7]],
                        "fidelity_to_target": r[8],
                    }
                    for r in records
                ],
            },
            out_path,
        )


def _run_optimize(config: dict, fmt: str, out_path: str) -> None:
    if fmt != "json":
        raise ConfigError("optimize-coherence emits JSON only")
    j = _as_matrix(config["parameters"]["coherency"])
    try:
        validate_coherency(j)
        solution = optimal_rotation(j)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    ledger = stokes_rotation_check(stokes_from_coherency(j), solution.phi_opt)

    # Self-check before writing: equalized diagonal and coherence at P.
    rotated = rotate_coherency(j, solution.phi_opt)
    if abs((rotated[0, 0] - rotated[1, 1]).real) > 1e-9 * max(1.0, abs(np.trace(j))):
        raise NumericalGateError("rotated frame failed to equalize intensities")
    if abs(solution.j_after - solution.p) > 1e-9:
        raise NumericalGateError("coherence did not reach the degree of polarization")
    if abs(ledger.i_pol_after - ledger.i_pol_before) > 1e-9:
        raise NumericalGateError("polarized intensity not conserved")

    emit_json(
        {
            "kind": "optimize-coherence",
            "rotation": {
                "phi_opt": solution.phi_opt,
                "j_before": solution.j_before,
                "j_after": solution.j_after,
                "p": solution.p,
                "chi": solution.chi,
            },
            "ledger": {
                "i_pol_before": ledger.i_pol_before,
                "i_pol_after": ledger.i_pol_after,
                "s1_sq_before": ledger.s1_sq_before,
                "s1_sq_after": ledger.s1_sq_after,
                "s2_sq_before": ledger.s2_sq_before,
                "s2_sq_after": ledger.s2_sq_after,
            },
            "rotated_coherency": _matrix_payload(rotated),
        },
        out_path,
    )


def _run_mueller(config: dict, fmt: str, out_path: str, seed: int) -> None:
    if fmt != "json":
        raise ConfigError("mueller emits JSON only")
    params = config["parameters"]
    jones = _as_matrix(params["jones"])
    lifted = mueller_from_jones(jones)
    classification = classify_mueller(lifted, seed=seed)

    payload = {
        "kind": "mueller",
        "jones": _matrix_payload(jones),
        "mueller_from_jones": _matrix_payload(lifted),
        "classification": classification.value,
        "probe_seed": seed,
    }
    if is_unitary(jones):
        rotation = wigner_rotation(jones)
        if np.max(np.abs(rotation - lifted)) > 1e-10:
            raise NumericalGateError(
                "trace-form rotation lift disagrees with the Kronecker lift"
            )
        payload["wigner_rotation"] = _matrix_payload(rotation)
    if "rotator_angle" in params:
        payload["rotator_angle"] = float(params["rotator_angle"])
        payload["mueller_rotator"] = _matrix_payload(
            mueller_rotator(float(params["rotator_angle"]))
        )
    emit_json(payload, out_path)


def _run_interference(config: dict, fmt: str, out_path: str) -> None:
    params = config["parameters"]
    law = params["law"]
    if law == "classical":
        j = _as_matrix(params["coherency"])
        try:
            validate_coherency(j)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        rows = []
        for theta in _grid_values(params["analyzer_angles"]):
            for eps in _grid_values(params["phase_delays"]):
                intensity = classical_intensity(j, float(theta), float(eps))
                if intensity < -1e-12:
                    raise NumericalGateError("negative intensity in classical sweep")
                rows.append(
                    (
                        float(theta),
                        float(eps),
                        intensity,
                        fringe_visibility(j, float(theta)),
                    )
                )
        header = "theta,epsilon,intensity,visibility"
        json_rows = [
            {"theta": r[0], "epsilon": r[1], "intensity": r[2], "visibility": r[3]}
            for r in rows
        ]
    elif law == "pancharatnam":
        i_a, i_b = float(params["intensity_a"]), float(params["intensity_b"])
        rows = []
        for theta in _grid_values(params["sphere_angles"]):
            for delta in _grid_values(params["phase_advances"]):
                rows.append(
                    (
                        float(theta),
                        float(delta),
                        pancharatnam_intensity(i_a, i_b, float(theta), float(delta)),
                    )
                )
        header = "theta_poincare,delta,intensity"
        json_rows = [{"theta_poincare": r[0], "delta": r[1], "intensity": r[2]} for r in rows]
    else:
        state_a = _as_state_array(params["state_a"])
        state_b = _as_state_array(params["state_b"])
        amp_a = _as_complex(params["amp_a"])
        modulus = float(params["amp_b_modulus"])
        rows = []
        for phase in _grid_values(params["relative_phases"]):
            amp_b = modulus * np.exp(1j * float(phase))
            law_value = quantum_probability(amp_a, amp_b, state_a, state_b)
            direct = float(
                np.linalg.norm(amp_a * state_a + amp_b * state_b) ** 2
            )
            if abs(law_value - direct) > 1e-12 * max(1.0, direct):
                raise NumericalGateError("interference law deviates from direct norm")
            rows.append((float(phase), law_value, direct))
        header = "relative_phase,probability,direct_norm"
        json_rows = [
            {"relative_phase": r[0], "probability": r[1], "direct_norm": r[2]}
            for r in rows
        ]

    if fmt == "csv":
        emit_csv(rows, header, out_path)
    else:
        emit_json({"kind": "interference", "law": law, "rows": json_rows}, out_path)


def _run_correspondence(config: dict, fmt: str, out_path: str, hbar: float) -> None:
    if fmt != "json":
        raise ConfigError("correspondence emits JSON only")
    params = config["parameters"]
    initial = _as_state_array(params["initial"])
    target = _as_state_array(params["target"])
    energy = float(params["energy"])
    samples = int(params.get("samples", _DEFAULT_SAMPLES))
    j = _as_matrix(params["coherency"])

    try:
        validate_coherency(j)
        synthesis = synthesize_min_time(initial, target, energy, hbar=hbar)
        solution = optimal_rotation(j)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    trajectory = [
        evolve_state(synthesis.hamiltonian, initial, float(t), hbar=hbar)
        for t in np.linspace(0.0, synthesis.t_min, samples)
    ]
    quantum = QuantumScenario(
        synthesis=synthesis,
        efficiency=efficiency(trajectory),
        initial_state=initial,
        final_state=target,
    )
    ledger = stokes_rotation_check(stokes_from_coherency(j), solution.phi_opt)
    optical = OpticalScenario(coherency=j, rotation=solution, ledger=ledger)
    report = correspondence_report(quantum, optical)

    sys.stdout.write(report.as_table() + "\n")
    payload = {
        "kind": "correspondence",
        "hbar": hbar,
        "t_min": synthesis.t_min,
        "phi_opt": solution.phi_opt,
        "report": report.as_dict(),
    }
    emit_json(payload, out_path)
    gate = _tolerance(config, "endpoint_fidelity", 1e-9)
    last = fidelity(target, trajectory[-1])
    if last < 1.0 - gate:
        raise NumericalGateError(f"endpoint fidelity {last!r} below gate")
    if not report.all_passed:
        raise NumericalGateError("correspondence report has failing rows")


def run(kind: str, config: dict, args: argparse.Namespace) -> int:
    """Validate and execute one scenario; returns a process exit code."""
    try:
        _validate_config(kind, config)
        if "kind" in config and config["kind"] != kind:
            raise ConfigError(
                f"config kind {config['kind']!r} does not match subcommand {kind!r}"
            )
        params = config["parameters"]
        if args.degrees:
            params = _convert_degrees(kind, params)
            config = dict(config, parameters=params)
        if args.tolerance is not None:
            tolerances = dict(config.get("tolerances", {}))
            tolerances["default"] = args.tolerance
            config = dict(config, tolerances=tolerances)
        hbar = float(args.hbar if args.hbar is not None else config.get("hbar", 1.0))
        if hbar <= 0.0:
            raise ConfigError("hbar must be positive")

        output = config.get("output", {})
        out_path = args.output or output.get("path", "-")
        fmt = args.format or output.get("format", "json")

        if kind == "evolve":
            _run_evolve(config, fmt, out_path, hbar, args.seed)
        elif kind == "optimize-coherence":
            _run_optimize(config, fmt, out_path)
        elif kind == "mueller":
            _run_mueller(config, fmt, out_path, args.seed)
        elif kind == "interference":
            _run_interference(config, fmt, out_path)
        else:
            _run_correspondence(config, fmt, out_path, hbar)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (NumericalGateError, RuntimeError) as exc:
        print(f"numerical gate failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except IOError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _load_config(path: str):
    try:
        if path == "-":
            raw = sys.stdin.read()
        else:
            raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IOError(f"cannot read config {path!r}: {exc}") from exc
    try:
        config = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(config, (dict, list)):
        raise ConfigError("config must be a JSON object or an array of them")
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochpoincare",
        description=(
            "Run optimal-speed qubit evolution and maximal-coherence "
            "polarization scenarios from JSON configs."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        sub = subparsers.add_parser(kind, help=f"run a {kind} scenario")
        sub.add_argument("--config", required=True, help="JSON config path, or - for stdin")
        sub.add_argument("--output", help="output path, or - for stdout")
        sub.add_argument("--format", choices=["json", "csv"], help="output format")
        sub.add_argument("--hbar", type=float, help="value of hbar (default 1)")
        sub.add_argument(
            "--tolerance", type=float, help="default tolerance for numerical gates"
        )
        sub.add_argument(
            "--degrees",
            action="store_true",
            help="interpret angle-valued config fields as degrees",
        )
        sub.add_argument(
            "--seed",
            type=int,
            default=_DEFAULT_SEED,
            help="seed for classification probes",
        )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except IOError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO

    if isinstance(config, dict):
        return run(args.kind, config, args)

    # Batch of independent scenarios; each carries its own output, runs in a
    # deterministic order, and shares no state with the others.
    if args.output:
        print("error: batch configs must carry per-scenario output paths", file=sys.stderr)
        return EXIT_SCHEMA
    status = EXIT_OK
    for index, entry in enumerate(config):
        if not isinstance(entry, dict) or "output" not in entry:
            print(f"error: batch entry {index} must be an object with an output", file=sys.stderr)
            return EXIT_SCHEMA
        code = run(args.kind, entry, args)
        if code != EXIT_OK and status == EXIT_OK:
            status = code
    return status


if __name__ == "__main__":
    sys.exit(main())
