"""JSON schemas shared with the command-line tool.

Basis files:    {"dimension": d, "label": str,
                 "elements": [[[ [re, im], ... d ], ... d rows ], ... d^2 ]}
Fiducial files: {"dimension": d, "amplitudes": [[re, im], ... d]}
State files:    {"dimension": d, "matrix": [[ [re, im], ... d ], ... d rows ]}

Writers emit floats with 17 significant digits (enough to round-trip IEEE
doubles bit-exactly); readers accept any float precision. POVM files reuse
the basis layout but may carry any number of elements.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .bases import MeasureBasis
from .representations import validate_povm, validate_state


class SchemaError(ValueError):
    """File content does not match the expected JSON schema."""


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("cannot serialize non-finite float")
    return format(float(x), ".17g")


def dumps_json(obj, indent: int = 0) -> str:
    """Serialize nested dicts/lists/scalars, floats at 17 significant
    digits. Key order is preserved."""
    pad = " " * indent
    if isinstance(obj, dict):
        items = ", ".join(
            f"{json.dumps(str(k))}: {dumps_json(v)}" for k, v in obj.items()
        )
        return pad + "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if isinstance(obj, np.ndarray):
            obj = obj.tolist()
        return pad + "[" + ", ".join(dumps_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return pad + json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return pad + str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return pad + _fmt_float(float(obj))
    if isinstance(obj, complex):
        return pad + dumps_json([obj.real, obj.imag])
    if isinstance(obj, str):
        return pad + json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _matrix_to_pairs(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _pairs_to_matrix(rows, d: int, what: str) -> np.ndarray:
    M = np.asarray(rows, dtype=float)
    if M.shape != (d, d, 2):
        raise SchemaError(
            f"{what}: expected a {d} x {d} matrix of [re, im] pairs, got "
            f"shape {M.shape}"
        )
    return M[..., 0] + 1j * M[..., 1]


def basis_to_dict(basis: MeasureBasis) -> dict:
    return {
        "dimension": basis.dim,
        "label": basis.label,
        "elements": [_matrix_to_pairs(E) for E in basis.elements],
    }


def write_basis(basis: MeasureBasis, path) -> None:
    Path(path).write_text(dumps_json(basis_to_dict(basis)) + "\n")


def _load_doc(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected a JSON object at top level")
    return doc


def _require(doc: dict, key: str, path) -> object:
    if key not in doc:
        raise SchemaError(f"{path}: missing required key {key!r}")
    return doc[key]


def _read_elements(path, expect_square_count: bool):
    doc = _load_doc(path)
    d = int(_require(doc, "dimension", path))
    raw = _require(doc, "elements", path)
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{path}: 'elements' must be a non-empty list")
    if expect_square_count and len(raw) != d * d:
        raise SchemaError(
            f"{path}: expected {d * d} elements for dimension {d}, "
            f"got {len(raw)}"
        )
    elements = np.stack(
        [_pairs_to_matrix(E, d, f"{path} element {i}") for i, E in enumerate(raw)]
    )
    return elements, str(doc.get("label", ""))


def read_basis(path) -> MeasureBasis:
    """Load and validate a measure basis file."""
    elements, label = _read_elements(path, expect_square_count=True)
    return MeasureBasis(elements, label=label)


def read_povm(path) -> np.ndarray:
    """Load a POVM file (basis layout, any element count) and validate the
    effects."""
    effects, _ = _read_elements(path, expect_square_count=False)
    return validate_povm(effects)


def read_fiducial(path) -> np.ndarray:
    """Load a fiducial vector; unit norm is checked by the SIC builder."""
    doc = _load_doc(path)
    d = int(_require(doc, "dimension", path))
    amps = np.asarray(_require(doc, "amplitudes", path), dtype=float)
    if amps.shape != (d, 2):
        raise SchemaError(
            f"{path}: expected {d} [re, im] amplitude pairs, got shape "
            f"{amps.shape}"
        )
    return amps[:, 0] + 1j * amps[:, 1]


def write_fiducial(fiducial, path) -> None:
    f = np.asarray(fiducial, dtype=complex).reshape(-1)
    doc = {
        "dimension": f.shape[0],
        "amplitudes": [[float(z.real), float(z.imag)] for z in f],
    }
    Path(path).write_text(dumps_json(doc) + "\n")


def read_state(path) -> np.ndarray:
    """Load and validate a density-operator file."""
    doc = _load_doc(path)
    d = int(_require(doc, "dimension", path))
    rho = _pairs_to_matrix(_require(doc, "matrix", path), d, f"{path} matrix")
    return validate_state(rho)


def write_state(rho, path) -> None:
    rho = np.asarray(rho, dtype=complex)
    doc = {"dimension": rho.shape[0], "matrix": _matrix_to_pairs(rho)}
    Path(path).write_text(dumps_json(doc) + "\n")
