"""JSON state files.

A file holds either a density matrix or a pure state (or, for witnesses, a
bare Hermitian operator)::

    {"kind": "density", "dims": [2, 2], "matrix": [[[re, im], ...], ...],
     "metadata": {"name": "werner", "p": 0.5}}
    {"kind": "pure", "dims": [2, 2], "vector": [[re, im], ...]}
    {"kind": "operator", "dims": [2, 2], "matrix": [...]}

Numbers are written with ``repr`` precision so a state survives a round trip
bit for bit.
"""

import json
from pathlib import Path

import numpy as np

from qsep.errors import ValidationError
from qsep.linalg import as_dims
from qsep.states import DensityMatrix, PureState, projector

FORMAT = "qsep-state/1"
KINDS = ("density", "pure", "operator")


def _encode_complex(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _decode_complex(pair, where: str) -> complex:
    if isinstance(pair, (int, float)) and not isinstance(pair, bool):
        return complex(pair)
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
        raise ValidationError(f"{where}: expected a [re, im] pair, got {pair!r}")
    return complex(pair[0], pair[1])


def _decode_matrix(rows, n: int) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n:
        raise ValidationError(f"matrix must have {n} rows")
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ValidationError(f"matrix row {i} must have {n} entries")
        for j, z in enumerate(row):
            out[i, j] = _decode_complex(z, f"matrix[{i}][{j}]")
    return out


def to_dict(state, metadata: dict | None = None) -> dict:
    if isinstance(state, PureState):
        body = {"kind": "pure", "vector": [_encode_complex(z) for z in state.vec]}
    elif isinstance(state, DensityMatrix):
        body = {"kind": "density", "matrix": [[_encode_complex(z) for z in row] for row in state.mat]}
    else:
        raise TypeError(f"cannot serialise {type(state).__name__}")
    out = {"format": FORMAT, "dims": list(state.dims), **body}
    if metadata:
        out["metadata"] = metadata
    return out


def operator_to_dict(op, dims, metadata: dict | None = None) -> dict:
    out = {
        "format": FORMAT,
        "kind": "operator",
        "dims": list(as_dims(dims)),
        "matrix": [[_encode_complex(z) for z in row] for row in np.asarray(op)],
    }
    if metadata:
        out["metadata"] = metadata
    return out


def from_dict(data) -> tuple[object, dict]:
    """Parse a state dict; returns ``(state, metadata)``.

    ``state`` is a :class:`PureState`, a :class:`DensityMatrix`, or for kind
    ``"operator"`` a ``(matrix, dims)`` tuple.
    """
    if not isinstance(data, dict):
        raise ValidationError("state file must contain a JSON object")
    kind = data.get("kind", "density")
    if kind not in KINDS:
        raise ValidationError(f"unknown kind {kind!r}; expected one of {KINDS}")
    dims_raw = data.get("dims")
    if not (isinstance(dims_raw, list) and len(dims_raw) == 2
            and all(isinstance(d, int) and not isinstance(d, bool) for d in dims_raw)):
        raise ValidationError(f"dims must be a pair of positive integers, got {dims_raw!r}")
    dims = as_dims(dims_raw)
    metadata = data.get("metadata") or {}
    if kind == "pure":
        vec = data.get("vector")
        if not isinstance(vec, list) or len(vec) != dims.total:
            raise ValidationError(f"vector must have {dims.total} amplitudes")
        amps = np.array([_decode_complex(z, f"vector[{i}]") for i, z in enumerate(vec)])
        return PureState(amps, dims), metadata
    mat = _decode_matrix(data.get("matrix"), dims.total)
    if kind == "operator":
        return (mat, dims), metadata
    return DensityMatrix(mat, dims), metadata


def dump(state, path, metadata: dict | None = None) -> None:
    Path(path).write_text(json.dumps(to_dict(state, metadata), indent=1) + "\n")


def dumps(state, metadata: dict | None = None) -> str:
    return json.dumps(to_dict(state, metadata), indent=1)


def load(path) -> tuple[object, dict]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    return from_dict(data)


def load_density(path) -> DensityMatrix:
    state, _ = load(path)
    if isinstance(state, PureState):
        return projector(state)
    if isinstance(state, DensityMatrix):
        return state
    raise ValidationError(f"{path}: expected a state, found a bare operator")
