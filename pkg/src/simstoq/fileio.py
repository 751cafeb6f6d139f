"""Set files and reports: deterministic JSON with explicit re/im arrays.

Complex matrices are stored as separate real and imaginary double arrays
(no complex literals), and every float is written with 17 significant
digits, which round-trips IEEE doubles exactly.  The writer emits keys in
insertion order with a fixed layout, so identical data produces identical
bytes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import HermitianMatrix

SET_FORMAT = "simstoq-set-v1"
REPORT_FORMAT = "simstoq-report-v1"


class SetFileError(ValueError):
    """Malformed or rejected Hamiltonian set file."""


def _format_scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        value = float(x)
        if not np.isfinite(value):
            raise ValueError(f"cannot serialize non-finite float {value}")
        return f"{value:.17g}"
    raise TypeError(f"unsupported scalar {type(x)}")


def dumps_canonical(obj, indent: int = 0) -> str:
    """Serialize to JSON with deterministic layout and 17-digit floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, int, float, np.integer, np.floating)):
        return _format_scalar(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{inner}{json.dumps(str(k))}: {dumps_canonical(v, indent + 1)}'
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [dumps_canonical(v, indent + 1) for v in obj]
        if all(len(p) < 26 and "\n" not in p for p in parts) and len(parts) <= 16:
            return "[" + ", ".join(parts) + "]"
        return "[\n" + ",\n".join(inner + p for p in parts) + "\n" + pad + "]"
    raise TypeError(f"unsupported type {type(obj)}")


def write_canonical(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(obj))
        fh.write("\n")


@dataclass
class HamiltonianSet:
    """A dimension, a list of Hermitian matrices, and free-form metadata."""

    d: int
    hamiltonians: list[HermitianMatrix]
    metadata: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.hamiltonians)


def matrix_payload(mat: np.ndarray) -> dict:
    return {"re": mat.real.tolist(), "im": mat.imag.tolist()}


def save_set(path, hset: HamiltonianSet) -> None:
    payload = {
        "format": SET_FORMAT,
        "d": hset.d,
        "hamiltonians": [matrix_payload(H.mat) for H in hset.hamiltonians],
    }
    if hset.metadata:
        payload["metadata"] = hset.metadata
    write_canonical(path, payload)


def load_set(path, hermiticity_tol: float = 1e-8) -> HamiltonianSet:
    """Load a set file, hard-rejecting non-Hermitian or malformed entries."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SetFileError(f"{path}: not valid JSON ({exc})") from exc

    if not isinstance(data, dict) or "d" not in data or "hamiltonians" not in data:
        raise SetFileError(f"{path}: missing required fields 'd' and 'hamiltonians'")
    d = data["d"]
    if not isinstance(d, int) or d < 2:
        raise SetFileError(f"{path}: invalid dimension {d!r}")
    raw = data["hamiltonians"]
    if not isinstance(raw, list) or not raw:
        raise SetFileError(f"{path}: 'hamiltonians' must be a non-empty list")

    members = []
    for idx, entry in enumerate(raw, start=1):
        if not isinstance(entry, dict) or "re" not in entry or "im" not in entry:
            raise SetFileError(f"{path}: hamiltonians[{idx}] needs 're' and 'im'")
        re = np.asarray(entry["re"], dtype=np.float64)
        im = np.asarray(entry["im"], dtype=np.float64)
        if re.shape != (d, d) or im.shape != (d, d):
            raise SetFileError(
                f"{path}: hamiltonians[{idx}] must be {d}x{d}, got re {re.shape}, im {im.shape}"
            )
        mat = re + 1j * im
        dev = np.abs(mat - mat.conj().T)
        if dev.max() > hermiticity_tol:
            j, k = np.unravel_index(int(np.argmax(dev)), dev.shape)
            raise SetFileError(
                f"{path}: hamiltonians[{idx}] is not Hermitian at entry "
                f"({j + 1}, {k + 1}): residual {dev.max():.3e}"
            )
        members.append(HermitianMatrix(mat, tol=hermiticity_tol))

    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict):
        raise SetFileError(f"{path}: metadata must be an object")
    return HamiltonianSet(d=d, hamiltonians=members, metadata=metadata)


def file_digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()
