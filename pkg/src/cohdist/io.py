"""JSON formats for distributions, states, channels and reports.

Complex numbers are ``[re, im]`` pairs; matrices are row-major nested lists.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import SIOChannel
from .exceptions import CohDistError, DimensionMismatch
from .majorization import as_prob_vector
from .matrixcore import DEFAULT_TOL, density, pure_state, validate


class FormatError(CohDistError):
    pass


def encode_vector(v) -> list:
    return [[float(c.real), float(c.imag)] for c in np.asarray(v, dtype=complex)]


def decode_vector(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FormatError("complex vector must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def encode_matrix(M) -> list:
    return [encode_vector(row) for row in np.asarray(M, dtype=complex)]


def decode_matrix(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise FormatError("complex matrix must be rows of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _read(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top-level JSON value must be an object")
    return data


def distribution_to_json(p) -> dict:
    return {"probs": [float(x) for x in p]}


def distribution_from_json(data: dict, tol: float = DEFAULT_TOL) -> np.ndarray:
    if "probs" not in data:
        raise FormatError("distribution object needs a 'probs' field")
    return as_prob_vector(data["probs"], tol)


def load_distribution(path, tol: float = DEFAULT_TOL) -> np.ndarray:
    return distribution_from_json(_read(path), tol)


def state_to_json(rho) -> dict:
    rho = np.asarray(rho)
    return {"dim": int(rho.shape[0]), "matrix": encode_matrix(rho)}


def pure_to_json(psi) -> dict:
    psi = np.asarray(psi)
    return {"dim": int(psi.size), "amplitudes": encode_vector(psi)}


def _check_dim(data: dict, n: int) -> None:
    if "dim" in data and int(data["dim"]) != n:
        raise DimensionMismatch(f"declared dim {data['dim']} does not match {n} entries")


def pure_from_json(data: dict, tol: float = DEFAULT_TOL) -> np.ndarray:
    if "amplitudes" not in data:
        raise FormatError("pure state object needs an 'amplitudes' field")
    psi = decode_vector(data["amplitudes"])
    _check_dim(data, psi.size)
    return pure_state(psi, tol)


def state_from_json(data: dict, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Density matrix from either the matrix or the pure-state format."""
    if "matrix" in data:
        rho = decode_matrix(data["matrix"])
        _check_dim(data, rho.shape[0])
        return validate(rho, tol)
    if "amplitudes" in data:
        return density(pure_from_json(data, tol))
    raise FormatError("state object needs a 'matrix' or 'amplitudes' field")


def load_state(path, tol: float = DEFAULT_TOL) -> np.ndarray:
    return state_from_json(_read(path), tol)


def load_pure(path, tol: float = DEFAULT_TOL) -> np.ndarray:
    return pure_from_json(_read(path), tol)


def channel_to_json(channel: SIOChannel) -> dict:
    return {
        "d_in": channel.d_in,
        "d_out": channel.d_out,
        "kraus": [encode_matrix(K) for K in channel.kraus],
    }


def channel_from_json(data: dict) -> SIOChannel:
    if "kraus" not in data:
        raise FormatError("channel object needs a 'kraus' field")
    return SIOChannel(tuple(decode_matrix(K) for K in data["kraus"]))


def dumps(obj) -> str:
    """Canonical JSON text; parsing and re-dumping reproduces it byte for byte."""
    return json.dumps(obj, indent=2, sort_keys=True)


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n")
