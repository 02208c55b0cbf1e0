"""JSON state files: ``{"n": <int>, "amplitudes": [[re, im], ...]}``.

A real-only shorthand ``"amplitudes": [re, ...]`` is also accepted on input.
"""

from __future__ import annotations

import json
import os
from typing import Any

import numpy as np

from .errors import StateFileError
from .state import StateVector


def state_from_dict(data: Any) -> StateVector:
    if not isinstance(data, dict) or "n" not in data or "amplitudes" not in data:
        raise StateFileError("state file must be an object with 'n' and 'amplitudes' keys")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise StateFileError(f"'n' must be an integer, got {n!r}")
    raw = data["amplitudes"]
    if not isinstance(raw, list):
        raise StateFileError("'amplitudes' must be a list")
    amps = []
    for entry in raw:
        if isinstance(entry, (int, float)) and not isinstance(entry, bool):
            amps.append(complex(entry, 0.0))
        elif (
            isinstance(entry, list)
            and len(entry) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
        ):
            amps.append(complex(entry[0], entry[1]))
        else:
            raise StateFileError(f"bad amplitude entry {entry!r}; expected a number or [re, im]")
    # domain problems (length, norm) keep their own exception type
    return StateVector(n, np.array(amps, dtype=np.complex128))


def state_to_dict(s: StateVector) -> dict:
    return {"n": s.n, "amplitudes": [[float(a.real), float(a.imag)] for a in s.amplitudes]}


def load_state(path: str | os.PathLike) -> StateVector:
    """Read a state file; malformed JSON or layout raises StateFileError."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path} is not valid JSON: {exc}") from exc
    return state_from_dict(data)


def dump_state(s: StateVector, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_dict(s), fh)
        fh.write("\n")

