"""JSON interchange format for state vectors.

A state document is a UTF-8 JSON object::

    {"dims": [d1, ..., dp], "amps": [[re, im], ...]}

with amplitudes in row-major party order.  Parsers reject NaN/Inf
components and any schema deviation with :class:`ParseError`; the state
itself is validated (length, normalization) on load.
"""

from __future__ import annotations

import json
import math
import os

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ParseError
from .statespace import StateVector, validate_state

__all__ = ["state_to_dict", "state_from_dict", "loads_state", "dumps_state", "load_state", "dump_state"]


def state_to_dict(s: StateVector) -> dict:
    return {
        "dims": list(s.dims),
        "amps": [[float(a.real), float(a.imag)] for a in s.amps],
    }


def state_from_dict(doc: object, tolerances: Tolerances = DEFAULT_TOLERANCES) -> StateVector:
    if not isinstance(doc, dict) or set(doc) != {"dims", "amps"}:
        raise ParseError("state document must be an object with exactly 'dims' and 'amps'")
    dims = doc["dims"]
    amps = doc["amps"]
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and d > 0 for d in dims):
        raise ParseError("'dims' must be a non-empty list of positive integers")
    if not isinstance(amps, list):
        raise ParseError("'amps' must be a list of [re, im] pairs")
    values = []
    for k, pair in enumerate(amps):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ParseError(f"amplitude {k} is not a [re, im] pair of numbers")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ParseError(f"amplitude {k} has a NaN/Inf component")
        values.append(complex(re, im))
    return validate_state(StateVector(dims=tuple(dims), amps=values), tolerances)


def loads_state(text: str, tolerances: Tolerances = DEFAULT_TOLERANCES) -> StateVector:
    try:
        # json accepts NaN/Infinity literals by default; reject them here.
        doc = json.loads(text, parse_constant=lambda name: (_ for _ in ()).throw(ValueError(name)))
    except ValueError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return state_from_dict(doc, tolerances)


def dumps_state(s: StateVector) -> str:
    return json.dumps(state_to_dict(s), sort_keys=True)


def load_state(path: str | os.PathLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> StateVector:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_state(fh.read(), tolerances)


def dump_state(s: StateVector, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_state(s))
        fh.write("\n")
