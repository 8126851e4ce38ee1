"""Canonical JSON encoding shared by every report."""

import json

from .errors import ValidationError

FORMAT = 1
_SAFE = 2**53 - 1


def encode_int(x: int):
    """Integers beyond the IEEE-double safe range travel as decimal strings."""
    return str(x) if abs(x) > _SAFE else x


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise ValidationError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise ValidationError(f"expected an integer, got {x!r}")


def encode_vector(v):
    return [encode_int(x) for x in v]


def encode_matrix(m):
    return [encode_vector(row) for row in m]


def decode_vector(v):
    if not isinstance(v, list):
        raise ValidationError(f"expected an integer array, got {v!r}")
    return tuple(decode_int(x) for x in v)


def decode_matrix(m):
    if not isinstance(m, list):
        raise ValidationError(f"expected a matrix, got {m!r}")
    return [list(decode_vector(row)) for row in m]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
