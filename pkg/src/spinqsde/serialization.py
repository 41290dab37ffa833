"""JSON system files and CSV trajectories.

A system file holds exactly one of::

    {"params": {"alpha": [a1, a2, a3], "lambda": [[re, im], [re, im], [re, im]]}}
    {"qsde": {"F0": [...], "F": [[...]], "G1": [[...]], "G2": [[...]],
              "H1": [...], "H2": [...]}}

Other top-level keys are ignored.
"""

import hashlib
import json
import math
import numbers

import numpy as np

from .errors import DomainError
from .model import BilinearQSDE, PhysicalParams

__all__ = [
    "SystemFileError", "load_system", "parse_system", "params_to_dict",
    "qsde_to_dict", "dumps", "digest", "write_trajectory_csv",
]


class SystemFileError(ValueError):
    """Malformed system file."""


def _number(field, v):
    if isinstance(v, bool) or not isinstance(v, numbers.Real):
        raise SystemFileError(f"{field}: expected a number, got {v!r}")
    if not math.isfinite(v):
        raise SystemFileError(f"{field}: non-finite value {v!r}")
    return float(v)


def _vector(field, v):
    if not isinstance(v, list) or len(v) != 3:
        n = len(v) if isinstance(v, list) else type(v).__name__
        raise SystemFileError(f"{field}: expected a list of 3 numbers, got {n}")
    return [_number(f"{field}[{i}]", x) for i, x in enumerate(v)]


def _matrix(field, v):
    if not (isinstance(v, list) and len(v) == 3
            and all(isinstance(r, list) and len(r) == 3 for r in v)):
        shape = (f"{len(v)}x{len(v[0])}" if isinstance(v, list) and v
                 and isinstance(v[0], list) else repr(v)[:40])
        raise SystemFileError(f"{field}: expected a 3x3 matrix, got {shape}")
    return [[_number(f"{field}[{i}][{j}]", x) for j, x in enumerate(r)]
            for i, r in enumerate(v)]


def _complex(field, v):
    if not (isinstance(v, list) and len(v) == 2):
        raise SystemFileError(f"{field}: expected a [re, im] pair, got {v!r}")
    return complex(_number(f"{field}[0]", v[0]), _number(f"{field}[1]", v[1]))


def _require_object(field, obj, keys):
    if not isinstance(obj, dict):
        raise SystemFileError(f"{field}: expected an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise SystemFileError(f"{field}: missing field(s) {', '.join(missing)}")


def parse_system(doc):
    """Build :class:`PhysicalParams` or :class:`BilinearQSDE` from a parsed document."""
    if not isinstance(doc, dict):
        raise SystemFileError("top level must be a JSON object")
    present = [k for k in ("params", "qsde") if k in doc]
    if len(present) != 1:
        raise SystemFileError(
            "exactly one of 'params' or 'qsde' must be present, found "
            + (", ".join(present) or "neither"))
    if present[0] == "params":
        p = doc["params"]
        _require_object("params", p, ("alpha", "lambda"))
        alpha = _vector("params.alpha", p["alpha"])
        lam = p["lambda"]
        if not isinstance(lam, list) or len(lam) != 3:
            raise SystemFileError("params.lambda: expected a list of 3 [re, im] pairs")
        lam = [_complex(f"params.lambda[{i}]", z) for i, z in enumerate(lam)]
        return PhysicalParams(alpha, lam)
    q = doc["qsde"]
    _require_object("qsde", q, BilinearQSDE.FIELDS)
    kw = {}
    for name in BilinearQSDE.FIELDS:
        reader = _vector if name in ("F0", "H1", "H2") else _matrix
        kw[name] = reader(f"qsde.{name}", q[name])
    return BilinearQSDE(**kw)


def load_system(path):
    """Read a system file; returns ``(system, raw_bytes)``."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SystemFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(raw)
    except (ValueError, UnicodeDecodeError) as exc:
        raise SystemFileError(f"{path}: invalid JSON ({exc})") from None
    try:
        return parse_system(doc), raw
    except DomainError as exc:
        raise SystemFileError(str(exc)) from None


def _clean(x, digits):
    x = float(x)
    if digits is not None:
        x = round(x, digits)
    return x + 0.0  # folds -0.0 into 0.0


def params_to_dict(params, digits=None):
    return {"params": {
        "alpha": [_clean(a, digits) for a in params.alpha],
        "lambda": [[_clean(z.real, digits), _clean(z.imag, digits)]
                   for z in params.lam],
    }}


def qsde_to_dict(qsde, digits=None):
    out = {}
    for name in BilinearQSDE.FIELDS:
        arr = np.vectorize(lambda v: _clean(v, digits), otypes=[float])(getattr(qsde, name))
        out[name] = arr.tolist()
    return {"qsde": out}


def dumps(doc):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def digest(raw):
    return hashlib.sha256(raw).hexdigest()


def write_trajectory_csv(fh, states, oracle_states=None):
    """Write ``t,r1,r2,r3`` rows, plus ``m1,m2,m3,maxdev`` when an oracle is given."""
    header = ["t", "r1", "r2", "r3"]
    if oracle_states is not None:
        header += ["m1", "m2", "m3", "maxdev"]
    fh.write(",".join(header) + "\n")
    for n, s in enumerate(states):
        row = [s.t, *s.r]
        if oracle_states is not None:
            m = oracle_states[n].r
            row += [*m, float(np.max(np.abs(s.r - m)))]
        fh.write(",".join(repr(float(v)) for v in row) + "\n")
