"""JSON encodings of words, kernels, parameter tables and moment sequences.

Kernel::

    {"N": int | null, "labels": [...], "re": [[...]], "im": [[...]]}

Parameter table::

    {"n": int, "gamma": [{"k": 0, "j": 1, "re": ..., "im": ...}, ...],
     "degenerate": [[k, j], ...]}

Moments::

    {"c": [[re, im], ...]}

Floats are written with ``repr`` precision so files round-trip exactly.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .exceptions import ValidationError
from .invariant import ToeplitzMoments
from .kmatrix import KernelMatrix, build_kernel
from .schur import SchurParameterTable


def kernel_to_dict(K: KernelMatrix, N: int | None = None) -> dict:
    labels = [list(x) if isinstance(x, tuple) else x for x in K.labels]
    return {
        "N": N,
        "labels": labels,
        "re": K.entries.real.tolist(),
        "im": K.entries.imag.tolist(),
    }


def kernel_from_dict(d: dict) -> tuple[KernelMatrix, int | None]:
    try:
        re_, im_ = np.array(d["re"], dtype=float), np.array(d.get("im", np.zeros_like(d["re"])), dtype=float)
        labels = d.get("labels", list(range(len(re_))))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed kernel JSON: {exc}") from None
    if re_.shape != im_.shape:
        raise ValidationError("re and im parts have different shapes")
    return build_kernel(labels, re_ + 1j * im_), d.get("N")


def params_to_dict(p: SchurParameterTable) -> dict:
    return {
        "n": p.n,
        "gamma": [
            {"k": k, "j": j, "re": g.real, "im": g.imag} for (k, j), g in sorted(p.gamma.items())
        ],
        "degenerate": [list(kj) for kj in sorted(p.degenerate)],
    }


def params_from_dict(d: dict) -> SchurParameterTable:
    try:
        gamma = {
            (int(e["k"]), int(e["j"])): complex(e["re"], e.get("im", 0.0)) for e in d["gamma"]
        }
        return SchurParameterTable(
            int(d["n"]), gamma, frozenset(tuple(x) for x in d.get("degenerate", []))
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed parameter JSON: {exc}") from None


def moments_to_dict(m: ToeplitzMoments) -> dict:
    return {"c": [[z.real, z.imag] for z in m.c]}


def moments_from_dict(d: dict) -> ToeplitzMoments:
    try:
        return ToeplitzMoments.of(complex(a, b) for a, b in d["c"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed moments JSON: {exc}") from None


def complex_pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None


def dump(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj) + "\n")


_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"^[+-]?{_NUM}$")
_IMAG = re.compile(rf"^(?P<sign>[+-]?)(?P<mag>{_NUM})?i$")
_BOTH = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<sign>[+-])(?P<mag>{_NUM})?i$")


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (a bare ``i`` means ``1i``)."""
    s = text.strip().replace(" ", "")
    if _REAL.match(s):
        return complex(float(s), 0.0)
    m = _IMAG.match(s) or _BOTH.match(s)
    if m is None:
        raise ValidationError(f"not a complex literal: {text!r}")
    mag = float(m.group("mag")) if m.group("mag") else 1.0
    imag = -mag if m.group("sign") == "-" else mag
    real = float(m.group("re")) if "re" in m.groupdict() else 0.0
    return complex(real, imag)


def parse_complex_list(text: str) -> list[complex]:
    return [parse_complex(x) for x in text.split(",") if x.strip()]
