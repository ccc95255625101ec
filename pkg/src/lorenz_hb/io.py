"""Plain-text coefficient and trajectory files.

Coefficient file::

    format_version = 1
    sigma = <value>
    r = <value>
    b = <value>
    omega = <value>
    means = <x10> <x20> <x30>
    1 <c1> <s1> <c2> <s2> <c3> <s3>
    ...
    h <c1> <s1> <c2> <s2> <c3> <s3>

All numbers are written with 17 significant digits, which round-trips binary64
exactly. Lines starting with ``#`` are ignored by the reader.

Trajectory file: one ``t,x1,x2,x3`` row per sample on a uniform grid over one
period, first row at ``t = 0``.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .lorenz import LorenzParams
from .system import HBState
from .trigpoly import TrigPoly

FORMAT_VERSION = 1
_HEADER_KEYS = ("format_version", "sigma", "r", "b", "omega")


class FormatError(ValueError):
    pass


def _fmt(v) -> str:
    return f"{float(v):.16e}"


def format_coefficients(z: HBState, p: LorenzParams) -> str:
    lines = [
        f"format_version = {FORMAT_VERSION}",
        f"sigma = {_fmt(p.sigma)}",
        f"r = {_fmt(p.r)}",
        f"b = {_fmt(p.b)}",
        f"omega = {_fmt(z.omega)}",
        "means = " + " ".join(_fmt(x.mean) for x in z.coords),
    ]
    for i in range(z.h):
        row = []
        for x in z.coords:
            row += [_fmt(x.cos_amp[i]), _fmt(x.sin_amp[i])]
        lines.append(f"{i + 1} " + " ".join(row))
    return "\n".join(lines) + "\n"


def write_coefficients(path, z: HBState, p: LorenzParams) -> None:
    Path(path).write_text(format_coefficients(z, p), encoding="ascii")


def parse_coefficients(text: str) -> tuple[HBState, LorenzParams]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 7:
        raise FormatError("coefficient file is truncated")

    header = {}
    for key, line in zip(_HEADER_KEYS + ("means",), lines[:6]):
        name, sep, value = line.partition("=")
        if not sep or name.strip() != key:
            raise FormatError(f"expected '{key} = ...', got {line!r}")
        header[key] = value.split()
    try:
        version = int(header["format_version"][0])
        sigma, r, b, omega = (float(header[k][0]) for k in ("sigma", "r", "b", "omega"))
        means = [float(v) for v in header["means"]]
    except (ValueError, IndexError) as exc:
        raise FormatError(f"bad header value: {exc}") from None
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version}")
    if len(means) != 3:
        raise FormatError("means line needs exactly three values")

    rows = []
    for expected, line in enumerate(lines[6:], start=1):
        fields = line.split()
        if len(fields) != 7:
            raise FormatError(f"row {expected}: expected 7 fields, got {len(fields)}")
        try:
            idx = int(fields[0])
            vals = [float(v) for v in fields[1:]]
        except ValueError as exc:
            raise FormatError(f"row {expected}: {exc}") from None
        if idx != expected:
            raise FormatError(f"harmonic indices must run 1..h in order; got {idx} at row {expected}")
        rows.append(vals)
    data = np.array(rows)
    if not np.all(np.isfinite(data)) or not np.all(np.isfinite(means + [omega])):
        raise FormatError("non-finite value in coefficient file")
    try:
        params = LorenzParams(sigma, r, b)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    z = HBState(omega, *(TrigPoly(means[k], data[:, 2 * k], data[:, 2 * k + 1])
                         for k in range(3)))
    return z, params


def read_coefficients(path) -> tuple[HBState, LorenzParams]:
    return parse_coefficients(Path(path).read_text(encoding="ascii"))


def sample(z: HBState, n: int) -> np.ndarray:
    """Rows ``(t, x1, x2, x3)`` at ``t_j = j T / (n - 1)``, ``j = 0..n-1``."""
    if n < 2:
        raise ValueError("need at least two samples")
    t = np.arange(n) * (z.period / (n - 1))
    return np.column_stack([t, z.at(t).T])


def write_trajectory(path, rows: np.ndarray) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_trajectory(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)
