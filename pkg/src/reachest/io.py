"""Point-cloud file formats: CSV (one point per row, optional header) and
the compact RKPC binary (magic "RKPC", u32 D, u64 n, little-endian f64,
row-major)."""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .geometry import PointCloud

RKPC_MAGIC = b"RKPC"
_HEADER = struct.Struct("<4sIQ")


def load_cloud(path, fmt: str | None = None) -> PointCloud:
    path = Path(path)
    if fmt is None:
        with open(path, "rb") as fh:
            fmt = "rkpc" if fh.read(4) == RKPC_MAGIC else "csv"
    if fmt == "rkpc":
        return _load_rkpc(path)
    if fmt == "csv":
        return _load_csv(path)
    raise ValueError(f"unknown format {fmt!r}")


def save_cloud(cloud: PointCloud, path, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "rkpc" if path.suffix.lower() == ".rkpc" else "csv"
    if fmt == "rkpc":
        _save_rkpc(cloud, path)
    elif fmt == "csv":
        _save_csv(cloud, path)
    else:
        raise ValueError(f"unknown format {fmt!r}")


def _load_csv(path: Path) -> PointCloud:
    with open(path) as fh:
        first = fh.readline()
        skip = 0
        try:
            [float(tok) for tok in first.replace(",", " ").split()]
        except ValueError:
            skip = 1
    data = np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2)
    return PointCloud(data)


def _save_csv(cloud: PointCloud, path: Path) -> None:
    header = ",".join(f"x{i}" for i in range(cloud.ambient_dim))
    np.savetxt(path, cloud.points, delimiter=",", header=header, comments="", fmt="%.17g")


def _load_rkpc(path: Path) -> PointCloud:
    raw = path.read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError("truncated RKPC file")
    magic, dim, count = _HEADER.unpack_from(raw)
    if magic != RKPC_MAGIC:
        raise ValueError("bad RKPC magic")
    expected = _HEADER.size + 8 * dim * count
    if len(raw) != expected:
        raise ValueError(f"RKPC payload size mismatch: {len(raw)} != {expected}")
    data = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size).reshape(count, dim)
    return PointCloud(np.ascontiguousarray(data))


def _save_rkpc(cloud: PointCloud, path: Path) -> None:
    n, dim = cloud.points.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(RKPC_MAGIC, dim, n))
        fh.write(np.ascontiguousarray(cloud.points, dtype="<f8").tobytes())
