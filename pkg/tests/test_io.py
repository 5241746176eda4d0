import struct

import numpy as np
import pytest

from reachest.geometry import PointCloud
from reachest.io import RKPC_MAGIC, load_cloud, save_cloud


@pytest.fixture
def cloud():
    return PointCloud(np.random.default_rng(0).normal(size=(17, 3)))


def test_csv_roundtrip_is_exact(cloud, tmp_path):
    path = tmp_path / "cloud.csv"
    save_cloud(cloud, path)
    again = load_cloud(path)
    assert np.array_equal(again.points, cloud.points)  # %.17g preserves doubles
    assert path.read_text().splitlines()[0] == "x0,x1,x2"


def test_csv_without_header(tmp_path):
    path = tmp_path / "raw.csv"
    path.write_text("0.5,1.5\n2.5,3.5\n")
    cloud = load_cloud(path)
    assert cloud.points.tolist() == [[0.5, 1.5], [2.5, 3.5]]
    # explicit format override works too
    assert load_cloud(path, fmt="csv").points.tolist() == cloud.points.tolist()


def test_csv_single_row(tmp_path):
    path = tmp_path / "one.csv"
    path.write_text("x0,x1\n1.0,2.0\n")
    assert load_cloud(path).points.shape == (1, 2)


def test_rkpc_roundtrip_bit_exact(cloud, tmp_path):
    path = tmp_path / "cloud.rkpc"
    save_cloud(cloud, path)
    again = load_cloud(path)
    assert again.points.tobytes() == cloud.points.tobytes()
    assert path.read_bytes()[:4] == RKPC_MAGIC


def test_format_selected_by_suffix_and_sniffed(cloud, tmp_path):
    rkpc = tmp_path / "a.RKPC"
    csv = tmp_path / "a.dat"
    save_cloud(cloud, rkpc)
    save_cloud(cloud, csv)
    assert rkpc.read_bytes()[:4] == RKPC_MAGIC
    assert csv.read_text().startswith("x0")
    # sniffing ignores the extension
    assert np.array_equal(load_cloud(rkpc).points, cloud.points)
    assert np.array_equal(load_cloud(csv).points, cloud.points)


def test_rkpc_error_cases(cloud, tmp_path):
    path = tmp_path / "bad.rkpc"
    path.write_bytes(b"RK")
    with pytest.raises(ValueError, match="truncated"):
        load_cloud(path, fmt="rkpc")
    path.write_bytes(struct.pack("<4sIQ", b"NOPE", 2, 1) + b"\0" * 16)
    with pytest.raises(ValueError, match="magic"):
        load_cloud(path, fmt="rkpc")
    path.write_bytes(struct.pack("<4sIQ", b"RKPC", 2, 3) + b"\0" * 16)
    with pytest.raises(ValueError, match="size mismatch"):
        load_cloud(path, fmt="rkpc")


def test_unknown_format_rejected(cloud, tmp_path):
    with pytest.raises(ValueError):
        save_cloud(cloud, tmp_path / "x.bin", fmt="parquet")
    p = tmp_path / "x.csv"
    save_cloud(cloud, p)
    with pytest.raises(ValueError):
        load_cloud(p, fmt="parquet")
