import numpy as np
import pytest

from extractor import REGISTRY, ExtractError, extract, lookup, read_container, write_container


def test_registry_dims():
    assert lookup("resnet50").expected_dim == 2048
    assert lookup("deit-small").expected_dim == 384
    assert lookup("inceptionresnetv2").expected_dim == 1536
    assert len(REGISTRY) == 12
    with pytest.raises(KeyError):
        lookup("lenet")


def test_container_round_trip(tmp_path):
    x = np.arange(12, dtype=np.float32).reshape(4, 3)
    path = tmp_path / "f.lpfs"
    write_container(path, x, [0, 1, 1, 0])
    raw = path.read_bytes()
    assert raw[:4] == b"LPFS" and len(raw) == 24 + 4 * 4 * 4
    y, labels, classes = read_container(path)
    assert (y == x).all() and list(labels) == [0, 1, 1, 0] and classes == 2


def _images(root, per_class=3):
    for cls in ["cat", "dog"]:
        (root / cls).mkdir(parents=True)
        for i in range(per_class):
            (root / cls / f"{i}.png").write_bytes(b"")


def test_extract_with_stub_backend(tmp_path):
    _images(tmp_path / "imgs")
    spec_dim = lookup("deit-tiny").expected_dim

    def embed(spec, paths):
        return np.ones((len(paths), spec.expected_dim))

    out = tmp_path / "f.lpfs"
    assert extract("deit-tiny", tmp_path / "imgs", out, 4, embed) == (4, spec_dim)
    _, labels, classes = read_container(out)
    assert list(labels) == [0, 0, 0, 1] and classes == 2


def test_extract_errors(tmp_path):
    _images(tmp_path / "imgs")
    with pytest.raises(ExtractError):
        extract("resnet50", tmp_path / "imgs", tmp_path / "f", 0, None)
    with pytest.raises(ExtractError):
        extract("resnet50", tmp_path / "imgs", tmp_path / "f", 5, lambda s, p: np.ones((len(p), 10)))
