"""Little-endian container: magic, version, n (u64), d, L, f32 rows, u32 labels."""

import os
import struct
import tempfile

import numpy as np

MAGIC = b"LPFS"
VERSION = 1
_HEADER = struct.Struct("<4sIQII")


def write_container(path, features, labels, class_count=None):
    """Writes atomically through a temporary file in the target directory."""
    features = np.ascontiguousarray(features, dtype="<f4")
    labels = np.ascontiguousarray(labels, dtype="<u4")
    if features.ndim != 2 or features.shape[0] == 0 or features.shape[1] == 0:
        raise ValueError(f"features must be a non-empty 2-D array, got shape {features.shape}")
    if labels.shape != (features.shape[0],):
        raise ValueError("one label per row is required")
    if not np.isfinite(features).all():
        raise ValueError("features must be finite")
    if class_count is None:
        class_count = int(labels.max()) + 1
    if labels.max() >= class_count:
        raise ValueError("label out of range for class_count")
    n, d = features.shape
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(_HEADER.pack(MAGIC, VERSION, n, d, class_count))
            f.write(features.tobytes())
            f.write(labels.tobytes())
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def read_container(path):
    with open(path, "rb") as f:
        data = f.read()
    magic, version, n, d, class_count = _HEADER.unpack_from(data)
    if magic != MAGIC or version != VERSION:
        raise ValueError("not a version-1 feature container")
    body = _HEADER.size
    features = np.frombuffer(data, dtype="<f4", count=n * d, offset=body).reshape(n, d)
    labels = np.frombuffer(data, dtype="<u4", count=n, offset=body + 4 * n * d)
    if len(data) != body + 4 * n * (d + 1):
        raise ValueError("payload size does not match the header")
    return features, labels, class_count
