from pathlib import Path

import numpy as np

from .container import write_container
from .registry import lookup

IMAGE_SUFFIXES = {".jpg", ".jpeg", ".png", ".bmp", ".webp", ".JPEG"}


class ExtractError(Exception):
    pass


def list_images(image_dir, limit):
    """Sorted image paths with labels from their class subdirectory."""
    root = Path(image_dir)
    paths = sorted(p for p in root.rglob("*") if p.is_file() and p.suffix in IMAGE_SUFFIXES)
    classes = sorted({p.parent.relative_to(root).as_posix() for p in paths})
    index = {c: i for i, c in enumerate(classes)}
    paths = paths[:limit]
    return paths, [index[p.parent.relative_to(root).as_posix()] for p in paths], len(classes)


def extract(model, image_dir, out, limit, embed):
    """Embeds up to `limit` images with `embed(spec, paths) -> (n, d) array`.

    `embed` wraps a pretrained network with its classifier head removed; no
    backend ships with this package.
    """
    spec = lookup(model)
    if limit < 1:
        raise ExtractError("limit must be at least 1")
    paths, labels, class_count = list_images(image_dir, limit)
    if not paths:
        raise ExtractError(f"no images under {image_dir}")
    features = np.asarray(embed(spec, paths), dtype=np.float32)
    if features.shape != (len(paths), spec.expected_dim):
        raise ExtractError(
            f"{spec.name}: expected {len(paths)}x{spec.expected_dim} features, got {features.shape}"
        )
    write_container(out, features, labels, class_count)
    return features.shape
