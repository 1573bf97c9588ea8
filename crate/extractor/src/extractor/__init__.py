"""Feature export into the latentprobe binary container.

Only the interface lives here: the model registry, the container writer and
the `extract` entry point. Running pretrained networks needs an embedding
backend supplied by the caller.
"""

from .container import read_container, write_container
from .registry import REGISTRY, ModelSpec, lookup
from .extract import ExtractError, extract, list_images

__all__ = [
    "REGISTRY",
    "ExtractError",
    "ModelSpec",
    "extract",
    "list_images",
    "lookup",
    "read_container",
    "write_container",
]
