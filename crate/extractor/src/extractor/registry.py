from dataclasses import dataclass


@dataclass(frozen=True)
class ModelSpec:
    name: str
    expected_dim: int
    # Input side length and normalization of the model's evaluation transform.
    input_size: int = 224
    mean: tuple = (0.485, 0.456, 0.406)
    std: tuple = (0.229, 0.224, 0.225)


_INCEPTION = dict(input_size=299, mean=(0.5, 0.5, 0.5), std=(0.5, 0.5, 0.5))

# Penultimate-layer widths after global pooling.
REGISTRY = {
    spec.name: spec
    for spec in [
        ModelSpec("alexnet", 4096),
        ModelSpec("vgg11", 4096),
        ModelSpec("vgg16", 4096),
        ModelSpec("bninception", 1024),
        ModelSpec("nasnetamobile", 1056),
        ModelSpec("densenet121", 1024),
        ModelSpec("resnet50", 2048),
        ModelSpec("resnet101", 2048),
        ModelSpec("inceptionresnetv2", 1536, **_INCEPTION),
        ModelSpec("polynet", 2048, input_size=331),
        ModelSpec("deit-tiny", 192),
        ModelSpec("deit-small", 384),
    ]
}


def lookup(name):
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(sorted(REGISTRY))}") from None
