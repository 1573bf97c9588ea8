import argparse
import importlib
import sys

from .extract import ExtractError, extract


def main(argv=None):
    parser = argparse.ArgumentParser(prog="extract")
    parser.add_argument("--model", required=True)
    parser.add_argument("--images", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--limit", type=int, required=True)
    parser.add_argument(
        "--backend",
        required=True,
        help="module:function implementing embed(spec, paths) -> (n, d) array",
    )
    args = parser.parse_args(argv)
    module, _, func = args.backend.partition(":")
    embed = getattr(importlib.import_module(module), func)
    try:
        n, d = extract(args.model, args.images, args.out, args.limit, embed)
    except (ExtractError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"wrote {n} rows of dimension {d} to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
