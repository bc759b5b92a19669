"""The `extract` command line tool.

Exit codes: 0 success, 1 usage error, 2 extraction failure (unreadable
directory, no decodable images, unavailable backbone weights).
"""

from __future__ import annotations

import argparse
import sys

from .backbones import available_backbones
from .distortions import DISTORTION_NAMES
from .errors import ExtractorError
from .extract import extract


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extract",
                     description="Embed an image folder into an NPY matrix "
                                 "with a sidecar manifest.")
    parser.add_argument("--images", required=True, help="directory of images")
    parser.add_argument("--backbone", default="dinov2",
                        help=f"one of {', '.join(available_backbones())} "
                             "(default dinov2)")
    parser.add_argument("--distortion", default=None, choices=DISTORTION_NAMES,
                        help="optional fixed distortion applied before embedding")
    parser.add_argument("--out", required=True, help="output NPY path")
    parser.add_argument("--seed", type=int, default=0,
                        help="base seed for stochastic distortions")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        extract(args.images, backbone=args.backbone,
                distortion=args.distortion, out=args.out, seed=args.seed)
    except ExtractorError as exc:
        print(f"extract: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
