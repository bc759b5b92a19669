"""Image folder -> NPY embedding file plus a sidecar manifest.

Rows follow lexicographic filename order, so the same directory contents
always produce the same row order.  Images that cannot be decoded are
skipped with a warning and recorded in the manifest.  The NPY payload is
2-D little-endian float32 (version 1.0 format).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .backbones import get_backbone
from .distortions import DistortionSpec, apply_distortion
from .errors import ExtractorError


def _decode_images(image_dir: Path):
    names = sorted(p.name for p in image_dir.iterdir() if p.is_file())
    images, kept, skipped = [], [], []
    for name in names:
        try:
            with Image.open(image_dir / name) as handle:
                images.append(handle.convert("RGB"))
            kept.append(name)
        except (UnidentifiedImageError, OSError) as exc:
            reason = str(exc) or exc.__class__.__name__
            print(f"warning: skipping {name}: {reason}", file=sys.stderr)
            skipped.append({"file": name, "reason": reason})
    return images, kept, skipped


def extract(image_dir, backbone: str = "dinov2",
            distortion: DistortionSpec | str | None = None,
            out="embeddings.npy", seed: int = 0) -> dict:
    """Embed every decodable image in a directory; returns the manifest."""
    image_dir = Path(image_dir)
    if not image_dir.is_dir():
        raise ExtractorError(f"{image_dir} is not a directory")
    if isinstance(distortion, str):
        distortion = DistortionSpec(distortion)
    out = Path(out)

    images, kept, skipped = _decode_images(image_dir)
    if not images:
        raise ExtractorError(f"no decodable images in {image_dir}")
    if distortion is not None:
        images = [apply_distortion(img, distortion, seed=seed + index)
                  for index, img in enumerate(images)]

    model = get_backbone(backbone)
    embeddings = np.ascontiguousarray(model.embed(images), dtype="<f4")
    if embeddings.ndim != 2 or embeddings.shape[0] != len(images):
        raise ExtractorError(f"backbone {backbone!r} returned shape "
                             f"{embeddings.shape} for {len(images)} images")

    with open(out, "wb") as fh:
        np.save(fh, embeddings)

    manifest = {
        "output": str(out),
        "rows": int(embeddings.shape[0]),
        "cols": int(embeddings.shape[1]),
        "backbone": model.name or backbone,
        "weights": model.weights_id,
        "weights_sha256": model.weights_hash(),
        "distortion": distortion.to_dict() if distortion else None,
        "seed": seed,
        "files": kept,
        "skipped": skipped,
    }
    manifest_path = out.with_suffix(".manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n",
                             encoding="utf-8")
    print(f"{manifest['rows']} images -> {manifest['cols']}-d embeddings "
          f"({manifest['backbone']}, weights {manifest['weights']} "
          f"sha256 {manifest['weights_sha256'][:12]}) -> {out}")
    return manifest
