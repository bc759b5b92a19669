"""Fixtures: tiny deterministic images and a weight-free stub backbone."""

import numpy as np
import pytest
from PIL import Image

from palate_extractor import Backbone, register_backbone


class MeanPixelBackbone(Backbone):
    """Embeds an image as its per-channel mean plus its size: 5-d, no weights."""

    name = "meanpixel"
    weights_id = "builtin-test-stub"

    def weights_hash(self):
        return "meanpixel-0"

    def embed(self, images):
        rows = []
        for image in images:
            pixels = np.asarray(image.convert("RGB"), dtype=np.float32)
            rows.append(np.concatenate([pixels.mean(axis=(0, 1)),
                                        np.float32(image.size)]))
        return np.stack(rows)


register_backbone("meanpixel", MeanPixelBackbone)


def write_image(path, color, size=(32, 32)):
    array = np.zeros((size[1], size[0], 3), dtype=np.uint8)
    array[:] = color
    Image.fromarray(array).save(path)


@pytest.fixture
def image_dir(tmp_path):
    directory = tmp_path / "images"
    directory.mkdir()
    rng = np.random.default_rng(0)
    for index in range(10):
        write_image(directory / f"img_{index:02d}.png",
                    tuple(int(v) for v in rng.integers(0, 256, 3)))
    return directory
