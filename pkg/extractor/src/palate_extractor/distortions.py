"""Fixed image distortions with pinned parameters.

Each distortion keeps the input's pixel dimensions: the two center crops
are padded back to the original size (for 32x32 inputs that is the classic
crop-30/pad-1 and crop-28/pad-2 pairing).  The stochastic distortions
(color jitter, elastic warp) accept a seed for reproducible output.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
import torchvision.transforms as transforms
import torchvision.transforms.functional as TF
from PIL import Image

from .errors import DistortionError

# parameter table; crops list the cropped size, padding restores the input size
_PARAMETERS = {
    "posterize": {"bits": 5},
    "light_blur": {"kernel_size": 5, "sigma": 0.5},
    "heavy_blur": {"kernel_size": 5, "sigma": 1.4},
    "center_crop_30": {"output_size": 30},
    "center_crop_28": {"output_size": 28},
    "color_distort": {"brightness": 0.5, "contrast": 0.5,
                      "saturation": 0.5, "hue": 0.5},
    "elastic": {},
}

DISTORTION_NAMES = tuple(_PARAMETERS)

# modes PIL cannot convert to 8-bit RGB without losing meaning
_UNSUPPORTED_MODES = ("F", "I")


@dataclass(frozen=True)
class DistortionSpec:
    """One named distortion; parameters are fixed, not configurable."""

    name: str

    def __post_init__(self):
        if self.name not in _PARAMETERS:
            raise DistortionError(f"unknown distortion {self.name!r}, expected "
                                  f"one of {DISTORTION_NAMES}")

    @property
    def parameters(self) -> dict:
        return dict(_PARAMETERS[self.name])

    def to_dict(self) -> dict:
        return {"name": self.name, "parameters": self.parameters}


def _crop_and_pad_back(image: Image.Image, output_size: int) -> Image.Image:
    width, height = image.size
    if min(width, height) < output_size:
        raise DistortionError(f"image {width}x{height} is smaller than the "
                              f"{output_size}-pixel center crop")
    cropped = TF.center_crop(image, output_size)
    pad_left = (width - output_size) // 2
    pad_top = (height - output_size) // 2
    pad_right = width - output_size - pad_left
    pad_bottom = height - output_size - pad_top
    return TF.pad(cropped, [pad_left, pad_top, pad_right, pad_bottom])


def apply_distortion(image: Image.Image, spec: DistortionSpec,
                     seed: int | None = None) -> Image.Image:
    """Apply one distortion, preserving the image's pixel dimensions."""
    if image.mode in _UNSUPPORTED_MODES or image.mode.startswith("I;"):
        raise DistortionError(f"unsupported image mode {image.mode!r}")
    image = image.convert("RGB")
    params = spec.parameters
    if seed is not None:
        torch.manual_seed(seed)
    if spec.name == "posterize":
        return TF.posterize(image, bits=params["bits"])
    if spec.name in ("light_blur", "heavy_blur"):
        blur = transforms.GaussianBlur(kernel_size=params["kernel_size"],
                                       sigma=params["sigma"])
        return blur(image)
    if spec.name in ("center_crop_30", "center_crop_28"):
        return _crop_and_pad_back(image, params["output_size"])
    if spec.name == "color_distort":
        jitter = transforms.ColorJitter(brightness=params["brightness"],
                                        contrast=params["contrast"],
                                        saturation=params["saturation"],
                                        hue=params["hue"])
        return jitter(image)
    if spec.name == "elastic":
        return transforms.ElasticTransform()(image)
    raise DistortionError(f"unhandled distortion {spec.name!r}")
