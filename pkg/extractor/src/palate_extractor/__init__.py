"""Image folders -> NPY embedding files, with optional fixed distortions."""

__version__ = "0.1.0"

from .backbones import (Backbone, available_backbones, get_backbone,
                        register_backbone, state_dict_sha256)
from .distortions import DISTORTION_NAMES, DistortionSpec, apply_distortion
from .errors import BackboneUnavailable, DistortionError, ExtractorError
from .extract import extract

__all__ = [
    "Backbone",
    "BackboneUnavailable",
    "DISTORTION_NAMES",
    "DistortionError",
    "DistortionSpec",
    "ExtractorError",
    "__version__",
    "apply_distortion",
    "available_backbones",
    "extract",
    "get_backbone",
    "register_backbone",
    "state_dict_sha256",
]
