"""Image embedding backbones behind a small registry.

A backbone turns a list of PIL images into an (N, D) float32 array.  The
three stock backbones (dinov2, clip, inception) resolve pretrained weights
lazily through transformers / torchvision and raise BackboneUnavailable
when the weights cannot be fetched; ``register_backbone`` is the public
extension point for custom or test backbones.

Embeddings are written out exactly as the backbone produced them, with no
normalization: the metric side owns any normalization policy.
"""

from __future__ import annotations

import hashlib
from typing import Callable, Sequence

import numpy as np
from PIL import Image

from .errors import BackboneUnavailable


class Backbone:
    """Interface: subclasses set name/weights_id and implement embed()."""

    name: str = ""
    weights_id: str = ""

    def embed(self, images: Sequence[Image.Image]) -> np.ndarray:
        raise NotImplementedError

    def weights_hash(self) -> str:
        return "unversioned"


_REGISTRY: dict[str, Callable[[], Backbone]] = {}


def register_backbone(name: str, factory: Callable[[], Backbone]) -> None:
    _REGISTRY[name] = factory


def available_backbones() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def get_backbone(name: str) -> Backbone:
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise BackboneUnavailable(f"unknown backbone {name!r}, expected one "
                                  f"of {available_backbones()}") from None
    return factory()


def state_dict_sha256(model) -> str:
    """Hash of all parameter/buffer bytes, key-sorted: identifies the weights."""
    digest = hashlib.sha256()
    state = model.state_dict()
    for key in sorted(state):
        digest.update(key.encode())
        digest.update(state[key].cpu().numpy().tobytes())
    return digest.hexdigest()


class _TorchBackbone(Backbone):
    """Shared batching and hashing for torch-module backbones."""

    batch_size = 32

    def __init__(self, model, preprocess, forward):
        import torch

        self._torch = torch
        self._model = model.eval()
        self._preprocess = preprocess    # list[Image] -> tensor batch
        self._forward = forward          # tensor batch -> tensor (N, D)
        self._hash = None

    def weights_hash(self) -> str:
        if self._hash is None:
            self._hash = state_dict_sha256(self._model)
        return self._hash

    def embed(self, images: Sequence[Image.Image]) -> np.ndarray:
        chunks = []
        with self._torch.no_grad():
            for start in range(0, len(images), self.batch_size):
                batch = self._preprocess(images[start:start + self.batch_size])
                chunks.append(self._forward(batch).cpu().numpy())
        return np.concatenate(chunks, axis=0).astype(np.float32)


def _load_dinov2() -> Backbone:
    checkpoint = "facebook/dinov2-base"
    try:
        from transformers import AutoImageProcessor, AutoModel

        processor = AutoImageProcessor.from_pretrained(checkpoint)
        model = AutoModel.from_pretrained(checkpoint)
    except Exception as exc:
        raise BackboneUnavailable(f"cannot load {checkpoint} weights: {exc}") from exc

    def preprocess(images):
        return processor(images=[im.convert("RGB") for im in images],
                         return_tensors="pt")["pixel_values"]

    def forward(batch):
        return model(pixel_values=batch).last_hidden_state[:, 0]

    backbone = _TorchBackbone(model, preprocess, forward)
    backbone.name = "dinov2"
    backbone.weights_id = checkpoint
    return backbone


def _load_clip() -> Backbone:
    checkpoint = "openai/clip-vit-base-patch32"
    try:
        from transformers import CLIPImageProcessor, CLIPVisionModelWithProjection

        processor = CLIPImageProcessor.from_pretrained(checkpoint)
        model = CLIPVisionModelWithProjection.from_pretrained(checkpoint)
    except Exception as exc:
        raise BackboneUnavailable(f"cannot load {checkpoint} weights: {exc}") from exc

    def preprocess(images):
        return processor(images=[im.convert("RGB") for im in images],
                         return_tensors="pt")["pixel_values"]

    def forward(batch):
        return model(pixel_values=batch).image_embeds

    backbone = _TorchBackbone(model, preprocess, forward)
    backbone.name = "clip"
    backbone.weights_id = checkpoint
    return backbone


def _load_inception() -> Backbone:
    try:
        import torch
        from torchvision.models import Inception_V3_Weights, inception_v3
        from torchvision.transforms import functional as TF

        weights = Inception_V3_Weights.IMAGENET1K_V1
        model = inception_v3(weights=weights)
        model.fc = torch.nn.Identity()
    except Exception as exc:
        raise BackboneUnavailable(f"cannot load inception_v3 weights: {exc}") from exc

    mean = [0.485, 0.456, 0.406]
    std = [0.229, 0.224, 0.225]

    def preprocess(images):
        tensors = []
        for im in images:
            t = TF.to_tensor(TF.resize(im.convert("RGB"), [299, 299]))
            tensors.append(TF.normalize(t, mean, std))
        return torch.stack(tensors)

    def forward(batch):
        return model(batch)

    backbone = _TorchBackbone(model, preprocess, forward)
    backbone.name = "inception"
    backbone.weights_id = str(weights)
    return backbone


register_backbone("dinov2", _load_dinov2)
register_backbone("clip", _load_clip)
register_backbone("inception", _load_inception)
