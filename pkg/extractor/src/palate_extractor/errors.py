"""Exception types for the extractor."""


class ExtractorError(Exception):
    """Base class for extractor failures."""


class DistortionError(ExtractorError):
    """A distortion cannot be applied to the given image."""


class BackboneUnavailable(ExtractorError):
    """The requested backbone or its weights cannot be resolved."""
