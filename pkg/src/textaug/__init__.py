"""textaug: corpus toolkit for synonym-based augmentation, chunked
translation, sliding-window segmentation and a dense-layer news classifier."""

__version__ = "0.1.0"
