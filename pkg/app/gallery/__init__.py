"""Gallery test tensors."""

from app.gallery.generators import GalleryFamily, GallerySpec, SliceRule, generate

__all__ = ["GalleryFamily", "GallerySpec", "SliceRule", "generate"]
