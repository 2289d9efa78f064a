"""Legendrian Theta-graphs and planar graphs from front diagrams."""

from .classify import (
    EmbeddingKey, InadmissibleError, ThetaInvariants, canonical, count_embeddings,
    count_images, enumerate_admissible, is_admissible, keys_for,
)
from .frontdiagram import FrontDiagram, mirror, theta_invariants, theta_key, vertex_sign
from .halfint import HalfInt
from .realize import apply_recipe, build_gl, realize, realize_key, stab_recipe

__all__ = [
    "EmbeddingKey", "FrontDiagram", "HalfInt", "InadmissibleError", "ThetaInvariants",
    "apply_recipe", "build_gl", "canonical", "count_embeddings", "count_images",
    "enumerate_admissible", "is_admissible", "keys_for", "mirror", "realize",
    "realize_key", "stab_recipe", "theta_invariants", "theta_key", "vertex_sign",
]
