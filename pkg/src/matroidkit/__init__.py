"""Matroid toolkit for excluded-minor constructions built from principal extensions."""

from .core import (
    Matroid,
    add_coloop,
    circuits,
    closure,
    contract,
    cyclic_flats,
    delete,
    direct_sum,
    dual,
    equals_labeled,
    flats,
    from_bases,
    has_minor_iso,
    has_minor_labeled,
    is_isomorphic,
    minor,
    rank,
    relabel,
    uniform,
)
from .errors import MatroidError

__version__ = "0.1.0"
