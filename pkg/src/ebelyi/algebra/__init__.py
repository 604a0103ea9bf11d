"""Exact algebra: small cyclotomic fields, one-step extensions,
polynomials, curves and their function fields."""

from .fields import Cyc, Ext, Quad, Tower, adjoin_root, j_order, retower, split_tower
from .poly import Poly

__all__ = [
    "Cyc",
    "Ext",
    "Quad",
    "Tower",
    "Poly",
    "adjoin_root",
    "j_order",
    "retower",
    "split_tower",
]
