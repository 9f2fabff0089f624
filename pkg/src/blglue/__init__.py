"""Gluing vector bundles on the projective line from Laurent-series matrices."""

from .ring import (DualExtension, IntegersMod, PrimeField, Rationals, Ring, RingElement,
                   classify_element, ring_arith, ring_from_json)
from .laurent import (BFraction, LaurentPoly, TruncatedSeries, classify_series_unit, expand,
                      invert_in_B, invert_series_unit, series_arith)

__all__ = [
    "BFraction", "DualExtension", "IntegersMod", "LaurentPoly", "PrimeField", "Rationals",
    "Ring", "RingElement", "TruncatedSeries", "classify_element", "classify_series_unit",
    "expand", "invert_in_B", "invert_series_unit", "ring_arith", "ring_from_json",
    "series_arith",
]
