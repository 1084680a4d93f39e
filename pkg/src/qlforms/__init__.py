"""Exact computer algebra for quasilinear p-forms over F_p(t_1,...,t_m)."""

from .groundfield import (
    GroundField,
    Poly,
    FieldElem,
    QlformsError,
    ResourceLimitError,
    frobenius_coords,
    pth_root,
    in_pth_powers,
    poly_gcd,
)

__all__ = [
    "GroundField",
    "Poly",
    "FieldElem",
    "QlformsError",
    "ResourceLimitError",
    "frobenius_coords",
    "pth_root",
    "in_pth_powers",
    "poly_gcd",
]

__version__ = "0.1.0"
