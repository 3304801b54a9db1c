"""Exact super linear algebra: divided powers, Clifford, Sergeev and Schur superalgebras."""

from .scalars import QQ, Field, make_field
from .superlinear import SuperMap, SuperSpace, make_space
from .algebras import SuperAlgebra, clifford, sergeev, split_algebra, wreath
from .centralizer import commutant, double_centralizer, schur_I, schur_II, weight_decomposition
from .classify import labels_type_I, labels_type_II

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "Field",
    "make_field",
    "SuperMap",
    "SuperSpace",
    "make_space",
    "SuperAlgebra",
    "clifford",
    "sergeev",
    "split_algebra",
    "wreath",
    "commutant",
    "double_centralizer",
    "schur_I",
    "schur_II",
    "weight_decomposition",
    "labels_type_I",
    "labels_type_II",
]
