"""Enumerated values."""
from enum import Enum


class MethodValues(Enum):

    """Enumerated values for curvature estimation methods."""

    GAUSS_GRAD = 'gauss-grad'
    TAUBIN_AREA = 'taubin-area'
    TAUBIN_CENTROID = 'taubin-centroid'
    CHEN_SCHMITT = 'chen-schmitt'


class WeightSchemeValues(Enum):

    """Enumerated values for neighbor weights of normal curvature samples."""

    AREA = 'area'
    CENTROID = 'centroid'


class MeshFormatValues(Enum):

    """Enumerated values for supported mesh file formats."""

    OFF = 'off'
    OBJ = 'obj'
