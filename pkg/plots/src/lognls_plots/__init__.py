"""Figures from lognls run outputs: CSV in, image out."""

from ._version import __version__
from .figures import (
    IMAGE_SUFFIXES,
    KINDS,
    REQUIRED_COLUMNS,
    FigureSpec,
    SchemaError,
    fit_powerlaw,
    read_table,
    render,
)

__all__ = [
    "__version__",
    "IMAGE_SUFFIXES",
    "KINDS",
    "REQUIRED_COLUMNS",
    "FigureSpec",
    "SchemaError",
    "fit_powerlaw",
    "read_table",
    "render",
]
