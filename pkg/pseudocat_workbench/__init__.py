"""Pseudocat Workbench - finite pseudo double categories, checked law by law."""

__version__ = "0.1.0"

__all__ = [
    "ambient",
    "config",
    "dsl",
    "homclose",
    "models",
    "pfunctor",
    "pseudocat",
    "ptransform",
    "report",
]
