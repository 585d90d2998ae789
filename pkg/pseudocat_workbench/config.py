"""Defaults for pseudocat-workbench."""

from pathlib import Path
from typing import Literal

# Search defaults
DEFAULT_SEARCH_BOUND = 250_000  # candidate assignments per enumeration

# Span fixture defaults
DEFAULT_SPAN_SIZE = 2
MAX_SPAN_SIZE = 3  # larger base sets make the cell tables explode

# Horizontal composition of pseudo-natural transformations
HcompVariant = Literal["w1", "w2"]
DEFAULT_HCOMP_VARIANT: HcompVariant = "w1"
HCOMP_VARIANTS: tuple[HcompVariant, ...] = ("w1", "w2")

# Uncurrying: which factor of h(f, g) is split off first
CurryConvention = Literal["b-first", "a-first"]
DEFAULT_CURRY_CONVENTION: CurryConvention = "b-first"
CURRY_CONVENTIONS: tuple[CurryConvention, ...] = ("b-first", "a-first")

# Process exit codes
EXIT_OK = 0
EXIT_LAW_FAILURE = 1
EXIT_INPUT_ERROR = 2  # parse errors, unresolved names, ill-typed boundaries
EXIT_SEARCH_BOUND = 3

DSL_EXTENSION = ".pdc"

APP_DIR = Path.home() / ".pseudocat_workbench"


def resolve_search_bound(value: int | None = None) -> int:
    """Return ``value`` or the default search bound.

    Raises:
        ValueError: If the bound is not positive
    """
    if value is None:
        return DEFAULT_SEARCH_BOUND
    if value <= 0:
        raise ValueError(f"search bound must be positive, got {value}")
    return value


def resolve_span_size(value: int | None = None) -> int:
    if value is None:
        return DEFAULT_SPAN_SIZE
    if not 1 <= value <= MAX_SPAN_SIZE:
        raise ValueError(f"span size must lie in 1..{MAX_SPAN_SIZE}, got {value}")
    return value
