"""Exception hierarchy.  Every error carries a short machine-readable ``code``."""

from __future__ import annotations


class TqftError(Exception):
    code = "error"
    exit_code = 1


class InvalidRootOrder(TqftError, ValueError):
    code = "invalid-root-order"


class DivByZero(TqftError, ZeroDivisionError):
    code = "div-by-zero"


class CatalogMiss(TqftError, KeyError):
    code = "catalog-miss"

    def __str__(self) -> str:
        return Exception.__str__(self)


class DegenerateCategory(TqftError):
    code = "degenerate-category"


class ModularityRequired(TqftError):
    code = "modularity-required"


class CategoryDataError(TqftError):
    code = "category-data"


class CompositionError(TqftError):
    code = "composition-error"

    def __init__(self, msg: str, slice_index: int | None = None, position: int | None = None):
        super().__init__(msg)
        self.slice_index = slice_index
        self.position = position


class FusionError(TqftError):
    code = "fusion-error"


class TraceError(TqftError):
    code = "trace-error"


class MalformedLink(TqftError):
    code = "malformed-link"


class ColoringError(TqftError):
    code = "coloring-error"


class RequireConnected(TqftError):
    code = "require-connected"


class InvalidLagrangian(TqftError):
    code = "invalid-lagrangian"


class BudgetError(TqftError):
    code = "budget-error"

    def __init__(self, msg: str, projected: int | None = None):
        super().__init__(msg)
        self.projected = projected


class InputError(TqftError):
    """Unreadable or unparsable input file."""

    code = "input-error"
    exit_code = 2
