"""Point-count conditions on Y_1(p) over finite fields."""

from .waterhouse import (
    PointCountQuery,
    apriori_bound_holds,
    condition3_exceptions,
    condition3_holds,
    cusp_field_condition,
    supersingular_only,
    waterhouse_conditions,
    waterhouse_empty,
)

__all__ = [
    "PointCountQuery",
    "apriori_bound_holds",
    "condition3_exceptions",
    "condition3_holds",
    "cusp_field_condition",
    "supersingular_only",
    "waterhouse_conditions",
    "waterhouse_empty",
]
