from ._core import (
    Problem,
    QshiftError,
    bv_operator,
    commands,
    compatibility,
    eigen,
    is_self_dual,
    kappa_residual,
    koszul_dims,
    milnor_number,
    report_schema,
    run,
    twisted_dims,
    validate_report,
)

__all__ = [
    "Problem",
    "QshiftError",
    "bv_operator",
    "commands",
    "compatibility",
    "eigen",
    "is_self_dual",
    "kappa_residual",
    "koszul_dims",
    "milnor_number",
    "report_schema",
    "run",
    "twisted_dims",
    "validate_report",
]
