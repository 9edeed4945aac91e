"""Gabidulin coset coding for secure network coding, with exact secrecy audits."""

from ._wiresafe import (
    BudgetExceeded,
    CosetScheme,
    Field,
    GabidulinCode,
    Network,
    NetworkCode,
    SingularMatrix,
    WiresafeError,
    build_gabidulin,
    check_stack_nonsingular,
    count_full_rank,
    fit_linear,
    is_irreducible,
    min_rank_distance,
    rank_distance,
    rank_over_base,
    run_cli,
    verify_mrd_condition,
)

__all__ = [
    "BudgetExceeded",
    "CosetScheme",
    "Field",
    "GabidulinCode",
    "Network",
    "NetworkCode",
    "SingularMatrix",
    "WiresafeError",
    "build_gabidulin",
    "check_stack_nonsingular",
    "count_full_rank",
    "fit_linear",
    "is_irreducible",
    "min_rank_distance",
    "rank_distance",
    "rank_over_base",
    "run_cli",
    "verify_mrd_condition",
]
