"""Quasirandom hypergraph statistics (DISC, WDISC, DEV, CL, MIN) with exact arithmetic."""

from ._core import (
    BudgetExceeded,
    Error,
    Hypergraph,
    InvalidArgument,
    ParseError,
    SetSystem,
    __version__,
    antichain,
    cl_check,
    constants,
    degree,
    density,
    dev,
    disc,
    hom_count,
    is_q_simple,
    labeled_copies,
    min_check,
    mq,
    mq_size,
    parity_hypergraph,
    precedes,
    random_hypergraph,
    run_acceptance,
    wdisc_random,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "Hypergraph",
    "InvalidArgument",
    "ParseError",
    "SetSystem",
    "__version__",
    "antichain",
    "cl_check",
    "constants",
    "degree",
    "density",
    "dev",
    "disc",
    "hom_count",
    "is_q_simple",
    "labeled_copies",
    "min_check",
    "mq",
    "mq_size",
    "parity_hypergraph",
    "precedes",
    "random_hypergraph",
    "run_acceptance",
    "wdisc_random",
]
