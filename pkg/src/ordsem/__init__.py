"""Finite-scale workbench for order-theoretic semantics of IPC."""

from .brouwer import (
    AlgebraHomomorphism,
    BrouwerAlgebra,
    interval_algebra,
    quotient,
    upset_algebra,
    verify_brouwer,
)
from .errors import (
    CapacityError,
    InputError,
    InvariantViolation,
    OrdsemError,
    PreconditionError,
    Report,
    StagingError,
    StructureError,
    ValuationError,
)
from .formulas import Formula, ParseError, parse, pretty
from .morphism import (
    PMorphism,
    pmorphism_from_labels,
    search_pmorphism,
    transfer_check,
    verify_pmorphism,
)
from .muchnik import MassProblem, iso_check, mass_problem, muchnik_leq, muchnik_ops
from .order import (
    Poset,
    Upset,
    enumerate_upsets,
    from_relation,
    generate_posets,
    is_upset,
    join,
    upward_closure,
)
from .semantics import (
    Countermodel,
    ValidUpToBound,
    binary_tree_frame,
    eval_algebra,
    forces,
    ipc_check_bounded,
    theory_contains,
)
from .splitting import (
    PartialHomomorphism,
    SplittingStructure,
    SyntheticAntichainModel,
    build_pmorphism,
    check_split_conditions,
    pmorphism_of,
    split_from_cond_ii,
    verify_splitting_class,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
