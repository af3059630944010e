"""Exact finite-system laboratory for multiple recurrence of two commuting transformations."""

from .bernoulli import (
    BernoulliSpec,
    CylinderObservable,
    ShiftTerm,
    counterexample_measure,
    counterexample_power,
    counterexample_table,
    counterexample_value,
    exact_correlation,
)
from .box import (
    QuadMeasure,
    box_measure,
    g_algebra,
    is_magic,
    magic_extension,
    relative_square,
    seminorm4,
    seminorm4_by_averages,
)
from .dynamics import (
    CommutingSystem,
    FactorMap,
    Transformation,
    common_rotation_factor,
    ergodic_components,
    group_orbit_partition,
    invariant_partition,
    is_ergodic,
    lift_observable,
    product_system,
    rotation_system,
    validate_system,
)
from .measure import (
    Observable,
    Partition,
    WeightedSpace,
    cond_exp,
    holder_product_bound,
    integrate,
    join_partitions,
    make_space,
)
from .recurrence import (
    cesaro_bound_check,
    diff_bound_check,
    j0_lower_bound_check,
    j_sequence,
    multi_corr,
    pairwise_projections,
    product_rotation_khintchine3,
    recurrence_set,
)

__version__ = "0.1.0"
