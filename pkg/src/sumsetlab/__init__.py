"""Sumset sizes of finite integer sets: exact kernels, ranges, and experiments."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    IntSet,
    RepHistogram,
    add_sumsets,
    collision_counts,
    h_fold_sumset,
    interval_rep2,
    is_bh_set,
    multiset_count,
    representation_histogram,
    sumset_size,
)
from .affine import are_affinely_equivalent, canonicalize, enumerate_canonical_sets  # noqa: E402
from .ranges import (  # noqa: E402
    RangeResult,
    closed_form_range,
    complexity_bound,
    exhaustive_range,
    max_size,
    min_size,
    predicted_popular_sizes,
    tetrahedral,
)
from .experiments import (  # noqa: E402
    ExperimentSpec,
    SizeDistribution,
    popular_sizes,
    run_collision_study,
    run_distribution,
    sample_kset,
    successive_differences,
)

A0 = IntSet((0, 897, 2056, 2441, 2988, 3259, 5294, 6506, 8013, 9391, 9872))
