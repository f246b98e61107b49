"""Exact analysis of single-agent edge manipulation in k-coalitional games
on social networks."""

from .network import (
    Aggregation,
    ManipulationSpec,
    Mode,
    ReportProfile,
    SocialNetwork,
    apply_manipulation,
    build_from_reports,
    neighbours,
    utility,
)
from .partitions import (
    CoalitionStructure,
    SizeConstraint,
    coalition_of,
    count_partitions,
    enumerate_partitions,
    equal_size_multiset,
)
from .objectives import (
    Objective,
    SolutionSet,
    at_least_1_satisfied,
    cut_size,
    egalitarian_sw,
    manipulator_bounds,
    min_kcut_value,
    solution_set,
    utilitarian_sw,
)
from .manipulation import ImprovementReport, classify, search
from .views import (
    PartialView,
    SafeReport,
    SlotCapExceeded,
    classify_d_safe,
    enumerate_completions,
    extract_view,
    search_safe,
)
from .witness import (
    Claim,
    ClaimResult,
    WitnessSpec,
    conjecture_search,
    expand_witness,
    synthesize_witness,
    verify_claims,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
