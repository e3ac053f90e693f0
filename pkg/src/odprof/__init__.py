"""Order dependency checking, discovery and differential testing."""

from odprof.checker import (
    decompose_check,
    find_splits,
    find_swaps,
    holds_canonical,
    order_compatible,
    order_equivalent,
    satisfies_od,
)
from odprof.dependencies import (
    CanonicalDependency,
    DependencySet,
    ListOD,
    fd_as_od,
    map_fd_to_canonical,
    map_ocd_to_canonical,
    map_od_to_canonical,
)
from odprof.discovery_list import diff_against_complete, ocddiscover
from odprof.discovery_set import (
    DiscoveryConfig,
    MinimalityPolicy,
    discover_canonical,
    explain_minimality,
)
from odprof.loader import LoadError, LoadOptions, load_csv
from odprof.model import Table, ValueType, compare_values, leq_lex, strict_less_lex
from odprof.oracle import BoundsError, EnumerationBounds

__version__ = "0.1.0"
