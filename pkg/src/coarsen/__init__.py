"""Loop-and-clique graph coarsening and line-graph conversion."""

from .baselines import coarsen_neighbor, coarsen_random
from .errors import (
    CoarsenError,
    DuplicateEdge,
    IndicatorGap,
    InvalidPartition,
    MalformedLine,
    MissingFeatures,
    MissingFile,
    MissingNodeLabels,
    OutOfRange,
    SelfLoop,
    SizeLimit,
)
from .graph import (
    CoarsenedGraph,
    Graph,
    Kind,
    Partition,
    PartitionSet,
    coarsen_by_partition,
    from_edge_list,
    matrix_route_coarsen,
)
from .lcc import (
    LccConfig,
    LccTrace,
    coarsen_lcc,
    count_structures,
    find_cliques_hierarchical,
    find_loops_bounded,
)
from .linegraph import LineGraphView, lgc_features, line_graph
from .tudataset import Dataset, init_features, load_tudataset, write_tudataset

__version__ = "0.1.0"
