"""Moving-sum detection of change points in pairwise extremal dependence.

Typical use::

    from moped import rank_transform_pareto2, moped, DetectorConfig, PermutationConfig

    series = rank_transform_pareto2(raw)
    changes = moped(series, DetectorConfig(G=1000, k=100), PermutationConfig(M=200, seed=1))
"""

from .calibrate import NullStatistics, PermutationConfig, moped, p_value, permutation_null
from .detector import (
    ChangePoint,
    ChangePointSet,
    DetectorConfig,
    DetectorTrace,
    detector_trace,
    select_changes,
)
from .errors import *  # noqa: F401,F403
from .margins import MultivariateSeries, compute_radii, rank_transform_pareto2
from .merge import BandwidthLadder, RankLadder, merge_over_bandwidths, merge_over_ranks
from .metrics import Segmentation, covering_metric, qhat_distribution, v_measure
from .simulate import (
    ScenarioSpec,
    SegmentLaw,
    generate_scenario,
    random_correlation,
    sample_gaussian_copula,
    sample_t_copula,
)
from .sliding import SlidingTopK, rolling_topk_sums
from .tpdm import TpdmEstimate, estimate_segment_tpdms, estimate_tpdm

__version__ = "0.1.0"
