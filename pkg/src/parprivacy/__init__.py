"""Exact privacy-approximation-ratio analysis of dissection protocols.

Quantifies how much a communication protocol over ordered inputs leaks
beyond the function value: the ratio of each input's ideal monochromatic
region to the protocol-induced rectangle containing it, aggregated in the
worst case or on average.  All arithmetic is exact rational.
"""

from .errors import (BspInputError, DistributionError, FragmentBoundError,
                     GalleryError, NotBooleanTilingError, ParPrivacyError,
                     PerfectCutMissingError, ProtocolExecutionError,
                     SizeLimitError, TableFormatError,
                     UnsupportedDimensionError)
from .grid import (CApproxCheck, Distribution, FunctionTable, HyperRect,
                   Permutation, build_table, random_c_approx_distribution,
                   uniform_distribution, validate_c_approx)
from .partition import (MonoIndex, Region, RegionMap, TilingInfo,
                        decompose_regions, diagonal_contacts, ideal_partition,
                        tiling_info)
from .protocol import (BisectionVariant, DissectionCheck, Internal, Leaf,
                       ProtocolRun, ProtocolTree, Transcript,
                       bisection_family, bisection_protocol,
                       bounded_bisection_protocol, c_bisection_protocol,
                       perfect_boolean_protocol, random_protocol,
                       refine_random_leaf, run_protocol, validate_dissection)
from .bsp import (BspCell, BspCut, BspTree, Fragment, FragmentReport,
                  bsp_to_protocol, build_bsp, fragment_report)
from .par import (OptimalPar, ParReport, PermSweepResult, compute_par,
                  optimal_par, optimal_par_over_perms, threeparty_growth)
from .gallery import (GALLERY_NAMES, GalleryResult, GallerySpec, make,
                      notile_adversarial_distribution, setcov_recurrence)
from .kernels import BACKEND as DP_BACKEND

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
