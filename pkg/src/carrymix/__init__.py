"""Exact tools for the carries Markov chain and riffle-shuffle descents."""

__version__ = "0.1.0"

from .bijections import (
    ColumnArray, TupleList, bar_inverse, bar_map, carry_positions, column_carry_trace,
    descent_positions, pi_label, star_inverse, star_map, starkey_product_check, tau_trace,
)
from .carries import (
    CarryMoments, ChainSpec, build_P, carry_distribution, carry_moments, separation_closed,
    separation_exact, stationary, total_carries_mean, tv_from_start,
)
from .errors import ConsistencyError, ResourceCapError
from .exact import (
    RationalMatrix, binomial, char_poly, composition_count, eulerian, fmt_rational,
    is_totally_positive, mat_mul,
)
from .montecarlo import (
    JointLaw, chi_square, exhaustive_joint_carries, exhaustive_joint_descents, sample_columns,
)
from .multiplication import MultSpec, build_K, mult_carry_trace, mult_tv_exact
from .permutations import Permutation, descents
from .sections import build_C, section_poly, trim_to_P
from .shuffling import (
    card_tracking_matrix, convolve, exhaustive_shuffle_dist, gsr_sample, qb_probability, riffle_sample,
)
