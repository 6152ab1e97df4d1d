"""Harmonic analysis on bounded Vilenkin groups.

Mixed-radix group arithmetic, a fast separable Vilenkin transform with a
literal-sum oracle, Norlund/T summability kernels and means, and the
diagnostics used to study their convergence at finite resolution.
"""

from .analysis import (
    ConvergenceRecord,
    convergence_sweep,
    full_maximal_fejer,
    lebesgue_profile,
    lp_norm,
    restricted_maximal,
    vilenkin_lebesgue_profile,
    weak11_ratio,
    weak_lp,
)
from .corpus import corpus
from .group import (
    GroupPoint,
    VilenkinBase,
    coset_measure,
    coset_members,
    coset_of,
    decode_index,
    encode_index,
    group_add,
    group_sub,
    order_stats,
)
from .summability import (
    KernelTable,
    WeightSequence,
    dirichlet,
    fejer_kernel,
    fejer_domination_constant,
    kernel_for,
    kernel_l1_profile,
    kernel_tail,
    make_weights,
    mean,
    norlund_kernel,
    partial_sum,
    regularity_check,
    t_kernel,
    verify_block_kernel_split,
    verify_dirichlet_complement,
    weights_from_spec,
)
from .transform import (
    Spectrum,
    StepFunction,
    character,
    character_values,
    convolve,
    convolve_spectral,
    forward,
    forward_naive,
    inverse,
    rademacher,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceRecord",
    "GroupPoint",
    "KernelTable",
    "Spectrum",
    "StepFunction",
    "VilenkinBase",
    "WeightSequence",
    "character",
    "character_values",
    "convergence_sweep",
    "convolve",
    "convolve_spectral",
    "corpus",
    "coset_measure",
    "coset_members",
    "coset_of",
    "decode_index",
    "dirichlet",
    "encode_index",
    "fejer_domination_constant",
    "fejer_kernel",
    "forward",
    "forward_naive",
    "full_maximal_fejer",
    "group_add",
    "group_sub",
    "inverse",
    "kernel_for",
    "kernel_l1_profile",
    "kernel_tail",
    "lebesgue_profile",
    "lp_norm",
    "make_weights",
    "mean",
    "norlund_kernel",
    "order_stats",
    "partial_sum",
    "rademacher",
    "regularity_check",
    "restricted_maximal",
    "t_kernel",
    "verify_block_kernel_split",
    "verify_dirichlet_complement",
    "vilenkin_lebesgue_profile",
    "weak11_ratio",
    "weak_lp",
    "weights_from_spec",
]
