"""Grover search with a Haar-wavelet initial state, simulated on dense statevectors."""

from .analysis import (
    AngleParams,
    optimal_iterations,
    predicted_probability,
    rotation_angles,
    speedup_table,
    theory_residual,
)
from .codebook import Block, CodeLabel, choose_k, decode_digit, encode, validate
from .engine import (
    SearchConfig,
    SearchTrace,
    Variant,
    grover_iterate,
    oracle_reflect,
    reflect_about_initial,
    run_batch,
    run_search,
    wqsa_iterate,
)
from .errors import DomainError, ResourceError
from .haar import (
    WaveletIndex,
    haar_forward,
    haar_inverse,
    haar_level,
    haar_matrix,
    index_to_scale,
    scale_to_index,
    wavelet_initial_state,
)
from .state import StateVector, basis_state, inner_product, probability, sample, uniform_state

__version__ = "0.1.0"
