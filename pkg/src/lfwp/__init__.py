"""Exact wavelet packets and wavelet frame packets on a local field.

The field is K = F_q((t)), formal Laurent series over GF(q) with q = p^c.
Everything downstream of the eigenvalue solver is computed exactly: field
and character arithmetic over integer digit codes, values in the cyclotomic
ring Q(zeta_p)[sqrt(p)], step functions with exact Haar integration and an
exact Fourier transform, filter-bank splitting and wavelet packets, and the
frame-packet machinery with its matrix factorization.
"""

__version__ = "0.1.0"

from ._kernel import KERNEL_IMPL
from .cyclotomic import CycNum, cyc_arith, root_of_unity, to_complex
from .frames import (FrameFilterSet, FramePacketSystem, GeneratorSet,
                     char_sum_delta, check_factorization, e_matrix,
                     frame_bounds, frame_energy_sums, frame_inequality_test,
                     frame_packet, h_matrix, haar_frame_filter_set, p_matrix,
                     random_frame_filter_set, standard_generators)
from .localfield import (PRESETS, FieldParams, GFElem, KElem, chi, chi_at,
                         chi_exponent, chi_n, gf_arith, k_arith, preset,
                         u_digit_length, u_index, u_oplus, valuation_abs)
from .packets import (FilterBank, PacketSystem, analyze, basis_enumerate,
                      check_unitary, haar_filterbank, modulated_bank,
                      modulation_matrix, packet_fourier_product, split,
                      symbol_eval, synthesize)
from .stepspace import (StepFn, Window, bracket, bracket_bound, char_on_D,
                        character_gram, dilate_translate, fourier,
                        fourier_coeff_D, fourier_naive, gram, indicator,
                        inner_product, inverse_fourier, make_step, norm_sq,
                        orthonormality_criterion, reps_of_D_mod, translate)

__all__ = [
    "KERNEL_IMPL",
    "__version__",
    # cyclotomic
    "CycNum", "cyc_arith", "root_of_unity", "to_complex",
    # localfield
    "PRESETS", "FieldParams", "GFElem", "KElem", "chi", "chi_at",
    "chi_exponent", "chi_n", "gf_arith", "k_arith", "preset",
    "u_digit_length", "u_index", "u_oplus", "valuation_abs",
    # stepspace
    "StepFn", "Window", "bracket", "bracket_bound", "char_on_D",
    "character_gram", "dilate_translate", "fourier", "fourier_coeff_D",
    "fourier_naive", "gram", "indicator", "inner_product", "inverse_fourier",
    "make_step", "norm_sq", "orthonormality_criterion", "reps_of_D_mod",
    "translate",
    # packets
    "FilterBank", "PacketSystem", "analyze", "basis_enumerate",
    "check_unitary", "haar_filterbank", "modulated_bank",
    "modulation_matrix", "packet_fourier_product", "split", "symbol_eval",
    "synthesize",
    # frames
    "FrameFilterSet", "FramePacketSystem", "GeneratorSet", "char_sum_delta",
    "check_factorization", "e_matrix", "frame_bounds", "frame_energy_sums",
    "frame_inequality_test", "frame_packet", "h_matrix",
    "haar_frame_filter_set", "p_matrix", "random_frame_filter_set",
    "standard_generators",
]
