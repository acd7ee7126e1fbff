"""Pure-Python/numpy implementations of the spectral-sum kernels.

Mirrors ``_speedups.pyx`` signature for signature; summation order and the
compensation scheme are identical so the two backends agree to rounding.
"""

from __future__ import annotations

import numpy as np


def neumaier_sum(values) -> float:
    total = 0.0
    comp = 0.0
    for v in values:
        v = float(v)
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def exp_weighted_sum(mult, casimir, t):
    """``sum_i mult[i] * exp(-t * casimir[i])`` in index order."""
    terms = np.asarray(mult, dtype=float) * np.exp(-t * np.asarray(casimir, dtype=float))
    return neumaier_sum(terms)


def character_sum(shifted, dims, casimir, hw, signs, den_re, den_im, t):
    """``sum_i dims[i] * Re(num_i / den) * exp(-t * casimir[i])``.

    ``num_i = sum_w signs[w] * exp(i <shifted[i], hw[w]>)`` where ``hw[w]`` is
    the transposed Weyl element applied to H.
    """
    phases = np.asarray(shifted, dtype=float) @ np.asarray(hw, dtype=float).T
    signs = np.asarray(signs, dtype=float)
    num_re = np.cos(phases) @ signs
    num_im = np.sin(phases) @ signs
    den2 = den_re * den_re + den_im * den_im
    chi = (num_re * den_re + num_im * den_im) / den2
    terms = np.asarray(dims, dtype=float) * chi * np.exp(-t * np.asarray(casimir, dtype=float))
    return neumaier_sum(terms)
