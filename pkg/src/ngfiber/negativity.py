"""Entanglement negativity via the positive-partial-transpose criterion.

For a manifold state the partially transposed density matrix decomposes into
1x1 blocks (the diagonal weights) and 2x2 blocks contributing eigenvalue
pairs +/- |rho_nm|, so the negativity has a closed series form.  The numeric
route below never uses that structure: it embeds the matrix in a full
two-mode space, transposes one mode index, and diagonalizes densely, which
makes it an independent cross-check of the series.

Convention: the negativity returned everywhere in this module is the trace
norm defect ||rho^PT||_1 - 1, i.e. twice the absolute sum of the negative
partial-transpose eigenvalues.  For a pure manifold state this equals the
ordered double sum over n != m of |c_n||c_m|, which is the series all the
decohered variants in the channel module reduce to.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TruncationTooSmall
from .fock import FockOperator, FockSpace, partial_transpose
from .states import ManifoldDensityMatrix, NonGaussianState, embed_density_matrix

NEGATIVE_EIG_CUT = -1e-10


@dataclass
class PptSpectrum:
    """Analytic eigenvalue content of the partially transposed pure state."""

    diagonal: np.ndarray  # 1x1 blocks, one per manifold index
    pair_indices: np.ndarray  # (n, m) with n < m
    pair_magnitudes: np.ndarray  # each contributes eigenvalues +mag and -mag

    def eigenvalues(self) -> np.ndarray:
        """All eigenvalues, sorted ascending (zeros from the embedding omitted)."""
        vals = np.concatenate([self.diagonal, self.pair_magnitudes, -self.pair_magnitudes])
        return np.sort(vals)


def ppt_spectrum_analytic(state: NonGaussianState) -> PptSpectrum:
    """Partial-transpose spectrum from the state's coefficient vector."""
    a = state.abs_coeffs()
    diag = a * a
    n = state.n_max + 1
    iu = np.triu_indices(n, k=1)
    mags = a[iu[0]] * a[iu[1]]
    return PptSpectrum(diag, np.column_stack(iu), mags)


def negativity_analytic(state: NonGaussianState) -> float:
    """Closed-form negativity of the pure manifold state.

    Equals sum over ordered pairs n != m of |c_n||c_m|, computed as
    (sum |c_n|)^2 - sum |c_n|^2 over the stored coefficient range.  The
    truncation matches the state's own, so this and negativity_numeric agree
    to eigensolver precision.
    """
    a = state.abs_coeffs()
    s1 = float(a.sum())
    return s1 * s1 - float((a * a).sum())


def negativity_fock(rho: FockOperator, mode: str = "b") -> float:
    """Negativity of a full two-mode density matrix: dense PPT eigensolve.

    Returns ||rho^PT||_1 - trace = sum(|lambda| - lambda), twice the absolute
    sum of the negative eigenvalues (see the module docstring).  Computed
    without a magnitude threshold: genuinely zero eigenvalues cancel in
    |lambda| - lambda up to rounding, while a threshold would silently drop
    real small coherence pairs.
    """
    pt = partial_transpose(rho, mode)
    eigs = np.linalg.eigvalsh(pt.matrix)
    return float(np.abs(eigs).sum() - eigs.sum())


def negative_eigenvalue_count(rho: FockOperator, mode: str = "b") -> int:
    pt = partial_transpose(rho, mode)
    eigs = np.linalg.eigvalsh(pt.matrix)
    return int(np.count_nonzero(eigs < NEGATIVE_EIG_CUT))


def negativity_numeric(rho: ManifoldDensityMatrix, total_cut: int | None = None) -> float:
    """Negativity by dense embedding, partial transpose and eigendecomposition.

    The embedding space must satisfy total_cut >= 2 n_max + p so no partial
    transpose entry is lost; the minimal such space is used by default.
    Memory grows as total_cut^4, so keep n_max modest on this route.
    """
    rho.validate()
    needed = 2 * rho.n_max + rho.p
    if total_cut is None:
        total_cut = needed
    elif total_cut < needed:
        raise TruncationTooSmall(f"total_cut {total_cut} < 2 n_max + p = {needed}")
    space = FockSpace(total_cut)
    full = embed_density_matrix(rho, space)
    return negativity_fock(FockOperator(space, full))
