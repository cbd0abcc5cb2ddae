"""Meets and joins in the projection lattice of a matrix algebra.

The meet of projections is the projection onto the intersection of their
ranges, computed as the top eigenspace of their sum: the sum of k
projections attains eigenvalue k exactly on vectors fixed by all of them.
The join goes through complements, reusing the meet machinery instead of
orthonormalizing a spanning set in a second code path.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import DEFAULT_TOL, HermitianMatrix, Tolerances
from .errors import (
    DimMismatchError,
    NoConvergenceError,
    NotProjectionError,
)
from .family import Projection, is_projection, range_defect

__all__ = ["proj_leq", "proj_meet", "proj_join", "alternating_meet_oracle"]


def _check_projections(ps: Sequence[Projection], tol: Tolerances) -> int:
    if len(ps) == 0:
        raise NotProjectionError("expected at least one projection")
    dim = ps[0].dim
    for p in ps:
        if p.dim != dim:
            raise DimMismatchError(f"dimensions differ: {p.dim} vs {dim}")
        if not is_projection(p.matrix, tol):
            raise NotProjectionError("input is not a projection within tolerance")
    return dim


def proj_leq(p: Projection, q: Projection, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Range containment: true iff ||p - q p|| <= 10 * psd_tol.

    The algebraic characterization q p = p is rank robust, unlike an
    eigenvalue-slack test on q - p.
    """
    _check_projections([p, q], tol)
    return range_defect(p, q) <= 10.0 * tol.psd_tol


def proj_meet(ps: Sequence[Projection], tol: Tolerances = DEFAULT_TOL) -> Projection:
    """Projection onto the intersection of the ranges.

    Computed as the eigenspace of sum(p_i) at eigenvalue k = len(ps):
    eigenvalues of the sum lie in [0, k], and any deficit below k is
    spectral (a nonzero principal angle), not roundoff, for generic inputs.
    """
    dim = _check_projections(ps, tol)
    k = len(ps)
    total = np.zeros((dim, dim), dtype=np.complex128)
    for p in ps:
        total += p.entries
    w, u = np.linalg.eigh((total + total.conj().T) / 2.0)
    threshold = k - min(0.5, k * tol.cluster_tol)
    cols = u[:, w > threshold]
    return Projection.onto(cols, dim)


def proj_join(ps: Sequence[Projection], tol: Tolerances = DEFAULT_TOL) -> Projection:
    """Projection onto the span of the ranges: I - meet of the complements."""
    _check_projections(ps, tol)
    meet_of_complements = proj_meet([p.complement() for p in ps], tol)
    return meet_of_complements.complement()


def alternating_meet_oracle(
    p: Projection,
    q: Projection,
    iters: int = 60,
    tol: Tolerances = DEFAULT_TOL,
) -> Projection:
    """Independent cross-check of proj_meet for a pair: the norm limit of
    (p q p)^(2^j), computed by repeated squaring.

    Stops when successive iterates differ by less than conv_tol. Raises
    NoConvergenceError, carrying the last iterate and residual, when the
    squaring cap is hit first.
    """
    _check_projections([p, q], tol)
    m = p.entries @ q.entries @ p.entries
    m = (m + m.conj().T) / 2.0
    residual = np.inf
    for _ in range(int(iters)):
        nxt = m @ m
        nxt = (nxt + nxt.conj().T) / 2.0
        residual = float(np.linalg.norm(nxt - m, 2))
        m = nxt
        if residual < tol.conv_tol:
            return Projection(HermitianMatrix(m))
    raise NoConvergenceError(
        f"alternating meet did not converge in {iters} squarings "
        f"(last residual {residual:.3e})",
        last_iterate=m,
        residual=residual,
    )
