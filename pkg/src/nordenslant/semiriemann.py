"""Linear algebra over indefinite (semi-Riemannian) inner products.

All bilinear forms use plain transposes, never conjugates, so the same code
evaluates the formal complexification of a real computation when a caller
hands it complex arrays. Causal character and inertia are only defined for
real input.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import null_space

from .errors import DegenerateFrame, ValidationError

LIGHTLIKE_TOL = 1e-9
DEGENERACY_TOL = 1e-10
SYMMETRY_TOL = 1e-12


class CausalCharacter(str, Enum):
    SPACELIKE = "space-like"
    TIMELIKE = "time-like"
    LIGHTLIKE = "light-like"


def inertia(matrix, rtol=1e-10) -> Tuple[int, int]:
    """Return ``(positive, negative)`` eigenvalue counts of a real symmetric matrix.

    Eigenvalues within ``rtol * max|eig|`` of zero count as neither.
    """
    mat = np.asarray(matrix)
    if np.iscomplexobj(mat):
        raise ValidationError("inertia is undefined for complex matrices")
    eig = np.linalg.eigvalsh(0.5 * (mat + mat.T))
    if eig.size == 0:
        return (0, 0)
    cut = rtol * max(1e-300, float(np.max(np.abs(eig))))
    return (int(np.sum(eig > cut)), int(np.sum(eig < -cut)))


@dataclass(frozen=True, eq=False)
class Metric:
    """A non-degenerate symmetric bilinear form on R^n."""

    entries: np.ndarray
    signature: Tuple[int, int] = field(init=False)

    def __post_init__(self):
        g = np.array(self.entries, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] == 0:
            raise ValidationError(f"metric must be a non-empty square matrix, got shape {g.shape}")
        asym = float(np.max(np.abs(g - g.T)))
        if asym > SYMMETRY_TOL:
            raise ValidationError(f"metric is not symmetric (max |g - g^T| = {asym:.3e})")
        det = float(np.linalg.det(g))
        if abs(det) <= DEGENERACY_TOL:
            raise ValidationError(f"metric is degenerate (|det g| = {abs(det):.3e})")
        g.setflags(write=False)
        object.__setattr__(self, "entries", g)
        object.__setattr__(self, "signature", inertia(g))

    @classmethod
    def diag(cls, *values):
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def inner(self, v, w):
        return np.asarray(v) @ self.entries @ np.asarray(w)

    def quadratic(self, v):
        return self.inner(v, v)

    def __repr__(self):
        return f"Metric(dim={self.dim}, signature={self.signature})"


def as_metric(g) -> Metric:
    return g if isinstance(g, Metric) else Metric(np.asarray(g, dtype=float))


def causal_character(v, g, tau: float = LIGHTLIKE_TOL) -> CausalCharacter:
    """Classify ``v`` by the sign of ``g(v, v)`` relative to ``tau * |v|^2``."""
    g = as_metric(g)
    v = np.asarray(v)
    if v.shape != (g.dim,):
        raise ValidationError(f"vector of shape {v.shape} does not match metric dimension {g.dim}")
    if np.iscomplexobj(v):
        raise ValidationError("causal character is undefined for complex vectors")
    q = float(g.quadratic(v))
    band = tau * float(v @ v)
    if q > band:
        return CausalCharacter.SPACELIKE
    if q < -band:
        return CausalCharacter.TIMELIKE
    return CausalCharacter.LIGHTLIKE


def induced_gram(B, g):
    """The restriction ``B^T g B`` of ``g`` to the column span of ``B``."""
    g = as_metric(g)
    B = np.asarray(B)
    if B.ndim != 2 or B.shape[0] != g.dim:
        raise ValidationError(f"frame of shape {B.shape} does not match metric dimension {g.dim}")
    if B.shape[1] > B.shape[0]:
        raise ValidationError("frame has more columns than rows")
    return B.T @ g.entries @ B


def _scaled_det(B, gram) -> complex:
    # Determinant of the Gram matrix of unit (Euclidean) columns.
    norms = np.linalg.norm(B, axis=0)
    if np.any(norms == 0):
        return 0.0
    d = 1.0 / norms
    return np.linalg.det(gram * np.outer(d, d))


@dataclass(frozen=True, eq=False)
class TangentFrame:
    point: Optional[np.ndarray]
    B: np.ndarray
    gram: np.ndarray
    scaled_det: complex
    rank: int
    signature: Optional[Tuple[int, int]]

    @property
    def k(self) -> int:
        return self.B.shape[1]

    @property
    def n(self) -> int:
        return self.B.shape[0]

    @property
    def complexified(self) -> bool:
        return np.iscomplexobj(self.B)

    @property
    def degenerate(self) -> bool:
        return self.rank < self.k or abs(self.scaled_det) <= DEGENERACY_TOL

    def require_nondegenerate(self):
        if self.rank < self.k:
            raise DegenerateFrame(f"tangent vectors are linearly dependent (rank {self.rank} < {self.k})")
        if abs(self.scaled_det) <= DEGENERACY_TOL:
            raise DegenerateFrame(
                f"induced metric is degenerate (|det| = {abs(self.scaled_det):.3e} after column scaling)"
            )


def tangent_frame(B, g, point=None) -> TangentFrame:
    B = np.array(B)
    if B.ndim == 1:
        B = B[:, None]
    if not np.iscomplexobj(B):
        B = B.astype(float)
    gram = induced_gram(B, g)
    rank = int(np.linalg.matrix_rank(B)) if B.size else 0
    sdet = _scaled_det(B, gram)
    if np.iscomplexobj(gram):
        sig = None
    else:
        gram = 0.5 * (gram + gram.T)
        sig = inertia(gram)
    pt = None if point is None else np.atleast_1d(np.asarray(point, dtype=float))
    return TangentFrame(point=pt, B=B, gram=gram, scaled_det=sdet, rank=rank, signature=sig)


def tangential_projection(g, frame: TangentFrame, w):
    """Split ``w`` into a tangent part (frame coordinates) and a g-normal residual.

    ``w`` may be a single vector or a matrix whose columns are projected
    independently. Returns ``(coeffs, residual)`` with
    ``gram @ coeffs == B^T g w`` and ``residual = w - B @ coeffs``.
    """
    g = as_metric(g)
    frame.require_nondegenerate()
    w = np.asarray(w)
    if w.shape[0] != g.dim:
        raise ValidationError(f"vector of length {w.shape[0]} does not match metric dimension {g.dim}")
    coeffs = np.linalg.solve(frame.gram, frame.B.T @ g.entries @ w)
    residual = w - frame.B @ coeffs
    return coeffs, residual


def normal_frame(g, frame: TangentFrame):
    """Basis (as columns) of the g-orthogonal complement of the frame's span."""
    g = as_metric(g)
    frame.require_nondegenerate()
    N = null_space(frame.B.T @ g.entries)
    if N.shape[1] != frame.n - frame.k:
        raise DegenerateFrame(f"normal space has dimension {N.shape[1]}, expected {frame.n - frame.k}")
    if N.shape[1]:
        gn = N.T @ g.entries @ N
        if abs(np.linalg.det(gn)) <= DEGENERACY_TOL:
            raise DegenerateFrame("normal space carries a degenerate metric")
    return N
