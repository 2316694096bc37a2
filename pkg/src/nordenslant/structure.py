"""Compatible almost-structures ``(J, g)`` and the named registry.

A structure is classified by two signs: ``J^2 = epsilon I`` and
``J^T g J = sigma g``. The four combinations give the almost complex,
Norden, almost product and almost para-complex cells.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np

from .errors import NotAStructure, ValidationError
from .semiriemann import Metric, as_metric

STRUCTURE_TOL = 1e-10


class Compatibility(str, Enum):
    ISOMETRY = "isometry"
    ANTI_ISOMETRY = "anti-isometry"


class StructureClass(str, Enum):
    ALMOST_COMPLEX = "AlmostComplex"
    NORDEN = "Norden"
    ALMOST_PRODUCT = "AlmostProduct"
    PARA_COMPLEX = "ParaComplex"


_CELLS = {
    (-1, 1): StructureClass.ALMOST_COMPLEX,
    (-1, -1): StructureClass.NORDEN,
    (1, 1): StructureClass.ALMOST_PRODUCT,
    (1, -1): StructureClass.PARA_COMPLEX,
}


@dataclass(frozen=True, eq=False)
class CompatibleStructure:
    J: np.ndarray
    g: Metric
    epsilon: int
    compat: Compatibility
    klass: StructureClass
    square_residual: float
    compat_residual: float
    adjoint_residual: float

    @property
    def dim(self) -> int:
        return self.g.dim

    @property
    def sigma(self) -> int:
        return 1 if self.compat is Compatibility.ISOMETRY else -1

    @property
    def adjoint_sign(self) -> int:
        """``g(JX, Y) = adjoint_sign * g(X, JY)``; +1 for Norden, -1 for para-complex."""
        return self.sigma * self.epsilon

    def summary(self) -> str:
        return f"{self.klass.value}, epsilon={self.epsilon:+d}, {self.compat.value}"

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "J": self.J.tolist(),
            "g": self.g.entries.tolist(),
            "class": self.klass.value,
            "epsilon": self.epsilon,
            "compat": self.compat.value,
            "signature": list(self.g.signature),
            "residuals": {
                "square": self.square_residual,
                "compat": self.compat_residual,
                "adjoint": self.adjoint_residual,
            },
        }


def classify_structure(J, g, tol: float = STRUCTURE_TOL) -> CompatibleStructure:
    """Verify ``(J, g)`` and place it in the four-cell compatibility table."""
    try:
        g = as_metric(g)
    except ValidationError as exc:
        raise NotAStructure(f"invalid metric: {exc}") from exc
    J = np.array(J, dtype=float)
    n = g.dim
    if J.shape != (n, n):
        raise NotAStructure(f"J has shape {J.shape}, metric has dimension {n}")
    if n % 2:
        raise NotAStructure(f"dimension must be even, got {n}")

    I = np.eye(n)
    J2 = J @ J
    sq = {e: float(np.max(np.abs(J2 - e * I))) for e in (-1, 1)}
    JgJ = J.T @ g.entries @ J
    cp = {s: float(np.max(np.abs(JgJ - s * g.entries))) for s in (1, -1)}
    eps = min(sq, key=sq.get)
    sigma = min(cp, key=cp.get)
    if sq[eps] > tol or cp[sigma] > tol:
        raise NotAStructure(
            "not a compatible structure: "
            f"min |J^2 -+ I| = {sq[eps]:.3e} (J^2 = +/-I), "
            f"min |J^T g J -+ g| = {cp[sigma]:.3e} (g(JX,JY) = +/-g(X,Y)); tolerance {tol:g}"
        )
    # g J is symmetric when sigma*eps = +1 and skew when it is -1.
    gJ = g.entries @ J
    adj = float(np.max(np.abs(gJ.T - sigma * eps * gJ)))
    if adj > tol:
        raise NotAStructure(f"(gJ)^T != {sigma * eps:+d} gJ (residual {adj:.3e})")
    J.setflags(write=False)
    return CompatibleStructure(
        J=J,
        g=g,
        epsilon=eps,
        compat=Compatibility.ISOMETRY if sigma == 1 else Compatibility.ANTI_ISOMETRY,
        klass=_CELLS[(eps, sigma)],
        square_residual=sq[eps],
        compat_residual=cp[sigma],
        adjoint_residual=adj,
    )


def direct_sum(*parts: CompatibleStructure) -> CompatibleStructure:
    from scipy.linalg import block_diag

    J = block_diag(*[p.J for p in parts])
    g = block_diag(*[p.g.entries for p in parts])
    return classify_structure(J, g)


def conjugate(S: CompatibleStructure, Q) -> CompatibleStructure:
    """Push ``S`` forward along the linear map ``Q``: ``(Q J Q^-1, Q^-T g Q^-1)``."""
    Q = np.asarray(Q, dtype=float)
    Qi = np.linalg.inv(Q)
    g = Qi.T @ S.g.entries @ Qi
    return classify_structure(Q @ S.J @ Qi, 0.5 * (g + g.T), tol=1e-8)


# -- registry ---------------------------------------------------------------


class Provenance(str, Enum):
    PUBLISHED = "published"
    DERIVED = "derived"


@dataclass(frozen=True, eq=False)
class RegistryEntry:
    name: str
    structure: CompatibleStructure
    provenance: Provenance
    description: str
    label: Optional[str] = None  # name the structure was published under, verbatim


def pair_swap(n, pairs):
    J = np.zeros((n, n))
    for i, j in pairs:
        J[i, j] = J[j, i] = 1.0
    return J


def rotation_blocks(n):
    """Block-diagonal ``[[0, -1], [1, 0]]`` on consecutive coordinate pairs."""
    J = np.zeros((n, n))
    for i in range(0, n, 2):
        J[i + 1, i] = 1.0
        J[i, i + 1] = -1.0
    return J


def _build_registry() -> Dict[str, RegistryEntry]:
    J = pair_swap(4, [(0, 1), (2, 3)])
    J1 = pair_swap(4, [(0, 2), (1, 3)])
    g = np.diag([1.0, -1.0, 1.0, -1.0])
    g1 = np.diag([1.0, 1.0, -1.0, -1.0])
    g2 = np.diag([-1.0, 1.0, 1.0, -1.0])
    para = "para Kaehler"

    entries = [
        RegistryEntry("S1", classify_structure(J, g), Provenance.PUBLISHED,
                      "R^4, J swaps (1,2),(3,4), g = diag(1,-1,1,-1)", para),
        RegistryEntry("S2", classify_structure(J1, g1), Provenance.PUBLISHED,
                      "R^4, J1 swaps (1,3),(2,4), g1 = diag(1,1,-1,-1)", para),
        RegistryEntry("S3", classify_structure(J1, g2), Provenance.PUBLISHED,
                      "R^4, J1 with g2 = diag(-1,1,1,-1)", para),
        RegistryEntry("S4", classify_structure(J, g2), Provenance.PUBLISHED,
                      "R^4, J with g2 = diag(-1,1,1,-1)", para),
        RegistryEntry("S5", classify_structure([[0.0, 1.0], [-1.0, 0.0]], np.diag([1.0, -1.0])),
                      Provenance.PUBLISHED, "R^2, J = [[0,1],[-1,0]], g = diag(1,-1)"),
        RegistryEntry("S6", classify_structure(rotation_blocks(4), g), Provenance.DERIVED,
                      "R^4 Norden: rotation blocks on (1,2),(3,4), g = diag(1,-1,1,-1)"),
    ]
    reg = {e.name: e for e in entries}
    reg["S7"] = RegistryEntry("S7", direct_sum(reg["S1"].structure, reg["S1"].structure),
                              Provenance.DERIVED, "R^8 = S1 + S1 (block diagonal)", para)
    reg["S8"] = RegistryEntry("S8", direct_sum(reg["S6"].structure, reg["S6"].structure),
                              Provenance.DERIVED, "R^8 = S6 + S6 (block diagonal)")
    reg["S9"] = RegistryEntry("S9", direct_sum(reg["S4"].structure, reg["S1"].structure),
                              Provenance.DERIVED,
                              "R^8 = S4 + S1; the R^8 structure under which the neutral type-3 "
                              "examples are slant", para)
    # One representative per cell of the compatibility table.
    rot = [[0.0, -1.0], [1.0, 0.0]]
    swap = [[0.0, 1.0], [1.0, 0.0]]
    eye = np.eye(2)
    lor = np.diag([1.0, -1.0])
    for name, Jc, gc, desc in [
        ("AC2", rot, eye, "R^2 almost complex: rotation J, Euclidean g"),
        ("NO2", rot, lor, "R^2 Norden: rotation J, g = diag(1,-1)"),
        ("AP2", swap, eye, "R^2 almost product: swap J, Euclidean g"),
        ("PC2", swap, lor, "R^2 para-complex: swap J, g = diag(1,-1)"),
    ]:
        reg[name] = RegistryEntry(name, classify_structure(Jc, gc), Provenance.DERIVED, desc)
    return reg


_REGISTRY = _build_registry()


def registry():
    return list(_REGISTRY.values())


def lookup(name: str) -> RegistryEntry:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValidationError(f"unknown structure {name!r}; known: {', '.join(_REGISTRY)}") from None


def label_note(entry: RegistryEntry) -> Optional[str]:
    """Flag a published label that disagrees with the computed class."""
    if entry.label is None:
        return None
    S = entry.structure
    if "para" in entry.label.lower() and S.klass is StructureClass.PARA_COMPLEX:
        return (f"published label '{entry.label}' denotes J^2 = +I; this is a "
                f"{S.klass.value} structure, not Norden (J^2 = -I)")
    return f"published label '{entry.label}'; computed class {S.klass.value}"


def load_manifold(doc) -> CompatibleStructure:
    """Resolve a manifold document: a registry key or an inline ``{dim, J, g}``."""
    if isinstance(doc, str):
        return lookup(doc).structure
    if not isinstance(doc, dict):
        raise ValidationError("manifold must be a registry key or an object")
    if "registry" in doc:
        return lookup(doc["registry"]).structure
    missing = [k for k in ("dim", "J", "g") if k not in doc]
    if missing:
        raise ValidationError(f"manifold document missing {missing}")
    try:
        J = np.array(doc["J"], dtype=float)
        g = np.array(doc["g"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"J and g must be numeric matrices: {exc}") from exc
    n = int(doc["dim"])
    if J.shape != (n, n) or g.shape != (n, n):
        raise NotAStructure(f"declared dim {n} but J has shape {J.shape} and g has shape {g.shape}")
    return classify_structure(J, g)
