"""Parametrized immersions ``x: D -> R^n`` over an axis-aligned box ``D``."""

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from . import exprdsl
from .errors import OutOfDomain, ValidationError

FD_STEP = 1e-6
DOMAIN_SLACK = 1e-12


def central_jacobian(f, u, step=FD_STEP):
    """Central-difference Jacobian of ``f`` at ``u`` (columns = partials).

    The step along axis ``i`` is ``step * (1 + |u_i|)``.
    """
    u = np.asarray(u, dtype=float)
    cols = []
    for i in range(u.size):
        h = step * (1.0 + abs(u[i]))
        up = u.copy()
        dn = u.copy()
        up[i] += h
        dn[i] -= h
        cols.append((np.asarray(f(up)) - np.asarray(f(dn))) / (up[i] - dn[i]))
    return np.column_stack(cols)


@dataclass(frozen=True, eq=False)
class Immersion:
    name: str
    variables: Tuple[str, ...]
    ambient_dim: int
    func: Callable[[np.ndarray], np.ndarray]
    domain: Tuple[Tuple[float, float], ...]
    jacobian_func: Optional[Callable[[np.ndarray], np.ndarray]] = None
    fd_step: float = FD_STEP
    constants: Dict[str, float] = field(default_factory=dict)
    components: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if len(self.domain) != self.k:
            raise ValidationError(f"{self.name}: domain has {len(self.domain)} intervals for {self.k} variables")
        for lo, hi in self.domain:
            if not lo < hi:
                raise ValidationError(f"{self.name}: empty domain interval [{lo}, {hi}]")
        if self.k >= self.ambient_dim:
            raise ValidationError(f"{self.name}: need fewer parameters ({self.k}) than ambient dimensions")

    @property
    def k(self) -> int:
        return len(self.variables)

    @property
    def jacobian_kind(self) -> str:
        return "analytic" if self.jacobian_func is not None else f"fd({self.fd_step:g})"

    def _check(self, u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        if u.shape != (self.k,):
            raise ValidationError(f"{self.name}: expected {self.k} parameters, got shape {u.shape}")
        for x, (lo, hi), name in zip(u, self.domain, self.variables):
            if not lo - DOMAIN_SLACK <= x <= hi + DOMAIN_SLACK:
                raise OutOfDomain(f"{self.name}: {name}={x!r} outside [{lo}, {hi}]")
        return u

    def evaluate(self, u):
        return np.asarray(self.func(self._check(u)))

    def jacobian(self, u):
        return self._raw_jacobian(self._check(u))

    def _raw_jacobian(self, u):
        if self.jacobian_func is not None:
            return np.asarray(self.jacobian_func(u))
        return central_jacobian(self.func, u, self.fd_step)

    def reparametrize(self, M, c, domain=None) -> "Immersion":
        """Compose with the affine map ``w -> M w + c``.

        Without an explicit ``domain`` the bounding box of the preimage of the
        current domain is used.
        """
        M = np.asarray(M, dtype=float)
        c = np.asarray(c, dtype=float)
        if domain is None:
            Mi = np.linalg.inv(M)
            corners = np.array(np.meshgrid(*self.domain, indexing="ij")).reshape(self.k, -1)
            pre = Mi @ (corners - c[:, None])
            domain = tuple(zip(pre.min(axis=1), pre.max(axis=1)))
        jac = lambda w: self._raw_jacobian(M @ w + c) @ M
        return Immersion(
            name=f"{self.name}@affine",
            variables=self.variables,
            ambient_dim=self.ambient_dim,
            func=lambda w: self.func(M @ w + c),
            domain=tuple(tuple(map(float, d)) for d in domain),
            jacobian_func=jac,
            constants=dict(self.constants),
        )

    def push_forward(self, Q) -> "Immersion":
        """Compose with the linear ambient map ``Q``."""
        Q = np.asarray(Q, dtype=float)
        return Immersion(
            name=f"{self.name}@Q",
            variables=self.variables,
            ambient_dim=self.ambient_dim,
            func=lambda u: Q @ self.func(u),
            domain=self.domain,
            jacobian_func=lambda u: Q @ self._raw_jacobian(u),
            constants=dict(self.constants),
        )


def evaluate(imm: Immersion, u):
    return imm.evaluate(u)


def jacobian(imm: Immersion, u):
    return imm.jacobian(u)


def from_expressions(
    name: str,
    variables: Sequence[str],
    components: Sequence[str],
    constants: Optional[Dict[str, float]] = None,
    domain: Optional[Sequence[Sequence[float]]] = None,
    fd_step: float = FD_STEP,
) -> Immersion:
    """Build an immersion from DSL component strings (finite-difference Jacobian)."""
    constants = dict(constants or {})
    variables = tuple(variables)
    asts = [exprdsl.parse(text, variables, constants) for text in components]

    def func(u):
        env = dict(constants)
        env.update(zip(variables, map(float, u)))
        return np.array([exprdsl.evaluate(a, env) for a in asts])

    if domain is None:
        domain = [(-1.0, 1.0)] * len(variables)
    return Immersion(
        name=name,
        variables=variables,
        ambient_dim=len(components),
        func=func,
        domain=tuple((float(lo), float(hi)) for lo, hi in domain),
        fd_step=fd_step,
        constants=constants,
        components=tuple(components),
    )


def from_json(doc: dict):
    """Parse an immersion document; returns ``(immersion, structure)``."""
    from .structure import load_manifold

    if not isinstance(doc, dict):
        raise ValidationError("immersion document must be an object")
    for key in ("variables", "components"):
        if key not in doc:
            raise ValidationError(f"immersion document missing {key!r}")
    structure = load_manifold(doc["ambient"]) if "ambient" in doc else None
    jac = doc.get("jacobian", "fd")
    if jac == "fd":
        step = FD_STEP
    elif isinstance(jac, dict) and set(jac) == {"fd"}:
        step = float(jac["fd"])
        if not step > 0:
            raise ValidationError("finite-difference step must be positive")
    else:
        raise ValidationError(f"unsupported jacobian setting {jac!r}; use \"fd\" or {{\"fd\": h}}")
    constants = doc.get("constants", {})
    if not all(isinstance(v, (int, float)) for v in constants.values()):
        raise ValidationError("constants must map names to numbers")
    imm = from_expressions(
        name=doc.get("name", "immersion"),
        variables=doc["variables"],
        components=doc["components"],
        constants={k: float(v) for k, v in constants.items()},
        domain=doc.get("domain"),
        fd_step=step,
    )
    if structure is not None and structure.dim != imm.ambient_dim:
        raise ValidationError(
            f"immersion has {imm.ambient_dim} components but ambient has dimension {structure.dim}"
        )
    return imm, structure

