"""Tangential/normal splitting of J along a submanifold and slant classification.

At each parameter point the Jacobian columns ``B`` span the tangent space.
With ``G = B^T g B`` and a g-orthogonal normal basis ``N``::

    J B = B P + N F          (P: k x k, F: (n-k) x k)
    J N = B t + N f          (t: k x (n-k), f: (n-k) x (n-k))

``J^2 = eps I`` forces ``tF + P^2 = eps I``, ``Ft + f^2 = eps I``,
``FP + fF = 0`` and ``Pt + tf = 0`` for every submanifold. The submanifold is
slant exactly when ``P^2 = lambda I`` with ``lambda`` constant.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from .errors import AllSamplesDegenerate, DegenerateFrame, ToleranceConflict, UnknownParameter, ValidationError
from .semiriemann import (
    CausalCharacter,
    TangentFrame,
    causal_character,
    normal_frame,
    tangent_frame,
)
from .structure import CompatibleStructure

ETA = 1e-7


class SlantType(str, Enum):
    COMPLEX = "complex"
    TOTALLY_REAL = "totally-real"
    TYPE1 = "type1"
    TYPE2 = "type2"
    TYPE3 = "type3"
    NON_SLANT = "non-slant"

    @property
    def proper(self) -> bool:
        return self in (SlantType.TYPE1, SlantType.TYPE2, SlantType.TYPE3)


def type_from_lambda(lam: float, epsilon: int, eta: float = ETA) -> Tuple[SlantType, Optional[float]]:
    """Map a constant ``lambda`` (``P^2 = lambda I``) to a slant type and angle.

    Norden (``epsilon = -1``): lambda = -cosh^2, -cos^2, +sinh^2 for types 1/2/3.
    Para (``epsilon = +1``): lambda = cosh^2, cos^2, -sinh^2.
    Values within ``eta`` of 0 or ``epsilon`` are the totally real and complex
    cases and never get a proper type.
    """
    m = epsilon * lam  # the para-convention value
    if abs(lam) <= eta:
        return SlantType.TOTALLY_REAL, None
    if abs(m - 1.0) <= eta:
        return SlantType.COMPLEX, None
    if m > 1.0:
        return SlantType.TYPE1, math.acosh(math.sqrt(m))
    if m > 0.0:
        return SlantType.TYPE2, math.acos(math.sqrt(m))
    return SlantType.TYPE3, math.asinh(math.sqrt(-m))


# -- pointwise decomposition -------------------------------------------------


@dataclass(frozen=True, eq=False)
class OperatorDecomposition:
    frame: TangentFrame
    P: np.ndarray
    F: np.ndarray  # ambient, n x k: the normal part J B - B P
    N: np.ndarray
    F_normal: np.ndarray  # F in normal-frame coordinates, (n-k) x k
    t: np.ndarray
    f: np.ndarray
    epsilon: int
    reconstruction_residual: float

    @property
    def k(self):
        return self.frame.k


def _project(gram, basis, g, w):
    return np.linalg.solve(gram, basis.T @ g @ w)


def decompose(frame: TangentFrame, S: CompatibleStructure) -> OperatorDecomposition:
    frame.require_nondegenerate()
    g = S.g.entries
    B = frame.B
    JB = S.J @ B
    N = normal_frame(S.g, frame)
    if N.shape[1] and np.iscomplexobj(B):
        N = N.astype(complex)
    P = _project(frame.gram, B, g, JB)
    F = JB - B @ P
    gram_n = N.T @ g @ N
    JN = S.J @ N
    if N.shape[1]:
        F_normal = _project(gram_n, N, g, F)
        t = _project(frame.gram, B, g, JN)
        f = _project(gram_n, N, g, JN)
    else:
        F_normal = np.zeros((0, frame.k), dtype=P.dtype)
        t = np.zeros((frame.k, 0), dtype=P.dtype)
        f = np.zeros((0, 0), dtype=P.dtype)
    scale = max(1.0, float(np.max(np.abs(JB))))
    rec = float(np.max(np.abs(JB - B @ P - N @ F_normal))) / scale
    if N.shape[1]:
        rec = max(rec, float(np.max(np.abs(JN - B @ t - N @ f))) / max(1.0, float(np.max(np.abs(JN)))))
    return OperatorDecomposition(
        frame=frame, P=P, F=F, N=N, F_normal=F_normal, t=t, f=f,
        epsilon=S.epsilon, reconstruction_residual=rec,
    )


def operators_at(imm, S: CompatibleStructure, u) -> OperatorDecomposition:
    """Decompose ``J`` along ``imm`` at parameter point ``u``."""
    if imm.ambient_dim != S.dim:
        raise ValidationError(f"immersion lands in R^{imm.ambient_dim}, structure lives on R^{S.dim}")
    frame = tangent_frame(imm.jacobian(u), S.g, point=u)
    return decompose(frame, S)


def lambda_at(D: OperatorDecomposition) -> Tuple[float, float]:
    """``(trace(P^2)/k, max|P^2 - lambda I|)``; complex rounding folds into the residual."""
    P2 = D.P @ D.P
    lam = np.trace(P2) / D.k
    res = float(np.max(np.abs(P2 - lam * np.eye(D.k))))
    if np.iscomplexobj(lam):
        res = max(res, abs(lam.imag))
        lam = lam.real
    return float(lam), res


def _rel(residual, *terms):
    scale = max([1.0] + [float(np.max(np.abs(t))) if np.size(t) else 0.0 for t in terms])
    return float(np.max(np.abs(residual))) / scale if np.size(residual) else 0.0


@dataclass(frozen=True)
class IdentityReport:
    tangent: float  # |tF + P^2 - eps I|
    normal: float  # |f^2 + Ft - eps I|
    mixed: float  # |FP + fF|
    mixed_dual: float  # |Pt + tf|
    adjoint: float  # |(GP)^T - adjoint_sign GP|
    lam: float
    half_dimensional: bool
    normal_square: Optional[float]  # |f^2 - lambda I|; meaningful when slant and k = n - k
    tangent_normal: Optional[float]  # |tF - (eps - lambda) I|; meaningful when slant

    def exact_ok(self, tol=1e-8) -> bool:
        return max(self.tangent, self.normal, self.mixed, self.mixed_dual, self.adjoint) <= tol

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def identity_checks(D: OperatorDecomposition, S: CompatibleStructure) -> IdentityReport:
    eps = S.epsilon
    P, t, f, Fn = D.P, D.t, D.f, D.F_normal
    k, m = P.shape[0], f.shape[0]
    Ik, Im = np.eye(k), np.eye(m)
    P2 = P @ P
    tF = t @ Fn
    Ft = Fn @ t
    f2 = f @ f
    GP = D.frame.gram @ P
    lam, _ = lambda_at(D)
    half = k == m
    return IdentityReport(
        tangent=_rel(tF + P2 - eps * Ik, tF, P2),
        normal=_rel(f2 + Ft - eps * Im, f2, Ft) if m else 0.0,
        mixed=_rel(Fn @ P + f @ Fn, Fn @ P, f @ Fn) if m else 0.0,
        mixed_dual=_rel(P @ t + t @ f, P @ t, t @ f) if m else 0.0,
        adjoint=_rel(GP.T - S.adjoint_sign * GP, GP),
        lam=lam,
        half_dimensional=half,
        normal_square=_rel(f2 - lam * Im, f2) if half else None,
        tangent_normal=_rel(tF - (eps - lam) * Ik, tF),
    )


def slant_quotient(D: OperatorDecomposition, S: CompatibleStructure, coeffs) -> float:
    """``g(PX, PX) / g(JX, JX)`` for the tangent vector ``X = B @ coeffs``.

    Undefined (raises) when X is light-like, since then ``g(JX, JX) = 0``.
    """
    X = D.frame.B @ np.asarray(coeffs)
    if causal_character(X, S.g) is CausalCharacter.LIGHTLIKE:
        raise DegenerateFrame("slant quotient is undefined for light-like tangent vectors")
    PX = D.frame.B @ (D.P @ np.asarray(coeffs))
    JX = S.J @ X
    return float(S.g.quadratic(PX) / S.g.quadratic(JX))


# -- sampling and classification --------------------------------------------


@dataclass(frozen=True)
class SamplerConfig:
    samples: int = 64
    seed: int = 42
    tol_residual: float = 1e-7
    tol_const: float = 1e-6
    eta: float = ETA
    causal_vectors: int = 20
    max_skip_fraction: float = 0.5

    def validate(self):
        if self.samples < 1:
            raise ValidationError("need at least one sample")
        for name in ("tol_residual", "tol_const", "eta"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive")
        if self.tol_const < 10 * np.finfo(float).eps or self.tol_residual < 10 * np.finfo(float).eps:
            raise ToleranceConflict("tolerances below floating-point resolution cannot be met")
        return self

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def sample_points(domain, count: int, seed: int) -> np.ndarray:
    """Deterministic sample: the largest ``m^k <= count`` cell-centred grid plus seeded uniform fill."""
    k = len(domain)
    lo = np.array([d[0] for d in domain], dtype=float)
    hi = np.array([d[1] for d in domain], dtype=float)
    m = int(math.floor(count ** (1.0 / k) + 1e-9))
    axes = [lo[i] + (np.arange(m) + 0.5) * (hi[i] - lo[i]) / m for i in range(k)]
    grid = np.array(np.meshgrid(*axes, indexing="ij")).reshape(k, -1).T if m else np.zeros((0, k))
    rest = count - grid.shape[0]
    rng = np.random.default_rng(seed)
    extra = lo + rng.random((rest, k)) * (hi - lo)
    return np.vstack([grid, extra])


def _causal_type(sig, k):
    if sig is None:
        return None
    if sig == (k, 0):
        return "space-like"
    if sig == (0, k):
        return "time-like"
    if 2 * sig[0] == k and 2 * sig[1] == k:
        return "neutral"
    return "indefinite"


@dataclass
class SlantClassification:
    structure_class: str
    epsilon: int
    lam: float
    lambda_spread: float
    residual_p2: float
    typetag: SlantType
    theta: Optional[float]
    causal_transfer_ok: Optional[bool]
    neutral_ok: Optional[bool]
    induced_signature: Optional[Tuple[int, int]]
    causal_type: Optional[str]
    samples_used: int
    samples_skipped: int
    seed: int
    p_norm_max: float
    complexified: bool
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        na = "NotApplicable"
        return {
            "structureClass": self.structure_class,
            "epsilon": self.epsilon,
            "lambda": self.lam,
            "lambdaSpread": self.lambda_spread,
            "residualP2": self.residual_p2,
            "type": self.typetag.value,
            "theta": self.theta,
            "causalTransferOk": na if self.causal_transfer_ok is None else self.causal_transfer_ok,
            "neutralOk": na if self.neutral_ok is None else self.neutral_ok,
            "inducedSignature": None if self.induced_signature is None else list(self.induced_signature),
            "causalType": self.causal_type,
            "samplesUsed": self.samples_used,
            "samplesSkipped": self.samples_skipped,
            "seed": self.seed,
            "pNormMax": self.p_norm_max,
            "complexified": self.complexified,
            "notes": list(self.notes),
        }


def _flip(c):
    return CausalCharacter.TIMELIKE if c is CausalCharacter.SPACELIKE else CausalCharacter.SPACELIKE


def _causal_violations(decomps, S, typetag, rng, per_sample):
    checked = bad = 0
    for D in decomps:
        for c in rng.standard_normal((per_sample, D.k)):
            X = D.frame.B @ c
            PX = D.frame.B @ (D.P @ c)
            cx = causal_character(X, S.g)
            cp = causal_character(PX, S.g)
            if CausalCharacter.LIGHTLIKE in (cx, cp):
                continue
            checked += 1
            want = cx if typetag is SlantType.TYPE3 else _flip(cx)
            bad += cp is not want
    return checked, bad


def classify(imm, S: CompatibleStructure, config: SamplerConfig = SamplerConfig()) -> SlantClassification:
    """Sample the parameter domain and decide whether ``imm`` is slant in ``S``."""
    config.validate()
    points = sample_points(imm.domain, config.samples, config.seed)
    decomps, lams, residuals = [], [], []
    skipped = 0
    for u in points:
        try:
            D = operators_at(imm, S, u)
        except DegenerateFrame:
            skipped += 1
            continue
        lam, res = lambda_at(D)
        decomps.append(D)
        lams.append(lam)
        residuals.append(res)
    total = len(points)
    if not decomps:
        raise AllSamplesDegenerate(f"{imm.name}: all {total} samples have degenerate frames")
    if skipped > config.max_skip_fraction * total:
        raise AllSamplesDegenerate(
            f"{imm.name}: {skipped} of {total} samples degenerate (limit {config.max_skip_fraction:.0%})"
        )

    lams = np.array(lams)
    lam = float(np.mean(lams))
    spread = float(np.max(np.abs(lams - lam)))
    residual = float(np.max(residuals))
    p_norm = float(max(np.max(np.abs(D.P)) for D in decomps))
    complexified = any(D.frame.complexified for D in decomps)
    scale = max(1.0, abs(lam))
    notes = []

    if residual > config.tol_residual * scale:
        typetag, theta = SlantType.NON_SLANT, None
        notes.append(f"P^2 is not scalar (residual {residual:.3e})")
    elif spread > config.tol_const * scale:
        typetag, theta = SlantType.NON_SLANT, None
        notes.append(f"lambda varies over the domain (spread {spread:.3e})")
    else:
        typetag, theta = type_from_lambda(lam, S.epsilon, config.eta)
        if typetag is SlantType.TOTALLY_REAL and p_norm > 1e-6:
            typetag = SlantType.NON_SLANT
            notes.append(f"P^2 vanishes but P does not (max |P| = {p_norm:.3e})")

    signature = None if complexified else decomps[0].frame.signature
    if not complexified and any(D.frame.signature != signature for D in decomps):
        notes.append("induced signature changes across the domain")

    causal_ok = neutral_ok = None
    if complexified:
        notes.append("complex coefficients: lambda is the algebraic continuation; causal checks skipped")
    elif typetag.proper:
        rng = np.random.default_rng(config.seed + 1)
        checked, bad = _causal_violations(decomps, S, typetag, rng, config.causal_vectors)
        causal_ok = checked > 0 and bad == 0
        if typetag in (SlantType.TYPE1, SlantType.TYPE2):
            k = imm.k
            neutral_ok = all(2 * D.frame.signature[0] == k and 2 * D.frame.signature[1] == k for D in decomps)

    return SlantClassification(
        structure_class=S.klass.value,
        epsilon=S.epsilon,
        lam=lam,
        lambda_spread=spread,
        residual_p2=residual,
        typetag=typetag,
        theta=theta,
        causal_transfer_ok=causal_ok,
        neutral_ok=neutral_ok,
        induced_signature=signature,
        causal_type=_causal_type(signature, imm.k),
        samples_used=len(decomps),
        samples_skipped=skipped,
        seed=config.seed,
        p_norm_max=p_norm,
        complexified=complexified,
        notes=notes,
    )


# -- parameter sweeps ----------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    value: float
    lam: Optional[float]
    typetag: Optional[SlantType]
    theta: Optional[float]
    residual_p2: Optional[float]
    excluded_reason: Optional[str]

    CSV_HEADER = ("paramValue", "lambda", "type", "theta", "residualP2", "excludedReason")

    def csv_fields(self):
        def num(x):
            return "" if x is None else repr(float(x))

        return (
            repr(float(self.value)),
            num(self.lam),
            "excluded" if self.typetag is None else self.typetag.value,
            num(self.theta),
            num(self.residual_p2),
            self.excluded_reason or "",
        )


def sweep_values(lo: float, hi: float, step: float) -> List[float]:
    if not step > 0 or hi < lo:
        raise ValidationError(f"empty sweep range {lo}:{hi}:{step}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def sweep(entry, param: str, rng: Tuple[float, float, float], fixed=None,
          config: SamplerConfig = SamplerConfig()) -> List[SweepRow]:
    """Classify ``entry`` along a one-parameter family of constants."""
    if param not in entry.parameters:
        raise UnknownParameter(f"{entry.name} has no parameter {param!r}; parameters: {entry.parameters}")
    fixed = dict(fixed or {})
    unknown = set(fixed) - set(entry.parameters)
    if unknown:
        raise UnknownParameter(f"{entry.name} has no parameters {sorted(unknown)}")
    rows = []
    for value in sweep_values(*rng):
        consts = {**entry.defaults, **fixed, param: value}
        reason = entry.excluded(consts)
        if reason is None:
            try:
                c = classify(entry.build(consts), entry.structure, config)
            except (DegenerateFrame, AllSamplesDegenerate) as exc:
                reason = f"degenerate: {exc}"
        if reason is not None:
            rows.append(SweepRow(value, None, None, None, None, reason))
        else:
            rows.append(SweepRow(value, c.lam, c.typetag, c.theta, c.residual_p2, None))
    return rows


def with_tolerances(config: SamplerConfig, **overrides) -> SamplerConfig:
    return replace(config, **{k: v for k, v in overrides.items() if v is not None})
