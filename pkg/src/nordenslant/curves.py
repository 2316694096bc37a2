"""Slant curves in flat structures, with the geodesic-or-invariant check for 2D Norden planes.

For a curve the tangent frame is the single vector ``t = gamma'``, so
``P t = mu t`` with ``mu = g(Jt, t) / g(t, t)`` and ``lambda = mu^2``.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np

from . import exprdsl
from .errors import AllSamplesLightLike, DegenerateFrame, ValidationError
from .semiriemann import CausalCharacter, causal_character, tangent_frame
from .slant import ETA, SlantType, decompose, type_from_lambda
from .structure import CompatibleStructure, Compatibility, StructureClass

FIRST_STEP = 1e-5
# A central second difference with h = 1e-5 carries ~1e-6 roundoff; 1e-4 balances it against h^2.
SECOND_STEP = 1e-4
DISJUNCTION_TOL = 1e-6


def _d1(func, s, h):
    h = h * (1.0 + abs(s))
    return (np.asarray(func(s + h)) - np.asarray(func(s - h))) / (2 * h)


def _d2(func, s, h):
    h = h * (1.0 + abs(s))
    return (np.asarray(func(s + h)) - 2 * np.asarray(func(s)) + np.asarray(func(s - h))) / (h * h)


@dataclass(frozen=True, eq=False)
class Curve:
    name: str
    func: Callable[[float], np.ndarray]
    domain: Tuple[float, float]
    ambient_dim: int
    velocity: Optional[Callable[[float], np.ndarray]] = None
    acceleration: Optional[Callable[[float], np.ndarray]] = None
    samples: int = 64
    variable: str = "s"

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise ValidationError(f"{self.name}: empty curve interval [{lo}, {hi}]")
        if self.samples < 1:
            raise ValidationError("need at least one sample")

    def d1(self, s):
        return np.asarray(self.velocity(s)) if self.velocity else _d1(self.func, s, FIRST_STEP)

    def d2(self, s):
        return np.asarray(self.acceleration(s)) if self.acceleration else _d2(self.func, s, SECOND_STEP)

    def sample_parameters(self, count=None):
        count = count or self.samples
        lo, hi = self.domain
        return lo + (np.arange(count) + 0.5) * (hi - lo) / count

    def reparametrize(self, phi, dphi, ddphi, domain) -> "Curve":
        """``s -> gamma(phi(s))`` with derivatives by the chain rule."""
        return Curve(
            name=f"{self.name}@phi",
            func=lambda s: self.func(phi(s)),
            velocity=lambda s: dphi(s) * self.d1(phi(s)),
            acceleration=lambda s: ddphi(s) * self.d1(phi(s)) + dphi(s) ** 2 * self.d2(phi(s)),
            domain=domain,
            ambient_dim=self.ambient_dim,
            samples=self.samples,
        )


def line(point, direction, domain=(0.0, 1.0), samples=64) -> Curve:
    p = np.asarray(point, dtype=float)
    d = np.asarray(direction, dtype=float)
    return Curve("line", lambda s: p + s * d, domain, p.size,
                 velocity=lambda s: d, acceleration=lambda s: np.zeros_like(d), samples=samples)


def from_expressions(name, variable, components, domain, samples=64, constants=None) -> Curve:
    constants = dict(constants or {})
    asts = [exprdsl.parse(text, [variable], constants) for text in components]

    def func(s):
        env = dict(constants)
        env[variable] = float(s)
        return np.array([exprdsl.evaluate(a, env) for a in asts])

    lo, hi = domain
    return Curve(name, func, (float(lo), float(hi)), len(components), samples=samples, variable=variable)


def curve_from_json(doc):
    """Parse ``{ambient, variable, components, domain, samples}``; returns ``(curve, structure)``."""
    from .structure import load_manifold

    if not isinstance(doc, dict):
        raise ValidationError("curve document must be an object")
    missing = [k for k in ("ambient", "components", "domain") if k not in doc]
    if missing:
        raise ValidationError(f"curve document missing {missing}")
    S = load_manifold(doc["ambient"])
    dom = doc["domain"]
    if not (isinstance(dom, list) and len(dom) == 2):
        raise ValidationError("curve domain must be [lo, hi]")
    c = from_expressions(
        doc.get("name", "curve"),
        doc.get("variable", "s"),
        doc["components"],
        (float(dom[0]), float(dom[1])),
        samples=int(doc.get("samples", 64)),
        constants=doc.get("constants"),
    )
    if c.ambient_dim != S.dim:
        raise ValidationError(f"curve has {c.ambient_dim} components but ambient has dimension {S.dim}")
    return c, S


@dataclass
class CurveReport:
    lambda_profile: List[float]
    lam: float
    lambda_spread: float
    is_slant: bool
    typetag: SlantType
    theta: Optional[float]
    geodesic_residual: float
    invariance_residual: float
    normal_acceleration: List[float]
    collinearity_residual: float
    causal_coherent: bool
    lightlike_skipped: int
    samples_used: int
    notes: List[str] = field(default_factory=list)

    def as_dict(self):
        return {
            "lambdaProfile": self.lambda_profile,
            "lambda": self.lam,
            "lambdaSpread": self.lambda_spread,
            "isSlant": self.is_slant,
            "type": self.typetag.value,
            "theta": self.theta,
            "geodesicResidual": self.geodesic_residual,
            "invarianceResidual": self.invariance_residual,
            "normalAcceleration": self.normal_acceleration,
            "collinearityResidual": self.collinearity_residual,
            "causalCoherent": self.causal_coherent,
            "lightlikeSkipped": self.lightlike_skipped,
            "samplesUsed": self.samples_used,
            "notes": list(self.notes),
        }


def curve_classify(c: Curve, S: CompatibleStructure, tol_const: float = 1e-6, eta: float = ETA) -> CurveReport:
    if S.compat is not Compatibility.ANTI_ISOMETRY:
        raise ValidationError(f"curve analysis needs an anti-isometry structure, got {S.summary()}")
    if c.ambient_dim != S.dim:
        raise ValidationError(f"curve lands in R^{c.ambient_dim}, structure lives on R^{S.dim}")
    g = S.g.entries
    profile, accel = [], []
    geo = inv = col = 0.0
    coherent = True
    skipped = 0
    for s in c.sample_parameters():
        t = c.d1(s)
        cc = causal_character(t, S.g)
        if cc is CausalCharacter.LIGHTLIKE:
            skipped += 1
            continue
        gtt = float(t @ g @ t)
        Jt = S.J @ t
        mu = float(Jt @ g @ t) / gtt
        profile.append(mu * mu)

        # Collinearity: the general splitting must also find P t = mu t.
        try:
            D = decompose(tangent_frame(t[:, None], S.g), S)
        except DegenerateFrame:
            skipped += 1
            profile.pop()
            continue
        tn = float(np.linalg.norm(t))
        col = max(col, abs(float(D.P[0, 0]) - mu), D.reconstruction_residual)
        Ft = Jt - mu * t
        inv = max(inv, float(np.linalg.norm(Ft)) / tn)

        a = c.d2(s)
        h = a - (float(a @ g @ t) / gtt) * t
        accel.append(float(np.linalg.norm(h)))
        geo = max(geo, accel[-1] / (tn * tn))

        Pt = mu * t
        if abs(mu) * tn > 1e-12:
            coherent &= causal_character(Pt, S.g) is cc

    if not profile:
        raise AllSamplesLightLike(f"{c.name}: every sampled tangent is light-like")
    lams = np.array(profile)
    lam = float(np.mean(lams))
    spread = float(np.max(np.abs(lams - lam)))
    notes = []
    is_slant = spread <= tol_const * max(1.0, abs(lam))
    if not is_slant:
        typetag, theta = SlantType.NON_SLANT, None
    else:
        typetag, theta = type_from_lambda(lam, S.epsilon, eta)
        if typetag in (SlantType.TYPE1, SlantType.TYPE2, SlantType.COMPLEX):
            notes.append(f"curve classified {typetag.value}: contradicts the type-3-only property")
    if skipped:
        notes.append(f"{skipped} light-like or degenerate samples skipped")
    return CurveReport(
        lambda_profile=[float(x) for x in lams],
        lam=lam,
        lambda_spread=spread,
        is_slant=is_slant,
        typetag=typetag,
        theta=theta,
        geodesic_residual=geo,
        invariance_residual=inv,
        normal_acceleration=accel,
        collinearity_residual=col,
        causal_coherent=bool(coherent),
        lightlike_skipped=skipped,
        samples_used=len(profile),
        notes=notes,
    )


class Verdict(str, Enum):
    GEODESIC = "geodesic"
    INVARIANT = "invariant"
    NOT_APPLICABLE = "not-applicable"
    VIOLATION = "violation"


def geodesic_or_invariant_check(c: Curve, S: CompatibleStructure, tol: float = DISJUNCTION_TOL) -> Tuple[Verdict, CurveReport]:
    """A type-3 slant curve in a 2D Norden plane must be a geodesic or invariant."""
    if S.dim != 2 or S.klass is not StructureClass.NORDEN:
        raise ValidationError(f"geodesic-or-invariant check needs a 2D Norden structure, got {S.summary()}")
    rep = curve_classify(c, S)
    if not rep.is_slant or rep.typetag is not SlantType.TYPE3:
        return Verdict.NOT_APPLICABLE, rep
    if rep.geodesic_residual <= tol:
        return Verdict.GEODESIC, rep
    if rep.invariance_residual <= tol:
        return Verdict.INVARIANT, rep
    return Verdict.VIOLATION, rep


def random_cubic(rng, dim=2, straight=False) -> Curve:
    """A random cubic; with ``straight`` it runs along one line at non-constant speed."""
    c = rng.normal(size=(4, dim))
    if straight:
        d = c[1]
        coef = rng.normal(size=3)
        coef[0] = abs(coef[0]) + 1.0  # keep the speed away from zero on [0, 1]
        c = np.vstack([c[0], coef[0] * d, coef[1] * 0.2 * d, coef[2] * 0.05 * d])
    func = lambda s: c[0] + s * c[1] + s * s * c[2] + s ** 3 * c[3]
    vel = lambda s: c[1] + 2 * s * c[2] + 3 * s * s * c[3]
    acc = lambda s: 2 * c[2] + 6 * s * c[3]
    return Curve("cubic", func, (0.0, 1.0), dim, velocity=vel, acceleration=acc)


def slant_angle_of_direction(direction, S: CompatibleStructure) -> float:
    """``arcsinh |mu|`` for a constant direction in a Norden plane."""
    d = np.asarray(direction, dtype=float)
    g = S.g.entries
    mu = float((S.J @ d) @ g @ d) / float(d @ g @ d)
    return math.asinh(abs(mu))
