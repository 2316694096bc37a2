"""Example immersions with closed-form ``lambda`` and type oracles.

Each entry carries its component strings (DSL form) next to hand-written
numpy closures and Jacobians; the two must agree. ``published_*`` holds the
claim as printed, ``expected_*`` the internally consistent oracle. They
coincide except where the printed claim is known to be wrong, and entries
flagged ``known_inconsistent`` pass only if the printed claim fails.

Coefficients of the form ``sqrt(1 - sinh(theta)^2)`` go complex for large
``theta``; the closures then use the principal complex root and the engine
computes the algebraic continuation of ``lambda`` (see ``complexified`` in
the classification report).
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .immersion import Immersion, from_expressions
from .slant import SamplerConfig, SlantClassification, SlantType, classify, type_from_lambda
from .structure import CompatibleStructure, Provenance, lookup

LAMBDA_RTOL = 1e-8
CONSTRAINT_TOL = 1e-9

Consts = Dict[str, float]


@dataclass(frozen=True, eq=False)
class GalleryEntry:
    name: str
    structure_name: str
    description: str
    variables: Tuple[str, ...]
    components: Tuple[str, ...]
    defaults: Consts
    ranges: Dict[str, Tuple[float, float]]
    matrix: Optional[Callable[[Consts], np.ndarray]] = None  # linear entries: x(u) = A u
    closure: Optional[Callable[[Consts], Tuple[Callable, Callable]]] = None
    expected_lambda: Optional[Callable[[Consts], float]] = None
    expected_type: Optional[Callable[[Consts], SlantType]] = None
    expected_theta: Optional[Callable[[Consts], float]] = None
    published_lambda: Optional[Callable[[Consts], float]] = None
    published_type: Optional[Callable[[Consts], SlantType]] = None
    constraint: Callable[[Consts], Optional[str]] = lambda c: None
    margin: Callable[[Consts], bool] = lambda c: True
    provenance: Dict[str, Provenance] = field(default_factory=dict)
    known_inconsistent: bool = False
    enabled: bool = True
    disabled_reason: Optional[str] = None
    domain: Optional[Tuple[Tuple[float, float], ...]] = None

    @property
    def parameters(self) -> Tuple[str, ...]:
        return tuple(self.defaults)

    @property
    def structure(self) -> CompatibleStructure:
        return lookup(self.structure_name).structure

    def excluded(self, consts: Consts) -> Optional[str]:
        return self.constraint(consts)

    def _domain(self):
        return self.domain or tuple((-1.0, 1.0) for _ in self.variables)

    def build(self, consts: Optional[Consts] = None) -> Immersion:
        c = {**self.defaults, **(consts or {})}
        if self.matrix is not None:
            A = np.asarray(self.matrix(c))
            func, jac = (lambda u: A @ u), (lambda u: A)
        else:
            func, jac = self.closure(c)
        return Immersion(
            name=self.name,
            variables=self.variables,
            ambient_dim=len(self.components),
            func=func,
            jacobian_func=jac,
            domain=self._domain(),
            constants=c,
            components=self.components,
        )

    def build_dsl(self, consts: Optional[Consts] = None) -> Immersion:
        c = {**self.defaults, **(consts or {})}
        return from_expressions(self.name, self.variables, self.components, c, self._domain())

    def random_constants(self, rng, tries=10_000) -> Consts:
        for _ in range(tries):
            c = {name: float(rng.uniform(*self.ranges[name])) for name in self.parameters}
            if self.constraint(c) is None and self.margin(c):
                return c
        raise RuntimeError(f"{self.name}: no admissible constants found")

    def run(self, consts: Optional[Consts] = None, config: SamplerConfig = SamplerConfig()) -> "GalleryResult":
        c = {**self.defaults, **(consts or {})}
        result = classify(self.build(c), self.structure, config)
        return GalleryResult.judge(self, c, result)


@dataclass
class GalleryResult:
    entry: str
    constants: Consts
    classification: SlantClassification
    expected_lambda: Optional[float]
    expected_type: Optional[SlantType]
    expected_theta: Optional[float]
    published_lambda: Optional[float]
    published_type: Optional[SlantType]
    failures: List[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    @classmethod
    def judge(cls, entry: GalleryEntry, c: Consts, res: SlantClassification) -> "GalleryResult":
        fails = []
        exp_l = entry.expected_lambda(c) if entry.expected_lambda else None
        exp_t = entry.expected_type(c) if entry.expected_type else None
        exp_th = entry.expected_theta(c) if entry.expected_theta else None
        pub_l = entry.published_lambda(c) if entry.published_lambda else None
        pub_t = entry.published_type(c) if entry.published_type else None
        if res.typetag is SlantType.NON_SLANT:
            fails.append("classified non-slant")
        if exp_l is not None and abs(res.lam - exp_l) > LAMBDA_RTOL * max(1.0, abs(exp_l)):
            fails.append(f"lambda {res.lam!r} != expected {exp_l!r}")
        if exp_t is not None and res.typetag is not exp_t:
            fails.append(f"type {res.typetag.value} != expected {exp_t.value}")
        if exp_th is not None and (res.theta is None or abs(res.theta - exp_th) > LAMBDA_RTOL * max(1.0, exp_th)):
            fails.append(f"theta {res.theta!r} != expected {exp_th!r}")
        if entry.known_inconsistent and pub_l is not None:
            if abs(res.lam - pub_l) <= 1e-6 * max(1.0, abs(pub_l)):
                fails.append(f"printed lambda {pub_l!r} was expected to fail but matched")
        return cls(entry.name, dict(c), res, exp_l, exp_t, exp_th, pub_l, pub_t, fails)

    def as_dict(self) -> dict:
        t = lambda x: None if x is None else x.value
        return {
            "entry": self.entry,
            "constants": self.constants,
            "status": "PASS" if self.passed else "FAIL",
            "failures": self.failures,
            "expectedLambda": self.expected_lambda,
            "expectedType": t(self.expected_type),
            "expectedTheta": self.expected_theta,
            "publishedLambda": self.published_lambda,
            "publishedType": t(self.published_type),
            "classification": self.classification.as_dict(),
        }


# -- helpers -----------------------------------------------------------------


def _sqrt(x):
    return np.emath.sqrt(x)


def _near(x, y, tol):
    return abs(x - y) <= tol


def _lam_type(eps):
    def f(lam_fn):
        return lambda c: type_from_lambda(lam_fn(c), eps)[0]

    return f


def _g04_lambda(a, b2):
    return a * a / (-1.0 + a * a + b2)


def _g04_matrix(a, b):
    return np.array([[a, 0], [0, 1], [b, 0], [1, 0]], dtype=complex if np.iscomplexobj(b) else float)


def _g11_matrix(a, b):
    return np.array([[1, 0], [0, a], [0, b], [0, 1]], dtype=float)


def _cat_strip(c):
    k = c["k"]

    def func(x):
        u, v = x
        return np.array([u, k * math.cosh(v), v, k * math.sinh(v)])

    def jac(x):
        _, v = x
        return np.array([[1.0, 0.0], [0.0, k * math.sinh(v)], [0.0, 1.0], [0.0, k * math.cosh(v)]])

    return func, jac


def _exp_family(pu, qv):
    """``x_i = e^{k u} p_i(u) q_i(v)`` with ``pu``/``qv`` lists of (f, f') pairs."""

    def build(c):
        k = c["k"]

        def func(x):
            u, v = x
            e = math.exp(k * u)
            return np.array([e * p(u) * q(v) for (p, _), (q, _) in zip(pu, qv)])

        def jac(x):
            u, v = x
            e = math.exp(k * u)
            du = [e * (k * p(u) + dp(u)) * q(v) for (p, dp), (q, _) in zip(pu, qv)]
            dv = [e * p(u) * dq(v) for (p, _), (_, dq) in zip(pu, qv)]
            return np.column_stack([du, dv])

        return func, jac

    return build


_COS = (math.cos, lambda x: -math.sin(x))
_SIN = (math.sin, math.cos)
_COSH = (math.cosh, math.sinh)
_SINH = (math.sinh, math.cosh)


def _margin_lambda(lam_fn, eps, gap=0.02):
    """Keep random constants away from the totally real / complex boundaries."""

    def ok(c):
        lam = lam_fn(c)
        return abs(lam) > gap and abs(eps * lam - 1.0) > gap and abs(lam) < 1e4

    return ok


def _regions_g04(c):
    a2, b2 = c["a"] ** 2, c["b"] ** 2
    if a2 + b2 > 1 and b2 < 1:
        return SlantType.TYPE1
    if a2 + b2 > 1 and b2 > 1:
        return SlantType.TYPE2
    return SlantType.TYPE3


def _regions_g11a(c):
    a2, b2 = c["a"] ** 2, c["b"] ** 2
    if a2 - b2 < 1 and a2 > 1:
        return SlantType.TYPE1
    if a2 - b2 < 1 and a2 < 1:
        return SlantType.TYPE2
    return SlantType.TYPE3


def _regions_g11b_printed(c):
    a2, b2 = c["a"] ** 2, c["b"] ** 2
    if b2 - a2 < 1 and a2 > 1:
        return SlantType.TYPE1
    if b2 - a2 < 1 and a2 < 1:
        return SlantType.TYPE2
    return SlantType.TYPE3


def _regions_g11b(c):
    # lambda = a^2/(1 + a^2 - b^2) exceeds 1 iff b^2 > 1 on the region b^2 - a^2 < 1.
    a2, b2 = c["a"] ** 2, c["b"] ** 2
    if b2 - a2 < 1 and b2 > 1:
        return SlantType.TYPE1
    if b2 - a2 < 1 and b2 < 1:
        return SlantType.TYPE2
    return SlantType.TYPE3


def _away(value, points, gap):
    return all(abs(value - p) > gap for p in points)


# -- the entries -------------------------------------------------------------


def _entries() -> List[GalleryEntry]:
    P, D = Provenance.PUBLISHED, Provenance.DERIVED
    para = _lam_type(+1)
    norden = _lam_type(-1)
    uv = ("u", "v")
    out = []

    lam01 = lambda c: math.cos(c["a"] - c["b"]) ** 2
    out.append(GalleryEntry(
        "G01", "S1", "(u sin a, v sin b, u cos a, v cos b)", uv,
        ("u*sin(a)", "v*sin(b)", "u*cos(a)", "v*cos(b)"),
        {"a": 0.9, "b": 0.2}, {"a": (-math.pi, math.pi), "b": (-math.pi, math.pi)},
        matrix=lambda c: np.array([[math.sin(c["a"]), 0], [0, math.sin(c["b"])],
                                   [math.cos(c["a"]), 0], [0, math.cos(c["b"])]]),
        expected_lambda=lam01, published_lambda=lam01,
        expected_type=para(lam01), published_type=lambda c: SlantType.TYPE2,
        margin=_margin_lambda(lam01, 1),
        provenance={"lambda": P, "type": P},
    ))

    lam02 = lambda c: math.cosh(c["a"] + c["b"]) ** 2 / (math.cosh(2 * c["a"]) * math.cosh(2 * c["b"]))
    out.append(GalleryEntry(
        "G02", "S1", "(u sinh a, v sinh b, u cosh a, v cosh b)", uv,
        ("u*sinh(a)", "v*sinh(b)", "u*cosh(a)", "v*cosh(b)"),
        {"a": 0.7, "b": -0.3}, {"a": (-1.5, 1.5), "b": (-1.5, 1.5)},
        matrix=lambda c: np.array([[math.sinh(c["a"]), 0], [0, math.sinh(c["b"])],
                                   [math.cosh(c["a"]), 0], [0, math.cosh(c["b"])]]),
        expected_lambda=lam02, published_lambda=lam02,
        expected_type=para(lam02), published_type=lambda c: SlantType.TYPE2,
        margin=_margin_lambda(lam02, 1),
        provenance={"lambda": P, "type": P},
    ))

    lam03 = lambda c: (c["a"] + c["b"]) ** 2 / (2 * (c["a"] ** 2 + c["b"] ** 2))
    out.append(GalleryEntry(
        "G03", "S1", "(a u, v, b u, v)", uv, ("a*u", "v", "b*u", "v"),
        {"a": 1.5, "b": 0.5}, {"a": (-3.0, 3.0), "b": (-3.0, 3.0)},
        matrix=lambda c: np.array([[c["a"], 0], [0, 1], [c["b"], 0], [0, 1]], dtype=float),
        expected_lambda=lam03, published_lambda=lam03,
        expected_type=para(lam03), published_type=lambda c: SlantType.TYPE2,
        constraint=lambda c: "a^2 + b^2 = 0" if c["a"] ** 2 + c["b"] ** 2 <= CONSTRAINT_TOL else None,
        margin=_margin_lambda(lam03, 1),
        provenance={"lambda": P, "type": P},
    ))

    lam04 = lambda c: _g04_lambda(c["a"], c["b"] ** 2)
    out.append(GalleryEntry(
        "G04", "S1", "(a u, v, b u, u)", uv, ("a*u", "v", "b*u", "u"),
        {"a": 2.0, "b": 0.0}, {"a": (-3.0, 3.0), "b": (-3.0, 3.0)},
        matrix=lambda c: _g04_matrix(c["a"], c["b"]),
        expected_lambda=lam04, published_lambda=lam04,
        expected_type=_regions_g04, published_type=_regions_g04,
        constraint=lambda c: ("a^2 + b^2 = 1" if _near(c["a"] ** 2 + c["b"] ** 2, 1.0, CONSTRAINT_TOL)
                              else None),
        margin=lambda c: (_away(c["a"] ** 2 + c["b"] ** 2, [1.0], 0.05) and _away(c["b"] ** 2, [1.0], 0.05)
                          and abs(c["a"]) > 0.1),
        provenance={"lambda": P, "type": P},
    ))

    theta_pos = {"theta": (0.05, 0.85)}
    lam05 = lambda c: math.cosh(c["theta"]) ** 2
    out.append(GalleryEntry(
        "G05", "S1", "(u cosh t, v, u sqrt(1 - sinh^2 t), u): type 1 with slant angle t", uv,
        ("u*cosh(theta)", "v", "u*sqrt(1 - sinh(theta)^2)", "u"),
        {"theta": 0.5}, theta_pos,
        matrix=lambda c: _g04_matrix(math.cosh(c["theta"]), _sqrt(1 - math.sinh(c["theta"]) ** 2)),
        expected_lambda=lam05, published_lambda=lam05,
        expected_type=lambda c: SlantType.TYPE1, published_type=lambda c: SlantType.TYPE1,
        expected_theta=lambda c: c["theta"],
        constraint=lambda c: None if c["theta"] > 0 else "theta must be positive",
        provenance={"lambda": D, "type": P},
    ))
    lam05p = lambda c: math.cosh(c["theta"]) ** 4 / (math.cosh(c["theta"]) ** 4 - math.sinh(c["theta"]) ** 2)
    out.append(GalleryEntry(
        "G05p", "S1", "printed form (u cosh^2 t, v, u sqrt(1 - sinh^2 t), u)", uv,
        ("u*cosh(theta)^2", "v", "u*sqrt(1 - sinh(theta)^2)", "u"),
        {"theta": 0.5}, theta_pos,
        matrix=lambda c: _g04_matrix(math.cosh(c["theta"]) ** 2, _sqrt(1 - math.sinh(c["theta"]) ** 2)),
        expected_lambda=lam05p, published_lambda=lam05,
        expected_type=para(lam05p), published_type=lambda c: SlantType.TYPE1,
        constraint=lambda c: None if c["theta"] > 0 else "theta must be positive",
        provenance={"lambda": D, "type": P},
        known_inconsistent=True,
    ))

    theta_acute = {"theta": (0.05, math.pi / 2 - 0.05)}
    lam06 = lambda c: math.cos(c["theta"]) ** 2
    out.append(GalleryEntry(
        "G06", "S1", "(u cos t, v, u sqrt(sin^2 t + 1), u): type 2 with slant angle t", uv,
        ("u*cos(theta)", "v", "u*sqrt(sin(theta)^2 + 1)", "u"),
        {"theta": 0.6}, theta_acute,
        matrix=lambda c: _g04_matrix(math.cos(c["theta"]), math.sqrt(math.sin(c["theta"]) ** 2 + 1)),
        expected_lambda=lam06, published_lambda=lam06,
        expected_type=lambda c: SlantType.TYPE2, published_type=lambda c: SlantType.TYPE2,
        expected_theta=lambda c: c["theta"],
        constraint=lambda c: None if 0 < c["theta"] < math.pi / 2 else "theta outside (0, pi/2)",
        provenance={"lambda": D, "type": P},
    ))
    lam06p = lambda c: math.cos(c["theta"]) ** 4 / (math.cos(c["theta"]) ** 4 + math.sin(c["theta"]) ** 2)
    out.append(GalleryEntry(
        "G06p", "S1", "printed form (u cos^2 t, v, u sqrt(sin^2 t + 1), u)", uv,
        ("u*cos(theta)^2", "v", "u*sqrt(sin(theta)^2 + 1)", "u"),
        {"theta": 0.6}, theta_acute,
        matrix=lambda c: _g04_matrix(math.cos(c["theta"]) ** 2, math.sqrt(math.sin(c["theta"]) ** 2 + 1)),
        expected_lambda=lam06p, published_lambda=lam06,
        expected_type=para(lam06p), published_type=lambda c: SlantType.TYPE2,
        constraint=lambda c: None if 0 < c["theta"] < math.pi / 2 else "theta outside (0, pi/2)",
        provenance={"lambda": D, "type": P},
        known_inconsistent=True,
    ))

    neg_radicand = "the radicand 1 - cosh^2(theta) is negative for every theta > 0"
    lam07 = lambda c: -math.sinh(c["theta"]) ** 2
    out.append(GalleryEntry(
        "G07", "S1", "(u sinh t, v, u sqrt(1 - cosh^2 t), u): intended type 3 with slant angle t", uv,
        ("u*sinh(theta)", "v", "u*sqrt(1 - cosh(theta)^2)", "u"),
        {"theta": 0.5}, {"theta": (0.05, 2.0)},
        matrix=lambda c: _g04_matrix(math.sinh(c["theta"]), _sqrt(1 - math.cosh(c["theta"]) ** 2)),
        expected_lambda=lam07, published_lambda=lam07,
        expected_type=lambda c: SlantType.TYPE3, published_type=lambda c: SlantType.TYPE3,
        expected_theta=lambda c: c["theta"],
        constraint=lambda c: None if c["theta"] > 0 else "theta must be positive",
        provenance={"lambda": D, "type": P},
        enabled=False, disabled_reason=neg_radicand,
    ))
    lam07p = lambda c: math.sinh(c["theta"]) ** 4 / (math.sinh(c["theta"]) ** 4 - math.cosh(c["theta"]) ** 2)
    out.append(GalleryEntry(
        "G07p", "S1", "printed form (u sinh^2 t, v, u sqrt(1 - cosh^2 t), u)", uv,
        ("u*sinh(theta)^2", "v", "u*sqrt(1 - cosh(theta)^2)", "u"),
        {"theta": 0.5}, {"theta": (0.05, 2.0)},
        matrix=lambda c: _g04_matrix(math.sinh(c["theta"]) ** 2, _sqrt(1 - math.cosh(c["theta"]) ** 2)),
        expected_lambda=lam07p, published_lambda=lam07,
        expected_type=para(lam07p), published_type=lambda c: SlantType.TYPE3,
        constraint=lambda c: None if c["theta"] > 0 else "theta must be positive",
        provenance={"lambda": D, "type": P},
        known_inconsistent=True, enabled=False, disabled_reason=neg_radicand,
    ))

    lam08 = lambda c: 1.0 / (c["k"] ** 2 + 1)
    out.append(GalleryEntry(
        "G08", "S2", "(u, k cosh v, v, k sinh v)", uv, ("u", "k*cosh(v)", "v", "k*sinh(v)"),
        {"k": 1.0}, {"k": (-3.0, 3.0)},
        closure=_cat_strip,
        expected_lambda=lam08, published_lambda=lam08,
        expected_type=para(lam08), published_type=lambda c: SlantType.TYPE2,
        margin=_margin_lambda(lam08, 1),
        provenance={"lambda": P, "type": P},
    ))

    lam09 = lambda c: c["k"] ** 2 / (1 + c["k"] ** 2)
    out.append(GalleryEntry(
        "G09", "S2", "e^{ku}(cos u cosh v, sin u cosh v, cos u sinh v, sin u sinh v)", uv,
        ("exp(k*u)*cos(u)*cosh(v)", "exp(k*u)*sin(u)*cosh(v)",
         "exp(k*u)*cos(u)*sinh(v)", "exp(k*u)*sin(u)*sinh(v)"),
        {"k": 0.5}, {"k": (-2.0, 2.0)},
        closure=_exp_family([_COS, _SIN, _COS, _SIN], [_COSH, _COSH, _SINH, _SINH]),
        expected_lambda=lam09, published_lambda=lam09,
        expected_type=para(lam09), published_type=lambda c: SlantType.TYPE2,
        constraint=lambda c: "k = 0" if abs(c["k"]) <= CONSTRAINT_TOL else None,
        margin=_margin_lambda(lam09, 1),
        provenance={"lambda": P, "type": P},
    ))

    out.append(GalleryEntry(
        "G10", "S1", "e^{ku}(cosh u cos v, sinh u cos v, cosh u sin v, sinh u sin v): totally real", uv,
        ("exp(k*u)*cosh(u)*cos(v)", "exp(k*u)*sinh(u)*cos(v)",
         "exp(k*u)*cosh(u)*sin(v)", "exp(k*u)*sinh(u)*sin(v)"),
        {"k": 0.5}, {"k": (-2.0, 2.0)},
        closure=_exp_family([_COSH, _SINH, _COSH, _SINH], [_COS, _COS, _SIN, _SIN]),
        expected_lambda=lambda c: 0.0, published_lambda=lambda c: 0.0,
        expected_type=lambda c: SlantType.TOTALLY_REAL, published_type=lambda c: SlantType.TOTALLY_REAL,
        provenance={"lambda": P, "type": P},
    ))

    lam11a = lambda c: c["b"] ** 2 / (1 - c["a"] ** 2 + c["b"] ** 2)
    out.append(GalleryEntry(
        "G11a", "S2", "(u, a v, b v, v) in (J1, g1)", uv, ("u", "a*v", "b*v", "v"),
        {"a": 1.5, "b": 1.5}, {"a": (-3.0, 3.0), "b": (-3.0, 3.0)},
        matrix=lambda c: _g11_matrix(c["a"], c["b"]),
        expected_lambda=lam11a, published_lambda=lam11a,
        expected_type=_regions_g11a, published_type=_regions_g11a,
        constraint=lambda c: ("a^2 - b^2 = 1" if _near(c["a"] ** 2 - c["b"] ** 2, 1.0, CONSTRAINT_TOL)
                              else None),
        margin=lambda c: (_away(c["a"] ** 2 - c["b"] ** 2, [1.0], 0.05) and _away(c["a"] ** 2, [1.0], 0.05)
                          and abs(c["b"]) > 0.1),
        provenance={"lambda": P, "type": P},
    ))
    lam11b = lambda c: c["a"] ** 2 / (1 + c["a"] ** 2 - c["b"] ** 2)
    out.append(GalleryEntry(
        "G11b", "S1", "(u, a v, b v, v) in (J, g)", uv, ("u", "a*v", "b*v", "v"),
        {"a": 2.0, "b": 1.5}, {"a": (-3.0, 3.0), "b": (-3.0, 3.0)},
        matrix=lambda c: _g11_matrix(c["a"], c["b"]),
        expected_lambda=lam11b, published_lambda=lam11b,
        expected_type=_regions_g11b, published_type=_regions_g11b_printed,
        constraint=lambda c: ("b^2 - a^2 = 1" if _near(c["b"] ** 2 - c["a"] ** 2, 1.0, CONSTRAINT_TOL)
                              else None),
        margin=lambda c: (_away(c["b"] ** 2 - c["a"] ** 2, [1.0], 0.05) and _away(c["b"] ** 2, [1.0], 0.05)
                          and abs(c["a"]) > 0.1),
        provenance={"lambda": P, "type": D},
    ))

    lam12 = lambda c: 1.0 / (1 - c["k"] ** 2)
    out.append(GalleryEntry(
        "G12", "S3", "(u, k cosh v, v, k sinh v) in (J1, g2): time-like type 3", uv,
        ("u", "k*cosh(v)", "v", "k*sinh(v)"),
        {"k": 2.0}, {"k": (1.05, 3.0)},
        closure=_cat_strip,
        expected_lambda=lam12, published_lambda=lam12,
        expected_type=lambda c: SlantType.TYPE3, published_type=lambda c: SlantType.TYPE3,
        constraint=lambda c: None if c["k"] > 1 else "requires k > 1",
        provenance={"lambda": P, "type": P},
    ))

    lam13 = lambda c: c["k"] ** 2 / (c["k"] ** 2 - 1)
    out.append(GalleryEntry(
        "G13", "S3", "e^{ku}(cosh u cosh v, sinh u cosh v, cosh u sinh v, sinh u sinh v) in (J1, g2)", uv,
        ("exp(k*u)*cosh(u)*cosh(v)", "exp(k*u)*sinh(u)*cosh(v)",
         "exp(k*u)*cosh(u)*sinh(v)", "exp(k*u)*sinh(u)*sinh(v)"),
        {"k": 2.0}, {"k": (0.1, 3.0)},
        closure=_exp_family([_COSH, _SINH, _COSH, _SINH], [_COSH, _COSH, _SINH, _SINH]),
        expected_lambda=lam13, published_lambda=lam13,
        expected_type=lambda c: SlantType.TYPE1 if c["k"] > 1 else SlantType.TYPE3,
        published_type=lambda c: SlantType.TYPE1 if c["k"] > 1 else SlantType.TYPE3,
        constraint=lambda c: ("k^2 = 1" if _near(c["k"] ** 2, 1.0, CONSTRAINT_TOL)
                              else "k = 0" if abs(c["k"]) <= CONSTRAINT_TOL else None),
        margin=lambda c: _away(c["k"], [1.0], 0.05) and c["k"] > 0.1,
        provenance={"lambda": P, "type": P},
    ))

    uvzt = ("u", "v", "z", "t")
    ex4 = tuple((-1.0, 1.0) for _ in range(4))

    def _block8(a, b, c2):
        A = np.zeros((8, 4), dtype=complex if np.iscomplexobj(b) or np.iscomplexobj(c2) else float)
        A[0, 0] = 1
        A[1:4, 1] = (a, b, 1)
        A[4, 2] = 1
        A[5:8, 3] = (a, c2, 1)
        return A

    lam14 = lambda c: _g04_lambda(c["a"], c["b"] ** 2)
    out.append(GalleryEntry(
        "G14", "S9", "(u, a v, b v, v, z, a t, sqrt(2 - b^2) t, t): neutral type 3", uvzt,
        ("u", "a*v", "b*v", "v", "z", "a*t", "sqrt(2 - b^2)*t", "t"),
        {"a": 0.5, "b": 0.4}, {"a": (-1.0, 1.0), "b": (-1.0, 1.0)},
        matrix=lambda c: _block8(c["a"], c["b"], math.sqrt(2 - c["b"] ** 2)),
        expected_lambda=lam14, published_lambda=lam14,
        expected_type=lambda c: SlantType.TYPE3, published_type=lambda c: SlantType.TYPE3,
        constraint=lambda c: None if c["a"] ** 2 + c["b"] ** 2 < 1 else "requires a^2 + b^2 < 1",
        margin=lambda c: c["a"] ** 2 + c["b"] ** 2 < 0.95 and abs(c["a"]) > 0.1,
        provenance={"lambda": P, "type": P},
        domain=ex4,
    ))

    lam15 = lambda c: -math.sinh(c["theta"]) ** 2
    out.append(GalleryEntry(
        "G15", "S9", "(u, sinh t v, sqrt(1 - cosh^2 t) v, v, z, sinh t t', sqrt(1 + cosh^2 t) t', t')", uvzt,
        ("u", "sinh(theta)*v", "sqrt(1 - cosh(theta)^2)*v", "v",
         "z", "sinh(theta)*t", "sqrt(1 + cosh(theta)^2)*t", "t"),
        {"theta": 0.5}, {"theta": (0.05, 2.0)},
        matrix=lambda c: _block8(math.sinh(c["theta"]), _sqrt(1 - math.cosh(c["theta"]) ** 2),
                                 math.sqrt(1 + math.cosh(c["theta"]) ** 2)),
        expected_lambda=lam15, published_lambda=lam15,
        expected_type=lambda c: SlantType.TYPE3, published_type=lambda c: SlantType.TYPE3,
        expected_theta=lambda c: c["theta"],
        constraint=lambda c: None if c["theta"] > 0 else "theta must be positive",
        provenance={"lambda": D, "type": P},
        enabled=False, disabled_reason=neg_radicand, domain=ex4,
    ))
    lam15p = lambda c: math.sinh(c["theta"]) ** 4 / (math.sinh(c["theta"]) ** 4 - math.cosh(c["theta"]) ** 2)
    out.append(GalleryEntry(
        "G15p", "S9", "printed form of G15 with sinh^2 t coefficients", uvzt,
        ("u", "sinh(theta)^2*v", "sqrt(1 - cosh(theta)^2)*v", "v",
         "z", "sinh(theta)^2*t", "sqrt(1 + cosh(theta)^2)*t", "t"),
        {"theta": 0.5}, {"theta": (0.05, 2.0)},
        matrix=lambda c: _block8(math.sinh(c["theta"]) ** 2, _sqrt(1 - math.cosh(c["theta"]) ** 2),
                                 math.sqrt(1 + math.cosh(c["theta"]) ** 2)),
        expected_lambda=lam15p, published_lambda=lam15,
        expected_type=para(lam15p), published_type=lambda c: SlantType.TYPE3,
        constraint=lambda c: None if c["theta"] > 0 else "theta must be positive",
        provenance={"lambda": D, "type": P},
        known_inconsistent=True, enabled=False, disabled_reason=neg_radicand, domain=ex4,
    ))

    lam16 = lambda c: -math.cos(c["beta"]) ** 2 / (2 * math.cos(c["beta"]) ** 2 - 1)
    out.append(GalleryEntry(
        "G16", "S6", "u e1 + v (cos b e2 + sin b e3) in the Norden R^4", uv,
        ("u", "v*cos(beta)", "v*sin(beta)", "0"),
        {"beta": math.acos(math.sqrt(0.6))}, {"beta": (0.05, math.pi / 2 - 0.05)},
        matrix=lambda c: np.array([[1, 0], [0, math.cos(c["beta"])], [0, math.sin(c["beta"])], [0, 0]]),
        expected_lambda=lam16, published_lambda=lam16,
        expected_type=norden(lam16), published_type=norden(lam16),
        constraint=lambda c: ("cos^2(beta) = 1/2" if _near(math.cos(2 * c["beta"]), 0.0, CONSTRAINT_TOL)
                              else None),
        margin=lambda c: abs(math.cos(2 * c["beta"])) > 0.05 and _margin_lambda(lam16, -1)(c),
        provenance={"lambda": D, "type": D},
    ))

    lam17 = lambda c: -math.cosh(c["alpha"]) ** 2 / math.cosh(2 * c["alpha"])
    out.append(GalleryEntry(
        "G17", "S6", "u e1 + v (cosh a e2 + sinh a e4) in the Norden R^4", uv,
        ("u", "v*cosh(alpha)", "0", "v*sinh(alpha)"),
        {"alpha": math.acosh(math.sqrt(2.0))}, {"alpha": (0.1, 2.0)},
        matrix=lambda c: np.array([[1, 0], [0, math.cosh(c["alpha"])], [0, 0], [0, math.sinh(c["alpha"])]]),
        expected_lambda=lam17, published_lambda=lam17,
        expected_type=norden(lam17), published_type=norden(lam17),
        margin=_margin_lambda(lam17, -1),
        provenance={"lambda": D, "type": D},
    ))
    return out


_GALLERY = {e.name: e for e in _entries()}


def gallery(include_disabled: bool = True) -> List[GalleryEntry]:
    return [e for e in _GALLERY.values() if include_disabled or e.enabled]


def get_entry(name: str) -> GalleryEntry:
    from .errors import ValidationError

    try:
        return _GALLERY[name]
    except KeyError:
        raise ValidationError(f"unknown gallery entry {name!r}; known: {', '.join(_GALLERY)}") from None
