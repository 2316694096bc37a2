"""Acceptance gate: one test per criterion, one summary line each.

Run with ``pytest tests/test_acceptance.py`` (summary printed at the end) or
``python tests/test_acceptance.py``.
"""

import contextlib
import io
import math
import time
import zlib

import numpy as np
import pytest

from nordenslant import exprdsl
from nordenslant.cli import main
from nordenslant.curves import Verdict, curve_classify, from_expressions, line, random_cubic, geodesic_or_invariant_check
from nordenslant.gallery import gallery, get_entry
from nordenslant.semiriemann import tangent_frame
from nordenslant.slant import (
    SamplerConfig,
    SlantType,
    classify,
    decompose,
    identity_checks,
    operators_at,
    sample_points,
    sweep,
)
from nordenslant.structure import StructureClass, conjugate, lookup

try:
    from conftest import ACCEPTANCE
except ImportError:  # run as a script
    ACCEPTANCE = {}

TIME_LIMIT = 10.0


class Checks:
    def __init__(self):
        self.failures = []
        self.count = 0

    def check(self, ok, message):
        self.count += 1
        if not ok:
            self.failures.append(message)

    @property
    def ok(self):
        return not self.failures

    def detail(self, passed_text):
        if self.ok:
            return f"{passed_text} ({self.count} checks)"
        head = "; ".join(self.failures[:3])
        more = f" (+{len(self.failures) - 3} more)" if len(self.failures) > 3 else ""
        return f"{len(self.failures)}/{self.count} checks failed: {head}{more}"


def _record(number, title, fn):
    start = time.perf_counter()
    c = fn()
    elapsed = time.perf_counter() - start
    c.check(elapsed < TIME_LIMIT, f"took {elapsed:.1f}s")
    ACCEPTANCE[number] = (c.ok, title, c.detail(f"{elapsed:.2f}s"))
    return c


def rel_close(a, b, rel):
    return abs(a - b) <= rel * max(abs(b), 1e-300) or abs(a - b) <= 1e-15


# -- 1 ----------------------------------------------------------------------------


def criterion_1():
    c = Checks()
    cfg = SamplerConfig(samples=64)
    for name in ("G01", "G02", "G03", "G04", "G08", "G09", "G11a", "G11b", "G12", "G13", "G14"):
        e = get_entry(name)
        rng = np.random.default_rng(zlib.crc32(name.encode()))
        for _ in range(5):
            consts = e.random_constants(rng)
            res = classify(e.build(consts), e.structure, cfg)
            want = e.published_lambda(consts)
            c.check(rel_close(res.lam, want, 1e-8), f"{name} {consts}: lambda {res.lam!r} vs {want!r}")
            c.check(res.residual_p2 <= 1e-7, f"{name} {consts}: residualP2 {res.residual_p2:.2e}")
    return c


# -- 2 ----------------------------------------------------------------------------


def _region_grid(entry, region_fn, grid):
    bad = []
    for a in grid:
        for b in grid:
            consts = {"a": float(a), "b": float(b)}
            if entry.excluded(consts) or not entry.margin(consts):
                continue
            got = classify(entry.build(consts), entry.structure, SamplerConfig(samples=9)).typetag
            want = region_fn(consts)
            if got is not want:
                bad.append((consts, got.value, want.value))
    return bad


def criterion_2():
    c = Checks()
    rows = sweep(get_entry("G04"), "a", (0.1, 3.0, 0.1), {"b": 0.0})
    for r in rows:
        want = None if r.value == 1.0 else SlantType.TYPE3 if r.value < 1 else SlantType.TYPE1
        c.check(r.typetag is want, f"G04 a={r.value}: {r.typetag} vs {want}")
    c.check(any(r.excluded_reason for r in rows if r.value == 1.0), "G04 a=1 not excluded")
    grid = np.linspace(-2.5, 2.5, 11)
    e = get_entry("G04")
    for consts, got, want in _region_grid(e, e.published_type, grid):
        c.check(False, f"G04 {consts}: {got} vs printed {want}")
    for name in ("G11a", "G11b"):
        e = get_entry(name)
        bad = _region_grid(e, e.published_type, grid)
        c.check(not bad, f"{name} printed regions contradicted at {len(bad)} grid points, e.g. "
                         + (f"{bad[0][0]} is {bad[0][1]} but printed {bad[0][2]}" if bad else ""))
    for k in (1.5, 2.0, 3.0):
        t = get_entry("G12").run({"k": k}).classification.typetag
        c.check(t is SlantType.TYPE3, f"G12 k={k}: {t}")
    return c


# -- 3 ----------------------------------------------------------------------------


def criterion_3():
    c = Checks()
    e = get_entry("G10")
    hits = []
    for key in ("S1", "S2"):
        res = classify(e.build(), lookup(key).structure)
        if res.typetag is SlantType.TOTALLY_REAL and abs(res.lam) <= 1e-7 and res.p_norm_max <= 1e-6:
            hits.append(key)
    c.check(bool(hits), "G10 not totally real under S1 or S2")
    c.check(e.structure_name in hits, f"G10 registered on {e.structure_name}, totally real under {hits}")
    return c


# -- 4 ----------------------------------------------------------------------------


def criterion_4():
    c = Checks()
    printed = get_entry("G05p").run({"theta": 1.0}).classification
    want = math.cosh(1) ** 4 / (math.cosh(1) ** 4 - math.sinh(1) ** 2)
    c.check(rel_close(printed.lam, want, 1e-8), f"printed form lambda {printed.lam!r} vs {want!r}")
    c.check(abs(printed.lam - 1.3221) < 1e-4, f"printed form lambda {printed.lam:.6f} not ~1.3221")
    c.check(abs(printed.lam - math.cosh(1) ** 2) > 0.5, "printed form unexpectedly close to cosh^2(1)")
    for theta in (0.3, 0.7, 1.2):
        res = get_entry("G05").run({"theta": theta}).classification
        c.check(rel_close(res.lam, math.cosh(theta) ** 2, 1e-8),
                f"corrected theta={theta}: {res.lam!r} vs {math.cosh(theta) ** 2!r}")
    return c


# -- 5 ----------------------------------------------------------------------------


def criterion_5():
    c = Checks()
    e = get_entry("G16")
    for cos2, lam, typ in ((0.6, -3.0, SlantType.TYPE1), (0.25, 0.5, SlantType.TYPE3)):
        res = e.run({"beta": math.acos(math.sqrt(cos2))}).classification
        c.check(rel_close(res.lam, lam, 1e-8), f"G16 cos^2={cos2}: lambda {res.lam!r}")
        c.check(res.typetag is typ, f"G16 cos^2={cos2}: {res.typetag}")
        c.check(res.causal_transfer_ok is True, f"G16 cos^2={cos2}: causal transfer")
        if typ is SlantType.TYPE1:
            c.check(res.neutral_ok is True, "G16 type 1 not neutral")
    res = get_entry("G17").run({"alpha": math.acosh(math.sqrt(2))}).classification
    c.check(rel_close(res.lam, -2 / 3, 1e-8), f"G17 lambda {res.lam!r}")
    c.check(res.typetag is SlantType.TYPE2, f"G17 {res.typetag}")
    c.check(res.theta is not None and rel_close(res.theta, math.acos(math.sqrt(2 / 3)), 1e-8),
            f"G17 theta {res.theta!r}")
    c.check(res.causal_transfer_ok is True and res.neutral_ok is True, "G17 causal/neutral")
    return c


# -- 6 ----------------------------------------------------------------------------


def criterion_6():
    c = Checks()
    for e in gallery():
        imm, S = e.build(), e.structure
        for u in sample_points(imm.domain, 64, 42):
            rep = identity_checks(operators_at(imm, S, u), S)
            c.check(rep.exact_ok(1e-8), f"{e.name} at {u}: {rep}")
    rng = np.random.default_rng(6)
    done = 0
    while done < 100:
        base = lookup(str(rng.choice(["S1", "S2", "S3", "S4", "S6", "S7", "S8", "S9", "NO2", "PC2"]))).structure
        Q = np.eye(base.dim) + 0.3 * rng.standard_normal((base.dim, base.dim))
        if np.linalg.cond(Q) > 100:
            continue
        S = conjugate(base, Q)
        k = int(rng.integers(1, S.dim))
        frame = tangent_frame(rng.standard_normal((S.dim, k)), S.g)
        if frame.degenerate:
            continue
        rep = identity_checks(decompose(frame, S), S)
        c.check(rep.exact_ok(1e-8), f"fuzz {done} ({S.klass.value}, k={k}): {rep}")
        done += 1
    return c


# -- 7 ----------------------------------------------------------------------------


def criterion_7():
    c = Checks()
    cfg = SamplerConfig(samples=16)
    rng = np.random.default_rng(7)
    for e in gallery(include_disabled=False):
        imm, S = e.build(), e.structure
        ref = classify(imm, S, cfg)

        def same(other, what):
            c.check(other.typetag is ref.typetag, f"{e.name} {what}: {other.typetag} vs {ref.typetag}")
            c.check(rel_close(other.lam, ref.lam, 1e-8) or abs(other.lam - ref.lam) <= 1e-12,
                    f"{e.name} {what}: lambda {other.lam!r} vs {ref.lam!r}")
            if ref.theta is not None:
                c.check(other.theta is not None and abs(other.theta - ref.theta) <= 1e-8 * max(1, ref.theta),
                        f"{e.name} {what}: theta {other.theta!r} vs {ref.theta!r}")

        done = 0
        while done < 5:
            M = np.eye(imm.k) + 0.4 * rng.standard_normal((imm.k, imm.k))
            if abs(np.linalg.det(M)) < 0.3:
                continue
            same(classify(imm.reparametrize(M, 0.2 * rng.standard_normal(imm.k)), S, cfg), "affine")
            done += 1
        done = 0
        while done < 5:
            Q = np.eye(S.dim) + 0.3 * rng.standard_normal((S.dim, S.dim))
            if np.linalg.cond(Q) > 30:
                continue
            same(classify(imm.push_forward(Q), conjugate(S, Q), cfg), "conjugation")
            done += 1
    return c


# -- 8 ----------------------------------------------------------------------------


def criterion_8():
    c = Checks()
    S5 = lookup("S5").structure
    r = curve_classify(line([0, 0], [2, 1]), S5)
    c.check(r.typetag is SlantType.TYPE3, f"line (2,1): {r.typetag}")
    c.check(abs(r.lam - 16 / 9) <= 1e-10, f"line (2,1): lambda {r.lam!r}")
    c.check(r.geodesic_residual <= 1e-8, f"line (2,1): geodesic residual {r.geodesic_residual:.2e}")
    circle = from_expressions("circle", "s", ["cos(s)", "sin(s)"], (0.0, math.pi / 8))
    r = curve_classify(circle, S5)
    c.check(r.typetag is SlantType.NON_SLANT, f"circle: {r.typetag}")
    slant = violations = 0
    for seed in range(200):
        v, _ = geodesic_or_invariant_check(random_cubic(np.random.default_rng(seed), straight=seed % 2 == 0), S5)
        slant += v is not Verdict.NOT_APPLICABLE
        violations += v is Verdict.VIOLATION
    c.check(violations == 0, f"{violations} geodesic-or-invariant violations among {slant} slant curves")
    c.check(slant > 0, "no fuzzed curve was slant")
    return c


# -- 9 ----------------------------------------------------------------------------


def criterion_9():
    c = Checks()
    classes = {lookup(k).structure.klass for k in ("AC2", "NO2", "AP2", "PC2")}
    c.check(classes == set(StructureClass), f"canonical cells give {sorted(x.value for x in classes)}")
    c.check(lookup("S5").structure.klass is StructureClass.NORDEN, "S5 not Norden")
    c.check(lookup("S1").structure.klass is StructureClass.PARA_COMPLEX, "S1 not ParaComplex")
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(["verify-structure", "-r", "S1"])
    text = out.getvalue()
    c.check(code == 0 and "ParaComplex" in text and "para Kaehler" in text and "not Norden" in text,
            "verify-structure does not surface the label discrepancy")
    return c


# -- 10 ---------------------------------------------------------------------------


def _random_expr(rng, depth=0):
    r = rng.random()
    if depth > 4 or r < 0.25:
        return str(rng.choice(["u", "v", "a", "pi", repr(float(np.round(rng.uniform(0, 9), 3)))]))
    if r < 0.45:
        return f"{rng.choice(exprdsl.FUNCTIONS)}({_random_expr(rng, depth + 1)})"
    if r < 0.55:
        return f"-{_random_expr(rng, depth + 1)}"
    if r < 0.65:
        return f"({_random_expr(rng, depth + 1)})"
    return f"{_random_expr(rng, depth + 1)} {rng.choice(list('+-*/^'))} {_random_expr(rng, depth + 1)}"


def criterion_10():
    c = Checks()
    rng = np.random.default_rng(10)
    crashes = mismatches = 0
    for _ in range(1000):
        text = _random_expr(rng)
        try:
            ast = exprdsl.parse(text, ["u", "v"], ["a"])
            if exprdsl.parse(exprdsl.to_text(ast), ["u", "v"], ["a"]) != ast:
                mismatches += 1
            try:
                exprdsl.evaluate(ast, {"u": 0.4, "v": -0.3, "a": 1.5})
            except exprdsl.DomainError:
                pass
        except Exception:  # noqa: BLE001 - counting crashes is the point
            crashes += 1
    c.check(crashes == 0, f"{crashes} parser crashes")
    c.check(mismatches == 0, f"{mismatches} round-trip mismatches")
    for e in gallery(include_disabled=False):
        imm, dsl = e.build(), e.build_dsl()
        for u in sample_points(imm.domain, 20, 10):
            a, b = imm.func(u), dsl.func(u)
            c.check(np.max(np.abs(a - b)) <= 1e-12 * max(1.0, np.max(np.abs(a))), f"{e.name} at {u}")
    return c


CRITERIA = [
    (1, "gallery regression", criterion_1),
    (2, "type regions", criterion_2),
    (3, "totally real", criterion_3),
    (4, "errata checks", criterion_4),
    (5, "Norden fixtures", criterion_5),
    (6, "identity suite", criterion_6),
    (7, "invariance suite", criterion_7),
    (8, "curves", criterion_8),
    (9, "structure table", criterion_9),
    (10, "parser", criterion_10),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    c = _record(number, title, fn)
    print(f"criterion {number:2d} {'PASS' if c.ok else 'FAIL'}  {title}: {ACCEPTANCE[number][2]}")
    assert c.ok, ACCEPTANCE[number][2]


if __name__ == "__main__":
    for number, title, fn in CRITERIA:
        c = _record(number, title, fn)
        print(f"criterion {number:2d} {'PASS' if c.ok else 'FAIL'}  {title}: {ACCEPTANCE[number][2]}")
