import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nordenslant.errors import NotAStructure, ValidationError
from nordenslant.semiriemann import CausalCharacter, causal_character
from nordenslant.structure import (
    Compatibility,
    Provenance,
    StructureClass,
    classify_structure,
    conjugate,
    direct_sum,
    label_note,
    load_manifold,
    lookup,
    pair_swap,
    registry,
    rotation_blocks,
)

LOR4 = np.diag([1.0, -1, 1, -1])


def test_pair_swap_under_lorentz_is_para_complex():
    S = classify_structure(pair_swap(4, [(0, 1), (2, 3)]), LOR4)
    assert (S.epsilon, S.compat, S.klass) == (1, Compatibility.ANTI_ISOMETRY, StructureClass.PARA_COMPLEX)


def test_rotation_blocks_is_norden():
    S = classify_structure(rotation_blocks(4), LOR4)
    assert (S.epsilon, S.compat, S.klass) == (-1, Compatibility.ANTI_ISOMETRY, StructureClass.NORDEN)


def test_plane_norden():
    S = classify_structure([[0, 1], [-1, 0]], np.diag([1.0, -1]))
    assert S.klass is StructureClass.NORDEN
    assert S.summary() == "Norden, epsilon=-1, anti-isometry"


def test_not_a_structure_reports_both_residuals():
    with pytest.raises(NotAStructure, match=r"J\^2.*J\^T g J"):
        classify_structure(np.diag([1.0, 2.0]), np.eye(2))
    with pytest.raises(NotAStructure):
        classify_structure(np.eye(3), np.eye(3))
    with pytest.raises(NotAStructure):
        classify_structure(np.eye(2), np.eye(4))


def test_registry_contents():
    names = [e.name for e in registry()]
    assert len(names) == len(set(names))
    for key in ("S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8", "S9", "AC2", "NO2", "AP2", "PC2"):
        assert key in names
    assert lookup("S1").structure.klass is StructureClass.PARA_COMPLEX
    assert lookup("S5").structure.klass is StructureClass.NORDEN
    assert lookup("S5").provenance is Provenance.PUBLISHED
    assert lookup("S7").structure.dim == 8
    assert lookup("S7").structure.klass is StructureClass.PARA_COMPLEX
    assert lookup("S8").structure.klass is StructureClass.NORDEN
    with pytest.raises(ValidationError):
        lookup("nope")


def test_registry_matrices():
    J = lookup("S2").structure.J
    assert J[0, 2] == J[2, 0] == J[1, 3] == J[3, 1] == 1 and np.count_nonzero(J) == 4
    assert np.array_equal(np.diag(lookup("S3").structure.g.entries), [-1, 1, 1, -1])


def test_label_note_flags_para_structures():
    note = label_note(lookup("S1"))
    assert "ParaComplex" in note and "not Norden" in note
    assert label_note(lookup("S5")) is None


def test_adjoint_sign():
    for e in registry():
        S = e.structure
        gJ = S.g.entries @ S.J
        assert np.max(np.abs(gJ.T - S.adjoint_sign * gJ)) <= 1e-10
        if S.klass is StructureClass.NORDEN:
            assert np.max(np.abs(gJ - gJ.T)) <= 1e-10


@pytest.mark.parametrize("entry", registry(), ids=lambda e: e.name)
def test_anti_isometries_flip_causal_character(entry):
    S = entry.structure
    if S.compat is not Compatibility.ANTI_ISOMETRY:
        return
    rng = np.random.default_rng(7)
    checked = 0
    for v in rng.standard_normal((100, S.dim)):
        c = causal_character(v, S.g)
        if c is CausalCharacter.LIGHTLIKE:
            continue
        checked += 1
        assert causal_character(S.J @ v, S.g) is not c
        assert causal_character(S.J @ v, S.g) is not CausalCharacter.LIGHTLIKE
    assert checked > 50


def test_direct_sum_keeps_class():
    for key in ("NO2", "PC2", "AC2", "AP2"):
        S = lookup(key).structure
        assert direct_sum(S, S).klass is S.klass


def test_load_manifold_forms():
    assert load_manifold("S5").klass is StructureClass.NORDEN
    assert load_manifold({"registry": "S1"}).klass is StructureClass.PARA_COMPLEX
    S = load_manifold({"dim": 2, "J": [[0, -1], [1, 0]], "g": [[1, 0], [0, -1]]})
    assert S.klass is StructureClass.NORDEN
    with pytest.raises(ValidationError):
        load_manifold({"dim": 2, "J": [[0, -1], [1, 0]]})
    with pytest.raises(NotAStructure):
        load_manifold({"dim": 4, "J": [[0, -1], [1, 0]], "g": [[1, 0], [0, -1]]})


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-0.4, 0.4, allow_nan=False), min_size=16, max_size=16),
       st.sampled_from(["S1", "S6", "S2", "S3"]))
def test_conjugation_preserves_class(noise, key):
    S = lookup(key).structure
    Q = np.eye(4) + np.array(noise).reshape(4, 4)
    if np.linalg.cond(Q) > 50:
        return
    T = conjugate(S, Q)
    assert (T.klass, T.epsilon, T.compat) == (S.klass, S.epsilon, S.compat)
