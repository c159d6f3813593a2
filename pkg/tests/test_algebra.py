import itertools

import numpy as np
import pytest

from su3bloch.algebra import (
    gellmann,
    nonzero_table,
    shift_operator,
    structure_constant,
    structure_constants,
    verify_algebra,
)
from su3bloch.exceptions import InvalidArgumentError

S3 = np.sqrt(3)

# Written out independently of the package, entry by entry.
L1 = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], complex)
L2 = np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]])
L3 = np.diag([1, -1, 0]).astype(complex)
L4 = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], complex)
L5 = np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]])
L8 = np.diag([1, 1, -2]) / S3


def test_gellmann_matches_printed():
    np.testing.assert_array_equal(gellmann(1), [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    np.testing.assert_allclose(gellmann(8), np.diag([1, 1, -2]) / S3, atol=0)
    np.testing.assert_array_equal(gellmann(5), L5)


@pytest.mark.parametrize("i", range(1, 9))
def test_gellmann_traceless_hermitian(i):
    m = gellmann(i)
    assert abs(np.trace(m)) == 0
    np.testing.assert_array_equal(m, m.conj().T)


def test_trace_orthonormality():
    gram = np.array([[np.trace(gellmann(i) @ gellmann(j)) for j in range(1, 9)] for i in range(1, 9)])
    np.testing.assert_allclose(gram, 2 * np.eye(8), atol=1e-12)


@pytest.mark.parametrize("bad", [0, 9, -1, 1.5, "3", True])
def test_gellmann_index_errors(bad):
    with pytest.raises(InvalidArgumentError):
        gellmann(bad)


def test_gellmann_returns_copy():
    m = gellmann(1)
    m[0, 0] = 99
    assert gellmann(1)[0, 0] == 0


def test_shift_operators():
    t_plus = np.zeros((3, 3))
    t_plus[0, 1] = 1
    np.testing.assert_allclose(shift_operator("T", "plus"), t_plus, atol=1e-15)
    np.testing.assert_allclose(shift_operator("T", "minus"), t_plus.T, atol=1e-15)
    np.testing.assert_allclose(shift_operator("U", "three"), np.diag([0, 1, -1]), atol=1e-15)
    np.testing.assert_allclose(shift_operator("V", "three"), np.diag([1, 0, -1]), atol=1e-15)
    u_plus = np.zeros((3, 3))
    u_plus[1, 2] = 1
    np.testing.assert_allclose(shift_operator("U", "plus"), u_plus, atol=1e-15)
    v_plus = np.zeros((3, 3))
    v_plus[0, 2] = 1
    np.testing.assert_allclose(shift_operator("V", "plus"), v_plus, atol=1e-15)


def test_t3_u3_v3_relation():
    total = shift_operator("T", "three") + shift_operator("U", "three") - shift_operator("V", "three")
    np.testing.assert_allclose(total, 0, atol=1e-15)


@pytest.mark.parametrize("kind,part", [("W", "plus"), ("T", "up"), ("U", None)])
def test_shift_operator_errors(kind, part):
    with pytest.raises(InvalidArgumentError):
        shift_operator(kind, part)


def _f_oracle(a, b, c):
    return (np.trace((a @ b - b @ a) @ c) / 4j).real


def _d_oracle(a, b, c):
    return (np.trace((a @ b + b @ a) @ c) / 4).real


def test_structure_constant_examples():
    assert _f_oracle(L1, L2, L3) == pytest.approx(1.0, abs=1e-15)
    assert structure_constant("f", 1, 2, 3) == pytest.approx(1.0, abs=1e-15)
    assert _f_oracle(L4, L5, L8) == pytest.approx(S3 / 2, abs=1e-15)
    assert structure_constant("f", 4, 5, 8) == pytest.approx(S3 / 2, abs=1e-15)
    for k in range(1, 9):
        assert structure_constant("f", 1, 1, k) == 0
    assert _d_oracle(L1, L1, L8) == pytest.approx(1 / S3, abs=1e-15)
    assert structure_constant("d", 1, 1, 8) == pytest.approx(1 / S3, abs=1e-15)
    # oracle value for d_338, frozen: +1/sqrt(3)
    assert _d_oracle(L3, L3, L8) == pytest.approx(1 / S3, abs=1e-15)
    assert structure_constant("d", 3, 3, 8) == pytest.approx(1 / S3, abs=1e-15)


def test_structure_constant_bad_tensor():
    with pytest.raises(InvalidArgumentError):
        structure_constant("g", 1, 2, 3)


def test_nonzero_f_table_matches_literature():
    # standard table used only as an oracle
    expected = {
        (1, 2, 3): 1.0, (1, 4, 7): 0.5, (1, 5, 6): -0.5, (2, 4, 6): 0.5, (2, 5, 7): 0.5,
        (3, 4, 5): 0.5, (3, 6, 7): -0.5, (4, 5, 8): S3 / 2, (6, 7, 8): S3 / 2,
    }
    table = dict(nonzero_table("f"))
    assert table.keys() == expected.keys()
    for key, value in expected.items():
        assert table[key] == pytest.approx(value, abs=1e-14)


def test_symmetries():
    sc = structure_constants()
    for perm in itertools.permutations(range(3)):
        sign = np.linalg.det(np.eye(3)[list(perm)])
        np.testing.assert_allclose(sc.f.transpose(perm), sign * sc.f, atol=1e-12)
        np.testing.assert_allclose(sc.d.transpose(perm), sc.d, atol=1e-12)


def test_structure_constants_are_read_only():
    with pytest.raises(ValueError):
        structure_constants().f[0, 1, 2] = 3.0


def test_verify_algebra_passes():
    report = verify_algebra()
    assert report.passed
    assert report.max_residual < 1e-12


def test_verify_algebra_detects_corruption():
    basis = np.array([gellmann(i) for i in range(1, 9)])
    basis[0] = basis[0] * (1 + 1e-6)
    assert not verify_algebra(basis).passed
