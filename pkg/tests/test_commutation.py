"""Factor detection, classification, commutant and measurement-map checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import factorcomm as fc
from factorcomm.errors import DimensionMismatch, InvalidParameter, NotNormal
from factorcomm.sampling import ginibre, random_hermitian, random_unitary, rng_for

SX = fc.PAULI_X
SY = fc.PAULI_Y
SZ = fc.PAULI_Z


def test_detect_factor_pauli():
    report = fc.detect_factor(fc.OperatorPair(A=SX, B=SY))
    assert report.status == fc.UNIQUE
    assert abs(report.lambda_hat + 1.0) <= 1e-15
    assert report.residual <= 1e-15


def test_detect_factor_self_pair():
    M = ginibre(rng_for(10), 4)
    report = fc.detect_factor(fc.OperatorPair(A=M, B=M))
    assert report.status == fc.UNIQUE
    assert abs(report.lambda_hat - 1.0) <= 1e-12


def test_detect_factor_clock_shift_4():
    report = fc.detect_factor(fc.clock_shift_pair(4))
    assert report.status == fc.UNIQUE
    assert abs(report.lambda_hat - 1j) <= 1e-12


def test_detect_factor_any_and_none():
    zero = np.zeros((2, 2), dtype=complex)
    any_report = fc.detect_factor(fc.OperatorPair(A=zero, B=zero))
    assert any_report.status == fc.ANY
    assert any_report.lambda_hat is None

    # BA = 0 but AB != 0: e.g. A = E12, B = E22 -> AB = E12, BA = 0
    A = np.array([[0, 1], [0, 0]], dtype=complex)
    B = np.diag([0.0, 1.0]).astype(complex)
    none_report = fc.detect_factor(fc.OperatorPair(A=A, B=B))
    assert none_report.status == fc.NONE
    assert none_report.lambda_hat is None
    assert none_report.ba_norm <= 1e-15 < none_report.ab_norm

    generic = fc.detect_factor(
        fc.OperatorPair(A=np.diag([1.0, 2.0]).astype(complex), B=SX + SZ)
    )
    assert generic.status == fc.NONE
    assert generic.lambda_hat is not None  # best fit still reported


def test_detect_factor_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fc.OperatorPair(A=np.eye(2, dtype=complex), B=np.eye(3, dtype=complex))


@settings(max_examples=40, deadline=None)
@given(
    st.integers(0, 2**32 - 1),
    st.floats(0.25, 4.0),
    st.floats(0.0, 2 * np.pi),
    st.floats(0.25, 4.0),
    st.floats(0.0, 2 * np.pi),
)
def test_detect_factor_scale_invariance(seed, ra, pa, rb, pb):
    rng = rng_for(seed)
    pairs = fc.builtin_pairs()
    pair = pairs[int(rng.integers(len(pairs)))]
    alpha = ra * np.exp(1j * pa)
    beta = rb * np.exp(1j * pb)
    base = fc.detect_factor(pair)
    scaled = fc.detect_factor(fc.OperatorPair(A=alpha * pair.A, B=beta * pair.B))
    assert scaled.status == base.status
    if base.status == fc.UNIQUE:
        assert abs(scaled.lambda_hat - base.lambda_hat) <= 1e-12


def test_detect_factor_swap_inverse():
    for pair in fc.builtin_pairs():
        base = fc.detect_factor(pair)
        if base.status != fc.UNIQUE:
            continue
        swapped = fc.detect_factor(pair.swapped())
        assert swapped.status == fc.UNIQUE
        assert abs(swapped.lambda_hat - 1.0 / base.lambda_hat) <= 1e-9


def test_spectrum_rotation_examples():
    S = np.array([1, 1j, -1, -1j])
    assert fc.spectrum_rotation_check(S, 1j, 1e-12).matched  # 90-degree permutation
    sample = np.array([0.3 + 0.1j, -2.0, 5.0])
    trivial = fc.spectrum_rotation_check(sample, 1.0, 1e-15)
    assert trivial.matched and trivial.max_pair_distance == 0.0
    assert not fc.spectrum_rotation_check(np.array([1.0, 2.0]), -1.0, 1e-6).matched


def test_spectrum_rotation_rejects_zero():
    with pytest.raises(InvalidParameter):
        fc.spectrum_rotation_check(np.array([1.0]), 0.0)


def test_spectrum_swap_examples():
    pauli = fc.spectrum_swap_check(fc.OperatorPair(A=SX, B=SY), 1e-12)
    assert pauli.matched  # both products have spectrum {i, -i}
    M = ginibre(rng_for(11), 5)
    assert fc.spectrum_swap_check(fc.OperatorPair(A=M, B=np.eye(5, dtype=complex)), 1e-12).matched
    rng = rng_for(12)
    pair = fc.OperatorPair(A=ginibre(rng, 6), B=ginibre(rng, 6))
    assert fc.spectrum_swap_check(pair, 1e-7).matched


def test_trace_det_constraints_examples():
    # (sx, sx): tr[AB] = tr(I) = 2 forces lambda = 1
    cons = fc.trace_det_constraints(fc.OperatorPair(A=SX, B=SX), kmax=2)
    assert any(c.kind == "one" for c in cons)

    # (sx, sy): all listed traces vanish, det(AB) = det(i sz) = 1 != 0
    cons2 = fc.trace_det_constraints(fc.OperatorPair(A=SX, B=SY), kmax=2)
    assert all(c.kind != "one" for c in cons2)
    roots = [c for c in cons2 if c.kind == "nth-root"]
    assert len(roots) == 1 and roots[0].order == 2

    # clock-shift n=4: unitary factors, det != 0 -> lambda^4 = 1,
    # consistent with the detected factor i
    pair4 = fc.clock_shift_pair(4)
    cons3 = fc.trace_det_constraints(pair4, kmax=4)
    roots4 = [c for c in cons3 if c.kind == "nth-root"]
    assert len(roots4) == 1 and roots4[0].order == 4
    lam = fc.detect_factor(pair4).lambda_hat
    assert abs(lam**4 - 1.0) <= 1e-12


def test_classify_pair_pauli():
    report = fc.classify_pair(fc.OperatorPair(A=SX, B=SY))
    assert report.consistent
    assert report.factor.status == fc.UNIQUE
    kinds = {c.kind for c in report.constraints}
    assert "pm1" in kinds and "real" in kinds
    assert all(c.satisfied for c in report.constraints)
    assert report.swap_check.matched and report.product_rotation.matched


def test_classify_pair_nilpotent_diag_lambda_3():
    pair = fc.nilpotent_diag_pair([1.0, 3.0], 1, 3.0)
    report = fc.classify_pair(pair)
    assert report.consistent
    assert abs(report.factor.lambda_hat - 3.0) <= 1e-12
    assert report.product_quasinilpotent  # non-unit factor forces this
    # B is invertible, so sigma(A) must be rotation-invariant (it is {0, 0})
    assert report.a_spectrum_rotation is not None and report.a_spectrum_rotation.matched


def test_classify_pair_generic_has_no_factor():
    A = np.diag([1.0, 2.0]).astype(complex)
    B = random_hermitian(rng_for(13), 2)
    report = fc.classify_pair(fc.OperatorPair(A=A, B=B))
    assert report.factor.status == fc.NONE
    assert report.consistent and not report.violations


def test_classify_pair_flags_violations_on_forced_borderline():
    # Hermitian near-anticommuting pair rigged so the fitted factor is
    # accepted at a loose tolerance while the nonzero trace demands
    # lambda = 1: the report must flag the contradiction.
    delta = 2e-3
    pair = fc.OperatorPair(A=SX, B=SY + delta * SX)
    report = fc.classify_pair(pair, tol=1e-3)
    assert report.factor.status == fc.UNIQUE
    assert not report.consistent
    assert any("lambda = 1" in v for v in report.violations)


def test_solve_lambda_commutant_examples():
    A = np.diag([1.0, 2.0]).astype(complex)
    basis = fc.solve_lambda_commutant(A, 2.0)
    assert len(basis) == 1
    B = basis[0]
    assert np.allclose(B, np.array([[0, 0], [1, 0]]), atol=1e-12)
    assert np.linalg.norm(A @ B - 2.0 * B @ A) <= 1e-12

    eye = np.eye(3, dtype=complex)
    assert len(fc.solve_lambda_commutant(eye, 1.0)) == 9
    assert len(fc.solve_lambda_commutant(eye, 2.0)) == 0


def test_solve_lambda_commutant_rejects_nonnormal():
    with pytest.raises(NotNormal):
        fc.solve_lambda_commutant(np.array([[0, 1], [0, 0]], dtype=complex), 1.0)
    with pytest.raises(InvalidParameter):
        fc.solve_lambda_commutant(np.eye(2, dtype=complex), 0.0)


def test_solve_lambda_commutant_satisfies_relation():
    for seed in range(6):
        rng = rng_for(400 + seed)
        n = int(rng.integers(2, 7))
        lam = complex(rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform()))
        d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        d[1] = lam * d[0]
        U = random_unitary(rng, n)
        A = (U * d) @ U.conj().T
        basis = fc.solve_lambda_commutant(A, lam)
        assert basis
        for B in basis:
            resid = np.linalg.norm(A @ B - lam * B @ A)
            assert resid <= 1e-8 * max(1.0, np.linalg.norm(A) * np.linalg.norm(B))


def test_psd_anticommutant_is_trivial():
    rng = rng_for(14)
    A = ginibre(rng, 4, 2)
    A = A @ A.conj().T  # PSD, rank 2
    for B in fc.solve_lambda_commutant(A, -1.0):
        assert np.linalg.norm(A @ B) <= 1e-9


def test_measurement_map_check_pauli():
    # AB X BA = (i sz) X (-i sz) = sz X sz = BA X AB
    assert fc.measurement_map_check(fc.OperatorPair(A=SX, B=SY), trials=25, seed=5)


def test_measurement_map_check_commuting_diagonal():
    A = np.diag([1.0, 2.0, 3.0]).astype(complex)
    B = np.diag([-1.0, 0.5, 2.0]).astype(complex)
    assert fc.measurement_map_check(fc.OperatorPair(A=A, B=B), trials=10, seed=6)


def test_measurement_map_check_counterexample():
    # explicit witness X = E11: AB X BA = diag(0, 4), BA X AB = diag(0, 1)
    A = np.diag([1.0, 2.0]).astype(complex)
    pair = fc.OperatorPair(A=A, B=SX)
    AB, BA = A @ SX, SX @ A
    X = np.diag([1.0, 0.0]).astype(complex)
    assert not np.allclose(AB @ X @ BA, BA @ X @ AB)
    assert not fc.measurement_map_check(pair, trials=25, seed=7)


def test_measurement_map_check_unimodular_builtins():
    for pair in fc.builtin_pairs():
        report = fc.detect_factor(pair)
        if report.status != fc.UNIQUE or report.residual > 1e-10:
            continue
        if abs(abs(report.lambda_hat) - 1.0) > 1e-10:
            continue
        assert fc.measurement_map_check(pair, trials=10, seed=8), pair.label


def test_nonunimodular_unique_pairs_have_nilpotent_product():
    for pair in fc.builtin_pairs():
        report = fc.detect_factor(pair)
        if report.status != fc.UNIQUE or abs(abs(report.lambda_hat) - 1.0) <= 1e-6:
            continue
        AB = pair.A @ pair.B
        if np.linalg.norm(AB) <= 1e-6:
            continue
        assert np.abs(fc.eigenvalues(AB)).max() <= 1e-7 * np.linalg.norm(AB), pair.label


def test_factor_report_json_shape():
    report = fc.detect_factor(fc.OperatorPair(A=SX, B=SY))
    data = report.to_json()
    assert data["status"] == "UNIQUE"
    assert data["lambda_hat"] == [pytest.approx(-1.0), pytest.approx(0.0)]
    assert set(data) == {"status", "lambda_hat", "residual", "ab_norm", "ba_norm"}


def test_classification_report_json_stable_names():
    data = fc.classify_pair(fc.OperatorPair(A=SX, B=SY)).to_json()
    for key in ("status", "lambda_hat", "residual", "constraints", "violations", "consistent"):
        assert key in data


def test_pair_json_round_trip():
    pair = fc.clock_shift_pair(3)
    again = fc.OperatorPair.from_json(pair.to_json())
    assert np.array_equal(pair.A, again.A)
    assert np.array_equal(pair.B, again.B)
    assert again.declared_lambda == pair.declared_lambda
    assert again.label == pair.label
