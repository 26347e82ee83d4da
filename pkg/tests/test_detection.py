"""Detectability, correctability, dimension counts, measurement, transmission."""

import numpy as np
import pytest

from conftest import basis_state, random_code

from hybridec.detection import (
    DetectableDimensions,
    NotDetectableError,
    all_detectable_of_weight,
    detectability,
    detectable_dimension_formula,
    detectable_dimension_numeric,
    error_block_tensor,
    is_correctable_set,
    measure,
    operator_system_decompose,
    simulate_transmission,
)
from hybridec.error_basis import PauliElement, parse_element, realize
from hybridec.linalg import DimensionMismatchError, GuardExceededError, max_abs_diff


def test_error_block_tensor_shape_and_agreement(t3):
    e = parse_element("XZ", 2)
    t_fast = error_block_tensor(t3, e)
    t_dense = error_block_tensor(t3, realize(e))
    assert t_fast.shape == (2, 1, 2, 1)
    assert max_abs_diff(t_fast, t_dense) < 1e-12


def test_error_block_tensor_agreement_random():
    code = random_code(3, 2, 2, 3, seed=14)
    rng = np.random.default_rng(15)
    for _ in range(5):
        elem = PauliElement(3, 2,
                            tuple(int(v) for v in rng.integers(0, 3, 2)),
                            tuple(int(v) for v in rng.integers(0, 3, 2)))
        assert max_abs_diff(
            error_block_tensor(code, elem),
            error_block_tensor(code, realize(elem)),
        ) < 1e-12


def test_detectability_clock_on_one_qubit(t1):
    rep = detectability(t1, parse_element("Z", 2))
    assert rep.detectable
    assert rep.lambdas == (1 + 0j, -1 + 0j)
    assert rep.witness is None
    rep_id = detectability(t1, parse_element("I", 2))
    assert rep_id.detectable
    assert rep_id.lambdas == (1 + 0j, 1 + 0j)


def test_detectability_shift_fails_with_witness(t1):
    rep = detectability(t1, parse_element("X", 2))
    assert not rep.detectable
    assert rep.lambdas is None
    assert rep.witness == (2, 1)
    assert abs(rep.max_offdiag_violation - 1.0) < 1e-12


def test_detectability_two_qubit_cases(t3):
    assert detectability(t3, parse_element("ZI", 2)).lambdas == (1 + 0j, -1 + 0j)
    zx = detectability(t3, parse_element("ZX", 2))
    assert zx.detectable
    assert zx.lambdas == (0j, 0j)
    xx = detectability(t3, parse_element("XX", 2))
    assert not xx.detectable
    assert xx.witness == (2, 1)


def test_detectability_is_linear(t1):
    # Detectable operators form a vector space; check one combination.
    z = realize(parse_element("Z", 2))
    combo = 0.3 * z + (0.7j) * np.eye(2)
    assert detectability(t1, combo).detectable


def test_detectability_ignores_global_phase(t3):
    e = realize(parse_element("ZI", 2))
    for theta in (0.3, 1.2, 4.0):
        rep = detectability(t3, np.exp(1j * theta) * e)
        assert rep.detectable
    bad = realize(parse_element("XX", 2))
    assert not detectability(t3, np.exp(0.5j) * bad).detectable


def test_weight_scans(t3, f5):
    ok, failures = all_detectable_of_weight(t3, 1)
    assert ok and failures == []
    ok, failures = all_detectable_of_weight(t3, 2)
    assert not ok
    assert failures[0].error == parse_element("XX", 2)
    for d in (0, 1, 2):
        ok, _ = all_detectable_of_weight(f5, d)
        assert ok
    ok, failures = all_detectable_of_weight(f5, 3, max_counterexamples=2)
    assert not ok
    assert len(failures) == 2


def test_correctable_sets(t3):
    i2 = parse_element("II", 2)
    ok, witness = is_correctable_set(t3, [i2, parse_element("ZI", 2)])
    assert ok and witness is None
    ok, witness = is_correctable_set(t3, [i2, parse_element("XI", 2)])
    assert ok
    ok, witness = is_correctable_set(t3, [i2, parse_element("XX", 2)])
    assert not ok
    assert witness == (i2, parse_element("XX", 2))
    with pytest.raises(ValueError):
        is_correctable_set(t3, [])


def test_correctable_single_error_set_on_five_qubits(f5):
    errors = [parse_element("IIIII", 2),
              parse_element("XIIII", 2),
              parse_element("IZIII", 2),
              parse_element("IIYII", 2)]
    ok, witness = is_correctable_set(f5, errors)
    assert ok and witness is None


def test_dimension_formula(t1, t3):
    assert detectable_dimension_formula(1, 1, 2, 2) == DetectableDimensions(2, 1)
    assert detectable_dimension_formula(2, 1, 2, 2) == DetectableDimensions(14, 13)
    got = detectable_dimension_formula(5, 2, 1, 2)
    assert got == DetectableDimensions(1024 - 4 + 1, 1024 - 4 + 1)
    with pytest.raises(ValueError):
        detectable_dimension_formula(1, 2, 2, 2)
    with pytest.raises(ValueError):
        detectable_dimension_formula(0, 1, 1, 2)


def test_dimension_formula_gap_is_block_count_minus_one():
    for n, k, m, q in [(2, 1, 3, 2), (2, 2, 2, 2), (1, 1, 3, 3), (2, 2, 4, 3)]:
        dims = detectable_dimension_formula(n, k, m, q)
        assert dims.hybrid - dims.quantum == m - 1


def test_dimension_numeric_matches_formula(t1, t3):
    assert detectable_dimension_numeric(t1) == 2
    assert detectable_dimension_numeric(t3) == 14
    for q, n, k, m, seed in [(2, 2, 2, 2, 2), (2, 3, 2, 3, 5), (3, 1, 1, 3, 7)]:
        code = random_code(q, n, k, m, seed)
        expect = detectable_dimension_formula(n, k, m, q).hybrid
        assert detectable_dimension_numeric(code) == expect


def test_dimension_numeric_guard(f5):
    with pytest.raises(GuardExceededError):
        detectable_dimension_numeric(f5)


def test_operator_decomposition_clock(t1):
    parts = operator_system_decompose(t1, parse_element("Z", 2))
    assert parts.coefficients == (1 + 0j, -1 + 0j, 1j, -1j)
    assert max_abs_diff(parts.operators[0], np.eye(2)) < 1e-12
    assert max_abs_diff(parts.operators[1], np.diag([0.0, 2.0])) < 1e-12
    assert max_abs_diff(parts.operators[2], np.zeros((2, 2))) < 1e-12
    assert max_abs_diff(parts.recombine(), realize(parse_element("Z", 2))) < 1e-10


def test_operator_decomposition_five_qubit(f5):
    e = parse_element("XIIII", 2)
    parts = operator_system_decompose(f5, e)
    assert max_abs_diff(parts.recombine(), realize(e)) < 1e-10
    for op in parts.operators:
        low = float(np.min(np.linalg.eigvalsh((op + op.conj().T) / 2)))
        assert low > -1e-9


def test_operator_decomposition_rejects_undetectable(t1):
    with pytest.raises(NotDetectableError):
        operator_system_decompose(t1, parse_element("X", 2))


def test_measure_superposition(t1):
    state = (basis_state(2, 0) + basis_state(2, 1)) / np.sqrt(2)
    outcomes = measure(t1, state)
    assert [o.label for o in outcomes] == [1, 2, "epsilon"]
    assert abs(outcomes[0].probability - 0.5) < 1e-12
    assert abs(outcomes[1].probability - 0.5) < 1e-12
    assert outcomes[2].probability < 1e-12
    assert max_abs_diff(outcomes[0].post_state, basis_state(2, 0)) < 1e-12
    assert outcomes[2].post_state is None


def test_measure_error_outcome(t3):
    outcomes = measure(t3, basis_state(4, 1))
    assert abs(outcomes[2].probability - 1.0) < 1e-12
    assert max_abs_diff(outcomes[2].post_state, basis_state(4, 1)) < 1e-12


def test_measure_probabilities_sum_to_one():
    code = random_code(2, 2, 1, 3, seed=21)
    rng = np.random.default_rng(22)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v = v / np.linalg.norm(v)
    outcomes = measure(code, v)
    assert abs(sum(o.probability for o in outcomes) - 1.0) < 1e-12


def test_measure_input_checks(t1):
    with pytest.raises(ValueError):
        measure(t1, np.array([1.0, 1.0]))
    with pytest.raises(DimensionMismatchError):
        measure(t1, np.array([1.0, 0.0, 0.0]))


def test_simulate_undetected_shift(t1):
    tally = simulate_transmission(t1, 1, [1], parse_element("X", 2), trials=50, seed=4)
    assert tally.counts == {1: 0, 2: 50, "epsilon": 0}
    assert tally.post_state_fidelity is None


def test_simulate_detected_error_keeps_message(t3):
    tally = simulate_transmission(t3, 2, [1], parse_element("ZI", 2), trials=200, seed=1)
    assert tally.counts[2] == 200
    assert tally.post_state_fidelity is not None
    assert tally.post_state_fidelity >= 1 - 1e-10


def test_simulate_error_outcome(t3):
    tally = simulate_transmission(t3, 1, [1], parse_element("XI", 2), trials=100, seed=9)
    assert tally.counts["epsilon"] == 100


def test_simulate_is_deterministic(f5):
    a = simulate_transmission(f5, 1, [1, 0], parse_element("ZIIII", 2), trials=300, seed=11)
    b = simulate_transmission(f5, 1, [1, 0], parse_element("ZIIII", 2), trials=300, seed=11)
    assert a.counts == b.counts


def test_simulate_input_checks(t1):
    with pytest.raises(ValueError):
        simulate_transmission(t1, 1, [1], parse_element("X", 2), trials=0, seed=0)
    with pytest.raises(ValueError):
        simulate_transmission(t1, 1, [1], np.zeros((2, 2)), trials=10, seed=0)
