import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pvdsim.qstate import (COMPUTATIONAL, HADAMARD, BitString, DenseState, DimensionError,
                           TwoBranchState, all_strings, c_measure, computational_measure,
                           decrypt_bit, hadamard_measure, hadamard_measure_batch,
                           hadamard_transform, lift, purify, qubit_cap, random_state,
                           random_unitary, set_qubit_cap, trace_distance)
from pvdsim.qstate.dense import hadamard_matrix
from pvdsim.randomness import make_rng


def bs(text):
    return BitString.from_str(text)


@st.composite
def bitstring_pairs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    a = draw(st.integers(0, (1 << n) - 1))
    b = draw(st.integers(0, (1 << n) - 1))
    return BitString(n, a), BitString(n, b)


@st.composite
def two_branch_params(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    x0 = draw(st.integers(0, (1 << n) - 1))
    x1 = draw(st.integers(0, (1 << n) - 1).filter(lambda v: v != x0))
    return n, x0, x1, draw(st.integers(0, 1))


# -- BitString ------------------------------------------------------------------

def test_bitstring_round_trips():
    x = bs("0110")
    assert x.n == 4 and x.value == 6
    assert str(x) == "0110"
    assert x.bits == (0, 1, 1, 0)
    assert BitString.from_bits([0, 1, 1, 0]) == x
    assert BitString.from_bytes(x.to_bytes(), 4) == x
    assert BitString.zeros(5).is_zero()


@pytest.mark.parametrize("n,value", [(0, 0), (3, 8), (-1, 0)])
def test_bitstring_rejects_bad_shapes(n, value):
    with pytest.raises(ValueError):
        BitString(n, value)


def test_bitstring_rejects_non_binary_text():
    with pytest.raises(ValueError):
        BitString.from_str("0120")


def test_xor_and_dot_need_equal_lengths():
    with pytest.raises(ValueError):
        bs("01") ^ bs("011")
    with pytest.raises(ValueError):
        bs("01").dot(bs("011"))
    with pytest.raises(TypeError):
        bs("01").dot(1)


@given(bitstring_pairs())
def test_dot_is_parity_of_and(pair):
    x, y = pair
    assert x.dot(y) == sum(a & b for a, b in zip(x.bits, y.bits)) % 2
    assert (x ^ y).bits == tuple(a ^ b for a, b in zip(x.bits, y.bits))


@given(bitstring_pairs())
def test_ordering_is_lexicographic(pair):
    x, y = pair
    assert (x < y) == (str(x) < str(y))


def test_all_strings_enumerates_in_order():
    assert [str(s) for s in all_strings(2)] == ["00", "01", "10", "11"]


# -- dense states -----------------------------------------------------------------

def test_dense_state_validates_norm_and_length():
    with pytest.raises(ValueError):
        DenseState(np.array([1.0, 1.0]))
    with pytest.raises(DimensionError):
        DenseState(np.ones(3) / np.sqrt(3))
    assert DenseState(np.array([0.6, 0.8])).num_qubits == 1


def test_dense_cap_is_configurable():
    assert qubit_cap() == 12
    previous = set_qubit_cap(2)
    try:
        with pytest.raises(DimensionError):
            DenseState.basis(BitString(3, 0))
    finally:
        set_qubit_cap(previous)
    assert DenseState.basis(BitString(3, 0)).num_qubits == 3


def test_dense_state_is_read_only():
    s = DenseState.basis(bs("01"))
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1


@pytest.mark.parametrize("q", [1, 2, 5])
def test_hadamard_transform_matches_kronecker_product(q):
    v = random_state(q, make_rng(q)).amplitudes
    assert np.allclose(hadamard_transform(v), oracles.hadamard_n(q) @ v, atol=1e-12)
    assert np.allclose(hadamard_matrix(q), oracles.hadamard_n(q), atol=1e-12)


def test_trace_distance_examples():
    zero = np.diag([1.0, 0.0])
    one = np.diag([0.0, 1.0])
    plus = np.full((2, 2), 0.5)
    assert trace_distance(zero, zero) == pytest.approx(0.0, abs=1e-12)
    assert trace_distance(zero, one) == pytest.approx(1.0, abs=1e-12)
    # eigenvalues of |0><0| - |+><+| are +-1/sqrt(2)
    assert trace_distance(zero, plus) == pytest.approx(0.7071067811865476, abs=1e-12)


def test_trace_distance_accepts_pure_states():
    a = DenseState.basis(bs("0"))
    b = DenseState(np.array([1, 1]) / np.sqrt(2))
    assert trace_distance(a, b) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_trace_distance_rejects_bad_inputs():
    with pytest.raises(DimensionError):
        trace_distance(np.eye(2) / 2, np.eye(4) / 4)
    with pytest.raises(ValueError):
        trace_distance(np.diag([0.7, 0.7]), np.eye(2) / 2)      # trace 1.4
    with pytest.raises(ValueError):
        trace_distance(np.diag([1.5, -0.5]), np.eye(2) / 2)     # not PSD
    with pytest.raises(ValueError):
        trace_distance(np.array([[0.5, 0.5], [0.0, 0.5]]), np.eye(2) / 2)   # not Hermitian


@settings(max_examples=60)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
def test_trace_distance_agrees_with_oracle(seed, q):
    rng = make_rng(seed)
    a = random_state(q, rng).density_matrix()
    u = random_unitary(1 << q, rng)
    b = u @ a @ u.conj().T
    assert trace_distance(a, b) == pytest.approx(oracles.trace_distance(a, b), abs=1e-9)


# -- two-branch states ------------------------------------------------------------

def test_two_branch_requires_distinct_branches():
    with pytest.raises(ValueError):
        TwoBranchState(bs("01"), bs("01"), 0)
    with pytest.raises(ValueError):
        TwoBranchState(bs("01"), bs("011"), 0)
    with pytest.raises(ValueError):
        TwoBranchState(bs("01"), bs("10"), 2)


@given(two_branch_params())
def test_canonical_form_ignores_argument_order(params):
    n, x0, x1, b = params
    s = TwoBranchState(BitString(n, x0), BitString(n, x1), b)
    t = TwoBranchState(BitString(n, x1), BitString(n, x0), b)
    assert s == t
    assert s.x0 < s.x1
    assert sorted(s.support()) == sorted([BitString(n, x0), BitString(n, x1)])


@given(two_branch_params())
def test_dense_expansion_has_two_equal_weights(params):
    n, x0, x1, b = params
    probs = TwoBranchState(BitString(n, x0), BitString(n, x1), b).to_dense().probabilities()
    assert np.count_nonzero(probs > 1e-12) == 2
    assert probs[x0] == pytest.approx(0.5) and probs[x1] == pytest.approx(0.5)


@pytest.mark.parametrize("b", [0, 1])
def test_hadamard_measure_single_qubit_is_deterministic(b):
    s = TwoBranchState(bs("0"), bs("1"), b)
    rng = make_rng(7)
    assert {str(hadamard_measure(s, rng)) for _ in range(200)} == {str(b)}


def test_hadamard_support_three_qubits():
    s = TwoBranchState(bs("001"), bs("110"), 1)
    # dense Born rule (oracle): four outcomes of probability 1/4 each
    expected = {"001", "010", "100", "111"}
    assert {str(w) for w in s.hadamard_support()} == expected
    probs = oracles.born_hadamard(3, 0b001, 0b110, 1)
    assert {format(w, "03b") for w in range(8) if probs[w] > 1e-12} == expected
    rng = make_rng(3)
    counts = {}
    for _ in range(40_000):
        w = str(hadamard_measure(s, rng))
        counts[w] = counts.get(w, 0) + 1
    assert set(counts) == expected
    assert all(abs(c / 40_000 - 0.25) < 0.015 for c in counts.values())


@settings(max_examples=80)
@given(two_branch_params(), st.integers(0, 2 ** 32 - 1))
def test_hadamard_outcomes_satisfy_phase_relation(params, seed):
    n, x0, x1, b = params
    s = TwoBranchState(BitString(n, x0), BitString(n, x1), b)
    z = BitString(n, x0) ^ BitString(n, x1)
    rng = make_rng(seed)
    for _ in range(50):
        assert decrypt_bit(z, hadamard_measure(s, rng)) == b
    batch = hadamard_measure_batch(s, rng, 200)
    assert all(z.dot(BitString(n, int(w))) == b for w in batch)


@settings(max_examples=40)
@given(two_branch_params())
def test_analytic_support_equals_dense_oracle(params):
    n, x0, x1, b = params
    s = TwoBranchState(BitString(n, x0), BitString(n, x1), b)
    probs = oracles.born_hadamard(n, x0, x1, b)
    assert {w.value for w in s.hadamard_support()} == set(np.flatnonzero(probs > 1e-12).tolist())


def test_batch_and_single_samplers_agree_in_distribution():
    s = TwoBranchState(bs("0110"), bs("1011"), 0)
    rng = make_rng(11)
    single = np.bincount([hadamard_measure(s, rng).value for _ in range(40_000)], minlength=16)
    batch = np.bincount(hadamard_measure_batch(s, rng, 40_000).astype(np.int64), minlength=16)
    assert np.array_equal(single > 0, batch > 0)
    assert 0.5 * np.abs(single / 40_000 - batch / 40_000).sum() < 0.02


def test_measurements_are_deterministic_given_seed():
    s = TwoBranchState(bs("00110"), bs("11010"), 1)
    runs = []
    for _ in range(2):
        rng = make_rng(99)
        runs.append([str(hadamard_measure(s, rng)) + str(computational_measure(s, rng))
                     for _ in range(100)])
    assert runs[0] == runs[1]


def test_computational_measure_returns_a_branch():
    s = TwoBranchState(bs("101"), bs("010"), 0)
    rng = make_rng(0)
    assert {computational_measure(s, rng) for _ in range(100)} == {bs("101"), bs("010")}


def test_computational_measure_is_fair():
    s = TwoBranchState(bs("00"), bs("11"), 0)
    rng = make_rng(5)
    hits = sum(computational_measure(s, rng) == bs("00") for _ in range(100_000))
    assert abs(hits / 100_000 - 0.5) <= 0.02


def test_computational_measure_matches_dense_born_rule():
    rng = make_rng(21)
    s = TwoBranchState(bs("0111"), bs("1001"), 1)
    probs = oracles.born_computational(4, 0b0111, 0b1001, 1)
    counts = np.bincount([computational_measure(s, rng).value for _ in range(100_000)],
                         minlength=16)
    assert 0.5 * np.abs(counts / 100_000 - probs).sum() <= 0.02


def test_decrypt_bit_examples():
    assert decrypt_bit(bs("000"), bs("101")) == 0
    assert decrypt_bit(bs("111"), bs("101")) == 0
    assert decrypt_bit(bs("110"), bs("101")) == 1
    with pytest.raises(ValueError):
        decrypt_bit(bs("11"), bs("101"))


# -- purified joint states --------------------------------------------------------

def _dense(joint):
    return joint.to_dense().vec.reshape(-1)


def test_purify_rejects_equal_branches():
    with pytest.raises(ValueError):
        purify(bs("010"), bs("010"))


@given(two_branch_params(max_n=6))
def test_purified_state_matches_dense_construction(params):
    n, x0, x1, _ = params
    joint = purify(BitString(n, x0), BitString(n, x1))
    assert joint.norm2() == 1
    assert np.allclose(_dense(joint), oracles.purified_vector(n, x0, x1), atol=1e-12)


@given(two_branch_params(max_n=5))
def test_purified_reductions(params):
    n, x0, x1, _ = params
    joint = purify(BitString(n, x0), BitString(n, x1))
    assert joint.reduced_c() == [[Fraction(1, 2), 0], [0, Fraction(1, 2)]]
    vec = oracles.purified_vector(n, x0, x1)
    mixture = 0.5 * sum(np.outer(v, v.conj()) for v in
                        (oracles.two_branch_vector(n, x0, x1, b) for b in (0, 1)))
    assert np.allclose(oracles.reduced_a(vec), mixture, atol=1e-12)


def test_measuring_c_first_leaves_two_branch_state_with_that_phase():
    x0, x1 = bs("011"), bs("100")
    joint = purify(x0, x1)
    for c, child in joint.c_branches(COMPUTATIONAL):
        assert child.norm2() == Fraction(1, 2)
        a_vec = child.to_dense().vec[c]
        expected = oracles.two_branch_vector(3, x0.value, x1.value, c)
        assert abs(np.vdot(expected, a_vec / np.linalg.norm(a_vec))) == pytest.approx(1.0)


def test_measuring_a_first_collapses_c_to_plus_or_minus():
    x0, x1 = bs("0101"), bs("0011")
    joint = purify(x0, x1)
    for a, child in joint.a_branches(COMPUTATIONAL):
        assert child.norm2() == Fraction(1, 2)
        outcomes = dict(child.c_branches(HADAMARD))
        expected = 0 if a == x0 else 1            # |+> after x0, |-> after x1
        assert list(outcomes) == [expected]
        assert outcomes[expected].norm2() == Fraction(1, 2)
        vec = oracles.c_projector(4, "hadamard", expected) @ oracles.a_projector(
            4, "computational", a.value) @ oracles.purified_vector(4, x0.value, x1.value)
        assert np.vdot(vec, vec).real == pytest.approx(0.5)


def test_measuring_c_in_hadamard_basis_first_picks_a_branch():
    x0, x1 = bs("110"), bs("001")
    joint = purify(x0, x1)
    branches = joint.c_branches(HADAMARD)
    assert [h for h, _ in branches] == [0, 1]
    for h, child in branches:
        assert child.norm2() == Fraction(1, 2)
        assert child.a_support() == [(x0, x1)[h].value]


def test_c_measure_probabilities_and_normalisation():
    joint = purify(bs("01"), bs("10"))
    rng = make_rng(4)
    seen = []
    for _ in range(4000):
        bit, child = c_measure(joint, COMPUTATIONAL, rng)
        assert child.norm2() == 1
        seen.append(bit)
    assert abs(np.mean(seen) - 0.5) < 0.03
    _, collapsed = joint.a_branches(COMPUTATIONAL)[0]
    assert {c_measure(collapsed, HADAMARD, rng)[0] for _ in range(100)} == {0}


def test_c_register_probabilities_after_circuit_match_dense_oracle():
    n, k = 3, 1
    x0, x1 = 0b010, 0b111
    u = random_unitary(1 << (n + k), make_rng(8))
    dense = purify(BitString(n, x0), BitString(n, x1)).to_dense(k).apply(u)
    vec = np.kron(oracles.purified_vector(n, x0, x1).reshape(2, -1),
                  oracles.ket(2, 0)).reshape(-1)
    vec = np.kron(oracles.I2, u) @ vec
    for basis in (COMPUTATIONAL, HADAMARD):
        got = {c: child.norm2() for c, child in dense.c_branches(basis)}
        for c in (0, 1):
            proj = oracles.c_projector(n + k, basis, c) @ vec
            assert got.get(c, 0.0) == pytest.approx(np.vdot(proj, proj).real, abs=1e-9)


def test_lift_idles_the_c_register():
    s = TwoBranchState(bs("01"), bs("10"), 1)
    joint = lift(s)
    assert [c for c, _ in joint.c_branches(COMPUTATIONAL)] == [0]
    assert np.allclose(_dense(joint), oracles.lifted_vector(2, 1, 2, 1), atol=1e-12)


def test_a_sample_agrees_with_enumeration():
    joint = purify(bs("0110"), bs("1100"))
    _, after_c = joint.c_branches(HADAMARD)[0]
    exact = {w.value: float(child.norm2()) for w, child in after_c.a_branches(HADAMARD)}
    rng = make_rng(12)
    counts = {}
    for _ in range(20_000):
        w, _ = after_c.a_sample(HADAMARD, rng)
        counts[w.value] = counts.get(w.value, 0) + 1
    total = float(after_c.norm2())
    assert set(counts) <= set(exact)
    assert 0.5 * sum(abs(counts.get(w, 0) / 20_000 - p / total) for w, p in exact.items()) < 0.03


def test_hadamard_enumeration_respects_cap():
    joint = purify(BitString(13, 0), BitString(13, 1))
    with pytest.raises(DimensionError):
        joint.a_branches(HADAMARD)
