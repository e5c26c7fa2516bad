import numpy as np
import pytest

from qbaker.bakermap import (
    Gate,
    GateList,
    apply_baker_fast,
    apply_baker_last,
    baker_composed,
    baker_from_basis_map,
    circuit_to_matrix,
    cyclic_shift_operator,
    emit_circuit,
    iterate,
    last_qubit_unitary,
)
from qbaker.classical import label_shift
from qbaker.lattice import Dimensions, DotLabel, iter_labels
from qbaker.qfourier import (
    StateVector,
    basis_state,
    dot_state_transform,
    partial_transform,
    unitarity_defect,
)


def random_state(N, rng):
    amps = rng.standard_normal(2**N) + 1j * rng.standard_normal(2**N)
    return StateVector(N=N, amps=amps / np.linalg.norm(amps))


def random_product_state(N, rng):
    amps = np.ones(1, dtype=complex)
    for _ in range(N):
        q = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        amps = np.kron(amps, q / np.linalg.norm(q))
    return StateVector(N=N, amps=amps)


U_EXPECTED = np.array(
    [[np.exp(-1j * np.pi / 4), np.exp(1j * np.pi / 4)],
     [np.exp(1j * np.pi / 4), np.exp(-1j * np.pi / 4)]]
) / np.sqrt(2)


# --- cyclic shift ------------------------------------------------------------


def test_cyclic_shift_examples():
    assert np.abs(cyclic_shift_operator(Dimensions(3), 1) - np.eye(8)).max() == 0.0
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert np.abs(cyclic_shift_operator(Dimensions(2), 2) - swap).max() == 0.0
    # |110> -> |101>
    out = cyclic_shift_operator(Dimensions(3), 3) @ basis_state(3, 0b110).amps
    assert np.abs(out - basis_state(3, 0b101).amps).max() == 0.0


def test_cyclic_shift_range():
    with pytest.raises(ValueError):
        cyclic_shift_operator(Dimensions(2), 0)
    with pytest.raises(ValueError):
        cyclic_shift_operator(Dimensions(2), 3)


# --- dense constructions -----------------------------------------------------


def test_last_qubit_unitary_columns():
    u = last_qubit_unitary()
    assert np.abs(u - U_EXPECTED).max() < 1e-15
    assert np.abs(u.conj().T @ u - np.eye(2)).max() < 1e-15


def test_basis_map_n1_is_u():
    assert np.abs(baker_from_basis_map(Dimensions(1), 1) - U_EXPECTED).max() < 1e-15
    assert np.abs(baker_composed(Dimensions(1), 1) - U_EXPECTED).max() < 1e-15


def test_composed_equals_basis_map():
    for N in range(1, 7):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            diff = np.abs(baker_from_basis_map(dims, n) - baker_composed(dims, n)).max()
            assert diff < 1e-12, (N, n, diff)


def test_b1_is_g0_g1_dagger():
    for N in range(1, 7):
        dims = Dimensions(N)
        direct = partial_transform(dims, 0) @ partial_transform(dims, 1).conj().T
        assert np.abs(baker_composed(dims, 1) - direct).max() < 1e-12


def test_maps_are_unitary():
    for N in range(1, 7):
        for n in range(1, N + 1):
            assert unitarity_defect(baker_composed(Dimensions(N), n)) < 1e-12


def test_dot_shift_law_with_phase():
    # <shifted|B|label> = 1 exactly, phase included
    for N in range(1, 6):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            b = baker_composed(dims, n)
            for label in iter_labels(N, n):
                target = dot_state_transform(label_shift(label)).amps
                source = dot_state_transform(label).amps
                assert abs(np.vdot(target, b @ source) - 1.0) < 1e-12


def test_phase_space_cell_stretches():
    # the image of a dot state is a dot state whose cell doubled in q and
    # halved in p
    from qbaker.lattice import label_cell

    for N in range(1, 7):
        for n in range(1, N + 1):
            for label in iter_labels(N, n):
                before = label_cell(label)
                after = label_cell(label_shift(label))
                assert after.qwidth == 2 * before.qwidth
                assert after.pwidth == before.pwidth / 2


# --- fast applies ------------------------------------------------------------


def test_apply_baker_last_single_qubit():
    out = apply_baker_last(basis_state(1, 0))
    assert np.abs(out.amps - U_EXPECTED[:, 0]).max() < 1e-15


def test_apply_baker_last_matches_dense():
    rng = np.random.default_rng(23)
    for N in range(1, 8):
        dense = baker_from_basis_map(Dimensions(N), N)
        for _ in range(5):
            state = random_state(N, rng)
            out = apply_baker_last(state)
            assert np.abs(out.amps - dense @ state.amps).max() < 1e-10


def test_bn_equals_u_on_last_times_cycle():
    for N in range(1, 8):
        dims = Dimensions(N)
        direct = np.kron(np.eye(2 ** (N - 1)), last_qubit_unitary()) @ cyclic_shift_operator(
            dims, N
        )
        assert np.abs(baker_composed(dims, N) - direct).max() < 1e-12


def test_apply_fast_matches_dense():
    rng = np.random.default_rng(31)
    for N in range(1, 9):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            dense = baker_composed(dims, n)
            for _ in range(5):
                state = random_state(N, rng)
                out = apply_baker_fast(state, n)
                assert np.abs(out.amps - dense @ state.amps).max() < 1e-10


def test_apply_fast_moves_dot_states():
    for N in range(1, 7):
        for n in range(1, N + 1):
            for label in iter_labels(N, n):
                out = apply_baker_fast(dot_state_transform(label), n)
                target = dot_state_transform(label_shift(label)).amps
                assert abs(np.vdot(target, out.amps) - 1.0) < 1e-10


def test_apply_fast_validates_n():
    with pytest.raises(ValueError):
        apply_baker_fast(basis_state(2, 0), 0)
    with pytest.raises(ValueError):
        apply_baker_fast(basis_state(2, 0), 3)


def test_iterate_zero_steps_and_hook():
    state = basis_state(3, 5)
    seen = []
    out = iterate(state, 1, 0, observe=lambda k, s: seen.append(k))
    assert out is state
    assert seen == [0]

    seen.clear()
    out = iterate(state, 1, 4, observe=lambda k, s: seen.append((k, s.norm())))
    assert [k for k, _ in seen] == [0, 1, 2, 3, 4]
    assert abs(out.norm() - 1.0) < 4e-10


def test_iterate_norm_drift_100_steps():
    rng = np.random.default_rng(47)
    state = random_state(10, rng)
    out = iterate(state, 1, 100)
    assert abs(out.norm() - 1.0) < 1e-8


def test_iterate_follows_label_until_dot_hits_zero():
    # a dot-basis input with n = 1 tracks the label shift for exactly one
    # step; iteration past that keeps applying the same fixed map
    N = 4
    label = DotLabel.parse("011.1")
    overlaps = []

    def watch(step, state):
        if step == 1:
            target = dot_state_transform(label_shift(label)).amps
            overlaps.append(np.vdot(target, state.amps))

    iterate(dot_state_transform(label), 1, N, observe=watch)
    assert len(overlaps) == 1
    assert abs(overlaps[0] - 1.0) < 1e-10


def test_iterate_rejects_negative_steps():
    with pytest.raises(ValueError):
        iterate(basis_state(2, 0), 1, -1)


# --- gate records ------------------------------------------------------------


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate.single_qubit(1, np.array([[1.0, 1.0], [0.0, 1.0]]))  # not unitary
    with pytest.raises(ValueError):
        Gate.swap(2, 2)  # duplicate targets
    with pytest.raises(ValueError):
        Gate(kind="twist", targets=(1,))
    with pytest.raises(ValueError):
        GateList(N=1, gates=(Gate.swap(1, 2),))  # target beyond N


def test_circuit_to_matrix_basics():
    assert np.abs(circuit_to_matrix(GateList(N=2, gates=())) - np.eye(4)).max() == 0.0
    swap = circuit_to_matrix(GateList(N=2, gates=(Gate.swap(1, 2),)))
    assert np.abs(swap - np.eye(4)[[0, 2, 1, 3]]).max() == 0.0
    with pytest.raises(ValueError):
        circuit_to_matrix(GateList(N=13, gates=()))


def test_gate_embeddings_against_kron():
    rng = np.random.default_rng(3)
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, _ = np.linalg.qr(z)
    got = circuit_to_matrix(GateList(N=2, gates=(Gate.single_qubit(2, q),)))
    assert np.abs(got - np.kron(np.eye(2), q)).max() < 1e-14

    theta = 0.613
    got = circuit_to_matrix(GateList(N=2, gates=(Gate.controlled_phase(1, 2, theta),)))
    assert np.abs(got - np.diag([1, 1, 1, np.exp(1j * theta)])).max() < 1e-14

    got = circuit_to_matrix(GateList(N=1, gates=(Gate.global_phase(theta),)))
    assert np.abs(got - np.exp(1j * theta) * np.eye(2)).max() < 1e-14


# --- lowering ----------------------------------------------------------------


def test_emit_circuit_single_qubit_case():
    gl = emit_circuit(Dimensions(1), 1)
    kinds = [g.kind for g in gl.gates]
    assert kinds == ["single_qubit"]
    assert np.abs(gl.gates[0].matrix - U_EXPECTED).max() < 1e-14


def test_emit_circuit_last_map_shape():
    # n = N lowers to adjacent swaps plus one single-qubit gate, nothing else
    for N in (2, 3, 5):
        gl = emit_circuit(Dimensions(N), N)
        kinds = [g.kind for g in gl.gates]
        assert kinds == ["swap"] * (N - 1) + ["single_qubit"]
        assert gl.gates[-1].targets == (N,)
        assert np.abs(gl.gates[-1].matrix - U_EXPECTED).max() < 1e-14


def test_emit_circuit_matches_dense():
    for N in range(1, 6):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            got = circuit_to_matrix(emit_circuit(dims, n))
            want = baker_from_basis_map(dims, n)
            assert np.abs(got - want).max() < 1e-10, (N, n)


def test_emit_circuit_gate_count_quadratic():
    for N in range(1, 9):
        for n in range(1, N + 1):
            assert len(emit_circuit(Dimensions(N), n)) <= 3 * N**2


def test_images_of_products_stay_products_for_last_map():
    rng = np.random.default_rng(53)
    from qbaker.analysis import max_contiguous_cut_entropy

    for _ in range(20):
        state = random_product_state(6, rng)
        image = apply_baker_last(state)
        assert max_contiguous_cut_entropy(image) < 1e-10
