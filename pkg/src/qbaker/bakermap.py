"""The dot-shift family of quantum baker's maps on N qubits.

The n-th map (1 <= n <= N) sends each dot-basis state to the dot-basis state
whose label has the dot moved one place right.  Two dense constructions are
provided: directly from that basis action, and as the composition

    B_n = G_{n-1} * Cyc_n * G_n^dag,

where Cyc_n cyclically rotates the contents of the first n qubit slots
(slot 1 moves to slot n) and G_k is the partial antiperiodic transform.  The
composed form is the production route; the basis-map form is its oracle.
It also yields an O(D*N) state apply and an O(N^2) gate-list lowering whose
matrix is verified against the dense map.

The n = N member needs no controlled phases at all: it is a cyclic qubit
shift followed by one fixed single-qubit rotation of the last slot, and so
never entangles product states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .classical import label_shift
from .lattice import Dimensions, iter_labels
from .qfourier import (
    StateVector,
    antiperiodic_dft,
    apply_partial_transform,
    dot_state_transform,
    partial_transform,
    _check_unitary,
)

DENSE_CAP_N = 12

GATE_KINDS = ("single_qubit", "controlled_phase", "swap", "global_phase")

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2)


def _phase_matrix(theta: float) -> np.ndarray:
    return np.array([[1.0, 0.0], [0.0, np.exp(1j * theta)]], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class Gate:
    """One elementary gate record; slot indices are 1-based, slot 1 = MSB."""

    kind: str
    targets: tuple[int, ...]
    matrix: Optional[np.ndarray] = None
    angle: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        targets = tuple(int(t) for t in self.targets)
        if any(t < 1 for t in targets) or len(set(targets)) != len(targets):
            raise ValueError(f"targets must be distinct slots >= 1, got {targets}")
        object.__setattr__(self, "targets", targets)
        if self.kind == "single_qubit":
            if len(targets) != 1 or self.matrix is None:
                raise ValueError("single_qubit gate needs one target and a matrix")
            mat = np.array(self.matrix, dtype=np.complex128)
            if mat.shape != (2, 2):
                raise ValueError(f"single_qubit matrix must be 2x2, got {mat.shape}")
            _check_unitary(mat, 1e-12, "single_qubit gate matrix")
            mat.setflags(write=False)
            object.__setattr__(self, "matrix", mat)
        elif self.kind == "controlled_phase":
            if len(targets) != 2 or self.angle is None:
                raise ValueError("controlled_phase gate needs two targets and an angle")
        elif self.kind == "swap":
            if len(targets) != 2:
                raise ValueError("swap gate needs two targets")
        else:
            if targets or self.angle is None:
                raise ValueError("global_phase gate needs an angle and no targets")

    @classmethod
    def single_qubit(cls, slot: int, matrix: np.ndarray) -> "Gate":
        return cls(kind="single_qubit", targets=(slot,), matrix=matrix)

    @classmethod
    def controlled_phase(cls, slot_a: int, slot_b: int, angle: float) -> "Gate":
        return cls(kind="controlled_phase", targets=(slot_a, slot_b), angle=float(angle))

    @classmethod
    def swap(cls, slot_a: int, slot_b: int) -> "Gate":
        return cls(kind="swap", targets=(slot_a, slot_b))

    @classmethod
    def global_phase(cls, angle: float) -> "Gate":
        return cls(kind="global_phase", targets=(), angle=float(angle))


@dataclass(frozen=True, eq=False)
class GateList:
    """Gate sequence in time order (first gate acts first)."""

    N: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"qubit count must be positive, got {self.N}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(t > self.N for t in g.targets):
                raise ValueError(f"gate targets {g.targets} exceed N={self.N}")

    def __len__(self) -> int:
        return len(self.gates)


def _check_map_index(N: int, n: int) -> None:
    if not 1 <= n <= N:
        raise ValueError(f"map index n={n} out of range [1, {N}]")


def _cyclic_rows(arr: np.ndarray, N: int, n: int) -> np.ndarray:
    """Rotate the first n slot-bits of the leading index: the slot-1 bit moves
    to slot n, slots 2..n move up one.  Works on vectors and on matrices
    (rows are permuted, columns untouched)."""
    tail = arr.shape[1:]
    shaped = arr.reshape((2, 1 << (n - 1), 1 << (N - n)) + tail)
    axes = (1, 0, 2) + tuple(range(3, 3 + len(tail)))
    return shaped.transpose(axes).reshape(arr.shape)


def cyclic_shift_operator(dims: Dimensions, n: int) -> np.ndarray:
    """Permutation matrix for the slot rotation (x1, x2, ..., xn, rest) ->
    (x2, ..., xn, x1, rest)."""
    _check_map_index(dims.N, n)
    return _cyclic_rows(np.eye(dims.D), dims.N, n)


def baker_from_basis_map(dims: Dimensions, n: int) -> np.ndarray:
    """Dense map assembled directly from its action on the dot basis: the
    state labelled ...a_1.x_1...x_n goes to the one labelled ...a_1x_1.x_2...x_n."""
    _check_map_index(dims.N, n)
    D = dims.D
    src = np.empty((D, D), dtype=np.complex128)
    tgt = np.empty((D, D), dtype=np.complex128)
    for label in iter_labels(dims.N, n):
        j = label.basis_index
        src[:, j] = dot_state_transform(label).amps
        tgt[:, j] = dot_state_transform(label_shift(label)).amps
    return tgt @ src.conj().T


def baker_composed(dims: Dimensions, n: int) -> np.ndarray:
    """Dense map as G_{n-1} * Cyc_n * G_n^dag.

    The left factor is block-diagonal (2^(n-1) copies of the antiperiodic
    kernel on 2^(N-n+1) amplitudes), so the product runs as a batched
    block multiply instead of a full D^3 one for n > 1.
    """
    _check_map_index(dims.N, n)
    D = dims.D
    permuted = _cyclic_rows(partial_transform(dims, n).conj().T, dims.N, n)
    kernel = antiperiodic_dft(1 << (dims.N - n + 1))
    blocks = permuted.reshape(1 << (n - 1), kernel.shape[0], D)
    return np.matmul(kernel, blocks).reshape(D, D)


def last_qubit_unitary() -> np.ndarray:
    """The fixed 2x2 rotation the n = N map applies to the shifted-out qubit:
    (1/sqrt2) [[e^{-i pi/4}, e^{i pi/4}], [e^{i pi/4}, e^{-i pi/4}]]."""
    w = np.exp(1j * np.pi / 4)
    return np.array([[w.conjugate(), w], [w, w.conjugate()]]) / np.sqrt(2)


def apply_baker_last(state: StateVector) -> StateVector:
    """Apply the n = N map: cyclic qubit shift, then the fixed rotation on the
    last slot.  Never entangles a product state."""
    shifted = _cyclic_rows(state.amps, state.N, state.N)
    out = (shifted.reshape(-1, 2) @ last_qubit_unitary().T).ravel()
    return StateVector(N=state.N, amps=out)


def apply_baker_fast(state: StateVector, n: int) -> StateVector:
    """Apply the n-th map to a state in O(D*N): inverse partial transform,
    slot rotation, forward partial transform one step shorter."""
    _check_map_index(state.N, n)
    mid = apply_partial_transform(state, n, "inverse")
    rotated = _cyclic_rows(mid.amps, state.N, n)
    return apply_partial_transform(StateVector(N=state.N, amps=rotated), n - 1, "forward")


def iterate(
    state: StateVector,
    n: int,
    steps: int,
    observe: Optional[Callable[[int, StateVector], None]] = None,
) -> StateVector:
    """Apply the n-th map `steps` times and return the final state.

    The hook, if given, sees (0, initial state) and then (k, state after step
    k) for each step.  The map index stays fixed for the whole trajectory.
    """
    if steps < 0:
        raise ValueError(f"step count must be non-negative, got {steps}")
    _check_map_index(state.N, n)
    current = state
    if observe is not None:
        observe(0, current)
    for k in range(1, steps + 1):
        current = apply_baker_fast(current, n)
        if observe is not None:
            observe(k, current)
    return current


# --- gate-list lowering -----------------------------------------------------


def _qft_gates(slots: Sequence[int]) -> list[Gate]:
    """Standard transform with kernel exp(+2 pi i x a / M)/sqrt(M) on the given
    slots (first slot = most significant): Hadamards, a controlled-phase
    ladder, and the final order-reversing swaps."""
    t = len(slots)
    gates: list[Gate] = []
    for k in range(t):
        gates.append(Gate.single_qubit(slots[k], _HADAMARD))
        for j in range(k + 1, t):
            gates.append(
                Gate.controlled_phase(slots[j], slots[k], 2.0 * np.pi / (1 << (j - k + 1)))
            )
    for l in range(t // 2):
        gates.append(Gate.swap(slots[l], slots[t - 1 - l]))
    return gates


def _antiperiodic_block(slots: Sequence[int]) -> list[Gate]:
    """Forward antiperiodic kernel on the given slots, factorized as half-bit
    phase ladder, standard transform, phase ladder, global phase e^{i pi/2M}."""
    t = len(slots)
    ladder = [
        Gate.single_qubit(slots[m - 1], _phase_matrix(np.pi / (1 << m)))
        for m in range(1, t + 1)
    ]
    gates = list(ladder) + _qft_gates(slots) + list(ladder)
    gates.append(Gate.global_phase(np.pi / (2 << t)))
    return gates


def _invert_gates(gates: Sequence[Gate]) -> list[Gate]:
    out: list[Gate] = []
    for g in reversed(gates):
        if g.kind == "single_qubit":
            out.append(Gate.single_qubit(g.targets[0], g.matrix.conj().T))
        elif g.kind == "controlled_phase":
            out.append(Gate.controlled_phase(*g.targets, -g.angle))
        elif g.kind == "swap":
            out.append(g)
        else:
            out.append(Gate.global_phase(-g.angle))
    return out


def _simplify(gates: Sequence[Gate]) -> list[Gate]:
    """Hoist global phases into one accumulator, merge runs of consecutive
    single-qubit gates on the same slot, and fold the accumulated phase into
    the last single-qubit gate (or keep one global_phase record)."""
    total_phase = 0.0
    out: list[Gate] = []
    for g in gates:
        if g.kind == "global_phase":
            total_phase += g.angle
        elif (
            g.kind == "single_qubit"
            and out
            and out[-1].kind == "single_qubit"
            and out[-1].targets == g.targets
        ):
            out[-1] = Gate.single_qubit(g.targets[0], g.matrix @ out[-1].matrix)
        else:
            out.append(g)
    if abs(np.exp(1j * total_phase) - 1.0) > 1e-15:
        for i in range(len(out) - 1, -1, -1):
            if out[i].kind == "single_qubit":
                out[i] = Gate.single_qubit(
                    out[i].targets[0], np.exp(1j * total_phase) * out[i].matrix
                )
                break
        else:
            out.append(Gate.global_phase(total_phase))
    return out


def emit_circuit(dims: Dimensions, n: int) -> GateList:
    """Lower the n-th map to elementary gates.

    Realizes G_{n-1} * Cyc_n * G_n^dag: inverse kernel block on slots
    n+1..N, adjacent swaps for the slot rotation, forward kernel block on
    slots n..N.  Gate count is O(N^2); the n = N case reduces to swaps plus
    one single-qubit gate.
    """
    _check_map_index(dims.N, n)
    gates = _invert_gates(_antiperiodic_block(range(n + 1, dims.N + 1)))
    gates += [Gate.swap(k, k + 1) for k in range(1, n)]
    gates += _antiperiodic_block(range(n, dims.N + 1))
    return GateList(N=dims.N, gates=tuple(_simplify(gates)))


def _apply_gate_rows(mat: np.ndarray, gate: Gate, N: int) -> np.ndarray:
    """Left-multiply `mat` by the embedding of `gate` into N qubits."""
    D = 1 << N
    if gate.kind == "single_qubit":
        s = gate.targets[0]
        shaped = mat.reshape(1 << (s - 1), 2, (D >> s) * mat.shape[1])
        return np.einsum("ab,ibj->iaj", gate.matrix, shaped).reshape(mat.shape)
    if gate.kind == "controlled_phase":
        s1, s2 = gate.targets
        idx = np.arange(D)
        both = ((idx >> (N - s1)) & (idx >> (N - s2)) & 1).astype(bool)
        mat = mat.copy()
        mat[both] *= np.exp(1j * gate.angle)
        return mat
    if gate.kind == "swap":
        s1, s2 = gate.targets
        idx = np.arange(D)
        differ = ((idx >> (N - s1)) ^ (idx >> (N - s2))) & 1
        swapped = idx ^ (differ << (N - s1)) ^ (differ << (N - s2))
        return mat[swapped]
    return mat * np.exp(1j * gate.angle)


def circuit_to_matrix(gl: GateList) -> np.ndarray:
    """Dense matrix of a gate list (ordered product of gate embeddings)."""
    if gl.N > DENSE_CAP_N:
        raise ValueError(f"dense circuit evaluation capped at N={DENSE_CAP_N}, got {gl.N}")
    mat = np.eye(1 << gl.N, dtype=np.complex128)
    for g in gl.gates:
        mat = _apply_gate_rows(mat, g, gl.N)
    return _check_unitary(mat, 1e-10, "circuit matrix")
