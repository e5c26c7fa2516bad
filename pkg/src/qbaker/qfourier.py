"""Antiperiodic discrete Fourier machinery on qubit strings.

The transform kernel on M = 2^m amplitudes is

    K[x, a] = 1/sqrt(M) * exp{2 pi i (x + 1/2)(a + 1/2) / M},

the half-integer-offset DFT forced by antiperiodic boundary conditions.  The
partial transform with n frozen qubits is I_{2^n} (x) K_{2^(N-n)}, acting on
the N-n least significant qubits; its two ends are the full transform (n = 0)
and i times the identity (n = N).

For fast application the kernel is factorized as

    K_M = e^{i pi/(2M)} * diag(e^{i pi x/M}) * W_M * diag(e^{i pi a/M}),

where W_M is the ordinary DFT with kernel exp(+2 pi i x a / M)/sqrt(M).  The
diagonals split into single-qubit phases (x is a sum of bit-weighted powers of
two), and W_M runs as radix-2 butterflies, so one apply costs O(D*(N-n)).
The same factorization drives the gate-level lowering in the circuit module.

Dense matrices are plain complex ndarrays; states are thin immutable wrappers
around a length-2^N amplitude vector with slot 1 the most significant qubit.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .lattice import Dimensions, DotLabel

NORM_TOL = 1e-12
UNITARY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class StateVector:
    """Immutable pure state of N qubits; amps[j] indexed by j = x_1...x_N."""

    N: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.amps, dtype=np.complex128, copy=True).ravel()
        if self.N < 1 or arr.size != (1 << self.N):
            raise ValueError(
                f"amplitude vector of length {arr.size} does not match N={self.N}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def statevector(amps: np.ndarray) -> StateVector:
    """Validating constructor: length 2^N and unit norm within NORM_TOL."""
    arr = np.asarray(amps, dtype=np.complex128).ravel()
    N = int(arr.size).bit_length() - 1
    if arr.size < 2 or arr.size != (1 << N):
        raise ValueError(f"amplitude vector length {arr.size} is not a power of two >= 2")
    norm = np.linalg.norm(arr)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    return StateVector(N=N, amps=arr)


def basis_state(N: int, j: int) -> StateVector:
    """Computational (= position) basis state |q_j>."""
    dims = Dimensions(N)
    if not 0 <= j < dims.D:
        raise IndexError(f"basis index {j} out of range [0, {dims.D})")
    amps = np.zeros(dims.D, dtype=np.complex128)
    amps[j] = 1.0
    return StateVector(N=N, amps=amps)


def unitarity_defect(m: np.ndarray) -> float:
    """Max-norm deviation of m^dag m from the identity."""
    m = np.asarray(m)
    return float(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max())


def _check_unitary(m: np.ndarray, tol: float, what: str) -> np.ndarray:
    defect = unitarity_defect(m)
    if defect > tol:
        raise ValueError(f"{what} is not unitary: defect {defect:.3e} > {tol:.1e}")
    return m


@functools.lru_cache(maxsize=None)
def _kernel_cached(M: int) -> np.ndarray:
    half = np.arange(M) + 0.5
    kernel = np.exp(2j * np.pi * np.outer(half, half) / M) / np.sqrt(M)
    _check_unitary(kernel, UNITARY_TOL, f"antiperiodic DFT (M={M})")
    kernel.setflags(write=False)
    return kernel


def antiperiodic_dft(M: int) -> np.ndarray:
    """Dense M x M transform K[x, a] = exp{2 pi i (x+1/2)(a+1/2)/M}/sqrt(M).

    M must be a power of two; M = 1 gives the 1 x 1 matrix (i).  The kernel
    is unitarity-checked once per size and cached; callers get a fresh copy.
    """
    if M < 1 or (M & (M - 1)) != 0:
        raise ValueError(f"transform size must be a power of two >= 1, got {M}")
    return _kernel_cached(M).copy()


def partial_transform(dims: Dimensions, n: int) -> np.ndarray:
    """Dense partial transform: identity on the n most significant qubits
    tensored with the antiperiodic DFT on the remaining N-n."""
    if not 0 <= n <= dims.N:
        raise ValueError(f"partial-transform index n={n} out of range [0, {dims.N}]")
    return np.kron(np.eye(1 << n), antiperiodic_dft(1 << (dims.N - n)))


@functools.lru_cache(maxsize=None)
def _bit_reversal(m: int) -> np.ndarray:
    """Bit-reversal permutation of [0, 2^m), vectorized over the index array."""
    idx = np.arange(1 << m, dtype=np.intp)
    rev = np.zeros_like(idx)
    for _ in range(m):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    rev.setflags(write=False)
    return rev


def _dft_pow2(block: np.ndarray, sign: int) -> np.ndarray:
    """Unnormalized DFT with kernel exp(sign * 2 pi i * x * a / M) along the
    last axis (M a power of two), as iterative radix-2 butterflies."""
    M = block.shape[-1]
    if M == 1:
        return block.copy()
    m = M.bit_length() - 1
    out = np.ascontiguousarray(block[..., _bit_reversal(m)])
    size = 2
    while size <= M:
        half = size // 2
        tw = np.exp(sign * 2j * np.pi * np.arange(half) / size)
        shaped = out.reshape(out.shape[:-1] + (M // size, size))
        lo = shaped[..., :half]
        hi = shaped[..., half:] * tw
        shaped[..., half:] = lo - hi
        shaped[..., :half] += hi
        size *= 2
    return out


def apply_partial_transform(
    state: StateVector, n: int, direction: str = "forward"
) -> StateVector:
    """Apply the partial transform (or its inverse) to a state.

    Matches dense multiplication by the kron-structured matrix but costs
    O(D*(N-n)): the leading n qubits index independent blocks, and the
    antiperiodic kernel runs per block as phase ladder, radix-2 butterflies,
    phase ladder, global phase.
    """
    if not 0 <= n <= state.N:
        raise ValueError(f"partial-transform index n={n} out of range [0, {state.N}]")
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    M = 1 << (state.N - n)
    psi = state.amps.reshape(1 << n, M)
    ladder = np.exp(1j * np.pi * np.arange(M) / M)
    global_phase = np.exp(1j * np.pi / (2 * M))
    if direction == "inverse":
        ladder = ladder.conj()
        global_phase = global_phase.conjugate()
    sign = +1 if direction == "forward" else -1
    out = _dft_pow2(psi * ladder, sign) / np.sqrt(M)
    out *= ladder * global_phase
    return StateVector(N=state.N, amps=out.ravel())


def dot_state_transform(label: DotLabel) -> StateVector:
    """Dot-basis state built by transforming the computational basis state
    |x_1..x_n, a_1..a_{N-n}> (momentum register starts at slot n+1)."""
    return apply_partial_transform(basis_state(label.N, label.basis_index), label.n)


def dot_state_product(label: DotLabel) -> StateVector:
    """Dot-basis state built independently as an explicit product.

    The position qubits stay |x_l>; momentum slot n+m carries
    (|0> + e^{2 pi i (0.a_{t-m+1}..a_t 1)} |1>)/sqrt(2) for m = 1..t, t = N-n,
    and the whole state picks up the phase e^{i pi (0.a_1..a_t 1)}.
    """
    t = label.N - label.n
    factors = []
    for x in label.xbits:
        qubit = np.zeros(2, dtype=np.complex128)
        qubit[x] = 1.0
        factors.append(qubit)
    for m in range(1, t + 1):
        frac = _guarded_fraction(label.abits[t - m:])
        factors.append(
            np.array([1.0, np.exp(2j * np.pi * frac)], dtype=np.complex128) / np.sqrt(2)
        )
    amps = functools.reduce(np.kron, factors, np.ones(1, dtype=np.complex128))
    amps *= np.exp(1j * np.pi * _guarded_fraction(label.abits))
    return StateVector(N=label.N, amps=amps)


def _guarded_fraction(bits: tuple[int, ...]) -> float:
    """Binary fraction 0.b_1...b_m1 (guard bit appended); exact in a double
    for m <= 50."""
    value = 0.0
    for i, b in enumerate(bits, start=1):
        value += b / (1 << i)
    return value + 1.0 / (1 << (len(bits) + 1))


def displacement_u(dims: Dimensions) -> np.ndarray:
    """Momentum-direction displacement, diagonal in position:
    U = diag(e^{2 pi i q_j})."""
    q = (np.arange(dims.D) + 0.5) / dims.D
    return np.diag(np.exp(2j * np.pi * q))


def displacement_v(dims: Dimensions) -> np.ndarray:
    """Position-direction displacement V = F diag(e^{-2 pi i p_k}) F^dag;
    maps |q_j> to |q_{j+1}> with an antiperiodic wrap |q_{D-1}> -> -|q_0>."""
    fourier = antiperiodic_dft(dims.D)
    p = (np.arange(dims.D) + 0.5) / dims.D
    v = fourier @ (np.exp(-2j * np.pi * p)[:, None] * fourier.conj().T)
    return _check_unitary(v, UNITARY_TOL, "displacement V")
