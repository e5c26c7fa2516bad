"""Acceptance checks for the whole package, runnable from the CLI or pytest.

Each criterion produces one or more CheckResult records with an observed
value, its tolerance, and the comparison sense; a restricted run (max_n)
skips sub-checks whose defining size is out of reach instead of failing
them.  All randomness is drawn from generators seeded per check, so a run
is reproducible from (seed, max_n) alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .analysis import (
    check_strict_localization,
    correspondence_trajectory,
    eigenphases,
    max_contiguous_cut_entropy,
)
from .bakermap import (
    apply_baker_fast,
    apply_baker_last,
    baker_composed,
    baker_from_basis_map,
    circuit_to_matrix,
    cyclic_shift_operator,
    emit_circuit,
    last_qubit_unitary,
)
from .classical import SymbolString, decode, geometric_baker, label_shift, shift
from .lattice import Dimensions, bits_to_index, iter_labels
from .qfourier import (
    StateVector,
    antiperiodic_dft,
    dot_state_product,
    dot_state_transform,
    partial_transform,
    unitarity_defect,
)

DEFAULT_SEED = 20990


@dataclass
class CheckResult:
    name: str
    passed: bool
    observed: float
    tolerance: float
    sense: str = "max<="  # or "min>="
    details: str = ""
    skipped: bool = False

    @property
    def margin(self) -> float:
        if self.sense == "max<=":
            return self.tolerance - self.observed
        return self.observed - self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "skipped": self.skipped,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "sense": self.sense,
            "margin": self.margin,
            "details": self.details,
        }


def _max_result(name: str, observed: float, tol: float, details: str = "") -> CheckResult:
    return CheckResult(name, bool(observed <= tol), float(observed), tol, "max<=", details)


def _min_result(name: str, observed: float, tol: float, details: str = "") -> CheckResult:
    return CheckResult(name, bool(observed >= tol), float(observed), tol, "min>=", details)


def _skip(name: str, needed: int, cap: int) -> CheckResult:
    return CheckResult(
        name, True, float("nan"), float("nan"), "max<=",
        f"skipped: needs N={needed}, run capped at {cap}", skipped=True,
    )


def random_state(N: int, rng: np.random.Generator) -> StateVector:
    amps = rng.standard_normal(1 << N) + 1j * rng.standard_normal(1 << N)
    return StateVector(N=N, amps=amps / np.linalg.norm(amps))


def random_product_state(N: int, rng: np.random.Generator) -> StateVector:
    amps = np.ones(1, dtype=np.complex128)
    for _ in range(N):
        qubit = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        amps = np.kron(amps, qubit / np.linalg.norm(qubit))
    return StateVector(N=N, amps=amps)


def _best_time(fn, reps: int = 5) -> float:
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


# --- criteria ---------------------------------------------------------------


def check_unitarity(cap: int, perturb: float = 0.0) -> list[CheckResult]:
    """1. G_n and B_n are unitary to 1e-12 for all N <= 8."""
    worst = 0.0
    injected = perturb != 0.0
    for N in range(1, min(8, cap) + 1):
        dims = Dimensions(N)
        for n in range(N + 1):
            g = partial_transform(dims, n)
            if injected:
                g[0, 0] += perturb
                injected = False
            worst = max(worst, unitarity_defect(g))
        for n in range(1, N + 1):
            worst = max(worst, unitarity_defect(baker_composed(dims, n)))
    details = f"perturbation {perturb:g} injected into one G_n entry" if perturb else ""
    return [_max_result("1 unitarity G_n/B_n", worst, 1e-12, details)]


def check_boundary_identities(cap: int) -> list[CheckResult]:
    """2. G_N = i*I and G_0 equals the antiperiodic DFT, entrywise to 1e-15."""
    worst = 0.0
    for N in range(1, min(8, cap) + 1):
        dims = Dimensions(N)
        worst = max(worst, np.abs(partial_transform(dims, N) - 1j * np.eye(dims.D)).max())
        worst = max(worst, np.abs(partial_transform(dims, 0) - antiperiodic_dft(dims.D)).max())
    return [_max_result("2 boundary identities", worst, 1e-15)]


def check_b1_reduction(cap: int) -> list[CheckResult]:
    """3. The n = 1 map equals G_0 G_1^dag entrywise to 1e-12."""
    worst = 0.0
    for N in range(1, min(8, cap) + 1):
        dims = Dimensions(N)
        direct = partial_transform(dims, 0) @ partial_transform(dims, 1).conj().T
        worst = max(worst, np.abs(baker_composed(dims, 1) - direct).max())
    return [_max_result("3 B_1 = G_0 G_1^dag", worst, 1e-12)]


def check_route_equivalence(cap: int) -> list[CheckResult]:
    """4. Basis-map and composed constructions agree entrywise to 1e-12."""
    worst = 0.0
    for N in range(1, min(8, cap) + 1):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            diff = np.abs(baker_from_basis_map(dims, n) - baker_composed(dims, n)).max()
            worst = max(worst, diff)
    return [_max_result("4 route equivalence", worst, 1e-12)]


def check_dot_shift_law(cap: int) -> list[CheckResult]:
    """5. <shifted label|B_n|label> = 1 to 1e-12 for every label, N <= 6."""
    worst = 0.0
    for N in range(1, min(6, cap) + 1):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            b = baker_composed(dims, n)
            for label in iter_labels(N, n):
                source = dot_state_transform(label).amps
                target = dot_state_transform(label_shift(label)).amps
                worst = max(worst, abs(np.vdot(target, b @ source) - 1.0))
    return [_max_result("5 dot-shift law", worst, 1e-12)]


def check_product_form(cap: int) -> list[CheckResult]:
    """6. Product-state and transform constructions of every dot state agree
    to 1e-12 for N <= 6."""
    worst = 0.0
    for N in range(1, min(6, cap) + 1):
        for n in range(N + 1):
            for label in iter_labels(N, n):
                diff = np.abs(
                    dot_state_product(label).amps - dot_state_transform(label).amps
                ).max()
                worst = max(worst, diff)
    return [_max_result("6 product-form equivalence", worst, 1e-12)]


def check_bn_structure(cap: int, seed: int) -> list[CheckResult]:
    """7. The n = N map is (u on the last slot) * Cyc_N, its images of product
    states stay products, and smaller n genuinely entangle."""
    out = []
    worst = 0.0
    for N in range(1, min(8, cap) + 1):
        dims = Dimensions(N)
        direct = np.kron(np.eye(1 << (N - 1)), last_qubit_unitary()) @ cyclic_shift_operator(
            dims, N
        )
        worst = max(worst, np.abs(baker_composed(dims, N) - direct).max())
    out.append(_max_result("7a B_N = (u on last)*Cyc_N", worst, 1e-12))

    N = min(6, cap)
    if N >= 2:
        rng = np.random.default_rng([seed, 7])
        worst_ent = 0.0
        for _ in range(100):
            image = apply_baker_last(random_product_state(N, rng))
            worst_ent = max(worst_ent, max_contiguous_cut_entropy(image))
        out.append(
            _max_result("7b B_N keeps products unentangled", worst_ent, 1e-10, f"N={N}")
        )
    else:
        out.append(_skip("7b B_N keeps products unentangled", 2, cap))

    if cap >= 3:
        rng = np.random.default_rng([seed, 77])
        dims = Dimensions(3)
        b1 = baker_composed(dims, 1)
        best = 0.0
        inputs = [np.eye(8)[:, j] for j in range(8)]
        inputs += [random_product_state(3, rng).amps for _ in range(20)]
        for amps in inputs:
            image = StateVector(N=3, amps=b1 @ amps)
            best = max(best, max_contiguous_cut_entropy(image))
        out.append(_min_result("7c B_1 entangles at N=3", best, 0.1))
    else:
        out.append(_skip("7c B_1 entangles at N=3", 3, cap))
    return out


def check_displacement_algebra(cap: int) -> list[CheckResult]:
    """8. UV = VU e^{2 pi i/D} and U^D = V^D = -1, to 1e-12 for N <= 8."""
    from .qfourier import displacement_u, displacement_v

    worst = 0.0
    for N in range(1, min(8, cap) + 1):
        dims = Dimensions(N)
        u = displacement_u(dims)
        v = displacement_v(dims)
        eye = np.eye(dims.D)
        worst = max(worst, np.abs(u @ v - np.exp(2j * np.pi / dims.D) * (v @ u)).max())
        worst = max(worst, np.abs(np.linalg.matrix_power(u, dims.D) + eye).max())
        worst = max(worst, np.abs(np.linalg.matrix_power(v, dims.D) + eye).max())
    return [_max_result("8 displacement algebra", worst, 1e-12)]


def check_localization(cap: int) -> list[CheckResult]:
    """9. Strict flat position support for every label (N <= 8), and momentum
    window masses matching a dense-transform oracle to 1e-12."""
    worst_pos = 0.0
    worst_mass = 0.0
    support_ok = True
    bad = ""
    for N in range(1, min(8, cap) + 1):
        dims = Dimensions(N)
        dense_f = antiperiodic_dft(dims.D)
        for n in range(N + 1):
            for label in iter_labels(N, n):
                report = check_strict_localization(label)
                x_int = bits_to_index(label.xbits) if label.xbits else 0
                expected = tuple(range(x_int << (N - n), (x_int + 1) << (N - n)))
                if report.support != expected:
                    support_ok = False
                    bad = f"support mismatch at {label}"
                state = dot_state_transform(label)
                off = np.delete(np.abs(state.amps), list(expected))
                worst_pos = max(worst_pos, report.uniform_modulus_dev)
                if off.size:
                    worst_pos = max(worst_pos, float(off.max()))
                momentum = dense_f.conj().T @ state.amps
                a_int = bits_to_index(label.abits) if label.abits else 0
                lo = a_int << n
                dense_mass = float(np.sum(np.abs(momentum[lo : lo + (1 << n)]) ** 2))
                worst_mass = max(worst_mass, abs(report.window_mass - dense_mass))
    first = _max_result("9a strict position localization", worst_pos, 1e-12, bad)
    first.passed = first.passed and support_ok
    return [first, _max_result("9b momentum window mass vs dense", worst_mass, 1e-12)]


def check_classical_oracle(cap: int, seed: int) -> list[CheckResult]:
    """10. decode(shift(s)) equals the geometric map exactly on 1000 random
    windows, and the quantum trajectory tracks the label shift, N <= 5."""
    rng = np.random.default_rng([seed, 10])
    mismatches = 0
    for _ in range(1000):
        left = tuple(rng.integers(0, 2, rng.integers(0, 33)))
        right = tuple(rng.integers(0, 2, rng.integers(1, 33)))
        s = SymbolString(left=left, right=right)
        if decode(shift(s)) != geometric_baker(*decode(s)):
            mismatches += 1
    out = [_max_result("10a symbolic vs geometric (exact)", float(mismatches), 0.0)]

    worst = 0.0
    for N in range(1, min(5, cap) + 1):
        for n in range(N + 1):
            for label in iter_labels(N, n):
                for step in correspondence_trajectory(label, steps=n):
                    worst = max(worst, 1.0 - step.overlap.real)
    out.append(_max_result("10b correspondence trajectory", worst, 1e-10))
    return out


def check_fast_path(cap: int, seed: int) -> list[CheckResult]:
    """11. Fast apply matches dense matvecs to 1e-10 (N <= 10), beats the
    dense matvec >= 10x at N = 12, and one N = 20 step runs in < 5 s."""
    rng = np.random.default_rng([seed, 11])
    worst = 0.0
    for N in range(1, min(10, cap) + 1):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            dense = baker_composed(dims, n)
            for _ in range(100):
                state = random_state(N, rng)
                diff = np.abs(apply_baker_fast(state, n).amps - dense @ state.amps).max()
                worst = max(worst, diff)
    out = [_max_result("11a fast apply vs dense matvec", worst, 1e-10)]

    if cap >= 12:
        dims = Dimensions(12)
        dense = baker_composed(dims, 1)
        state = random_state(12, rng)
        apply_baker_fast(state, 1)  # warm caches
        dense_t = _best_time(lambda: dense @ state.amps)
        fast_t = _best_time(lambda: apply_baker_fast(state, 1))
        err = np.abs(apply_baker_fast(state, 1).amps - dense @ state.amps).max()
        out.append(
            _min_result(
                "11b speedup at N=12", dense_t / fast_t, 10.0,
                f"dense {dense_t * 1e3:.2f} ms, fast {fast_t * 1e3:.2f} ms, err {err:.2e}",
            )
        )
    else:
        out.append(_skip("11b speedup at N=12", 12, cap))

    if cap >= 20:
        state = random_state(20, rng)
        t0 = time.perf_counter()
        result = apply_baker_fast(state, 1)
        elapsed = time.perf_counter() - t0
        out.append(
            _max_result(
                "11c one N=20 step under 5 s", elapsed, 5.0,
                f"norm drift {abs(result.norm() - 1.0):.2e}",
            )
        )
    else:
        out.append(_skip("11c one N=20 step under 5 s", 20, cap))
    return out


def _circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % (2.0 * np.pi)
    return min(d, 2.0 * np.pi - d)


def check_circuit_lowering(cap: int) -> list[CheckResult]:
    """12. Lowered circuits reproduce the dense maps to 1e-10 with O(N^2)
    gates, and the N = 1 circuit has eigenphases {0, 3 pi/2}."""
    worst = 0.0
    for N in range(1, min(6, cap) + 1):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            got = circuit_to_matrix(emit_circuit(dims, n))
            worst = max(worst, np.abs(got - baker_from_basis_map(dims, n)).max())
    out = [_max_result("12a circuit vs dense map", worst, 1e-10)]

    # the measured worst ratio is 2.33 at N=3, n=1 (fixed small-N overhead)
    # and decays towards ~1.1 as N grows, so c = 3 has real headroom
    ratio = 0.0
    heaviest = ""
    for N in range(1, min(8, cap) + 1):
        dims = Dimensions(N)
        for n in range(1, N + 1):
            count = len(emit_circuit(dims, n))
            if count / N**2 > ratio:
                ratio = count / N**2
                heaviest = f"{count} gates at N={N}, n={n}"
    out.append(_max_result("12b gate count <= c*N^2, c=3", ratio, 3.0, heaviest))

    spectrum = eigenphases(circuit_to_matrix(emit_circuit(Dimensions(1), 1)))
    got = sorted(spectrum.phases)
    straight = max(_circular_distance(got[0], 0.0), _circular_distance(got[1], 1.5 * np.pi))
    crossed = max(_circular_distance(got[0], 1.5 * np.pi), _circular_distance(got[1], 0.0))
    out.append(
        _max_result("12c N=1 circuit eigenphases {0, 3pi/2}", min(straight, crossed), 1e-10)
    )
    return out


def run_all(
    max_n: int | None = None, seed: int = DEFAULT_SEED, perturb: float = 0.0
) -> list[CheckResult]:
    """Run every acceptance criterion, clamped to max_n when given."""
    cap = 20 if max_n is None else max_n
    results: list[CheckResult] = []
    results += check_unitarity(cap, perturb)
    results += check_boundary_identities(cap)
    results += check_b1_reduction(cap)
    results += check_route_equivalence(cap)
    results += check_dot_shift_law(cap)
    results += check_product_form(cap)
    results += check_bn_structure(cap, seed)
    results += check_displacement_algebra(cap)
    results += check_localization(cap)
    results += check_classical_oracle(cap, seed)
    results += check_fast_path(cap, seed)
    results += check_circuit_lowering(cap)
    return results
