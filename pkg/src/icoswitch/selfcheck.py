"""Seeded oracle-equivalence and invariant suite behind the `verify` command.

Each check pits an independent construction against the primary one
(closed form vs matrix trace, direct joint state vs explicit Kraus set,
closed-form Fisher information vs the numeric SLD route) or asserts a
structural invariant (complete positivity, probe independence, symmetry).
All randomness is seeded, so a pass/fail outcome is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .channels import (
    PauliAxis,
    bloch_to_density,
    depolarizing_channel,
    noisy_phase_channel,
    pauli_channel,
)
from .metrology import (
    cfi_control,
    control_family,
    qfi_cascade,
    qfi_control,
    qfi_control_opt,
    qfi_numeric,
)
from .qmat import channel_choi, herm_eig
from .switch import (
    qc_closed_form,
    qc_numeric,
    s00,
    s01,
    switch_kraus_apply,
    switch_kraus_ops,
    switch_state,
)

_SEED = 20230536


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _rand_axis(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def _rand_bloch(rng) -> np.ndarray:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v * rng.uniform() ** (1.0 / 3.0)


def _rand_pauli(rng) -> PauliAxis:
    return (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)[rng.integers(3)]


def check_joint_state_oracle(draws: int = 200, tol: float = 1e-12) -> CheckResult:
    """Direct joint output equals the explicit W_jk Kraus reconstruction."""
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    for _ in range(draws):
        ch = noisy_phase_channel(
            pauli_channel(_rand_pauli(rng), rng.uniform()),
            _rand_axis(rng),
            rng.uniform(0.0, 2.0 * np.pi),
        )
        rho = bloch_to_density(_rand_bloch(rng))
        p_c = rng.uniform()
        direct = switch_state(ch, rho, p_c).joint
        oracle = switch_kraus_apply(ch, rho, p_c)
        worst = max(worst, float(np.max(np.abs(direct - oracle))))
    return CheckResult(
        "joint state vs Kraus oracle", worst < tol, f"max |diff| = {worst:.3e} over {draws} draws"
    )


def check_qc_closed_form(draws: int = 1000, tol: float = 1e-10) -> CheckResult:
    """Trace of the order-interference term equals the Pauli closed form."""
    rng = np.random.default_rng(_SEED + 1)
    worst = 0.0
    for _ in range(draws):
        pauli = _rand_pauli(rng)
        p = rng.uniform()
        xi = rng.uniform(0.0, 2.0 * np.pi)
        axis = _rand_axis(rng)
        ch = noisy_phase_channel(pauli_channel(pauli, p), axis, xi)
        got = qc_numeric(ch, bloch_to_density(_rand_bloch(rng)))
        want = qc_closed_form(p, xi, axis[pauli.index])
        worst = max(worst, abs(got - want))
    return CheckResult(
        "coupling scalar closed form", worst < tol, f"max |diff| = {worst:.3e} over {draws} draws"
    )


def check_qc_probe_independence(sets: int = 5, probes: int = 50, tol: float = 1e-10) -> CheckResult:
    """The coupling scalar does not depend on the input probe (Pauli noise)."""
    rng = np.random.default_rng(_SEED + 2)
    worst = 0.0
    for _ in range(sets):
        ch = noisy_phase_channel(
            pauli_channel(_rand_pauli(rng), rng.uniform()),
            _rand_axis(rng),
            rng.uniform(0.0, 2.0 * np.pi),
        )
        values = [qc_numeric(ch, bloch_to_density(_rand_bloch(rng))) for _ in range(probes)]
        worst = max(worst, max(values) - min(values))
    return CheckResult(
        "coupling probe independence",
        worst < tol,
        f"max spread = {worst:.3e} over {sets} x {probes} probes",
    )


def check_qfi_closed_vs_sld(draws: int = 200, tol: float = 1e-6) -> CheckResult:
    """Control-qubit closed-form QFI matches the numeric SLD route."""
    rng = np.random.default_rng(_SEED + 3)
    worst = 0.0
    for _ in range(draws):
        pauli = _rand_pauli(rng)
        p = rng.uniform()
        p_c = rng.uniform()
        xi = rng.uniform(0.0, 2.0 * np.pi)
        axis = _rand_axis(rng)
        noise = pauli_channel(pauli, p)
        rho = bloch_to_density(_rand_bloch(rng))
        numeric = qfi_numeric(control_family(noise, axis, rho, p_c), xi).value
        closed = qfi_control(p_c, p, xi, axis[pauli.index]).value
        worst = max(worst, abs(numeric - closed))
    return CheckResult(
        "control QFI closed form vs SLD", worst < tol, f"max |diff| = {worst:.3e} over {draws} draws"
    )


def check_measurement_optimality(tol: float = 1e-9) -> CheckResult:
    """Hadamard-measurement CFI at p_c = 1/2 attains the QFI; p_c = 1/2 is argmax."""
    worst = 0.0
    for p in np.linspace(0.0, 1.0, 20):
        for xi in np.linspace(0.0, 2.0 * np.pi, 20):
            worst = max(
                worst,
                abs(cfi_control(0.5, p, xi, 0.0).value - qfi_control_opt(p, xi, 0.0).value),
            )
    grid = np.arange(0.05, 0.96, 0.05)
    argmax_ok = True
    for p, xi in ((0.3, 0.7), (0.5, np.pi / 5), (0.8, 2.0)):
        values = [qfi_control(pc, p, xi, 0.0).value for pc in grid]
        argmax_ok &= abs(grid[int(np.argmax(values))] - 0.5) < 1e-12
    return CheckResult(
        "Hadamard measurement optimality",
        worst < tol and argmax_ok,
        f"max |cfi - qfi| = {worst:.3e} on 20x20 grid; argmax at 0.5: {argmax_ok}",
    )


def check_commuting_degeneracy(tol: float = 1e-12) -> CheckResult:
    """Noise axis aligned with the rotation axis collapses the switch to the cascade."""
    rng = np.random.default_rng(_SEED + 4)
    worst = 0.0
    for _ in range(20):
        p = rng.uniform()
        xi = rng.uniform(0.0, 2.0 * np.pi)
        ch = noisy_phase_channel(pauli_channel(PauliAxis.X, p), (1.0, 0.0, 0.0), xi)
        rho = bloch_to_density(_rand_bloch(rng))
        worst = max(worst, float(np.max(np.abs(s01(ch, rho) - s00(ch, rho)))))
    zero = qfi_control_opt(0.37, 1.234, 1.0).value
    return CheckResult(
        "commuting-noise degeneracy",
        worst < tol and zero == 0.0,
        f"max |s01 - s00| = {worst:.3e}; aligned-axis QFI = {zero}",
    )


def check_cptp(draws: int = 50, tol: float = 1e-10) -> CheckResult:
    """The switched channel is completely positive and trace preserving."""
    rng = np.random.default_rng(_SEED + 5)
    worst_eig = 0.0
    worst_comp = 0.0
    for _ in range(draws):
        ch = noisy_phase_channel(
            pauli_channel(_rand_pauli(rng), rng.uniform()),
            _rand_axis(rng),
            rng.uniform(0.0, 2.0 * np.pi),
        )
        ops = switch_kraus_ops(ch)
        total = sum(w.conj().T @ w for w in ops)
        worst_comp = max(worst_comp, float(np.max(np.abs(total - np.eye(4)))))
        smallest = herm_eig(channel_choi(ops)).eigenvalues[0]
        worst_eig = min(worst_eig, float(smallest))
    return CheckResult(
        "switched channel CPTP",
        worst_eig > -tol and worst_comp < tol,
        f"min Choi eigenvalue = {worst_eig:.3e}, completeness residual = {worst_comp:.3e}",
    )


def check_depolarizing_invariance(samples: int = 20, tol: float = 1e-8) -> CheckResult:
    """Depolarizing noise: control QFI independent of both probe and axis."""
    rng = np.random.default_rng(_SEED + 6)
    noise = depolarizing_channel(0.4)
    xi = np.pi / 5
    values = []
    for _ in range(samples):
        axis = _rand_axis(rng)
        rho = bloch_to_density(_rand_bloch(rng))
        values.append(qfi_numeric(control_family(noise, axis, rho, 0.5), xi).value)
    spread = max(values) - min(values)
    return CheckResult(
        "depolarizing probe/axis independence",
        spread < tol,
        f"spread = {spread:.3e} over {samples} random (axis, probe) pairs",
    )


def check_symmetry_and_limits(tol: float = 1e-12) -> CheckResult:
    """Noise-level p <-> 1-p symmetry and the analytic small-phase limit."""
    rng = np.random.default_rng(_SEED + 7)
    worst = 0.0
    for _ in range(50):
        p = rng.uniform()
        xi = rng.uniform(0.0, 2.0 * np.pi)
        nl = rng.uniform(-1.0, 1.0)
        worst = max(
            worst, abs(qfi_control_opt(p, xi, nl).value - qfi_control_opt(1.0 - p, xi, nl).value)
        )
    limit_ok = True
    for p, nl in ((0.5, 0.0), (0.3, 0.4)):
        want = 2.0 * (1.0 - nl**2) * (1.0 - p) * p
        got0 = qfi_control_opt(p, 0.0, nl).value
        noise = pauli_channel(PauliAxis.X, p)
        axis = np.array([nl, np.sqrt(1.0 - nl**2), 0.0])
        got_num = qfi_numeric(
            control_family(noise, axis, bloch_to_density((0.0, 0.0, 0.5)), 0.5), 1e-4
        ).value
        limit_ok &= abs(got0 - want) < 1e-12 and abs(got_num - want) < 1e-4
    return CheckResult(
        "p <-> 1-p symmetry and small-phase limit",
        worst < tol and limit_ok,
        f"max symmetry residual = {worst:.3e}; limit check: {limit_ok}",
    )


def check_fig2_shape(tol: float = 1e-12) -> CheckResult:
    """Control column symmetric about p = 1/2, peaked there, above the cascade at high noise."""
    xi = np.pi / 5
    ps = np.linspace(0.0, 1.0, 11)
    con = [qfi_control_opt(p, xi, 0.0).value for p in ps]
    sym = max(abs(con[i] - con[10 - i]) for i in range(11))
    peak_ok = int(np.argmax(con)) == 5
    cross_ok = True
    for r in (1.0, 0.8, 0.6, 0.4, 0.2):
        for p in (0.6, 0.7, 0.8, 0.9):
            cas = qfi_cascade(pauli_channel(PauliAxis.X, p), (0.0, 1.0, 0.0), xi, (0.0, 0.0, r)).value
            cross_ok &= qfi_control_opt(p, xi, 0.0).value > cas
    return CheckResult(
        "control-vs-cascade comparison shape",
        sym < tol and peak_ok and cross_ok,
        f"symmetry residual = {sym:.3e}; peak at p = 0.5: {peak_ok}; high-noise crossover: {cross_ok}",
    )


ALL_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_joint_state_oracle,
    check_qc_closed_form,
    check_qc_probe_independence,
    check_qfi_closed_vs_sld,
    check_measurement_optimality,
    check_commuting_degeneracy,
    check_cptp,
    check_depolarizing_invariance,
    check_symmetry_and_limits,
    check_fig2_shape,
)


def run_all_checks() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
