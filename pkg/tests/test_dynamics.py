import numpy as np
import pytest

from cohkit.dynamics import (
    Trajectory,
    build_dicke,
    dephasing_jumps,
    evolve_squeezing,
    first_peak_time,
    lindblad_rhs,
    squeezing_hamiltonian,
)
from cohkit.errors import InvalidNError
from cohkit.matcore import partial_trace
from cohkit.opbasis import spin_truncated_basis
from cohkit.states import pure_dm, uniform_ket


class TestBuildDicke:
    def test_single_qubit(self):
        s = build_dicke(1)
        assert np.array_equal(s.sz, np.diag([1, -1]).astype(complex))
        assert np.allclose(s.sp, [[0, 1], [0, 0]])

    def test_two_qubits(self):
        s = build_dicke(2)
        assert np.array_equal(s.sz, np.diag([2, 0, -2]).astype(complex))
        assert np.allclose(s.sp, np.sqrt(2) * (np.diag([1, 1], k=1)))

    def test_commutator(self):
        for n in (1, 2, 4, 7):
            s = build_dicke(n)
            comm = s.sz @ s.sp - s.sp @ s.sz
            assert np.max(np.abs(comm - 2 * s.sp)) < 1e-12

    def test_casimir(self):
        # Sx^2 + Sy^2 + Sz^2 = 2(Sp Sm + Sm Sp) + Sz^2 = n(n+2) I = 4J(J+1) I
        # at total spin J = n/2 in the sigma^z = +/-1 convention
        for n in (1, 2, 4):
            s = build_dicke(n)
            casimir = 2 * (s.sp @ s.sm + s.sm @ s.sp) + s.sz @ s.sz
            assert np.max(np.abs(casimir - n * (n + 2) * np.eye(n + 1))) < 1e-12

    def test_sm_is_adjoint(self):
        s = build_dicke(5)
        assert np.array_equal(s.sm, s.sp.conj().T)

    def test_invalid_n(self):
        with pytest.raises(InvalidNError):
            build_dicke(0)


class TestLindbladRhs:
    def test_zero_generator(self):
        rho = np.eye(2, dtype=complex) / 2
        out = lindblad_rhs(rho, np.zeros((2, 2), dtype=complex), [], 0.0)
        assert np.max(np.abs(out)) == 0.0

    def test_diagonal_states_are_dephasing_fixed_points(self):
        s = build_dicke(2)
        rho = np.diag([0.5, 0.3, 0.2]).astype(complex)
        out = lindblad_rhs(rho, np.zeros((3, 3), dtype=complex), [s.sz], 1.0)
        assert np.max(np.abs(out)) < 1e-14

    def test_trace_free(self):
        rng = np.random.default_rng(0)
        s = build_dicke(3)
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = x @ x.conj().T
        rho /= np.trace(rho)
        h = s.sp + s.sm
        out = lindblad_rhs(rho, h, [s.sz], 0.7)
        assert abs(np.trace(out)) < 1e-12

    def test_qubit_dephasing_rate(self):
        # |+><+| under sigma_z dephasing with Gamma = 1: off-diagonal e^{-2t}
        sz = np.diag([1.0, -1.0]).astype(complex)
        rho = pure_dm(uniform_ket(2)).matrix.copy()
        h = np.zeros((2, 2), dtype=complex)
        dt = 1e-3
        steps = 500
        from cohkit.dynamics import _rk4_step

        for _ in range(steps):
            rho = _rk4_step(rho, h, [sz], 1.0, dt)
        t = steps * dt
        assert abs(rho[0, 1] - 0.5 * np.exp(-2 * t)) < 1e-9


class TestEvolution:
    def test_rabi_block_closed_form(self):
        # Gamma = 0, n = 1: dynamics confined to {|00>, |11>} with
        # psi(t) = cos(t)|00> - i sin(t)|11>
        traj = evolve_squeezing(1, gamma=0.0, t_max=1.0, dt=1e-3, sample_every=100)
        for t, state in zip(traj.times, traj.states):
            expected = np.zeros((4, 4), dtype=complex)
            c, s = np.cos(t), np.sin(t)
            expected[0, 0] = c * c
            expected[3, 3] = s * s
            expected[0, 3] = 1j * c * s
            expected[3, 0] = -1j * c * s
            assert np.max(np.abs(state.matrix - expected)) < 1e-8

    def test_trace_and_hermiticity_preserved(self):
        traj = evolve_squeezing(2, gamma=1.0, t_max=0.5, dt=1e-3, sample_every=50)
        for state in traj.states:
            assert abs(np.trace(state.matrix).real - 1) < 1e-8
            assert np.max(np.abs(state.matrix - state.matrix.conj().T)) < 1e-9

    def test_reduced_states_stay_diagonal(self):
        traj = evolve_squeezing(4, gamma=1.0, t_max=0.4, dt=1e-3, sample_every=100)
        for state in traj.states:
            for keep in ("A", "B"):
                red = partial_trace(state, keep).matrix
                off = red - np.diag(np.diag(red))
                assert np.max(np.abs(off)) < 1e-9

    def test_local_coherence_zero_along_trajectory(self):
        traj = evolve_squeezing(2, gamma=1.0, t_max=0.5, dt=1e-3, sample_every=100)
        for rep in traj.reports:
            assert rep.C_L < 1e-9
            assert abs(rep.delta - rep.C) < 1e-9

    def test_dt_halving_convergence(self):
        coarse = evolve_squeezing(2, gamma=1.0, t_max=0.5, dt=1e-3, sample_every=100)
        fine = evolve_squeezing(2, gamma=1.0, t_max=0.5, dt=5e-4, sample_every=200)
        assert np.allclose(coarse.times, fine.times)
        assert np.max(np.abs(coarse.coherences() - fine.coherences())) < 1e-6

    def test_strong_dephasing_suppresses_growth(self):
        traj = evolve_squeezing(2, gamma=200.0, t_max=0.02, dt=1e-5, sample_every=200)
        assert traj.coherences().max() < 0.05

    def test_truncated_basis_lowers_coherence(self):
        full = evolve_squeezing(2, gamma=1.0, t_max=0.5, dt=1e-3, sample_every=100)
        st = spin_truncated_basis(2)
        trunc = evolve_squeezing(2, gamma=1.0, t_max=0.5, dt=1e-3, sample_every=100,
                                 basis_a=st, basis_b=st, norm="frobenius")
        assert np.all(trunc.coherences() <= full.coherences() + 1e-10)

    def test_dephase_modes(self):
        both = evolve_squeezing(2, gamma=1.0, t_max=0.3, dt=1e-3, sample_every=100,
                                dephase_mode="both")
        joint = evolve_squeezing(2, gamma=1.0, t_max=0.3, dt=1e-3, sample_every=100,
                                 dephase_mode="joint")
        # same physics family, different damping pattern
        assert both.coherences().shape == joint.coherences().shape
        assert np.max(np.abs(both.coherences() - joint.coherences())) > 1e-6

    def test_invalid_dephase_mode(self):
        with pytest.raises(ValueError):
            dephasing_jumps(build_dicke(2), "neither")

    def test_unstable_step_size_detected(self):
        from cohkit.errors import IntegrationUnstableError

        with pytest.raises(IntegrationUnstableError):
            evolve_squeezing(4, gamma=100.0, t_max=2.0, dt=0.05, sample_every=1)


class TestPeak:
    def test_first_peak_simple_curve(self):
        from cohkit.coherence import CoherenceReport

        def rep(c):
            return CoherenceReport(C=c, C_L=0.0, delta=c, norm="schatten1",
                                   truncated=False, slack=0.0)

        times = np.array([0.0, 0.1, 0.2, 0.3, 0.4])
        cs = [0.0, 0.5, 0.8, 0.6, 0.7]
        traj = Trajectory(times=times, states=[], reports=[rep(c) for c in cs])
        assert first_peak_time(traj) == pytest.approx(0.2)

    def test_hamiltonian_is_hermitian(self):
        s = build_dicke(3)
        h = squeezing_hamiltonian(s)
        assert np.max(np.abs(h - h.conj().T)) == 0.0
