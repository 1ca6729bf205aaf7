import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from riemann_octagon.errors import (
    DomainError,
    SingularStateError,
    UnphysicalStateError,
)
from riemann_octagon.dynamics import (
    action_table,
    area_spectrum,
    boost_conjugate,
    boost_matrix,
    bounce,
    evolve_closed_form,
    evolve_rk4,
    evolve_rk4_at,
    field_J,
    field_Jminus,
    field_Jplus,
    field_Phi,
    hamiltonian,
    observables,
    poisson_bracket_fd,
    rep_ladder,
    trajectory_in_A,
)
from riemann_octagon.hypgeom import compose, projective_distance
from riemann_octagon.octagon import P_REG, OctagonParams


@st.composite
def states(draw):
    J = draw(st.floats(0.2, 5.0))
    C = draw(st.floats(0.0, 0.9)) * J * J
    Phi = draw(st.floats(-math.pi, math.pi))
    return J, Phi, C


@given(states(), st.floats(-5, 5))
def test_casimir_is_boost_invariant(s, tau):
    J, Phi, C = s
    obs = observables(J, Phi, C)
    assert obs.casimir == pytest.approx(C, abs=1e-12 * J * J)
    Mt = boost_conjugate(obs.matrix, tau)
    det = Mt[0, 0] * Mt[1, 1] - Mt[0, 1] * Mt[1, 0]
    assert abs(complex(det) - C) < 1e-12 * max(1.0, J * J)


def test_boost_group_law():
    ab = compose(boost_matrix(0.3), boost_matrix(1.1))
    assert projective_distance(ab, boost_matrix(1.4)) < 1e-14


@given(states(), st.floats(-3, 3))
def test_closed_form_conserves_energy(s, tau):
    J0, Phi0, C = s
    E = hamiltonian(J0, Phi0, C)
    J, Phi = evolve_closed_form(J0, Phi0, None, C, tau)
    assert math.sqrt(max(J * J - C, 0.0)) * math.sin(Phi) == pytest.approx(E, abs=1e-10 * math.cosh(tau) * J0)
    assert evolve_closed_form(J0, Phi0, None, C, 0.0)[0] == pytest.approx(J0, rel=1e-15)


def test_closed_form_special_cases():
    # Phi0 = pi/2: J = J0 cosh(tau), and Phi returns to pi/2 only at tau = 0
    J, Phi = evolve_closed_form(2.0, math.pi / 2, None, 0.0, np.array([-1.0, 0.0, 1.0]))
    assert np.allclose(J, 2.0 * np.cosh([-1.0, 0.0, 1.0]), rtol=1e-15)
    assert Phi[1] == pytest.approx(math.pi / 2)
    assert Phi[0] > math.pi / 2 > Phi[2]
    # the sheet label is kept for all tau
    _, Phi = evolve_closed_form(1.0, -0.5, None, 0.25, np.linspace(-4, 4, 9))
    assert np.all(Phi < 0)


def test_rk4_is_fourth_order():
    J0, Phi0, C = 1.3, 1.0, 0.4
    exact = evolve_closed_form(J0, Phi0, None, C, 1.0)
    err = []
    for n in (20, 40, 80):
        last = evolve_rk4(J0, Phi0, None, C, (0.0, 1.0), n)[-1]
        assert last.tau == pytest.approx(1.0)
        err.append(abs(last.J - exact[0]) + abs(last.Phi - exact[1]))
    assert 12 < err[0] / err[1] < 20 and 12 < err[1] / err[2] < 20


def test_rk4_states_are_ordered_and_sampled_integration_agrees():
    states_ = evolve_rk4(1.0, 2.0, None, 0.0, (-2.0, 1.0), 300)
    taus = [s.tau for s in states_]
    assert taus == sorted(taus) and taus[0] == pytest.approx(-2.0) and len(taus) == 301
    grid = np.array([-2.0, -0.5, 0.0, 0.7, 1.0])
    J, Phi = evolve_rk4_at(1.0, 2.0, None, 0.0, grid)
    Jc, Phic = evolve_closed_form(1.0, 2.0, None, 0.0, grid)
    assert np.allclose(J, Jc, atol=1e-10) and np.allclose(Phi, Phic, atol=1e-10)


def test_rk4_reports_singular_state_with_partial_trajectory():
    # at Phi0 = pi, J falls as sqrt(C) cosh(tau_0 - tau) and hits J^2 = C in finite time
    with pytest.raises(SingularStateError) as info:
        evolve_rk4(1.0, math.pi, 1, 0.5, (0.0, 3.0), 300)
    assert len(info.value.partial) > 1
    with pytest.raises(UnphysicalStateError):
        evolve_rk4(1.0, 1.0, None, 1.0, (0.0, 1.0), 10)
    with pytest.raises(DomainError):
        evolve_rk4(1.0, 1.0, None, 0.0, (0.5, 1.0), 10)


def test_unphysical_states():
    with pytest.raises(UnphysicalStateError):
        observables(1.0, 0.0, 2.0)
    with pytest.raises(UnphysicalStateError):
        hamiltonian(1.0, 0.0, -0.1)


@given(states())
def test_bounce_is_the_minimum_of_J(s):
    J0, Phi0, C = s
    if abs(math.cos(Phi0)) > 0.99:
        return
    b = bounce(J0, Phi0, None, C)
    J_b = evolve_closed_form(J0, Phi0, None, C, b.tau)[0]
    assert b.J == pytest.approx(J_b, rel=1e-9)
    for dt in (-1e-3, 1e-3):
        assert evolve_closed_form(J0, Phi0, None, C, b.tau + dt)[0] >= b.J
    assert abs(b.Phi) == pytest.approx(math.pi / 2)


def test_degenerate_state_has_no_bounce():
    with pytest.raises(DomainError):
        bounce(1.0, 0.0, 1, 0.0)


def test_action_table_is_read_only_and_monotone():
    table = action_table()
    assert table.P[0] == pytest.approx(P_REG) and np.all(np.diff(table.J) > 0)
    with pytest.raises(ValueError):
        table.J[0] = 1.0
    with pytest.raises(Exception):
        table.bracket(table.J_max * 2)


def test_trajectory_passes_through_the_start():
    traj = trajectory_in_A(0.8, math.pi / 3, tau_grid=[-1.0, 0.0, 1.0])
    start = traj.states[1]
    assert start.a == pytest.approx(0.8, rel=1e-9)
    assert start.alpha == pytest.approx(math.pi / 3, rel=1e-9)
    assert not traj.truncated and traj.max_residual < 1e-8
    assert all(s.alpha > math.pi / 4 for s in traj.states)


def test_trajectory_methods_agree():
    grid = np.linspace(-2.0, 2.0, 9)
    closed = trajectory_in_A(0.85, math.pi / 4 - 0.2, tau_grid=grid)
    rk = trajectory_in_A(0.85, math.pi / 4 - 0.2, tau_grid=grid, method="rk4")
    for s1, s2 in zip(closed.states, rk.states):
        assert s1.a == pytest.approx(s2.a, abs=1e-8)
        assert s1.alpha < math.pi / 4


def test_trajectory_truncates_beyond_the_table():
    traj = trajectory_in_A(0.8, math.pi / 3, tau_grid=np.linspace(-4, 1, 11), p_max=30.0)
    assert traj.truncated and "tau" in traj.diagnostic
    assert any(s.tau == 0.0 for s in traj.states)
    with pytest.raises(DomainError):
        trajectory_in_A(0.8, math.pi / 3, tau_grid=[1.0, 0.0])


def test_area_spectrum():
    assert area_spectrum(0) == pytest.approx(2 * math.pi)
    assert area_spectrum(3) - area_spectrum(2) == pytest.approx(4 * math.pi)
    for bad in (-1, 1.5, True):
        with pytest.raises(DomainError):
            area_spectrum(bad)


def test_ladder_lowest_weight_half():
    lad = rep_ladder(0.5, 6.5)
    assert lad.Jplus[1, 0] == pytest.approx(1.0)
    assert np.all(lad.Jminus[:, 0] == 0.0)
    interior = slice(0, len(lad.m) - 1)
    assert np.allclose(np.diag(lad.C)[interior], -0.25)


@pytest.mark.parametrize("j", [0.5, 1, 2.5])
def test_ladder_algebra_exact(j):
    lad = rep_ladder(j, j + 6, exact=True)
    n = len(lad.m) - 1
    jj = sympy.Rational(lad.j.numerator, lad.j.denominator)
    comm = lad.Jplus * lad.Jminus - lad.Jminus * lad.Jplus
    assert sympy.simplify(comm[:n, :n] + 2 * lad.J0[:n, :n]) == sympy.zeros(n, n)
    assert lad.C[:n, :n] == jj * (jj - 1) * sympy.eye(n)
    with pytest.raises(DomainError):
        rep_ladder(0.3, 4)


POINTS = [OctagonParams(0.8, math.pi / 3), OctagonParams(0.9, math.pi / 4 - 0.3)]


@pytest.mark.parametrize("p", POINTS)
def test_poisson_brackets(p):
    a, at = p.a, p.alpha_tilde
    assert poisson_bracket_fd(field_J, field_Phi, p) == pytest.approx(1.0, abs=1e-5)
    assert poisson_bracket_fd(field_Phi, field_J, p) == pytest.approx(-1.0, abs=1e-5)
    J = field_J(a, at)
    assert poisson_bracket_fd(field_Jplus, field_Jminus, p) == pytest.approx(2j * J, abs=1e-4)
    jp, jm = field_Jplus(a, at), field_Jminus(a, at)
    assert poisson_bracket_fd(field_Jplus, field_J, p) == pytest.approx(1j * jp, abs=1e-4)
    assert poisson_bracket_fd(field_Jminus, field_J, p) == pytest.approx(-1j * jm, abs=1e-4)
