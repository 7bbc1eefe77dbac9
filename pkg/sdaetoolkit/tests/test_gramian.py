import numpy as np
import pytest

from sdaetoolkit.exceptions import OperatorSingular, NotPSD, ValidationError, RankTooLow, \
    HeterogeneousDifferentialSubspaces
from sdaetoolkit.gramian import gle_operator, gle_residuals, solve_gle, transpose_gle_matrices, classical_gramians, \
    restrict_to_differential, containment_report, gramian_images, balance, reduce_jump_ode, compare_reduced, \
    reduce_and_compare
from sdaetoolkit.pencil import ModeSystem
from sdaetoolkit.reform import GleMatrices, SwitchedDAE, SwitchingSignal, build_jump_ode, gle_matrices, \
    random_switched_dae, random_switching_signal
from sdaetoolkit.sim import constant_input
from sdaetoolkit.subspace import same_subspace
from sdaetoolkit.tests.utils import scalar_two_mode_system, hankel_test_system, common_projector_system, \
    desk_jump_ode, lti_system


def _two_switches():
    return SwitchingSignal(0., [(0., 0), (1., 1), (1.5, 0)], 2.5)


def test_scalar_gramians():
    jos = build_jump_ode(scalar_two_mode_system())
    mats = gle_matrices(jos)
    assert np.allclose(gle_operator(mats), [[-1.]])
    gram = solve_gle(mats)
    assert np.allclose(gram.P, [[2.]])
    assert np.allclose(gram.Q, [[2.]])
    assert gram.operator_stable
    assert gram.residual_P < 1e-12
    summary = gram.summary()
    assert summary['n'] == 1
    assert np.isclose(summary['max_eigenvalue_P'], 2.)
    assert np.allclose(gram.hankel_values(), [2.])
    assert np.isclose(summary['hankel_1'], 2.)


def test_classical_limit():
    A = np.array([[-1., 0.5], [0., -2.]])
    B = np.array([[1.], [1.]])
    C = np.array([[1., 0.]])
    gram = solve_gle(gle_matrices(lti_system(A, B, C)))
    P, Q = classical_gramians(A, B, C)
    assert np.allclose(gram.P, P)
    assert np.allclose(gram.Q, Q)


def test_dual_equations():
    first = ModeSystem(np.eye(2), [[-2., 1.], [0., -3.]], [[1., 0.], [1., 1.]], [[1., 2.]])
    second = ModeSystem(np.eye(2), [[-2.5, 0.5], [0.5, -3.]], [[0., 1.], [1., 0.]], [[0., 1.]])
    mats = gle_matrices(SwitchedDAE((first, second)))
    gram = solve_gle(mats)
    dual = solve_gle(transpose_gle_matrices(mats))
    assert np.allclose(dual.P, gram.Q)
    assert np.allclose(dual.Q, gram.P)
    residual_P, residual_Q = gle_residuals(mats, gram.P, gram.Q)
    assert max(residual_P, residual_Q) < 1e-10
    assert np.min(np.linalg.eigvalsh(gram.P)) >= -1e-12


def test_gle_failures():
    with pytest.raises(OperatorSingular):
        solve_gle(gle_matrices(desk_jump_ode()))
    anti_stable = GleMatrices(np.eye(2), (np.zeros((2, 2)),), (np.eye(2),), (np.eye(2),))
    with pytest.raises(NotPSD) as e:
        solve_gle(anti_stable)
    assert e.value.min_eigenvalue < 0
    with pytest.raises(ValidationError):
        solve_gle(gle_matrices(scalar_two_mode_system()), max_n=0)


def test_restricted_gramians():
    jos = build_jump_ode(common_projector_system())
    mats = gle_matrices(jos)
    with pytest.raises(OperatorSingular):
        solve_gle(mats)
    restricted = restrict_to_differential(mats, jos)
    assert restricted.n_J == 1
    assert np.allclose(restricted.basis @ restricted.selector, jos.decoupled[0].Pi)
    gram = restricted.lift(solve_gle(restricted.mats), mats)
    assert np.allclose(gram.P, np.diag([2., 0.]))
    assert np.allclose(gram.Q, np.diag([2., 0.]))
    assert max(gram.residual_P, gram.residual_Q) < 1e-10
    report = containment_report(gram, jos, [_two_switches()])
    assert report['passed'].all()


def test_heterogeneous_projectors():
    jos = desk_jump_ode()
    with pytest.raises(HeterogeneousDifferentialSubspaces):
        restrict_to_differential(gle_matrices(jos), jos)


def test_containment():
    jos = build_jump_ode(scalar_two_mode_system())
    gram = solve_gle(gle_matrices(jos))
    span_P, span_Q = gramian_images(gram)
    assert span_P.dim == 1 and span_Q.dim == 1
    signals = [_two_switches(), SwitchingSignal(0., [(0., 1)], 1.)]
    report = containment_report(gram, jos, signals)
    assert list(report['signal']) == [0, 1]
    assert report['passed'].all()
    assert (report['dim_M_K'] == 1).all()


def test_containment_random_models():
    random_state = np.random.RandomState(seed=8)
    for _ in range(3):
        sys = random_switched_dae(3, 2, random_state, ode=True, shift=5.)
        jos = build_jump_ode(sys)
        gram = solve_gle(gle_matrices(jos))
        signals = [random_switching_signal(2, 3, random_state) for _ in range(4)]
        assert containment_report(gram, jos, signals)['passed'].all()


def test_balancing():
    jos = build_jump_ode(hankel_test_system())
    gram = solve_gle(gle_matrices(jos))
    assert np.allclose(gram.P, np.diag([2., 1e-8]), atol=1e-14)
    reduced = balance(gram, 1, jos)
    assert np.allclose(reduced.hankel, [2., 1e-8], rtol=1e-6)
    assert reduced.order == 1
    assert np.allclose(reduced.W.T @ reduced.V, np.eye(1))
    assert np.allclose(reduced.modes[0].Adiff, [[-1.]])
    assert reduced.idempotency_defect[0] < 1e-12
    with pytest.raises(RankTooLow) as e:
        balance(gram, 3)
    assert e.value.max_order == 2
    with pytest.raises(ValidationError):
        balance(gram, 0)


def test_reduced_simulation():
    jos = build_jump_ode(hankel_test_system())
    gram = solve_gle(gle_matrices(jos))
    q = SwitchingSignal(0., [(0., 0)], 2.)
    u = constant_input([1., 1.], 0., 2.)
    report = reduce_and_compare(jos, gram, 1, q, u)
    assert report['order'] == 1
    assert report['n'] == 2
    assert report['max_output_error'] < 1e-7
    assert report['l2_output_error'] < 1e-7
    assert report['max_impulse_error'] == 0.
    full_order = compare_reduced(jos, reduce_jump_ode(jos, balance(gram, 2)), q, u)
    assert full_order['max_output_error'] < 1e-8


def test_operator_stability_flag():
    growing = solve_gle(gle_matrices(lti_system(1., 0., 0.)))
    assert growing.operator_stable is False
    assert np.allclose(growing.P, 0.)
    assert growing.summary()['operator_stable'] is False
    n = 41
    large = solve_gle(gle_matrices(lti_system(-np.eye(n), np.eye(n)[:, :1], np.eye(n)[:1])))
    assert large.operator_stable is None
    assert np.isclose(large.P[0, 0], 0.5)
    assert np.isclose(large.hankel_values()[0], 0.5)


def test_hankel_values():
    gram = solve_gle(gle_matrices(build_jump_ode(hankel_test_system())))
    assert np.allclose(gram.hankel_values(), [2., 1e-8], rtol=1e-6)
    assert np.allclose(gram.hankel_values(), balance(gram, 1).hankel)
    summary = gram.summary()
    assert list(summary)[-2:] == ['hankel_1', 'hankel_2']


def _other_modes(n_modes):
    return {j: [i for i in range(n_modes) if i != j] or [j] for j in range(n_modes)}


def test_neighbour_stacking_keeps_gramian_images():
    random_state = np.random.RandomState(seed=12)
    systems = [scalar_two_mode_system()] + [random_switched_dae(3, 2, random_state, ode=True, shift=5.)
                                            for _ in range(5)]
    for sys in systems:
        jos = build_jump_ode(sys)
        neighbours = _other_modes(jos.n_modes)
        every = gramian_images(solve_gle(gle_matrices(jos)))
        stacked = gramian_images(solve_gle(gle_matrices(jos, predecessors=neighbours, successors=neighbours)))
        assert same_subspace(every[0], stacked[0])
        assert same_subspace(every[1], stacked[1])
    jos = build_jump_ode(common_projector_system())
    neighbours = _other_modes(jos.n_modes)
    images = []
    for mats in (gle_matrices(jos), gle_matrices(jos, predecessors=neighbours, successors=neighbours)):
        restricted = restrict_to_differential(mats, jos)
        images.append(gramian_images(restricted.lift(solve_gle(restricted.mats), mats)))
    assert same_subspace(images[0][0], images[1][0])
    assert same_subspace(images[0][1], images[1][1])


if __name__ == '__main__':
    test_scalar_gramians()
    test_restricted_gramians()
    test_reduced_simulation()
