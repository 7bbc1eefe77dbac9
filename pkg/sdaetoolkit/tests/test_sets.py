import numpy as np
import pytest

from sdaetoolkit.pencil import ModeSystem
from sdaetoolkit.reform import SwitchedDAE, SwitchingSignal, build_jump_ode
from sdaetoolkit.sets import local_reachable, local_unobservable, reach_recursion, unobs_recursion, \
    reachable_span, observable_span, state_jump_reach_chain, augmented_unobs_chain, verify_theorem1, \
    verify_theorem2, verify_nojump_inclusion, reachability_oracle, observability_oracle
from sdaetoolkit.subspace import image, same_subspace
from sdaetoolkit.tests.utils import desk_jump_ode, desk_signal, lti_system, random_model_family


def _span(*vectors):
    return image(np.array(vectors, dtype=float).T)


def _rotating_system():
    integrator = ModeSystem(np.eye(2), np.zeros((2, 2)), [[1.], [0.]], [[1., 0.]])
    rotation = ModeSystem(np.eye(2), [[0., -1.], [1., 0.]], [[0.], [0.]], [[1., 0.]])
    return build_jump_ode(SwitchedDAE((integrator, rotation)))


def test_desk_local_sets():
    first, second = desk_jump_ode().decoupled
    R, Rtilde = local_reachable(first)
    assert same_subspace(R, _span([1., 0.]))
    assert Rtilde.dim == 2
    R, Rtilde = local_reachable(second)
    assert R.dim == 0
    assert Rtilde.dim == 2
    assert same_subspace(local_unobservable(first), _span([0., 1.]))
    assert local_unobservable(second).dim == 2


def test_desk_recursions():
    jos, q = desk_jump_ode(), desk_signal()
    reach = reach_recursion(jos, q)
    assert [M.dim for M in reach.M] == [1, 0]
    assert reach.Mtilde[0].dim == 2
    assert reach.R_q.dim == 0
    assert reach.final_duration_invariant
    obs = unobs_recursion(jos, q)
    assert [N.dim for N in obs.N] == [0, 2]
    assert obs.UO_q.dim == 0
    assert obs.O_q.dim == 2


def test_spans_over_signals():
    jos = desk_jump_ode()
    signals = [desk_signal(), SwitchingSignal(0., [(0., 0)], 1.)]
    assert same_subspace(reachable_span(jos, signals), _span([1., 0.]))
    assert observable_span(jos, signals).dim == 2


def test_final_duration_dependence():
    jos = _rotating_system()
    q = SwitchingSignal(0., [(0., 0), (1., 1)], 2.)
    with pytest.warns(UserWarning):
        reach = reach_recursion(jos, q)
    assert not reach.final_duration_invariant
    assert same_subspace(reach.R_q, _span([np.cos(1.), np.sin(1.)]))


def test_desk_theorems():
    jos, q = desk_jump_ode(), desk_signal()
    report = verify_theorem1(jos, q)
    assert report.passed
    assert report.details['dim_R_q'] == 0
    assert [L.dim for L in state_jump_reach_chain(jos, q)] == [1, 0]
    report = verify_theorem2(jos, q)
    assert report.passed
    assert report.details['dim_UO_q_doubled'] == 0
    assert [L.dim for L in augmented_unobs_chain(jos, q)] == [0, 2]
    report = verify_nojump_inclusion(jos, q)
    assert report.passed
    assert report.details['dim_R_nojump'] == 1
    assert report.as_row()['check'] == 'nojump_inclusion'


def test_theorems_on_random_models():
    for jos, q in random_model_family(30, seed=4, n_max=6):
        report = verify_theorem1(jos, q)
        assert report.passed, report
        assert report.details['all_intervals']
        report = verify_theorem2(jos, q)
        assert report.passed, report
        assert verify_theorem2(jos, q.scaled(2.)).passed
        report = verify_nojump_inclusion(jos, q)
        assert report.passed, report


def test_reachability_oracle():
    jos = build_jump_ode(lti_system(np.diag([-1., -2.]), [[1.], [0.]], [[1., 1.]]))
    q = SwitchingSignal(0., [(0., 0)], 1.)
    report = reachability_oracle(jos, q, n_inputs=10)
    assert report.passed
    assert report.details['dim_M_K'] == 1
    assert report.details['dim_simulated'] == 1

    report = reachability_oracle(desk_jump_ode(), desk_signal())
    assert report.passed
    assert report.details['n_inputs'] == 40


def test_reachability_oracle_random_models():
    for jos, q in random_model_family(30, seed=6, n_max=6):
        report = reachability_oracle(jos, q, random_state=np.random.RandomState(seed=0))
        assert report.passed, report


def test_observability_oracle():
    jos = build_jump_ode(lti_system(np.diag([-1., -2.]), [[1.], [1.]], [[1., 0.]]))
    q = SwitchingSignal(0., [(0., 0)], 1.)
    report = observability_oracle(jos, q, n_trials=4)
    assert report.passed
    assert report.value < 1e-12
    assert report.details['dim_UO_q'] == 1

    report = observability_oracle(desk_jump_ode(), desk_signal())
    assert report.passed
    assert report.details['dim_O_q'] == 2
    # the second state only shows up as an impulse at the switch
    assert report.details['weakest_observable_response'] >= 1e-4


def test_observability_oracle_random_models():
    for jos, q in random_model_family(30, seed=7, n_max=5):
        report = observability_oracle(jos, q, n_trials=4, random_state=np.random.RandomState(seed=0))
        assert report.passed, report


if __name__ == '__main__':
    test_desk_recursions()
    test_theorems_on_random_models()
