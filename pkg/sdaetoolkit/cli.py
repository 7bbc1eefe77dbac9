"""
Command line front end.

    sdaetoolkit COMMAND MODEL [--signal FILE] [--input FILE] [options]

Commands: check, reform, reach, obs, gramians, reduce, simulate, verify. Every artifact is written to
--out-dir; the exit code is 0 on success, 1 for invalid input, 2 for a numerical failure and 3 when the
property suite finds a failing check.
"""

import argparse
import csv
from dataclasses import dataclass
import io
import json
import os
from pathlib import Path
import sys
import tempfile

import numpy as np

from .exceptions import ValidationError, NumericalFailure, ParseError
from .gramian import solve_gle, restrict_to_differential, balance, compare_reduced
from .pencil import DecoupledMode, decoupling_residuals
from .reform import load_switched_dae, load_switching_signal, build_jump_ode, jump_ode_to_dict, load_jump_ode, \
    is_jump_ode_description, read_description, gle_matrices, random_switching_signal
from .sets import reach_recursion, unobs_recursion
from .sim import simulate, load_input_signal, constant_input, random_input_signal
from .validation import run_property_suite, suite_passed
from .version import version

commands = ['check', 'reform', 'reach', 'obs', 'gramians', 'reduce', 'simulate', 'verify']

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
EXIT_SUITE_FAILED = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str
    signal: str = None
    input: str = None
    tol_rank: float = None
    tol_check: float = None
    solver_tol: float = None
    dt: float = None
    order: int = None
    seed: int = 42
    restrict: bool = False
    out_dir: str = '.'
    n_jobs: int = 1
    verbose: bool = False

    def __post_init__(self):
        for name in ('tol_rank', 'tol_check', 'solver_tol', 'dt'):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValidationError("--{} must be positive, got {}".format(name.replace('_', '-'), value))
        if self.order is not None and self.order < 1:
            raise ValidationError("--order must be at least 1, got {}".format(self.order))
        if self.n_jobs < 1:
            raise ValidationError("--n-jobs must be at least 1, got {}".format(self.n_jobs))

    def toolkit_kwargs(self):
        kwargs = {'seed': self.seed, 'n_jobs': self.n_jobs, 'verbose': self.verbose}
        for name in ('tol_rank', 'tol_check', 'solver_tol', 'dt'):
            if getattr(self, name) is not None:
                kwargs[name] = getattr(self, name)
        return kwargs


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, location='command line')


def build_parser():
    parser = _ArgumentParser(prog='sdaetoolkit', description="Switched DAE analysis toolkit")
    parser.add_argument('--version', action='version', version='%(prog)s ' + version)
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in commands:
        sub = subparsers.add_parser(command)
        sub.add_argument('model', help="model file, or the output of 'reform'")
        sub.add_argument('--signal', help="switching signal file")
        sub.add_argument('--input', help="input signal file")
        sub.add_argument('--tol-rank', type=float, help="relative rank tolerance")
        sub.add_argument('--tol-check', type=float, help="tolerance of the identity checks")
        sub.add_argument('--solver-tol', type=float, help="generalized Lyapunov residual tolerance")
        sub.add_argument('--dt', type=float, help="largest simulation step")
        sub.add_argument('-r', '--order', type=int, help="reduced order")
        sub.add_argument('--seed', type=int, default=42, help="random seed (default 42)")
        sub.add_argument('--restrict', action='store_true',
                         help="solve the Lyapunov equations on the common differential subspace")
        sub.add_argument('-o', '--out-dir', default='.', help="output directory (default: current directory)")
        sub.add_argument('--n-jobs', type=int, default=1, help="number of parallel jobs")
        sub.add_argument('--verbose', action='store_true')
    return parser


def parse_args(argv=None):
    args = build_parser().parse_args(argv)
    return RunConfig(command=args.command, model=args.model, signal=args.signal, input=args.input,
                     tol_rank=args.tol_rank, tol_check=args.tol_check, solver_tol=args.solver_tol, dt=args.dt,
                     order=args.order, seed=args.seed, restrict=args.restrict, out_dir=args.out_dir,
                     n_jobs=args.n_jobs, verbose=args.verbose)


def parse_model(path, **kwargs):
    """Switched DAE from a model file."""
    return load_switched_dae(read_description(path), **kwargs)


def load_system(path, **kwargs):
    """
    Reformulated system from a model file or from a 'reform' output file. The switched DAE is None in the
    second case.
    """
    document = read_description(path)
    if is_jump_ode_description(document):
        return None, load_jump_ode(document)
    dae = parse_model(document, **kwargs)
    return dae, build_jump_ode(dae, **kwargs)


def _format(value):
    if isinstance(value, (bool, np.bool_)) or value is None:
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return '%.17g' % value
    return str(value)


def _atomic_write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=str(path.parent), prefix='.' + path.name, suffix='.tmp')
    try:
        with os.fdopen(handle, 'w', newline='') as f:
            f.write(text)
        os.replace(temporary, str(path))
    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise


def write_rows(path, header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=',', lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format(value) for value in row])
    _atomic_write(path, buffer.getvalue())


def write_matrix(path, M, prefix='c'):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    write_rows(path, ['{}_{}'.format(prefix, i + 1) for i in range(M.shape[1])], M.tolist())


def write_dataframe(path, frame):
    write_rows(path, list(frame.columns), frame.itertuples(index=False, name=None))


def write_summary(path, summary):
    write_rows(path, ['key', 'value'], [(key, value) for key, value in summary.items()])


def write_json(path, document):
    _atomic_write(path, json.dumps(document, indent=1) + '\n')


def _signal(config, jos):
    if config.signal is None:
        raise ParseError("--signal is required for '{}'".format(config.command), location='command line')
    return load_switching_signal(config.signal, jos.n_modes)


def _input(config, jos, q, random=False):
    if config.input is not None:
        return load_input_signal(config.input)
    if random:
        return random_input_signal(jos.m, q, np.random.RandomState(seed=config.seed), degree=jos.n + 1)
    return constant_input(np.zeros(jos.m), q.t0, q.t_end)


def _out(config, name):
    return Path(config.out_dir) / name


def run_check(config, dae, jos, kwargs):
    if dae is None:
        raise ValidationError("'check' needs the pencils of the model, not a reformulated system")
    rows = []
    for j, mode in enumerate(jos.decoupled):
        residuals = decoupling_residuals(mode) if isinstance(mode, DecoupledMode) else {}
        n_J = mode.qwf.n_J if isinstance(mode, DecoupledMode) else None
        rows.append([j + 1, True, mode.nu, n_J] + [residuals[key] for key in sorted(residuals)])
        print("mode {}: regular, nu = {}, n_J = {}, max identity residual {:.3e}"
              .format(j + 1, mode.nu, n_J, max(residuals.values())))
    keys = sorted(decoupling_residuals(jos.decoupled[0])) if isinstance(jos.decoupled[0], DecoupledMode) else []
    write_rows(_out(config, 'check.csv'), ['mode', 'regular', 'nu', 'n_J'] + keys, rows)
    return EXIT_OK


def run_reform(config, dae, jos, kwargs):
    write_json(_out(config, 'reform.json'), jump_ode_to_dict(jos))
    for j, mode in enumerate(jos.decoupled):
        for name in ('Adiff', 'Bdiff', 'Cdiff', 'Pi', 'JumpB', 'D', 'ImpC'):
            write_matrix(_out(config, 'mode{}_{}.csv'.format(j + 1, name)), getattr(mode, name))
    print("reformulated {} modes, n = {}, nu_max = {}".format(jos.n_modes, jos.n, jos.nu_max))
    return EXIT_OK


def run_reach(config, dae, jos, kwargs):
    q = _signal(config, jos)
    reach = reach_recursion(jos, q, **kwargs)
    rows = []
    for k, (M, Mtilde) in enumerate(zip(reach.M, reach.Mtilde)):
        write_matrix(_out(config, 'reach_M_{}.csv'.format(k)), M.basis, prefix='v')
        write_matrix(_out(config, 'reach_Mtilde_{}.csv'.format(k)), Mtilde.basis, prefix='v')
        rows.append([k, q.times[k], M.dim, Mtilde.dim])
    write_rows(_out(config, 'reach.csv'), ['k', 't_k', 'dim_M', 'dim_Mtilde'], rows)
    print("dim R_q = {} (final duration invariant: {})".format(reach.R_q.dim, reach.final_duration_invariant))
    return EXIT_OK


def run_obs(config, dae, jos, kwargs):
    q = _signal(config, jos)
    obs = unobs_recursion(jos, q, **kwargs)
    rows = []
    for k, N in enumerate(obs.N):
        write_matrix(_out(config, 'obs_N_{}.csv'.format(k)), N.basis, prefix='v')
        rows.append([k, q.times[k], N.dim])
    write_matrix(_out(config, 'obs_O_q.csv'), obs.O_q.basis, prefix='v')
    write_rows(_out(config, 'obs.csv'), ['k', 't_k', 'dim_N'], rows)
    print("dim UO_q = {}, dim O_q = {}".format(obs.UO_q.dim, obs.O_q.dim))
    return EXIT_OK


def _gramians(config, jos, kwargs):
    mats = gle_matrices(jos, **kwargs)
    if config.restrict:
        restricted = restrict_to_differential(mats, jos, **kwargs)
        return restricted.lift(solve_gle(restricted.mats, **kwargs), mats)
    return solve_gle(mats, **kwargs)


def run_gramians(config, dae, jos, kwargs):
    gram = _gramians(config, jos, kwargs)
    write_matrix(_out(config, 'gramian_P.csv'), gram.P)
    write_matrix(_out(config, 'gramian_Q.csv'), gram.Q)
    write_summary(_out(config, 'gramians_summary.csv'), gram.summary())
    print("residuals {:.3e} (P), {:.3e} (Q)".format(gram.residual_P, gram.residual_Q))
    return EXIT_OK


def run_reduce(config, dae, jos, kwargs):
    if config.order is None:
        raise ParseError("-r/--order is required for 'reduce'", location='command line')
    q = _signal(config, jos)
    u = _input(config, jos, q, random=True)
    gram = _gramians(config, jos, kwargs)
    reduced = balance(gram, config.order, jos, **kwargs)
    report = compare_reduced(jos, reduced, q, u, **kwargs)
    write_json(_out(config, 'reduced.json'), jump_ode_to_dict(reduced.jump_ode))
    write_matrix(_out(config, 'reduce_V.csv'), reduced.V)
    write_matrix(_out(config, 'reduce_W.csv'), reduced.W)
    write_rows(_out(config, 'hankel.csv'), ['index', 'hankel'], list(enumerate(reduced.hankel, start=1)))
    write_summary(_out(config, 'reduce_comparison.csv'), {k: v for k, v in report.items() if k != 'hankel'})
    print("order {}: max output error {:.3e}".format(reduced.order, report['max_output_error']))
    return EXIT_OK


def run_simulate(config, dae, jos, kwargs):
    q = _signal(config, jos)
    u = _input(config, jos, q)
    trajectory = simulate(jos, q, u, **kwargs)
    write_dataframe(_out(config, 'trajectory.csv'), trajectory.to_dataframe())
    write_dataframe(_out(config, 'impulses.csv'), trajectory.impulses_to_dataframe())
    print("{} samples, largest impulse coefficient {:.3e}".format(len(trajectory.times), trajectory.max_impulse()))
    return EXIT_OK


def run_verify(config, dae, jos, kwargs):
    if config.signal is not None:
        q = _signal(config, jos)
    else:
        q = random_switching_signal(jos.n_modes, 2, np.random.RandomState(seed=config.seed))
    u = load_input_signal(config.input) if config.input is not None else None
    report = run_property_suite(jos, [q], u=u, **kwargs)
    write_dataframe(_out(config, 'verify.csv'), report)
    for row in report.itertuples(index=False):
        print("{:<22} {:<28} {:<8} value {:.3e}  {}".format(row.check, row.case, row.status, row.value, row.detail))
    if not suite_passed(report):
        return EXIT_SUITE_FAILED
    return EXIT_OK


_runners = {'check': run_check, 'reform': run_reform, 'reach': run_reach, 'obs': run_obs,
            'gramians': run_gramians, 'reduce': run_reduce, 'simulate': run_simulate, 'verify': run_verify}


def run(config):
    """Executes one command; returns the exit status."""
    kwargs = config.toolkit_kwargs()
    dae, jos = load_system(config.model, **kwargs)
    return _runners[config.command](config, dae, jos, kwargs)


def main(argv=None):
    try:
        config = parse_args(argv)
        return run(config)
    except ValidationError as e:
        print("error: {}: {}".format(type(e).__name__, e), file=sys.stderr)
        return EXIT_INVALID
    except NumericalFailure as e:
        print("error: {}: {}".format(type(e).__name__, e), file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == '__main__':
    sys.exit(main())
