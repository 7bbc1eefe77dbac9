from joblib import Parallel, delayed
from tqdm import tqdm
import pandas

from ..utils import update_all_param_dicts_with_kwargs
from .check_classes import CheckData
from .check_list import check_dict, get_checks_list

suite_columns = ['check', 'case', 'value', 'threshold', 'passed', 'status', 'detail']


def _run_check(check_name, check_data):
    return check_dict[check_name](check_data).compute_check()


def run_property_suite(
        jos,
        signals,
        u=None,
        check_names=None,
        as_dataframe=True,
        **kwargs
):
    """
    Runs the property checks on a reformulated system.

    Parameters
    ----------
    jos: JumpOdeSystem
        The reformulated system
    signals: list
        SwitchingSignal objects every check runs on
    u: InputSignal
        Input for the simulation checks. Signals it does not cover get a seeded random input
    check_names: list
        Checks to run (default all, see get_checks_list())
    as_dataframe: bool
        If True (default) the rows are returned as a pandas.DataFrame, otherwise as a list of OrderedDict
    **kwargs: keyword arguments
        Keyword arguments among the following:
            tol_rank, tol_check, tol_angle: float
                Tolerances
            dt: float
                Simulation step
            seed: int
                Random seed for reproducibility
            n_jobs: int
                Number of parallel jobs over checks (default 1)
            joblib_backend: str
                joblib backend (default 'loky')
            verbose: bool
                If True, progress is displayed

    Returns
    -------
    report: pandas.DataFrame or list
        One row per check and case with columns check, case, value, threshold, passed, status and detail.
        A check whose preconditions do not hold is reported with status 'skipped'
    """
    params_dict = update_all_param_dicts_with_kwargs(kwargs)

    if check_names is None:
        check_names = get_checks_list()
    else:
        bad_checks = [c for c in check_names if c not in check_dict]
        if len(bad_checks) > 0:
            raise ValueError(f"Improper check names: {str(bad_checks)}. The following checks can be "
                             f"run: {str(get_checks_list())}")

    verbose = params_dict['verbose']
    n_jobs = params_dict['n_jobs']
    check_kwargs = {k: v for k, v in kwargs.items() if k not in ('verbose', 'n_jobs')}
    check_data = CheckData(jos, signals, u=u, verbose=verbose, **check_kwargs)

    if verbose:
        print(f"Running {len(check_names)} checks on {len(signals)} signals - Number of jobs: {n_jobs}")

    if n_jobs > 1:
        results = Parallel(n_jobs=n_jobs, backend=params_dict['joblib_backend'])(
            delayed(_run_check)(name, check_data) for name in check_names)
    else:
        names = tqdm(check_names, ascii=True, desc="Running property checks") if verbose else check_names
        results = [_run_check(name, check_data) for name in names]

    rows = [row for check_rows in results for row in check_rows]
    if as_dataframe:
        return pandas.DataFrame(rows, columns=suite_columns)
    return rows


def suite_passed(report):
    """True when no case of the report failed; skipped cases do not count as failures."""
    return not bool((report['status'] == 'failed').any())
