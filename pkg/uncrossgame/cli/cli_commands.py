import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from ..errors import GenerationFailed, InstanceParseError, NothingToImprove, RedLoses
from ..file_io_utils import dump_json, load_json, save_json
from ..functions import MAX_VERIFY_GROUND, verify_skew_supermodular
from ..game import make_blue, play, replay, worst_case_blue
from ..ground import Family, is_laminar
from ..lp import (PerturbationConfig, dual_feasible, estimate_uncrossing_bound,
                  perturbation_experiment, solve_dual_exact)
from ..rational_utils import format_rational, parse_rational
from ..redstrategy import naive_red_strategy, paper_red_strategy
from ..uncross import DualSolution, objective, uncross_naive, uncross_strategic
from .cli_instance import emit_instance, generate_instance, load_instance


__all__ = ['RunReport', 'iteration_bound', 'cmd_gen', 'cmd_verify_fn', 'cmd_play',
           'cmd_uncross', 'cmd_lp_experiment', 'cmd_replay']


logger = logging.getLogger(__name__)

RED_STRATEGIES = {'paper': paper_red_strategy, 'naive': naive_red_strategy}


def iteration_bound(n: int, family_size: int) -> int:
    return 8 * n ** 3 * max(family_size, 1)


@dataclass
class RunReport:
    """Outcome of one game; bound fields are derived from the recorded values only."""
    red: str
    blue: str
    n: int
    family_size: int
    won: bool
    iterations: int
    oracle_calls: int
    trace_path: Optional[str] = None
    subgames: List[tuple] = field(default_factory=list)

    @property
    def bound(self) -> int:
        return iteration_bound(self.n, self.family_size)

    @property
    def within_bound(self) -> bool:
        return self.iterations <= self.bound

    @property
    def bound_constant(self) -> Fraction:
        """iterations / (n^3 |F0|), the empirical constant of the cubic bound."""
        return Fraction(self.iterations, self.n ** 3 * max(self.family_size, 1))

    def to_dict(self) -> dict:
        return {
            'red': self.red,
            'blue': self.blue,
            'n': self.n,
            'family_size': self.family_size,
            'won': self.won,
            'iterations': self.iterations,
            'oracle_calls': self.oracle_calls,
            'bound': self.bound,
            'within_bound': self.within_bound,
            'bound_constant': format_rational(self.bound_constant),
            'subgames': [list(item) for item in self.subgames],
            'trace': self.trace_path,
        }


def _emit(args, report: dict):
    out = getattr(args, 'out', None)
    if out:
        save_json(out, report)
    else:
        print(dump_json(report))


def _save_trace(path: Optional[str], family: Family, trace, final_family: Optional[Family] = None):
    if not path:
        return
    data = {'family': family.to_lists(), 'records': [record.to_dict() for record in trace]}
    if final_family is not None:
        data['final_family'] = final_family.to_lists()
    save_json(path, data)
    logger.info('trace with %d records saved to %s', len(trace), path)


def cmd_gen(args) -> int:
    if not 2 <= args.n <= MAX_VERIFY_GROUND:
        raise GenerationFailed(f'n={args.n} outside 2..{MAX_VERIFY_GROUND}')
    if args.family_size < 0:
        raise GenerationFailed(f'family size {args.family_size} < 0')
    instance = generate_instance(args.n, args.family_size, kind=args.kind, seed=args.seed)
    _emit(args, emit_instance(instance))
    return 0


def cmd_verify_fn(args) -> int:
    instance = load_instance(args.instance)
    violation = verify_skew_supermodular(instance.f, instance.ground)
    if violation is None:
        _emit(args, {'ok': True, 'n': instance.n, 'kind': instance.f.kind})
        return 0
    _emit(args, {
        'ok': False,
        'n': instance.n,
        'kind': instance.f.kind,
        'violation': {'X': list(violation.X.key()), 'Y': list(violation.Y.key()),
                      'lhs': format_rational(violation.lhs),
                      'rhs': format_rational(violation.rhs)},
    })
    return 1


def cmd_play(args) -> int:
    instance = load_instance(args.instance)
    f, F0 = instance.f, instance.family
    red = RED_STRATEGIES[args.red](f)
    cap = args.cap if args.cap is not None else iteration_bound(instance.n, len(F0))
    calls_before = f.eval_count

    if args.blue == 'exhaustive':
        try:
            iterations, trace = worst_case_blue(F0, f, red, depth_cap=cap,
                                                allow_none=args.allow_none)
        except RedLoses as err:
            _save_trace(args.trace, F0, err.trace)
            report = RunReport(red=args.red, blue=args.blue, n=instance.n, family_size=len(F0),
                               won=False, iterations=len(err.trace),
                               oracle_calls=f.eval_count - calls_before, trace_path=args.trace)
            _emit(args, report.to_dict())
            return 1
        final = replay(F0, f, [record.to_dict() for record in trace], allow_none=True)
        _save_trace(args.trace, F0, trace, final.family)
        report = RunReport(red=args.red, blue=args.blue, n=instance.n, family_size=len(F0),
                           won=True, iterations=iterations,
                           oracle_calls=f.eval_count - calls_before, trace_path=args.trace)
        _emit(args, report.to_dict())
        return 0

    blue = make_blue(args.blue, allow_none=args.allow_none)
    outcome = play(F0, f, red, blue, cap=cap, allow_none=args.allow_none)
    _save_trace(args.trace, F0, outcome.trace, outcome.final_family)
    report = RunReport(red=args.red, blue=args.blue, n=instance.n, family_size=len(F0),
                       won=outcome.won, iterations=outcome.iterations,
                       oracle_calls=outcome.oracle_calls, trace_path=args.trace,
                       subgames=list(getattr(red, 'subgame_log', [])))
    _emit(args, report.to_dict())
    if not outcome.won:
        logger.warning('Red did not win within %d iterations', cap)
        return 1
    return 0


def cmd_uncross(args) -> int:
    instance = load_instance(args.instance)
    if instance.dual is None:
        raise InstanceParseError(f'{args.instance}: no "dual" to uncross')
    f = instance.f
    lam = instance.dual
    if args.scale is not None:
        try:
            scale = parse_rational(args.scale)
        except (ValueError, ZeroDivisionError) as err:
            raise InstanceParseError(f'--scale {args.scale!r}: {err}')
        if scale <= 0:
            raise InstanceParseError(f'--scale {args.scale!r}: must be positive')
        lam = lam.scaled(scale)
    if instance.lp is not None and not dual_feasible(instance.lp, lam):
        logger.warning('dual is infeasible for the given LP; uncrossing keeps edge loads from growing')

    if args.mode == 'naive':
        result = uncross_naive(lam, f, alpha_rule=args.alpha_rule, prescale=args.prescale)
    else:
        result = uncross_strategic(lam, f)
    report = {
        'mode': args.mode,
        'steps': result.steps,
        'objective_before': format_rational(objective(lam, f)),
        'objective_after': format_rational(objective(result.dual, f)),
        'laminar': result.dual.is_laminar(),
        'dual': result.dual.to_records(),
        'records': [record.to_dict() for record in result.records],
    }
    if instance.lp is not None:
        report['feasible'] = bool(dual_feasible(instance.lp, result.dual))
    _emit(args, report)
    return 0 if report['laminar'] else 1


def _suboptimal_start(laminar_opt: DualSolution, rng) -> DualSolution:
    """A random nonempty part of a laminar optimum scaled by a factor in (0, 1)."""
    members = list(laminar_opt.items())
    keep = rng.random(len(members)) < 0.7
    if not keep.any():
        keep[int(rng.integers(len(members)))] = True
    factor = Fraction(int(rng.integers(1, 10)), 10)
    return DualSolution({X: value * factor for (X, value), kept in zip(members, keep) if kept},
                        laminar_opt.ground)


def cmd_lp_experiment(args) -> int:
    instance = load_instance(args.instance)
    if instance.lp is None:
        raise InstanceParseError(f'{args.instance}: no "lp" section')
    lp = instance.lp
    try:
        epsilon = parse_rational(args.epsilon)
    except (ValueError, ZeroDivisionError) as err:
        raise InstanceParseError(f'--epsilon {args.epsilon!r}: {err}')
    solution = solve_dual_exact(lp)
    summary: Dict[str, object] = {
        'optimum': format_rational(solution.value),
        'trials': args.trials,
    }
    if solution.value == 0:
        summary.update({'status': 'nothing_to_improve', 'passed': 0, 'failed': 0,
                        'nothing_to_improve': args.trials, 'reports': []})
        _emit(args, summary)
        return 0

    rng = np.random.default_rng(args.seed)
    laminar_opt = uncross_strategic(solution.dual, lp.f).dual
    support_size = len(set(laminar_opt.support()) | set(solution.dual.support()))
    N = estimate_uncrossing_bound(lp.f, lp.ground, support_size, rng=rng)

    reports, passed, failed, skipped = [], 0, 0, 0
    for trial in range(args.trials):
        lam = _suboptimal_start(laminar_opt, rng)
        cfg = PerturbationConfig.build(lam, epsilon, N, measured_N=True)
        try:
            report = perturbation_experiment(lp, lam, cfg)
        except NothingToImprove:
            skipped += 1
            reports.append({'trial': trial, 'status': 'nothing_to_improve'})
            continue
        if report.passed:
            passed += 1
        else:
            failed += 1
        reports.append(dict(trial=trial, status='passed' if report.passed else 'failed',
                            **report.to_dict()))
    summary.update({'status': 'ok' if failed == 0 else 'failed', 'N': N, 'passed': passed,
                    'failed': failed, 'nothing_to_improve': skipped, 'reports': reports})
    _emit(args, summary)
    return 0 if failed == 0 else 1


def cmd_replay(args) -> int:
    instance = load_instance(args.instance)
    data = load_json(args.trace)
    if 'family' in data:
        F0 = Family.from_subsets(data['family'], instance.ground)
    else:
        F0 = instance.family
    try:
        state = replay(F0, instance.f, data.get('records', []), allow_none=True)
    except (KeyError, ValueError) as err:
        raise InstanceParseError(f'{args.trace}: malformed record ({err})')
    report = {
        'iterations': state.iteration,
        'laminar': is_laminar(state.family),
        'final_family': state.family.to_lists(),
    }
    matches = True
    if 'final_family' in data:
        expected = Family.from_subsets(data['final_family'], instance.ground)
        matches = expected == state.family
        report['matches_trace'] = matches
    _emit(args, report)
    return 0 if matches else 1
