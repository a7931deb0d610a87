"""
Foliated chart commands: critical points, openness, flows and flow checks
"""

import argparse
import logging
from typing import Optional

from cli.report import CommandResult
from cli.sources import load_chart
from config import EXIT_FAIL_VERDICT, EXIT_INTERNAL_ASSERTION, EXIT_SUCCESS, AppSettings
from managers.chart_analyzer import ChartAnalyzer
from managers.flow_engine import FlowEngine
from managers.flow_verifier import FlowVerifier
from models.chart import SliceSpec
from models.inputs import ChartInput
from models.trajectory import Direction, FlowBudget
from utils.exceptions import InputError, PreconditionError
from utils.formatters import format_signature
from utils.validators import parse_point, validate_grid_density, validate_slice, validate_tolerance

TOLERANCE_FLAGS = ("residual_tol", "dedup_radius", "eigen_threshold", "flow_tol", "convergence_norm",
                   "epsilon", "confinement_tol")


def _pick(flag: Optional[float], from_file: Optional[float], default: float) -> float:
    """Command-line flag, then the input file, then the built-in default"""
    if flag is not None:
        return flag
    if from_file is not None:
        return from_file
    return default


def parse_slice(text: str) -> SliceSpec:
    ok, values, errors = parse_point(text)
    if not ok or len(values) != 2:
        raise InputError(errors[0] if errors else f"--slice expects 'a,b', got '{text}'")
    ok, errors = validate_slice(values[0], values[1])
    if not ok:
        raise InputError(errors[0])
    return SliceSpec(values[0], values[1])


class FolCommands:
    """The `fol` command group"""

    def register(self, subparsers, common):
        fol = subparsers.add_parser("fol", help="Numerical work on a foliated chart")
        commands = fol.add_subparsers(dest="command", required=True)

        tolerances = self._tolerance_parser(common)

        classify = commands.add_parser("classify", parents=[tolerances], help="Classify leafwise critical points")
        classify.add_argument("input", help="JSON chart file or catalog chart name")
        classify.add_argument("--jet-order", type=int, default=AppSettings.SYMBOL_JET_ORDER)
        classify.set_defaults(handler=self.classify)

        openness = commands.add_parser("openness", parents=[tolerances], help="Second-order openness check")
        openness.add_argument("input", help="JSON chart file or catalog chart name")
        openness.add_argument("--extend", action="store_true", help="Check f + t^2 with t a new leaf coordinate")
        openness.set_defaults(handler=self.openness)

        flow = commands.add_parser("flow", parents=[tolerances], help="Integrate the leafwise gradient flow")
        flow.add_argument("input", help="JSON chart file or catalog chart name")
        flow.add_argument("--start", required=True, help="Start point 'x1,...,xn,v1,...,vq'")
        flow.add_argument("--direction", choices=["forward", "backward", "both"], default="forward")
        flow.set_defaults(handler=self.flow)

        skeleton = commands.add_parser("skeleton", parents=[tolerances], help="Sample the skeleton in a slice")
        skeleton.add_argument("input", help="JSON chart file or catalog chart name")
        skeleton.add_argument("--slice", required=True, help="Slice bounds 'a,b'")
        skeleton.add_argument("--grid", type=int, default=AppSettings.DEFAULT_LEAF_GRID)
        skeleton.set_defaults(handler=self.skeleton)

        checks = commands.add_parser("checks", parents=[tolerances],
                                     help="Confinement, stable set and descent checks on a model chart")
        checks.add_argument("input", help="JSON chart file or catalog chart name")
        checks.add_argument("--slice", required=True, help="Slice bounds 'a,b'")
        checks.add_argument("--model-d", type=int, required=True, help="Number of squared leading coordinates")
        checks.add_argument("--radius", type=float, default=0.5, help="Neighbourhood radius of the plane")
        checks.add_argument("--grid", type=int, default=7, help="Skeleton grid points per axis")
        checks.add_argument("--descent-grid", type=int, default=AppSettings.DEFAULT_LEAF_GRID)
        checks.add_argument("--seed", type=int, default=AppSettings.DEFAULT_SAMPLE_SEED)
        checks.set_defaults(handler=self.checks)

    @staticmethod
    def _tolerance_parser(common):
        parser = argparse.ArgumentParser(add_help=False, parents=[common])
        group = parser.add_argument_group("tolerances")
        group.add_argument("--residual-tol", type=float, help="Newton acceptance residual")
        group.add_argument("--dedup-radius", type=float, help="Radius under which roots are merged")
        group.add_argument("--eigen-threshold", type=float, help="Relative zero threshold for eigenvalues")
        group.add_argument("--flow-tol", type=float, help="Integrator local error control")
        group.add_argument("--convergence-norm", type=float, help="Gradient norm treated as converged")
        group.add_argument("--epsilon", type=float, help="Near-skeleton radius")
        group.add_argument("--confinement-tol", type=float, help="Allowed distance from the plane")
        group.add_argument("--max-time", type=float, default=AppSettings.FLOW_MAX_TIME)
        group.add_argument("--max-steps", type=int, default=AppSettings.FLOW_MAX_STEPS)
        return parser

    # -- building blocks ----------------------------------------------------

    @staticmethod
    def _check_flags(args):
        for name in TOLERANCE_FLAGS:
            value = getattr(args, name)
            if value is not None and not validate_tolerance(value):
                raise InputError(f"--{name.replace('_', '-')} must be a positive number, got {value}")
        for name in ("grid", "descent_grid"):
            if hasattr(args, name) and not validate_grid_density(getattr(args, name)):
                raise InputError(f"--{name.replace('_', '-')} must be a positive integer")

    @staticmethod
    def _analyzer(args, chart_input: ChartInput) -> ChartAnalyzer:
        FolCommands._check_flags(args)
        tolerances = chart_input.tolerances
        return ChartAnalyzer(
            residual_tolerance=_pick(args.residual_tol, tolerances.residual, AppSettings.RESIDUAL_TOLERANCE),
            dedup_radius=_pick(args.dedup_radius, tolerances.dedup_radius, AppSettings.DEDUP_RADIUS),
            eigen_threshold=_pick(args.eigen_threshold, tolerances.eigen_zero, AppSettings.EIGEN_ZERO_THRESHOLD),
        )

    def _engine(self, args, chart_input: ChartInput) -> FlowEngine:
        tolerances = chart_input.tolerances
        return FlowEngine(
            self._analyzer(args, chart_input),
            error_control=_pick(args.flow_tol, tolerances.flow_error, AppSettings.FLOW_ERROR_CONTROL),
            convergence_norm=_pick(args.convergence_norm, tolerances.convergence_norm,
                                   AppSettings.FLOW_CONVERGENCE_NORM),
        )

    @staticmethod
    def _budget(args) -> FlowBudget:
        if args.max_time <= 0 or args.max_steps < 1:
            raise InputError("--max-time and --max-steps must be positive")
        return FlowBudget(args.max_time, args.max_steps)

    # -- handlers -----------------------------------------------------------

    def classify(self, args) -> CommandResult:
        chart_input = load_chart(args.input)
        f, metric = chart_input.function(), chart_input.metric_spec()
        analyzer = self._analyzer(args, chart_input)
        records = analyzer.find_critical_points(f, metric, (chart_input.grid_leaf, chart_input.grid_transverse))
        records = analyzer.classify_all(records, f, args.jet_order)
        genericity = analyzer.genericity_spotcheck(f, records)
        strata = analyzer.order_strata(records)
        rows = [{
            'location': r.location,
            'value': r.value,
            'signature': format_signature(r.d_plus, r.d_minus, r.d_zero),
            'symbol': r.symbol,
            'exact': r.exact,
            'stratum': r.stratum_label(),
        } for r in records]
        report = {
            'chart': chart_input.chart().to_dict(),
            'expression': f.describe(),
            'metric': metric.to_dict(),
            'records': [r.to_dict() for r in records],
            'genericity': genericity.to_dict(),
            'strata': [{'d_plus': d, 'symbol': list(symbol)} for d, symbol in strata],
        }
        summary = {
            'function': f.describe(),
            'critical points': len(records),
            'degenerate': genericity.degenerate_count,
            'strata (low to high)': ", ".join(f"Sigma_{d}^({','.join(map(str, s))})" for d, s in strata),
        }
        return CommandResult("Leafwise critical points", report, rows, summary)

    def openness(self, args) -> CommandResult:
        chart_input = load_chart(args.input)
        f, metric = chart_input.function(), chart_input.metric_spec()
        if args.extend:
            f, metric = f.product_extension(), metric.extended()
        analyzer = self._analyzer(args, chart_input)
        result = analyzer.openness_check(f, metric, (chart_input.grid_leaf, chart_input.grid_transverse))
        rows = [{'kind': 'witness', 'location': r.location, 'value': r.value,
                 'signature': format_signature(r.d_plus, r.d_minus, r.d_zero)} for r in result.witnesses]
        rows += [{'kind': 'suspect', 'location': r.location, 'value': r.value,
                  'signature': format_signature(r.d_plus, r.d_minus, r.d_zero)} for r in result.suspects]
        report = result.to_dict()
        report['expression'] = f.describe()
        summary = {
            'function': f.describe(),
            'verdict': result.verdict,
            'critical points': len(result.records),
            'witnesses': len(result.witnesses),
            'suspects': len(result.suspects),
        }
        code = EXIT_SUCCESS if result.passed else EXIT_FAIL_VERDICT
        return CommandResult("Openness check", report, rows, summary, code)

    def flow(self, args) -> CommandResult:
        chart_input = load_chart(args.input)
        f, metric = chart_input.function(), chart_input.metric_spec()
        ok, start, errors = parse_point(args.start)
        if not ok:
            raise InputError(errors[0])
        if len(start) != f.chart.total_dim:
            raise InputError(f"--start needs {f.chart.total_dim} coordinates, got {len(start)}")
        if not f.chart.contains(start):
            raise InputError(f"--start {start} lies outside the box")
        engine = self._engine(args, chart_input)
        budget = self._budget(args)

        directions = [Direction.BACKWARD, Direction.FORWARD] if args.direction == "both" \
            else [Direction(args.direction)]
        names = f.chart.coordinate_names()
        runs, rows = [], []
        code = EXIT_SUCCESS
        for direction in directions:
            trajectory = engine.integrate(f, metric, start, direction, budget)
            monotone = engine.verify_monotone(trajectory)
            leafwise = engine.verify_leafwise(trajectory, f.leaf_dim)
            if not (monotone and leafwise):
                logging.error(f"Flow invariants failed from {start}: monotone={monotone}, leafwise={leafwise}")
                code = EXIT_INTERNAL_ASSERTION
            run = trajectory.to_dict()
            run.update({'monotone': monotone, 'leafwise': leafwise, 'samples': trajectory.to_rows(names)})
            runs.append(run)
            rows += trajectory.to_rows(names)
        report = {'expression': f.describe(), 'start': start, 'runs': runs}
        summary = {'function': f.describe()}
        for run in runs:
            summary[f"{run['direction']} status"] = run['status']
            summary[f"{run['direction']} limit"] = run['limit']
        columns = ['t'] + names + ['f']
        return CommandResult("Leafwise gradient flow", report, rows, summary, code, columns)

    def skeleton(self, args) -> CommandResult:
        chart_input = load_chart(args.input)
        f, metric = chart_input.function(), chart_input.metric_spec()
        slice_spec = parse_slice(args.slice)
        samples = self._engine(args, chart_input).skeleton_sample(f, metric, slice_spec, args.grid,
                                                                  self._budget(args))
        rows = [{'start': s.start, 'limit': s.limit, 'value': s.value} for s in samples]
        report = {
            'expression': f.describe(),
            'slice': [slice_spec.lower, slice_spec.upper],
            'grid': args.grid,
            'samples': [s.to_dict() for s in samples],
        }
        summary = {'function': f.describe(), 'slice': [slice_spec.lower, slice_spec.upper],
                   'samples': len(samples)}
        return CommandResult("Skeleton sample", report, rows, summary)

    def checks(self, args) -> CommandResult:
        chart_input = load_chart(args.input)
        f, metric = chart_input.function(), chart_input.metric_spec()
        slice_spec = parse_slice(args.slice)
        budget = self._budget(args)
        tolerances = chart_input.tolerances
        verifier = FlowVerifier(self._engine(args, chart_input), seed=args.seed)

        results = [verifier.confinement_check(
            f, metric, args.model_d, slice_spec, args.grid,
            _pick(args.confinement_tol, tolerances.confinement, AppSettings.CONFINEMENT_TOLERANCE), budget)]
        try:
            verifier.require_adapted(f, metric, args.model_d)
        except PreconditionError as e:
            logging.warning(f"Stable set check rejected: {e}")
            results.append(None)
            rejected = {'check': 'stable_set', 'verdict': 'REJECTED', 'metric': None, 'details': {'reason': str(e)}}
        else:
            results.append(verifier.stable_set_check(f, metric, args.model_d, args.radius, budget=budget))
            rejected = None
        results.append(verifier.descent_dichotomy(
            f, metric, slice_spec, args.descent_grid, budget,
            _pick(args.epsilon, tolerances.near_skeleton, AppSettings.NEAR_SKELETON_EPSILON)))

        entries = [r.to_dict() if r is not None else rejected for r in results]
        rows = [{'check': e['check'], 'verdict': e['verdict'], 'metric': e['metric']} for e in entries]
        passed = all(r is not None and r.passed for r in results)
        report = {'expression': f.describe(), 'model_d': args.model_d, 'checks': entries,
                  'verdict': "PASS" if passed else "FAIL"}
        summary = {'function': f.describe(), 'verdict': report['verdict']}
        code = EXIT_SUCCESS if passed else EXIT_FAIL_VERDICT
        return CommandResult("Flow checks", report, rows, summary, code, ['check', 'verdict', 'metric'])
