#!/usr/bin/env python3
"""
proxgraph - command-line entry point.

Run from the project root:
  python run_proxgraph.py [--config config/proxgraph_config.yaml] VERB [options]

Structured results go to standard output as JSON (DOT for the dot verb);
logs go to standard error and the log file.
"""

import argparse
import logging
import os
import sys
from datetime import datetime

# Ensure project root is on path so the "proxgraph" package is found
_ROOT = os.path.dirname(os.path.abspath(__file__))
if _ROOT not in sys.path:
    sys.path.insert(0, _ROOT)

from proxgraph.dot_export import export_dot
from proxgraph.dynamics import orbit_check, validate_map
from proxgraph.errors import ParseError, PreconditionFailed, ProxGraphError
from proxgraph.io import (
    decision_to_dict, dumps, graph_to_dict, load_graph, load_map, load_space, partition_to_dict,
    space_class_to_dict, space_to_dict,
)
from proxgraph.metric_space import ball_partition, classify
from proxgraph.proximity import farthest_graph, proximinal_graph
from proxgraph.realize import DecisionLevel, Target, decide, realize_farthest, realize_metric, realize_ultrametric
from proxgraph.sweeps import SUITES, SweepRunner
from proxgraph.utils import (
    DEFAULT_CONFIG, format_rational, load_yaml_config, merge_config, parse_rational, setup_logging,
    validate_config,
)

DEFAULT_CONFIG_PATH = 'config/proxgraph_config.yaml'

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_PARSE_ERROR = 2


class ProxGraphApp:
    """Loads configuration, sets up logging and runs one command verb."""

    def __init__(self, config_path=DEFAULT_CONFIG_PATH, config=None, out=None):
        self.config_path = config_path
        self.missing_config = False
        self.config = config if config is not None else self._load_config()
        self.config = merge_config(self.config)
        validate_config(self.config)
        self.config['suites'] = self._load_suite_config()
        self.logger = self._setup_logging()
        self.out = out or sys.stdout
        if self.missing_config:
            self.logger.warning(f"Config not found: {config_path}; using built-in defaults")

    def _load_config(self):
        if not self.config_path or not os.path.exists(self.config_path):
            self.missing_config = True
            return {}
        return load_yaml_config(self.config_path)

    def _load_suite_config(self):
        suites = dict(self.config.get('suites') or {})
        path = self.config['paths'].get('sweep_config')
        if path and os.path.exists(path):
            for name, params in (load_yaml_config(path).get('suites') or {}).items():
                suites.setdefault(name, params)
        return suites

    def _setup_logging(self):
        log_config = self.config.get('logging', {})
        return setup_logging(
            log_dir=self.config['paths']['logs_dir'] if log_config.get('file') else None,
            level=log_config.get('level', 'INFO'),
            format_str=log_config.get('format'),
            file_name=log_config.get('file') or DEFAULT_CONFIG['logging']['file'],
            console=log_config.get('console', True),
        )

    def _emit(self, payload):
        self.out.write(payload if isinstance(payload, str) else dumps(payload) + "\n")

    def _space_graph(self, space, parts, mode):
        a_set, b_set = space.part(parts[0]), space.part(parts[1])
        if mode == 'farthest':
            return farthest_graph(space, a_set, b_set)
        return proximinal_graph(space, a_set, b_set)

    def cmd_classify(self, args):
        verdict = classify(load_space(args.space))
        self.logger.info(f"{args.space}: {verdict.level.label}")
        self._emit(space_class_to_dict(verdict))
        return EXIT_OK

    def cmd_graph(self, args):
        g = self._space_graph(load_space(args.space), args.parts, args.mode)
        self.logger.info(f"{args.mode} graph of {args.space}: {len(g.edges)} edges")
        self._emit(graph_to_dict(g))
        return EXIT_OK

    def cmd_decide(self, args):
        decision = decide(load_graph(args.graph), Target(args.target), DecisionLevel(args.level))
        self.logger.info(f"decide {args.target}/{args.level}: {decision.realizable} ({decision.reason.value})")
        self._emit(decision_to_dict(decision))
        return EXIT_OK

    def cmd_realize(self, args):
        builders = {
            Target.PROXIMINAL_METRIC: realize_metric,
            Target.PROXIMINAL_ULTRAMETRIC: realize_ultrametric,
            Target.FARTHEST: realize_farthest,
        }
        witness = builders[Target(args.target)](load_graph(args.graph))
        self._emit(space_to_dict(witness))
        return EXIT_OK

    def cmd_verify(self, args):
        g = load_graph(args.graph)
        space = load_space(args.space)
        mode_graph = farthest_graph if args.mode == 'farthest' else proximinal_graph
        recomputed = mode_graph(space, g.part_a, g.part_b)
        missing = sorted(g.edges - recomputed.edges)
        extra = sorted(recomputed.edges - g.edges)
        equal = not missing and not extra
        level = logging.INFO if equal else logging.WARNING
        self.logger.log(level, f"verify {args.graph} against {args.space}: {'equal' if equal else 'unequal'}")
        self._emit({
            'equal': equal,
            'missing': [list(e) for e in missing],
            'extra': [list(e) for e in extra],
        })
        return EXIT_OK if equal else EXIT_DOMAIN_ERROR

    def cmd_balls(self, args):
        partition = ball_partition(load_space(args.space), parse_rational(args.radius))
        self._emit(partition_to_dict(partition))
        return EXIT_OK

    def cmd_orbit(self, args):
        space = load_space(args.space)
        a_set, b_set = space.part(args.parts[0]), space.part(args.parts[1])
        checked = validate_map(load_map(args.map), space, a_set, b_set)
        if not checked.nonexpansive:
            x, y = checked.expansion_witness
            raise PreconditionFailed(f"Map expands the pair ({x}, {y})", witness=checked.expansion_witness)
        distances = orbit_check(checked.cyclic_map, space, args.a0, args.b0, args.steps)
        self._emit({
            'a0': args.a0,
            'b0': args.b0,
            'steps': args.steps,
            'distances': [format_rational(v) for v in distances],
        })
        return EXIT_OK

    def cmd_dot(self, args):
        self._emit(export_dot(load_graph(args.graph), args.name))
        return EXIT_OK

    def cmd_sweep(self, args):
        sweep = self.config.setdefault('sweep', {})
        if args.n_jobs is not None:
            sweep['n_jobs'] = args.n_jobs
        runner = SweepRunner(self.config, self.logger)
        summary = runner.run(args.suite, args.max_part_size, args.seed, args.instances)
        self._emit(summary)
        return EXIT_OK if summary['failed'] == 0 else EXIT_DOMAIN_ERROR

    def run(self, args):
        start = datetime.now()
        handler = getattr(self, f"cmd_{args.verb}")
        self.logger.debug(f"Running {args.verb}")
        code = handler(args)
        self.logger.debug(f"{args.verb} finished in {datetime.now() - start}")
        return code


def build_parser():
    parser = argparse.ArgumentParser(
        description="Proximinal and farthest graphs of finite semimetric spaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--config', default=DEFAULT_CONFIG_PATH, help='Configuration file')
    verbs = parser.add_subparsers(dest='verb', required=True)

    p = verbs.add_parser('classify', help='Classify a space as Semimetric, Metric or Ultrametric')
    p.add_argument('space', help='Space file')

    p = verbs.add_parser('graph', help='Proximinal or farthest graph of a space')
    p.add_argument('space', help='Space file')
    p.add_argument('--mode', choices=['proximinal', 'farthest'], default='proximinal')
    p.add_argument('--parts', nargs=2, default=['A', 'B'], metavar=('A', 'B'), help='Part names')

    p = verbs.add_parser('decide', help='Decide realizability of a graph')
    p.add_argument('graph', help='Graph file')
    p.add_argument('--target', choices=[t.value for t in Target], default='metric')
    p.add_argument('--level', choices=[lv.value for lv in DecisionLevel], default='exact')

    p = verbs.add_parser('realize', help='Witness space for a nonempty graph')
    p.add_argument('graph', help='Graph file')
    p.add_argument('--target', choices=[t.value for t in Target], default='metric')

    p = verbs.add_parser('verify', help='Recompute the graph of a space and diff it against a graph file')
    p.add_argument('graph', help='Graph file')
    p.add_argument('space', help='Space file')
    p.add_argument('--mode', choices=['proximinal', 'farthest'], default='proximinal')

    p = verbs.add_parser('balls', help='Partition an ultrametric space into closed balls')
    p.add_argument('space', help='Space file')
    p.add_argument('--radius', required=True, help='Radius as n or p/q')

    p = verbs.add_parser('orbit', help='Distances along the orbit of a best proximity pair')
    p.add_argument('space', help='Space file')
    p.add_argument('map', help='Map file')
    p.add_argument('--steps', type=int, default=20)
    p.add_argument('--a0', required=True)
    p.add_argument('--b0', required=True)
    p.add_argument('--parts', nargs=2, default=['A', 'B'], metavar=('A', 'B'), help='Part names')

    p = verbs.add_parser('dot', help='Render a graph file as DOT')
    p.add_argument('graph', help='Graph file')
    p.add_argument('--name', default='G')

    p = verbs.add_parser('sweep', help='Run a named invariant suite')
    p.add_argument('--suite', choices=SUITES, required=True)
    p.add_argument('--max-part-size', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--instances', type=int, default=None, help='Override the configured population size')
    p.add_argument('--n-jobs', type=int, default=None)
    return parser


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    try:
        app = ProxGraphApp(args.config, out=out)
    except ValueError as e:
        print(f"Invalid configuration: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        return app.run(args)
    except ParseError as e:
        app.logger.error(str(e))
        return EXIT_PARSE_ERROR
    except ProxGraphError as e:
        app.logger.error(f"{type(e).__name__}: {e}")
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
