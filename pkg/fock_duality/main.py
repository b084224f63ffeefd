#!/usr/bin/env python3
"""
Fock Duality Command-Line Tool

Pairing tables, brute-force Fock space decompositions, highest-weight
states, verification suites and diagram pictures for the gl-gl, sp-sp and
o-o dual pairs.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 size guard hit.
"""

import argparse
import logging
import sys

from fock_duality.decomposer.decomposer import decompose, reflection_analysis
from fock_duality.models.diagrams import OGroupDiagram, PAIR_TYPES, pairing_table
from fock_duality.models.fock_space import StateVector
from fock_duality.pairs.dual_pairs import (
    build_pair,
    cartan_weight,
    phi_hw,
    reflection_r,
    sigma,
)
from fock_duality.utils.config import AppConfig
from fock_duality.utils.errors import ConsistencyError, DimensionGuardError, FockDualityError
from fock_duality.utils.linalg import format_rational, qq
from fock_duality.utils.rendering import (
    dump_json,
    format_values,
    render_diagram,
    render_frame,
    render_pairing_table,
    render_report,
    render_rows,
    render_suites,
)
from fock_duality.verify.suites import SUITE_ORDER, VerifyBounds, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _rows(text):
    """Comma-separated row lengths; rationals such as 5/2 are allowed."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(qq(part) for part in text.split(','))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _int_rows(text):
    rows = _rows(text)
    if any(r.denominator != 1 for r in rows):
        raise argparse.ArgumentTypeError(f"row lengths must be integers: {text!r}")
    return tuple(int(r) for r in rows)


class FockDualityApp:
    """Runs one parsed command and produces its text payload and exit code."""

    def __init__(self, config):
        self.config = config

    def output_format(self, args):
        return args.format or self.config.get('output_format')

    def max_dk(self, args):
        if getattr(args, 'max_dk', None) is not None:
            return args.max_dk
        return self.config.max_dk

    def run_pairs(self, args):
        table = pairing_table(args.pair, args.d, args.k)
        if self.output_format(args) == 'json':
            return dump_json(table.to_dict()), EXIT_OK
        return render_pairing_table(table, diagrams=not args.no_diagrams), EXIT_OK

    def run_decompose(self, args):
        report = decompose(args.pair, args.d, args.k, max_dk=self.max_dk(args))
        ok = report.ok
        if args.pair == 'o-o':
            report = reflection_analysis(report)
            ok = ok and all(r.group_check for r in report.records)
        code = EXIT_OK if ok else EXIT_CHECK_FAILED
        if self.output_format(args) == 'json':
            return dump_json(report.to_dict()), code
        return render_report(report), code

    def run_hw(self, args):
        d, k = args.d, args.k
        lam = OGroupDiagram(args.lam, d)
        pair = build_pair('o-o', d, k, max_dk=self.max_dk(args))
        phi = phi_hw(lam, d, k)
        vec = StateVector.from_signed(phi, d, k)
        w = cartan_weight([g.operator for g in pair.cartan_b], phi.state.occupation)
        killed = all(not g.operator.act_bits(phi.state.occupation) for g in pair.raising_b)
        r_image = reflection_r(d, k).apply_vector(vec)
        r_eigen = 1 if r_image == vec else -1 if r_image == -vec else None
        data = {
            'd': d, 'k': k, 'lambda': list(lam.rows),
            'state': [[m.p, m.tau] for m in phi.state.modes],
            'sign': phi.sign,
            'w': [format_rational(x) for x in w],
            'raising_annihilate': killed,
            'r_eigen': r_eigen,
        }
        if lam.is_self_complementary:
            s_image = sigma(d, k).apply_vector(vec)
            data['sigma_eigen'] = 1 if s_image == vec else -1 if s_image == -vec else None
        code = EXIT_OK if killed else EXIT_CHECK_FAILED
        if self.output_format(args) == 'json':
            return dump_json(data), code
        lines = [f"phi_hw for lambda={lam} in O({d}), k={k}",
                 f"state: {'+' if phi.sign > 0 else '-'}{phi.state}",
                 f"w:     {format_values(w)}",
                 f"raising operators annihilate: {'yes' if killed else 'NO'}",
                 f"r eigenvalue: {r_eigen if r_eigen is not None else '-'}"]
        if 'sigma_eigen' in data:
            lines.append(f"sigma eigenvalue: {data['sigma_eigen']}")
        lines.append("")
        lines.extend(render_diagram(lam.diagram))
        return "\n".join(lines) + "\n", code

    def run_verify(self, args):
        bound = args.max_dk if args.max_dk is not None else int(self.config.get('verify_max_dk'))
        bounds = VerifyBounds(max_dk=bound, d=args.d,
                              tensor_max_rank=int(self.config.get('tensor_max_rank')),
                              tensor_max_entries=self.config.tensor_max_entries)
        results = run_suites(args.suite, bounds)
        ok = all(suite.ok for suite in results)
        code = EXIT_OK if ok else EXIT_CHECK_FAILED
        if self.output_format(args) == 'json':
            return dump_json({'ok': ok, 'suites': [s.to_dict() for s in results]}), code
        return render_suites(results), code

    def run_render(self, args):
        if args.frame is not None:
            if args.d is None or args.k is None:
                raise ValueError("--frame needs --d and --k")
            lines = render_frame(args.d, args.k, args.frame)
        elif args.rows is not None:
            lines = render_rows(args.rows)
        else:
            raise ValueError("render needs --rows or --frame")
        return "\n".join(lines) + "\n", EXIT_OK

    def run(self, args):
        handlers = {
            'pairs': self.run_pairs,
            'decompose': self.run_decompose,
            'hw': self.run_hw,
            'verify': self.run_verify,
            'render': self.run_render,
        }
        return handlers[args.command](args)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='fock_duality',
        description="Dual pairs in fermionic Fock space: pairing rules and exact checks.")
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="log progress to stderr (-v info, -vv debug)")
    parser.add_argument('--config', help="alternative JSON configuration file")
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p, need_dims=True):
        p.add_argument('--d', type=_positive_int, required=need_dims, help="orbital dimension")
        p.add_argument('--k', type=_positive_int, required=need_dims, help="number of kinds")
        p.add_argument('--format', choices=('table', 'json'), help="output format")
        p.add_argument('--out', help="write the output to FILE instead of stdout")

    p = sub.add_parser('pairs', help="predicted pairing table")
    common(p)
    p.add_argument('--pair', choices=PAIR_TYPES, default='o-o')
    p.add_argument('--no-diagrams', action='store_true', help="omit ASCII diagrams")

    p = sub.add_parser('decompose', help="brute-force decomposition of the Fock space")
    common(p)
    p.add_argument('--pair', choices=PAIR_TYPES, default='o-o')
    p.add_argument('--max-dk', type=_positive_int, help="override the d*k guard")

    p = sub.add_parser('hw', help="highest-weight state of an O(d) diagram (o-o pair)")
    common(p)
    p.add_argument('--lambda', dest='lam', type=_int_rows, required=True,
                   help="row lengths, e.g. 2,1")
    p.add_argument('--max-dk', type=_positive_int, help="override the d*k guard")

    p = sub.add_parser('verify', help="run verification suites")
    common(p, need_dims=False)
    p.add_argument('--suite', choices=('all',) + SUITE_ORDER, default='all')
    p.add_argument('--max-dk', type=_positive_int, help="largest d*k visited")

    p = sub.add_parser('render', help="draw a diagram or the o-o frame picture")
    common(p, need_dims=False)
    p.add_argument('--rows', type=_rows, help="row lengths, e.g. 5/2,3/2,-1/2")
    p.add_argument('--frame', type=_int_rows, help="lambda filling the frame, with --d/--k")
    return parser


def _configure_logging(verbose, config):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, str(config.get('log_level')).upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    """
    Entry point of the fock_duality command.

    Args:
        argv (list): arguments without the program name (default sys.argv[1:])

    Returns:
        int: exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    config = AppConfig(args.config)
    _configure_logging(args.verbose, config)
    app = FockDualityApp(config)
    try:
        text, code = app.run(args)
    except DimensionGuardError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except ConsistencyError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ValueError, FockDualityError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.out:
        try:
            with open(args.out, 'w', encoding='utf-8') as f:
                f.write(text)
        except OSError as e:
            print(f"Error: could not write {args.out}: {e}", file=sys.stderr)
            return EXIT_USAGE
        logger.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
