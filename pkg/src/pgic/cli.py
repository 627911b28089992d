"""Command-line front end.

Usage::

    python -m pgic <command> [--input FILE] [--output FILE] [--format json|csv|text] ...

Commands: rates, classify, sumcap, region, separable, bounds, search,
sweep, asympt.  Exit status is 0 on success, 2 for an invalid channel
file or arguments, 3 when the channel has the wrong class for the
command (the classification is printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .bounds import DEFAULT_GRID, DEFAULT_MARGIN, DEFAULT_TOL, inseparability_certificate, optimize_inner_bound
from .capacity import CAP_TOL, PSD_TOL, strong_region_polygon, sum_capacities, tin_sum_rate
from .channel import EPS_TIE, ChannelClass, ChannelClassError, ChannelInstance, Subchannel, classify, rate_quantities
from .explore import DEFAULT_SCALES, SWEEP_COLUMNS, SearchConfig, SweepSpec, asymptotic_ratio, search_inseparable, sweep_plane
from .separability import analyze
from .specfile import SpecError, channel_to_dict, fmt_number, load_channel, round_floats

__all__ = ['main', 'run_command', 'REPORT_SCHEMA', 'CSV_HEADERS']

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CLASS = 3

UNITS = 'bits/channel use'

CSV_HEADERS = {
    'rates': ('m', 'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j'),
    'classify': ('m', 'strong', 'mixedA', 'mixedB', 'weak', 'noisy', 'aggregate_class'),
    'sumcap': ('class', 'joint', 'independent', 'gap', 'tin'),
    'region': ('r1', 'r2'),
    'separable': ('m', 'in_S1', 'in_S2', 'in_S3', 'in_M1', 'in_M2', 'in_N',
                  'remark2_unknown', 'verdict', 'family', 'gap'),
    'bounds': ('outer_independent', 'inner_joint', 'gap', 'mode', 'beta1', 'beta2',
               'r1c', 'r2c', 'r12c', 'r1p', 'r2p', 'inseparable_certified'),
    'search': ('seed', 'budget', 'M', 'best_index', 'inner', 'outer', 'gap', 'certified'),
    'sweep': SWEEP_COLUMNS,
    'asympt': ('scale', 'joint', 'independent', 'ratio'),
}

#: JSON schema shared by every report (command-specific keys are extra).
REPORT_SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'type': 'object',
    'required': ['schema', 'version', 'command', 'units', 'tolerances'],
    'properties': {
        'schema': {'const': 1},
        'version': {'type': 'string'},
        'command': {'enum': sorted(CSV_HEADERS)},
        'units': {'const': UNITS},
        'tolerances': {
            'type': 'object',
            'required': ['tie_relative', 'capacity_abs', 'psd_abs'],
            'additionalProperties': {'type': 'number'},
        },
        'channel': {
            'type': 'object',
            'required': ['subchannels'],
            'properties': {'subchannels': {
                'type': 'array', 'minItems': 1,
                'items': {'type': 'object',
                          'required': ['h11', 'h12', 'h21', 'h22', 'p1', 'p2'],
                          'additionalProperties': {'type': 'number'}}}},
        },
        'class': {
            'type': 'object',
            'required': ['aggregate', 'valid_aggregates', 'per_subchannel'],
        },
    },
}


class UsageError(Exception):
    pass


def _tolerances() -> dict:
    return {'tie_relative': EPS_TIE, 'capacity_abs': CAP_TOL, 'psd_abs': PSD_TOL}


def _class_dict(cls: ChannelClass) -> dict:
    return {'aggregate': cls.aggregate, 'valid_aggregates': list(cls.valid_aggregates),
            'per_subchannel': [f.names() for f in cls.per_subchannel]}


def _envelope(command: str, ch: Optional[ChannelInstance]) -> dict:
    doc = {'schema': 1, 'version': __version__, 'command': command, 'units': UNITS,
           'tolerances': _tolerances()}
    if ch is not None:
        doc['channel'] = channel_to_dict(ch)
        doc['class'] = _class_dict(classify(ch))
    return doc


class Output:
    """Collected result of one command in all three formats."""

    def __init__(self, doc: dict, rows: list, text: str, exact: tuple = ()):
        self.doc = doc
        self.rows = rows
        self.text = text
        self.exact = exact  # top-level keys kept at full precision

    def render(self, command: str, fmt: str) -> str:
        if fmt == 'json':
            doc = {k: v if k in self.exact else round_floats(v) for k, v in self.doc.items()}
            return json.dumps(doc, indent=2, allow_nan=False) + '\n'
        if fmt == 'csv':
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator='\n')
            w.writerow(CSV_HEADERS[command])
            for row in self.rows:
                w.writerow([_csv_cell(v) for v in row])
            return buf.getvalue()
        return self.text.rstrip('\n') + '\n'


def _csv_cell(v):
    if isinstance(v, bool):
        return 'true' if v else 'false'
    if isinstance(v, float):
        return fmt_number(v)
    if v is None:
        return ''
    if isinstance(v, (list, tuple)):
        return ';'.join(_csv_cell(x) for x in v)
    return v


def _f(x: float, digits: int = 6) -> str:
    return f'{x:.{digits}f}'


# -- commands -----------------------------------------------------------------

def cmd_rates(ch, args) -> Output:
    q = rate_quantities(ch)
    rows = q.rows()
    doc = _envelope('rates', ch)
    doc['rate_quantities'] = rows
    lines = ['m ' + ' '.join(f'{k:>10}' for k in q.FIELDS)]
    for m, r in enumerate(rows):
        lines.append(f'{m} ' + ' '.join(f'{r[k]:10.6f}' for k in q.FIELDS))
    return Output(doc, [[m] + [r[k] for k in q.FIELDS] for m, r in enumerate(rows)],
                  '\n'.join(lines))


def cmd_classify(ch, args) -> Output:
    cls = classify(ch)
    doc = _envelope('classify', ch)
    rows = [[m, f.strong, f.mixedA, f.mixedB, f.weak, f.noisy, cls.aggregate]
            for m, f in enumerate(cls.per_subchannel)]
    lines = [f'aggregate: {cls.aggregate}']
    if len(cls.valid_aggregates) > 1:
        lines.append('also valid: ' + ', '.join(cls.valid_aggregates[1:]))
    for m, f in enumerate(cls.per_subchannel):
        lines.append(f'  sub-channel {m}: {", ".join(f.names())}')
    return Output(doc, rows, '\n'.join(lines))


def cmd_sumcap(ch, args) -> Output:
    name, joint, indep = sum_capacities(ch)
    tin = tin_sum_rate(ch)
    doc = _envelope('sumcap', ch)
    doc.update({'joint': joint, 'independent': indep, 'gap': joint - indep, 'tin': tin,
                'formula_class': name})
    text = (f'class {name}\njoint sum capacity       {_f(joint)}\n'
            f'independent sum capacity {_f(indep)}\ngap                      {_f(joint - indep)}\n'
            f'TIN sum rate             {_f(tin)}')
    return Output(doc, [[name, joint, indep, joint - indep, tin]], text)


def cmd_region(ch, args) -> Output:
    poly = strong_region_polygon(ch)
    doc = _envelope('region', ch)
    doc['vertices'] = [list(v) for v in poly.vertices]
    text = 'vertices (R1, R2):\n' + '\n'.join(f'  ({_f(x)}, {_f(y)})' for x, y in poly.vertices)
    return Output(doc, [list(v) for v in poly.vertices], text)


def _verdict_text(v) -> str:
    head = v.verdict
    if v.family:
        head += f' (family {v.family})'
    if v.gap is not None:
        head += f', gap {_f(v.gap)}'
    return head


def cmd_separable(ch, args) -> Output:
    v = analyze(ch)
    doc = _envelope('separable', ch)
    doc['separability'] = {'verdict': v.verdict, 'family': v.family, 'gap': v.gap,
                           'formula_class': v.channel_class, 'notes': list(v.notes),
                           'memberships': [m.as_dict() for m in v.memberships]}
    rows = [[m, s.in_S1, s.in_S2, s.in_S3, s.in_M1, s.in_M2, s.in_N, s.in_remark2_unknown,
             v.verdict, v.family, v.gap] for m, s in enumerate(v.memberships)]
    text = _verdict_text(v)
    if v.notes:
        text += '\n' + '\n'.join(f'note: {n}' for n in v.notes)
    return Output(doc, rows, text)


def cmd_bounds(ch, args) -> Output:
    rep = optimize_inner_bound(ch, args.grid, args.tol, per_subchannel=args.per_subchannel_beta,
                               margin=args.margin)
    c = rep.components
    doc = _envelope('bounds', ch)
    doc['bounds'] = {'outer_independent': rep.outer_independent, 'inner_joint': rep.inner_joint,
                     'gap': rep.gap, 'best_split': rep.best_split.as_dict(),
                     'components': c.as_dict(), 'inseparable_certified': rep.inseparable_certified,
                     'margin': rep.margin, 'grid': args.grid, 'tol': args.tol}
    if rep.inseparable_certified:
        cert = inseparability_certificate(ch, args.margin, args.grid, args.tol,
                                          per_subchannel=args.per_subchannel_beta)
        doc['certificate'] = cert.as_dict() if cert else None
    sp = rep.best_split
    row = [rep.outer_independent, rep.inner_joint, rep.gap, sp.mode, sp.beta1, sp.beta2,
           c.r1c, c.r2c, c.r12c, c.r1p, c.r2p, rep.inseparable_certified]
    text = (f'outer bound (independent coding) {_f(rep.outer_independent)}\n'
            f'inner bound (joint coding)       {_f(rep.inner_joint)}\n'
            f'gap                              {_f(rep.gap)}\n'
            f'best split ({sp.mode}) beta1={sp.beta1} beta2={sp.beta2}\n'
            f'inseparable certified: {"yes" if rep.inseparable_certified else "no"}')
    return Output(doc, [row], text, exact=('certificate',))


def cmd_search(ch, args) -> Output:
    cfg = SearchConfig(grid=args.grid, tol=args.tol, margin=args.margin)
    res = search_inseparable(args.seed, args.budget, args.M, cfg)
    b = res.best
    doc = _envelope('search', None)
    doc['search'] = {'seed': res.seed, 'budget': res.budget, 'M': res.M,
                     'evaluated': res.evaluated, 'config': cfg.as_dict(),
                     'best': {'index': b.index, 'channel': channel_to_dict(b.channel),
                              'split': b.split.as_dict(), 'inner': b.inner, 'outer': b.outer,
                              'gap': b.gap}}
    doc['certificate'] = res.certificate.as_dict() if res.certificate else None
    text = (f'evaluated {res.evaluated} weak channels (seed {res.seed}, M={res.M})\n'
            f'best gap {_f(b.gap)} at draw {b.index} (inner {_f(b.inner)}, outer {_f(b.outer)})\n'
            + ('certificate emitted' if res.certificate else 'no certificate'))
    row = [res.seed, res.budget, res.M, b.index, b.inner, b.outer, b.gap,
           res.certificate is not None]
    # certificates must re-verify from the file, so they are not rounded
    return Output(doc, [row], text, exact=('certificate',))


def _range(text: str, name: str):
    try:
        parts = tuple(float(v) for v in text.split(':'))
    except ValueError:
        raise UsageError(f'--{name} must be start:stop:step') from None
    if len(parts) != 3:
        raise UsageError(f'--{name} must be start:stop:step')
    return parts


def cmd_sweep(ch, args) -> Output:
    template = ch[0] if ch is not None else Subchannel(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    try:
        spec = SweepSpec(template, _range(args.x_range, 'x-range'),
                         _range(args.y_range, 'y-range'), args.M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = sweep_plane(spec)
    doc = _envelope('sweep', None)
    doc['template'] = template.as_dict()
    doc['rows'] = [dict(zip(SWEEP_COLUMNS, r.csv_values()), tie=r.tie, verdict=r.verdict)
                   for r in rows]
    counts = {}
    for r in rows:
        key = r.family or r.verdict
        counts[key] = counts.get(key, 0) + 1
    text = f'{len(rows)} grid points\n' + '\n'.join(f'  {k}: {n}' for k, n in sorted(counts.items()))
    return Output(doc, [r.csv_values() for r in rows], text)


def cmd_asympt(ch, args) -> Output:
    series = asymptotic_ratio(ch, args.scales)
    doc = _envelope('asympt', ch)
    doc['series'] = [{'scale': p.scale, 'joint': p.joint, 'independent': p.independent,
                      'ratio': p.ratio} for p in series.points]
    lines = [f'{"scale":>10} {"joint":>12} {"independent":>12} {"ratio":>10}']
    lines += [f'{p.scale:10.3g} {p.joint:12.6g} {p.independent:12.6g} {p.ratio:10.6f}'
              for p in series.points]
    return Output(doc, [[p.scale, p.joint, p.independent, p.ratio] for p in series.points],
                  '\n'.join(lines))


COMMANDS = {
    'rates': cmd_rates,
    'classify': cmd_classify,
    'sumcap': cmd_sumcap,
    'region': cmd_region,
    'separable': cmd_separable,
    'bounds': cmd_bounds,
    'search': cmd_search,
    'sweep': cmd_sweep,
    'asympt': cmd_asympt,
}
NEEDS_INPUT = {'rates', 'classify', 'sumcap', 'region', 'separable', 'bounds', 'asympt'}


def _scales(text: str):
    try:
        return tuple(float(v) for v in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError('expected a comma-separated list of numbers') from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog='pgic', description=__doc__.split('\n\n')[0])
    p.add_argument('command', choices=list(COMMANDS))
    p.add_argument('--input', type=Path, help='channel file (JSON)')
    p.add_argument('--output', type=Path, help='write here instead of stdout')
    p.add_argument('--format', choices=('json', 'csv', 'text'), default='text')
    p.add_argument('--grid', type=float, default=DEFAULT_GRID)
    p.add_argument('--tol', type=float, default=DEFAULT_TOL)
    p.add_argument('--budget', type=int, default=1000)
    p.add_argument('--seed', type=int, default=1)
    p.add_argument('--scales', type=_scales, default=DEFAULT_SCALES)
    p.add_argument('--margin', type=float, default=DEFAULT_MARGIN)
    p.add_argument('--per-subchannel-beta', action='store_true')
    p.add_argument('--M', type=int, default=None,
                   help='sub-channels per draw (search, default 2) or per grid point (sweep, default 1)')
    p.add_argument('--x-range', default='0.1:3:0.1', help='|h12|/|h11| axis, start:stop:step')
    p.add_argument('--y-range', default='0.1:3:0.1', help='|h21|/|h22| axis, start:stop:step')
    return p


def run_command(argv: Sequence[str], stdout=None, stderr=None) -> int:
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.M is None:
        args.M = 1 if args.command == 'sweep' else 2
    try:
        ch = None
        if args.input is not None:
            ch = load_channel(args.input)
        elif args.command in NEEDS_INPUT:
            raise UsageError(f'{args.command} needs --input')
        if not (0.0 < args.grid <= 0.5):
            raise UsageError('--grid must lie in (0, 0.5]')
        if not args.tol > 0 or not args.margin > 0:
            raise UsageError('--tol and --margin must be > 0')
        if args.budget < 1:
            raise UsageError('--budget must be >= 1')
        if args.command == 'search' and args.M < 2:
            raise UsageError('--M must be >= 2 for search')
        out = COMMANDS[args.command](ch, args)
    except SpecError as exc:
        print(f'error: {args.input}: {exc}', file=stderr)
        return EXIT_INVALID
    except UsageError as exc:
        print(f'error: {exc}', file=stderr)
        return EXIT_INVALID
    except ChannelClassError as exc:
        cls = exc.channel_class
        print(f'error: {args.command}: {exc}', file=stderr)
        print(f'classification: {cls.aggregate} (per sub-channel: '
              + '; '.join(','.join(f.names()) for f in cls.per_subchannel) + ')', file=stderr)
        return EXIT_CLASS
    except ValueError as exc:
        print(f'error: {exc}', file=stderr)
        return EXIT_INVALID
    text = out.render(args.command, args.format)
    if args.output is not None:
        args.output.write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == '__main__':
    sys.exit(main())
