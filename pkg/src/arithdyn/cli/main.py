"""``arithdyn`` command-line entry point: one subcommand per experiment."""

import argparse
import json
import sys

from ..degrees import (degree_sequence, estimate_delta1, lemma_constants,
                       topological_degree)
from ..dynamics import (ell_sequence, estimate_arith_degree, forward_orbit, full_orbit,
                        invariant_curve_search, periodic_point_survey, return_set)
from ..dynamics.orbits import detect_periodicity
from ..errors import ArithDynError, InvalidParameterError, ParseError
from ..algebra.poly import MultiPoly
from ..heights import AffinePoint, parse_point
from ..zoo import zoo_get, zoo_listing
from .config import FORMATS, load_config
from .mapdoc import load_map_document
from .report import Report, error_document

EXIT_OK, EXIT_USAGE, EXIT_ERROR, EXIT_RESOURCE = 0, 2, 3, 4


def parse_params(items):
    """``["a=1,b=0", "matrix=[[1,1],[1,0]]"]`` -> dict (JSON values when they parse)."""
    out = {}
    for item in items or []:
        depth, start, parts = 0, 0, []
        for i, ch in enumerate(item):
            depth += ch in "[{("
            depth -= ch in "]})"
            if ch == "," and depth == 0:
                parts.append(item[start:i])
                start = i + 1
        parts.append(item[start:])
        for part in filter(None, (p.strip() for p in parts)):
            if "=" not in part:
                raise InvalidParameterError(f"--param expects key=value, got {part!r}")
            key, value = (s.strip() for s in part.split("=", 1))
            if value[:1] in "[{":
                try:
                    value = json.loads(value)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"--param {key}: bad JSON", 1, exc.colno) from None
            out[key] = value
    return out


def resolve_map(args):
    if bool(args.zoo) == bool(args.map):
        raise InvalidParameterError("give exactly one of --zoo NAME or --map FILE")
    if args.zoo:
        return zoo_get(args.zoo, **parse_params(args.param))
    if args.param:
        raise InvalidParameterError("--param only applies to --zoo maps")
    return load_map_document(args.map)[1]


def _point(args):
    if not args.point:
        raise InvalidParameterError("--point is required")
    return parse_point(args.point)


def _h(h):
    return h.max_coordinate, h.log


# -- commands ------------------------------------------------------------------

def cmd_zoo(args, cfg):
    rows = [(name, json.dumps({k: v["default"] for k, v in params.items()}, sort_keys=True),
             desc) for name, desc, params in zoo_listing()]
    return Report("zoo", ["name", "params", "description"], rows)


def cmd_degseq(args, cfg):
    f = resolve_map(args)
    seq = degree_sequence(f, cfg.n_max, cfg.term_count_cap)
    return Report("degseq", ["n", "degree"], seq.entries,
                  {"map": seq.map_id, "truncated": seq.truncated, "reason": seq.reason})


def cmd_dyndeg(args, cfg):
    f = resolve_map(args)
    seq = degree_sequence(f, max(cfg.n_max, 2), cfg.term_count_cap)
    est = estimate_delta1(seq)
    ratios = est.ratios + [None]
    rows = [(n, d, r, q) for (n, d), r, q in zip(seq.entries, est.roots, ratios)]
    return Report("dyndeg", ["n", "degree", "root", "ratio"], rows,
                  {"map": seq.map_id, "stable": est.stable,
                   "delta1_exact": est.delta1_exact, "truncated": seq.truncated})


def cmd_topdeg(args, cfg):
    f = resolve_map(args)
    est = topological_degree(f, method=args.method, prime_count=cfg.prime_count,
                             samples_per_prime=cfg.samples_per_prime, seed=cfg.seed)
    rows = [(p, list(t), c) for p, t, c in est.samples]
    return Report("topdeg", ["prime", "target", "count"], rows,
                  {"value": est.value, "method": est.method, "heuristic": est.heuristic,
                   "discarded": est.discarded, "seed": cfg.seed})


def _orbit(args, cfg, f, P):
    if getattr(args, "full", False):
        return full_orbit(f, None, P, cfg.n_max, cfg.coordinate_digit_cap)
    return forward_orbit(f, P, cfg.n_max, cfg.coordinate_digit_cap)


def cmd_orbit(args, cfg):
    f = resolve_map(args)
    rec = _orbit(args, cfg, f, _point(args))
    rows = [(i, p, *_h(h)) for i, p, h in zip(rec.indices, rec.points, rec.heights)]
    return Report("orbit", ["n", "point", "max_coordinate", "log_height"], rows,
                  {"map": rec.map_id, "indeterminacy_index": rec.indeterminacy_index,
                   "truncated": rec.truncated,
                   "periodicity": detect_periodicity(rec).as_dict()})


def cmd_arithdeg(args, cfg):
    f = resolve_map(args)
    rec = forward_orbit(f, _point(args), cfg.n_max, cfg.coordinate_digit_cap)
    est = estimate_arith_degree(rec, cfg.tail_window)
    rows = [(n, *_h(h), est.roots.get(n), est.ratios.get(n))
            for n, h in enumerate(rec.forward_heights)]
    meta = {"map": rec.map_id, "tail_window": est.tail_window,
            "lower": est.lower_report.as_dict(), "upper": est.upper_report.as_dict(),
            "alpha_exact": est.alpha_exact, "truncated": rec.truncated}
    if args.lemma:
        consts = lemma_constants(*args.lemma)
        ell = ell_sequence(rec.forward_heights, consts)
        meta["ell"] = ell.values
        meta["ell_flags"] = ell.flags
        meta["ell_inf_proxy"] = ell.ell_inf_proxy
    return Report("arithdeg", ["n", "max_coordinate", "log_height", "root", "ratio"],
                  rows, meta)


def cmd_periodic(args, cfg):
    f = resolve_map(args)
    rep = periodic_point_survey(f, height_bound=cfg.height_bound,
                                period_bound=cfg.period_bound,
                                max_points=args.max_points,
                                prune_escapes=not args.no_prune, workers=args.workers)
    h = rep.max_periodic_height
    return Report("periodic", ["point", "period"], rep.periodic,
                  {"counts": rep.counts, "enumerated": rep.enumerated,
                   "height_bound": rep.height_bound, "period_bound": rep.period_bound,
                   "max_coordinate": rep.max_coordinate,
                   "max_periodic_height": None if h is None else list(_h(h))})


def _ambient_variables(f, P):
    if isinstance(P, AffinePoint) and f.forward is not None:
        return f.forward.variables
    return f.projective.variables


def cmd_dml(args, cfg):
    f = resolve_map(args)
    P = _point(args)
    if not args.poly:
        raise InvalidParameterError("dml needs at least one --poly defining Y")
    V = _ambient_variables(f, P)
    Y = [MultiPoly.parse(s, V) for s in args.poly]
    rs = return_set(f, P, Y, cfg.n_max, digit_cap=cfg.coordinate_digit_cap)
    meta = {"n_max": rs.n_max, "scanned_to": rs.scanned_to, "partial": rs.partial,
            "decomposed": rs.decomposed, "progressions": [list(p) for p in rs.progressions],
            "residual": rs.residual}
    return Report("dml", ["n"], [(n,) for n in rs.indices], meta)


def cmd_density(args, cfg):
    f = resolve_map(args)
    P = _point(args)
    rec = forward_orbit(f, P, cfg.n_max, cfg.coordinate_digit_cap)
    w = invariant_curve_search(rec.forward_points, args.degree,
                               _ambient_variables(f, rec.forward_points[0]))
    rows = [(w.degree, w.status, None if w.curve is None else str(w.curve))]
    return Report("density", ["degree", "status", "curve"], rows,
                  {"points": len(rec.forward_points), "certificate": w.certificate})


def cmd_lemma(args, cfg):
    c = lemma_constants(args.zeta, args.d1, args.d2, args.C)
    rows = [("alpha", c.alpha), ("beta", c.beta)]
    rows += [(f"residual:{k}", v) for k, v in sorted(c.residuals().items())]
    return Report("lemma", ["quantity", "value"], rows,
                  {"zeta": c.zeta, "d1": c.d1, "d2": c.d2, "C": c.C})


# -- parser ----------------------------------------------------------------------

def _add_run_flags(p, with_map=True):
    if with_map:
        p.add_argument("--zoo", help="zoo family name")
        p.add_argument("--param", action="append", help="key=value[,key=value] for --zoo")
        p.add_argument("--map", help="YAML map document")
    p.add_argument("--point", help="'(r1, r2)' affine or '[a:b:c]' projective")
    p.add_argument("--nmax", dest="n_max", type=int)
    p.add_argument("--height-bound", dest="height_bound", help="number or log(N)")
    p.add_argument("--period-bound", dest="period_bound", type=int)
    p.add_argument("--tail-window", dest="tail_window", type=int)
    p.add_argument("--prime-count", dest="prime_count", type=int)
    p.add_argument("--samples-per-prime", dest="samples_per_prime", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--term-count-cap", dest="term_count_cap", type=int)
    p.add_argument("--coordinate-digit-cap", dest="coordinate_digit_cap", type=int)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--config", help="YAML run config (default: $ARITHDYN_CONFIG)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="arithdyn", description="Exact arithmetic-dynamics experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "zoo": (cmd_zoo, "list built-in map families"),
        "degseq": (cmd_degseq, "degrees of saturated iterates"),
        "dyndeg": (cmd_dyndeg, "first dynamical degree estimate"),
        "topdeg": (cmd_topdeg, "topological degree"),
        "orbit": (cmd_orbit, "orbit with exact heights"),
        "arithdeg": (cmd_arithdeg, "arithmetic degree estimators"),
        "periodic": (cmd_periodic, "periodic points of bounded height"),
        "dml": (cmd_dml, "return set of an orbit into a subvariety"),
        "density": (cmd_density, "search for a low-degree curve through an orbit"),
        "lemma": (cmd_lemma, "growth constants alpha, beta"),
    }
    for name, (func, help_) in specs.items():
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        _add_run_flags(p, with_map=name not in ("zoo", "lemma"))
        if name == "topdeg":
            p.add_argument("--method", default="auto",
                           choices=["auto", "exact-monomial", "birational-unit",
                                    "fiber-sampling"])
        if name == "orbit":
            p.add_argument("--full", action="store_true", help="indices -nmax..nmax")
        if name == "arithdeg":
            p.add_argument("--lemma", nargs=4, type=float, metavar=("ZETA", "D1", "D2", "C"),
                           help="also report the alpha-weighted sequence")
        if name == "periodic":
            p.add_argument("--max-points", dest="max_points", type=int, default=5 * 10 ** 6)
            p.add_argument("--no-prune", action="store_true")
            p.add_argument("--workers", type=int, default=1)
        if name == "dml":
            p.add_argument("--poly", action="append", help="polynomial defining Y")
        if name == "density":
            p.add_argument("--degree", type=int, default=2)
        if name == "lemma":
            for arg in ("zeta", "d1", "d2", "C"):
                p.add_argument(arg, type=float)
    return parser


_CONFIG_KEYS = ("n_max", "height_bound", "period_bound", "tail_window", "prime_count",
                "samples_per_prime", "seed", "term_count_cap", "coordinate_digit_cap",
                "format")


def main(argv=None, stdout=None, stderr=None):
    # orbit reports print integers far beyond the default 4300-digit limit
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = load_config(args.config,
                          {k: getattr(args, k, None) for k in _CONFIG_KEYS})
        text = args.func(args, cfg).render(cfg.format)
    except (ArithDynError, ValueError, ArithmeticError) as exc:
        stderr.write(error_document(exc))
        if getattr(exc, "cap_name", None):
            return EXIT_RESOURCE
        return EXIT_USAGE if isinstance(exc, (ParseError, InvalidParameterError)) \
            else EXIT_ERROR
    stdout.write(text)
    return EXIT_OK

