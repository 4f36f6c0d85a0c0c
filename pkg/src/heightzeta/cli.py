"""Command-line front end.

Subcommands wire the library together for file-based workflows: exact
heights and local factors of a point, count series and enumeration for a
variety spec, lattice counts for the circle problem, height zeta partial
sums, asymptotic fits, and the local/global Igusa-type products.

Exit codes: 0 on success, 2 on input errors (bad flags, malformed JSON,
invalid arguments), 3 on resource limits and evaluation at poles or
divergent parameters.  Data is written to stdout (or ``--output``);
progress goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from importlib import resources

from . import igusa as igusa_mod
from . import zeta as zeta_mod
from .counting import (
    CountSeries,
    circle_count,
    count_projective,
    count_series,
    enumerate_points,
)
from .errors import (
    DivergentIntegralError,
    InsufficientDataError,
    LocalZetaPoleError,
    PoleAtOne,
    ResourceLimitError,
)
from .heights import (
    MetricKind,
    height,
    height_to_json,
    local_height_factor,
    normalize,
    relevant_places,
)
from .varieties import Poly, VarietySpec, projective_space

_RESOURCE_ERRORS = (
    ResourceLimitError,
    LocalZetaPoleError,
    PoleAtOne,
    DivergentIntegralError,
)


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}")


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValueError(f"expected a comma-separated number list, got {text!r}")


def _load_json(path: str):
    if path.startswith("builtin:"):
        name = path.split(":", 1)[1].replace("-", "_") + ".json"
        ref = resources.files("heightzeta").joinpath("data", name)
        try:
            text = ref.read_text()
        except FileNotFoundError:
            raise ValueError(f"no builtin datum named {path.split(':', 1)[1]!r}")
        source = path
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ValueError(f"cannot read {path}: {exc}")
        source = path
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"malformed JSON in {source} at line {exc.lineno} column {exc.colno}: {exc.msg}"
        )


def _load_spec(path: str) -> VarietySpec:
    return VarietySpec.from_json(_load_json(path))


def _load_datum(path: str) -> igusa_mod.NCDatum:
    return igusa_mod.NCDatum.from_json(_load_json(path))


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads_default() -> int:
    raw = os.environ.get("HEIGHTS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _spec_from_args(args) -> VarietySpec:
    if getattr(args, "pn", None) is not None:
        return projective_space(args.pn)
    if getattr(args, "spec", None):
        return _load_spec(args.spec)
    raise ValueError("provide either --pn N or --spec FILE")


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_height(args) -> int:
    coords = [Fraction(part) for part in args.point.split(",")]
    x = normalize(coords)
    metric = MetricKind.MAX if args.metric == "max" else MetricKind.FUBINI_STUDY
    hv = height(x, metric)
    out = height_to_json(hv)
    out["point"] = list(x.coords)
    out["metric"] = metric.value
    i = args.section_index
    if i is None:
        i = next(j for j, v in enumerate(x.coords) if v != 0)
    if x.coords[i] != 0:
        factors = {}
        for place in relevant_places(x, i):
            key = "infinity" if place.is_archimedean else str(place.p)
            factors[key] = str(local_height_factor(x, i, place))
        out["section_index"] = i
        out["local_factors"] = factors
    _emit(json.dumps(out) + "\n", args.output)
    return 0


def _cmd_count(args) -> int:
    bounds = _parse_int_list(args.B)
    spec = _spec_from_args(args)
    if spec.is_full_space:
        series = CountSeries(tuple((b, count_projective(spec.n, b)) for b in bounds))
    else:
        series = count_series(spec, bounds, threads=args.threads)
    if args.format == "json":
        _emit(json.dumps({"series": [[b, n] for b, n in series]}) + "\n", args.output)
    else:
        _emit(series.to_csv(), args.output)
    return 0


def _cmd_enumerate(args) -> int:
    spec = _spec_from_args(args)
    lines = []
    emitted = 0
    for pt in enumerate_points(spec, args.B, threads=args.threads):
        lines.append(json.dumps(list(pt.coords)))
        emitted += 1
        if args.progress and emitted % 100000 == 0:
            print(f"... {emitted} points", file=sys.stderr)
    _emit("\n".join(lines) + ("\n" if lines else ""), args.output)
    return 0


def _cmd_circle(args) -> int:
    bound = Fraction(args.B)
    count = circle_count(args.n, bound, norm=args.norm)
    _emit(f"{count}\n", args.output)
    return 0


def _cmd_zeta(args) -> int:
    spec = _spec_from_args(args)
    if (args.s is None) == (args.s_grid is None):
        raise ValueError("provide exactly one of --s or --s-grid")
    lines = []
    if args.s is not None:
        bounds = _parse_int_list(args.B)
        lines.append("B,re,im")
        for b in bounds:
            z = zeta_mod.zeta_partial_sum(spec, args.s, b, threads=args.threads)
            lines.append(f"{b},{z.value.real!r},{z.value.imag!r}")
    else:
        bounds = _parse_int_list(args.B)
        if len(bounds) != 1:
            raise ValueError("--s-grid requires a single cutoff --B")
        lines.append("s,re,im")
        for s in _parse_float_list(args.s_grid):
            z = zeta_mod.zeta_partial_sum(spec, s, bounds[0], threads=args.threads)
            lines.append(f"{s!r},{z.value.real!r},{z.value.imag!r}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_fit(args) -> int:
    try:
        with open(args.series) as fh:
            series = CountSeries.from_csv(fh.read())
    except OSError as exc:
        raise ValueError(f"cannot read {args.series}: {exc}")
    fit = zeta_mod.fit_asymptotic(series, _parse_int_list(args.t_candidates))
    _emit(json.dumps(fit.to_json()) + "\n", args.output)
    return 0


def _cmd_igusa_local(args) -> int:
    datum = _load_datum(args.datum)
    s = Fraction(args.s) if "/" in args.s else float(args.s)
    value = igusa_mod.denef_local_zeta(datum, args.q, s)
    out = {"q": args.q, "s": str(args.s)}
    if isinstance(value.value, Fraction):
        out["exact"] = str(value.value)
        out["value_re"] = float(value.value)
        out["value_im"] = 0.0
    else:
        out["value_re"] = value.value.real
        out["value_im"] = value.value.imag
    _emit(json.dumps(out) + "\n", args.output)
    return 0


def _cmd_igusa_global(args) -> int:
    datum = _load_datum(args.datum)
    lc = igusa_mod.leading_constant(datum, args.cutoff, threads=args.threads)
    out = {
        "leading_constant": lc.value,
        "tau": lc.tau,
        "tail_bound": lc.tail_bound,
        "pole_order": datum.pole_order,
        "prime_cutoff": lc.prime_cutoff,
    }
    if args.B is not None:
        out["volume_prediction"] = {
            "B": args.B,
            "value": igusa_mod.volume_prediction(lc.tau, datum.multiplicities, args.B),
        }
    _emit(json.dumps(out) + "\n", args.output)
    return 0


def _cmd_strata(args) -> int:
    if args.datum:
        datum = _load_datum(args.datum)
        table = datum.strata_for(args.p)
    else:
        spec = _spec_from_args(args)
        boundary = {}
        if args.boundary:
            data = _load_json(args.boundary)
            boundary = {
                label: tuple(Poly.from_json(p) for p in sys_)
                for label, sys_ in data.items()
            }
        table = igusa_mod.count_strata_ff(spec, boundary, args.p)
    out = {
        "q": args.p,
        "strata": {",".join(sorted(key)): cnt for key, cnt in sorted(
            table.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))
        )},
    }
    _emit(json.dumps(out) + "\n", args.output)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heightzeta",
        description="Heights, point counts, height zeta functions, and "
        "Igusa-type local zeta products for subschemes of P^n over Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, threads=True, output=True):
        if threads:
            p.add_argument(
                "--threads", type=int, default=_threads_default(),
                help="slab/prime parallelism (default: HEIGHTS_THREADS or 1); "
                "results do not depend on this value",
            )
        if output:
            p.add_argument("--output", help="write to this file instead of stdout")

    p = sub.add_parser("height", help="height and local factors of a point")
    p.add_argument("--point", required=True, help="comma-separated rational coordinates")
    p.add_argument("--metric", choices=["max", "fs"], default="max")
    p.add_argument("--section-index", type=int, default=None)
    add_common(p, threads=False)
    p.set_defaults(handler=_cmd_height)

    p = sub.add_parser("count", help="counting function N_X(B) as CSV")
    p.add_argument("--pn", type=int, help="use the full projective space P^n")
    p.add_argument("--spec", help="variety spec JSON file")
    p.add_argument("--B", required=True, help="comma-separated increasing bounds")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    add_common(p)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("enumerate", help="list all points of height <= B")
    p.add_argument("--pn", type=int)
    p.add_argument("--spec")
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--progress", action="store_true",
                   help="print progress to stderr during long enumerations")
    add_common(p)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("circle", help="lattice points with norm at most B")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--B", required=True, help="radius (integer, decimal, or a/b)")
    p.add_argument("--norm", choices=["euclidean", "sup"], default="euclidean")
    add_common(p, threads=False)
    p.set_defaults(handler=_cmd_circle)

    p = sub.add_parser("zeta", help="height zeta partial sums as CSV")
    p.add_argument("--pn", type=int)
    p.add_argument("--spec")
    p.add_argument("--s", type=float, help="fixed exponent; scan over --B list")
    p.add_argument("--s-grid", help="comma-separated exponents; fixed single --B")
    p.add_argument("--B", required=True)
    add_common(p)
    p.set_defaults(handler=_cmd_zeta)

    p = sub.add_parser("fit", help="fit c*B^a*(log B)^(t-1) to a count series")
    p.add_argument("--series", required=True, help="CSV file with B,N header")
    p.add_argument("--t-candidates", default="1,2,3,4")
    add_common(p, threads=False)
    p.set_defaults(handler=_cmd_fit)

    p = sub.add_parser("igusa-local", help="local zeta value at one prime")
    p.add_argument("--datum", required=True,
                   help="datum JSON file, or builtin:p1-anticanonical")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", required=True, help="real or rational a/b")
    add_common(p, threads=False)
    p.set_defaults(handler=_cmd_igusa_local)

    p = sub.add_parser("igusa-global", help="leading constant and volume prediction")
    p.add_argument("--datum", required=True,
                   help="datum JSON file, or builtin:p1-anticanonical")
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--B", type=float, help="also report the volume prediction at B")
    add_common(p)
    p.set_defaults(handler=_cmd_igusa_global)

    p = sub.add_parser("strata", help="residue-field stratum counts at a prime")
    p.add_argument("--datum", help="datum JSON with variety and boundary")
    p.add_argument("--spec", help="variety spec JSON (no boundary components)")
    p.add_argument("--pn", type=int)
    p.add_argument("--boundary", help="JSON file mapping labels to polynomial lists")
    p.add_argument("--p", type=int, required=True)
    add_common(p, threads=False)
    p.set_defaults(handler=_cmd_strata)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except _RESOURCE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, InsufficientDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
