"""Command line front end.

    hyperarea validate | sk | lk | wilson | area | verify | example

Exit codes: 0 success, 1 malformed input or usage error, 2 the hyperlink is not
time-like (the report is still written), 3 degenerate geometry (witness on stderr).
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, fixtures
from . import io as docs
from .diagram import DegenerateDiagram, find_crossings, hyperlinking_number
from .geometry import ColoredHyperlink, Hyperlink, validate_timelike
from .observables import area_operator, wilson_terms
from .piercing import DegeneratePiercing, find_piercings

EXIT_OK, EXIT_MALFORMED, EXIT_INVALID, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def example_documents(name: str) -> dict:
    """Role -> object for a bundled example."""
    if name == "two-circles":
        return {"hyperlink": fixtures.two_circles()}
    if name == "hopf-pair":
        h = fixtures.hopf_pair()
        return {"hyperlink": h,
                "matter": ColoredHyperlink(Hyperlink((h[0],)), (("1/2", "1/2"),)),
                "geometric": Hyperlink((h[1],))}
    if name == "one-piercing":
        M, S = fixtures.one_piercing()
        return {"matter": M, "surface": S}
    if name == "cancelling-piercings":
        M, S, A = fixtures.cancelling_piercings()
        return {"matter": M, "surface": S, "surface-annulus": A}
    if name == "two-loop-colored":
        M, S = fixtures.two_loop_colored()
        return {"matter": M, "surface": S}
    raise UsageError(f"unknown example {name!r}; expected one of {', '.join(fixtures.NAMES)}")


# ---------------------------------------------------------------- inputs

class Inputs:
    def __init__(self, args):
        self.args = args
        self.sources = {}
        self._ex = example_documents(args.example) if getattr(args, "example", None) else {}

    def get(self, role, required=True):
        path = getattr(self.args, role.replace("-", "_"), None)
        if path:
            self.sources[role] = path
            obj = docs.load(path)
        elif role in self._ex:
            self.sources[role] = f"example:{self.args.example}"
            obj = self._ex[role]
        else:
            if required:
                raise UsageError(f"missing input --{role} (or --example)")
            return None
        want = {"hyperlink": Hyperlink, "geometric": Hyperlink, "matter": ColoredHyperlink,
                "surface": docs.PlanarSurface}[role]
        if role in ("hyperlink", "geometric") and isinstance(obj, ColoredHyperlink):
            obj = obj.base
        if not isinstance(obj, want):
            raise docs.MalformedDocument(f"--{role}: expected a {want.__name__} document")
        return obj

    def loops(self):
        """Hyperlink to analyse: --hyperlink, else the matter loops."""
        h = self.get("hyperlink", required=False)
        if h is None:
            h = self.get("matter").base
        return h


def _check_timelike(h: Hyperlink):
    rep = validate_timelike(h)
    if not rep.valid:
        raise _Invalid(rep)


class _Invalid(Exception):
    def __init__(self, report):
        self.report = report


def _report_doc(rep):
    return {"valid": rep.valid,
            "violations": [{"kind": v.kind, "loops": list(v.loops), "params": list(v.params),
                            "points": [list(p) for p in v.points], "plane": v.plane}
                           for v in rep.violations]}


# ---------------------------------------------------------------- output

def _manifest(args, inputs, params):
    return {"command": args.command, "inputs": inputs.sources if inputs else {},
            "parameters": params, "version": __version__,
            "timestamp": None if args.deterministic
            else datetime.now(timezone.utc).isoformat(timespec="seconds")}


def _cplx(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _emit(args, text):
    if args.out:
        with open(args.out, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, manifest, result):
    _emit(args, json.dumps({"manifest": manifest, "result": result}, indent=1) + "\n")


def _emit_csv(args, manifest, header, rows, summary=()):
    if args.format == "json":
        return _emit_json(args, manifest, {"columns": header, "rows": rows,
                                           "summary": dict(summary)})
    buf = _io.StringIO()
    buf.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    for k, v in summary:
        buf.write(f"# {k}: {v}\n")
    _emit(args, buf.getvalue())


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    inp = Inputs(args)
    h = inp.loops()
    g = inp.get("geometric", required=False)
    full = Hyperlink(tuple(h) + (tuple(g) if g is not None else ()))
    rep = validate_timelike(full)
    _emit_json(args, _manifest(args, inp, {}), _report_doc(rep))
    return EXIT_OK if rep.valid else EXIT_INVALID


def cmd_sk(args):
    inp = Inputs(args)
    h = inp.loops()
    _check_timelike(h)
    m = _manifest(args, inp, {"crossings": args.crossings})
    if args.crossings:
        rows = []
        for a in range(len(h)):
            for b in range(len(h)):
                if a == b:
                    continue
                for k in (1, 2, 3):
                    for x in find_crossings(h[a], h[b], k):
                        rows.append([a, b, k, x.s, x.t, x.point[0], x.point[1],
                                     x.orientation, x.height, x.time_lag])
        return _emit_csv(args, m, ["a", "b", "plane", "s", "t", "p1", "p2", "orientation",
                                   "height", "time_lag"], rows)
    rows = []
    for a in range(len(h)):
        for b in range(a + 1, len(h)):
            rows.append([a, b, hyperlinking_number(h[a], h[b])])
    _emit_csv(args, m, ["a", "b", "sk"], rows, [("total", sum(r[2] for r in rows))])


def cmd_lk(args):
    inp = Inputs(args)
    h = inp.loops()
    S = inp.get("surface")
    _check_timelike(h)
    rows = []
    for u, l in enumerate(h):
        ps = find_piercings(l, S, loop_index=u)
        rows.append([u, len(ps), sum(p.epsilon for p in ps)])
    _emit_csv(args, _manifest(args, inp, {}), ["loop", "count", "lk"], rows,
              [("total_lk", sum(r[2] for r in rows))])


def _matter_geometric(inp):
    M = inp.get("matter")
    G = inp.get("geometric", required=False) or Hyperlink()
    _check_timelike(Hyperlink(tuple(M.base) + tuple(G)))
    return M, G


def cmd_wilson(args):
    inp = Inputs(args)
    M, G = _matter_geometric(inp)
    terms, sks = wilson_terms(args.q, M, G)
    value = complex(np.prod([p + m for _, p, m in terms]))
    _emit_json(args, _manifest(args, inp, {"q": args.q}),
               {"value": _cplx(value), "sk": list(sks),
                "terms": [{"loop": u, "plus": _cplx(p), "minus": _cplx(m)} for u, p, m in terms]})


def cmd_area(args):
    inp = Inputs(args)
    M, G = _matter_geometric(inp)
    S = None if args.empty_surface else inp.get("surface", required=False)
    r = area_operator(args.q, M, G, S)
    _emit_json(args, _manifest(args, inp, {"q": args.q, "empty_surface": S is None}),
               {"value": _cplx(r.value), "sk": list(r.sk_values),
                "piercing_counts": list(r.piercing_counts),
                "piercing_sums": None if r.piercing_sums is None else list(r.piercing_sums),
                "prefactor": r.prefactor,
                "terms": [{"loop": u, "plus": _cplx(p), "minus": _cplx(m)}
                          for u, p, m in r.per_loop_terms]})


def _kappas(text):
    try:
        ks = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--kappa: expected a comma separated list of numbers, got {text!r}")
    if not ks:
        raise UsageError("--kappa: empty schedule")
    return ks


def cmd_verify(args):
    from .kappa import convergence_study
    inp = Inputs(args)
    t = args.target
    if t == "sk":
        h = inp.loops()
        _check_timelike(h)
        a, b = args.pair
        if max(a, b) >= len(h) or a == b:
            raise UsageError("--pair must name two distinct loops of the hyperlink")
        d = {"a": h[a], "b": h[b]}
    elif t in ("lk", "count"):
        h = inp.loops()
        _check_timelike(h)
        if args.loop >= len(h):
            raise UsageError("--loop out of range")
        d = {"loop": h[args.loop], "S": inp.get("surface")}
    else:
        M, G = _matter_geometric(inp)
        d = {"M": M, "G": G, "q": args.q, "u": args.loop, "side": args.side,
             "radius_factor": args.radius_factor}
        if t == "area":
            d["S"] = inp.get("surface")
    ks = _kappas(args.kappa)
    cfg = {"base_points_per_segment": args.nodes, "refinement_radius": args.refinement_radius,
           "refinement_factor": args.refinement_factor}
    if args.deterministic:
        os.environ["HYPERAREA_WORKERS"] = "1"
    try:
        rows = convergence_study(t, d, ks, **cfg)
    except ValueError as e:
        if isinstance(e, (DegenerateDiagram, DegeneratePiercing)):
            raise
        raise UsageError(str(e))
    params = dict(cfg, target=t, kappa=ks, q=args.q, loop=args.loop, side=args.side,
                  pair=list(args.pair), radius_factor=args.radius_factor)
    out = []
    for r in rows:
        e, f = complex(r.estimate), complex(r.reference)
        out.append([r.kappa, e.real, e.imag, f.real, f.imag, r.abs_error, r.rel_error])
    _emit_csv(args, _manifest(args, inp, params),
              ["kappa", "estimate_re", "estimate_im", "reference_re", "reference_im",
               "abs_error", "rel_error"], out)


def cmd_example(args):
    objs = example_documents(args.name)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for role, obj in objs.items():
            path = os.path.join(args.out, f"{args.name}.{role}.json")
            with open(path, "w") as f:
                f.write(docs.dumps(obj))
            print(path)
    else:
        sys.stdout.write(json.dumps({role: docs.to_doc(o) for role, o in objs.items()},
                                    indent=1) + "\n")


# ---------------------------------------------------------------- parser

def build_parser():
    p = _Parser(prog="hyperarea", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, roles, fmt="csv"):
        for r in roles:
            sp.add_argument(f"--{r}", metavar="PATH")
        sp.add_argument("--example", metavar="NAME", help="use a bundled example for missing inputs")
        sp.add_argument("--out", metavar="PATH", help="output file (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=fmt)
        sp.add_argument("--deterministic", action="store_true",
                        help="single worker and no timestamp, for byte-identical reruns")

    sp = sub.add_parser("validate", help="check the time-like conditions")
    common(sp, ("hyperlink", "matter", "geometric"), "json")
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("sk", help="pairwise hyperlinking numbers")
    common(sp, ("hyperlink", "matter"))
    sp.add_argument("--crossings", action="store_true", help="list crossings instead")
    sp.set_defaults(fn=cmd_sk)

    sp = sub.add_parser("lk", help="piercing counts and lk against a surface")
    common(sp, ("hyperlink", "matter", "surface"))
    sp.set_defaults(fn=cmd_lk)

    sp = sub.add_parser("wilson", help="closed-form Wilson loop observable")
    common(sp, ("matter", "geometric"), "json")
    sp.add_argument("--q", type=float, required=True)
    sp.set_defaults(fn=cmd_wilson)

    sp = sub.add_parser("area", help="closed-form area operator")
    common(sp, ("matter", "geometric", "surface"), "json")
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--empty-surface", action="store_true")
    sp.set_defaults(fn=cmd_area)

    sp = sub.add_parser("verify", help="finite-kappa convergence table")
    common(sp, ("hyperlink", "matter", "geometric", "surface"))
    sp.add_argument("--target", choices=("sk", "lk", "count", "holonomy", "area"), required=True)
    sp.add_argument("--kappa", default="8,16,32")
    sp.add_argument("--nodes", type=int, default=8, help="Gauss-Legendre nodes per panel")
    sp.add_argument("--refinement-radius", type=float, default=6.0)
    sp.add_argument("--refinement-factor", type=int, default=4)
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--loop", type=int, default=0)
    sp.add_argument("--side", type=int, choices=(1, -1), default=1)
    sp.add_argument("--pair", type=int, nargs=2, default=(0, 1))
    sp.add_argument("--radius-factor", type=float, default=1.0)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("example", help="write bundled example documents")
    sp.add_argument("name")
    sp.add_argument("--out", metavar="DIR")
    sp.set_defaults(fn=cmd_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_MALFORMED
    try:
        rc = args.fn(args)
    except docs.MalformedDocument as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except _Invalid as e:
        _emit_json(args, _manifest(args, None, {}), _report_doc(e.report))
        print("error: the hyperlink is not time-like", file=sys.stderr)
        return EXIT_INVALID
    except (DegenerateDiagram, DegeneratePiercing) as e:
        print(f"degenerate geometry: {e}; witness: {e.witness}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK if rc is None else rc


def run(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
