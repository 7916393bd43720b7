"""Command-line interface: ``quadgb analyze|witness|nets|koszul|corpus|reproduce-paper``.

Exit codes: 0 success, 1 usage or parse error, 2 hypothesis violation,
3 inconclusive, 4 verification failure (or a failed acceptance item).
"""

import argparse
from dataclasses import dataclass, field as dc_field, asdict
import json
import sys

from . import search
from .algebra import (SearchExhausted, build_quotient, rank_linear_form, square_zero_forms)
from .fields import DEFAULT_PRIME, FieldError, make_field, make_rng
from .groebner import INFINITE, load_ideal
from .nets import InvalidParameter
from .poly import ParseError

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_INCONCLUSIVE, EXIT_VERIFY = 0, 1, 2, 3, 4

# projective spaces up to this size get an exhaustive rank spectrum
SPECTRUM_LIMIT = 20000
SPECTRUM_SAMPLES = 2000


def _num(v):
    return "inf" if v == INFINITE else v


@dataclass
class AnalysisReport:
    input: dict
    field: dict
    dims: list
    rank_spectrum: dict
    square_zero: list = dc_field(default_factory=list)
    square_zero_status: str = ""
    witness: dict = None
    net: dict = None
    betti: dict = None

    def to_json(self):
        return asdict(self)

    @classmethod
    def from_json(cls, d):
        return cls(**d)

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_text(self):
        lines = [f"input: {self.input['path']}  ({len(self.input['generators'])} generators "
                 f"in {', '.join(self.input['vars'])})",
                 f"field: {_field_name(self.field)}",
                 f"dims R_d: {self.dims}"]
        spec = self.rank_spectrum
        how = "all classes" if spec["exhaustive"] else f"{spec['sampled']} random forms"
        lines.append(f"rank spectrum of R_1 ({how}): " +
                     ", ".join(f"rank {r}: {c}" for r, c in sorted(spec["counts"].items())))
        lines.append(f"square-zero classes: {len(self.square_zero)} ({self.square_zero_status})")
        for item in self.square_zero:
            lines.append(f"  {item['form']}  rank {item['rank']}")
        if self.net is not None:
            lines.append(f"net: {self.net}")
        if self.witness is not None:
            lines.append(f"witness: {self.witness['kind']}")
            if self.witness["kind"] == "witness":
                w = self.witness["witness"]
                lines.append(f"  path {' > '.join(self.witness['path'])}")
                lines.append(f"  order degrevlex {' > '.join(w['priority'])}")
                lines.append("  new variables in terms of the input variables:")
                for name, form in zip(w["names"], self.witness["new_variables"]):
                    lines.append(f"  {name} = {form}")
                lines.append(f"  basis {self.witness['verification']['basis']}")
            else:
                for k, v in self.witness.items():
                    if k != "kind":
                        lines.append(f"  {k}: {v}")
        if self.betti is not None:
            lines.append(self.betti["text"])
        return "\n".join(lines)


def _field_name(spec):
    if spec["characteristic"] == 0:
        return "Q"
    if spec.get("degree", 1) == 1:
        return f"F_{spec['characteristic']}"
    return f"F_{spec['characteristic']}^{spec['degree']}"


def load_input(path, p):
    """Read an ideal file.  Files over Q are reduced mod --p (default 101)."""
    from .fields import RationalField
    I = load_ideal(path)
    if isinstance(I.field, RationalField) or p is not None:
        I = load_ideal(path, p=p if p is not None else DEFAULT_PRIME)
    return I


def rank_spectrum(R, seed=0):
    K = R.field
    counts = {}
    n = R.n
    if search.can_enumerate(K, n, SPECTRUM_LIMIT):
        pts = _all_points(K, n)
        exhaustive, sampled = True, 0
    else:
        rng = make_rng(seed)
        pts = []
        while len(pts) < SPECTRUM_SAMPLES:
            v = [K.random(rng) for _ in range(n)]
            if any(not K.is_zero(c) for c in v):
                pts.append(v)
        exhaustive, sampled = False, len(pts)
    for v in pts:
        r = rank_linear_form(R, v)
        counts[r] = counts.get(r, 0) + 1
    return {"counts": {str(r): c for r, c in sorted(counts.items())},
            "exhaustive": exhaustive, "sampled": sampled}


def _all_points(K, n):
    """Normalised representatives of P^{n-1}(F_p)."""
    out = []
    for lead in range(n):
        rest = n - lead - 1
        for idx in range(K.p ** rest):
            v = [K.zero] * lead + [K.one]
            for _ in range(rest):
                v.append(K(idx % K.p))
                idx //= K.p
            out.append(v)
    return out


def witness_json(out, R):
    from .witness import Found
    if isinstance(out, Found):
        K = out.witness.field
        ring = R.ring
        new_vars = []
        for row in out.witness.matrix:
            new_vars.append(str(ring.with_field(K).linear_form(row)))
        return {"kind": "witness", "path": list(out.trace.path),
                "witness": out.witness.to_json(), "new_variables": new_vars,
                "verification": out.verification, "extension": out.extension,
                "trace": out.trace.to_json(K)}
    if out.kind == "ci_exception":
        d = {"kind": "ci_exception", "gquadratic": out.gquadratic,
             "square_lines": _num(out.square_lines), "search_failed": out.search_failed}
        if out.gquadratic is False:
            d["verdict"] = "NotGQuadratic"
        if out.witness is not None:
            d["witness"] = out.witness.to_json()
            d["verification"] = out.verification
        return d
    return {"kind": "inconclusive", "reason": out.reason}


def analyze(I, path, seed=0, max_degree=4, betti_bound=None):
    """Returns (report, exit code)."""
    from .witness import (HypothesisViolation, VerificationFailed, WitnessConfig,
                          WitnessError, find_witness)
    R = build_quotient(I, max(max_degree, 4))
    K = R.field
    rep = AnalysisReport(
        input={"path": path, "vars": list(I.names), "generators": [str(g) for g in I.gens],
               "comments": list(I.comments)},
        field=K.spec(), dims=R.dims[:max_degree + 1], rank_spectrum=rank_spectrum(R, seed))
    try:
        res = square_zero_forms(R, max_extension=1, seed=seed, stop_at_rank=None)
        Q = res.quotient
        rep.square_zero = [{"form": str(Q.form_poly(v)), "rank": r} for v, r in res.classes]
        rep.square_zero_status = "exhaustive" if res.exhaustive else "sampled"
    except SearchExhausted:
        rep.square_zero_status = "none over the base field"
    if I.nvars == 3:
        rep.net = _net_info(I, seed)
    code = EXIT_OK
    try:
        out = find_witness(R, WitnessConfig(seed=seed))
        rep.witness = witness_json(out, R)
        if out.kind == "inconclusive":
            code = EXIT_INCONCLUSIVE
    except HypothesisViolation as exc:
        rep.witness = {"kind": "hypothesis_violation", "reason": str(exc)}
        code = EXIT_HYPOTHESIS
    except VerificationFailed as exc:
        rep.witness = {"kind": "verification_failed", "reason": str(exc), "report": exc.report}
        code = EXIT_VERIFY
    except WitnessError as exc:
        rep.witness = {"kind": "error", "code": exc.code, "reason": str(exc)}
        code = EXIT_VERIFY
    if betti_bound:
        from .koszul import betti, euler_check, first_nonlinear
        from .groebner import buchberger, hilbert_profile
        J = max(betti_bound, max_degree)
        bt = betti(I, betti_bound, J)
        hf = hilbert_profile(buchberger(I, degree_cap=J + 1), J)
        rep.betti = {"table": bt.to_json(), "first_nonlinear": first_nonlinear(bt),
                     "euler_check": euler_check(bt, hf), "text": bt.to_text()}
    return rep, code


def _net_info(I, seed):
    from .nets import Net, NoMatch, classify_by_fingerprint, fingerprint
    quadrics = [g for g in I.gens if g.is_homogeneous() and g.degree == 2]
    try:
        V = Net.from_polynomials(quadrics)
    except ValueError as exc:
        return {"error": str(exc)}
    try:
        fp = fingerprint(V, seed)
    except (NoMatch, ValueError) as exc:
        return {"error": str(exc)}
    info = {"H": fp[0], "q": _num(fp[1]), "p": _num(fp[2]), "gradient": fp[3]}
    try:
        info["type"] = classify_by_fingerprint(V, seed)
    except NoMatch as exc:
        info["type"] = None
        info["error"] = str(exc)
    return info


# -- commands ----------------------------------------------------------------------

def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def cmd_analyze(args):
    I = load_input(args.path, args.p)
    rep, code = analyze(I, args.path, seed=args.seed, max_degree=args.max_degree,
                        betti_bound=args.betti)
    print(rep.dumps() if args.json else rep.to_text())
    return code


def cmd_witness(args):
    from .witness import (HypothesisViolation, VerificationFailed, WitnessConfig,
                          WitnessError, find_witness)
    I = load_input(args.path, args.p)
    R = build_quotient(I, max(args.max_degree, 4))
    try:
        out = find_witness(R, WitnessConfig(seed=args.seed))
    except HypothesisViolation as exc:
        _emit(args, {"kind": "hypothesis_violation", "reason": str(exc)}, f"hypothesis violation: {exc}")
        return EXIT_HYPOTHESIS
    except VerificationFailed as exc:
        _emit(args, {"kind": "verification_failed", "reason": str(exc), "report": exc.report},
              f"verification failed: {exc}")
        return EXIT_VERIFY
    except WitnessError as exc:
        _emit(args, {"kind": "error", "code": exc.code, "reason": str(exc)}, f"{exc.code}: {exc}")
        return EXIT_VERIFY
    data = witness_json(out, R)
    if data["kind"] == "witness":
        w = data["witness"]
        text = "\n".join([f"path: {' > '.join(data['path'])}",
                          f"order: degrevlex {' > '.join(w['priority'])}",
                          "new variables in terms of the input variables:"] +
                         [f"{n} = {f}" for n, f in zip(w["names"], data["new_variables"])] +
                         ["basis:"] + [f"  {g}" for g in data["verification"]["basis"]])
    else:
        text = "\n".join(f"{k}: {v}" for k, v in data.items())
    _emit(args, data, text)
    return EXIT_INCONCLUSIVE if data["kind"] == "inconclusive" else EXIT_OK


def cmd_nets(args):
    from .nets import DEFAULT_J, format_table, net_report, reproduce_table, table_csv
    j = args.j if args.j is not None else DEFAULT_J
    K = make_field(args.p or DEFAULT_PRIME)
    if args.action == "table":
        reps = reproduce_table(p=K.p, j=j, seed=args.seed, koszul_bound=args.koszul_bound,
                               workers=args.workers)
        if args.csv:
            sys.stdout.write(table_csv(reps))
        else:
            _emit(args, [r.row() for r in reps], format_table(reps))
        return EXIT_OK if not any(r.mismatches for r in reps) else EXIT_VERIFY
    if args.type is None or not 1 <= args.type <= 15:
        raise UsageError("nets show needs a type number 1..15")
    rep = net_report(args.type, K, j if args.type == 15 else None, args.seed,
                     koszul_bound=args.koszul_bound)
    row = rep.row()
    _emit(args, row, "\n".join(f"{k}: {v}" for k, v in row.items()))
    return EXIT_OK


def cmd_koszul(args):
    from .koszul import betti, euler_check, first_nonlinear
    from .groebner import buchberger, hilbert_profile
    I = load_input(args.path, args.p)
    max_j = args.max_j if args.max_j is not None else args.max_i
    bt = betti(I, args.max_i, max_j)
    hf = hilbert_profile(buchberger(I, degree_cap=max_j + 1), max_j)
    data = {"table": bt.to_json(), "first_nonlinear": first_nonlinear(bt),
            "linear": first_nonlinear(bt) is None, "euler_check": euler_check(bt, hf)}
    first = data["first_nonlinear"]
    text = bt.to_text() + "\n" + ("linear up to the bound" if first is None
                                  else f"first nonlinear entry at (i, j) = {first}")
    _emit(args, data, text)
    return EXIT_OK


def cmd_corpus(args):
    from .corpus import run_corpus
    if args.n < 4:
        raise UsageError("corpus algebras need at least 4 variables")
    stats = run_corpus(args.n, args.count, seed=args.seed, p=args.p or DEFAULT_PRIME,
                       workers=args.workers)
    summary = {k: v for k, v in stats.items() if k != "items"}
    data = stats if args.json else summary
    _emit(args, data, "\n".join(f"{k}: {v}" for k, v in summary.items()))
    return EXIT_VERIFY if stats["verification_failed"] or stats["errors"] else EXIT_OK


def cmd_reproduce(args):
    from .acceptance import run_all
    verdicts = run_all(p=args.p, seed=args.seed if args.seed_given else None, quick=args.quick)
    if args.json:
        print(json.dumps([v.to_json(timing=False) for v in verdicts], indent=2, sort_keys=True))
    else:
        for v in verdicts:
            print(v.line())
            for d in v.details:
                print(f"    {d}")
        bad = [v.number for v in verdicts if not v.passed]
        print(f"{len(verdicts) - len(bad)}/{len(verdicts)} criteria passed"
              + (f"; failing: {bad}" if bad else ""))
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_VERIFY


class UsageError(ValueError):
    pass


def _global_flags(suppress):
    """The global flags; sub-commands repeat them without defaults so either position works."""
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--p", type=int, default=d(None),
                   help="prime field F_p (files over Q are reduced mod p, default 101)")
    g.add_argument("--seed", type=int, default=d(None), help="random seed (default 0)")
    g.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    g.add_argument("--max-degree", type=int, default=d(4),
                   help="degree bound for the truncated quotient (default 4)")
    return g


def build_parser():
    top = _global_flags(suppress=False)
    common = _global_flags(suppress=True)

    ap = argparse.ArgumentParser(prog="quadgb", parents=[top],
                                 description="Quadratic Groebner bases for algebras with dim R_2 = 3.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full report for an ideal file")
    a.add_argument("path")
    a.add_argument("--betti", type=int, default=None, metavar="I",
                   help="also compute the Betti table up to homological degree I")
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("witness", parents=[common], help="search for a quadratic basis witness")
    w.add_argument("path")
    w.set_defaults(func=cmd_witness)

    n = sub.add_parser("nets", parents=[common], help="the 15 nets of conics")
    n.add_argument("action", choices=["table", "show"])
    n.add_argument("type", nargs="?", type=int)
    n.add_argument("--j", type=int, default=None, help="parameter of type 15 (default 2)")
    n.add_argument("--csv", action="store_true")
    n.add_argument("--koszul-bound", type=int, default=None)
    n.add_argument("--workers", type=int, default=None)
    n.set_defaults(func=cmd_nets)

    k = sub.add_parser("koszul", parents=[common], help="Betti table of K over R")
    k.add_argument("path")
    k.add_argument("--max-i", type=int, default=5)
    k.add_argument("--max-j", type=int, default=None)
    k.set_defaults(func=cmd_koszul)

    c = sub.add_parser("corpus", parents=[common], help="random conforming algebras")
    c.add_argument("--n", type=int, default=4)
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--workers", type=int, default=None)
    c.set_defaults(func=cmd_corpus)

    r = sub.add_parser("reproduce-paper", parents=[common], help="run the acceptance suite")
    r.add_argument("--quick", action="store_true", help="smaller corpus and property suites")
    r.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0
    try:
        if args.p is not None:
            make_field(args.p)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FieldError, UsageError, InvalidParameter, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
