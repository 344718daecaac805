"""Command-line front end.

Every command prints exactly one JSON document on stdout.  Exit codes: 0 on
success, 2 on bad input or a failed precondition, 1 on internal failure.
Lattice arguments are expressions (``"3*D4 + 2*U"``) or ``@path.json`` files
holding ``{"gram": [[...]]}``.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import catalog, definite, discforms, embeddings, nikulin
from .errors import InvalidArgument, LatticeError
from .lattice import discriminant_group, signature, validate


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_lattice(text):
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidArgument(f"cannot read lattice file {text[1:]!r}: {exc}") from exc
        if not isinstance(data, dict) or "gram" not in data:
            raise InvalidArgument('lattice JSON must look like {"gram": [[...]]}')
        try:
            return validate(data["gram"])
        except TypeError as exc:
            raise InvalidArgument(str(exc)) from exc
    return catalog.lattice(text)


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{what} is not valid JSON: {exc}") from exc


def _frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_invariants(args):
    lat = load_lattice(args.lattice)
    out = {"rank": lat.rank, "det": lat.det, "even": lat.is_even}
    if lat.det:
        sig = signature(lat)
        grp = discriminant_group(lat)
        out.update({"signature": [sig.t_plus, sig.t_minus],
                    "discriminant_group": list(grp.invariant_factors), "l": grp.length})
        if lat.is_even and grp.is_two_elementary():
            l, delta = discforms.two_elementary_invariants(discforms.discriminant_form(lat))
            out["two_elementary"] = {"t_plus": sig.t_plus, "t_minus": sig.t_minus, "l": l, "delta": delta}
    return out


def cmd_discform(args):
    form = discforms.discriminant_form(load_lattice(args.lattice))
    if args.prime:
        form = discforms.p_primary_part(form, args.prime)
    return form.to_json()


def cmd_classify(args):
    return nikulin.classify(load_lattice(args.lattice)).to_json(explain=args.explain)


def cmd_exists(args):
    inv = nikulin.TwoElemInvariants(args.tplus, args.tminus, args.l, args.delta)
    out = {"exists": nikulin.two_elementary_exists(inv)}
    if args.explain:
        out["reasons"] = ["even 2-elementary existence conditions 0-7"]
    return out


def cmd_enumerate(args):
    return nikulin.enumerate_2elem().to_json()


def cmd_kappa(args):
    return {"kappa": _frac(nikulin.kappa(args.rho, args.d))}


def cmd_hassett(args):
    out = {"d": args.d, "potentially_irrational": nikulin.hassett_rho1(args.d)}
    if args.explain:
        out["reasons"] = [nikulin.HASSETT]
    return out


def cmd_shortvec(args):
    return definite.short_vectors(load_lattice(args.lattice), args.bound).to_json()


def cmd_glue(args):
    base = load_lattice(args.lattice)
    gens = _json_arg(args.generators, "--generators")
    try:
        gens = [[Fraction(str(x)) for x in g] for g in gens]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"bad glue vector: {exc}") from exc
    result = embeddings.overlattice(embeddings.GlueData(base, tuple(map(tuple, gens))))
    return {"gram": result.matrix(), "det": result.det, "even": result.is_even}


def cmd_complement(args):
    amb = load_lattice(args.lattice)
    rows = _json_arg(args.basis, "--basis")
    sub = embeddings.SublatticeBasis(amb, tuple(map(tuple, rows)))
    basis = embeddings.complement_basis(sub)
    comp = embeddings.orthogonal_complement(sub)
    return {"gram": comp.matrix(), "basis": basis, "primitive_input": embeddings.is_primitive(sub)}


def cmd_isometry(args):
    return {"isometric": definite.isometric_small(load_lattice(args.first), load_lattice(args.second))}


def cmd_orthgroup(args):
    form = discforms.discriminant_form(load_lattice(args.lattice))
    if args.prime:
        form = discforms.p_primary_part(form, args.prime)
    return {"order": discforms.orthogonal_group_order(form), "group": list(form.orders)}


def build_parser():
    parser = _Parser(prog="latticeforge", description=__doc__.splitlines()[0])
    parser.add_argument("--explain", action="store_true", help="include the criteria a verdict rests on")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def lattice_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("lattice", help='expression such as "3*D4 + 2*U", or @file.json')
        p.set_defaults(func=func)
        return p

    lattice_cmd("invariants", cmd_invariants, "rank, det, signature, discriminant group")
    p = lattice_cmd("discform", cmd_discform, "discriminant quadratic form as JSON")
    p.add_argument("--prime", type=int, default=None, help="restrict to the p-primary part")
    lattice_cmd("classify", cmd_classify, "K3-embedding report for a transcendental lattice")
    p = sub.add_parser("exists-2elem", help="existence of an even 2-elementary lattice")
    for flag in ("--tplus", "--tminus", "--l", "--delta"):
        p.add_argument(flag, type=int, required=True)
    p.set_defaults(func=cmd_exists)
    sub.add_parser("enumerate", help="sweep of 2-elementary candidates").set_defaults(func=cmd_enumerate)
    p = sub.add_parser("kappa", help="algebraicity index 2^rho/d")
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_kappa)
    p = sub.add_parser("hassett", help="rho = 1 criterion")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_hassett)
    p = lattice_cmd("shortvec", cmd_shortvec, "short vector counts of a positive definite lattice")
    p.add_argument("--bound", type=int, required=True)
    p = lattice_cmd("glue", cmd_glue, "overlattice generated by rational glue vectors")
    p.add_argument("--generators", required=True, help='JSON list of vectors, e.g. [["1/2","1/2"]]')
    p = lattice_cmd("complement", cmd_complement, "orthogonal complement of integer basis rows")
    p.add_argument("--basis", required=True, help="JSON list of integer rows")
    p = sub.add_parser("isometry", help="isometry test for small positive definite lattices")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_isometry)
    p = lattice_cmd("orthgroup", cmd_orthgroup, "order of the isometry group of the discriminant form")
    p.add_argument("--prime", type=int, default=None)
    return parser


def run(argv, stdout=None, stderr=None):
    """Execute one command; returns the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=stderr)
        print(f"error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        payload = {"status": "ok", **args.func(args)}
        code = 0
    except LatticeError as exc:
        payload = {"status": "error", "code": exc.code, "message": str(exc)}
        code = 2
    except Exception as exc:  # noqa: BLE001 - reported as internal failure
        payload = {"status": "error", "code": "InternalError", "message": f"{type(exc).__name__}: {exc}"}
        code = 1
    stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
