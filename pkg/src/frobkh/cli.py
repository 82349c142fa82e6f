"""Command-line front end.

Exit codes: 0 success, 1 computation-domain error or failed check,
2 usage error (bad flags, malformed input).
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import PolynomialRing, parse_ring, polynomial_ring
from .complex import base_change_complex, dualize, flatten, marked_complex, simplify
from .cube import build_cube, twist_cube_isomorphism
from .diagram import diagram_from_input, mirror
from .errors import FrobkhError, UsageError
from .frobenius import (RingHom, base_change, check_axioms, dual, invert_in_A,
                        make_system, parse_system, realize_from_universal, recognize)
from .homology import bigraded_homology, pid_decompose, truncate_mod_power
from .invariants import (kauffman_bracket_jones, lee_rank, rational_khovanov,
                         reduced_dim_prediction, s_invariant, xmodule_complex)

COMMANDS = ("homology", "jones", "s", "lee-rank", "decompose", "verify-axioms",
            "twist-check", "mirror-check", "simplify")


class CheckFailed(FrobkhError):
    """A verification command ran to completion and found a failure."""


# -- argument handling --------------------------------------------------------


def _add_input(p):
    p.add_argument("--pd", help="PD code, e.g. 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'")
    p.add_argument("--braid", help="comma-separated braid word, e.g. '1,1,1'")
    p.add_argument("--strands", type=int, help="number of braid strands")


def _add_format(p):
    p.add_argument("--format", choices=("text", "json"), default="text")


def _add_coeffs(p, default_system):
    p.add_argument("--system", default=default_system,
                   help="f1|f2|f3|f5|f6|f7|custom:h=..,t=..,ring=..")
    p.add_argument("--coeffs", help="coefficient ring, e.g. Z, Q, F2, Q[t], Q[X], F2[H], F2(u)")
    p.add_argument("--map", dest="map_",
                   help="images of system variables, e.g. 'h=0,t=1' (others: same name or 0)")


def build_parser():
    parser = argparse.ArgumentParser(prog="frobkh",
                                     description="Link homology from rank-two Frobenius systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="bigraded homology table")
    _add_input(p), _add_coeffs(p, "f1"), _add_format(p)
    p.add_argument("--no-simplify", action="store_true",
                   help="skip Gaussian elimination before the Smith form")

    p = sub.add_parser("jones", help="unnormalized Jones polynomial (Kauffman bracket)")
    _add_input(p), _add_format(p)

    p = sub.add_parser("s", help="Rasmussen s-invariant of a knot")
    _add_input(p), _add_format(p)

    p = sub.add_parser("lee-rank", help="free rank of H_t over Q[t]")
    _add_input(p), _add_format(p)

    p = sub.add_parser("decompose", help="pieces of the complex over a graded PID")
    _add_input(p), _add_format(p)
    p.add_argument("--system", help="defaults to F5 with coefficients Q[X]")
    p.add_argument("--coeffs", help="Q[X] (default), Q[t], F2[H], ...")
    p.add_argument("--map", dest="map_")

    p = sub.add_parser("verify-axioms", help="check the Frobenius system axioms")
    p.add_argument("--system", default="f5")
    _add_format(p)

    p = sub.add_parser("twist-check", help="verify the twisting isomorphism on a cube")
    _add_input(p), _add_format(p)
    p.add_argument("--system", default="f2")
    p.add_argument("--twist", help="twisting element as 'alpha,beta' for alpha + beta*X "
                                   "(default: the universal twist element of the system)")

    p = sub.add_parser("mirror-check", help="compare mirror homology with the dual complex")
    _add_input(p), _add_coeffs(p, "f1"), _add_format(p)

    p = sub.add_parser("simplify", help="Gaussian elimination of unit entries")
    _add_input(p), _add_coeffs(p, "f5"), _add_format(p)
    p.add_argument("--dump", action="store_true", help="print the full simplified complex")
    return parser


def _diagram(args):
    if args.pd is None and args.braid is None:
        raise UsageError("--pd or --braid is required")
    return diagram_from_input(args.pd, args.braid, args.strands)


def _input_json(args, d):
    return {"pd": d.to_string(), "braid": args.braid, "strands": args.strands,
            "crossings": d.n_crossings, "components": d.n_components}


def _parse_map(text, target):
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"--map: expected name=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = target.parse(v.strip())
    return out


def _is_xmodule_ring(target, source):
    return (isinstance(target, PolynomialRing) and target.nvars == 1
            and target.variables[0][0] == "X"
            and "X" not in {n for n, _ in getattr(source, "variables", ())})


def prepare_complex(d, system, coeffs=None, map_text=None):
    """Flatten the cube and change coefficients.

    Coefficients ``k[X]`` (with ``X`` not a system variable) mean the marked
    X-module structure: first base-change into ``k[t]`` with ``X^2 = t``.
    """
    C = flatten(build_cube(d, system))
    if coeffs is None:
        if map_text:
            raise UsageError("--map needs --coeffs")
        return C
    target = parse_ring(coeffs)
    if _is_xmodule_ring(target, system.ring):
        (_, xdeg), = target.variables
        mid = polynomial_ring(target.base, (("t", 2 * xdeg),))
        psi = RingHom.by_name(system.ring, mid, _parse_map(map_text, mid))
        if psi.images.get("h", mid.zero):
            raise UsageError("--coeffs with X requires h -> 0")
        return marked_complex(base_change_complex(C, psi))
    psi = RingHom.by_name(system.ring, target, _parse_map(map_text, target))
    return base_change_complex(C, psi)


# -- commands -----------------------------------------------------------------


def cmd_homology(args):
    d = _diagram(args)
    system = parse_system(args.system)
    C = prepare_complex(d, system, args.coeffs, args.map_)
    H = bigraded_homology(C, presimplify=not args.no_simplify)
    data = {"input": _input_json(args, d), "system": system.name,
            "coefficients": C.ring.name, "homology": H.rows()}
    text = H.format_text()
    if not H.graded:
        text += f"\n(ungraded: total rank {H.total_rank})"
    return data, text


def cmd_jones(args):
    d = _diagram(args)
    j = kauffman_bracket_jones(d)
    return {"input": _input_json(args, d), "jones": str(j)}, str(j)


def cmd_s(args):
    d = _diagram(args)
    s = s_invariant(d)
    return {"input": _input_json(args, d), "s": s}, str(s)


def cmd_lee_rank(args):
    d = _diagram(args)
    r = lee_rank(d)
    return {"input": _input_json(args, d), "lee_rank": r}, str(r)


def cmd_decompose(args):
    d = _diagram(args)
    if args.system is None and args.coeffs is None:
        M = xmodule_complex(d)
        system_name = "F5"
    else:
        system = parse_system(args.system or "f5")
        M = prepare_complex(d, system, args.coeffs or "Q[X]", args.map_)
        system_name = system.name
    P = pid_decompose(M)
    data = {"input": _input_json(args, d), "system": system_name,
            "coefficients": M.ring.name, "pieces": P.as_dict()}
    lines = [f"coefficients {M.ring.name}"]
    for i, q in P.free:
        lines.append(f"free summand: i={i} q={q}")
    for p in P.pieces:
        lines.append(f"piece: m={p.m} degrees {p.i - 1}->{p.i} "
                     f"q {p.q_source}->{p.q_target}")
    if d.n_components == 1 and P.variable == "X" and len(P.free) == 1 and P.free[0][0] == 0:
        dim = rational_khovanov(d).total_rank
        pred = reduced_dim_prediction(P, dim)
        red = bigraded_homology(truncate_mod_power(M, 1)).total_rank
        data.update(s=P.free[0][1] - 1, rational_dim=dim,
                    predicted_reduced_dim=pred, reduced_dim=red)
        lines.append(f"s = {P.free[0][1] - 1}")
        lines.append(f"dim_Q H = {dim}; predicted reduced dim = {pred}; reduced dim = {red}")
    return data, "\n".join(lines)


def cmd_verify_axioms(args):
    system = parse_system(args.system)
    rep = check_axioms(system)
    data = {"system": system.name, "coefficients": system.ring.name, "ok": rep.ok,
            "axioms": {k: {"pass": p, "witness": None if p else str(w)}
                       for k, (p, w) in rep.results.items()},
            "degrees": {k: v for k, v in rep.homogeneity.items()}}
    try:
        psi, y, rebuilt = realize_from_universal(system)
        params = recognize(system)
        data["universal"] = {"parameters": [str(x) for x in params.as_tuple()],
                             "twist": [str(y[0]), str(y[1])],
                             "rebuilt_equal": rebuilt.same_structure(system)}
    except FrobkhError as exc:
        data["universal"] = {"error": str(exc)}
    text = "\n".join(rep.lines())
    if not rep.ok:
        raise CheckFailed(text)
    return data, text


def _parse_twist(text, ring):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--twist expects 'alpha,beta'")
    return ring.parse(parts[0].strip()), ring.parse(parts[1].strip())


def cmd_twist_check(args):
    d = _diagram(args)
    system = parse_system(args.system)
    psi, y_univ, _ = realize_from_universal(system)
    untwisted = base_change(make_system("F5"), psi)
    if args.twist:
        y = _parse_twist(args.twist, system.ring)
    else:
        # twisting by the inverse of the universal element undoes Prop 6's twist
        y = invert_in_A(system, y_univ)
    iso = twist_cube_isomorphism(d, system, y)
    tw = iso.twisted_system
    is_base_change = tw.same_structure(untwisted)
    data = {"input": _input_json(args, d), "system": system.name,
            "twist": [str(y[0]), str(y[1])], "twisted_system": tw.describe(),
            "twisted_is_base_change_of_F5": is_base_change,
            "edges_checked": len(iso.cube.edges), "verified": True}
    text = (f"twist by {y[0]} + ({y[1]})*X: twisted cube is isomorphic to the "
            f"{system.name} cube ({len(iso.cube.edges)} edges checked)\n"
            f"twisted system: X^2 = {tw.describe()['X^2']}, "
            f"eps(1) = {tw.counit[0]}, eps(X) = {tw.counit[1]}, "
            f"Delta(1) = {tw.describe()['Delta(1)']}\n"
            f"twisted system is a base change of F5: {'yes' if is_base_change else 'no'}")
    return data, text


def _flip(table):
    return {(-i, -q): r for (i, q), r in table.items()}


def cmd_mirror_check(args):
    d = _diagram(args)
    system = parse_system(args.system)
    coeffs = args.coeffs or ("Q" if system.ring.name == "Z" else None)
    H = bigraded_homology(prepare_complex(d, system, coeffs, args.map_))
    Hm = bigraded_homology(prepare_complex(mirror(d), system, coeffs, args.map_))
    Hdual = bigraded_homology(dualize(prepare_complex(d, dual(system), coeffs, args.map_)))
    flip_ok = Hm.table() == _flip(H.table())
    dual_ok = Hm.same_as(Hdual)
    data = {"input": _input_json(args, d), "system": system.name,
            "coefficients": Hm.ring.name, "flip_equal": flip_ok, "dual_equal": dual_ok}
    lines = [f"mirror table equals (i,q)->(-i,-q) flip: {'pass' if flip_ok else 'FAIL'}",
             f"mirror homology equals dual complex homology: {'pass' if dual_ok else 'FAIL'}"]
    ok = flip_ok and dual_ok
    if d.n_components == 1:
        s, sm = s_invariant(d), s_invariant(mirror(d))
        data.update(s=s, s_mirror=sm, s_antisymmetric=(sm == -s))
        lines.append(f"s = {s}, s(mirror) = {sm}: {'pass' if sm == -s else 'FAIL'}")
        ok = ok and sm == -s
    text = "\n".join(lines)
    if not ok:
        raise CheckFailed(text)
    return data, text


def cmd_simplify(args):
    d = _diagram(args)
    system = parse_system(args.system)
    C = prepare_complex(d, system, args.coeffs, args.map_)
    S = simplify(C)
    units = sum(1 for i in S.d for _, _, c in S.entries(i) if c.is_unit())
    data = {"input": _input_json(args, d), "system": system.name,
            "coefficients": S.ring.name,
            "ranks_before": {str(i): C.rank(i) for i in C.degrees()},
            "ranks_after": {str(i): S.rank(i) for i in S.degrees()},
            "generators": [{"i": g.i, "q": g.q} for i in S.degrees() for g in S.gens[i]],
            "entries": [{"i": i, "row": r, "col": c, "value": str(v)}
                        for i in sorted(S.d)
                        for c, r, v in sorted(S.entries(i), key=lambda e: (e[0], e[1]))],
            "unit_entries": units}
    lines = [f"{C.total_rank} generators -> {S.total_rank} generators "
             f"({S.n_entries()} nonzero entries, {units} units)"]
    for i in S.degrees():
        qs = ", ".join(str(g.q) for g in S.gens[i])
        lines.append(f"C^{i}: q = {qs}")
    if args.dump:
        lines.append(S.dump())
    return data, "\n".join(lines)


HANDLERS = {
    "homology": cmd_homology, "jones": cmd_jones, "s": cmd_s, "lee-rank": cmd_lee_rank,
    "decompose": cmd_decompose, "verify-axioms": cmd_verify_axioms,
    "twist-check": cmd_twist_check, "mirror-check": cmd_mirror_check, "simplify": cmd_simplify,
}


def emit_json(data):
    return (json.dumps(data, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "text")
    try:
        data, text = HANDLERS[args.command](args)
    except CheckFailed as exc:
        print(str(exc), file=out)
        return 1
    except UsageError as exc:
        print(f"frobkh: error: {exc}", file=err)
        return 2
    except FrobkhError as exc:
        print(f"frobkh: error: {exc}", file=err)
        return 1
    if fmt == "json":
        out.write(emit_json(data).decode("utf-8"))
    else:
        print(text, file=out)
    return 0


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
