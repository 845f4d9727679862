"""Command-line front end: order catalog, drivers, TSV reporting.

Exit codes: 0 all checks pass, 1 verification mismatch, 2 usage or parse
error, 3 capacity exceeded.
"""

import argparse
import sys

from .errors import CapacityError, NoFormula, ParseError, QuatlatError
from .fields import parse_field_element
from .quat import format_quaternion


def _emit(row):
    print("\t".join(str(c) for c in row))


def _parse_alpha(text, field):
    alpha = parse_field_element(text, field)
    if not (alpha and alpha.is_totally_positive()):
        raise ParseError(f"alpha must be totally positive, got {text!r}")
    return alpha


def _order_name(L):
    from .catalog import catalog

    for name, entry in catalog().items():
        if entry.order == L:
            return name
    return "-"


def _basis_text(L):
    return ", ".join(format_quaternion(b) for b in L.ok_basis())


def cmd_units(args):
    from .catalog import get_order
    from .enumeration import units1

    _emit(("order", "units"))
    _emit((args.order, len(units1(get_order(args.order)))))
    return 0


def cmd_count(args):
    from .catalog import get_order
    from .enumeration import representations

    O = get_order(args.order)
    alpha = _parse_alpha(args.alpha, O.algebra.field)
    _emit(("order", "alpha", "count"))
    _emit((args.order, args.alpha, len(representations(O, alpha, jobs=args.jobs))))
    return 0


def cmd_predict(args):
    from .catalog import get_order
    from .formulas import formula_for, predict

    G = get_order(args.order)
    H = get_order(args.against)
    alpha = _parse_alpha(args.alpha, G.algebra.field)
    desc = formula_for(G, H)
    _emit(("suborder", "order", "alpha", "variant", "predicted"))
    _emit((args.order, args.against, args.alpha, desc.variant, predict(desc, alpha)))
    return 0


def _verify_range(args, field):
    if args.max is not None:
        if field.degree != 1:
            raise ParseError("--max applies to orders over Q; use --max-trace")
        return [field.element(n) for n in range(1, args.max + 1)]
    if args.max_trace is None:
        raise ParseError("verify needs --max or --max-trace")
    if field.degree == 1:
        raise ParseError("--max-trace applies to quadratic fields; use --max")
    out = []
    for tr in range(1, args.max_trace + 1):
        bound = 3 * args.max_trace + 3
        for b in range(-bound, bound + 1):
            num = tr - field.s * b
            if num % 2:
                continue
            alpha = field.element(num // 2, b)
            if alpha and alpha.is_totally_positive():
                out.append(alpha)
    return out


def cmd_verify(args):
    from .catalog import get_order
    from .enumeration import representations
    from .fields import format_field_element
    from .formulas import formula_for, predict

    G = get_order(args.order)
    H = get_order(args.against)
    desc = formula_for(G, H)
    _emit(("alpha", "predicted", "counted", "verdict"))
    status = 0
    for alpha in _verify_range(args, G.algebra.field):
        want = predict(desc, alpha)
        got = len(representations(G, alpha, jobs=args.jobs))
        verdict = "OK" if want == got else "MISMATCH"
        if want != got:
            status = 1
        _emit((format_field_element(alpha), want, got, verdict))
    return status


def cmd_search(args):
    from .catalog import get_order
    from .lattices import index_z
    from .perceptive import search_perceptive

    H = get_order(args.order)
    found = sorted(search_perceptive(H), key=lambda L: (index_z(H, L), L.den, L.mat))
    _emit(("name", "index", "basis"))
    for L in found:
        _emit((_order_name(L), index_z(H, L), _basis_text(L)))
    return 0


def cmd_conductors(args):
    from .catalog import get_order
    from .fields import format_field_element
    from .lattices import index_ideal
    from .perceptive import conductor_chain, intermediate_orders

    G = get_order(args.order)
    H = get_order(args.against)
    poset = intermediate_orders(G, H)
    _emit(("order", "conductor_index", "generator"))
    for M, cond, gen in conductor_chain(G, H, poset):
        _emit((
            _order_name(M),
            format_field_element(index_ideal(G, cond)),
            format_quaternion(gen) if gen is not None else "-",
        ))
    return 0


def cmd_kind(args):
    from .catalog import get_order
    from .fields import format_field_element
    from .perceptive import kind_of

    G = get_order(args.order)
    H = get_order(args.against)
    _emit(("prime", "exponent", "divides_discrd"))
    for pi, e, divides in kind_of(G, H):
        _emit((format_field_element(pi), e, "yes" if divides else "no"))
    return 0


def cmd_profile(args):
    from .catalog import get_order
    from .enumeration import orbit_profile

    G = get_order(args.order)
    H = get_order(args.against)
    alpha = _parse_alpha(args.alpha, G.algebra.field)
    sizes = orbit_profile(G, H, alpha)
    _emit(("alpha", "orbit_sizes"))
    _emit((args.alpha, ",".join(str(s) for s in sizes)))
    return 0


def _build_parser():
    top = argparse.ArgumentParser(
        prog="quatlat",
        description="Exact representation numbers of quaternion orders.",
    )
    top.add_argument(
        "--skip-selfcheck",
        action="store_true",
        help="skip the catalog metadata self-check",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, func, against=False, alpha=False, jobs=False, ranges=False):
        p = sub.add_parser(name)
        p.add_argument("--order", required=True, help="catalog name or order file")
        if against:
            p.add_argument("--against", required=True, help="superorder")
        if alpha:
            p.add_argument("--alpha", required=True, help="field element literal")
        if jobs:
            p.add_argument("--jobs", type=int, default=1)
        if ranges:
            p.add_argument("--max", type=int, default=None)
            p.add_argument("--max-trace", type=int, default=None)
        p.set_defaults(func=func)
        return p

    add("units", cmd_units)
    add("count", cmd_count, alpha=True, jobs=True)
    add("predict", cmd_predict, against=True, alpha=True)
    add("verify", cmd_verify, against=True, jobs=True, ranges=True)
    add("search", cmd_search)
    add("conductors", cmd_conductors, against=True)
    add("kind", cmd_kind, against=True)
    add("profile", cmd_profile, against=True, alpha=True)
    return top


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if not args.skip_selfcheck:
            from .catalog import self_check

            self_check()
        return args.func(args)
    except (ParseError, NoFormula) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return 3
    except QuatlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
