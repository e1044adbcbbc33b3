"""Command line interface.

Exit codes: 0 success, 2 bad input, 3 search cap exceeded, 4 internal
invariant violation (including a failing ``check``).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .automorphism import aut_group
from .dynkin import UnknownDynkinLabel, parse_label
from .folding import check_projection, fold_matrix, invariant_seeds, quiver_aut_group, quotient_aut_check
from .matrix import ExchangeMatrix, InvalidMatrix, bipartite_sign, cartan_counterpart, mutate_matrix, parse_matrix_text, quiver_dot
from .pattern import CapExceeded, bipartite_belt, exchange_graph, initial_seed, is_finite_type, mutate_seed
from .roots import format_root, root_system_from_cartan, standard_exchange_matrix, tau_group
from .universal import frozen_tau_symmetry, universal_matrix

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4


class InputError(Exception):
    pass


def _load_matrix(args) -> ExchangeMatrix:
    if args.type and args.matrix:
        raise InputError("give either --type or --matrix, not both")
    if args.type:
        return standard_exchange_matrix(parse_label(args.type))[0]
    if args.matrix:
        text = sys.stdin.read() if args.matrix == "-" else open(args.matrix).read()
        return parse_matrix_text(text)
    raise InputError("one of --type or --matrix is required")


def _directions(args, n: int) -> list[int]:
    if not args.k:
        raise InputError("--k is required")
    out = []
    for part in args.k.split(","):
        k = int(part)
        if not 1 <= k <= n:
            raise InputError(f"direction {k} is outside 1..{n}")
        out.append(k - 1)
    return out


def _emit(args, payload: dict, text: str | None = None, dot: str | None = None) -> str:
    if args.out == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out == "dot":
        if dot is None:
            raise InputError(f"--out dot is not available for {args.verb}")
        return dot
    return text if text is not None else json.dumps(payload, sort_keys=True, indent=2) + "\n"


def cmd_mutate(args) -> str:
    b = _load_matrix(args)
    seed = initial_seed(b)
    for k in _directions(args, b.n):
        seed = mutate_seed(seed, k)
    payload = {"matrix": seed.matrix.to_json(), "variables": [str(p) for p in seed.exchangeables]}
    return _emit(args, payload, seed.matrix.to_text(with_labels=b.m > b.n), quiver_dot(seed.matrix))


def cmd_graph(args) -> str:
    b = _load_matrix(args)
    g = exchange_graph(b, cap=args.cap)
    belt_ids = []
    if bipartite_sign(b) is not None:
        belt = bipartite_belt(b)
        belt_ids = sorted(g.seed_of_cluster([g.variable_id(p) for p in key]) for key in belt.cluster_keys())
    lines = [f"seeds: {len(g)}", f"edges: {len(g.edges)}", f"variables: {len(g.variables)}"]
    lines += [f"  v{i}: {p}" for i, p in enumerate(g.variables)]
    return _emit(args, g.to_json(), "\n".join(lines) + "\n", g.to_dot(belt_ids))


def cmd_belt(args) -> str:
    b = _load_matrix(args)
    belt = bipartite_belt(b)
    seeds = [
        {"r": r, "variables": [str(p) for p in s.exchangeables], "matrix": s.matrix.to_json()}
        for r, s in enumerate(belt.seeds)
    ]
    payload = {"period": belt.period, "distinct_seeds": belt.distinct, "sign": list(belt.sign.signs), "seeds": seeds}
    lines = [f"period {belt.period}, {belt.distinct} distinct seeds"]
    for r, s in enumerate(belt.seeds):
        lines.append(f"r={r}: " + ", ".join(str(p) for p in s.exchangeables))
    return _emit(args, payload, "\n".join(lines) + "\n")


def _root_system(args):
    b = _load_matrix(args)
    a = cartan_counterpart(b).entries
    try:
        return b, root_system_from_cartan(a)
    except ValueError:
        label = is_finite_type(b, cap=args.cap or 100_000)
        raise InputError(
            "Cartan counterpart is not of finite type"
            + (f"; the mutation class is of type {label}" if label else "")
        )


def cmd_roots(args) -> str:
    _, rs = _root_system(args)
    lines = [f"type {rs.label}, h = {rs.coxeter_number}"]
    lines += [format_root(r) for r in rs.almost_positive]
    return _emit(args, rs.to_json(), "\n".join(lines) + "\n")


def cmd_tau_group(args) -> str:
    b, rs = _root_system(args)
    eps = bipartite_sign(b)
    if eps is None:
        raise InputError("matrix is not bipartite")
    tg = tau_group(rs, eps)
    payload = {"order": tg.order, "rotation_order": tg.rotation_order, "structure": tg.dihedral_name}
    return _emit(args, payload, f"{tg.dihedral_name} (order {tg.order})\n")


def cmd_aut_group(args) -> str:
    b = _load_matrix(args)
    group = aut_group(exchange_graph(b, cap=args.cap))
    payload = group.to_json()
    if not args.generators:
        payload.pop("generators")
    return _emit(args, payload, f"{group.structure} (order {group.order})\n")


def cmd_fold(args) -> str:
    b = _load_matrix(args)
    grp = quiver_aut_group(b)
    f = fold_matrix(b, grp)
    g_big, g_small = exchange_graph(b, cap=args.cap), exchange_graph(f, cap=args.cap)
    proj = check_projection(invariant_seeds(g_big, grp), g_small)
    quot = quotient_aut_check(aut_group(g_big), g_big, grp, aut_group(g_small), g_small)
    rs = root_system_from_cartan(cartan_counterpart(f).entries)
    payload = {
        "group_order": grp.order,
        "orbits": [[i + 1 for i in orb] for orb in grp.orbits],
        "folded": f.to_json(),
        "folded_type": str(rs.label),
        "projection": proj,
        "quotient": quot,
    }
    ok = proj["bijective"] and all(v for k, v in quot.items() if isinstance(v, bool))
    if not ok:
        raise AssertionError(json.dumps(payload, sort_keys=True))
    return _emit(args, payload, f"{rs.label}\n{f.to_text()}")


def cmd_universal(args) -> str:
    b = _load_matrix(args)
    u = universal_matrix(b)
    payload = {
        "matrix": u.base.to_json(),
        "tau_symmetry": {"minus": list(frozen_tau_symmetry(u, -1)), "plus": list(frozen_tau_symmetry(u, 1))},
    }
    return _emit(args, payload, u.to_text())


def cmd_check(args) -> str:
    from .checks import run_checks

    results = run_checks(slow=args.slow)
    text = "\n".join(r.line() for r in results) + "\n"
    if not all(r.passed for r in results):
        raise _CheckFailed(text)
    return text


class _CheckFailed(Exception):
    pass


COMMANDS = {
    "mutate": cmd_mutate,
    "graph": cmd_graph,
    "belt": cmd_belt,
    "roots": cmd_roots,
    "tau-group": cmd_tau_group,
    "aut-group": cmd_aut_group,
    "fold": cmd_fold,
    "universal": cmd_universal,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusteraut", description="Finite-type cluster algebras and their automorphism groups.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in COMMANDS:
        p = sub.add_parser(verb)
        if verb == "check":
            p.add_argument("--slow", action="store_true", help="include E6 and F4")
            p.set_defaults(out="text")
            continue
        p.add_argument("--type", help="Dynkin label such as A3 or G2")
        p.add_argument("--matrix", help="matrix file, or - for stdin")
        p.add_argument("--out", choices=("json", "dot", "text"), default="json")
        p.add_argument("--cap", type=int, default=None, help="maximum number of seeds")
        if verb == "mutate":
            p.add_argument("--k", help="1-based direction(s), comma separated")
        if verb == "aut-group":
            p.add_argument("--generators", action="store_true", help="include generator permutations")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        out = COMMANDS[args.verb](args)
    except (InputError, InvalidMatrix, UnknownDynkinLabel, OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _CheckFailed as exc:
        sys.stdout.write(str(exc))
        return EXIT_INVARIANT
    except AssertionError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
