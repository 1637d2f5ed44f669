"""Command-line interface: ``rigidbar {check,sparsity,motions,circuit,sweep,gen}``.

Every command prints JSON (one object, or JSON lines for ``sweep``).  Exit
codes: 0 success/agreement, 1 input error, 2 disagreement between routes,
3 combinatorial route inapplicable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from fractions import Fraction

from .algebra import DEFAULT_PRIME, DEFAULT_TRIALS, RandomSource
from .characterisation import (
    CliqueFound,
    SparsityViolation,
    TightSubgraph,
    combinatorial_independent,
    combinatorial_rigid,
    conjecture_instance_check,
)
from .generate import conjecture_instance, one_extension_chain, random_looped_graph, zero_extension_chain
from .graph import GraphError, Loop, LoopedGraph, add_uniform_loops
from .rigidity import (
    estimate_generic_rank,
    find_circuit,
    motion_space,
    random_integer_realisation,
)
from .sparsity import has_tight_spanning_subgraph, is_tight, pebble_game

log = logging.getLogger("rigidbar")

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE, EXIT_INAPPLICABLE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _element(el):
    if isinstance(el, Loop):
        return {"loop": el.id}
    return {"edge": [el.u, el.v]}


def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


def _witness(w):
    if isinstance(w, SparsityViolation):
        return {"sparsity_violation": sorted(w.vertices)}
    if isinstance(w, CliqueFound):
        return {"clique": sorted(w.vertices)}
    if isinstance(w, TightSubgraph):
        return {"tight_subgraph": w.graph.to_dict()}
    return None


def _load(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        g = LoopedGraph.loads(raw.decode("utf-8"))
    except (GraphError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    return g, hashlib.sha256(raw).hexdigest()


def _report(command, **fields):
    return {"command": command, **fields}


def _rank_fields(est):
    return {"rank": est.rank, "trials_used": est.trials, "error_bound": est.bound}


def cmd_check(args):
    g, digest = _load(args.graph)
    if args.d < 1:
        raise InputError("d must be at least 1")
    if args.mode == "combinatorial" and args.d < 2:
        raise InputError("combinatorial mode requires d >= 2")
    rs = RandomSource(args.seed)
    report = _report("check", input=digest, seed=args.seed, d=args.d, trials=args.trials)
    code = EXIT_OK
    alg = comb = None
    if args.mode in ("algebraic", "both"):
        est, _ = estimate_generic_rank(g, args.d, rs, args.trials, args.prime)
        log.info("rank %d over %d trial(s), failure bound %.3g", est.rank, est.trials, est.bound)
        alg = {
            "independent": est.rank == g.num_elements,
            "rigid": est.rank == args.d * g.n,
            **_rank_fields(est),
        }
        report["algebraic"] = alg
    if args.mode in ("combinatorial", "both"):
        if args.d < 2:
            comb = "inapplicable"
        else:
            ind = combinatorial_independent(g, args.d)
            if not ind.hypothesis_ok:
                comb = "inapplicable"
            else:
                rig = combinatorial_rigid(g, args.d)
                comb = {
                    "independent": ind.verdict,
                    "rigid": rig.verdict,
                    "independence_witness": _witness(ind.witness),
                    "rigidity_witness": _witness(rig.witness),
                }
        report["combinatorial"] = comb
        if comb == "inapplicable" and args.mode == "combinatorial":
            code = EXIT_INAPPLICABLE
    if isinstance(alg, dict) and isinstance(comb, dict):
        agree = alg["independent"] == comb["independent"] and alg["rigid"] == comb["rigid"]
        report["agree"] = agree
        if not agree:
            code = EXIT_DISAGREE
    return report, code


def cmd_sparsity(args):
    g, digest = _load(args.graph)
    if args.k < 1:
        raise InputError("k must be at least 1")
    verdict = pebble_game(g, args.k)
    sub = has_tight_spanning_subgraph(g, args.k)
    report = _report(
        "sparsity",
        input=digest,
        k=args.k,
        sparse=verdict.is_sparse,
        tight=is_tight(g, args.k),
        matroid_rank=verdict.matroid_rank,
        violation=sorted(verdict.violation) if verdict.violation is not None else None,
        tight_spanning_subgraph=sub.to_dict() if sub is not None else None,
    )
    return report, EXIT_OK


def cmd_motions(args):
    g, digest = _load(args.graph)
    if args.d < 1:
        raise InputError("d must be at least 1")
    rs = RandomSource(args.seed)
    real = random_integer_realisation(g, args.d, rs)
    basis = motion_space(g, real)
    report = _report(
        "motions",
        input=digest,
        seed=args.seed,
        d=args.d,
        field="rationals",
        points=[list(p) for p in real.points],
        normals={str(k): list(v) for k, v in sorted(real.normals.items())},
        dimension=len(basis),
        infinitesimally_rigid=not basis,
        basis=[[[_num(x) for x in vel] for vel in m.velocities] for m in basis],
        note="single random integer realisation; dimension exceeds the generic value only on a measure-zero set",
    )
    return report, EXIT_OK


def cmd_circuit(args):
    g, digest = _load(args.graph)
    if args.d < 1:
        raise InputError("d must be at least 1")
    rs = RandomSource(args.seed)
    est, _ = estimate_generic_rank(g, args.d, RandomSource(args.seed), args.trials, args.prime)
    circuit = find_circuit(g, args.d, rs, args.trials, args.prime)
    report = _report("circuit", input=digest, seed=args.seed, d=args.d, **_rank_fields(est))
    if circuit is None:
        report.update(independent=True, circuit=None)
    else:
        report.update(
            independent=False,
            circuit=[_element(el) for el in circuit.elements],
            pivot=_element(circuit.pivot),
        )
    return report, EXIT_OK


def cmd_sweep(args):
    if args.t < 1 or args.d < 2:
        raise InputError("need t >= 1 and d >= 2")
    in_range = args.d >= 2 * args.t - 1
    if not in_range and not args.allow_open_range:
        raise InputError(f"d={args.d} < 2t-1={2 * args.t - 1} is outside the proved range; pass --allow-open-range")
    if args.count < 0 or args.max_vertices < 1:
        raise InputError("count must be >= 0 and max-vertices >= 1")
    rs = RandomSource(args.seed)
    lines = []
    agreements = 0
    worst = 0.0
    for i in range(args.count):
        inst_rs = rs.spawn()
        g = conjecture_instance(inst_rs, args.t, args.max_vertices)
        res = conjecture_instance_check(g, args.t, args.d, inst_rs, args.trials, allow_open_range=True)
        agreements += res.agree
        worst = max(worst, res.bound)
        line = {
            "command": "sweep",
            "index": i,
            "t": args.t,
            "d": args.d,
            "seed": args.seed,
            "graph": g.to_dict(),
            "algebraic": res.algebraic,
            "combinatorial": res.combinatorial,
            "agree": res.agree,
            "error_bound": res.bound,
        }
        if not in_range:
            line["range"] = "outside proved range"
        lines.append(line)
    summary = {
        "command": "sweep",
        "summary": True,
        "t": args.t,
        "d": args.d,
        "seed": args.seed,
        "count": args.count,
        "agreements": agreements,
        "agreement_rate": agreements / args.count if args.count else 1.0,
        "max_error_bound": worst,
        "range": "proved" if in_range else "outside proved range",
    }
    lines.append(summary)
    code = EXIT_OK if agreements == args.count or not in_range else EXIT_DISAGREE
    return lines, code


def cmd_gen(args):
    if args.vertices < 1:
        raise InputError("--vertices must be at least 1")
    if args.loops_per_vertex < 0 or args.d < 1:
        raise InputError("--loops-per-vertex must be >= 0 and --d >= 1")
    rs = RandomSource(args.seed)
    if args.kind == "random":
        g = random_looped_graph(rs, args.vertices, args.edge_prob, args.loops_per_vertex, args.loops_per_vertex)
    elif args.kind == "zero-ext-chain":
        g = zero_extension_chain(rs, args.d, args.vertices)
    else:
        g = one_extension_chain(rs, args.d, args.vertices)
    if args.kind != "random" and args.loops_per_vertex:
        g = add_uniform_loops(g, args.loops_per_vertex)
    text = g.dumps() + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return None, EXIT_OK


def _default_seed():
    env = os.environ.get("RIGIDBAR_SEED")
    try:
        return int(env) if env is not None else 0
    except ValueError:
        return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="rigidbar", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log ranks and error bounds to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="log ranks and error bounds to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def randomized(p):
        p.add_argument("--seed", type=int, default=_default_seed(), help="default: $RIGIDBAR_SEED or 0")
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        p.add_argument("--prime", type=int, default=DEFAULT_PRIME)

    p = sub.add_parser("check", parents=[common], help="independence and rigidity of one graph")
    p.add_argument("graph")
    p.add_argument("--d", "-d", type=int, required=True)
    p.add_argument("--mode", choices=["algebraic", "combinatorial", "both"], default="both")
    randomized(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sparsity", parents=[common], help="pebble-game (k,0)-sparsity verdict")
    p.add_argument("graph")
    p.add_argument("--k", "-k", type=int, required=True)
    p.set_defaults(func=cmd_sparsity)

    p = sub.add_parser("motions", parents=[common], help="infinitesimal motion basis at a random rational point")
    p.add_argument("graph")
    p.add_argument("--d", "-d", type=int, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_motions)

    p = sub.add_parser("circuit", parents=[common], help="extract a rigidity-matroid circuit")
    p.add_argument("graph")
    p.add_argument("--d", "-d", type=int, required=True)
    randomized(p)
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("sweep", parents=[common], help="cross-validate tight spanning subgraphs against rigidity of G^[d-t]")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-vertices", type=int, default=7)
    p.add_argument("--allow-open-range", action="store_true")
    randomized(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen", parents=[common], help="emit a graph in JSON")
    p.add_argument("--kind", choices=["random", "zero-ext-chain", "one-ext-chain"], default="random")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--loops-per-vertex", type=int, default=0)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    start = time.perf_counter()
    try:
        result, code = args.func(args)
    except InputError as exc:
        print(f"rigidbar: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    wall = round(time.perf_counter() - start, 6)
    if isinstance(result, list):
        for line in result:
            if line.get("summary"):
                line["wall_time"] = wall
            print(json.dumps(line))
    elif result is not None:
        result["wall_time"] = wall
        print(json.dumps(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
