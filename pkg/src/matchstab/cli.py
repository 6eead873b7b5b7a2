"""Command-line interface: run the solvers on instance files, emit certified
JSON result documents, and re-verify such documents with pure arithmetic.

Every numeric value in a result document is an exact fraction string; counts
are plain integers. Identical inputs produce byte-identical output (timing is
only emitted under --timing for that reason).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import oracle as oracle_mod
from .cycles import AugmentationEvent, FrustrationEvent, reduce_cycles
from .errors import (
    MatchingRequired,
    MatchstabError,
    ParseError,
    UnknownCommand,
)
from .graph import (
    FractionalVertexCover,
    Matching,
    WeightedGraph,
    decompose,
    tight_edges,
)
from .instance import Instance, parse_instance
from .lp import solve_fractional
from .mstab import INFEASIBLE, m_vertex_stabilizer
from .stabilizers import edge_stabilizer_approx, min_vertex_stabilizer

RUN_COMMANDS = (
    "solve-fractional",
    "min-cycles",
    "stabilize-vertices",
    "stabilize-edges",
    "m-stabilize",
    "check-stability",
    "gamma",
)
ORACLE_SUBCOMMANDS = (
    "nu",
    "nu-f",
    "gamma",
    "stable",
    "min-vertex-stabilizer",
    "min-edge-stabilizer",
    "min-m-stabilizer",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse API
        if "invalid choice" in message:
            raise UnknownCommand(message)
        raise ParseError(message)


def _frac(x) -> str:
    return str(Fraction(x))


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _labels(graph: WeightedGraph, vertices) -> list[str]:
    return [graph.label_of(v) for v in sorted(vertices)]


def _pairs(graph: WeightedGraph, matching: Matching) -> list[list[str]]:
    return [
        [graph.label_of(u), graph.label_of(v)] for u, v in matching.sorted_pairs()
    ]


def _x_entries(graph: WeightedGraph, values) -> list[dict[str, str]]:
    return [
        {"u": graph.label_of(u), "v": graph.label_of(v), "x": _frac(x)}
        for (u, v, _w), x in zip(graph.edges, values)
        if x != 0
    ]


def _cover_doc(graph: WeightedGraph, values: dict[int, Fraction]) -> dict[str, str]:
    return {graph.label_of(v): _frac(values[v]) for v in sorted(values)}


def _cycles_doc(graph: WeightedGraph, cycles) -> list[list[str]]:
    return [[graph.label_of(v) for v in cycle] for cycle in cycles]


def _event_doc(graph: WeightedGraph, event) -> dict[str, Any]:
    if isinstance(event, AugmentationEvent):
        return {
            "event": event.kind,
            "cycles": _cycles_doc(graph, event.cycles),
            "rounded_at": [graph.label_of(v) for v in event.rounded_at],
            "path": [graph.label_of(v) for v in event.path],
        }
    assert isinstance(event, FrustrationEvent)
    return {
        "event": "frustrated_tree",
        "cycles": _cycles_doc(graph, [event.root_cycle]),
        "deleted_vertices": [graph.label_of(v) for v in event.deleted_vertices],
    }


def _run_command(command: str, instance: Instance, path: str) -> tuple[dict, int]:
    graph = instance.graph
    outputs: dict[str, Any] = {}
    certificates: dict[str, Any] = {}
    exit_code = 0

    if command == "solve-fractional":
        bfm, cover = solve_fractional(graph)
        outputs = {
            "nu_f": _frac(bfm.weight),
            "x": _x_entries(graph, bfm.values),
            "matched": _pairs(graph, bfm.matched),
            "odd_cycles": _cycles_doc(graph, bfm.odd_cycles),
        }
        certificates = {
            "cover": _cover_doc(graph, dict(enumerate(cover.values))),
        }
    elif command in ("min-cycles", "gamma"):
        result = reduce_cycles(graph)
        if command == "gamma":
            outputs = {"gamma": result.gamma}
        else:
            outputs = {
                "gamma": result.gamma,
                "nu_f": _frac(result.weight),
                "x": _x_entries(graph, result.solution.values),
                "matched": _pairs(graph, result.solution.matched),
                "odd_cycles": _cycles_doc(graph, result.solution.odd_cycles),
            }
        certificates = {
            "x": _x_entries(graph, result.solution.values),
            "cover": _cover_doc(graph, dict(enumerate(result.cover.values))),
            "events": [_event_doc(graph, e) for e in result.events],
        }
    elif command == "stabilize-vertices":
        result = min_vertex_stabilizer(graph)
        outputs = {
            "S": _labels(graph, result.removed),
            "gamma": result.gamma,
            "nu_before": _frac(result.nu_before) if result.nu_before is not None else None,
            "nu_after": _frac(result.nu_after),
        }
        certificates = {
            "surviving_matching": _pairs(graph, result.surviving_matching),
            "surviving_cover": _cover_doc(graph, result.surviving_cover),
        }
    elif command == "stabilize-edges":
        result = edge_stabilizer_approx(graph)
        outputs = {
            "F": [
                [graph.label_of(graph.edges[i][0]), graph.label_of(graph.edges[i][1])]
                for i in result.removed_edges
            ],
            "size": len(result.removed_edges),
            "gamma": result.gamma,
            "lower_bound": result.lower_bound,
            "upper_bound": result.upper_bound,
        }
        certificates = {
            "S": _labels(graph, result.vertex_result.removed),
            "surviving_matching": _pairs(graph, result.vertex_result.surviving_matching),
            "surviving_cover": _cover_doc(graph, result.vertex_result.surviving_cover),
        }
    elif command == "m-stabilize":
        if instance.matching is None:
            raise MatchingRequired(f'{path}: m-stabilize needs a "matching" field')
        result = m_vertex_stabilizer(graph, instance.matching)
        outputs = {
            "status": result.status,
            "S": _labels(graph, result.removed),
            "S1": _labels(graph, result.first_phase),
            "S2": _labels(graph, result.second_phase),
            "w_M": _frac(result.matching_weight),
            "residual_nu_f": _frac(result.residual_nu_f),
        }
        certificates = {
            "diagnostics": [
                {
                    "reason": reason,
                    "vertex": graph.label_of(u),
                    "other": graph.label_of(v) if v is not None else None,
                }
                for reason, u, v in result.diagnostics
            ],
        }
        if result.residual_cover is not None:
            certificates["residual_cover"] = _cover_doc(graph, result.residual_cover)
        if result.status == INFEASIBLE:
            exit_code = 2
    elif command == "check-stability":
        nu, witness = oracle_mod.exact_nu(graph)
        nu_f_value = oracle_mod.exact_nu_f(graph)
        bfm, cover = solve_fractional(graph)
        outputs = {
            "stable": nu == nu_f_value,
            "nu": _frac(nu),
            "nu_f": _frac(nu_f_value),
        }
        certificates = {
            "max_matching": _pairs(graph, witness),
            "x": _x_entries(graph, bfm.values),
            "cover": _cover_doc(graph, dict(enumerate(cover.values))),
        }
    else:  # pragma: no cover - guarded by the parser
        raise UnknownCommand(command)

    doc = {
        "command": command,
        "instance_sha256": _sha256(path),
        "outputs": outputs,
        "certificates": certificates,
    }
    return doc, exit_code


def _run_oracle(sub: str, instance: Instance, path: str) -> tuple[dict, int]:
    graph = instance.graph
    outputs: dict[str, Any] = {}
    if sub == "nu":
        value, witness = oracle_mod.exact_nu(graph)
        outputs = {"nu": _frac(value), "matching": _pairs(graph, witness)}
    elif sub == "nu-f":
        outputs = {"nu_f": _frac(oracle_mod.exact_nu_f(graph))}
    elif sub == "gamma":
        outputs = {"gamma": oracle_mod.brute_gamma(graph)}
    elif sub == "stable":
        outputs = {"stable": oracle_mod.is_stable(graph)}
    elif sub == "min-vertex-stabilizer":
        subset = oracle_mod.brute_min_vertex_stabilizer(graph)
        outputs = {"S": _labels(graph, subset), "size": len(subset)}
    elif sub == "min-edge-stabilizer":
        subset = oracle_mod.brute_min_edge_stabilizer(graph)
        outputs = {
            "F": [
                [graph.label_of(graph.edges[i][0]), graph.label_of(graph.edges[i][1])]
                for i in sorted(subset)
            ],
            "size": len(subset),
        }
    elif sub == "min-m-stabilizer":
        if instance.matching is None:
            raise MatchingRequired(f'{path}: min-m-stabilizer needs a "matching" field')
        result = oracle_mod.brute_min_m_stabilizer(graph, instance.matching)
        if result == oracle_mod.INFEASIBLE:
            outputs = {"status": "infeasible"}
        else:
            outputs = {"status": "feasible", "S": _labels(graph, result)}
    else:  # pragma: no cover - guarded by the parser
        raise UnknownCommand(sub)
    doc = {
        "command": f"oracle {sub}",
        "instance_sha256": _sha256(path),
        "outputs": outputs,
        "certificates": {},
    }
    return doc, 0


# ---------------------------------------------------------------------------
# verify: re-check certificates using only graph-core arithmetic


def _vector_from_entries(graph: WeightedGraph, entries) -> list[Fraction]:
    values = [Fraction(0)] * graph.m
    index = {graph.label_of(v): v for v in range(graph.n)}
    for entry in entries:
        idx = graph.edge_index(index[entry["u"]], index[entry["v"]])
        values[idx] = Fraction(entry["x"])
    return values


def _cover_from_doc(graph: WeightedGraph, doc: dict[str, str]) -> dict[int, Fraction]:
    index = {graph.label_of(v): v for v in range(graph.n)}
    return {index[label]: Fraction(val) for label, val in doc.items()}


def _check_optimal_pair_doc(graph, x_entries, cover_entries, checks) -> None:
    values = _vector_from_entries(graph, x_entries)
    bfm = decompose(graph, values)
    checks.append(("x_is_basic_feasible", True))
    cover_map = _cover_from_doc(graph, cover_entries)
    cover = FractionalVertexCover(tuple(cover_map[v] for v in range(graph.n)))
    tight = tight_edges(graph, cover)  # raises if infeasible
    checks.append(("cover_is_feasible", True))
    checks.append(("strong_duality", bfm.weight == cover.total))
    slack_ok = all(i in tight for i in bfm.support) and all(
        cover.values[v] == 0 or bfm.vertex_load(v) == 1 for v in range(graph.n)
    )
    checks.append(("complementary_slackness", slack_ok))


def _check_stable_subgraph_doc(
    graph: WeightedGraph,
    removed_vertices: set[int],
    removed_edge_pairs: Optional[set[tuple[int, int]]],
    matching_pairs,
    cover_entries,
    checks,
) -> None:
    """Certify stability of G minus vertices (or minus an edge set).

    A matching of the residual graph and a residual cover with the same total
    prove nu = tau_f there, by weak duality.
    """
    index = {graph.label_of(v): v for v in range(graph.n)}
    pairs = [(index[a], index[b]) for a, b in matching_pairs]
    matching = Matching.from_pairs(pairs)
    cover_map = _cover_from_doc(graph, cover_entries)
    in_residual = [
        v for v in range(graph.n) if v not in removed_vertices
    ]
    ok_edges = True
    for u, v in pairs:
        if u in removed_vertices or v in removed_vertices or not graph.has_edge(u, v):
            ok_edges = False
        if removed_edge_pairs and (min(u, v), max(u, v)) in removed_edge_pairs:
            ok_edges = False
    checks.append(("matching_lives_in_residual", ok_edges))
    # cover must dominate every surviving edge
    full = {v: cover_map.get(v, Fraction(0)) for v in range(graph.n)}
    feasible = True
    for u, v, w in graph.edges:
        if u in removed_vertices or v in removed_vertices:
            continue
        if removed_edge_pairs and (u, v) in removed_edge_pairs:
            continue
        if full[u] + full[v] < w:
            feasible = False
    checks.append(("cover_feasible_on_residual", feasible))
    total = sum((cover_map[v] for v in cover_map), start=Fraction(0))
    checks.append(("matching_weight_equals_cover", matching.weight(graph) == total))
    checks.append(
        ("cover_only_on_residual", set(cover_map) <= set(in_residual))
    )


def _run_verify(instance: Instance, result_doc: dict) -> tuple[dict, int]:
    try:
        return _run_verify_inner(instance, result_doc)
    except MatchstabError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed result document: {exc!r}") from exc


def _run_verify_inner(instance: Instance, result_doc: dict) -> tuple[dict, int]:
    graph = instance.graph
    command = result_doc.get("command", "")
    certificates = result_doc.get("certificates", {})
    outputs = result_doc.get("outputs", {})
    checks: list[tuple[str, bool]] = []
    index = {graph.label_of(v): v for v in range(graph.n)}

    if command == "solve-fractional":
        _check_optimal_pair_doc(graph, outputs["x"], certificates["cover"], checks)
    elif command in ("min-cycles", "gamma"):
        _check_optimal_pair_doc(graph, certificates["x"], certificates["cover"], checks)
        values = _vector_from_entries(graph, certificates["x"])
        bfm = decompose(graph, values)
        checks.append(("gamma_matches_support", outputs["gamma"] == len(bfm.odd_cycles)))
    elif command == "stabilize-vertices":
        removed = {index[s] for s in outputs["S"]}
        _check_stable_subgraph_doc(
            graph,
            removed,
            None,
            certificates["surviving_matching"],
            certificates["surviving_cover"],
            checks,
        )
    elif command == "stabilize-edges":
        removed_edges = {
            (min(index[a], index[b]), max(index[a], index[b])) for a, b in outputs["F"]
        }
        removed = {index[s] for s in certificates["S"]}
        # deleting F isolates S, so certify on G minus F with the cover extended by 0
        _check_stable_subgraph_doc(
            graph,
            set(),
            removed_edges,
            certificates["surviving_matching"],
            certificates["surviving_cover"],
            checks,
        )
        isolates = all(
            (min(graph.edges[i][0], graph.edges[i][1]), max(graph.edges[i][0], graph.edges[i][1]))
            in removed_edges
            for v in removed
            for i in graph.incident_edges(v)
        )
        checks.append(("F_isolates_S", isolates))
    elif command == "m-stabilize":
        if outputs["status"] == "feasible":
            if instance.matching is None:
                raise MatchingRequired("verifying m-stabilize needs the instance matching")
            removed = {index[s] for s in outputs["S"]}
            _check_stable_subgraph_doc(
                graph,
                removed,
                None,
                [[graph.label_of(u), graph.label_of(v)] for u, v in instance.matching.sorted_pairs()],
                certificates["residual_cover"],
                checks,
            )
        else:
            checks.append(("infeasible_reported", True))
    elif command == "check-stability":
        _check_optimal_pair_doc(graph, certificates["x"], certificates["cover"], checks)
        pairs = [(index[a], index[b]) for a, b in certificates["max_matching"]]
        witness = Matching.from_pairs(pairs)
        checks.append(("witness_is_matching", witness.is_matching_in(graph)))
        cover_map = _cover_from_doc(graph, certificates["cover"])
        total = sum(cover_map.values(), start=Fraction(0))
        if outputs["stable"]:
            checks.append(("nu_equals_tau_f", witness.weight(graph) == total))
        else:
            checks.append(("gap_witnessed", witness.weight(graph) < total))
    else:
        raise ParseError(f"verify does not support command {command!r}")

    verified = all(ok for _name, ok in checks)
    doc = {
        "command": "verify",
        "verified_command": command,
        "verified": verified,
        "checks": [{"name": name, "ok": ok} for name, ok in checks],
    }
    return doc, 0 if verified else 1


# ---------------------------------------------------------------------------
# selftest: compact randomized cross-checks with a fixed seed


def _random_graph(rng, n_max=7, weight_max=5) -> WeightedGraph:
    import itertools as it

    n = rng.randint(2, n_max)
    possible = list(it.combinations(range(n), 2))
    m = rng.randint(0, min(len(possible), n + 3))
    edges = [(u, v, rng.randint(1, weight_max)) for u, v in rng.sample(possible, m)]
    return WeightedGraph.from_edges(n, edges)


def _random_matching(rng, graph: WeightedGraph) -> Matching:
    pairs = []
    used: set[int] = set()
    shuffled = list(graph.edges)
    rng.shuffle(shuffled)
    for u, v, _w in shuffled:
        if u not in used and v not in used and rng.random() < 0.5:
            pairs.append((u, v))
            used.update((u, v))
    return Matching.from_pairs(pairs)


def _run_selftest(seed: int) -> int:
    import random

    from .walks import optimal_walks

    rng = random.Random(seed)
    failures = 0

    def report(name: str, ok: bool, detail: str) -> None:
        nonlocal failures
        print(f"selftest {name}: {'ok' if ok else 'FAIL'} ({detail})")
        if not ok:
            failures += 1

    ok = True
    for _ in range(20):
        g = _random_graph(rng)
        result = reduce_cycles(g)
        if result.gamma != oracle_mod.brute_gamma(g):
            ok = False
        if result.weight != oracle_mod.exact_nu_f(g):
            ok = False
    report("min-cycles-vs-oracle", ok, "20 random graphs")

    ok = True
    for _ in range(12):
        g = _random_graph(rng)
        res = min_vertex_stabilizer(g)
        if len(res.removed) != len(oracle_mod.brute_min_vertex_stabilizer(g)):
            ok = False
        rest, _map = g.delete_vertices(res.removed)
        if not oracle_mod.is_stable(rest):
            ok = False
    report("vertex-stabilizer-vs-oracle", ok, "12 random graphs")

    ok = True
    for _ in range(12):
        g = _random_graph(rng, n_max=6)
        matching = _random_matching(rng, g)
        s = rng.randrange(g.n)
        k = rng.randint(0, 6)
        tables = optimal_walks(g, matching, s, k)
        brute = oracle_mod.optimal_walk_values(g, matching, s, k)
        for v in range(g.n):
            expected = brute[k][v]
            got = tables.y2[v] if matching.covers(v) else tables.y1[v]
            if expected != got:
                ok = False
    report("walk-dp-vs-enumeration", ok, "12 random runs")

    ok = True
    for _ in range(8):
        g = _random_graph(rng)
        matching = _random_matching(rng, g)
        res = m_vertex_stabilizer(g, matching)
        brute = oracle_mod.brute_min_m_stabilizer(g, matching)
        if brute == oracle_mod.INFEASIBLE:
            if res.status != INFEASIBLE:
                ok = False
        else:
            if res.status != "feasible" or len(res.removed) > 2 * len(brute):
                ok = False
    report("m-stabilizer-vs-oracle", ok, "8 random runs")

    print(f"selftest: {'PASS' if failures == 0 else 'FAIL'}")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="matchstab", description=__doc__)
    parser.add_argument("--timing", action="store_true", help="append wall-clock timing")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for batch runs")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in RUN_COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("instances", nargs="+")
    p = sub.add_parser("oracle")
    p.add_argument("oracle_command", choices=ORACLE_SUBCOMMANDS)
    p.add_argument("instances", nargs="+")
    p = sub.add_parser("verify")
    p.add_argument("instance")
    p.add_argument("--result", required=True, help="result document to re-check")
    p = sub.add_parser("selftest")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load_instance(path: str) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return parse_instance(text)


def _emit(doc: dict, timing: Optional[float], compact: bool) -> None:
    if timing is not None:
        doc = dict(doc)
        doc["timing_seconds"] = timing
    if compact:
        sys.stdout.write(json.dumps(doc, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def main(argv: Optional[list[str]] = None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _build_parser().parse_args(args_list)
        if args.command == "selftest":
            return _run_selftest(args.seed)
        if args.command == "verify":
            instance = _load_instance(args.instance)
            try:
                result_doc = json.loads(Path(args.result).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ParseError(f"{args.result}: {exc}") from exc
            doc, code = _run_verify(instance, result_doc)
            _emit(doc, None, compact=False)
            return code

        def run_one(path: str) -> tuple[dict, int, float]:
            started = time.monotonic()
            instance = _load_instance(path)
            if args.command == "oracle":
                doc, code = _run_oracle(args.oracle_command, instance, path)
            else:
                doc, code = _run_command(args.command, instance, path)
            return doc, code, time.monotonic() - started

        paths = args.instances
        if len(paths) == 1:
            doc, code, elapsed = run_one(paths[0])
            _emit(doc, elapsed if args.timing else None, compact=False)
            return code
        workers = max(1, args.jobs)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_one, paths))
        final = 0
        for doc, code, elapsed in results:
            _emit(doc, elapsed if args.timing else None, compact=True)
            final = max(final, code)
        return final
    except MatchstabError as exc:
        print(f"matchstab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
