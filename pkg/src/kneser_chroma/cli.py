"""Experiment harness: graph generation, solving, event-A checks, sweeps.

Exit codes are part of the interface: 0 ok, 2 input error, 3 solver timeout,
4 capacity exceeded, 5 falsification (a verified claim failed).  Every
command that takes a master seed produces byte-identical output across runs
and worker counts; per-trial work is keyed by (master_seed, trial index).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import bounds as bounds_mod
from . import seeds
from .chromatic import EXACT, Budget, chromatic_number
from .errors import CapacityError, NoWitnessFound
from .gale import (
    HemispherePartition,
    WitnessSearch,
    build_embedding,
    canonical_hemispheres,
    general_position_check,
    partition_to_json_dict,
    verify_gale_property,
    witness_to_json_dict,
)
from .graphs import (
    DEFAULT_VERTEX_CAP,
    build_kneser,
    build_schrijver,
    from_json_dict,
    sample_subgraph,
    to_canonical_json,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TIMEOUT = 3
EXIT_CAPACITY = 4
EXIT_FALSIFIED = 5

CSV_HEADER = "trial,seed,chi,status,elapsed_ms"


def _round12(x: float) -> float:
    """Floats in reports carry 12 significant digits."""
    return float(f"{x:.12g}")


def _canonical_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def worker_count() -> int:
    """Worker cap from KNESER_CHROMA_THREADS; defaults to serial."""
    raw = os.environ.get("KNESER_CHROMA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _build_family(family: str, n: int, k: int, max_vertices: int):
    if family == "kneser":
        return build_kneser(n, k, max_vertices)
    if family == "schrijver":
        return build_schrijver(n, k, max_vertices)
    raise ValueError(f"unknown family {family!r} (expected kneser or schrijver)")


# --- gen-graph ------------------------------------------------------------


def gen_graph(
    family: str,
    n: int,
    k: int,
    p: float | None = None,
    seed: int | None = None,
    max_vertices: int = DEFAULT_VERTEX_CAP,
):
    graph = _build_family(family, n, k, max_vertices)
    if p is not None:
        if seed is None:
            raise ValueError("sampling requires a seed")
        graph = sample_subgraph(graph, p, seed)
    return graph


# --- chi ------------------------------------------------------------------


def chi_report(graph, budget: Budget | None) -> dict:
    res = chromatic_number(graph, budget)
    return {
        "chi": res.chi,
        "status": res.status,
        "nodes": res.nodes_explored,
        "lower": res.lower,
        "upper": res.upper,
        "num_colors": res.chi,
        "coloring": list(res.coloring) if res.coloring is not None else None,
        "clique": list(res.clique),
    }


# --- random-chi -----------------------------------------------------------


def _random_chi_trial(args):
    parent, p, trial, master_seed, max_nodes, max_ms = args
    seed = seeds.trial_seed(master_seed, trial)
    sampled = sample_subgraph(parent, p, seed)
    budget = Budget(max_nodes=max_nodes, max_ms=max_ms)
    t0 = time.perf_counter()
    res = chromatic_number(sampled, budget)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return trial, seed, res.chi, res.status, elapsed_ms


def run_random_chi(
    family: str,
    n: int,
    k: int,
    p: float,
    trials: int,
    master_seed: int,
    ell: int | None = None,
    max_nodes: int | None = None,
    max_ms: float | None = None,
    max_vertices: int = DEFAULT_VERTEX_CAP,
    workers: int | None = None,
) -> tuple[list[tuple], dict]:
    """One row per trial plus a summary; chi values are seed-deterministic."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    parent = _build_family(family, n, k, max_vertices)
    jobs = [(parent, p, t, master_seed, max_nodes, max_ms) for t in range(trials)]
    nworkers = workers if workers is not None else worker_count()
    if nworkers > 1:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            rows = list(pool.map(_random_chi_trial, jobs, chunksize=8))
    else:
        rows = [_random_chi_trial(j) for j in jobs]
    rows.sort(key=lambda r: r[0])

    exact_rows = [r for r in rows if r[3] == EXACT]
    summary = {
        "trials": trials,
        "solved": len(exact_rows),
        "timeouts": trials - len(exact_rows),
    }
    if ell is not None:
        d, _ = bounds_mod.derived_params(n, k, ell)
        threshold = d + 1
        summary["chi_threshold"] = threshold
        if exact_rows:
            freq = sum(1 for r in exact_rows if r[2] >= threshold) / len(exact_rows)
            summary["freq_chi_ge_threshold"] = _round12(freq)
        else:
            summary["freq_chi_ge_threshold"] = None
    return rows, summary


def random_chi_csv(rows, summary, config: dict, emit_elapsed: bool) -> str:
    """CSV artifact; elapsed_ms stays empty under node budgets so that
    outputs are byte-identical across runs and worker counts."""
    lines = ["# config " + json.dumps(config, separators=(",", ":"))]
    lines.append(CSV_HEADER)
    for trial, seed, chi, status, elapsed_ms in rows:
        ms = f"{elapsed_ms:.3f}" if emit_elapsed else ""
        lines.append(f"{trial},{seed},{chi},{status},{ms}")
    lines.append("# summary " + json.dumps(summary, separators=(",", ":")))
    return "\n".join(lines) + "\n"


# --- event A --------------------------------------------------------------


@dataclass(frozen=True)
class EventAReport:
    holds: bool
    partition: HemispherePartition | None
    m_plus: tuple[int, ...]
    m_minus: tuple[int, ...]
    partitions_examined: int


class _FoundWitness(Exception):
    pass


def event_a_oracle(
    n: int,
    k: int,
    ell: int,
    p: float,
    seed: int,
    max_side: int = 128,
    max_t: int = 8,
    max_nodes: int = 10**7,
) -> EventAReport:
    """Exhaustive cross-independent-set search over canonical partitions.

    Holds iff some canonical great-sphere partition admits M+ and M- of the
    pigeonhole sizes t(S+), t(S-) drawn from the stable k-subsets strictly
    inside each side, with no sampled edge between them.  M+ candidates are
    enumerated in colex order with partial cross-edge pruning.
    """
    d, _ = bounds_mod.derived_params(n, k, ell)
    emb = build_embedding(n, k + ell)
    parent = build_schrijver(n, k)
    sampled = sample_subgraph(parent, p, seed)
    masks = [v.mask for v in sampled.vertices]
    nodes = 0
    examined = 0

    for part in canonical_hemispheres(emb):
        examined += 1
        plus, minus = part.plus_mask, part.minus_mask
        sp = [i for i, m in enumerate(masks) if m & plus == m]
        sm = [i for i, m in enumerate(masks) if m & minus == m]
        t_p = -(-len(sp) // d)
        t_m = -(-len(sm) // d)
        if len(sp) > max_side or len(sm) > max_side or t_p > max_t or t_m > max_t:
            raise CapacityError(
                f"instance too large for event-A oracle "
                f"(sides {len(sp)}/{len(sm)}, t {t_p}/{t_m})"
            )
        full_minus = (1 << len(sm)) - 1
        nb = []
        for u in sp:
            row = 0
            for j, w in enumerate(sm):
                if sampled.adj[u] >> w & 1:
                    row |= 1 << j
            nb.append(row)

        chosen: list[int] = []

        def search(need: int, cap: int, allowed: int):
            nonlocal nodes
            if allowed.bit_count() < t_m:
                return
            if need == 0:
                raise _FoundWitness
            for top in range(need - 1, cap):
                nodes += 1
                if nodes > max_nodes:
                    raise CapacityError(
                        "event-A search exceeded the node cap "
                        f"({max_nodes}); instance too large"
                    )
                nxt = allowed & ~nb[top]
                if nxt.bit_count() < t_m:
                    continue
                chosen.append(top)
                search(need - 1, top, nxt)
                chosen.pop()

        try:
            search(t_p, len(sp), full_minus)
        except _FoundWitness:
            allowed = full_minus
            for i in chosen:
                allowed &= ~nb[i]
            m_minus = []
            rem = allowed
            while rem and len(m_minus) < t_m:
                low = rem & -rem
                m_minus.append(sm[low.bit_length() - 1])
                rem ^= low
            return EventAReport(
                holds=True,
                partition=part,
                m_plus=tuple(sorted(sp[i] for i in chosen)),
                m_minus=tuple(m_minus),
                partitions_examined=examined,
            )
    return EventAReport(
        holds=False,
        partition=None,
        m_plus=(),
        m_minus=(),
        partitions_examined=examined,
    )


def event_a_json_dict(report: EventAReport) -> dict:
    out = {
        "holds": report.holds,
        "partitions_examined": report.partitions_examined,
    }
    if report.holds:
        out["witness"] = {
            "partition": partition_to_json_dict(report.partition),
            "m_plus": list(report.m_plus),
            "m_minus": list(report.m_minus),
        }
    else:
        out["witness"] = None
    return out


# --- witness --------------------------------------------------------------


def run_witness(
    n: int,
    k: int,
    ell: int,
    coloring_seed: int | None = None,
    coloring: list[int] | None = None,
    num_colors: int | None = None,
) -> dict:
    d, _ = bounds_mod.derived_params(n, k, ell)
    emb = build_embedding(n, k + ell)
    search = WitnessSearch(emb, k)
    if coloring is None:
        if coloring_seed is None:
            raise ValueError("provide either a coloring file or a coloring seed")
        coloring = [
            seeds.color_at(coloring_seed, i, d) for i in range(search.num_stable)
        ]
    elif num_colors is not None and num_colors != d:
        raise ValueError(f"coloring uses {num_colors} colors but d={d}")
    witness = search.find(coloring)
    out = witness_to_json_dict(witness)
    out["d"] = d
    out["num_stable"] = search.num_stable
    return out


# --- bounds ---------------------------------------------------------------


def bounds_report(
    n: int,
    k: int,
    ell: int | None,
    p: float,
    eps: float,
    sweep: bool = False,
    extra_ells=(),
) -> dict:
    out: dict = {"n": n, "k": k, "p": _round12(p), "eps": _round12(eps)}
    if ell is not None:
        d, t = bounds_mod.derived_params(n, k, ell)
        params = bounds_mod.TheoremParams(n=n, k=k, ell=ell, p=p, eps=eps)
        rhs = bounds_mod.condition_rhs(n, k, ell)
        chain = bounds_mod.ln_pA_bound(params)
        out.update(
            {
                "ell": ell,
                "d": d,
                "t": t,
                "rhs": _round12(rhs),
                "lhs": _round12((1.0 - eps) * p),
                "condition": bounds_mod.condition_holds(params),
                "g_decreasing": bounds_mod.g_is_decreasing(d, t, p),
                "chain": {
                    "l1": _round12(chain.l1),
                    "l2": _round12(chain.l2) if chain.conclusive else None,
                    "l3": _round12(chain.l3) if chain.conclusive else None,
                    "l4": _round12(chain.l4) if chain.conclusive else None,
                    "conclusive": chain.conclusive,
                },
            }
        )
    if sweep:
        bg = bounds_mod.best_gap(n, k, p, eps)
        out["best_gap"] = (
            {"ell": bg.ell, "gap": bg.gap, "chi_lower": bg.chi_lower}
            if bg is not None
            else None
        )
        report = bounds_mod.corollary_regime_report(n, k, p, eps, extra_ells)
        out["regime"] = [
            {
                "ell": e.ell,
                "d": e.d,
                "t": e.t,
                "rhs": _round12(e.rhs) if e.rhs is not None else None,
                "holds": e.holds,
                "conclusion": e.conclusion,
            }
            for e in report.entries
        ]
        out["certified"] = list(report.certified)
    return out


# --- gale-verify ----------------------------------------------------------


def gale_verify_report(n: int, s: int) -> dict:
    emb = build_embedding(n, s)
    ok_position = general_position_check(emb)
    counterexample = verify_gale_property(emb) if ok_position else None
    return {
        "n": n,
        "s": s,
        "d": emb.d,
        "general_position": ok_position,
        "ok": ok_position and counterexample is None,
        "counterexample": (
            partition_to_json_dict(counterexample) if counterexample else None
        ),
    }


# --- argument plumbing ----------------------------------------------------


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _merge_config(args: argparse.Namespace) -> dict:
    """Flags beat config-file entries, which beat parser defaults."""
    merged = dict(vars(args))
    path = merged.pop("config", None)
    if path:
        with open(path, encoding="utf-8") as fh:
            file_cfg = json.load(fh)
        for key, value in file_cfg.items():
            key = key.replace("-", "_")
            if merged.get(key) is None:
                merged[key] = value
    merged.pop("func", None)
    return merged


def _budget_args(cfg) -> Budget | None:
    if cfg.get("budget_nodes") is None and cfg.get("budget_ms") is None:
        return None
    return Budget(max_nodes=cfg.get("budget_nodes"), max_ms=cfg.get("budget_ms"))


def _config_echo(cfg: dict, keys) -> dict:
    return {key: cfg.get(key) for key in keys if cfg.get(key) is not None}


def _cmd_gen_graph(cfg) -> int:
    _require_json_format(cfg)
    graph = gen_graph(
        cfg["family"],
        cfg["n"],
        cfg["k"],
        p=cfg.get("p"),
        seed=cfg.get("seed"),
        max_vertices=cfg.get("max_vertices") or DEFAULT_VERTEX_CAP,
    )
    _write_out(to_canonical_json(graph), cfg.get("out"))
    return EXIT_OK


def _cmd_chi(cfg) -> int:
    _require_json_format(cfg)
    with open(cfg["input"], encoding="utf-8") as fh:
        try:
            graph = from_json_dict(json.load(fh))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ValueError(f"malformed graph file: {exc}") from exc
    report = chi_report(graph, _budget_args(cfg))
    report["config"] = _config_echo(cfg, ("input", "budget_nodes", "budget_ms"))
    _write_out(_canonical_json(report), cfg.get("out"))
    return EXIT_OK if report["status"] == EXACT else EXIT_TIMEOUT


def _require_json_format(cfg) -> None:
    if cfg.get("format") == "csv":
        raise ValueError("this command emits JSON only")


def _cmd_random_chi(cfg) -> int:
    config = _config_echo(
        cfg,
        ("family", "n", "k", "ell", "p", "trials", "seed", "budget_nodes", "budget_ms"),
    )
    rows, summary = run_random_chi(
        family=cfg["family"],
        n=cfg["n"],
        k=cfg["k"],
        p=cfg["p"],
        trials=cfg["trials"],
        master_seed=cfg["seed"],
        ell=cfg.get("ell"),
        max_nodes=cfg.get("budget_nodes"),
        max_ms=cfg.get("budget_ms"),
    )
    emit_elapsed = cfg.get("budget_ms") is not None
    if cfg.get("format") == "json":
        payload = {
            "config": config,
            "rows": [
                {
                    "trial": trial,
                    "seed": seed,
                    "chi": chi,
                    "status": status,
                    "elapsed_ms": round(ms, 3) if emit_elapsed else None,
                }
                for trial, seed, chi, status, ms in rows
            ],
            "summary": summary,
        }
        _write_out(_canonical_json(payload), cfg.get("out"))
    else:
        _write_out(random_chi_csv(rows, summary, config, emit_elapsed), cfg.get("out"))
    return EXIT_OK


def _cmd_event_a(cfg) -> int:
    _require_json_format(cfg)
    report = event_a_oracle(
        n=cfg["n"],
        k=cfg["k"],
        ell=cfg["ell"],
        p=cfg["p"],
        seed=cfg["seed"],
        max_side=cfg.get("max_side") or 128,
        max_t=cfg.get("max_t") or 8,
        max_nodes=cfg.get("max_nodes") or 10**7,
    )
    out = event_a_json_dict(report)
    out["config"] = _config_echo(cfg, ("n", "k", "ell", "p", "seed"))
    _write_out(_canonical_json(out), cfg.get("out"))
    return EXIT_OK


def _cmd_witness(cfg) -> int:
    _require_json_format(cfg)
    coloring = None
    num_colors = None
    if cfg.get("coloring_file"):
        with open(cfg["coloring_file"], encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, dict):
            # accepts both witness coloring files and chi-command output
            coloring = data.get("colors", data.get("coloring"))
            num_colors = data.get("num_colors")
        else:
            coloring = data
        if coloring is None:
            raise ValueError("coloring file carries no colors")
    out = run_witness(
        n=cfg["n"],
        k=cfg["k"],
        ell=cfg["ell"],
        coloring_seed=cfg.get("seed"),
        coloring=coloring,
        num_colors=num_colors,
    )
    out["config"] = _config_echo(cfg, ("n", "k", "ell", "seed", "coloring_file"))
    _write_out(_canonical_json(out), cfg.get("out"))
    return EXIT_OK


def _cmd_bounds(cfg) -> int:
    _require_json_format(cfg)
    out = bounds_report(
        n=cfg["n"],
        k=cfg["k"],
        ell=cfg.get("ell"),
        p=cfg["p"],
        eps=cfg["eps"],
        sweep=bool(cfg.get("sweep")),
        extra_ells=cfg.get("ells") or (),
    )
    out["config"] = _config_echo(cfg, ("n", "k", "ell", "p", "eps", "sweep"))
    _write_out(_canonical_json(out), cfg.get("out"))
    return EXIT_OK


def _cmd_gale_verify(cfg) -> int:
    _require_json_format(cfg)
    s = cfg.get("s")
    if s is None:
        if cfg.get("k") is None or cfg.get("ell") is None:
            raise ValueError("provide --s or both --k and --ell")
        s = cfg["k"] + cfg["ell"]
    out = gale_verify_report(cfg["n"], s)
    out["config"] = _config_echo(cfg, ("n", "s", "k", "ell"))
    _write_out(_canonical_json(out), cfg.get("out"))
    return EXIT_OK if out["ok"] else EXIT_FALSIFIED


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file (flags take precedence)")
    sub.add_argument("--out", help="output path (default stdout)")
    sub.add_argument(
        "--format",
        choices=("csv", "json"),
        default=None,
        help="output format where a command supports both",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kneser-chroma",
        description="Kneser/Schrijver random-subgraph chromatic experiments",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("gen-graph", help="build a graph and write canonical JSON")
    sub.add_argument("--family", required=True, choices=("kneser", "schrijver"))
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--p", type=float, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--max-vertices", type=int, default=None, dest="max_vertices")
    _add_common(sub)
    sub.set_defaults(func=_cmd_gen_graph)

    sub = subs.add_parser("chi", help="exact chromatic number of a graph file")
    sub.add_argument("input", help="graph JSON file")
    sub.add_argument("--budget-nodes", type=int, default=None, dest="budget_nodes")
    sub.add_argument("--budget-ms", type=float, default=None, dest="budget_ms")
    _add_common(sub)
    sub.set_defaults(func=_cmd_chi)

    sub = subs.add_parser("random-chi", help="chi of sampled subgraphs, CSV rows")
    sub.add_argument("--family", required=True, choices=("kneser", "schrijver"))
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--ell", type=int, default=None)
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--trials", type=int, required=True)
    sub.add_argument("--seed", type=int, required=True, help="master seed")
    sub.add_argument("--budget-nodes", type=int, default=None, dest="budget_nodes")
    sub.add_argument("--budget-ms", type=float, default=None, dest="budget_ms")
    _add_common(sub)
    sub.set_defaults(func=_cmd_random_chi)

    sub = subs.add_parser("event-a", help="exhaustive event-A oracle on one sample")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--ell", type=int, required=True)
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--seed", type=int, required=True)
    sub.add_argument("--max-side", type=int, default=None, dest="max_side")
    sub.add_argument("--max-t", type=int, default=None, dest="max_t")
    sub.add_argument("--max-nodes", type=int, default=None, dest="max_nodes")
    _add_common(sub)
    sub.set_defaults(func=_cmd_event_a)

    sub = subs.add_parser("witness", help="antipodal monochromatic witness search")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--ell", type=int, required=True)
    sub.add_argument("--seed", type=int, default=None, help="random-coloring seed")
    sub.add_argument("--coloring-file", default=None, dest="coloring_file")
    _add_common(sub)
    sub.set_defaults(func=_cmd_witness)

    sub = subs.add_parser("bounds", help="condition, chain, and gap optimizer")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--ell", type=int, default=None)
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--eps", type=float, required=True)
    sub.add_argument("--sweep", action="store_true")
    sub.add_argument("--ells", type=int, nargs="*", default=None)
    _add_common(sub)
    sub.set_defaults(func=_cmd_bounds)

    sub = subs.add_parser("gale-verify", help="hemisphere property of the embedding")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--s", type=int, default=None)
    sub.add_argument("--k", type=int, default=None)
    sub.add_argument("--ell", type=int, default=None)
    _add_common(sub)
    sub.set_defaults(func=_cmd_gale_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        return args.func(cfg)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except NoWitnessFound as exc:
        print(f"falsification: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
