"""Command-line interface.

Subcommands: analyze, stable, reducible, reset, minrank, collapse,
road-color, oracle, bench, export-dot.  Automaton and graph files use the
plain text formats of the library; bench writes CSV.  A run is fully
determined by (command, input, seed): reports never contain timestamps.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from dataclasses import dataclass, field

from . import bounds, oracle
from .automaton import (Automaton, automaton_to_dot, format_automaton,
                        full_mask, mask_of, parse_automaton, set_str,
                        word_from_str, word_str)
from .errors import AutomataError, DomainError, TheoryError
from .families import (cerny, nontransitive_example, random_agw_ham,
                       random_sync_one_cluster)
from .graphs import format_graph, graph_to_dot, multigraph_of, parse_graph
from .independence import check_independent, letter_skeleton, one_cluster
from .reducibility import is_reducible_set, stability_congruence
from .road_coloring import synthesize_coloring
from .synthesis import (Certificate, collapse_stable_set,
                        collapse_stable_set_1cluster, min_rank_word,
                        reset_word, reset_word_1cluster)

BENCH_HEADER = ["id", "n", "k", "M", "t", "cert_len", "bound", "oracle_len",
                "margin"]


@dataclass
class RunConfig:
    """Everything a run depends on; (command, input, seed) fixes the output."""

    command: str
    input: str | None = None
    seed: int = 0
    cap_n: int = oracle.DEFAULT_CAP
    out: str | None = None
    emit_dot: str | None = None
    set_states: str | None = None
    words: str | None = None
    family: str | None = None
    n_range: str | None = None
    count: int = 10
    degree: int = 2
    kind: str = "automaton"
    queries: list[str] = field(default_factory=list)


def format_certificate(cert: Certificate) -> str:
    parts = [f"kind={cert.kind}", f"word={word_str(cert.word)}",
             f"len={cert.length}", f"bound_name={cert.bound_name}",
             f"bound={cert.bound:.6f}",
             f"verified={'true' if cert.verified else 'false'}"]
    if cert.fallback:
        parts.insert(5, f"fallback={cert.fallback}")
    return ", ".join(parts)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_out(config: RunConfig, text: str) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_automaton(config: RunConfig) -> Automaton:
    return parse_automaton(_read(config.input))

def _parse_set(text: str) -> int:
    try:
        return mask_of(int(part) for part in text.split(","))
    except ValueError:
        raise DomainError(f"cannot read state set {text!r}; want e.g. 1,2") from None


def _independent_set(aut: Automaton, config: RunConfig):
    if config.words:
        words = [word_from_str(part) for part in config.words.split(",")]
        return check_independent(aut, words)
    return one_cluster(aut)


def _cmd_analyze(config: RunConfig) -> int:
    aut = _load_automaton(config)
    print(f"automaton: n={aut.n} m={aut.m}")
    for x in range(aut.m):
        skel = letter_skeleton(aut, x)
        if len(skel.cycles) == 1:
            ind = one_cluster(aut, x)
            rendered = ",".join(word_str(w) for w in ind.words)
            print(f"letter {word_str((x,))}: cycles=1 k={ind.k} W={rendered}")
        else:
            print(f"letter {word_str((x,))}: cycles={len(skel.cycles)} "
                  f"(not 1-cluster)")
    return 0


def _cmd_stable(config: RunConfig) -> int:
    aut = _load_automaton(config)
    cong = stability_congruence(aut)
    print(f"classes={cong.size}")
    for i, members in enumerate(cong.classes):
        print(f"class {i}: {set_str(mask_of(members))}")
    return 0


def _cmd_reducible(config: RunConfig) -> int:
    aut = _load_automaton(config)
    if not config.set_states:
        raise DomainError("reducible needs --set, e.g. --set 1,2")
    mask = _parse_set(config.set_states)
    aut._check_mask(mask)
    word = is_reducible_set(aut, mask)
    if word is None:
        print("irreducible")
    else:
        print(f"collapsing word: {word_str(word)} (len {len(word)})")
    return 0


def _cmd_reset(config: RunConfig) -> int:
    aut = _load_automaton(config)
    if config.words:
        cert = reset_word(aut, _independent_set(aut, config))
    else:
        cert = reset_word_1cluster(aut, cap=config.cap_n)
    print(format_certificate(cert))
    return 0 if cert.verified else 1


def _cmd_minrank(config: RunConfig) -> int:
    aut = _load_automaton(config)
    t, cert = min_rank_word(aut, _independent_set(aut, config))
    print(f"minimal_rank={t}")
    print(format_certificate(cert))
    return 0 if cert.verified else 1


def _cmd_collapse(config: RunConfig) -> int:
    aut = _load_automaton(config)
    if not config.set_states:
        raise DomainError("collapse needs --set, e.g. --set 1,2")
    mask = _parse_set(config.set_states)
    if config.words:
        cert = collapse_stable_set(aut, _independent_set(aut, config), mask)
    else:
        cert = collapse_stable_set_1cluster(aut, mask)
    print(format_certificate(cert))
    return 0 if cert.verified else 1


def _cmd_road_color(config: RunConfig) -> int:
    graph = parse_graph(_read(config.input))
    coloring, cert = synthesize_coloring(graph)
    sys.stdout.write(format_automaton(coloring))
    print(f"reset_word={word_str(cert.word)}")
    print(format_certificate(cert))
    if config.emit_dot:
        with open(config.emit_dot, "w", encoding="utf-8") as handle:
            handle.write(automaton_to_dot(coloring, "coloring"))
    ok = cert.verified and bounds.within(cert.length, cert.bound)
    return 0 if ok else 1


def _cmd_oracle(config: RunConfig) -> int:
    aut = _load_automaton(config)
    queries = config.queries or ["reset"]
    fields = {}
    if "reset" in queries:
        found = oracle.shortest_reset(aut, config.cap_n)
        fields["reset_exists"] = found is not None
        if found is not None:
            fields["reset_length"], fields["reset_word"] = found
    if "rank" in queries:
        fields["min_rank"] = oracle.minimal_rank(aut, config.cap_n)
    if "m" in queries:
        ind = _independent_set(aut, config)
        fields["range_max_reducible"] = oracle.exact_M(aut, ind, config.cap_n)
    for line in oracle.OracleReport(**fields).lines():
        print(line)
    return 0


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _bench_row(instance_id: str, aut: Automaton, cert: Certificate,
               oracle_len: int | None) -> list[str]:
    params = cert.params
    return [
        instance_id,
        str(params.get("n", aut.n)),
        str(params.get("k", "")),
        str(params.get("M", "")),
        str(params.get("t", "")),
        str(cert.length),
        f"{cert.bound:.6f}",
        "" if oracle_len is None else str(oracle_len),
        f"{cert.bound - cert.length:.6f}",
    ]


def _safe_oracle_reset(aut: Automaton, cap: int) -> int | None:
    try:
        found = oracle.shortest_reset(aut, cap)
    except AutomataError:
        return None
    return None if found is None else found[0]


def _cmd_bench(config: RunConfig) -> int:
    rng = random.Random(config.seed)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    family = config.family or "cerny"

    if family == "cerny":
        sizes = _parse_range(config.n_range or "4..8")
        for n in sizes:
            aut = cerny(n)
            cert = reset_word_1cluster(aut)
            writer.writerow(_bench_row(f"cerny-{n}", aut, cert,
                                       _safe_oracle_reset(aut, config.cap_n)))
    elif family == "nontransitive4":
        aut = nontransitive_example()
        ind = check_independent(aut, [word_from_str("a"), word_from_str("aa")])
        t, cert = min_rank_word(aut, ind)
        try:
            _, oracle_len, _ = oracle.shortest_min_rank(aut, config.cap_n)
        except AutomataError:
            oracle_len = None
        writer.writerow(_bench_row("nontransitive4", aut, cert, oracle_len))
    elif family == "rand-1cluster":
        sizes = _parse_range(config.n_range or "6..12")
        for i in range(config.count):
            n = rng.choice(sizes)
            aut = random_sync_one_cluster(rng, n)
            cert = reset_word(aut, one_cluster(aut))
            writer.writerow(_bench_row(f"r1c-{i}", aut, cert,
                                       _safe_oracle_reset(aut, config.cap_n)))
    elif family == "rand-agw":
        sizes = _parse_range(config.n_range or "4..10")
        for i in range(config.count):
            n = rng.choice(sizes)
            graph = random_agw_ham(rng, n, config.degree)
            coloring, cert = synthesize_coloring(graph)
            writer.writerow(_bench_row(f"agw-{i}", coloring, cert,
                                       _safe_oracle_reset(coloring, config.cap_n)))
    else:
        raise DomainError(f"unknown family {family!r}; pick one of cerny, "
                          f"nontransitive4, rand-1cluster, rand-agw")

    _write_out(config, buffer.getvalue())
    return 0


def _cmd_export_dot(config: RunConfig) -> int:
    text = _read(config.input)
    if config.kind == "graph":
        _write_out(config, graph_to_dot(parse_graph(text)))
    else:
        _write_out(config, automaton_to_dot(parse_automaton(text)))
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "stable": _cmd_stable,
    "reducible": _cmd_reducible,
    "reset": _cmd_reset,
    "minrank": _cmd_minrank,
    "collapse": _cmd_collapse,
    "road-color": _cmd_road_color,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
    "export-dot": _cmd_export_dot,
}


def run(config: RunConfig) -> int:
    """Dispatch a configured run; returns the process exit code."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        print(f"unknown command {config.command!r}", file=sys.stderr)
        return 2
    try:
        return handler(config)
    except TheoryError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except AutomataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synchro",
        description="Certified reset words, minimal-rank words and "
                    "synchronizing road colorings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", help="input file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap-n", type=int, default=oracle.DEFAULT_CAP,
                       help="size cap for exhaustive searches")
        p.add_argument("--out", help="write the report to a file")
        return p

    add("analyze", "per-letter cycle structure and induced word sets")
    add("stable", "print the stability congruence classes")
    p = add("reducible", "shortest collapse of a state set, if any")
    p.add_argument("--set", dest="set_states", required=True,
                   help="comma-separated states, e.g. 1,2")
    p = add("reset", "synthesize a certified reset word")
    p.add_argument("--words", help="independent set, e.g. a,aa (default: "
                                   "powers of a single-cycle letter)")
    p = add("minrank", "synthesize a certified word of minimal rank")
    p.add_argument("--words")
    p = add("collapse", "collapse a stable set with a certified word")
    p.add_argument("--set", dest="set_states", required=True)
    p.add_argument("--words")
    p = add("road-color", "synchronizing coloring of a graph file")
    p.add_argument("--emit-dot", dest="emit_dot",
                   help="also write the coloring as DOT")
    p = add("oracle", "exhaustive ground-truth searches")
    p.add_argument("--reset", action="append_const", dest="queries",
                   const="reset", help="shortest reset word")
    p.add_argument("--rank", action="append_const", dest="queries",
                   const="rank", help="minimal rank")
    p.add_argument("--m", dest="m_words", metavar="WORDS",
                   help="max reducible cardinality for this independent set")
    p = add("bench", "emit a CSV benchmark table", needs_input=False)
    p.add_argument("--family", default="cerny",
                   choices=["cerny", "nontransitive4", "rand-1cluster",
                            "rand-agw"])
    p.add_argument("--n", dest="n_range", help="size or range, e.g. 4..8")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--d", dest="degree", type=int, default=2)
    p = add("export-dot", "render an input file as DOT")
    p.add_argument("--kind", choices=["automaton", "graph"],
                   default="automaton")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    for name in ("input", "seed", "cap_n", "out", "emit_dot", "set_states",
                 "words", "family", "n_range", "count", "degree", "kind"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(config, name, getattr(args, name))
    if getattr(args, "queries", None):
        config.queries = list(args.queries)
    if getattr(args, "m_words", None):
        config.queries = (config.queries or []) + ["m"]
        config.words = args.m_words
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
