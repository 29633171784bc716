"""Command-line front end.

Exit codes make the tool scriptable as a decision procedure: 0 success,
1 relation absent / witness invalid, 2 usage errors.  Identical arguments
and seed produce byte-identical outputs regardless of --workers.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from .emulation import (
    EmulationWitness,
    check_emulation_naive,
    emulated_rules,
    proper_subalgebra_search,
    verify_witness,
)
from .hierarchy import classify, compute_hierarchy, export, transitive_reduction
from .render import render_diagram, write_pbm
from .rules import dual, is_affine, is_linear, mirror, rule_from_wolfram
from .words import CYCLIC, Grid, Word

CACHE_ENV = "ECA_EMULATION_CACHE"


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings for the hierarchy-scale commands."""

    kmax: int
    rules: tuple[int, ...] | None
    workers: int
    cache_dir: str | None
    seed: int
    output: str | None

    def __post_init__(self):
        if self.kmax < 1:
            raise ValueError(f"kmax {self.kmax} < 1")
        if self.workers < 1:
            raise ValueError(f"workers {self.workers} < 1")


def _wolfram(text: str) -> int:
    n = int(text)
    if not 0 <= n <= 255:
        raise argparse.ArgumentTypeError(f"Wolfram number {n} not in 0..255")
    return n


def _emit(data: bytes, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _run_config(args) -> RunConfig:
    cache_dir = getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV) or None
    return RunConfig(
        kmax=args.kmax,
        rules=tuple(args.rules) if getattr(args, "rules", None) else None,
        workers=getattr(args, "workers", 1),
        cache_dir=cache_dir,
        seed=getattr(args, "seed", 0),
        output=getattr(args, "output", None),
    )


def cmd_rule_info(args) -> int:
    r = rule_from_wolfram(args.number)
    print(f"rule {r.wolfram}")
    for i in reversed(range(8)):
        print(f"  {(i >> 2) & 1}{(i >> 1) & 1}{i & 1} -> {r.table[i]}")
    print(f"dual:          {dual(r).wolfram}")
    print(f"mirror:        {mirror(r).wolfram}")
    print(f"mirror(dual):  {mirror(dual(r)).wolfram}")
    print(f"linear:        {is_linear(r)}")
    print(f"affine:        {is_affine(r)}")
    return 0


def cmd_simulate(args) -> int:
    r = rule_from_wolfram(args.rule)
    if args.init is not None:
        cells = Word.from_text(args.init)
    else:
        rng = random.Random(args.seed)
        cells = Word(rng.getrandbits(args.width), args.width)
    diagram = render_diagram(r, Grid(cells, CYCLIC), args.steps)
    _emit(write_pbm(diagram, binary=args.binary), args.output)
    return 0


def cmd_emulate(args) -> int:
    f = rule_from_wolfram(args.f)
    g = rule_from_wolfram(args.g)
    enc = check_emulation_naive(f, g, args.k)
    if enc is None:
        print("cannot emulate")
        return 1
    witness = EmulationWitness(f, g, args.k, enc)
    text = json.dumps(witness.to_json_dict(), sort_keys=True)
    print(text)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text + "\n")
    return 0


def cmd_subalgebras(args) -> int:
    g = rule_from_wolfram(args.g)
    for f, enc in emulated_rules(g, args.k):
        print(f"f={f.wolfram} enc0={enc.enc0.text} enc1={enc.enc1.text}")
    return 0


def cmd_hierarchy(args) -> int:
    cfg = _run_config(args)
    graph = compute_hierarchy(cfg.kmax, reps=cfg.rules, workers=cfg.workers,
                              cache_dir=cfg.cache_dir)
    if args.reduce:
        graph = transitive_reduction(graph)
    _emit(export(graph, args.format), cfg.output)
    return 0


def cmd_classify(args) -> int:
    cfg = _run_config(args)
    graph = compute_hierarchy(cfg.kmax, reps=cfg.rules, workers=cfg.workers,
                              cache_dir=cfg.cache_dir)
    report = classify(graph)
    _emit((json.dumps(report.to_json_dict(), indent=1, sort_keys=True) + "\n").encode(),
          cfg.output)
    return 0


def cmd_chaos(args) -> int:
    g = rule_from_wolfram(args.g)
    for k in range(2, args.kmax + 1):
        sub = proper_subalgebra_search(g, k)
        if sub is None:
            print(f"k={k}: no proper subalgebra with >= 2 elements")
        else:
            elems = ",".join(w.text for w in sorted(sub.elements, key=lambda w: w.bits))
            print(f"k={k}: proper subalgebra of {len(sub.elements)} elements: {elems}")
    return 0


def cmd_verify(args) -> int:
    with open(args.witness, "r", encoding="ascii") as fh:
        witness = EmulationWitness.from_json_dict(json.load(fh))
    ok = verify_witness(witness, args.length, args.horizon,
                        samples=args.samples, seed=args.seed)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    g = rule_from_wolfram(args.rule)
    t0 = time.perf_counter()
    naive_found = sum(
        check_emulation_naive(rule_from_wolfram(f), g, args.k) is not None
        for f in range(256))
    t1 = time.perf_counter()
    listing = emulated_rules(g, args.k)
    t2 = time.perf_counter()
    sub_found = len({f.wolfram for f, _ in listing})
    naive_s, sub_s = t1 - t0, t2 - t1
    ratio = naive_s / sub_s if sub_s > 0 else float("inf")
    print(f"naive scan over 256 rules: {naive_s:.4f} s ({naive_found} emulated)")
    print(f"subalgebra enumeration:    {sub_s:.4f} s ({sub_found} emulated)")
    print(f"ratio: {ratio:.1f}x")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eca-emu",
        description="Decide, certify and chart emulations between elementary CA.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rule = sub.add_parser("rule", help="inspect a local rule")
    rule_sub = p_rule.add_subparsers(dest="rule_command", required=True)
    p_info = rule_sub.add_parser("info", help="table, symmetries and linearity")
    p_info.add_argument("number", type=_wolfram)
    p_info.set_defaults(func=cmd_rule_info)

    p_sim = sub.add_parser("simulate", help="space-time diagram as PBM")
    p_sim.add_argument("--rule", type=_wolfram, required=True)
    p_sim.add_argument("--width", type=int, default=64)
    p_sim.add_argument("--steps", type=int, default=64)
    p_sim.add_argument("--init", help="initial cells as a 0/1 string (cell 0 first)")
    p_sim.add_argument("--seed", type=int, default=0, help="seed for a random start")
    p_sim.add_argument("--binary", action="store_true", help="raw P4 instead of plain P1")
    p_sim.add_argument("--output", "-o")
    p_sim.set_defaults(func=cmd_simulate)

    p_emu = sub.add_parser("emulate", help="does G emulate F at supercell size K?")
    p_emu.add_argument("f", type=_wolfram)
    p_emu.add_argument("g", type=_wolfram)
    p_emu.add_argument("--k", type=int, required=True)
    p_emu.add_argument("--output", "-o", help="also write the witness JSON here")
    p_emu.set_defaults(func=cmd_emulate)

    p_sa = sub.add_parser("subalgebras", help="all rules emulated by G at size K")
    p_sa.add_argument("g", type=_wolfram)
    p_sa.add_argument("--k", type=int, required=True)
    p_sa.set_defaults(func=cmd_subalgebras)

    p_h = sub.add_parser("hierarchy", help="emulation hierarchy for sizes 1..K")
    p_h.add_argument("--kmax", type=int, required=True)
    p_h.add_argument("--rules", type=_wolfram, nargs="+",
                     help="restrict the emulators (default: all 136 representatives)")
    p_h.add_argument("--workers", type=int, default=1)
    p_h.add_argument("--cache-dir", help=f"shard cache (default: ${CACHE_ENV})")
    p_h.add_argument("--reduce", action="store_true",
                     help="transitively reduce non-self edges (rendering aid)")
    fmt = p_h.add_mutually_exclusive_group()
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--dot", dest="format", action="store_const", const="dot")
    p_h.set_defaults(format="csv")
    p_h.add_argument("--output", "-o")
    p_h.set_defaults(func=cmd_hierarchy)

    p_c = sub.add_parser("classify", help="classification report as JSON")
    p_c.add_argument("--kmax", type=int, required=True)
    p_c.add_argument("--rules", type=_wolfram, nargs="+")
    p_c.add_argument("--workers", type=int, default=1)
    p_c.add_argument("--cache-dir")
    p_c.add_argument("--output", "-o")
    p_c.set_defaults(func=cmd_classify)

    p_ch = sub.add_parser("chaos", help="proper-subalgebra search per size")
    p_ch.add_argument("g", type=_wolfram)
    p_ch.add_argument("--kmax", type=int, required=True)
    p_ch.set_defaults(func=cmd_chaos)

    p_v = sub.add_parser("verify", help="re-verify a witness file")
    p_v.add_argument("witness", help="JSON file with f, g, k, enc0, enc1")
    p_v.add_argument("--length", type=int, default=30)
    p_v.add_argument("--horizon", type=int, default=5)
    p_v.add_argument("--samples", type=int, default=100)
    p_v.add_argument("--seed", type=int, default=0)
    p_v.set_defaults(func=cmd_verify)

    p_b = sub.add_parser("bench", help="naive scan over all rules vs one enumeration")
    p_b.add_argument("--k", type=int, required=True)
    p_b.add_argument("--rule", type=_wolfram, default=110,
                     help="target rule being emulated against (default 110)")
    p_b.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        parser.exit(2, f"error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
