"""Command line interface.

Exit codes: 0 on success, 1 on verification failure (invalid sequence,
minor found, layout violation), 2 on malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import codec as codec_mod
from . import coarsen as coarsen_mod
from . import exact as exact_mod
from . import families as fam
from . import formats as fmt
from . import labeling as lab
from . import matrices as mx
from .trigraph import Trigraph, sequentialize, verify_sequence


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _emit(args, text_result: str, json_result: dict) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(json_result))
    else:
        print(text_result)


# -- subcommands -----------------------------------------------------------------


def cmd_verify(args) -> int:
    g = fmt.parse_graph(_read(args.graph))
    if args.parallel:
        pseq = fmt.parse_parallel(_read(args.sequence))
        from .trigraph import verify_parallel

        rep = verify_parallel(g, pseq)
    else:
        seq = fmt.parse_sequence(_read(args.sequence))
        rep = verify_sequence(g, seq)
    payload = {
        "valid": rep.valid,
        "width": rep.width,
        "error_index": rep.error_index,
        "error": rep.error,
    }
    if rep.valid:
        _emit(args, f"valid width={rep.width}", payload)
        return 0
    where = f" step={rep.error_index}" if rep.error_index is not None else ""
    _emit(args, f"invalid{where} ({rep.error})", payload)
    return 1


def cmd_tww(args) -> int:
    g = fmt.parse_graph(_read(args.graph))
    d, seq = exact_mod.tww_sequence(g, cap=args.cap)
    if args.sequence_out:
        Path(args.sequence_out).write_text(fmt.write_sequence(seq))
    _emit(args, f"tww={d}", {"tww": d})
    return 0


def cmd_census(args) -> int:
    count = exact_mod.census(args.n, args.d)
    _emit(args, f"n,d,count\n{args.n},{args.d},{count}",
          {"n": args.n, "d": args.d, "count": count})
    return 0


def cmd_gridcheck(args) -> int:
    m = mx.TriMatrix.parse(_read(args.matrix))
    if args.kind == "grid":
        witness = mx.find_t_grid(m, args.t, cap=args.cap)
    else:
        witness = mx.find_t_mixed(m, args.t, cap=args.cap)
    if witness is None:
        _emit(args, f"{args.t}-{args.kind} free", {"free": True})
        return 0
    payload = {
        "free": False,
        "row_ends": list(witness.row_ends),
        "col_ends": list(witness.col_ends),
    }
    _emit(args, f"{args.t}-{args.kind} minor at rows {witness.row_ends} cols {witness.col_ends}", payload)
    return 1


def cmd_coarsen(args) -> int:
    m = mx.TriMatrix.parse(_read(args.matrix), symmetric=True)
    params = coarsen_mod.CoarsenParams(
        d=args.d, mv_cap=args.mv_cap, ps_cap=args.ps_cap,
        large_threshold=args.large_threshold,
    )
    res = coarsen_mod.extract_parallel_sequence(m, params)
    if args.trace:
        print("round,n,pairs,fusions,mixed_value,red_number,stalled")
        for i, r in enumerate(res.rounds):
            print(f"{i},{r.n},{r.pairs},{r.fusions},{r.mixed_value},{r.red_number},{int(r.stalled)}")
    if args.sequence_out:
        Path(args.sequence_out).write_text(fmt.write_parallel(res.sequence))
    _emit(
        args,
        f"width={res.width} steps={len(res.sequence)} stalled={res.stalled}",
        {
            "width": res.width,
            "steps": len(res.sequence),
            "stalled": res.stalled,
            "membership_ok": res.membership_ok,
        },
    )
    return 0 if not res.stalled else 1


def cmd_label_build(args) -> int:
    g = fmt.parse_graph(_read(args.graph))
    pseq = fmt.parse_parallel(_read(args.sequence))
    scheme, labels = lab.build_labels(g, pseq, d=args.d)
    Path(args.out).write_bytes(fmt.write_labels(scheme, labels))
    _emit(
        args,
        f"n={scheme.n} d={scheme.d} k={scheme.k} bits_per_label={scheme.label_bits}",
        {"n": scheme.n, "d": scheme.d, "k": scheme.k, "bits": scheme.label_bits},
    )
    return 0


def cmd_label_query(args) -> int:
    scheme, labels = fmt.read_labels(_read_bytes(args.labels))
    if args.u not in labels or args.v not in labels:
        raise CliError("unknown vertex id")
    ans = lab.decode_adjacency(scheme, labels[args.u], labels[args.v])
    text = ans if isinstance(ans, int) else f"r{ans[1]}"
    _emit(args, str(text), {"answer": str(text)})
    return 0


def cmd_pack(args) -> int:
    g = fmt.parse_graph(_read(args.graph))
    if args.sequence:
        seq = fmt.parse_sequence(_read(args.sequence))
    else:
        d_found, seq = exact_mod.tww_sequence(g, cap=args.cap)
    width = verify_sequence(g, seq).width
    d = args.d if args.d is not None else width
    blob = codec_mod.codec_encode(g, seq, d=d)
    Path(args.out).write_bytes(codec_mod.write_blob(blob))
    _emit(
        args,
        f"n={blob.n} d={blob.d} payload_bits={blob.bit_length} budget_bits={blob.budget_bits}",
        {"n": blob.n, "d": blob.d, "bits": blob.bit_length, "budget": blob.budget_bits},
    )
    return 0


def cmd_unpack(args) -> int:
    blob = codec_mod.read_blob(_read_bytes(args.blob))
    g = codec_mod.codec_decode(blob)
    Path(args.out).write_text(fmt.write_graph(g))
    _emit(args, f"n={g.n} black={len(g.black_edges)} red={len(g.red_edges)}",
          {"n": g.n, "black": len(g.black_edges), "red": len(g.red_edges)})
    return 0


def cmd_layout_check(args) -> int:
    g = fmt.parse_graph(_read(args.graph))
    layout = _parse_layout(_read(args.layout))
    ok = fam.layout_check(g, layout)
    _emit(args, "valid" if ok else "invalid", {"valid": ok})
    return 0 if ok else 1


def _parse_layout(text: str) -> fam.Layout:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if len(lines) < 2:
        raise fmt.FormatError("layout needs a kind line and an order line")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("queue", "stack"):
        raise fmt.FormatError(f"bad layout header {lines[0]!r}")
    kind, t = head[0], int(head[1])
    order = tuple(int(x) for x in lines[1].split())
    parts: list[set] = [set() for _ in range(t)]
    for ln in lines[2:]:
        u, v, part = map(int, ln.split())
        if not 0 <= part < t:
            raise fmt.FormatError(f"part index {part} out of range")
        parts[part].add((min(u, v), max(u, v)))
    return fam.Layout(order, tuple(frozenset(p) for p in parts), kind)


def cmd_gen(args) -> int:
    rng_seed = args.seed
    witness = None
    ordering = None
    if args.family == "halfgraph":
        import random

        rng = random.Random(rng_seed)
        images = list(range(args.n))
        rng.shuffle(images)
        sigma = fam.Permutation(tuple(images))
        g = fam.gen_halfgraph_sandwich(args.n, sigma, cliques=not args.independent)
    elif args.family == "rook":
        g = fam.gen_rook(args.n)
    elif args.family == "lift":
        chain, wit = fam.iterated_lift(args.levels, seed=rng_seed)
        g = chain[-1]
        witness = wit
    elif args.family == "subdivision":
        so = fam.subdivision_order(args.n, args.c)
        g = so.graph
        ordering = so.order
    elif args.family == "product":
        a = fam.Trigraph.path(args.n)
        b = fam.Trigraph.complete(2)
        g = fam.strong_product(a, b)
    else:
        raise CliError(f"unknown family {args.family}")
    Path(args.out).write_text(fmt.write_graph(_normalize_ids(g)))
    if witness is not None and args.witness_out:
        Path(args.witness_out).write_text(fmt.write_parallel(witness))
    if ordering is not None and args.order_out:
        Path(args.order_out).write_text(fmt.write_ordering(ordering))
    _emit(args, f"n={g.n} m={len(g.black_edges)}", {"n": g.n, "m": len(g.black_edges)})
    return 0


def _normalize_ids(g: Trigraph) -> Trigraph:
    ids = sorted(g.vertices)
    if ids == list(range(len(ids))):
        return g
    mapping = {v: i for i, v in enumerate(ids)}
    return g.relabel(mapping)


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twinwidth",
        description="Trigraph contraction sequences, twin-width oracles, "
        "adjacency labels and graph compression.",
    )
    p.add_argument("--format", choices=["text", "json"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="verify a contraction sequence")
    sp.add_argument("graph")
    sp.add_argument("sequence")
    sp.add_argument("--parallel", action="store_true", help="sequence file is parallel blocks")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tww", help="exact twin-width of a small graph")
    sp.add_argument("graph")
    sp.add_argument("--cap", type=int, default=exact_mod.DEFAULT_CAP)
    sp.add_argument("--sequence-out")
    sp.set_defaults(func=cmd_tww)

    sp = sub.add_parser("census", help="count labeled graphs with tww <= d")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("gridcheck", help="exact t-grid / t-mixed minor search")
    sp.add_argument("matrix")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--kind", choices=["grid", "mixed"], default="grid")
    sp.add_argument("--cap", type=int, default=mx.DEFAULT_SEARCH_CAP)
    sp.set_defaults(func=cmd_gridcheck)

    sp = sub.add_parser("coarsen", help="greedy coarsening trace and parallel sequence")
    sp.add_argument("matrix")
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--mv-cap", type=int, default=4)
    sp.add_argument("--ps-cap", type=int, default=8)
    sp.add_argument("--large-threshold", type=int, default=5)
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--sequence-out")
    sp.set_defaults(func=cmd_coarsen)

    sp = sub.add_parser("label", help="adjacency labels")
    lsub = sp.add_subparsers(dest="label_command", required=True)
    lb = lsub.add_parser("build")
    lb.add_argument("graph")
    lb.add_argument("sequence", help="parallel sequence file")
    lb.add_argument("--d", type=int, default=None)
    lb.add_argument("--out", required=True)
    lb.set_defaults(func=cmd_label_build)
    lq = lsub.add_parser("query")
    lq.add_argument("labels")
    lq.add_argument("u", type=int)
    lq.add_argument("v", type=int)
    lq.set_defaults(func=cmd_label_query)

    sp = sub.add_parser("pack", help="compress a graph via a contraction sequence")
    sp.add_argument("graph")
    sp.add_argument("--sequence", help="sequence file; exact oracle when omitted")
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--cap", type=int, default=exact_mod.DEFAULT_CAP)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_pack)

    sp = sub.add_parser("unpack", help="decompress a codec blob")
    sp.add_argument("blob")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_unpack)

    sp = sub.add_parser("layout-check", help="validate a queue/stack layout")
    sp.add_argument("graph")
    sp.add_argument("layout")
    sp.set_defaults(func=cmd_layout_check)

    sp = sub.add_parser("gen", help="generate a named family")
    sp.add_argument("--family", required=True,
                    choices=["halfgraph", "rook", "lift", "subdivision", "product"])
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--levels", type=int, default=3)
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--independent", action="store_true",
                    help="halfgraph groups are independent sets")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.add_argument("--witness-out")
    sp.add_argument("--order-out")
    sp.set_defaults(func=cmd_gen)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        fmt.FormatError,
        mx.MatrixError,
        codec_mod.CodecError,
        lab.LabelingError,
        fam.FamilyError,
        exact_mod.CapExceededError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
