import argparse
import json
import logging
import sys

import numpy as np

from src import config
from src.catalan import (CatalanSeq, catalan_reducible, commonly_reducible, cost,
                         kim_theorem_check, random_catalan, width)
from src.catalog_cache import CatalogCache
from src.config import RunConfig
from src.errors import AuditFailure, ConfigError, InvalidPair, KostkaError
from src.gale_ryser import grid_text, ryser_canonical, shape_sequence, star_matrix
from src.hardness import SubsetSumInstance, reduction_equivalence_check
from src.helper import parse_partition, parse_sequence, split_instance
from src.kgr import build_graph, fast_reducibility, find_conservative_subtree, is_connected
from src.littlewood_richardson import verify_counterexample
from src.partition_core import KostkaPair, in_kostka_cone, kostka_count, kostka_positive
from src.render import graph_to_dict, matrix_to_list, render_catalog, to_dot
from src.semigroup import (TABLE2_BASIS, TABLE2_RAYS, extremal_rays, hilbert_basis,
                           irreducibility_witness, primitive_point, width_bound_audit)

logger = logging.getLogger("kostka")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
RANKED = {"check", "ryser", "kgr", "reduce", "basis", "rays", "audit"}


class Result:
    """Exit code plus the JSON payload and the text rendering of one command."""

    def __init__(self, code, payload, text="", dot=None):
        self.code = code
        self.payload = payload
        self.text = text
        self.dot = dot


def banner(title, lines):
    rule = "=" * 60
    return "\n".join([rule, title, rule, *lines, rule])


def _pair(cfg):
    lam, mu = (parse_partition(s) for s in cfg.inputs)
    return KostkaPair(lam, mu, cfg.rank)


def cmd_check(cfg):
    lam, mu = (parse_partition(s) for s in cfg.inputs)
    member = in_kostka_cone(lam, mu, cfg.rank)
    positive = kostka_positive(lam, mu)
    payload = {"lambda": list(lam), "mu": list(mu), "rank": cfg.rank,
               "in_cone": member, "kostka_positive": positive}
    if lam.size == mu.size and lam.size <= cfg.cap_boxes:
        payload["kostka_count"] = kostka_count(lam, mu, cap=cfg.cap_boxes)
    lines = [f"{'✅' if member else '❌'} Cone membership (r={cfg.rank}): {member}",
             f"{'✅' if positive else '❌'} K_(λ,μ) > 0: {positive}"]
    if "kostka_count" in payload:
        lines.append(f"   📦 K_(λ,μ) = {payload['kostka_count']}")
    return Result(EXIT_OK if member else EXIT_NEGATIVE, payload, banner(f"({lam}; {mu})", lines))


def cmd_ryser(cfg):
    pair = _pair(cfg)
    A = ryser_canonical(pair)
    star = star_matrix(A)
    seq = shape_sequence(pair, A)
    payload = {
        "pair": pair.to_dict(),
        "matrix": matrix_to_list(A.entries),
        "star": matrix_to_list(star.entries),
        "mu_star": list(star.mu_star),
        "chain": [list(p) for p in seq.chain],
        "steps": [{"kind": s.kind.value, "shortened_from": s.shortened_from, "shortened_to": s.shortened_to,
                   "deleted": s.deleted, "shortened_column": s.shortened_column,
                   "deleted_column": s.deleted_column} for s in seq.steps],
    }
    if cfg.options.get("history"):
        payload["history"] = [matrix_to_list(m) for m in A.history]
    text = ["A(λ,μ):", A.to_text(), "", "A*(λ,μ):", star.to_text(), "",
            "shapes: " + " ⊃ ".join(str(p) for p in seq.chain)]
    text += [f"  step {i}: {s.kind.value}" for i, s in enumerate(seq.steps, 1)]
    if cfg.options.get("history"):
        for i, m in enumerate(A.history):
            text += ["", f"A^({i}):", grid_text(m)]
    return Result(EXIT_OK, payload, "\n".join(text))


def cmd_kgr(cfg):
    pair = _pair(cfg)
    G = build_graph(star_matrix(ryser_canonical(pair)))
    witness = find_conservative_subtree(G)
    payload = {"pair": pair.to_dict(), "graph": graph_to_dict(G), "connected": is_connected(G),
               "witness": witness.to_dict() if witness else None}
    lines = [f"✅ Vertices: {len(G.vertices)}", f"✅ Arcs: {len(G.arcs)}",
             f"   🔗 Connected: {payload['connected']}"]
    if witness:
        lines.append(f"✅ Conservative subtree ({witness.kind.value}), S = {set(witness.columns)}")
    else:
        lines.append("❌ No conservative subtree")
    return Result(EXIT_OK if witness else EXIT_NEGATIVE, payload, banner(str(pair), lines),
                  dot=to_dot(G, witness))


def cmd_reduce(cfg):
    pair = _pair(cfg)
    if pair.is_zero():
        raise InvalidPair("the zero pair is neither a basis element nor a sum of two nonzero pairs")
    payload = {"pair": pair.to_dict()}
    fast = fast_reducibility(pair)
    payload["fast"] = fast.to_dict() if fast else None
    common = None
    if pair.lam[0] <= cfg.cap_width:
        common = commonly_reducible(pair, cap=cfg.cap_width)
    payload["common"] = common.to_dict() if common else None
    witness = fast or common
    if witness is None and not cfg.options.get("fast_only"):
        witness = irreducibility_witness(pair, cap=cfg.cap_irreducible)
        payload["exhaustive"] = witness.to_dict() if witness else None
    reducible = witness is not None
    payload["reducible"] = None if not reducible and cfg.options.get("fast_only") else reducible
    lines = [f"{'✅' if fast else '⚠️ '} Conservative subtree: {'found' if fast else 'none'}",
             f"{'✅' if common else '⚠️ '} Common columns: {'found' if common else 'none'}"]
    if witness:
        lines += [f"✅ Reducible: {witness.bullet} + {witness.circ}"]
    elif cfg.options.get("fast_only"):
        lines += ["⚠️  Undecided without exhaustive search"]
    else:
        lines += ["❌ Irreducible (Hilbert basis element)"]
    return Result(EXIT_OK if reducible else EXIT_NEGATIVE, payload, banner(str(pair), lines))


def cmd_basis(cfg):
    r = cfg.rank
    cache = CatalogCache(cfg.fixtures)
    if cfg.options.get("recompute"):
        catalog = hilbert_basis(r, jobs=cfg.jobs, rank_cap=cfg.rank_cap)
        stored = cache.load_catalog(r)
        diff = cache.diff(stored, catalog) if stored else None
        if stored is None or cfg.options.get("save"):
            cache.save_catalog(catalog)
    else:
        catalog = cache.get_or_compute(r, jobs=cfg.jobs, rank_cap=cfg.rank_cap)
        diff = None
    published = TABLE2_BASIS.get(r)
    payload = {**catalog.to_dict(), "published_count": published, "persisted": cache.get_cache_stats()}
    if diff is not None:
        payload["diff"] = diff
    lines = [f"✅ Hilbert basis r={r}: {len(catalog)} elements",
             f"   📦 Published count: {published}", f"   🔑 sha256: {catalog.content_hash()}",
             f"   🗂️  Persisted ranks: {sorted(payload['persisted']['ranks']) or 'none'}"]
    if diff is not None and not diff["matched"]:
        lines.append(f"❌ Fixture diff: missing {diff['missing']}, unexpected {diff['unexpected']}")
    text = banner("Hilbert basis", lines) + "\n" + render_catalog(catalog.elements)
    if diff is not None and not diff["matched"]:
        raise AuditFailure(f"fixture r={r} differs: missing {diff['missing']}, unexpected {diff['unexpected']}",
                           payload)
    if published is not None and published != len(catalog):
        raise AuditFailure(f"basis r={r} has {len(catalog)} elements, expected {published}", payload)
    return Result(EXIT_OK, payload, text)


def cmd_rays(cfg):
    specs = extremal_rays(cfg.rank)
    points = [primitive_point(s) for s in specs]
    payload = {"rank": cfg.rank, "count": len(specs), "published_count": TABLE2_RAYS.get(cfg.rank),
               "rays": [{**s.to_dict(), "lambda": list(p.lam), "mu": list(p.mu)} for s, p in zip(specs, points)]}
    lines = [f"✅ Extremal rays r={cfg.rank}: {len(specs)}", f"   📦 Published count: {payload['published_count']}"]
    lines += [f"   (a={s.a}, b={s.b}, ℓ={s.ell}) -> {p}" for s, p in zip(specs, points)]
    return Result(EXIT_OK, payload, banner("Extremal rays", lines))


def cmd_audit(cfg):
    catalog = CatalogCache(cfg.fixtures).get_or_compute(cfg.rank, jobs=cfg.jobs, rank_cap=cfg.rank_cap)
    report = width_bound_audit(cfg.rank, basis=catalog, sweep_max_size=cfg.options.get("sweep_max"))
    lines = [f"✅ Basis elements checked: {report.basis_count}",
             f"   📐 Rectangle pairs at λ₁=r: {', '.join(str(e) for e in report.rectangle_elements) or 'none'}",
             f"✅ λ₁=r+1 pairs swept: {report.swept} "
             f"({report.reduced_by_basis} by basis, {report.reduced_by_search} by search)"]
    return Result(EXIT_OK, report.to_dict(), banner(f"Width bound audit r={cfg.rank}", lines))


def cmd_catalan(cfg):
    fuzz = cfg.options.get("fuzz")
    if fuzz:
        rng = np.random.default_rng(cfg.options.get("seed", 0))
        longest = cfg.options.get("max_length", 14)
        applied = 0
        for _ in range(fuzz):
            x = random_catalan(rng, int(rng.integers(2, longest + 1)))
            applied += kim_theorem_check(x).applies
        payload = {"sequences": fuzz, "cost_below_width": applied, "violations": 0}
        return Result(EXIT_OK, payload, banner("Kim theorem fuzz", [
            f"✅ {fuzz} sequences, {applied} with cost < width, no violations"]))

    x = CatalanSeq(tuple(parse_sequence(cfg.inputs[0])))
    witness = catalan_reducible(x, cap=cfg.cap_width)
    payload = {"sequence": list(x.entries), "cost": cost(x), "width": width(x), "runs": len(x.runs()),
               "witness": list(witness) if witness else None}
    if len(x) <= 20:
        payload["kim"] = kim_theorem_check(x).to_dict()
    lines = [f"   💰 cost = {payload['cost']}", f"   📏 width = {payload['width']}"]
    if witness:
        lines.append(f"✅ Reducible: {x.sublist(witness).entries} + "
                     f"{x.sublist(set(range(1, len(x) + 1)) - set(witness)).entries}")
    else:
        lines.append("❌ Not reducible")
    return Result(EXIT_OK if witness else EXIT_NEGATIVE, payload, banner("Catalan sequence", lines))


def cmd_subsetsum(cfg):
    values, target = split_instance(cfg.inputs[0])
    if values and all(a > 0 for a in values) and target > sum(values):
        payload = {"instance": {"values": sorted(values, reverse=True), "target": target},
                   "subset_sum": False, "reason": "target exceeds total"}
        return Result(EXIT_NEGATIVE, payload, "❌ Target exceeds the total: no")
    report = reduction_equivalence_check(SubsetSumInstance(tuple(values), target), cap=cfg.cap_irreducible)
    lines = [f"✅ Reduced pair (rank {report.pair.rank}): {report.pair}",
             f"   📦 Coordinates: {report.coordinates}",
             f"{'✅' if report.subset else '❌'} Subset Sum: {list(report.subset) if report.subset else 'no'}",
             f"{'✅' if report.reducible else '❌'} Reducible: {report.reducible}"]
    return Result(EXIT_OK if report.subset else EXIT_NEGATIVE, report.to_dict(), banner("Subset Sum", lines))


def cmd_lr_family(cfg):
    report = verify_counterexample(cfg.options["k"], upto=cfg.options.get("upto"), cap=cfg.cap_boxes)
    lines = [f"✅ λ = {report.triple.lam}", f"✅ μ = {report.triple.mu}", f"✅ ν = {report.triple.nu}",
             f"   c = {report.coefficient if report.coefficient is not None else 'beyond cap'}"]
    lines += [f"   k={row.k}: r={row.rank}, ν₁={row.nu1}{'  > r' if row.exceeds_rank else ''}"
              for row in report.growth]
    return Result(EXIT_OK, report.to_dict(), banner(f"LR family k={cfg.options['k']}", lines))


COMMANDS = {
    "check": cmd_check, "ryser": cmd_ryser, "kgr": cmd_kgr, "reduce": cmd_reduce, "basis": cmd_basis,
    "rays": cmd_rays, "audit": cmd_audit, "catalan": cmd_catalan, "subsetsum": cmd_subsetsum,
    "lr-family": cmd_lr_family,
}


def dispatch(cfg):
    """Run one command; returns (exit status, output text)."""
    if cfg.command in RANKED and cfg.rank is None:
        raise ConfigError(f"'{cfg.command}' needs an explicit --rank")
    if cfg.output_format == "dot" and cfg.command != "kgr":
        raise ConfigError("--format dot is only available for 'kgr'")
    result = COMMANDS[cfg.command](cfg)
    if cfg.output_format == "json":
        return result.code, json.dumps(result.payload, sort_keys=True, indent=2, ensure_ascii=False)
    if cfg.output_format == "dot":
        return result.code, result.dot
    return result.code, result.text


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=config.FORMATS, default=config.OUTPUT_FORMAT)
    common.add_argument("-r", "--rank", type=int)
    common.add_argument("--cap-boxes", type=int, default=config.CAP_BOXES)
    common.add_argument("--cap-width", type=int, default=config.CAP_WIDTH)
    common.add_argument("--fixtures", default=config.FIXTURES_DIR)
    common.add_argument("--jobs", type=int, default=config.JOBS)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="kostka", description="Kostka semigroup toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("check", "ryser", "kgr", "reduce"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("lam", metavar="LAMBDA")
        p.add_argument("mu", metavar="MU")
    sub.choices["ryser"].add_argument("--history", action="store_true")
    sub.choices["reduce"].add_argument("--fast-only", action="store_true")

    p = sub.add_parser("basis", parents=[common])
    p.add_argument("--recompute", action="store_true")
    p.add_argument("--save", action="store_true")
    sub.add_parser("rays", parents=[common])
    p = sub.add_parser("audit", parents=[common])
    p.add_argument("--sweep-max", type=int)

    p = sub.add_parser("catalan", parents=[common])
    p.add_argument("sequence", nargs="?")
    p.add_argument("--fuzz", type=int)
    p.add_argument("--max-length", type=int, default=14)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("subsetsum", parents=[common])
    p.add_argument("instance", help="a1,a2,...,ad : b")

    p = sub.add_parser("lr-family", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--upto", type=int)
    return parser


def config_from_args(args):
    inputs = ()
    if args.command in ("check", "ryser", "kgr", "reduce"):
        inputs = (args.lam, args.mu)
    elif args.command == "catalan" and args.sequence:
        inputs = (args.sequence,)
    elif args.command == "subsetsum":
        inputs = (args.instance,)
    options = {key: value for key, value in vars(args).items()
               if key in ("history", "fast_only", "recompute", "save", "sweep_max", "fuzz", "max_length",
                          "seed", "k", "upto") and value is not None}
    return RunConfig(command=args.command, output_format=args.output_format, cap_boxes=args.cap_boxes,
                     cap_width=args.cap_width, fixtures=args.fixtures, jobs=args.jobs, rank=args.rank,
                     inputs=inputs, options=options)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else config.LOG_LEVEL,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = config_from_args(args)
        if cfg.command == "catalan" and not cfg.inputs and not cfg.options.get("fuzz"):
            raise ConfigError("'catalan' needs a sequence or --fuzz N")
        logger.info("running %s", cfg.command)
        code, output = dispatch(cfg)
    except AuditFailure as e:
        print(f"❌ Internal check failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except KostkaError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    print(output)
    return code


if __name__ == '__main__':
    sys.exit(main())
