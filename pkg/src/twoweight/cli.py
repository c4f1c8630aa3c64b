"""Command-line entry point: ``twoweight <subcommand> --p P --h H [--d D]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .codes import DEFAULT_BUDGET, BudgetExceeded, CodeSpec, build_code, distribution_report
from .graphs import (
    DEFAULT_SEED,
    DEFAULT_VERTEX_BUDGET,
    NotProjective,
    NotStronglyRegular,
    TrivialGraph,
    build_coset_graph,
    cover_check,
    latin_square_classify,
    predicted_srg,
    verify_srg,
    write_edgelist,
)
from .pipeline import DISCREPANCY, FAIL, verify_all
from .puncture import (
    dependence_classes,
    griesmer_check,
    mdr_check,
    projectivity_check,
    puncture,
    punctured_distribution,
)
from .ring import is_prime, ring_init

SUBCOMMANDS = ("ring", "weights", "puncture", "graph", "cover", "verify-all")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    p: list[int] = field(default_factory=list)
    h: list[int] = field(default_factory=list)
    d: list[int] = field(default_factory=list)
    format: str = "paper"
    budget: int = DEFAULT_BUDGET
    override_budget: bool = False
    use_orbits: bool = False
    workers: int = 1
    experimental: bool = False
    strict: bool = False
    seed: int = DEFAULT_SEED
    vertex_budget: int = DEFAULT_VERTEX_BUDGET
    mode: str = "base"
    h_low: int | None = None
    export: tuple[str, str] | None = None
    out: str | None = None

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        single = self.subcommand != "verify-all"
        if single and (len(self.p) != 1 or len(self.h) > 1 or len(self.d) > 1):
            raise ConfigError(f"{self.subcommand} takes exactly one --p and at most one --h/--d")
        if self.subcommand == "cover" and self.h_low is None and not self.h:
            raise ConfigError("cover needs --h-low (or --h)")
        if single and not self.h and self.subcommand != "cover":
            raise ConfigError(f"{self.subcommand} needs --h")
        for p in self.p:
            if not is_prime(p):
                raise ConfigError(f"p={p} is not prime")
            if p == 2 and not self.experimental:
                raise ConfigError("p=2 requires --experimental")
        for h in self.h:
            if h < 1:
                raise ConfigError(f"h={h} must be >= 1")
        if self.workers < 1:
            raise ConfigError("--workers must be >= 1")
        if single:
            for d in self.d:
                if (self.p[0] ** 2 - 1) % d:
                    raise ConfigError(f"d={d} does not divide p^2-1={self.p[0] ** 2 - 1}")

    @property
    def spec(self) -> CodeSpec:
        h = self.h[0] if self.h else self.h_low
        return CodeSpec(self.p[0], h, self.d[0] if self.d else 1)


class Output:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def text(self, line: str) -> None:
        if self.fmt == "paper":
            print(line, file=self.stream)

    def record(self, rec: dict) -> None:
        if self.fmt == "structured":
            print(json.dumps(rec, sort_keys=True), file=self.stream)


def cmd_ring(cfg: RunConfig, out: Output) -> int:
    ring = ring_init(cfg.p[0], cfg.h[0])
    info = ring.info()
    out.record({"kind": "ring", **info})
    for k, v in info.items():
        out.text(f"{k}: {v}")
    return 0


def cmd_weights(cfg: RunConfig, out: Output) -> int:
    spec = cfg.spec
    rep = distribution_report(
        spec, use_orbits=cfg.use_orbits, budget=cfg.budget, override=cfg.override_budget, workers=cfg.workers
    )
    out.record({"kind": "weights", **rep.record()})
    if spec.degenerate:
        out.text(f"# degenerate d: m = p^2-1 = {spec.m}; closed forms do not apply")
    out.text(rep.enumerated.paper())
    mismatch = False
    for name, v in rep.verdicts.items():
        if v.predicted is None:
            continue
        verdict = "match" if v.matches else "MISMATCH " + ", ".join(f"w={w}: {a} vs {b}" for w, a, b in v.differences)
        mismatch |= not v.matches
        out.text(f"# {name}: {v.predicted.paper()} {verdict}")
    if not rep.invariants_ok:
        out.text("# invariant failure")
        return 1
    return 2 if (cfg.strict and mismatch) else 0


def cmd_puncture(cfg: RunConfig, out: Output) -> int:
    spec = cfg.spec
    G = build_code(spec)
    part = dependence_classes(G, spec)
    pc = puncture(G, spec)
    dist = punctured_distribution(pc, workers=cfg.workers)
    proj = projectivity_check(pc.generator, pc.q, spec.p)
    rec = {
        "kind": "puncture",
        "p": spec.p,
        "h": spec.h,
        "d": spec.d,
        "m": spec.m,
        "classes": part.count,
        "class_size": part.class_size,
        "representatives": list(pc.representative_labels),
        "length": pc.n,
        "distribution": [list(e) for e in dist.entries],
        "projective": proj.projective,
    }
    out.text(f"classes: {part.count} of size {part.class_size}; representatives {list(pc.representative_labels)}")
    out.text(f"punctured length {pc.n}: {dist.paper()}")
    out.text(f"projective: {proj.projective}")
    if spec.d == 1:
        gr = griesmer_check(spec)
        md = mdr_check(pc, dist)
        rec.update(griesmer={"n": gr.length, "d_min": gr.d_min, "bound": gr.bound, "equality": gr.equality})
        rec.update(mdr={"n": md.length, "d_min": md.d_min, "free": md.free_rank2, "mdr": md.mdr})
        out.text(f"griesmer: n={gr.length} >= {gr.d_min} + ceil({gr.d_min}/{spec.p}) = {gr.bound} equality={gr.equality}")
        out.text(f"mdr: free={md.free_rank2} d_min={md.d_min} n-1={md.length - 1} mdr={md.mdr}")
    out.record(rec)
    return 0 if proj.projective else 1


def cmd_graph(cfg: RunConfig, out: Output) -> int:
    spec = cfg.spec
    pc = puncture(build_code(spec), spec)
    graph = build_coset_graph(pc)
    status = 0
    rec = {"kind": "graph", "p": spec.p, "h": spec.h, "d": spec.d, "v": graph.vertex_count, "eta": graph.degree}
    try:
        srg = verify_srg(graph, mode=cfg.mode, vertex_budget=cfg.vertex_budget, seed=cfg.seed)
    except TrivialGraph as exc:
        rec.update(srg=None, trivial=True)
        out.text(f"v={graph.vertex_count} eta={graph.degree}: {exc}")
    except NotStronglyRegular as exc:
        rec.update(srg=None, error=str(exc), witness=exc.witness)
        out.text(f"NOT strongly regular: {exc} witness={exc.witness}")
        status = 1
    else:
        pred = predicted_srg(spec)
        ls = latin_square_classify(srg, spec)
        rec.update(
            srg={"v": srg.v, "eta": srg.eta, "lambda": srg.lam, "mu": srg.mu, "r": srg.r, "s": srg.s, "f": srg.f, "g": srg.g},
            verification=srg.extra,
            predicted={"r": pred.r, "s": pred.s, "f": pred.f, "g": pred.g},
            latin_square={"N": ls.N, "M": ls.M, "family": ls.family_match, "general": ls.general_match},
        )
        out.text(f"SRG (v, eta, lambda, mu) = ({srg.v}, {srg.eta}, {srg.lam}, {srg.mu})")
        out.text(f"restricted eigenvalues {srg.r} (x{srg.f}), {srg.s} (x{srg.g})  [{srg.extra.get('mode')}]")
        out.text(f"predicted eigenvalues {pred.r}, {pred.s}")
        out.text(
            f"latin square type with N={ls.N}, M={ls.M}: {ls.family_match}"
            + (f"; parameters fit (N, M) = {ls.general_match}" if ls.general_match else "")
        )
    if cfg.export:
        kind, path = cfg.export
        if kind != "edgelist":
            raise ConfigError(f"unknown export kind {kind!r}")
        count = write_edgelist(graph, path)
        rec.update(edgelist=path, edges=count)
        out.text(f"wrote {count} edges to {path}")
    out.record(rec)
    return status


def cmd_cover(cfg: RunConfig, out: Output) -> int:
    spec = cfg.spec
    h_low = cfg.h_low if cfg.h_low is not None else cfg.h[0]
    rep = cover_check(CodeSpec(spec.p, h_low, spec.d), h_low, vertex_budget=cfg.vertex_budget, seed=cfg.seed)
    rec = {
        "kind": "cover",
        "p": spec.p,
        "d": spec.d,
        "h_low": h_low,
        "fiber_sizes": sorted(rep.fiber_sizes),
        "bad_edges": rep.bad_edges,
        "collapsed_per_vertex": sorted(rep.collapsed_per_vertex),
        "neighbor_fiber_counts": sorted(rep.fiber_neighbor_counts),
        "missing_neighbors": rep.missing_neighbors,
        "vertices_checked": rep.vertices_checked,
        "sampled": rep.sampled,
        "seed": cfg.seed if rep.sampled else None,
        "ok": rep.ok,
    }
    out.record(rec)
    out.text(f"level {h_low + 1} -> {h_low} by reduction mod {spec.p}^{h_low}")
    out.text(f"fiber sizes: {sorted(rep.fiber_sizes)}")
    out.text(f"edges mapping to non-edges: {rep.bad_edges}")
    out.text(f"collapsed edges per vertex: {sorted(rep.collapsed_per_vertex)}")
    out.text(f"neighbours over each image neighbour: {sorted(rep.fiber_neighbor_counts)}")
    out.text(f"vertices checked: {rep.vertices_checked}" + (f" (sampled, seed {cfg.seed})" if rep.sampled else ""))
    out.text(f"ok: {rep.ok}")
    return 0 if rep.ok else 1


def cmd_verify_all(cfg: RunConfig, out: Output) -> int:
    ps = cfg.p or [3, 5]
    hs = cfg.h or [1, 2, 3]
    rows = verify_all(ps, hs, cfg.d or None, budget=cfg.budget, workers=cfg.workers)
    for row in rows:
        out.text(row.line())
        out.record({"kind": "verify", **row.record()})
    failed = sum(r.status == FAIL for r in rows)
    disc = sum(r.status == DISCREPANCY for r in rows)
    out.text(f"# {len(rows)} rows, {failed} FAIL, {disc} DISCREPANCY")
    if failed:
        return 1
    return 2 if (cfg.strict and disc) else 0


COMMANDS = {
    "ring": cmd_ring,
    "weights": cmd_weights,
    "puncture": cmd_puncture,
    "graph": cmd_graph,
    "cover": cmd_cover,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoweight", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        many = name == "verify-all"
        nargs = "+" if many else None
        sp.add_argument("--p", type=int, nargs=nargs, required=not many)
        sp.add_argument("--h", type=int, nargs=nargs)
        if name != "ring":
            sp.add_argument("--d", type=int, nargs=nargs)
        sp.add_argument("--format", choices=("paper", "structured"), default="paper")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max naive codeword evaluations")
        sp.add_argument("--override-budget", action="store_true")
        sp.add_argument("--use-orbits", action="store_true")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--experimental", action="store_true", help="allow p=2")
        sp.add_argument("--strict", action="store_true", help="nonzero exit on closed-form or reference mismatches")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--vertex-budget", type=int, default=DEFAULT_VERTEX_BUDGET)
        sp.add_argument("--out", help="write the report to this file")
        if name == "ring":
            sp.add_argument("--info", action="store_true", help="print ring parameters (default)")
        if name == "graph":
            sp.add_argument("--mode", choices=("base", "full"), default="base")
            sp.add_argument("--export", nargs=2, metavar=("KIND", "PATH"))
        if name == "cover":
            sp.add_argument("--h-low", type=int)
    return parser


def _as_list(x):
    if x is None:
        return []
    return list(x) if isinstance(x, list) else [x]


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=ns.subcommand,
        p=_as_list(ns.p),
        h=_as_list(ns.h),
        d=_as_list(getattr(ns, "d", None)),
        format=ns.format,
        budget=ns.budget,
        override_budget=ns.override_budget,
        use_orbits=ns.use_orbits,
        workers=ns.workers,
        experimental=ns.experimental,
        strict=ns.strict,
        seed=ns.seed,
        vertex_budget=ns.vertex_budget,
        mode=getattr(ns, "mode", "base"),
        h_low=getattr(ns, "h_low", None),
        export=tuple(ns.export) if getattr(ns, "export", None) else None,
        out=ns.out,
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    stream = open(cfg.out, "w") if cfg.out else sys.stdout
    try:
        return COMMANDS[cfg.subcommand](cfg, Output(cfg.format, stream))
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 65
    except (NotProjective, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        if cfg.out:
            stream.close()


if __name__ == "__main__":
    sys.exit(main())
