"""Command line interface.

Subcommands: girth, aut, search, repro, certify, c16, sample, extend,
export.  JSON reports are deterministic (no floats, no timing) so equal
invocations produce byte-identical files; wall time is printed to
stderr.  The report path also writes a CSV table and a figure next to
each JSON payload unless figures are disabled.

Exit codes: 0 all assertions passed, 1 assertion failure, 2 parse error,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import certificate as CERT
from . import extensions as EXT
from . import groups as G
from . import render as R
from . import reports as REP
from . import search as S
from . import smallcancel as SC
from . import words as W
from .autos import automorphism_group, stabilizer_is_trivial
from .cayley import bfs_ball, girth
from .errors import CapExceededError, ParseError, InvalidParameterError
from .posets import (FinitePoset, build_babai_poset, build_cayley_poset,
                     build_drr_digraph, build_haar_graph)

CACHE_ENV = "POSETREP_CACHE_DIR"


def _parse_gens(group, text: str) -> list:
    if text.strip() == "margulis":
        if not isinstance(group, G.SL2Group):
            raise ParseError("margulis generators need an sl2 group")
        return list(G.margulis_generators(group.p))
    parts = text.split(";") if ";" in text else text.split(",")
    return [G.parse_element(group, p) for p in parts if p.strip()]


def _parse_connection(group, text: str) -> list:
    return _parse_gens(group, text)


def _parse_psi(group, text: str) -> G.GroupAutomorphism:
    text = text.strip()
    if text == "id":
        return G.identity_automorphism(group)
    if text == "neg":
        return G.negation_automorphism(group)
    if text.startswith("mul:"):
        if not isinstance(group, G.CyclicGroup):
            raise ParseError("mul:k twisting is defined for cyclic groups")
        k = int(text[4:])
        els = list(group.elements())
        mapping = tuple((g, (k * g) % group.n) for g in els)
        aut = G.GroupAutomorphism(group, mapping, name=f"mul:{k}")
        if not G.is_automorphism(group, aut.table):
            raise ParseError(f"multiplication by {k} is not invertible mod {group.n}")
        return aut
    raise ParseError(f"unknown automorphism spec {text!r} (use id, neg, mul:k)")


def _emit_json(payload: dict, path: Path | None) -> str:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)
    return text


def _cache_lookup(args, params: dict) -> tuple[Path | None, dict | None]:
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
    if not cache_dir:
        return None, None
    key = json.dumps({"command": args.command, "params": params,
                      "version": __version__}, sort_keys=True)
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    path = Path(cache_dir) / f"{args.command}-{digest}.json"
    if path.exists():
        return path, json.loads(path.read_text())
    return path, None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_girth(args) -> int:
    group = G.parse_group(args.group)
    gens = _parse_gens(group, args.gens)
    res = girth(group, gens, limit=args.limit)
    payload = {
        "schema": 1,
        "group": group.descriptor,
        "generators": [group.label(g) for g in gens],
        "limit": args.limit,
        "girth": res.girth if res.girth is not None else f"> {args.limit}",
        "witness": W.format_word(res.witness) if res.witness else None,
        "nodes": res.nodes,
    }
    _emit_json(payload, Path(args.out) if args.out else None)
    return 0


def cmd_aut(args) -> int:
    data = json.loads(Path(args.poset).read_text())
    P = FinitePoset.from_json_dict(data, cap=args.limit or 256)
    aut = automorphism_group(P, cap=args.limit or 256)
    payload = {
        "schema": 1,
        "points": P.n,
        "order": aut.order,
        "orbit_count": aut.orbit_count,
        "orbits": [[P.labels[i] for i in orbit] for orbit in aut.orbits],
        "generators": [list(g) for g in aut.generators],
    }
    _emit_json(payload, Path(args.out) if args.out else None)
    return 0


def cmd_search(args) -> int:
    group = G.parse_group(args.group)
    params = {"group": args.group, "cap": args.limit or 16,
              "pruning": not args.no_pruning}
    cache_path, hit = _cache_lookup(args, params)
    if hit is not None:
        _emit_json(hit, Path(args.out) if args.out else None)
        return 0
    t0 = time.monotonic()
    rep = S.search_cayley(group, cap=args.limit or 16, pruning=not args.no_pruning)
    payload = rep.to_json_dict()
    print(f"search {args.group}: {rep.outcome} in {time.monotonic() - t0:.2f}s",
          file=sys.stderr)
    if cache_path is not None:
        _emit_json(payload, cache_path)
    _emit_json(payload, Path(args.out) if args.out else None)
    return 0


def cmd_certify(args) -> int:
    group = G.parse_group(args.group)
    gens = _parse_gens(group, args.gens)
    if len(gens) != 2:
        raise ParseError("certify needs exactly two generators")
    cert = CERT.certify(group, gens[0], gens[1], limit=args.limit or 22)
    _emit_json(cert.to_json_dict(), Path(args.out) if args.out else None)
    return 0 if cert.applicable else 1


def cmd_c16(args) -> int:
    text = Path(args.pres).read_text() if args.pres else args.text
    if text is None:
        raise ParseError("give a presentation file with --pres or text with --text")
    pres = SC.parse_presentation(text)
    lam = Fraction(args.lam) if args.lam else Fraction(1, 6)
    rep = SC.check_c_lambda(pres, lam)
    _emit_json(rep.to_json_dict(), Path(args.out) if args.out else None)
    return 0 if rep.satisfies else 1


def cmd_sample(args) -> int:
    if args.model == "few":
        presentations = SC.sample_few_relators(args.n, args.m, args.l,
                                               args.count, seed=args.seed)
        reports = [SC.check_c_lambda(p) for p in presentations]
        good = sum(1 for r in reports if r.cayley_representable)
        payload = {
            "schema": 1, "model": "few", "n": args.n, "m": args.m, "l": args.l,
            "count": args.count, "seed": args.seed,
            "representable_fraction": [good, args.count],
            "presentations": [p.text() for p in presentations[:args.show]],
        }
    else:
        pres = SC.sample_density(args.n, args.d, args.l, seed=args.seed)
        rep = SC.check_c_lambda(pres)
        payload = {
            "schema": 1, "model": "density", "n": args.n, "d": str(args.d),
            "l": args.l, "seed": args.seed,
            "relators": len(pres.relators),
            "satisfies_c_sixth": rep.satisfies,
            "presentation": pres.text() if len(pres.relators) <= args.show else None,
        }
    _emit_json(payload, Path(args.out) if args.out else None)
    return 0


def cmd_extend(args) -> int:
    group = G.parse_group(args.group)
    psi = _parse_psi(group, args.psi)
    if args.kind in ("p1", "two-level"):
        connection = _parse_connection(group, args.s)
        w = EXT.build_window("two-level", group, connection, psi,
                             radius=args.window, base_window=args.base_window)
    else:
        if group.order is None:
            raise ParseError("the three-level kind needs a finite group")
        connection = _parse_connection(group, args.s)
        drr = build_drr_digraph(group, connection)
        w = EXT.build_window("three-level", group, drr, psi, radius=args.window)
    gr = EXT.gradedness(w.poset)
    act = EXT.check_action_on_window(w)
    # window rigidity at the base point: auxiliary data only, no claim
    # about the unbounded poset is implied
    rigidity = None
    if w.poset.n <= 256:
        base_name = ((group.identity, 0) if w.kind == "two-level"
                     else (group.identity, 0, 0))
        trivial, _ = stabilizer_is_trivial(w.poset, w.index_of(base_name))
        rigidity = trivial
    payload = {
        "schema": 1,
        "kind": w.kind,
        "group": group.descriptor,
        "psi": psi.name or "table",
        "window": args.window,
        "points": w.poset.n,
        "graded": gr.graded,
        "base_point_rigid_in_window": rigidity,
        "action": {
            "order_preserving": act.order_preserving,
            "injective": act.injective,
            "free": act.free,
            "interior_transitive": act.interior_transitive,
            "necessary_condition_only": act.necessary_condition_only,
        },
    }
    if args.dot:
        Path(args.dot).write_text(R.poset_to_dot(w.poset, "window"))
    _emit_json(payload, Path(args.out) if args.out else None)
    return 0 if (act.all_ok) else 1


def cmd_export(args) -> int:
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    want_png = out.suffix == ".png"
    if args.what == "tree":
        tree = CERT.f2_neighborhood_tree()
        if want_png:
            R.save_tree_png(tree, str(out))
        else:
            out.write_text(R.neighborhood_tree_to_dot(tree))
        return 0
    group = G.parse_group(args.group)
    if args.what == "ball":
        gens = _parse_gens(group, args.gens or "margulis")
        ball = bfs_ball(group, gens, args.radius)
        if want_png:
            raise ParseError("balls export to DOT; use a .dot path")
        out.write_text(R.ball_to_dot(ball))
        return 0
    connection = _parse_connection(group, args.s)
    if args.what == "hasse":
        P = build_cayley_poset(group, connection)
        if want_png:
            R.save_hasse_png(P, str(out), title=f"P({group.descriptor})")
        else:
            out.write_text(R.poset_to_dot(P))
    elif args.what == "haar":
        D = build_haar_graph(group, connection)
        out.write_text(R.digraph_to_dot(D, "haar"))
    elif args.what == "drr":
        D = build_drr_digraph(group, connection)
        out.write_text(R.digraph_to_dot(D, "drr"))
    elif args.what == "babai":
        P = build_babai_poset(build_drr_digraph(group, connection))
        if want_png:
            R.save_hasse_png(P, str(out), title=f"three-copy poset ({group.descriptor})")
        else:
            out.write_text(R.poset_to_dot(P))
    else:
        raise ParseError(f"unknown export target {args.what!r}")
    return 0


def _write_repro_outputs(rep, outdir: Path, figures: bool) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / f"{rep.proposition}.csv").write_text(R.rows_to_csv(rep.table))
    if not figures:
        return
    png = outdir / f"{rep.proposition}.png"
    if rep.proposition == "main-f2":
        R.save_tree_png(CERT.f2_neighborhood_tree(), str(png),
                        title="identity neighborhood with affinities")
    elif rep.proposition == "main-sl2":
        girths = [(p, (g if isinstance(g, int) else None))
                  for (p, g) in rep.evidence["girths"]]
        R.save_scan_png(girths, CERT.GIRTH_THRESHOLD,
                        CERT.margulis_girth_bound, str(png))
    elif rep.proposition == "ciclico":
        pairs = [(row["group"], row["aut_order"]) for row in rep.table]
        R.save_bar_png(pairs, str(png), title="automorphism group order",
                       ylabel="order")
    elif rep.proposition == "contraejemplos":
        pairs = [(row["group"], row["tested"]) for row in rep.table]
        R.save_bar_png(pairs, str(png), title="representatives tested to exhaustion",
                       ylabel="tested")
    elif rep.proposition == "zeta22":
        z9 = G.CyclicGroup(9)
        babai = build_babai_poset(build_drr_digraph(z9, [1, 3]))
        R.save_hasse_png(babai, str(png),
                         title="three-copy control poset over z:9")
    elif rep.proposition == "corofew":
        pairs = [(str(row["l"]), row["count"]) for row in rep.table[:12]]
        R.save_bar_png(pairs, str(png), title="cyclically reduced words per length",
                       ylabel="count")
    elif rep.proposition == "nongraded":
        R.save_hasse_png(EXT.integer_window_poset(0, 6), str(png),
                         title="gap-two order on 0..6")
    elif rep.proposition == "producto1":
        z9 = G.CyclicGroup(9)
        w = EXT.build_window("two-level", z9, [0, 1, 3],
                             G.identity_automorphism(z9), radius=1)
        R.save_hasse_png(w.poset, str(png), title="glued window, radius 1")
    elif rep.proposition == "producto2":
        z9 = G.CyclicGroup(9)
        w = EXT.build_window("three-level", z9, build_drr_digraph(z9, [1, 3]),
                             G.identity_automorphism(z9), radius=1)
        R.save_hasse_png(w.poset, str(png), title="three-level window, radius 1")


def cmd_repro(args) -> int:
    driver = REP.REPRO_DRIVERS.get(args.id)
    if driver is None:
        raise ParseError(f"unknown scenario {args.id!r}; "
                         f"choose from {', '.join(REP.PROPOSITIONS)}")
    kwargs = {}
    if args.id == "ciclico" and args.n_max:
        kwargs["n_max"] = args.n_max
    if args.id == "corofew":
        kwargs["seed"] = args.seed
    params = {"id": args.id, **kwargs}
    cache_path, hit = _cache_lookup(args, params)
    outdir = Path(args.outdir)
    if hit is not None:
        _emit_json(hit, outdir / f"{args.id}.json")
        print(f"repro {args.id}: cache hit", file=sys.stderr)
        return 0 if hit["pass"] else 1
    t0 = time.monotonic()
    rep = driver(**kwargs)
    payload = rep.to_json_dict()
    _emit_json(payload, outdir / f"{args.id}.json")
    _write_repro_outputs(rep, outdir, figures=not args.no_figures)
    if cache_path is not None:
        _emit_json(payload, cache_path)
    for (name, ok, detail) in rep.checks:
        mark = "ok" if ok else "FAIL"
        print(f"  [{mark}] {name}" + (f" ({detail})" if detail else ""),
              file=sys.stderr)
    print(f"repro {args.id}: {'pass' if rep.passed else 'FAIL'} "
          f"in {time.monotonic() - t0:.2f}s", file=sys.stderr)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="posetrep",
        description="Poset representations of groups: build, decide, reproduce.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for interface stability; execution is "
                            "deterministic and single threaded")
        p.add_argument("--limit", type=int, default=None)
        p.add_argument("--cache-dir", default=None,
                       help=f"report cache directory (or ${CACHE_ENV})")
        p.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p = sub.add_parser("girth", help="shortest relation length in a Cayley graph")
    common(p)
    p.set_defaults(limit=24)
    p.add_argument("--group", required=True)
    p.add_argument("--gens", required=True)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("aut", help="automorphism group of a poset JSON file")
    common(p)
    p.add_argument("--poset", required=True)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("search", help="scan connection sets for a representation")
    common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--no-pruning", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("certify", help="girth certificate for a generator pair")
    common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--gens", default="margulis")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("c16", help="small cancellation C'(lambda) check")
    common(p)
    p.add_argument("--pres", default=None, help="presentation file")
    p.add_argument("--text", default=None, help="inline presentation text")
    p.add_argument("--lam", default=None, help="lambda as a fraction, default 1/6")
    p.set_defaults(func=cmd_c16)

    p = sub.add_parser("sample", help="random presentation models")
    common(p)
    p.add_argument("--model", choices=("few", "density"), required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--l", type=int, default=60)
    p.add_argument("--d", type=float, default=0.1)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--show", type=int, default=3)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("extend", help="layered window over a base block")
    common(p)
    p.add_argument("--kind", choices=("p1", "p2", "two-level", "three-level"),
                   default="p1")
    p.add_argument("--group", required=True)
    p.add_argument("--s", required=True, help="connection set, comma separated")
    p.add_argument("--psi", default="id")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--base-window", type=int, default=None,
                   help="element cutoff for infinite base groups")
    p.add_argument("--dot", default=None, help="also write the window Hasse DOT here")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("export", help="DOT and PNG exports")
    common(p)
    p.add_argument("--what", required=True,
                   choices=("hasse", "haar", "drr", "babai", "ball", "tree"))
    p.add_argument("--group", default="z:9")
    p.add_argument("--s", default="0,1,3")
    p.add_argument("--gens", default=None)
    p.add_argument("--radius", type=int, default=3)
    p.set_defaults(func=cmd_export)
    p.set_defaults(out="export.dot")

    p = sub.add_parser("repro", help="run a named reproduction scenario")
    common(p)
    p.add_argument("id", choices=REP.PROPOSITIONS)
    p.add_argument("--outdir", default="reports")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_repro)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InvalidParameterError as exc:
        print(f"invalid parameter: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
