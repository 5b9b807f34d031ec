"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 cap exceeded, 3 soundness
failure (a reproduction bundle is written next to the input file).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import traceback
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import caps, ccf
from . import families as fam
from . import geometry as geo
from .core import check_identities, constituent_stats, intersection_tensor, structural_flags
from .errors import CapExceeded, NotCoherent, SoundnessError, UnknownCommand, ValidationError

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_UNSOUND = 0, 1, 2, 3

COMMANDS = ("gen", "check", "analyze", "wl", "distinguish", "spectrum", "geometry", "certify", "motion")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UnknownCommand(message)


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o).__name__)


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, default=_json_default, sort_keys=True))
    else:
        print(text)


def _colors(spec: str | None):
    if spec is None:
        return None
    return [int(x) for x in spec.replace(" ", "").split(",") if x]


# ---------------------------------------------------------------------------
# gen

def _gen_random(n: int, p: float, seed: int):
    from .core import from_adjacency
    from .wl import refine
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, 1)
    return refine(from_adjacency(upper | upper.T))


GENERATORS = {
    "johnson": (lambda m, d: fam.gen_johnson(m, d), 2),
    "hamming": (lambda d, m: fam.gen_hamming(d, m), 2),
    "triangular": (lambda s: fam.gen_triangular(s), 1),
    "lattice": (lambda s: fam.gen_lattice(s), 1),
    "crown": (lambda s: fam.gen_crown(s), 1),
    "cycle": (lambda n: fam.gen_cycle(n), 1),
    "paley": (lambda q: fam.gen_paley(q), 1),
    "cyclotomic": (lambda p, e: fam.gen_cyclotomic(p, e), 2),
}

LINE_BASES = {
    "petersen": fam.petersen_graph,
    "heawood": fam.heawood_graph,
    "k33": lambda: fam.complete_bipartite(3, 3),
}


def cmd_gen(args) -> int:
    name, params = args.family, args.params
    if name in GENERATORS:
        fn, arity = GENERATORS[name]
        if len(params) != arity:
            raise ValidationError(f"{name} takes {arity} integer parameter(s)")
        cfg = fn(*(int(x) for x in params))
    elif name == "affine":
        cfg = fam.gen_affine_fusion(int(params[0]), [int(x) for x in params[1:]])
    elif name == "random":
        if len(params) != 2:
            raise ValidationError("random takes n and an edge probability")
        cfg = _gen_random(int(params[0]), float(params[1]), args.seed)
    elif name == "linegraph":
        if len(params) != 1 or params[0] not in LINE_BASES:
            raise ValidationError(f"linegraph takes one of {sorted(LINE_BASES)}")
        cfg = fam.line_graph_scheme(LINE_BASES[params[0]]()).config
    else:
        raise UnknownCommand(f"unknown family {name!r}")
    text = ccf.dumps(cfg)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}: n={cfg.n} r={cfg.r}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# analysis commands

def cmd_check(args) -> int:
    cfg = ccf.read(args.file)
    try:
        intersection_tensor(cfg)
    except NotCoherent as exc:
        payload = {"valid": True, "coherent": False, "n": cfg.n, "r": cfg.r,
                   "pairing": list(cfg.pairing), "witness": list(exc.witness)}
        _emit(args, payload, f"valid, not coherent: {exc}")
        return EXIT_INVALID
    payload = {"valid": True, "coherent": True, "n": cfg.n, "r": cfg.r, "pairing": list(cfg.pairing)}
    _emit(args, payload, f"ok: coherent configuration n={cfg.n} r={cfg.r}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    cfg = ccf.read(args.file)
    t = intersection_tensor(cfg)
    flags = dataclasses.asdict(structural_flags(cfg, t))
    stats = [dataclasses.asdict(s) for s in constituent_stats(t)]
    bad = check_identities(cfg, t)
    payload = {"tensor": t.to_dict(), "flags": flags, "constituents": stats, "identities": bad}
    lines = [f"n={t.n} r={t.r} k={[int(x) for x in t.k]}", f"flags: {flags}"]
    lines += [f"  color {s['color']}: k={s['k']} lambda={s['lam']} q={s['q']} diameter={s['diameter']}"
              for s in stats]
    lines.append("identities: ok" if not bad else f"identities FAILED: {bad}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if not bad else EXIT_UNSOUND


def cmd_wl(args) -> int:
    from .core import is_coherent
    from .wl import wl_stabilize
    cfg = ccf.read(args.file)
    trace = wl_stabilize(cfg)
    payload = dict(trace.to_dict(), coherent_input=is_coherent(cfg))
    if args.output:
        ccf.write(trace.stable, args.output)
    _emit(args, payload, f"stable after {trace.rounds} round(s); rank history {list(trace.rank_history)}")
    return EXIT_OK


def cmd_distinguish(args) -> int:
    from .distinguish import distinguishing_report
    from .wl import greedy_bound, greedy_distinguishing_set
    cfg = ccf.read(args.file)
    rep = distinguishing_report(cfg)
    greedy = greedy_distinguishing_set(cfg)
    payload = dict(rep.to_dict(), greedy_set=greedy, greedy_bound=greedy_bound(cfg.n, rep.dmin))
    text = f"Dmin={rep.dmin}  D(i)={rep.d_by_color}\ngreedy distinguishing set ({len(greedy)}): {greedy}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    from .spectral import constituent_spectrum, union_spectrum
    cfg = ccf.read(args.file)
    t = intersection_tensor(cfg)
    cols = _colors(args.colors)
    specs = [union_spectrum(t, cols)] if cols else [constituent_spectrum(t, i) for i in t.edge_colors
                                                    if t.pairing[i] >= i]
    payload = [s.to_dict() for s in specs]
    text = "\n".join(f"colors {list(s.colors)}: k={s.k} nontrivial={[round(float(v), 6) for v in s.nontrivial]}"
                     f" xi={float(s.xi):.6g}{'' if s.exact else ' (numeric)'}" for s in specs)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_geometry(args) -> int:
    cfg = ccf.read(args.file)
    cols = _colors(args.color)
    adj = cfg.adjacency(cols)
    params = geo.metsch_params(adj, args.m)
    ok = geo.metsch_check(params)
    payload = {"color": cols, "m": args.m, "metsch": ok, "params": dataclasses.asdict(params)}
    text = [f"X_{cols}: metsch={ok} params={dataclasses.asdict(params)}"]
    if ok:
        g = geo.extract_lines(adj, args.m, params)
        payload.update(lines=[list(x) for x in g.lines], per_vertex_max=g.per_vertex_max)
        text.append(f"{len(g.lines)} lines, sizes {sorted({len(x) for x in g.lines})}, per-vertex max {g.per_vertex_max}")
        root = None
        if args.m == 2 and set(g.per_vertex_count) == {2}:
            r = geo.reconstruct_root_graph(adj, g)
            root = {"n": len(r.adj), "edges": int(r.adj.sum()) // 2}
            text.append(f"root graph: {root['n']} vertices, {root['edges']} edges")
        payload["root_graph"] = root
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_certify(args) -> int:
    from .certify import certify, replay
    cfg = ccf.read(args.file)
    cert = certify(cfg)
    payload = cert.to_dict()
    if args.verify:
        results = replay(cert, cfg)
        payload["replay"] = results
        if not all(results):
            raise SoundnessError("certificate replay mismatch")
    if args.json:
        Path(args.json).write_text(cert.to_json(indent=2, sort_keys=True))
    lines = [f"branch: {cert.branch}"]
    for s in cert.steps:
        mark = "ok " if s.holds else "-- "
        lines.append(f"  {mark}{s.rule}: {s.conclusion}")
    lines.append(f"verdict: {cert.verdict}")
    if cert.verdict.bound is not None:
        lines.append(f"bound: {cert.verdict.bound} = {cert.verdict.bound / cfg.n} n")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_motion(args) -> int:
    from .certify import certify
    from .oracle import automorphisms
    cfg = ccf.read(args.file)
    cert = certify(cfg)
    bound = max(cert.bounds) if cert.bounds else None
    if not args.exact:
        payload = {"certified_bound": bound if bound is not None else 0}
        _emit(args, payload, f"motion >= {bound if bound is not None else 0} (certified; use --exact for the oracle)")
        return EXIT_OK
    info = automorphisms(cfg)
    if bound is not None and info.exact and bound > info.motion:
        raise SoundnessError(f"certified bound {bound} exceeds exact motion {info.motion}")
    payload = dict(info.to_dict(), certified_bound=bound if bound is not None else 0)
    _emit(args, payload, str(info.motion) if args.format == "text" else "")
    return EXIT_OK


HANDLERS = {
    "gen": cmd_gen, "check": cmd_check, "analyze": cmd_analyze, "wl": cmd_wl,
    "distinguish": cmd_distinguish, "spectrum": cmd_spectrum, "geometry": cmd_geometry,
    "certify": cmd_certify, "motion": cmd_motion,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--cap", type=int, default=None, help="override every size cap")
    common.add_argument("--seed", type=int, default=0)
    p = _Parser(prog="ccmotion", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="write a generated configuration as CCF")
    g.add_argument("family")
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output")

    for name, helptext in (("check", "validate and test coherence"),
                           ("analyze", "intersection numbers and structure"),
                           ("distinguish", "distinguishing numbers")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
    w = sub.add_parser("wl", parents=[common], help="stabilize under pair refinement")
    w.add_argument("file")
    w.add_argument("-o", "--output")
    s = sub.add_parser("spectrum", parents=[common], help="constituent spectra")
    s.add_argument("file")
    s.add_argument("--colors")
    s = sub.add_parser("geometry", parents=[common], help="clique geometry of a constituent")
    s.add_argument("file")
    s.add_argument("--color", required=True)
    s.add_argument("--m", type=int, default=2)
    s = sub.add_parser("certify", parents=[common], help="motion certificate")
    s.add_argument("file")
    s.add_argument("--json", help="also write the certificate to this path")
    s.add_argument("--verify", action="store_true", help="replay every step")
    s = sub.add_parser("motion", parents=[common], help="motion bound or exact motion")
    s.add_argument("file")
    s.add_argument("--exact", action="store_true")
    return p


def _bundle(args, argv, exc) -> Path:
    src = Path(getattr(args, "file", None) or ".")
    base = src.parent if src.is_file() else Path(".")
    out = base / f"ccmotion-repro-{src.stem or 'run'}"
    out.mkdir(parents=True, exist_ok=True)
    if src.is_file():
        (out / "input.ccf").write_text(src.read_text())
    (out / "argv.json").write_text(json.dumps(list(argv)))
    (out / "error.txt").write_text("".join(traceback.format_exception(exc)))
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = None
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UnknownCommand(f"expected one of {', '.join(COMMANDS)}")
        caps.set_override(args.cap)
        return HANDLERS[args.command](args)
    except SoundnessError as exc:
        where = _bundle(args, argv, exc) if args is not None else None
        print(f"soundness failure: {exc}; reproduction bundle at {where}", file=sys.stderr)
        return EXIT_UNSOUND
    except CapExceeded as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        caps.set_override(None)
