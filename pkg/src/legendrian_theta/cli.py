"""Command line front end.

Every subcommand prints one canonical JSON document (or, for ``enumerate``,
one per line) on stdout.  Exit status: 0 success, 1 invalid input, 2 a
well-formed request that cannot be met.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from typing import List, Optional

from . import classify as cl
from . import moves as mv
from . import planar as pl
from .frontdiagram import (
    DiagramError, FrontDiagram, canonical_json, mirror, theta_invariants, theta_key,
    validate, vertex_sign,
)
from .halfint import HalfInt
from .realize import build_gl, realize_key, stab_recipe


class Infeasible(Exception):
    """A well-formed request with no answer (exit status 2)."""


def _vec(text: str):
    try:
        return cl.parse_vec3(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _half(text: str) -> HalfInt:
    try:
        return HalfInt.of(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _sigma(text: str) -> int:
    v = int(text.replace("−", "-"))
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("sigma must be +1 or -1")
    return v


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _diagram(path: str) -> FrontDiagram:
    try:
        return FrontDiagram.from_json(_read_json(path))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed diagram file: {exc}") from exc


def _key(tb, rot, sigma) -> cl.EmbeddingKey:
    adm = cl.is_admissible(tb, rot)
    if not adm:
        raise Infeasible("inadmissible pair: " + "; ".join(adm.violations))
    if sigma is None:
        return cl.keys_for(tb, rot)[0]
    key = cl.EmbeddingKey.make(tb, rot, sigma)
    if not key.is_valid():
        raise Infeasible(f"sigma1={sigma} is impossible when Rot={sum(rot)}")
    return key


def _theta_report(d: FrontDiagram) -> dict:
    inv = theta_invariants(d)
    v1, v2 = d.vertex_ids
    key = theta_key(d)
    out = inv.to_json()
    out.update(sigma1=vertex_sign(d, v1), sigma2=vertex_sign(d, v2),
               canonical=cl.canonical(key).to_json())
    return out


def cmd_invariants(args):
    d = _diagram(args.diagram)
    try:
        return _theta_report(d)
    except DiagramError as exc:
        if validate(d):
            raise
        raise Infeasible(str(exc)) from exc


def cmd_classify(args):
    adm = cl.is_admissible(args.tb, args.rot)
    out = {
        "admissible": adm.ok,
        "embeddings": cl.count_embeddings(args.tb, args.rot),
        "images": cl.count_images(args.tb, args.rot) if adm.ok else 0,
    }
    if not adm.ok:
        out["violations"] = adm.violations
        raise Infeasible(out)
    report = cl.image_count_report(args.tb, args.rot)
    if report.discrepancy:
        out["criterion_images"] = report.criterion_count
    return out


def cmd_enumerate(args):
    if args.bound < 1:
        raise ValueError("--bound must be >= 1")
    records = [cl.key_record(k) for tb, rot in cl.enumerate_admissible(args.bound)
               for k in cl.keys_for(tb, rot)]
    if args.format == "summary":
        pairs = list(cl.enumerate_admissible(args.bound))
        return {
            "bound": args.bound,
            "pairs": len(pairs),
            "keys": len(records),
            "images": sum(cl.count_images(tb, rot) for tb, rot in pairs),
        }
    return records


def cmd_realize(args):
    recipe = stab_recipe(args.tb, args.rot)
    keys = [_key(args.tb, args.rot, args.sigma)] if args.sigma is not None else cl.keys_for(args.tb, args.rot)
    diagrams = [realize_key(k) for k in keys]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(diagrams[0].dumps() + "\n")
    return {
        "recipe": recipe.to_json(),
        "realizations": [{"key": k.to_json(), "diagram": d.to_json()} for k, d in zip(keys, diagrams)],
    }


def cmd_gl(args):
    d = build_gl(args.l)
    return {"l": args.l.to_json(), "diagram": d.to_json(), "invariants": _theta_report(d)}


def cmd_mirror(args):
    return mirror(_diagram(args.diagram)).to_json()


def _delta(before: FrontDiagram, after: FrontDiagram) -> Optional[dict]:
    try:
        a, b = _theta_report(before), _theta_report(after)
    except DiagramError:
        return None
    return {
        "tb": [y - x for x, y in zip(a["tb"], b["tb"])],
        "rot": [y - x for x, y in zip(a["rot"], b["rot"])],
        "sigma1": [a["sigma1"], b["sigma1"]],
        "sigma2": [a["sigma2"], b["sigma2"]],
    }


def cmd_move(args):
    d = _diagram(args.diagram)
    try:
        site = mv.MoveSite.from_json(json.loads(args.site or "{}"))
    except (TypeError, json.JSONDecodeError) as exc:
        raise ValueError(f"bad --site: {exc}") from exc
    name = args.move
    if name == "stabilize":
        if site.edges is None or len(site.edges) != 1:
            raise ValueError('stabilize needs "edges": [edge]')
        out = mv.edge_stabilize(d, site.edges[0], site.sign, site)
    elif name == "destabilize":
        out = mv.edge_destabilize(d, site)
    elif name == "vertex_stabilize":
        out = mv.vertex_stabilize(d, site.vertex, site.k)
    elif name == "twist":
        if site.edges is None or len(site.edges) != 2:
            raise ValueError('twist needs "edges": [a, b]')
        out = mv.vertex_twist(d, site.vertex, site.edges, site.sign)
    elif name in mv.REIDEMEISTER_MOVES:
        out = mv.reidemeister(d, name, site)
    else:
        raise ValueError(f"unknown move {name!r}")
    return {"diagram": out.to_json(), "delta": _delta(d, out)}


def cmd_equiv(args):
    k1 = _key(args.tb, args.rot, args.sigma)
    k2 = _key(args.tb2, args.rot2, args.sigma2)
    return {
        "equivalent": cl.equivalent_up_to_relabeling(k1, k2),
        "criterion": cl.relabel_criterion_equivalent(k1, k2),
        "canonical": [cl.canonical(k1).to_json(), cl.canonical(k2).to_json()],
    }


def cmd_orbit(args):
    key = _key(args.tb, args.rot, args.sigma)
    return {"key": key.to_json(), "orbit": [k.to_json() for k in sorted(cl.orbit(key))],
            "canonical": cl.canonical(key).to_json()}


def cmd_connected(args):
    return {"edge_stab_connected": mv.edge_stab_connected(args.l, args.lprime)}


def _map(path: str) -> pl.PlanarMap:
    return pl.PlanarMap.from_json(_read_json(path))


def cmd_planar_realize(args):
    m = _map(args.map)
    if not m.is_connected():
        raise pl.PlanarMapError("graph is not connected")
    cert = pl.realize_property_n(m)
    out = cert.to_json()
    out["problems"] = pl.validate_certificate(cert)
    return out


def cmd_family(args):
    if args.kmax < 0:
        raise ValueError("--kmax must be >= 0")
    fam = pl.infinite_family(_map(args.map), args.kmax)
    return {"base": fam[0].base.to_json(), "family": [f.to_json() for f in fam]}


def cmd_validate(args):
    if bool(args.diagram) == bool(args.map):
        raise ValueError("give exactly one of --diagram or --map")
    if args.diagram:
        problems = [f"event {i}: {m}" for i, m in validate(_diagram(args.diagram))]
    else:
        try:
            pl.trace_faces(_map(args.map))
            problems = []
        except pl.PlanarMapError as exc:
            problems = [str(exc)]
    if problems:
        raise ValueError({"valid": False, "violations": problems})
    return {"valid": True, "violations": []}


def _add_key_args(p, suffix="", required=True):
    p.add_argument(f"--tb{suffix}", type=_vec, required=required)
    p.add_argument(f"--rot{suffix}", type=_vec, required=required)
    p.add_argument(f"--sigma{suffix}", type=_sigma, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "summary"), default="json")
    parser = argparse.ArgumentParser(prog="legendrian-theta", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("invariants", help="tb, rot and vertex signs of a Theta front")
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", help="admissibility and embedding counts")
    _add_key_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="all keys with tb_i >= -B")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("realize", help="front diagrams realizing an admissible pair")
    _add_key_args(p)
    p.add_argument("--out", default=None, help="also write the first diagram here")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("gl", help="the front of G_l")
    p.add_argument("--l", type=_half, required=True)
    p.set_defaults(func=cmd_gl)

    p = sub.add_parser("mirror", help="mirror a front (z -> -z)")
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("move", help="apply a move at a site")
    p.add_argument("--diagram", required=True)
    p.add_argument("--move", required=True)
    p.add_argument("--site", default="{}")
    p.set_defaults(func=cmd_move)

    p = sub.add_parser("equiv", help="are two keys related by relabeling")
    _add_key_args(p)
    _add_key_args(p, "2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("orbit", help="orbit of a key under relabeling")
    _add_key_args(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("connected", help="are G_l and G_l' related by edge stabilizations")
    p.add_argument("--l", type=_half, required=True)
    p.add_argument("--lprime", type=_half, required=True)
    p.set_defaults(func=cmd_connected)

    p = sub.add_parser("planar-realize", help="Property N certificate for a planar map")
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_planar_realize)

    p = sub.add_parser("family", help="infinite family of realizations")
    p.add_argument("--map", required=True)
    p.add_argument("--kmax", type=int, default=3)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("validate", help="check a diagram or planar map file")
    p.add_argument("--diagram", default=None)
    p.add_argument("--map", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("batch", help="run newline-delimited requests from a file")
    p.add_argument("path")
    p.set_defaults(func=None)
    return parser


def _summary(doc) -> str:
    if isinstance(doc, list):
        return "\n".join(_summary(d) for d in doc)
    if isinstance(doc, dict):
        return "\n".join(f"{k}: {canonical_json(v)}" for k, v in sorted(doc.items()))
    return str(doc)


def _emit(doc, fmt: str, stream) -> None:
    if fmt == "summary":
        stream.write(_summary(doc) + "\n")
    elif isinstance(doc, list):
        for rec in doc:
            stream.write(canonical_json(rec) + "\n")
    else:
        stream.write(canonical_json(doc) + "\n")


VALUE_FLAGS = {"--tb", "--rot", "--sigma", "--tb2", "--rot2", "--sigma2", "--l", "--lprime",
               "--bound", "--kmax"}


def _glue_negative_values(argv: List[str]) -> List[str]:
    """Turn ``--tb -1,-2,-1`` into ``--tb=-1,-2,-1`` so argparse keeps the value."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1][:1] in ("-", "−") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: List[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(list(argv)))
    except SystemExit as exc:
        return 1 if exc.code else 0
    if args.command == "batch":
        return _run_batch(args.path, stdout, stderr)
    try:
        doc = args.func(args)
    except (Infeasible, cl.InadmissibleError, mv.MoveError, pl.NoWitnessError) as exc:
        _report(exc, stdout, stderr)
        return 2
    except (ValueError, OSError, DiagramError, pl.PlanarMapError) as exc:
        _report(exc, stdout, stderr)
        return 1
    _emit(doc, args.format, stdout)
    return 0


def _report(exc: Exception, stdout, stderr) -> None:
    payload = exc.args[0] if exc.args else str(exc)
    if isinstance(payload, dict):
        stdout.write(canonical_json(payload) + "\n")
        stderr.write(canonical_json(payload) + "\n")
    else:
        stderr.write(f"error: {exc}\n")


def _run_batch(path: str, stdout, stderr) -> int:
    worst = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            req = json.loads(line)
            argv = req["argv"] if isinstance(req, dict) else req
            if isinstance(argv, str):
                argv = shlex.split(argv)
            code = run(list(argv), stdout, stderr)
            worst = max(worst, code)
    return worst


def main(argv: Optional[List[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
