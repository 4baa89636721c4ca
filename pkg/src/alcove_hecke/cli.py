"""Command line front end.

One binary, one subcommand per capability: inspect root data and strip
geometry, enumerate folded paths, compute module matrices, run named
verification suites, classify bounded sign systems, search degrees
empirically, evaluate the closed-form degree bound, and draw rank-2
pictures.  Options come from flags or a single TOML/JSON config file;
flags win.  JSON output is deterministic (sorted keys, two-space
indent) so identical configs write identical bytes.

Exit codes: 0 success, 1 a verification suite found failures, 2 bad
configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

try:
    import tomllib
except ModuleNotFoundError:  # stdlib from 3.11 on
    import tomli as tomllib

from .bounds import (
    classify,
    conjectural_bound,
    conjecture_factors,
    empirical_search,
    is_bounded,
    longest_weighted_length,
    satisfies,
)
from .heckemod import check_relations, module_rep, weight_diag_check
from .jgeom import (
    AI_P_elements,
    TJ_order,
    decompose_WbbJ,
    default_domain,
    jcontext,
    sigma_domain,
)
from .jparam import (
    JParamSystem,
    enumerate_systems,
    orbit_keys,
    orbit_weight,
    param_classes,
    weight_function,
)
from .laurent import SignedQMonomial, ql_to_json
from .paths import enumerate_paths, straighten, unstraighten
from .rootdata import RootSystem
from .svgfig import FigureError, build_scene, emit_svg
from .weyl import (
    aff_from_fin,
    aff_identity,
    aff_mul,
    reduced_word,
    sigma_group,
    simple_aff,
)

__all__ = ["main", "run"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


class ConfigError(ValueError):
    pass


# --- option parsing ----------------------------------------------------

def _parse_nodes(text: str) -> tuple:
    t = text.strip()
    if t in ("", "none"):
        return ()
    try:
        return tuple(int(x) for x in t.split(","))
    except ValueError:
        raise ConfigError(f"bad node list {text!r}") from None


def _parse_word(text: str) -> tuple:
    return _parse_nodes(text)


def _letter_classes(rs: RootSystem) -> dict:
    """Map weight letters to parameter classes.

    One class: everything is 'a'.  Two classes: 'a' short, 'b' long.
    Non-reduced with three classes: 'a' is the last node, 'b' the
    middle block, 'c' the affine node.
    """
    classes = param_classes(rs)
    if len(classes) == 1:
        return {"a": classes[0]}
    if rs.is_nonreduced:
        by_member = {}
        for cls in classes:
            if rs.rank in cls:
                by_member["a"] = cls
            elif 0 in cls:
                by_member["c"] = cls
            else:
                by_member["b"] = cls
        return by_member
    out = {}
    for cls in classes:
        fin = next(i for i in cls if i != 0)
        norm = rs.norm(rs.simple_root(fin))
        key = "a" if norm == min(
            rs.norm(rs.simple_root(j)) for j in rs.nodes) else "b"
        out[key] = cls
    return out


def _parse_weights(rs: RootSystem, text: str | None):
    if text is None:
        return weight_function(rs, {i: 1 for i in range(rs.rank + 1)})
    by_node: dict = {}
    letters = None
    for item in text.split(","):
        k, _, v = item.partition("=")
        k = k.strip()
        try:
            val = int(v)
        except ValueError:
            raise ConfigError(f"bad weight value in {item!r}") from None
        if k.isdigit():
            by_node[int(k)] = val
        else:
            if letters is None:
                letters = _letter_classes(rs)
            if k not in letters:
                raise ConfigError(
                    f"weight letter {k!r} not among {sorted(letters)}")
            for node in letters[k]:
                by_node[node] = val
    try:
        return weight_function(rs, by_node)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _parse_signs(ctx, wf, text: str | None) -> JParamSystem:
    """Sign per orbit key, e.g. 'alpha1=-,alpha3=+'; default all minus."""
    keys = orbit_keys(ctx)
    chosen = {k: -1 for k in keys}
    if text:
        for item in text.split(","):
            k, _, v = item.partition("=")
            k = k.strip()
            v = v.strip()
            if k not in keys:
                raise ConfigError(f"sign key {k!r} not among {list(keys)}")
            if v in ("+", "+1", "1"):
                chosen[k] = 1
            elif v in ("-", "-1"):
                chosen[k] = -1
            else:
                raise ConfigError(f"bad sign {v!r} for {k!r}")
    assignment = {}
    for k in keys:
        w = orbit_weight(ctx, wf, k)
        assignment[k] = (SignedQMonomial(1, w) if chosen[k] == 1
                         else SignedQMonomial(-1, -w))
    return JParamSystem(ctx, wf, assignment)


def _system_of(args):
    """Shared construction: root system, strip, weights, signs."""
    if args.type is None or args.rank is None:
        raise ConfigError("--type and --rank are required")
    try:
        rs = RootSystem(args.type, args.rank)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    J = _parse_nodes(args.J) if args.J is not None else ()
    try:
        ctx = jcontext(rs, J)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    wf = _parse_weights(rs, getattr(args, "weights", None))
    params = _parse_signs(ctx, wf, getattr(args, "signs", None))
    return rs, ctx, wf, params


def _domain_of(ctx, name: str | None):
    if name in (None, "default"):
        return None
    if name == "sigma":
        try:
            return sigma_domain(ctx)
        except ValueError as e:
            raise ConfigError(str(e)) from None
    raise ConfigError(f"unknown domain {name!r}")


def _word_element(rs, word):
    w = aff_identity(rs.rank)
    for i in word:
        if not 0 <= i <= rs.rank:
            raise ConfigError(f"letter {i} outside 0..{rs.rank}")
        w = aff_mul(w, simple_aff(rs, i))
    return w


def _threads(args) -> int:
    n = getattr(args, "threads", None)
    if n is None:
        n = int(os.environ.get("ALCOVE_HECKE_THREADS", "1"))
    if n < 1:
        raise ConfigError("--threads must be at least 1")
    return n


def _tmap(fn, items, threads):
    """Order-preserving map, threaded when asked to be."""
    items = list(items)
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# --- serialization helpers ----------------------------------------------

def _mono_json(m: SignedQMonomial) -> dict:
    return {"sign": m.sign, "q_exp": m.q_exp}


def _fin_word(rs, u) -> list:
    word, sigma = reduced_word(rs, aff_from_fin(u))
    if not sigma.is_identity():
        raise AssertionError("finite element produced a relabel")
    return list(word)


def _matrix_json(mat) -> list:
    return [[ql_to_json(e) for e in row] for row in mat.rows]


def _emit(args, payload: dict, text_lines) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


# --- subcommands --------------------------------------------------------

def cmd_root_info(args) -> int:
    try:
        rs = RootSystem(args.type, args.rank)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    payload = {
        "family": rs.family,
        "rank": rs.rank,
        "nonreduced": rs.is_nonreduced,
        "gram": [list(r) for r in rs.gram],
        "cartan": [list(r) for r in rs.cartan],
        "positive_roots": sorted(list(r) for r in rs.positive_roots),
        "wall_family": sorted(list(r) for r in rs.phi1_positive),
        "highest_root": list(rs.highest_root),
        "parameter_classes": [list(c) for c in param_classes(rs)],
    }
    lines = [
        f"{rs.family}{rs.rank}  nonreduced={rs.is_nonreduced}",
        f"positive roots: {len(rs.positive_roots)}  "
        f"wall family: {len(rs.phi1_positive)}",
        f"highest root: {list(rs.highest_root)}",
        f"parameter classes: {payload['parameter_classes']}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_jgeom(args) -> int:
    rs, ctx, wf, params = _system_of(args)
    dom = default_domain(ctx)
    payload = {
        "system": f"{rs.family}{rs.rank}",
        "J": list(ctx.J),
        "components": [list(c) for c in ctx.components],
        "strip_roots": sorted(list(r) for r in ctx.phiJ_positive),
        "component_tops": [list(r) for r in ctx.highest_roots],
        "floor_walls": sorted([list(r), k] for r, k in ctx.floor_walls),
        "ceiling_walls": sorted([list(r), k] for r, k in ctx.ceiling_walls),
        "zeta_arity": ctx.zeta_arity,
        "domain_size": len(dom),
        "relabel_group_order": len(sigma_group(rs)),
        "orbit_keys": list(orbit_keys(ctx)),
    }
    if ctx.J == tuple(rs.nodes):
        payload["translation_group_order"] = TJ_order(ctx)
        payload["lattice_points"] = [list(p) for p in AI_P_elements(ctx)]
    lines = [f"{payload['system']}, J={payload['J']}"]
    lines += [f"  components: {payload['components']}",
              f"  strip roots: {payload['strip_roots']}",
              f"  domain size: {payload['domain_size']}",
              f"  zeta arity: {payload['zeta_arity']}",
              f"  orbit keys: {payload['orbit_keys']}"]
    if "translation_group_order" in payload:
        lines.append(
            f"  translation group order: {payload['translation_group_order']}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_paths(args) -> int:
    rs, ctx, wf, params = _system_of(args)
    if args.word is None:
        raise ConfigError("--word is required")
    word = _parse_word(args.word)
    for i in word:
        if not 0 <= i <= rs.rank:
            raise ConfigError(f"letter {i} outside 0..{rs.rank}")
    start = aff_identity(rs.rank)
    if args.start:
        start = _word_element(rs, _parse_word(args.start))
    theta = None
    if args.theta is not None:
        tw = _parse_word(args.theta)
        if any(i == 0 for i in tw):
            raise ConfigError("--theta takes finite letters 1..rank")
        theta = _word_element(rs, tw).lin
    try:
        found = enumerate_paths(ctx, word, start=start, theta=theta)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    records = []
    for p in found:
        lam, theta = decompose_WbbJ(ctx, p.end)
        records.append({
            "pattern": p.pattern(),
            "steps": [{"node": st.node, "kind": st.kind, "sign": st.sign}
                      for st in p.steps],
            "end_translation": list(p.end.wt),
            "strip_point": list(lam),
            "theta_word": _fin_word(rs, theta),
            "zeta_exponent": list(ctx.zeta_exponent(lam)),
            "mass": ql_to_json(p.mass(params)),
            "folds": p.fold_count(),
            "bounces": sum(p.bounce_counts().values()),
        })
    payload = {
        "system": f"{rs.family}{rs.rank}",
        "J": list(ctx.J),
        "word": list(word),
        "count": len(records),
        "paths": records,
    }
    lines = [f"{len(records)} paths along {list(word)}"]
    lines += [f"  {r['pattern']:<30} folds={r['folds']} "
              f"bounces={r['bounces']} zeta={r['zeta_exponent']}"
              for r in records]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_matrix(args) -> int:
    rs, ctx, wf, params = _system_of(args)
    domain = _domain_of(ctx, args.domain)
    eng = module_rep(ctx, params, domain)
    if (args.word is None) == (args.element is None):
        raise ConfigError("exactly one of --word or --element")
    sigma = aff_identity(rs.rank)
    if args.sigma:
        grp = sigma_group(rs)
        if not 0 <= args.sigma < len(grp):
            raise ConfigError(f"--sigma must index 0..{len(grp) - 1}")
        sigma = grp[args.sigma]
    method = args.method or "product"
    if method not in ("product", "paths"):
        raise ConfigError(f"unknown method {args.method!r}")
    if args.word is not None:
        word = _parse_word(args.word)
        for i in word:
            if not 0 <= i <= rs.rank:
                raise ConfigError(f"letter {i} outside 0..{rs.rank}")
        if method == "product":
            mat = eng.of_word(word, sigma)
        else:
            mat = eng.via_paths_word(word, sigma)
        shown = list(word)
    else:
        if args.sigma:
            raise ConfigError("--sigma only combines with --word")
        elt = _word_element(rs, _parse_word(args.element))
        mat = eng.of_elt(elt) if method == "product" else eng.via_paths(elt)
        shown, _ = reduced_word(rs, elt)
        shown = list(shown)
    payload = {
        "system": f"{rs.family}{rs.rank}",
        "J": list(ctx.J),
        "word": shown,
        "method": method,
        "domain": args.domain or "default",
        "dim": mat.dim,
        "zeta_arity": mat.arity,
        "entries": _matrix_json(mat),
    }
    lines = [f"matrix of {shown} ({method}), dim {mat.dim}"]
    for row in mat.rows:
        lines.append("  [" + ", ".join(str(e) for e in row) + "]")
    _emit(args, payload, lines)
    return EXIT_OK


def _suite_relations(rs, ctx, wf, params, args, threads):
    return check_relations(ctx, params)


def _suite_paths(rs, ctx, wf, params, args, threads):
    eng = module_rep(ctx, params)
    letters = list(range(rs.rank + 1))
    short = [(i,) for i in letters]
    short += [(i, j) for i in letters for j in letters]
    rng = random.Random(0)
    longer = [tuple(rng.choice(letters) for _ in range(rng.randint(3, 6)))
              for _ in range(args.samples or 40)]
    grp = sigma_group(rs)

    def one(word):
        bad = []
        for sg in grp:
            if eng.of_word(word, sg) != eng.via_paths_word(word, sg):
                bad.append(f"paths!=product at {word} sigma={grp.index(sg)}")
        return bad

    out = []
    for chunk in _tmap(one, short + longer, threads):
        out.extend(chunk)
    return out


def _suite_weights(rs, ctx, wf, params, args, threads):
    lams = [tuple(int(i == j) for i in range(rs.rank))
            for j in range(rs.rank)]
    lams.append((1,) * rs.rank)
    out = []
    for rec in weight_diag_check(ctx, params, lams):
        if not rec["annihilated"]:
            out.append(f"spectrum product nonzero at {rec['lam']}")
    return out


def _suite_straighten(rs, ctx, wf, params, args, threads):
    letters = list(range(rs.rank + 1))
    rng = random.Random(1)
    words = [tuple(rng.choice(letters) for _ in range(rng.randint(1, 4)))
             for _ in range(args.samples or 30)]

    def one(word):
        bad = []
        for p in enumerate_paths(ctx, word):
            sp = straighten(p)
            if unstraighten(ctx, sp.unfolded) != p:
                bad.append(f"round trip failed: {p.pattern()} along {word}")
        return bad

    out = []
    for chunk in _tmap(one, words, threads):
        out.extend(chunk)
    return out


_SUITES = {
    "relations": _suite_relations,
    "paths": _suite_paths,
    "weights": _suite_weights,
    "straighten": _suite_straighten,
}


def cmd_verify(args) -> int:
    rs, ctx, wf, params = _system_of(args)
    threads = _threads(args)
    names = list(_SUITES) if args.suite in (None, "all") else [args.suite]
    for name in names:
        if name not in _SUITES:
            raise ConfigError(f"unknown suite {name!r}; "
                              f"have {sorted(_SUITES)} or all")
    failures = {}
    for name in names:
        failures[name] = _SUITES[name](rs, ctx, wf, params, args, threads)
    total = sum(len(v) for v in failures.values())
    payload = {
        "system": f"{rs.family}{rs.rank}",
        "J": list(ctx.J),
        "suites": {k: {"failures": v, "ok": not v}
                   for k, v in failures.items()},
        "ok": total == 0,
    }
    lines = []
    for name in names:
        flaws = failures[name]
        lines.append(f"suite {name}: {'ok' if not flaws else 'FAIL'}")
        lines += [f"  {msg}" for msg in flaws]
    _emit(args, payload, lines)
    return EXIT_OK if total == 0 else EXIT_FAIL


def cmd_classify(args) -> int:
    if args.type is None or args.rank is None:
        raise ConfigError("--type and --rank are required")
    try:
        rs = RootSystem(args.type, args.rank)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    rows = classify(rs)
    threads = _threads(args)

    def row_json(row):
        rec = {
            "signs": dict(sorted(row["signs"].items())),
            "constraints": [
                " + ".join(f"{c}*L({k})" for k, c in form) + " <= 0"
                for form in row["constraints"]
            ],
        }
        return rec

    payload = {
        "family": rs.family,
        "rank": rs.rank,
        "rows": [row_json(r) for r in rows],
    }
    lines = [f"{rs.family}{rs.rank}: {len(rows)} bounded sign patterns"]
    for rec in payload["rows"]:
        lines.append(f"  signs {rec['signs']}")
        for c in rec["constraints"]:
            lines.append(f"    requires {c}")
    if args.weights is not None:
        wf = _parse_weights(rs, args.weights)
        ctx = jcontext(rs, tuple(rs.nodes))
        weight_of = {k: orbit_weight(ctx, wf, k) for k in orbit_keys(ctx)}
        held = [satisfies(row, weight_of) for row in rows]
        bounded = _tmap(lambda ps: is_bounded(ctx, ps),
                        enumerate_systems(ctx, wf), threads)
        payload["weights"] = dict(weight_of)
        payload["rows_holding"] = [i for i, h in enumerate(held) if h]
        payload["bounded_system_count"] = sum(bounded)
        lines.append(f"at weights {payload['weights']}: rows "
                     f"{payload['rows_holding']} hold, "
                     f"{payload['bounded_system_count']} bounded systems")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_bound_search(args) -> int:
    rs, ctx, wf, params = _system_of(args)
    domain = _domain_of(ctx, args.domain)
    radius = args.radius or 6
    twists = bool(args.include_sigma_twists)
    rep = empirical_search(ctx, params, radius, domain=domain,
                           include_sigma_twists=twists)
    grp = sigma_group(rs)
    attaining = []
    for w in rep.arg_set:
        word, sg = reduced_word(rs, w)
        attaining.append({"word": list(word), "relabel": grp.index(sg)})
    attaining.sort(key=lambda r: (len(r["word"]), r["word"], r["relabel"]))
    payload = {
        "system": f"{rs.family}{rs.rank}",
        "J": list(ctx.J),
        "signs": {k: s for k, s, _ in params.signature()},
        "weights": {k: orbit_weight(ctx, wf, k) for k in orbit_keys(ctx)},
        "radius": rep.radius,
        "max_degree": (None if rep.max_degree is None
                       or rep.max_degree == float("-inf")
                       else rep.max_degree),
        "attaining": attaining,
        "conjectured_bound": rep.conjectured_bound,
        "stabilized": rep.stabilized,
        "bounded": is_bounded(ctx, params),
    }
    lines = [
        f"radius {rep.radius}: max degree {payload['max_degree']} "
        f"at {len(rep.arg_set)} elements, stabilized={rep.stabilized}",
        f"closed-form bound: {rep.conjectured_bound}",
    ]
    lines += [f"  word {r['word']} relabel {r['relabel']}"
              for r in attaining]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_conjecture_eval(args) -> int:
    rs, ctx, wf, params = _system_of(args)
    nums, dens = conjecture_factors(ctx, params)
    omitted_num = sum(1 for m in nums if m.is_one())
    omitted_den = sum(1 for m in dens if m.is_one())
    bound = None
    note = None
    if is_bounded(ctx, params):
        try:
            bound = conjectural_bound(ctx, params)
        except ValueError as e:
            note = str(e)
    else:
        note = "unbounded parameter system"
    payload = {
        "system": f"{rs.family}{rs.rank}",
        "J": list(ctx.J),
        "signs": {k: s for k, s, _ in params.signature()},
        "weights": {k: orbit_weight(ctx, wf, k) for k in orbit_keys(ctx)},
        "longest_weighted_length": longest_weighted_length(rs, wf),
        "numerator_factors": [_mono_json(m) for m in nums],
        "denominator_factors": [_mono_json(m) for m in dens],
        "omitted_factors": {"numerator": omitted_num,
                            "denominator": omitted_den},
        "degenerate": omitted_den > 0,
        "bound": bound,
        "note": note,
    }
    lines = [f"bound: {bound}" if note is None else f"bound: {bound} ({note})"]
    if payload["degenerate"]:
        lines.append(f"degenerate: {omitted_den} denominator factors "
                     "vanish and are omitted")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_plot(args) -> int:
    rs, ctx, wf, params = _system_of(args)
    path = None
    if args.word is not None:
        word = _parse_word(args.word)
        for i in word:
            if not 0 <= i <= rs.rank:
                raise ConfigError(f"letter {i} outside 0..{rs.rank}")
        try:
            found = enumerate_paths(ctx, word)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if not found:
            raise ConfigError(f"no folded paths along {list(word)}")
        idx = args.path_index or 0
        if not 0 <= idx < len(found):
            raise ConfigError(
                f"--path-index must be 0..{len(found) - 1}")
        path = found[idx]
    try:
        scene = build_scene(ctx, path, k_bound=args.k_bound or 2)
    except FigureError as e:
        raise ConfigError(str(e)) from None
    text = emit_svg(scene)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


# --- wiring --------------------------------------------------------------

def _add_system_options(sp, weights=True, signs=True):
    sp.add_argument("--type", help="root system family, e.g. A, C, BC")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--J", help="comma separated node subset, empty for none")
    if weights:
        sp.add_argument("--weights",
                        help="a=..,b=..,c=.. letters or node=value pairs")
    if signs:
        sp.add_argument("--signs",
                        help="orbit key = + or - per entry, default all -")


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a value parsed before the subcommand from being
    # clobbered by the subparser's own default.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="TOML or JSON file with option defaults")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker cap, also ALCOVE_HECKE_THREADS")
    ap = argparse.ArgumentParser(
        prog="alcove-hecke", parents=[common],
        description="strip modules over multiparameter affine Hecke algebras")
    sub = ap.add_subparsers(dest="command", required=True)
    sub_parents = {"parents": [common]}

    sp = sub.add_parser("root-info", help="print root system data",
                        **sub_parents)
    sp.add_argument("--type")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_root_info)

    sp = sub.add_parser("jgeom", help="strip geometry summary",
                        **sub_parents)
    _add_system_options(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_jgeom)

    sp = sub.add_parser("paths",
                        help="enumerate folded paths along a word",
                        **sub_parents)
    _add_system_options(sp)
    sp.add_argument("--word", help="comma separated letters 0..rank")
    sp.add_argument("--start", help="start alcove as a letter word")
    sp.add_argument("--theta",
                    help="keep only endpoints with this residual word; "
                         "empty string for the identity")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_paths)

    sp = sub.add_parser("matrix",
                        help="module matrix of a word or element",
                        **sub_parents)
    _add_system_options(sp)
    sp.add_argument("--word")
    sp.add_argument("--element")
    sp.add_argument("--method", choices=["product", "paths"])
    sp.add_argument("--domain", choices=["default", "sigma"])
    sp.add_argument("--sigma", type=int, default=0,
                    help="relabel index applied after a --word")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_matrix)

    sp = sub.add_parser("verify", help="run a named verification suite",
                        **sub_parents)
    _add_system_options(sp)
    sp.add_argument("--suite",
                    help="relations, paths, weights, straighten, or all")
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("classify",
                        help="bounded sign patterns for the full node set",
                        **sub_parents)
    sp.add_argument("--type")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--weights")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("bound-search", help="empirical degree search",
                        **sub_parents)
    _add_system_options(sp)
    sp.add_argument("--radius", type=int)
    sp.add_argument("--domain", choices=["default", "sigma"])
    sp.add_argument("--include-sigma-twists", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_bound_search)

    sp = sub.add_parser("conjecture-eval",
                        help="closed-form degree bound and its factors",
                        **sub_parents)
    _add_system_options(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_conjecture_eval)

    sp = sub.add_parser("plot", help="rank-2 SVG picture",
                        **sub_parents)
    _add_system_options(sp, signs=False)
    sp.add_argument("--word")
    sp.add_argument("--path-index", type=int, default=None)
    sp.add_argument("--k-bound", type=int, default=None)
    sp.add_argument("--out", help="output file, stdout when absent")
    sp.set_defaults(fn=cmd_plot)

    return ap


def _load_config(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    if path.endswith(".json"):
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as e:
            raise ConfigError(f"bad JSON config: {e}") from None
    else:
        try:
            data = tomllib.loads(raw.decode("utf-8"))
        except (tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
            raise ConfigError(f"bad TOML config: {e}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a table of options")
    return data


def _apply_config(args, data: dict) -> None:
    """File values fill options the flags left unset."""
    for key, val in data.items():
        attr = key.replace("-", "_")
        if attr in ("command", "fn", "config"):
            raise ConfigError(f"config may not set {key!r}")
        if attr == "threads" and not hasattr(args, attr):
            setattr(args, attr, None)
        if not hasattr(args, attr):
            raise ConfigError(f"option {key!r} does not apply to "
                              f"{args.command}")
        current = getattr(args, attr)
        if current is None or current is False or (
                attr == "sigma" and current == 0):
            if isinstance(val, (list, tuple)):
                val = ",".join(str(x) for x in val)
            if not isinstance(val, (bool, int, str)):
                raise ConfigError(f"bad config value for {key!r}")
            setattr(args, attr, val)


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = getattr(args, "config", None)
        if cfg:
            _apply_config(args, _load_config(cfg))
        return args.fn(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
