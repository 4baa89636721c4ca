"""Folded alcove paths inside the strip.

A path follows a generator word from a starting alcove, and at every step
either crosses the separating wall or stays put.  Staying comes in two
flavors: a fold, when the wall lies inside the strip and the walk arrived
on its positive side, and a bounce, forced whenever crossing would leave
the strip.  A final length-zero relabel closes the walk.  The mass of a
path collects one quadratic gap per fold and one wall parameter per
bounce; path sums of mass times the zeta weight of the endpoint are
exactly the matrix entries of the module action computed in heckemod.

Straightening unrolls every bounce through the reflection group of the
strip walls, turning a strip path into a positively folded path in the
empty-J context plus a tally of the boundary walls it pressed against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .jgeom import (
    JContext,
    decompose_WbbJ,
    in_WbbJ,
    jcontext,
    phi1_rep,
    separating_wall,
    tJ_of,
)
from .jparam import JParamSystem, wall_label
from .laurent import SQM_ONE, QLaurent
from .weyl import (
    AffElt,
    aff_act_root,
    aff_identity,
    aff_inverse,
    aff_mul,
    crossing_sign,
    sigma_group,
    simple_aff,
)

__all__ = [
    "Step",
    "JFoldedPath",
    "PathError",
    "enumerate_paths",
    "tJ_act",
    "StraightenedPath",
    "straighten",
    "unstraighten",
]


class PathError(ValueError):
    """A step sequence that violates the folding rules."""


@dataclass(frozen=True)
class Step:
    kind: str          # "cross" | "fold" | "bounce"
    sign: int          # +1 or -1; 0 on input means "fill in"
    node: int          # generator index 0..n
    wall: tuple | None = None  # separating hyperplane, filled on build

    def glyph(self) -> str:
        mark = {"cross": "", "fold": "^", "bounce": "!"}[self.kind]
        return f"{self.node}{mark}"


class JFoldedPath:
    """A validated folded walk; construction checks every step."""

    __slots__ = ("ctx", "start", "word", "steps", "sigma", "points",
                 "_hash")

    def __init__(self, ctx: JContext, start: AffElt, word, steps,
                 sigma: AffElt | None = None):
        rs = ctx.rs
        word = tuple(word)
        if sigma is None:
            sigma = aff_identity(rs.rank)
        if sigma not in sigma_group(rs):
            raise PathError("final relabel is not length zero")
        if len(steps) != len(word):
            raise PathError("one step per letter")
        if not in_WbbJ(ctx, start):
            raise PathError(f"start {start} is outside the strip")
        points = [start]
        built = []
        for i, st in zip(word, steps):
            prev = points[-1]
            if st.node != i:
                raise PathError("step node does not match the word")
            x = aff_mul(prev, simple_aff(rs, i))
            csign = crossing_sign(rs, prev, i)
            can_cross = in_WbbJ(ctx, x)
            wall, _ = separating_wall(ctx, prev, i)
            if st.kind == "cross":
                if not can_cross:
                    raise PathError(f"crossing {i} leaves the strip")
                if st.sign not in (0, csign):
                    raise PathError("crossing sign mismatch")
                built.append(Step("cross", csign, i, wall))
                points.append(x)
            elif st.kind == "fold":
                if not can_cross:
                    raise PathError("fold wall is not inside the strip")
                if csign != -1:
                    raise PathError("folds happen on the positive side")
                built.append(Step("fold", 1, i, wall))
                points.append(prev)
            elif st.kind == "bounce":
                if can_cross:
                    raise PathError("bounce wall must bound the strip")
                if st.sign not in (0, -csign):
                    raise PathError("bounce sign mismatch")
                if csign == -1:
                    if wall not in ctx.floor_walls:
                        raise PathError(
                            f"positive bounce off non-floor wall {wall}")
                else:
                    if wall not in ctx.ceiling_walls:
                        raise PathError(
                            f"negative bounce off non-ceiling wall {wall}")
                built.append(Step("bounce", -csign, i, wall))
                points.append(prev)
            else:
                raise PathError(f"unknown step kind {st.kind!r}")
        points.append(aff_mul(points[-1], sigma))
        if not in_WbbJ(ctx, points[-1]):
            raise AssertionError("relabel left the strip")
        self.ctx = ctx
        self.start = start
        self.word = word
        self.steps = tuple(built)
        self.sigma = sigma
        self.points = tuple(points)
        self._hash = hash((ctx, start, word, self.steps, sigma))

    @property
    def end(self) -> AffElt:
        return self.points[-1]

    def __eq__(self, other):
        return (isinstance(other, JFoldedPath)
                and self.ctx == other.ctx and self.start == other.start
                and self.word == other.word and self.steps == other.steps
                and self.sigma == other.sigma)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"JFoldedPath({self.pattern()}, start={self.start}, "
                f"end={self.end})")

    def pattern(self) -> str:
        """Compact step transcript: plain letters cross, ^ folds,
        ! bounces."""
        return " ".join(st.glyph() for st in self.steps)

    def kind_signs(self) -> tuple:
        return tuple((st.kind, st.sign) for st in self.steps)

    def wt_theta(self, domain=None):
        """Endpoint factorization: strip weight and the residual part.

        With no domain the residual is the minimal coset representative;
        with a domain it is the domain element."""
        if domain is None:
            return decompose_WbbJ(self.ctx, self.end)
        return domain.wt_theta(self.end)

    def fold_count(self) -> int:
        return sum(1 for st in self.steps if st.kind == "fold")

    def bounce_counts(self) -> dict:
        out: dict = {}
        for st in self.steps:
            if st.kind == "bounce":
                out[st.wall] = out.get(st.wall, 0) + 1
        return out

    def mass(self, params: JParamSystem) -> QLaurent:
        """Product of bounce wall parameters and fold gaps."""
        if params.ctx != self.ctx:
            raise ValueError("parameter system is for a different strip")
        arity = self.ctx.zeta_arity
        mono = SQM_ONE
        out = None
        for st in self.steps:
            if st.kind == "bounce":
                mono = mono * wall_label(params, st.wall)
            elif st.kind == "fold":
                g = params.wf.gap(st.node, arity)
                out = g if out is None else out * g
        base = mono.to_laurent(arity)
        return base if out is None else base * out

    def crossing_exponents(self) -> tuple:
        """Signs epsilon_k over the crossing steps, the exponent word of
        the grouplike element X."""
        return tuple(st.sign for st in self.steps if st.kind == "cross")


def _search(ctx: JContext, word, start: AffElt):
    """All legal (kind, sign) skeletons for the word, crossings explored
    before folds so the output order is deterministic."""
    rs = ctx.rs
    out = []
    skeleton = []

    def walk(k: int, prev: AffElt):
        if k == len(word):
            out.append(tuple(skeleton))
            return
        i = word[k]
        x = aff_mul(prev, simple_aff(rs, i))
        csign = crossing_sign(rs, prev, i)
        if in_WbbJ(ctx, x):
            skeleton.append(("cross", csign))
            walk(k + 1, x)
            skeleton.pop()
            if csign == -1:
                skeleton.append(("fold", 1))
                walk(k + 1, prev)
                skeleton.pop()
        else:
            skeleton.append(("bounce", -csign))
            walk(k + 1, prev)
            skeleton.pop()

    walk(0, start)
    return tuple(out)


_SEARCH_CACHE: dict = {}


def enumerate_paths(ctx: JContext, word, *, start: AffElt | None = None,
                    sigma: AffElt | None = None, domain=None,
                    theta=None) -> tuple:
    """Every folded path along the word, in cross-before-fold order.

    ``theta`` filters on the residual factor of the endpoint: a finite
    element when no domain is given, a domain element otherwise.
    """
    word = tuple(word)
    if start is None:
        start = aff_identity(ctx.rs.rank)
    key = (ctx, word, start)
    skels = _SEARCH_CACHE.get(key)
    if skels is None:
        if not in_WbbJ(ctx, start):
            raise ValueError(f"start {start} is outside the strip")
        skels = _search(ctx, word, start)
        _SEARCH_CACHE[key] = skels
    paths = []
    for skel in skels:
        steps = [Step(kind, sg, i) for (kind, sg), i in zip(skel, word)]
        paths.append(JFoldedPath(ctx, start, word, steps, sigma))
    if theta is not None:
        paths = [p for p in paths if p.wt_theta(domain)[1] == theta]
    return tuple(paths)


def tJ_act(ctx: JContext, lam, p: JFoldedPath) -> JFoldedPath:
    """Translate a whole path by the strip translation of lam.

    Step kinds survive untouched; signs are recomputed because the
    linear part of the translation can swap floor and ceiling."""
    new_start = aff_mul(tJ_of(ctx, lam), p.start)
    steps = [Step(st.kind, 0, st.node) for st in p.steps]
    return JFoldedPath(ctx, new_start, p.word, steps, p.sigma)


@dataclass(frozen=True)
class StraightenedPath:
    """Unfolded image of a strip path: a positively folded path in the
    empty-J context plus its pressed boundary walls with multiplicity."""

    unfolded: JFoldedPath
    wall_counts: tuple  # sorted ((root, level), count) pairs

    def wall_dict(self) -> dict:
        return dict(self.wall_counts)


def _reflection_across(prev: AffElt, s: AffElt) -> AffElt:
    """prev s prev^-1, the reflection in the wall separating prev from
    prev s."""
    return aff_mul(aff_mul(prev, s), aff_inverse(prev))


def _map_wall(g: AffElt, wall, rs):
    """Image of a named hyperplane under an affine element."""
    root, k = wall
    beta, m = aff_act_root(g, (root, -k))
    if all(x <= 0 for x in beta):
        beta, m = tuple(-x for x in beta), -m
    return phi1_rep(rs, beta, -m)


def straighten(p: JFoldedPath) -> StraightenedPath:
    """Unroll bounces through reflections in the pressed walls.

    Every bounce becomes a crossing, every fold stays a fold, and the
    pressed wall of each bounce is recorded in unfolded coordinates,
    one tally per geometric hyperplane.
    """
    ctx = p.ctx
    rs = ctx.rs
    ctx0 = jcontext(rs, ())
    g = aff_identity(rs.rank)
    counts: dict = {}
    steps0 = []
    for k, st in enumerate(p.steps):
        prev = p.points[k]
        if st.kind == "bounce":
            wall = _map_wall(g, st.wall, rs)
            counts[wall] = counts.get(wall, 0) + 1
            g = aff_mul(g, _reflection_across(prev, simple_aff(rs, st.node)))
            steps0.append(Step("cross", 0, st.node))
        elif st.kind == "cross":
            steps0.append(Step("cross", 0, st.node))
        else:
            steps0.append(Step("fold", 1, st.node))
    unfolded = JFoldedPath(ctx0, p.start, p.word, steps0, p.sigma)
    return StraightenedPath(unfolded, tuple(sorted(counts.items())))


def unstraighten(ctx: JContext, pJ: JFoldedPath) -> JFoldedPath:
    """Fold a positively folded path back into the strip.

    The input must live in the empty-J context, start inside the strip,
    and fold only away from the strip-parallel walls; crossings that
    leave the strip turn back into bounces.
    """
    rs = ctx.rs
    if pJ.ctx.J != ():
        raise ValueError("unstraightening expects an empty-J path")
    if not in_WbbJ(ctx, pJ.start):
        raise ValueError("start is outside the strip")
    h = aff_identity(rs.rank)
    prev = pJ.start
    steps = []
    for k, st in enumerate(pJ.steps):
        i = st.node
        if st.kind == "fold":
            wall, _ = separating_wall(pJ.ctx, pJ.points[k], i)
            if _parallel_to_strip(ctx, wall):
                raise ValueError("fold on a strip-parallel wall")
            steps.append(Step("fold", 1, i))
        elif st.kind == "cross":
            cand = aff_mul(h, pJ.points[k + 1])
            if in_WbbJ(ctx, cand):
                steps.append(Step("cross", 0, i))
                prev = cand
            else:
                wall, _ = separating_wall(ctx, prev, i)
                if (wall not in ctx.floor_walls
                        and wall not in ctx.ceiling_walls):
                    raise AssertionError(
                        f"blocked crossing at non-boundary wall {wall}")
                h = aff_mul(_reflection_across(prev, simple_aff(rs, i)), h)
                steps.append(Step("bounce", 0, i))
        else:
            raise ValueError("input path has a bounce; it is not "
                             "positively folded in the empty-J sense")
    return JFoldedPath(ctx, pJ.start, pJ.word, steps, pJ.sigma)


def _parallel_to_strip(ctx: JContext, wall) -> bool:
    root, _ = wall
    if root in ctx.phiJ_set:
        return True
    half = tuple(x // 2 for x in root)
    return (all(x % 2 == 0 for x in root) and half in ctx.phiJ_set)
