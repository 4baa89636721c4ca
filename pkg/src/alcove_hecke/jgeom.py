"""Geometry of the J-strip.

For a subset J of the Dynkin nodes, the strip is the closed region where
every positive root supported on J pairs into [0, 1].  Three families of
objects live here and everything else in the package is built from them:

* the translation-like elements t_lam = t_lam y_lam, one for each lattice
  point lam of the strip, which form the group acting on the set of
  elements whose alcove lies inside the strip;
* the set of those elements itself, with membership tests and the unique
  factorization through a fundamental domain;
* the zeta grading, a free abelian quotient of the coweight lattice that
  kills the span of the J-coroots.

Conventions are shared with rootdata/weyl: coweights in omega coordinates,
roots in alpha coordinates, affine functionals (beta, k) meaning
x -> <x, beta> + k, so the functional's zero set is the hyperplane
H_{beta, -k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property

from ._intmat import snf
from .rootdata import RootSystem, pairing
from .weyl import (
    AffElt,
    FinWeyl,
    W0_list,
    aff_act_root,
    aff_from_fin,
    aff_identity,
    aff_inverse,
    aff_mul,
    aff_translation,
    affine_simple_root,
    fin_apply_coweight,
    fin_apply_root,
    fin_inverse,
    fin_mul,
    is_negative_affroot,
    longest_in,
    node_perm,
    reduced_word,
    sigma_group,
)

__all__ = [
    "JContext",
    "jcontext",
    "in_AJ",
    "project_AJ",
    "yJ_of",
    "tJ_of",
    "in_TJ",
    "tJ_mul",
    "tJ_inverse",
    "in_WbbJ",
    "decompose_WbbJ",
    "WJ_reps",
    "FundamentalDomain",
    "default_domain",
    "sigma_domain",
    "phi1_rep",
    "separating_wall",
    "TJ_order",
    "AI_P_elements",
]

_PROJECT_CAP = 10_000


@dataclass(frozen=True)
class JContext:
    """A root system together with a choice of node subset J."""

    rs: RootSystem
    J: tuple

    def __post_init__(self):
        nodes = set(self.rs.nodes)
        if list(self.J) != sorted(set(self.J)):
            raise ValueError("J must be strictly increasing")
        if not set(self.J) <= nodes:
            raise ValueError(f"J {self.J} not within nodes {sorted(nodes)}")

    def __repr__(self):
        return f"JContext({self.rs}, J={{{','.join(map(str, self.J))}}})"

    @cached_property
    def components(self) -> tuple:
        """Connected components of J in the Dynkin graph, each sorted."""
        gram = self.rs.gram
        left = set(self.J)
        out = []
        while left:
            seed = min(left)
            comp = {seed}
            frontier = [seed]
            while frontier:
                a = frontier.pop()
                for b in left - comp:
                    if gram[a - 1][b - 1] != 0:
                        comp.add(b)
                        frontier.append(b)
            out.append(tuple(sorted(comp)))
            left -= comp
        return tuple(out)

    @cached_property
    def phiJ_positive(self) -> tuple:
        """Positive roots supported on J, doubles included."""
        Jset = set(self.J)
        return tuple(r for r in self.rs.positive_roots
                     if all(r[j - 1] == 0 for j in self.rs.nodes
                            if j not in Jset))

    @cached_property
    def phiJ_set(self) -> frozenset:
        neg = {tuple(-x for x in r) for r in self.phiJ_positive}
        return frozenset(self.phiJ_positive) | neg

    @cached_property
    def highest_roots(self) -> tuple:
        """The dominant root of each component, aligned with components."""
        out = []
        for comp in self.components:
            cset = set(comp)
            cands = [r for r in self.phiJ_positive
                     if set(j for j in self.rs.nodes if r[j - 1]) <= cset
                     and any(r[j - 1] for j in comp)]
            top = max(cands, key=lambda r: (sum(r), r))
            for j in comp:
                c = sum(self.rs.cartan[j - 1][k] * top[k]
                        for k in range(self.rs.rank))
                if c < 0:
                    raise AssertionError(f"component top {top} not dominant")
            out.append(top)
        return tuple(out)

    @cached_property
    def wall_functionals(self) -> tuple:
        """Affine functionals cutting out the strip, nonnegative exactly
        on it: (alpha_j, 0) per j in J and (-phi_K, 1) per component."""
        funcs = [(self.rs.simple_root(j), 0) for j in self.J]
        funcs += [(tuple(-x for x in phi), 1) for phi in self.highest_roots]
        return tuple(funcs)

    @cached_property
    def _zeta_data(self):
        n = self.rs.rank
        rows = [self.rs.coroot(self.rs.simple_root(j)) for j in self.J]
        if not rows:
            cols = tuple(tuple(int(i == j) for i in range(n))
                         for j in range(n))
            return cols
        d, _, V = snf(rows)
        r = sum(1 for x in d if x)
        if r != len(rows):
            raise AssertionError("J-coroots are not independent")
        cols = []
        for j in range(r, n):
            col = [V[i][j] for i in range(n)]
            lead = next((x for x in col if x), 0)
            if lead < 0:
                col = [-x for x in col]
            for row in rows:
                if sum(a * b for a, b in zip(row, col)):
                    raise AssertionError("zeta functional misses the kernel")
            cols.append(tuple(col))
        return tuple(cols)

    @property
    def zeta_arity(self) -> int:
        return self.rs.rank - len(self.J)

    def zeta_exponent(self, lam) -> tuple:
        """Image of a coweight in the zeta grading.  Kills exactly the
        rational span of the J-coroots intersected with the lattice."""
        return tuple(sum(a * b for a, b in zip(lam, col))
                     for col in self._zeta_data)

    @cached_property
    def floor_walls(self) -> frozenset:
        """Level-zero boundary hyperplanes, named by Phi_1 representatives."""
        return frozenset(phi1_rep(self.rs, self.rs.simple_root(j), 0)
                         for j in self.J)

    @cached_property
    def ceiling_walls(self) -> frozenset:
        """Level-one boundary hyperplanes through the component tops."""
        return frozenset((phi, 1) for phi in self.highest_roots)

    @cached_property
    def _wbbj_cache(self) -> dict:
        return {}

    @cached_property
    def _y_cache(self) -> dict:
        return {}


@cache
def jcontext(rs: RootSystem, J) -> JContext:
    return JContext(rs, tuple(sorted(set(J))))


def in_AJ(ctx: JContext, lam) -> bool:
    """Is the coweight inside the closed strip?"""
    if any(lam[j - 1] < 0 for j in ctx.J):
        return False
    return all(pairing(lam, phi) <= 1 for phi in ctx.highest_roots)


def project_AJ(ctx: JContext, lam):
    """Representative of the J-affine orbit of lam inside the strip.

    Walks by wall reflections: a violated floor <., alpha_j> >= 0 applies
    s_j, a violated ceiling <., phi_K> <= 1 applies the affine reflection
    in H_{phi_K, 1}.
    """
    cur = tuple(lam)
    for _ in range(_PROJECT_CAP):
        j = next((j for j in ctx.J if cur[j - 1] < 0), None)
        if j is not None:
            cur = ctx.rs.reflect_coweight(j, cur)
            continue
        for phi in ctx.highest_roots:
            c = pairing(cur, phi)
            if c > 1:
                cov = ctx.rs.coroot(phi)
                cur = tuple(a - (c - 1) * b for a, b in zip(cur, cov))
                break
        else:
            return cur
    raise RuntimeError(f"projection of {lam} did not settle "
                       f"in {_PROJECT_CAP} steps")


def yJ_of(ctx: JContext, lam) -> FinWeyl:
    """The finite part y_lam = w_{J_lam} w_J of the strip translation at
    lam, where J_lam collects the floor walls through lam."""
    key = tuple(lam)
    cached = ctx._y_cache.get(key)
    if cached is not None:
        return cached
    if not in_AJ(ctx, lam):
        raise ValueError(f"{lam} is not in the strip")
    stab = tuple(j for j in ctx.J if lam[j - 1] == 0)
    y = fin_mul(longest_in(ctx.rs, stab), longest_in(ctx.rs, ctx.J))
    ctx._y_cache[key] = y
    return y


def tJ_of(ctx: JContext, lam) -> AffElt:
    """The strip translation t_lam = t_lam y_lam."""
    return aff_mul(aff_translation(tuple(lam)), aff_from_fin(yJ_of(ctx, lam)))


def in_TJ(ctx: JContext, z: AffElt) -> bool:
    return in_AJ(ctx, z.wt) and z.lin == yJ_of(ctx, z.wt)


def tJ_mul(ctx: JContext, lam, mu):
    """Weight of the product t_lam t_mu, again a strip lattice point."""
    out = tuple(a + b for a, b in
                zip(lam, fin_apply_coweight(yJ_of(ctx, lam), mu)))
    if not in_AJ(ctx, out):
        raise AssertionError(f"product weight {out} escaped the strip")
    return out


def tJ_inverse(ctx: JContext, lam):
    yinv = fin_inverse(yJ_of(ctx, lam))
    out = tuple(-x for x in fin_apply_coweight(yinv, lam))
    if not in_AJ(ctx, out):
        raise AssertionError(f"inverse weight {out} escaped the strip")
    return out


def in_WbbJ(ctx: JContext, w: AffElt) -> bool:
    """Does the alcove of w lie inside the strip?"""
    hit = ctx._wbbj_cache.get(w)
    if hit is not None:
        return hit
    winv = aff_inverse(w)
    ok = True
    for a in ctx.wall_functionals:
        if is_negative_affroot(aff_act_root(winv, a)):
            ok = False
            break
    ctx._wbbj_cache[w] = ok
    return ok


def decompose_WbbJ(ctx: JContext, w: AffElt):
    """Split a strip element as t_lam u with u a minimal coset rep.

    The translation coweight of w is already the strip point; the linear
    part divides by y_lam.
    """
    lam = w.wt
    if not in_AJ(ctx, lam):
        raise ValueError(f"{w} is not a strip element (weight {lam})")
    u = fin_mul(fin_inverse(yJ_of(ctx, lam)), w.lin)
    for j in ctx.J:
        img = fin_apply_root(fin_inverse(u), ctx.rs.simple_root(j))
        if any(x < 0 for x in img):
            raise ValueError(f"{w} is not a strip element (final part)")
    return lam, u


def _min_rep_filter(ctx: JContext, u: FinWeyl) -> bool:
    uinv = fin_inverse(u)
    return all(
        all(x >= 0 for x in fin_apply_root(uinv, ctx.rs.simple_root(j)))
        for j in ctx.J)


@cache
def _wj_reps_cached(ctx: JContext) -> tuple:
    reps = [u for u in W0_list(ctx.rs) if _min_rep_filter(ctx, u)]

    def sort_key(u):
        word, sig = reduced_word(ctx.rs, aff_from_fin(u))
        if not sig.is_identity():
            raise AssertionError("finite element left a length-zero part")
        return (len(word), word)

    reps.sort(key=sort_key)
    return tuple(reps)


def WJ_reps(ctx: JContext) -> tuple:
    """Minimal length representatives of W_J \\ W_0, by (length, word)."""
    return _wj_reps_cached(ctx)


class FundamentalDomain:
    """A transversal of the strip-translation orbits on strip elements.

    Validation is exact and finite: each listed element must lie in the
    strip, no two may differ by a strip translation, and the count must
    equal the orbit count |W^J|.
    """

    def __init__(self, ctx: JContext, elements):
        self.ctx = ctx
        self.elements = tuple(elements)
        reps = WJ_reps(ctx)
        if len(self.elements) != len(reps):
            raise ValueError(
                f"domain has {len(self.elements)} elements, "
                f"need {len(reps)}")
        for f in self.elements:
            if not in_WbbJ(ctx, f):
                raise ValueError(f"domain element {f} is outside the strip")
        for a in range(len(self.elements)):
            for b in range(a + 1, len(self.elements)):
                z = aff_mul(self.elements[a],
                            aff_inverse(self.elements[b]))
                if in_TJ(ctx, z):
                    raise ValueError(
                        f"domain elements {a} and {b} share an orbit")
        self._wt_cache: dict = {}
        self._index = {f: k for k, f in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, f: AffElt) -> int:
        return self._index[f]

    def wt_theta(self, end: AffElt):
        """Factor a strip element through the domain: end = t_lam f.

        Returns (lam, f).  Uniqueness is exactly the transversal property,
        so a miss or a double hit is a hard error.
        """
        hit = self._wt_cache.get(end)
        if hit is not None:
            return hit
        found = None
        for f in self.elements:
            z = aff_mul(end, aff_inverse(f))
            if in_TJ(self.ctx, z):
                if found is not None:
                    raise AssertionError("two domain factorizations")
                found = (z.wt, f)
        if found is None:
            raise ValueError(f"{end} has no factorization over the domain")
        self._wt_cache[end] = found
        return found


@cache
def default_domain(ctx: JContext) -> FundamentalDomain:
    """The minimal coset representatives as a domain."""
    return FundamentalDomain(ctx, tuple(aff_from_fin(u) for u in WJ_reps(ctx)))


@cache
def sigma_domain(ctx: JContext) -> FundamentalDomain:
    """Length-zero elements as a domain: the cyclic choice available for
    family A with J all nodes but the last.

    Ordered by negative powers sigma^-1, sigma^-2, ..., sigma^-(n+1) = e
    of the rotation sending node i to i+1 mod n+1.
    """
    rs = ctx.rs
    n = rs.rank
    if rs.family != "A" or ctx.J != tuple(range(1, n)):
        raise ValueError("the length-zero domain needs family A with "
                         "J = {1..n-1}")
    want = tuple((i + 1) % (n + 1) for i in range(n + 1))
    rot = next((s for s in sigma_group(rs) if node_perm(rs, s) == want), None)
    if rot is None:
        raise AssertionError("no full-cycle rotation in the stabilizer")
    rot_inv = aff_inverse(rot)
    elems = []
    cur = aff_identity(n)
    for _ in range(n + 1):
        cur = aff_mul(cur, rot_inv)
        elems.append(cur)
    if not elems[-1].is_identity():
        raise AssertionError("rotation order is off")
    return FundamentalDomain(ctx, tuple(elems))


def phi1_rep(rs: RootSystem, root, level: int):
    """Name a hyperplane by its non-multipliable positive root.

    Accepts any (root, level) with the hyperplane <x, root> = level and
    returns the unique (alpha, k) naming it with alpha in Phi_1^+.
    """
    r = tuple(root)
    k = level
    if any(x < 0 for x in r):
        r = tuple(-x for x in r)
        k = -k
    dbl = tuple(2 * x for x in r)
    if rs.is_root(dbl):
        r, k = dbl, 2 * k
    return r, k


def separating_wall(ctx: JContext, w: AffElt, i: int):
    """The wall between the alcoves of w and w s_i, and which side w is on.

    Returns ((alpha, k), side) with alpha in Phi_1^+, the hyperplane being
    <x, alpha> = k, and side +1 when the alcove of w lies on the side
    where <x, alpha> > k.
    """
    beta, m = aff_act_root(w, affine_simple_root(ctx.rs, i))
    if all(x <= 0 for x in beta):
        side = -1
        wall = phi1_rep(ctx.rs, tuple(-x for x in beta), m)
    else:
        side = 1
        wall = phi1_rep(ctx.rs, beta, -m)
    return wall, side


def TJ_order(ctx: JContext) -> int:
    """Order of the strip translation group when J is all nodes (the only
    finite case), as the coweight lattice index over the J-coroots."""
    if ctx.J != tuple(ctx.rs.nodes):
        raise ValueError("the translation group is infinite unless J "
                         "is the full node set")
    rows = [ctx.rs.coroot(ctx.rs.simple_root(j)) for j in ctx.J]
    if ctx.rs.is_nonreduced:
        dbl = tuple(2 * x for x in ctx.rs.simple_root(ctx.rs.rank))
        rows.append(ctx.rs.coroot(dbl))
    d, _, _ = snf(rows)
    order = 1
    for x in d:
        if x == 0:
            raise AssertionError("full J-coroot lattice has a zero invariant")
        order *= x
    return order


def AI_P_elements(ctx: JContext) -> tuple:
    """Lattice points of the full strip (J = all nodes): the origin plus
    the fundamental coweights dual to unit marks of the highest root."""
    if ctx.J != tuple(ctx.rs.nodes):
        raise ValueError("finite lattice point list needs the full node set")
    n = ctx.rs.rank
    out = [(0,) * n]
    for j in ctx.rs.nodes:
        if ctx.rs.marks[j - 1] == 1:
            out.append(tuple(int(k == j) for k in ctx.rs.nodes))
    for lam in out:
        if not in_AJ(ctx, lam):
            raise AssertionError(f"claimed strip point {lam} is outside")
    return tuple(out)
