"""Weight functions and strip parameter systems.

A weight function assigns a positive integer to each affine node, constant
on the classes forced by odd bond orders and by diagram rotations.  On top
of a weight function and a node subset J sits a parameter system: one sign
choice per wall-parameter orbit, every orbit value being q^L or -q^-L for
the weight L of that orbit.  All parameter values are signed monomials in
q, so products and quotients stay in :class:`SignedQMonomial`.

Key strings for the orbits follow the wall roots: ``alpha<j>`` for the
orbit through the simple root of node j (smallest such j), and for the
non-reduced tail ``2alpha<n>`` for the doubled orbit together with
``alpha<n>*2alpha<n>`` for the product attached to the short orbit, whose
own value is the quotient of the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property
from itertools import product

from .jgeom import JContext
from .laurent import SQM_ONE, QLaurent, SignedQMonomial
from .rootdata import RootSystem, pairing
from .weyl import FinWeyl, braid_order, fin_apply_root, node_perm, sigma_group

__all__ = [
    "param_classes",
    "WeightFunction",
    "weight_function",
    "weight_grid",
    "JParamSystem",
    "orbit_keys",
    "enumerate_systems",
    "vhat",
    "wall_label",
]


@cache
def param_classes(rs: RootSystem) -> tuple:
    """Partition of the affine nodes 0..n into equal-weight classes.

    Nodes joined by an odd bond carry conjugate reflections, and diagram
    rotations also identify weights.  Classes come back sorted by their
    smallest member.
    """
    n = rs.rank
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = braid_order(rs, i, j)
            if m != 0 and m % 2 == 1 and m > 1:
                union(i, j)
    for sig in sigma_group(rs):
        perm = node_perm(rs, sig)
        for i in range(n + 1):
            union(i, perm[i])

    groups: dict = {}
    for i in range(n + 1):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(g) for _, g in sorted(groups.items()))


@dataclass(frozen=True)
class WeightFunction:
    """Positive node weights, constant on parameter classes."""

    rs: RootSystem
    by_node: tuple  # indexed by affine node 0..n

    def __post_init__(self):
        if len(self.by_node) != self.rs.rank + 1:
            raise ValueError("need one weight per affine node")
        if any(w < 1 for w in self.by_node):
            raise ValueError("weights must be positive integers")
        for cls in param_classes(self.rs):
            vals = {self.by_node[i] for i in cls}
            if len(vals) > 1:
                raise ValueError(f"weights differ on class {cls}")
        if self.rs.is_nonreduced:
            n = self.rs.rank
            if self.by_node[n] < self.by_node[0]:
                raise ValueError("non-reduced systems need "
                                 "L(s_n) >= L(s_0)")

    def L(self, i: int) -> int:
        return self.by_node[i]

    def gap(self, i: int, arity: int) -> QLaurent:
        return QLaurent.gap(self.by_node[i], arity)

    def __repr__(self):
        return f"WeightFunction({self.rs}, {self.by_node})"


def weight_function(rs: RootSystem, weights) -> WeightFunction:
    """Build a weight function from a full tuple or a partial node dict.

    A dict needs one entry per class (any member will do); conflicting
    entries or uncovered classes are errors.
    """
    if not isinstance(weights, dict):
        return WeightFunction(rs, tuple(weights))
    by_node = [0] * (rs.rank + 1)
    for cls in param_classes(rs):
        vals = {weights[i] for i in cls if i in weights}
        if len(vals) > 1:
            raise ValueError(f"conflicting weights on class {cls}")
        if not vals:
            raise ValueError(f"no weight given for class {cls}")
        w = vals.pop()
        for i in cls:
            by_node[i] = w
    return WeightFunction(rs, tuple(by_node))


def weight_grid(rs: RootSystem, bound: int) -> tuple:
    """Every weight function with class values in 1..bound."""
    classes = param_classes(rs)
    out = []
    for combo in product(range(1, bound + 1), repeat=len(classes)):
        by_node = [0] * (rs.rank + 1)
        for cls, w in zip(classes, combo):
            for i in cls:
                by_node[i] = w
        if rs.is_nonreduced and by_node[rs.rank] < by_node[0]:
            continue
        out.append(WeightFunction(rs, tuple(by_node)))
    return tuple(out)


def orbit_keys(ctx: JContext) -> tuple:
    """Independent sign choices of a parameter system, in fixed order."""
    keys = []
    n = ctx.rs.rank
    for comp in ctx.components:
        nonred = ctx.rs.is_nonreduced and n in comp
        if nonred:
            middles = [j for j in comp if j != n]
            if middles:
                keys.append(f"alpha{min(middles)}")
            keys.append(f"alpha{n}*2alpha{n}")
            keys.append(f"2alpha{n}")
        else:
            # orbits on a reduced component = norm classes; each contains
            # the simples of that norm
            by_norm: dict = {}
            for j in comp:
                by_norm.setdefault(
                    ctx.rs.norm(ctx.rs.simple_root(j)), []).append(j)
            for _, js in sorted(by_norm.items()):
                keys.append(f"alpha{min(js)}")
    return tuple(keys)


def orbit_weight(ctx: JContext, wf: WeightFunction, key: str) -> int:
    """Weight L attached to an orbit key: the short-node weight for the
    pair key, the zero-node weight for the doubled key, the node weight
    otherwise."""
    n = ctx.rs.rank
    if key == f"2alpha{n}":
        return wf.L(0)
    if key == f"alpha{n}*2alpha{n}":
        return wf.L(n)
    return wf.L(int(key.removeprefix("alpha")))


class JParamSystem:
    """One sign assignment: every orbit key maps to q^L or -q^-L."""

    def __init__(self, ctx: JContext, wf: WeightFunction, assignment: dict):
        if wf.rs != ctx.rs:
            raise ValueError("weight function is for a different system")
        if set(assignment) != set(orbit_keys(ctx)):
            raise ValueError(
                f"assignment keys {sorted(assignment)} do not match "
                f"orbits {sorted(orbit_keys(ctx))}")
        self.ctx = ctx
        self.wf = wf
        self.assignment = dict(assignment)
        for key, val in assignment.items():
            want = orbit_weight(ctx, wf, key)
            if val not in (SignedQMonomial(1, want),
                           SignedQMonomial(-1, -want)):
                raise ValueError(f"{key} must be q^{want} or -q^-{want}, "
                                 f"got {val}")
        self._root_cache: dict = {}

    def __repr__(self):
        parts = ", ".join(f"{k}={v}" for k, v in
                          sorted(self.assignment.items()))
        return f"JParamSystem({self.ctx}, {parts})"

    def signature(self) -> tuple:
        """Hashable identity of the sign choice."""
        return tuple((k, self.assignment[k].sign, self.assignment[k].q_exp)
                     for k in orbit_keys(self.ctx))

    @cached_property
    def zarity(self) -> int:
        return self.ctx.zeta_arity

    def v_of_root(self, root) -> SignedQMonomial:
        """Wall parameter of a root; one off the J-support or outside
        the root system entirely."""
        r = tuple(root)
        hit = self._root_cache.get(r)
        if hit is not None:
            return hit
        pos = r if all(x >= 0 for x in r) else tuple(-x for x in r)
        val = self._v_of_positive(pos)
        self._root_cache[r] = val
        return val

    def _v_of_positive(self, r) -> SignedQMonomial:
        ctx = self.ctx
        if r not in ctx.phiJ_set:
            return SQM_ONE
        comp = next(c for c in ctx.components
                    if any(r[j - 1] for j in c))
        n = ctx.rs.rank
        nonred = ctx.rs.is_nonreduced and n in comp
        if nonred:
            cls = ctx.rs.length_class(r)
            if cls == "long":
                return self.assignment[f"2alpha{n}"]
            if cls == "short":
                pair = self.assignment[f"alpha{n}*2alpha{n}"]
                return pair * self.assignment[f"2alpha{n}"].inverse()
            middles = [j for j in comp if j != n]
            return self.assignment[f"alpha{min(middles)}"]
        norm = ctx.rs.norm(r)
        js = [j for j in comp
              if ctx.rs.norm(ctx.rs.simple_root(j)) == norm]
        return self.assignment[f"alpha{min(js)}"]

    def v_pair(self, root) -> SignedQMonomial:
        """v_alpha v_{2 alpha}, the doubled factor collapsing to v_alpha
        on non-multipliable walls."""
        r = tuple(root)
        dbl = tuple(2 * x for x in r)
        out = self.v_of_root(r)
        if self.ctx.rs.is_root(dbl):
            out = out * self.v_of_root(dbl)
        return out

    def v_power(self, lam) -> SignedQMonomial:
        """v^lam, the product of v_alpha^<lam, alpha> over the positive
        J-roots, doubles included."""
        out = SQM_ONE
        for r in self.ctx.phiJ_positive:
            c = pairing(lam, r)
            if c:
                out = out * self.v_of_root(r).power(c)
        return out

    def v_of_elt(self, y: FinWeyl) -> SignedQMonomial:
        """v(y): product of doubled wall factors over the inversions of y
        among the non-doubled positives."""
        out = SQM_ONE
        for r in self.ctx.phiJ_positive:
            is_doubled = all(x % 2 == 0 for x in r) and self.ctx.rs.is_root(
                tuple(x // 2 for x in r))
            if is_doubled:
                continue  # doubled roots ride along via v_pair
            img = fin_apply_root(y, r)
            if any(x < 0 for x in img):
                out = out * self.v_pair(r)
        return out

    def is_one(self, key: str) -> bool:
        return self.assignment[key].is_one()


def enumerate_systems(ctx: JContext, wf: WeightFunction):
    """All sign assignments for (J, L), in a fixed deterministic order."""
    keys = orbit_keys(ctx)
    weights = [orbit_weight(ctx, wf, k) for k in keys]
    out = []
    for signs in product((1, -1), repeat=len(keys)):
        assignment = {
            k: SignedQMonomial(s, s * w)
            for k, s, w in zip(keys, signs, weights)}
        out.append(JParamSystem(ctx, wf, assignment))
    return tuple(out)


def vhat(ctx: JContext, wf: WeightFunction) -> JParamSystem:
    """The distinguished all-negative choice -q^-L on every orbit."""
    assignment = {k: SignedQMonomial(-1, -orbit_weight(ctx, wf, k))
                  for k in orbit_keys(ctx)}
    return JParamSystem(ctx, wf, assignment)


def wall_label(params: JParamSystem, wall) -> SignedQMonomial:
    """Parameter attached to a hyperplane (alpha, k), alpha in Phi_1^+.

    Even levels of a multipliable-root wall carry both parameters, odd
    levels and plain walls carry one.
    """
    (root, k) = wall
    half = tuple(x // 2 for x in root)
    halvable = all(x % 2 == 0 for x in root) and params.ctx.rs.is_root(half)
    if halvable and k % 2 == 0:
        return params.v_of_root(half) * params.v_of_root(root)
    return params.v_of_root(root)
