"""Finite, affine and extended affine Weyl groups.

A finite element is stored by its action on the simple roots.  An
extended affine element is a pair t_lambda u with lambda a coweight in
fundamental-coweight coordinates and u finite; the group law and the
action on affine roots beta + k delta follow from

    (t_lambda u)(t_mu v) = t_{lambda + u mu} (u v),
    (t_lambda u)(beta + k delta) = u beta + (k - <lambda, u beta>) delta.

Length-zero elements represent the fundamental-alcove stabilizer Sigma;
they are ordinary AffElt values, found by peeling descents off the
translations by a transversal of the coweight lattice mod the coroot
lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from ._intmat import frac_inverse, int_inverse, snf
from .rootdata import RootSystem, pairing

__all__ = [
    "FinWeyl",
    "AffElt",
    "fin_identity",
    "fin_mul",
    "fin_inverse",
    "fin_apply_root",
    "fin_apply_coweight",
    "simple_fin",
    "fin_subgroup",
    "longest_in",
    "W0_list",
    "aff_identity",
    "aff_mul",
    "aff_inverse",
    "aff_translation",
    "aff_from_fin",
    "aff_act_root",
    "affine_simple_root",
    "simple_aff",
    "is_negative_affroot",
    "length",
    "weighted_length",
    "reduced_word",
    "crossing_sign",
    "braid_order",
    "sigma_group",
    "node_perm",
]


@dataclass(frozen=True, slots=True)
class FinWeyl:
    """Element of the finite Weyl group, by its matrix on simple roots.

    cols[j] is the image of alpha_{j+1} in alpha-coordinates.
    """

    cols: tuple

    def is_identity(self) -> bool:
        n = len(self.cols)
        return all(self.cols[j][k] == (j == k) for j in range(n) for k in range(n))


def fin_identity(n: int) -> FinWeyl:
    return FinWeyl(tuple(tuple(int(j == k) for k in range(n)) for j in range(n)))


def fin_apply_root(w: FinWeyl, root):
    n = len(root)
    out = [0] * n
    for j, c in enumerate(root):
        if c:
            col = w.cols[j]
            for k in range(n):
                out[k] += c * col[k]
    return tuple(out)


def fin_mul(a: FinWeyl, b: FinWeyl) -> FinWeyl:
    return FinWeyl(tuple(fin_apply_root(a, col) for col in b.cols))


@cache
def fin_inverse(w: FinWeyl) -> FinWeyl:
    n = len(w.cols)
    mat = [[w.cols[j][k] for j in range(n)] for k in range(n)]  # rows
    inv = frac_inverse(mat)
    cols = []
    for j in range(n):
        col = []
        for k in range(n):
            x = inv[k][j]
            if x.denominator != 1:
                raise AssertionError("non-integral Weyl inverse")
            col.append(int(x))
        cols.append(tuple(col))
    return FinWeyl(tuple(cols))


def fin_apply_coweight(w: FinWeyl, lam):
    """w lambda in omega-coordinates: <w lam, a_j> = <lam, w^-1 a_j>."""
    inv = fin_inverse(w)
    return tuple(pairing(lam, col) for col in inv.cols)


@cache
def simple_fin(rs: RootSystem, i: int) -> FinWeyl:
    return FinWeyl(tuple(rs.reflect_root(i, rs.simple_root(j)) for j in rs.nodes))


@cache
def fin_subgroup(rs: RootSystem, nodes: tuple) -> tuple:
    """All elements of the parabolic generated by {s_j : j in nodes}, BFS
    order (identity first, then by word length)."""
    gens = [simple_fin(rs, j) for j in nodes]
    seen = {fin_identity(rs.rank)}
    order = [fin_identity(rs.rank)]
    frontier = [fin_identity(rs.rank)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = fin_mul(w, g)
                if x not in seen:
                    seen.add(x)
                    order.append(x)
                    nxt.append(x)
        frontier = nxt
    return tuple(order)


@cache
def W0_list(rs: RootSystem) -> tuple:
    return fin_subgroup(rs, tuple(rs.nodes))


@cache
def longest_in(rs: RootSystem, nodes: tuple) -> FinWeyl:
    """Longest element of the parabolic subgroup on the given nodes."""
    w = fin_identity(rs.rank)
    while True:
        for j in nodes:
            img = fin_apply_root(w, rs.simple_root(j))
            if all(x >= 0 for x in img):
                w = fin_mul(w, simple_fin(rs, j))
                break
        else:
            return w


@dataclass(frozen=True, slots=True)
class AffElt:
    """Extended affine Weyl group element t_wt lin."""

    wt: tuple
    lin: FinWeyl

    def is_identity(self) -> bool:
        return all(x == 0 for x in self.wt) and self.lin.is_identity()


def aff_identity(n: int) -> AffElt:
    return AffElt((0,) * n, fin_identity(n))


def aff_mul(a: AffElt, b: AffElt) -> AffElt:
    shift = fin_apply_coweight(a.lin, b.wt)
    return AffElt(tuple(x + y for x, y in zip(a.wt, shift)),
                  fin_mul(a.lin, b.lin))


def aff_inverse(a: AffElt) -> AffElt:
    linv = fin_inverse(a.lin)
    return AffElt(tuple(-x for x in fin_apply_coweight(linv, a.wt)), linv)


def aff_translation(lam) -> AffElt:
    return AffElt(tuple(lam), fin_identity(len(lam)))


def aff_from_fin(w: FinWeyl) -> AffElt:
    return AffElt((0,) * len(w.cols), w)


def aff_act_root(w: AffElt, aroot):
    """Action on an affine root (beta, k) standing for beta + k delta."""
    beta, k = aroot
    img = fin_apply_root(w.lin, beta)
    return (img, k - pairing(w.wt, img))


def is_negative_affroot(aroot) -> bool:
    beta, k = aroot
    if k != 0:
        return k < 0
    return all(x <= 0 for x in beta)


def affine_simple_root(rs: RootSystem, i: int):
    if i == 0:
        return (tuple(-x for x in rs.highest_root), 1)
    return (rs.simple_root(i), 0)


@cache
def simple_aff(rs: RootSystem, i: int) -> AffElt:
    if i == 0:
        phi = rs.highest_root
        cov = rs.coroot(phi)
        cols = []
        for j in rs.nodes:
            c = cov[j - 1]
            cols.append(tuple(x - c * y for x, y in
                              zip(rs.simple_root(j), phi)))
        return AffElt(cov, FinWeyl(tuple(cols)))
    return aff_from_fin(simple_fin(rs, i))


def length(rs: RootSystem, w: AffElt) -> int:
    """Coxeter length of an extended element (0 exactly on Sigma).

    Counted over the wall family Phi_1^+, which is the right notion in
    the non-reduced case: each affine hyperplane is counted once.
    """
    uinv = fin_inverse(w.lin)
    total = 0
    for gamma in rs.phi1_positive:
        c = pairing(w.wt, gamma)
        if all(x >= 0 for x in fin_apply_root(uinv, gamma)):
            total += abs(c)
        else:
            total += abs(c - 1)
    return total


def weighted_length(rs: RootSystem, word, weights) -> int:
    """L(w) = sum of generator weights along a reduced word."""
    return sum(weights[i] for i in word)


def left_descent(rs: RootSystem, w_inv: AffElt):
    for i in range(rs.rank + 1):
        if is_negative_affroot(aff_act_root(w_inv, affine_simple_root(rs, i))):
            return i
    return None


def reduced_word(rs: RootSystem, w: AffElt):
    """Reduced word of the W-part plus the length-zero remainder.

    Returns (word, sigma) with w = s_{word[0]} ... s_{word[-1]} sigma and
    sigma of length zero.  The word is canonical: the smallest descent
    index is peeled from the left at each step.
    """
    cur = w
    cur_inv = aff_inverse(w)
    word = []
    while True:
        i = left_descent(rs, cur_inv)
        if i is None:
            break
        word.append(i)
        g = simple_aff(rs, i)
        cur = aff_mul(g, cur)
        cur_inv = aff_mul(cur_inv, g)
    if length(rs, cur) != 0:
        raise AssertionError("descent peeling did not reach length zero")
    return tuple(word), cur


def element_of_word(rs: RootSystem, word, sigma: AffElt | None = None) -> AffElt:
    out = aff_identity(rs.rank)
    for i in word:
        out = aff_mul(out, simple_aff(rs, i))
    if sigma is not None:
        out = aff_mul(out, sigma)
    return out


def crossing_sign(rs: RootSystem, w: AffElt, i: int) -> int:
    """+1 when the step w -> w s_i crosses its wall in the positive
    direction (the finite part of w(a_i) is a negative root)."""
    beta, _ = aff_act_root(w, affine_simple_root(rs, i))
    return 1 if all(x <= 0 for x in beta) else -1


@cache
def braid_order(rs: RootSystem, i: int, j: int) -> int:
    """Order of s_i s_j in the affine Weyl group; 0 means infinite."""
    x = aff_mul(simple_aff(rs, i), simple_aff(rs, j))
    acc = x
    for m in range(1, 13):
        if acc.is_identity():
            return m
        acc = aff_mul(acc, x)
    return 0


@cache
def _coweight_mod_coroot_reps(rs: RootSystem) -> tuple:
    rows = [rs.coroot(rs.simple_root(j)) for j in rs.nodes]
    if rs.is_nonreduced:
        rows.append(rs.coroot(tuple(2 * x for x in rs.simple_root(rs.rank))))
    d, _, V = snf(rows)
    if any(x == 0 for x in d):
        raise AssertionError("coroot lattice is not finite index")
    vinv = int_inverse(V)
    reps = [()]
    combos = [[]]
    for di in d:
        combos = [c + [r] for c in combos for r in range(di)]
    n = rs.rank
    out = []
    for c in combos:
        out.append(tuple(sum(c[i] * vinv[i][j] for i in range(n)) for j in range(n)))
    return tuple(out)


@cache
def sigma_group(rs: RootSystem) -> tuple:
    """The length-zero subgroup Sigma, identity first."""
    found = {aff_identity(rs.rank)}
    for lam in _coweight_mod_coroot_reps(rs):
        if all(x == 0 for x in lam):
            continue
        _, sig = reduced_word(rs, aff_translation(lam))
        found.add(sig)
    if len(found) != len(_coweight_mod_coroot_reps(rs)):
        raise AssertionError("Sigma size does not match the lattice index")
    rest = sorted((s for s in found if not s.is_identity()),
                  key=lambda s: (s.wt, s.lin.cols))
    return (aff_identity(rs.rank),) + tuple(rest)


@cache
def node_perm(rs: RootSystem, sigma: AffElt) -> tuple:
    """The Dynkin-diagram permutation of {0..n} induced by a length-zero
    element: sigma(a_i) = a_{perm[i]} on affine simple roots."""
    targets = {affine_simple_root(rs, j): j for j in range(rs.rank + 1)}
    perm = []
    for i in range(rs.rank + 1):
        img = aff_act_root(sigma, affine_simple_root(rs, i))
        if img not in targets:
            raise ValueError("element does not permute the simple affine roots")
        perm.append(targets[img])
    if sorted(perm) != list(range(rs.rank + 1)):
        raise AssertionError("node map is not a permutation")
    return tuple(perm)
