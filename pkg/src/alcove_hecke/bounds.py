"""Boundedness: criteria, classification, bound formula, ball search.

A strip module is bounded when the degrees of all matrix entries over
the whole group stay below a fixed integer.  Boundedness is decided by
the sign pattern and weights of the parameter system alone; the exact
value of the bound is the subject of a conjectural closed formula which
this module evaluates, alongside an honest brute-force search over
balls in the affine Weyl group.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .heckemod import RepMatrix, module_rep
from .jgeom import JContext, jcontext
from .jparam import JParamSystem, WeightFunction, orbit_keys
from .laurent import (
    NEG_INF,
    SignedQMonomial,
    factor_product_degree,
    leading_part,
    q_degree,
)
from .rootdata import RootSystem, pairing
from .weyl import (
    AffElt,
    aff_act_root,
    aff_from_fin,
    aff_identity,
    aff_mul,
    affine_simple_root,
    is_negative_affroot,
    length,
    longest_in,
    reduced_word,
    sigma_group,
    simple_aff,
    weighted_length,
)

__all__ = [
    "BoundReport",
    "is_bounded",
    "classify",
    "conjectural_bound",
    "conjecture_factors",
    "empirical_search",
    "leading_matrix",
    "unique_reduced_expression",
    "longest_weighted_length",
]


@dataclass(frozen=True)
class BoundReport:
    radius: int
    max_degree: int
    arg_set: tuple
    conjectured_bound: int | None
    stabilized: bool

    def __post_init__(self):
        if self.max_degree is not NEG_INF and not self.arg_set:
            raise ValueError("a finite maximum needs witnesses")


def is_bounded(ctx: JContext, params: JParamSystem) -> bool:
    """True when deg v at every fundamental coweight of J is <= 0."""
    n = ctx.rs.rank
    for j in ctx.J:
        omega = tuple(int(k == j - 1) for k in range(n))
        if params.v_power(omega).q_exp > 0:
            return False
    return True


def longest_weighted_length(rs: RootSystem, wf: WeightFunction) -> int:
    w0 = aff_from_fin(longest_in(rs, tuple(rs.nodes)))
    word, _ = reduced_word(rs, w0)
    return weighted_length(rs, word, wf.by_node)


# --- symbolic classification ------------------------------------------

def _key_decomposition(ctx: JContext, r) -> dict:
    """Orbit-key exponents of the wall parameter of one positive root."""
    rs = ctx.rs
    comp = next(c for c in ctx.components if any(r[j - 1] for j in c))
    n = rs.rank
    if rs.is_nonreduced and n in comp:
        cls = rs.length_class(r)
        if cls == "long":
            return {f"2alpha{n}": 1}
        if cls == "short":
            return {f"alpha{n}*2alpha{n}": 1, f"2alpha{n}": -1}
        middles = [j for j in comp if j != n]
        return {f"alpha{min(middles)}": 1}
    norm = rs.norm(r)
    js = [j for j in comp if rs.norm(rs.simple_root(j)) == norm]
    return {f"alpha{min(js)}": 1}


def _omega_exponents(ctx: JContext) -> dict:
    """For each orbit key, the vector over I of its exponent in v at
    the fundamental coweights.  All entries are nonnegative once the
    doubled-key cancellation is summed out."""
    rs = ctx.rs
    n = rs.rank
    out = {k: [0] * n for k in orbit_keys(ctx)}
    for r in ctx.phiJ_positive:
        dec = _key_decomposition(ctx, r)
        for i in range(n):
            omega = tuple(int(k == i) for k in range(n))
            c = pairing(omega, r)
            if c:
                for key, mult in dec.items():
                    out[key][i] += mult * c
    return {k: tuple(v) for k, v in out.items()}


def classify(rs: RootSystem) -> tuple:
    """Feasible sign patterns of weighted systems on the full node set,
    with the exact weight inequalities under which they are bounded.

    Each row is a dict with "signs" (orbit key to +-1) and
    "constraints", a tuple of linear forms ((key, coeff), ...) whose
    values must all be <= 0.  A pattern appears only if some choice of
    positive weights satisfies every form.
    """
    ctx = jcontext(rs, tuple(rs.nodes))
    expo = _omega_exponents(ctx)
    keys = orbit_keys(ctx)
    n = rs.rank
    pair_key = f"alpha{n}*2alpha{n}"
    dbl_key = f"2alpha{n}"
    rows = []
    for signs in product((1, -1), repeat=len(keys)):
        sign_of = dict(zip(keys, signs))
        forms = []
        feasible = True
        for i in range(n):
            form = tuple((k, sign_of[k] * expo[k][i]) for k in keys
                         if expo[k][i])
            if not form:
                continue
            if not _form_feasible(sign_of, dict(form), pair_key, dbl_key):
                feasible = False
                break
            if any(c > 0 for _, c in form):
                forms.append(form)
        if feasible:
            rows.append({"signs": sign_of,
                         "constraints": tuple(dict.fromkeys(forms))})
    return tuple(rows)


def _form_feasible(sign_of, coeff, pair_key, dbl_key) -> bool:
    """Can this linear form reach <= 0 with positive weights?

    The non-reduced keys are coupled: the pair weight must be at least
    the doubled weight, so a (+pair, -dbl) combination can be pinched
    to zero but never below, while a -pair blows the form down freely.
    """
    if pair_key in coeff or dbl_key in coeff:
        e = coeff.pop(pair_key, 0)
        e2 = coeff.pop(dbl_key, 0)
        assert abs(e) == abs(e2), "pair and doubled exponents differ"
        if sign_of[pair_key] == -1:
            return True
        if sign_of[dbl_key] == 1:
            coeff["__pinned__"] = e + e2
        # (+pair, -dbl) floors at zero: drop the pair entirely
    if any(c < 0 for c in coeff.values()):
        return True
    return sum(coeff.values()) <= 0


def satisfies(row: dict, weight_of: dict) -> bool:
    """Evaluate a classification row at concrete orbit weights."""
    return all(sum(c * weight_of[k] for k, c in form) <= 0
               for form in row["constraints"])


# --- the conjectural bound formula ------------------------------------

def _orbit_q_exp(rs: RootSystem, wf: WeightFunction, r) -> int:
    """Exponent of the Macdonald parameter of one root."""
    n = rs.rank
    if rs.is_nonreduced:
        short_norm = rs.norm(rs.simple_root(n))
        nm = rs.norm(r)
        if nm == short_norm:
            return wf.L(n) - wf.L(0)
        if nm == 4 * short_norm:
            return wf.L(0)
    nm = rs.norm(r)
    for j in rs.nodes:
        if rs.norm(rs.simple_root(j)) == nm:
            return wf.L(j)
    raise AssertionError(f"no simple root in the orbit of {r}")


def conjecture_factors(ctx: JContext, params: JParamSystem):
    """Numerator and denominator factor lists of the c-function product.

    Each entry m stands for the binomial 1 - m; factors equal to one
    are the zero binomials the prime convention drops.
    """
    rs = ctx.rs
    wf = params.wf
    nums, dens = [], []
    for r in rs.roots:
        half = tuple(x // 2 for x in r)
        if all(x % 2 == 0 for x in r) and rs.is_root(half):
            q_half = _orbit_q_exp(rs, wf, half)
        else:
            q_half = 0
        q_r = _orbit_q_exp(rs, wf, r)
        v = params.v_power(rs.coroot(r))
        nums.append(SignedQMonomial(v.sign, v.q_exp - q_half))
        dens.append(SignedQMonomial(v.sign, v.q_exp - q_half - 2 * q_r))
    return nums, dens


def conjectural_bound(ctx: JContext, params: JParamSystem) -> int:
    """Closed-form bound prediction for a bounded system.

    Evaluates the weighted c-function product over the whole root
    system, omitting vanishing binomials, and subtracts half its degree
    from the weighted length of the longest finite element.  A result
    off the integer lattice is an error, not a rounding.
    """
    nums, dens = conjecture_factors(ctx, params)
    d = factor_product_degree(nums, dens)
    lw0 = longest_weighted_length(ctx.rs, params.wf)
    if d % 2:
        raise ValueError(f"half-integer bound: L(w0) - {d}/2")
    return lw0 - d // 2


# --- ball search -------------------------------------------------------

def _right_ascents(rs: RootSystem, w: AffElt):
    for i in range(rs.rank + 1):
        if not is_negative_affroot(aff_act_root(w, affine_simple_root(rs, i))):
            yield i


def empirical_search(ctx: JContext, params: JParamSystem, radius: int,
                     domain=None, include_sigma_twists: bool = False,
                     window: int = 3) -> BoundReport:
    """Max entry degree of the action matrices over a group ball.

    Walks the non-extended ball shell by shell, carrying one matrix per
    frontier element, and records the elements attaining the running
    maximum.  Degrees are read off matrix entries after cancellation;
    single path masses can exceed them.  The stabilization flag just
    says the maximum sat still for the last few shells; it proves
    nothing.
    """
    eng = module_rep(ctx, params, domain)
    rs = ctx.rs
    ident = aff_identity(rs.rank)
    frontier = {ident: eng.identity()}
    seen = {ident}
    best = 0
    arg = [ident]
    unchanged = 0
    for _ in range(radius):
        nxt = {}
        for w, mat in frontier.items():
            for i in _right_ascents(rs, w):
                w2 = aff_mul(w, simple_aff(rs, i))
                if w2 in seen or w2 in nxt:
                    continue
                nxt[w2] = mat * eng.gen(i)
        shell_grew = False
        for w2, mat in nxt.items():
            seen.add(w2)
            d = mat.max_q_degree()
            if d is NEG_INF:
                continue
            if d > best:
                best, arg = d, [w2]
                shell_grew = True
            elif d == best:
                arg.append(w2)
        unchanged = 0 if shell_grew else unchanged + 1
        frontier = nxt
        if not frontier:
            break
    if include_sigma_twists:
        twists = [s for s in sigma_group(rs) if not s.is_identity()]
        arg = arg + [aff_mul(w, s) for w in arg for s in twists]
    conj = conjectural_bound(ctx, params) if is_bounded(ctx, params) else None
    return BoundReport(radius=radius, max_degree=best,
                       arg_set=tuple(arg), conjectured_bound=conj,
                       stabilized=unchanged >= window)


def leading_matrix(w: AffElt, ctx: JContext, params: JParamSystem,
                   bound: int, domain=None) -> RepMatrix:
    """Top-degree coefficient matrix of one recognized element.

    Entries are the q-degree-(bound) coefficients, living in the zeta
    subring.  All entries zero means w is not recognized at this bound,
    which is an error by the caller.
    """
    eng = module_rep(ctx, params, domain)
    m = eng.of_elt(w)
    rows = [[leading_part(f, bound) for f in r] for r in m.rows]
    out = RepMatrix(rows, eng.domain)
    if out.is_zero():
        raise ValueError(f"element not recognized at bound {bound}")
    return out


def unique_reduced_expression(rs: RootSystem, w: AffElt) -> bool:
    """True when w has exactly one reduced word (early exit at two)."""

    def count(u: AffElt, budget: int) -> int:
        if length(rs, u) == 0:
            return 1
        total = 0
        for i in range(rs.rank + 1):
            if is_negative_affroot(
                    aff_act_root(u, affine_simple_root(rs, i))):
                total += count(aff_mul(u, simple_aff(rs, i)),
                               budget - total)
                if total >= budget:
                    return total
        return total

    return count(w, 2) == 1
