"""Matrix action of the extended affine Hecke algebra on strip modules.

The module attached to a strip context and parameter system has basis
indexed by a fundamental domain of the strip translations.  A generator
acts on a basis row through at most two entries: the crossing target
with a zeta-power coefficient, plus either a quadratic gap on the
diagonal (negative crossings) or a wall parameter (blocked crossings).
Relabel generators act by zeta-monomial permutation matrices.

Products along reduced words give the action of any element; the same
matrices fall out of mass-weighted path sums, and the agreement of the
two computations is the central consistency check of the package.

Note the relabel action here carries the zeta power of the strip weight
of f*sigma.  Dropping that factor would break both the path formula and
the intertwining relations whenever a relabel moves an alcove to a
different translation orbit representative.
"""

from __future__ import annotations

from .jgeom import (
    FundamentalDomain,
    JContext,
    WJ_reps,
    default_domain,
    in_WbbJ,
    separating_wall,
)
from .jparam import JParamSystem, wall_label
from .laurent import QLaurent
from .paths import enumerate_paths
from .rootdata import pairing
from .weyl import (
    AffElt,
    aff_from_fin,
    aff_identity,
    aff_mul,
    aff_translation,
    braid_order,
    crossing_sign,
    fin_apply_coweight,
    node_perm,
    reduced_word,
    sigma_group,
    simple_aff,
)

__all__ = [
    "RepMatrix",
    "ModuleRep",
    "module_rep",
    "gen_matrix",
    "matrix_of_Tw",
    "matrix_via_paths",
    "matrix_of_X",
    "matrix_of_tau",
    "weight_diag_check",
    "basis_change_matrix",
    "check_relations",
]


class RepMatrix:
    """Dense square matrix over the Laurent ring of one strip context."""

    __slots__ = ("dim", "arity", "rows", "domain")

    def __init__(self, rows, domain=None):
        rows = tuple(tuple(r) for r in rows)
        self.dim = len(rows)
        if any(len(r) != self.dim for r in rows):
            raise ValueError("matrix must be square")
        self.arity = rows[0][0].arity if self.dim else 0
        self.rows = rows
        self.domain = domain

    @staticmethod
    def zero(dim: int, arity: int, domain=None) -> "RepMatrix":
        z = QLaurent.zero(arity)
        return RepMatrix([[z] * dim for _ in range(dim)], domain)

    @staticmethod
    def identity(dim: int, arity: int, domain=None) -> "RepMatrix":
        z = QLaurent.zero(arity)
        one = QLaurent.one(arity)
        rows = [[one if i == j else z for j in range(dim)]
                for i in range(dim)]
        return RepMatrix(rows, domain)

    def entry(self, i: int, j: int) -> QLaurent:
        return self.rows[i][j]

    def __mul__(self, other: "RepMatrix") -> "RepMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        z = QLaurent.zero(self.arity)
        out = []
        for i in range(self.dim):
            row = []
            src = [(k, f) for k, f in enumerate(self.rows[i])
                   if not f.is_zero()]
            for j in range(self.dim):
                acc = z
                for k, f in src:
                    g = other.rows[k][j]
                    if not g.is_zero():
                        acc = acc + f * g
                row.append(acc)
            out.append(row)
        return RepMatrix(out, self.domain)

    def __add__(self, other: "RepMatrix") -> "RepMatrix":
        return RepMatrix(
            [[a + b for a, b in zip(r, s)]
             for r, s in zip(self.rows, other.rows)], self.domain)

    def __sub__(self, other: "RepMatrix") -> "RepMatrix":
        return RepMatrix(
            [[a - b for a, b in zip(r, s)]
             for r, s in zip(self.rows, other.rows)], self.domain)

    def scaled(self, c: QLaurent) -> "RepMatrix":
        return RepMatrix([[c * f for f in r] for r in self.rows],
                         self.domain)

    def __eq__(self, other):
        return (isinstance(other, RepMatrix) and self.dim == other.dim
                and self.rows == other.rows)

    def __hash__(self):
        raise TypeError("RepMatrix is not hashable")

    def is_zero(self) -> bool:
        return all(f.is_zero() for r in self.rows for f in r)

    def max_q_degree(self):
        """Largest q-exponent over all entries; NEG_INF when zero."""
        from .laurent import NEG_INF, q_degree
        best = NEG_INF
        for r in self.rows:
            for f in r:
                d = q_degree(f)
                if d is not NEG_INF and (best is NEG_INF or d > best):
                    best = d
        return best

    def __repr__(self):
        return f"RepMatrix(dim={self.dim}, arity={self.arity})"


class ModuleRep:
    """Action engine for one (context, parameters, domain) triple.

    Generator matrices, word products, translations X^lam, and relabel
    matrices are all memoized on the instance.
    """

    def __init__(self, ctx: JContext, params: JParamSystem,
                 domain: FundamentalDomain | None = None):
        if params.ctx != ctx:
            raise ValueError("parameter system is for a different strip")
        if domain is None:
            domain = default_domain(ctx)
        if domain.ctx != ctx:
            raise ValueError("domain is for a different strip")
        self.ctx = ctx
        self.params = params
        self.domain = domain
        self.dim = len(domain)
        self.arity = ctx.zeta_arity
        self._gen: dict = {}
        self._gen_inv: dict = {}
        self._sigma: dict = {}
        self._word: dict = {(): self.identity()}
        self._X: dict = {}

    def identity(self) -> RepMatrix:
        return RepMatrix.identity(self.dim, self.arity, self.domain)

    def _zeta(self, lam) -> QLaurent:
        return QLaurent.monomial(0, self.ctx.zeta_exponent(lam))

    def gen(self, i: int) -> RepMatrix:
        m = self._gen.get(i)
        if m is not None:
            return m
        ctx, rs = self.ctx, self.ctx.rs
        z = QLaurent.zero(self.arity)
        rows = [[z] * self.dim for _ in range(self.dim)]
        s = simple_aff(rs, i)
        for r, f in enumerate(self.domain.elements):
            x = aff_mul(f, s)
            if in_WbbJ(ctx, x):
                lam, fp = self.domain.wt_theta(x)
                c = self.domain.index(fp)
                rows[r][c] = rows[r][c] + self._zeta(lam)
                if crossing_sign(rs, f, i) == -1:
                    g = self.params.wf.gap(i, self.arity)
                    rows[r][r] = rows[r][r] + g
            else:
                wall, _ = separating_wall(ctx, f, i)
                lab = wall_label(self.params, wall)
                rows[r][r] = rows[r][r] + lab.to_laurent(self.arity)
        m = RepMatrix(rows, self.domain)
        self._gen[i] = m
        return m

    def gen_inverse(self, i: int) -> RepMatrix:
        m = self._gen_inv.get(i)
        if m is None:
            g = self.params.wf.gap(i, self.arity)
            m = self.gen(i) - self.identity().scaled(g)
            self._gen_inv[i] = m
        return m

    def sigma_mat(self, sigma: AffElt) -> RepMatrix:
        m = self._sigma.get(sigma)
        if m is not None:
            return m
        if sigma not in sigma_group(self.ctx.rs):
            raise ValueError("not a length-zero relabel")
        z = QLaurent.zero(self.arity)
        rows = [[z] * self.dim for _ in range(self.dim)]
        for r, f in enumerate(self.domain.elements):
            lam, fp = self.domain.wt_theta(aff_mul(f, sigma))
            rows[r][self.domain.index(fp)] = self._zeta(lam)
        m = RepMatrix(rows, self.domain)
        self._sigma[sigma] = m
        return m

    def of_word(self, word, sigma: AffElt | None = None) -> RepMatrix:
        word = tuple(word)
        m = self._word.get(word)
        if m is None:
            m = self.of_word(word[:-1]) * self.gen(word[-1])
            self._word[word] = m
        if sigma is not None and not sigma.is_identity():
            m = m * self.sigma_mat(sigma)
        return m

    def of_elt(self, w: AffElt) -> RepMatrix:
        word, sig = reduced_word(self.ctx.rs, w)
        return self.of_word(word, sig)

    def of_X(self, lam) -> RepMatrix:
        """Matrix of the translation basis element for the coweight."""
        lam = tuple(lam)
        m = self._X.get(lam)
        if m is not None:
            return m
        rs = self.ctx.rs
        word, sig = reduced_word(rs, aff_translation(lam))
        m = self.identity()
        cur = aff_identity(rs.rank)
        for i in word:
            eps = crossing_sign(rs, cur, i)
            m = m * (self.gen(i) if eps == 1 else self.gen_inverse(i))
            cur = aff_mul(cur, simple_aff(rs, i))
        if not sig.is_identity():
            m = m * self.sigma_mat(sig)
        self._X[lam] = m
        return m

    def of_tau(self, i: int) -> RepMatrix:
        rs = self.ctx.rs
        n = rs.rank
        if not 1 <= i <= n:
            raise ValueError("intertwiners are indexed by finite nodes")
        wf = self.params.wf
        alpha = rs.simple_root(i)
        cov = rs.coroot(alpha)
        neg = tuple(-x for x in cov)
        gap_i = wf.gap(i, self.arity)
        if not (rs.is_nonreduced and i == n):
            lead = (self.identity() - self.of_X(neg)) * self.gen(i)
            return lead - self.identity().scaled(gap_i)
        half = rs.coroot(tuple(2 * x for x in alpha))
        neg_half = tuple(-x for x in half)
        if wf.L(0) != wf.L(n):
            lead = (self.identity() - self.of_X(neg)) * self.gen(n)
            low = self.identity().scaled(gap_i) \
                + self.of_X(neg_half).scaled(wf.gap(0, self.arity))
            return lead - low
        lead = (self.identity() - self.of_X(neg_half)) * self.gen(n)
        return lead - self.identity().scaled(gap_i)

    def via_paths(self, w: AffElt) -> RepMatrix:
        word, sig = reduced_word(self.ctx.rs, w)
        return self.via_paths_word(word, sig)

    def via_paths_word(self, word, sigma: AffElt | None = None) -> RepMatrix:
        z = QLaurent.zero(self.arity)
        rows = [[z] * self.dim for _ in range(self.dim)]
        for r, f in enumerate(self.domain.elements):
            for p in enumerate_paths(self.ctx, word, start=f, sigma=sigma):
                lam, fp = p.wt_theta(self.domain)
                c = self.domain.index(fp)
                rows[r][c] = rows[r][c] + p.mass(self.params) * self._zeta(lam)
        return RepMatrix(rows, self.domain)

    def psi_value(self, lam) -> QLaurent:
        """Character value on the translation element of the coweight."""
        sqm = self.params.v_power(lam)
        return QLaurent.monomial(sqm.q_exp, self.ctx.zeta_exponent(lam),
                                 sqm.sign)


_ENGINES: dict = {}


def module_rep(ctx: JContext, params: JParamSystem,
               domain: FundamentalDomain | None = None) -> ModuleRep:
    """Shared engine per (context, parameters, domain)."""
    if domain is None:
        domain = default_domain(ctx)
    key = (ctx, params.wf, params.signature(), id(domain))
    eng = _ENGINES.get(key)
    if eng is None:
        eng = ModuleRep(ctx, params, domain)
        _ENGINES[key] = eng
    return eng


def gen_matrix(i, ctx: JContext, params: JParamSystem,
               domain: FundamentalDomain | None = None) -> RepMatrix:
    """Matrix of one generator: a node index or a relabel element."""
    eng = module_rep(ctx, params, domain)
    if isinstance(i, AffElt):
        return eng.sigma_mat(i)
    return eng.gen(i)


def matrix_of_Tw(w: AffElt, ctx: JContext, params: JParamSystem,
                 domain: FundamentalDomain | None = None) -> RepMatrix:
    return module_rep(ctx, params, domain).of_elt(w)


def matrix_via_paths(w: AffElt, ctx: JContext, params: JParamSystem,
                     domain: FundamentalDomain | None = None) -> RepMatrix:
    return module_rep(ctx, params, domain).via_paths(w)


def matrix_of_X(lam, ctx: JContext, params: JParamSystem,
                domain: FundamentalDomain | None = None) -> RepMatrix:
    return module_rep(ctx, params, domain).of_X(lam)


def matrix_of_tau(i: int, ctx: JContext, params: JParamSystem,
                  domain: FundamentalDomain | None = None) -> RepMatrix:
    return module_rep(ctx, params, domain).of_tau(i)


def basis_change_matrix(ctx: JContext, params: JParamSystem,
                        domain: FundamentalDomain) -> RepMatrix:
    """Monomial matrix expressing the domain basis in the standard one.

    Row f of the result has a single zeta-power entry in the column of
    the minimal representative of f's orbit, so conjugating by it maps
    the standard-basis matrices to the domain-basis ones.
    """
    eng = module_rep(ctx, params, domain)
    std = default_domain(ctx)
    z = QLaurent.zero(eng.arity)
    rows = [[z] * eng.dim for _ in range(eng.dim)]
    for r, f in enumerate(domain.elements):
        lam, fp = std.wt_theta(f)
        rows[r][std.index(fp)] = eng._zeta(lam)
    return RepMatrix(rows, domain)


def weight_diag_check(ctx: JContext, params: JParamSystem, lams,
                      domain: FundamentalDomain | None = None) -> list:
    """Annihilating-product and spectrum-distinctness report.

    For each coweight the matrix of X^lam must be killed by the product
    of (X^lam - predicted value) over the finite coset representatives;
    distinctness of the predicted values is reported alongside.
    """
    eng = module_rep(ctx, params, domain)
    report = []
    for lam in lams:
        lam = tuple(lam)
        m = eng.of_X(lam)
        values = []
        for u in WJ_reps(ctx):
            ulam = fin_apply_coweight(u, lam)
            values.append(eng.psi_value(ulam))
        prod = eng.identity()
        for val in values:
            prod = prod * (m - eng.identity().scaled(val))
        keys = {tuple(v.sorted_terms()) for v in values}
        report.append({
            "lam": lam,
            "annihilated": prod.is_zero(),
            "distinct": len(keys) == len(values),
        })
    return report


def _sample_coweights(rank: int):
    lams = [tuple(int(i == k) for i in range(rank)) for k in range(rank)]
    lams.append(tuple([1] * rank))
    lams.append(tuple([-1] + [0] * (rank - 1)))
    if rank >= 2:
        lams.append(tuple([1, -2] + [0] * (rank - 2)))
    return lams


def check_relations(ctx: JContext, params: JParamSystem,
                    domain: FundamentalDomain | None = None,
                    lams=None) -> list:
    """Defining-relation battery; returns a list of failure labels.

    Covers the quadratic and braid relations, relabel conjugation and
    composition, commuting translations, the Bernstein-Lusztig relation
    in both branches, the translation splitting of the affine node, and
    the intertwiner square identities.
    """
    eng = module_rep(ctx, params, domain)
    rs = ctx.rs
    n = rs.rank
    wf = params.wf
    ar = eng.arity
    ident = eng.identity()
    bad = []
    if lams is None:
        lams = _sample_coweights(n)

    for i in range(n + 1):
        t = eng.gen(i)
        if t * t != ident + t.scaled(wf.gap(i, ar)):
            bad.append(f"quadratic:{i}")
        if t * eng.gen_inverse(i) != ident:
            bad.append(f"inverse:{i}")

    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = braid_order(rs, i, j)
            if m == 0:
                continue
            a, b = eng.identity(), eng.identity()
            for k in range(m):
                a = a * eng.gen(i if k % 2 == 0 else j)
                b = b * eng.gen(j if k % 2 == 0 else i)
            if a != b:
                bad.append(f"braid:{i},{j}:{m}")

    sigmas = sigma_group(rs)
    for s in sigmas:
        ms = eng.sigma_mat(s)
        perm = node_perm(rs, s)
        for i in range(n + 1):
            if ms * eng.gen(i) != eng.gen(perm[i]) * ms:
                bad.append(f"relabel-conj:{i}")
        for s2 in sigmas:
            if eng.sigma_mat(s) * eng.sigma_mat(s2) != \
                    eng.sigma_mat(aff_mul(s, s2)):
                bad.append("relabel-product")

    zero = tuple([0] * n)
    if eng.of_X(zero) != ident:
        bad.append("X:zero")
    for lam in lams:
        for mu in lams:
            s = tuple(a + b for a, b in zip(lam, mu))
            if eng.of_X(lam) * eng.of_X(mu) != eng.of_X(s):
                bad.append(f"X-add:{lam},{mu}")

    phi_cov = rs.coroot(rs.highest_root)
    w_phi = _finite_reflection(rs, rs.highest_root)
    if eng.of_X(phi_cov) != eng.gen(0) * eng.of_elt(w_phi):
        bad.append("X:affine-node-splitting")

    for i in range(1, n + 1):
        for lam in lams:
            if not _bl_holds(eng, i, lam):
                bad.append(f"bernstein-lusztig:{i}:{lam}")

    for i in range(1, n + 1):
        if not _tau_square_holds(eng, i):
            bad.append(f"tau-square:{i}")
        tau = eng.of_tau(i)
        for lam in lams[:3]:
            s_lam = rs.reflect_coweight(i, lam)
            if tau * eng.of_X(lam) != eng.of_X(s_lam) * tau:
                bad.append(f"tau-intertwine:{i}:{lam}")

    return bad


def _finite_reflection(rs, root) -> AffElt:
    from .weyl import FinWeyl
    g = rs.gram
    n = rs.rank

    def bilin(x, y):
        return sum(x[a] * g[a][b] * y[b] for a in range(n) for b in range(n))

    rr = bilin(root, root)
    cols = []
    for j in rs.nodes:
        beta = rs.simple_root(j)
        num = 2 * bilin(beta, root)
        if num % rr:
            raise AssertionError("non-integral reflection coefficient")
        c = num // rr
        cols.append(tuple(b - c * r for b, r in zip(beta, root)))
    return aff_from_fin(FinWeyl(tuple(cols)))


def _geometric_sum(eng: ModuleRep, lam, cov, c: int) -> RepMatrix:
    """(X^lam - X^{lam - c cov}) / (1 - X^{-cov}) expanded exactly."""
    dim, ar = eng.dim, eng.arity
    out = RepMatrix.zero(dim, ar, eng.domain)
    if c >= 0:
        for k in range(c):
            mu = tuple(a - k * b for a, b in zip(lam, cov))
            out = out + eng.of_X(mu)
        return out
    for k in range(1, -c + 1):
        mu = tuple(a + k * b for a, b in zip(lam, cov))
        out = out - eng.of_X(mu)
    return out


def _bl_holds(eng: ModuleRep, i: int, lam) -> bool:
    rs = eng.ctx.rs
    wf = eng.params.wf
    ar = eng.arity
    alpha = rs.simple_root(i)
    cov = rs.coroot(alpha)
    c = pairing(lam, alpha)
    s_lam = rs.reflect_coweight(i, lam)
    geo = _geometric_sum(eng, lam, cov, c)
    lhs = eng.gen(i) * eng.of_X(lam)
    rhs = eng.of_X(s_lam) * eng.gen(i) + geo.scaled(wf.gap(i, ar))
    if rs.is_nonreduced and i == rs.rank:
        half = rs.coroot(tuple(2 * x for x in alpha))
        neg_half = tuple(-x for x in half)
        rhs = eng.of_X(s_lam) * eng.gen(i) \
            + geo.scaled(wf.gap(i, ar)) \
            + (eng.of_X(neg_half) * geo).scaled(wf.gap(0, ar))
    return lhs == rhs


def _tau_square_holds(eng: ModuleRep, i: int) -> bool:
    rs = eng.ctx.rs
    wf = eng.params.wf
    ar = eng.arity
    ident = eng.identity()
    tau2 = eng.of_tau(i) * eng.of_tau(i)
    alpha = rs.simple_root(i)
    cov = rs.coroot(alpha)
    neg = tuple(-x for x in cov)
    if not (rs.is_nonreduced and i == rs.rank):
        li = wf.L(i)
        f1 = ident - eng.of_X(neg).scaled(QLaurent.q_power(-2 * li, ar))
        f2 = ident - eng.of_X(cov).scaled(QLaurent.q_power(-2 * li, ar))
        want = (f1 * f2).scaled(QLaurent.q_power(2 * li, ar))
        return tau2 == want
    half = rs.coroot(tuple(2 * x for x in alpha))
    neg_half = tuple(-x for x in half)
    l0, ln = wf.L(0), wf.L(rs.rank)
    if l0 == ln:
        f1 = ident - eng.of_X(neg_half).scaled(QLaurent.q_power(-2 * ln, ar))
        f2 = ident - eng.of_X(half).scaled(QLaurent.q_power(-2 * ln, ar))
        return tau2 == (f1 * f2).scaled(QLaurent.q_power(2 * ln, ar))
    f1 = ident - eng.of_X(neg_half).scaled(QLaurent.q_power(-l0 - ln, ar))
    f2 = ident + eng.of_X(neg_half).scaled(QLaurent.q_power(l0 - ln, ar))
    f3 = ident - eng.of_X(half).scaled(QLaurent.q_power(-l0 - ln, ar))
    f4 = ident + eng.of_X(half).scaled(QLaurent.q_power(l0 - ln, ar))
    return tau2 == (f1 * f2 * f3 * f4).scaled(QLaurent.q_power(2 * ln, ar))
