"""Root system data in simple-root coordinates.

A root is an integer tuple of coefficients over the simple roots
alpha_1..alpha_n.  Coweights live in the dual basis of fundamental
coweights, so the pairing <coweight, root> is the plain dot product of
the two coordinate tuples.  Everything is exact integer arithmetic.

The non-reduced family BC_n is a first-class citizen: its root list
carries both e_i (= alpha_i + ... + alpha_n) and 2 e_i, and the helpers
phi0 / phi1 give the two embedded reduced subsystems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

__all__ = ["RootSystem", "pairing"]

_FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "BC")


def pairing(coweight, root) -> int:
    """<coweight, root> in the coordinate systems used throughout."""
    return sum(a * b for a, b in zip(coweight, root))


def _chain_gram(n, norms, bonds):
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = norms[i]
    for (i, j), val in bonds.items():
        gram[i][j] = val
        gram[j][i] = val
    return gram


def _gram_matrix(family: str, n: int):
    if family == "A":
        return _chain_gram(n, [2] * n, {(i, i + 1): -1 for i in range(n - 1)})
    if family in ("B", "BC"):
        norms = [2] * (n - 1) + [1]
        bonds = {(i, i + 1): -1 for i in range(n - 1)}
        return _chain_gram(n, norms, bonds)
    if family == "C":
        norms = [2] * (n - 1) + [4]
        bonds = {(i, i + 1): -1 for i in range(n - 2)}
        if n >= 2:
            bonds[(n - 2, n - 1)] = -2
        return _chain_gram(n, norms, bonds)
    if family == "D":
        bonds = {(i, i + 1): -1 for i in range(n - 3)}
        bonds[(n - 3, n - 2)] = -1
        bonds[(n - 3, n - 1)] = -1
        return _chain_gram(n, [2] * n, bonds)
    if family == "E":
        # Bourbaki labels: 1-3-4-5-6(-7-8) chain, 2 attached to 4.
        bonds = {(0, 2): -1, (1, 3): -1}
        for i in range(2, n - 1):
            bonds[(i, i + 1)] = -1
        return _chain_gram(n, [2] * n, bonds)
    if family == "F":
        return _chain_gram(4, [4, 4, 2, 2],
                           {(0, 1): -2, (1, 2): -2, (2, 3): -1})
    if family == "G":
        # alpha_1 long, alpha_2 short; highest root 2 alpha_1 + 3 alpha_2
        return _chain_gram(2, [6, 2], {(0, 1): -3})
    raise ValueError(f"unknown family {family!r}")


_RANK_RANGE = {
    "A": (1, None), "B": (2, None), "C": (2, None), "D": (4, None),
    "E": (6, 8), "F": (4, 4), "G": (2, 2), "BC": (1, None),
}


@dataclass(frozen=True)
class RootSystem:
    """A (possibly non-reduced) crystallographic root system."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        lo, hi = _RANK_RANGE[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise ValueError(f"rank {self.rank} out of range for {self.family}")

    def __repr__(self):
        return f"{self.family}{self.rank}"

    @property
    def nodes(self):
        """Simple-root labels 1..n."""
        return range(1, self.rank + 1)

    @property
    def is_nonreduced(self) -> bool:
        return self.family == "BC"

    @cached_property
    def gram(self):
        return tuple(tuple(row) for row in _gram_matrix(self.family, self.rank))

    @cached_property
    def cartan(self):
        """cartan[i][j] = <alpha_{j+1}, alpha_{i+1}^vee> (0-indexed storage)."""
        g = self.gram
        n = self.rank
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                num = 2 * g[i][j]
                if num % g[i][i]:
                    raise AssertionError("non-integral Cartan entry")
                row.append(num // g[i][i])
            out.append(tuple(row))
        return tuple(out)

    def simple_root(self, j: int):
        return tuple(int(k == j) for k in self.nodes)

    def reflect_root(self, i: int, root):
        """Image of a root under the simple reflection s_i."""
        row = self.cartan[i - 1]
        c = sum(row[k] * root[k] for k in range(self.rank))
        out = list(root)
        out[i - 1] -= c
        return tuple(out)

    def reflect_coweight(self, i: int, lam):
        """Image of a coweight (omega-coordinates) under s_i."""
        row = self.cartan[i - 1]
        c = lam[i - 1]
        return tuple(lam[k] - c * row[k] for k in range(self.rank))

    @cached_property
    def roots(self) -> frozenset:
        seeds = {self.simple_root(j) for j in self.nodes}
        if self.is_nonreduced:
            seeds.add(tuple(2 * x for x in self.simple_root(self.rank)))
        found = set(seeds) | {tuple(-x for x in r) for r in seeds}
        frontier = list(found)
        while frontier:
            nxt = []
            for r in frontier:
                for i in self.nodes:
                    img = self.reflect_root(i, r)
                    if img not in found:
                        found.add(img)
                        nxt.append(img)
            frontier = nxt
        return frozenset(found)

    @cached_property
    def positive_roots(self) -> tuple:
        pos = [r for r in self.roots if all(x >= 0 for x in r)]
        for r in self.roots:
            if not (all(x >= 0 for x in r) or all(x <= 0 for x in r)):
                raise AssertionError(f"mixed-sign root {r}")
        pos.sort(key=lambda r: (sum(r), r))
        return tuple(pos)

    def is_root(self, r) -> bool:
        return tuple(r) in self.roots

    def is_positive(self, r) -> bool:
        return all(x >= 0 for x in r) and any(x > 0 for x in r)

    @cached_property
    def phi0_positive(self) -> tuple:
        """Positive roots alpha with alpha/2 not a root (a reduced system)."""
        out = []
        for r in self.positive_roots:
            if all(x % 2 == 0 for x in r) and self.is_root(tuple(x // 2 for x in r)):
                continue
            out.append(r)
        return tuple(out)

    @cached_property
    def phi1_positive(self) -> tuple:
        """Positive roots alpha with 2 alpha not a root (indexes the walls)."""
        return tuple(r for r in self.positive_roots
                     if not self.is_root(tuple(2 * x for x in r)))

    def norm(self, r) -> int:
        g = self.gram
        n = self.rank
        return sum(r[i] * g[i][j] * r[j] for i in range(n) for j in range(n))

    @cached_property
    def _norm_values(self) -> tuple:
        return tuple(sorted({self.norm(r) for r in self.positive_roots}))

    def length_class(self, r) -> str:
        """'short' / 'long', with 'middle-of-BC' for the e_i +- e_j orbit."""
        vals = self._norm_values
        nm = self.norm(r)
        if len(vals) == 1:
            return "long"
        if len(vals) == 2:
            return "short" if nm == vals[0] else "long"
        return ("short", "middle-of-BC", "long")[vals.index(nm)]

    @cached_property
    def highest_root(self) -> tuple:
        best = max(self.positive_roots, key=lambda r: (sum(r), r))
        for r in self.positive_roots:
            if any(b < x for b, x in zip(best, r)):
                raise AssertionError("highest root is not dominant")
        return best

    @cached_property
    def marks(self) -> tuple:
        return self.highest_root

    def coroot(self, r) -> tuple:
        """alpha^vee in fundamental-coweight coordinates; always integral."""
        g = self.gram
        n = self.rank
        bc = [sum(g[i][j] * r[j] for j in range(n)) for i in range(n)]
        nm = sum(r[i] * bc[i] for i in range(n))
        out = []
        for i in range(n):
            x = Fraction(2 * bc[i], nm)
            if x.denominator != 1:
                raise AssertionError(f"non-integral coroot of {r}")
            out.append(int(x))
        return tuple(out)

    def reflect_coweight_by_root(self, r, lam):
        """s_r acting on a coweight: lam - <lam, r> r^vee."""
        c = pairing(lam, r)
        rv = self.coroot(r)
        return tuple(a - c * b for a, b in zip(lam, rv))

    def rho_pair(self, J):
        """Doubled half-sums (2 rho, 2 rho') of the long / short positive
        roots of the reduced part of the J-subsystem, as alpha-coordinate
        vectors.  Length is measured against the ambient reduced norms, so
        in a simply-laced system everything counts as long.
        """
        Jset = set(J)
        maxnorm = max(self.norm(r) for r in self.phi0_positive)
        long_sum = [0] * self.rank
        short_sum = [0] * self.rank
        for r in self.phi0_positive:
            if any(r[j - 1] for j in self.nodes if j not in Jset):
                continue
            target = long_sum if self.norm(r) == maxnorm else short_sum
            for k in range(self.rank):
                target[k] += r[k]
        return tuple(long_sum), tuple(short_sum)
