"""Exact weight-space arithmetic and the (extended) affine Weyl group of type A.

Weights live in the span of the basic weight, the classical traceless
coordinates and the null direction; all coordinates are exact rationals.
Group elements are pairs (translation, permutation) acting on weights by
the standard affine rule.  Everything here is an immutable value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _canonical_finite(coords: Iterable) -> tuple[Fraction, ...]:
    cs = tuple(Fraction(c) for c in coords)
    mean = sum(cs, Fraction(0)) / len(cs)
    return tuple(c - mean for c in cs)


@dataclass(frozen=True)
class Weight:
    """Element of the weight space: level * Lambda_0 + sum(finite) + delta_coeff * delta.

    ``finite`` holds the classical coordinates in the traceless basis,
    canonicalized so they sum to zero (the basis vectors themselves sum
    to zero, so coordinates are only defined modulo the all-ones vector).
    """

    level: Fraction
    finite: tuple[Fraction, ...]
    delta_coeff: Fraction

    def __post_init__(self) -> None:
        if len(self.finite) < 2:
            raise ValueError("rank parameter must be at least 2")
        object.__setattr__(self, "level", Fraction(self.level))
        object.__setattr__(self, "finite", _canonical_finite(self.finite))
        object.__setattr__(self, "delta_coeff", Fraction(self.delta_coeff))

    @property
    def l(self) -> int:
        return len(self.finite)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            self.level + other.level,
            tuple(a + b for a, b in zip(self.finite, other.finite)),
            self.delta_coeff + other.delta_coeff,
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(-self.level, tuple(-c for c in self.finite), -self.delta_coeff)

    def __rmul__(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(c * self.level, tuple(c * x for x in self.finite), c * self.delta_coeff)

    def is_zero(self) -> bool:
        return self.level == 0 and self.delta_coeff == 0 and all(c == 0 for c in self.finite)


def pair(a: Weight, b: Weight) -> Fraction:
    """Invariant symmetric bilinear form, normalized so real roots have square length 2."""
    if a.l != b.l:
        raise ValueError("rank mismatch")
    # Coordinates are canonical (sum zero), so the -1/l cross term vanishes.
    return (
        a.level * b.delta_coeff
        + a.delta_coeff * b.level
        + sum(x * y for x, y in zip(a.finite, b.finite))
    )


# ---------------------------------------------------------------------------
# Standard weights.  All index arguments are 1-based where the classical
# labels run 1..l, and 0-based 0..l-1 for the simple roots / fundamental
# weights of the affine diagram.
# ---------------------------------------------------------------------------

def zero_weight(l: int) -> Weight:
    return Weight(0, (Fraction(0),) * l, 0)


def lambda0(l: int) -> Weight:
    return Weight(1, (Fraction(0),) * l, 0)


def delta_weight(l: int) -> Weight:
    return Weight(0, (Fraction(0),) * l, 1)


def eps_bar(l: int, i: int) -> Weight:
    """Traceless classical basis vector, index 1-based."""
    if not 1 <= i <= l:
        raise ValueError("index out of range")
    coords = [Fraction(-1, l)] * l
    coords[i - 1] += 1
    return Weight(0, tuple(coords), 0)


def alpha_ij(l: int, i: int, j: int) -> Weight:
    """Classical root eps_bar_i - eps_bar_j, i != j (1-based)."""
    if i == j:
        raise ValueError("not a root")
    return eps_bar(l, i) - eps_bar(l, j)


def alpha_1j(l: int, j: int) -> Weight:
    return alpha_ij(l, 1, j)


def simple_root(l: int, i: int) -> Weight:
    """Simple root, 0-based index; index 0 is the affine one."""
    if not 0 <= i <= l - 1:
        raise ValueError("index out of range")
    if i == 0:
        return delta_weight(l) - alpha_ij(l, 1, l)
    return alpha_ij(l, i, i + 1)


def fundamental(l: int, i: int) -> Weight:
    """Fundamental weight, 0-based index."""
    if not 0 <= i <= l - 1:
        raise ValueError("index out of range")
    w = lambda0(l)
    for t in range(1, i + 1):
        w = w + eps_bar(l, t)
    return w


def rho(l: int) -> Weight:
    w = zero_weight(l)
    for i in range(l):
        w = w + fundamental(l, i)
    return w


def translation_beta(l: int) -> Weight:
    """The classical weight l * eps_bar_1 = alpha_12 + ... + alpha_1l."""
    return Fraction(l) * eps_bar(l, 1)


# ---------------------------------------------------------------------------
# Root-lattice coordinates.  An exponent vector n represents the group-ring
# monomial e^{-sum n_i alpha_i}; depth is sum(n).
# ---------------------------------------------------------------------------

def expvec(mu: Weight) -> tuple[int, ...]:
    """Coordinates n with mu = -(n_0 alpha_0 + ... + n_{l-1} alpha_{l-1}).

    Raises ValueError when mu is not in the affine root lattice.
    """
    l = mu.l
    if mu.level != 0:
        raise ValueError("weight has nonzero level, not in the root lattice")
    n = [Fraction(0)] * l
    n[0] = -mu.delta_coeff
    for j in range(1, l):
        n[j] = n[j - 1] - mu.finite[j - 1]
    if mu.finite[l - 1] != n[l - 1] - n[0]:
        raise ValueError("inconsistent coordinates, not in the root lattice")
    if any(c.denominator != 1 for c in n):
        raise ValueError("non-integral coordinates, not in the root lattice")
    return tuple(int(c) for c in n)


def weight_of_expvec(l: int, n: Sequence[int]) -> Weight:
    w = zero_weight(l)
    for i, c in enumerate(n):
        if c:
            w = w - Fraction(c) * simple_root(l, i)
    return w


def in_root_lattice(mu: Weight) -> bool:
    try:
        expvec(mu)
        return True
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# The extended affine Weyl group.
# ---------------------------------------------------------------------------

def _perm_parity(sigma: Sequence[int]) -> int:
    seen = [False] * len(sigma)
    parity = 1
    for i in range(len(sigma)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


@dataclass(frozen=True)
class WeylElement:
    """Group element t_gamma . sigma: translation by a classical weight then a permutation.

    ``gamma`` is stored in canonical traceless coordinates; ``sigma`` maps
    0-based letter i to sigma[i].  Elements with gamma outside the classical
    root lattice belong to the extended group only.
    """

    gamma: tuple[Fraction, ...]
    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.gamma) != len(self.sigma):
            raise ValueError("rank mismatch")
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError("sigma is not a permutation")
        object.__setattr__(self, "gamma", _canonical_finite(self.gamma))

    @property
    def l(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, l: int) -> "WeylElement":
        return cls((Fraction(0),) * l, tuple(range(l)))

    @property
    def extended_flag(self) -> bool:
        """True when the translation part lies outside the classical root lattice."""
        return any(c.denominator != 1 for c in self.gamma)

    def _permute(self, coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.l
        for i, c in enumerate(coords):
            out[self.sigma[i]] = c
        return tuple(out)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (t_{g1} s1)(t_{g2} s2) = t_{g1 + s1(g2)} (s1 s2)
        g = tuple(a + b for a, b in zip(self.gamma, self._permute(other.gamma)))
        s = tuple(self.sigma[other.sigma[i]] for i in range(self.l))
        return WeylElement(g, s)

    def inverse(self) -> "WeylElement":
        inv_sigma = [0] * self.l
        for i, im in enumerate(self.sigma):
            inv_sigma[im] = i
        g = tuple(-self.gamma[self.sigma[i]] for i in range(self.l))
        return WeylElement(g, tuple(inv_sigma))

    def apply(self, mu: Weight) -> Weight:
        """Affine action: permute the classical coordinates, then translate."""
        if mu.l != self.l:
            raise ValueError("rank mismatch")
        fin = self._permute(mu.finite)
        lev = mu.level
        gg = sum(x * x for x in self.gamma)
        gf = sum(x * y for x, y in zip(self.gamma, fin))
        new_fin = tuple(x + lev * g for x, g in zip(fin, self.gamma))
        new_delta = mu.delta_coeff - (Fraction(lev) * gg / 2 + gf)
        return Weight(lev, new_fin, new_delta)

    def sign(self) -> int:
        """Parity character; defined on the non-extended group only."""
        if self.extended_flag:
            raise ValueError("sign is defined on the affine Weyl group, not the extended group")
        return _perm_parity(self.sigma)

    def _key(self):
        return (self.gamma, self.sigma)


def translation(gamma: Weight) -> WeylElement:
    if gamma.level != 0 or gamma.delta_coeff != 0:
        raise ValueError("translation part must be a classical weight")
    return WeylElement(gamma.finite, tuple(range(gamma.l)))


def reflection(beta_bar: Weight, n: int = 0) -> WeylElement:
    """Reflection at the real root beta_bar + n*delta, as t_{-n beta_bar} . (a b)."""
    l = beta_bar.l
    if beta_bar.level != 0 or beta_bar.delta_coeff != 0:
        raise ValueError("beta_bar must be a classical root")
    plus = [i for i, c in enumerate(beta_bar.finite) if c == 1]
    minus = [i for i, c in enumerate(beta_bar.finite) if c == -1]
    rest = [c for c in beta_bar.finite if c not in (1, -1)]
    if len(plus) != 1 or len(minus) != 1 or any(c != 0 for c in rest):
        raise ValueError("beta_bar is not a classical root")
    a, b = plus[0], minus[0]
    sigma = list(range(l))
    sigma[a], sigma[b] = b, a
    gamma = tuple(-Fraction(n) * c for c in beta_bar.finite)
    return WeylElement(gamma, tuple(sigma))


def reflection_at(root: Weight) -> WeylElement:
    """Reflection at an arbitrary real root (classical part plus an integer null multiple)."""
    n = root.delta_coeff
    if root.level != 0 or n.denominator != 1:
        raise ValueError("not a real root")
    bar = Weight(0, root.finite, 0)
    return reflection(bar, int(n))


def special_s(l: int) -> WeylElement:
    """The extended element implementing the series shift: t_{eps_bar_2} . (2 3 ... l)."""
    if l < 2:
        raise ValueError("rank parameter must be at least 2")
    sigma = [0] * l
    for i in range(1, l - 1):
        sigma[i] = i + 1
    sigma[l - 1] = 1
    return WeylElement(eps_bar(l, 2).finite, tuple(sigma))


def conjugate(w1: WeylElement, w2: WeylElement) -> WeylElement:
    return w1 * w2 * w1.inverse()


def s_power(l: int, p: int) -> WeylElement:
    s = special_s(l)
    if p < 0:
        s = s.inverse()
        p = -p
    out = WeylElement.identity(l)
    for _ in range(p):
        out = out * s
    return out


def r_chain(l: int, j: int) -> WeylElement:
    """Product of reflections at the shift-orbit of the first classical root.

    For j >= 0 this is r_{s^{j-1}(a)} ... r_{s(a)} r_{a} with a the root
    eps_bar_1 - eps_bar_2; for j < 0 it is r_{s^{j}(a)} ... r_{s^{-1}(a)}.
    """
    s = special_s(l)
    a = alpha_ij(l, 1, 2)
    out = WeylElement.identity(l)
    if j >= 0:
        root = a
        for _ in range(j):
            out = reflection_at(root) * out
            root = s.apply(root)
    else:
        s_inv = s.inverse()
        root = a
        for _ in range(-j):
            root = s_inv.apply(root)
            out = reflection_at(root) * out
    return out


def simple_reflections(l: int) -> list[WeylElement]:
    out = []
    for i in range(l):
        if i == 0:
            out.append(reflection(alpha_ij(l, l, 1), 1))
        else:
            out.append(reflection(alpha_ij(l, i, i + 1), 0))
    return out


def enumerate_weyl(l: int, max_length: int) -> list[tuple[WeylElement, int]]:
    """All group elements of word length <= max_length with their minimal lengths.

    Breadth-first over the simple reflections, deduplicated by canonical
    form, returned sorted by (length, coordinates).
    """
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    gens = simple_reflections(l)
    ident = WeylElement.identity(l)
    dist: dict[tuple, tuple[WeylElement, int]] = {ident._key(): (ident, 0)}
    frontier = [ident]
    for length in range(1, max_length + 1):
        new_frontier = []
        for w in frontier:
            for g in gens:
                nw = w * g
                key = nw._key()
                if key not in dist:
                    dist[key] = (nw, length)
                    new_frontier.append(nw)
        frontier = new_frontier
        if not frontier:
            break
    return sorted(dist.values(), key=lambda pair_: (pair_[1], pair_[0]._key()))
