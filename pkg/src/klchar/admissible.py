"""Window-constrained sequence enumeration and the brute-force characters.

A sequence x of non-negative integers is admissible for (k, l) when every
entry and every window of l consecutive entries is bounded by k.  The
boundary data of a dominant weight further caps the partial sums of the
first l-1 entries.  Enumerating all such sequences whose weight deficit
fits under a depth budget gives the brute-force generating function that
the closed formulas are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from . import series
from .series import TruncatedSeries, qz_to_expvec
from .weyl import (
    Weight,
    alpha_1j,
    delta_weight,
    fundamental,
    zero_weight,
)


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class DominantWeightSpec:
    """Level k dominant weight given by multiplicities of the fundamental weights."""

    l: int
    k: int
    mult: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.l < 2:
            raise ConfigurationError("rank parameter must be at least 2")
        if self.k < 0:
            raise ConfigurationError("level must be non-negative")
        object.__setattr__(self, "mult", tuple(int(c) for c in self.mult))
        if len(self.mult) != self.l or any(c < 0 for c in self.mult):
            raise ConfigurationError("need l non-negative multiplicities")
        if sum(self.mult) != self.k:
            raise ConfigurationError("multiplicities must sum to the level")

    @property
    def b(self) -> tuple[int, ...]:
        """Partial-sum bounds b_i = mult_1 + ... + mult_{i+1}, i = 0..l-2."""
        out = []
        acc = 0
        for i in range(1, self.l):
            acc += self.mult[i]
            out.append(acc)
        return tuple(out)

    def weight(self) -> Weight:
        w = zero_weight(self.l)
        for i, c in enumerate(self.mult):
            if c:
                w = w + Fraction(c) * fundamental(self.l, i)
        return w

    @classmethod
    def from_b(cls, l: int, k: int, b) -> "DominantWeightSpec":
        b = tuple(b)
        if len(b) != l - 1:
            raise ConfigurationError("need l-1 partial-sum bounds")
        if any(x < 0 for x in b) or any(b[i] > b[i + 1] for i in range(l - 2)) or b[-1] > k:
            raise ConfigurationError("bounds must satisfy 0 <= b_0 <= ... <= b_{l-2} <= k")
        mult = [k - b[-1], b[0]]
        for i in range(1, l - 1):
            mult.append(b[i] - b[i - 1])
        return cls(l, k, tuple(mult))


def dominant_specs(l: int, k: int) -> list[DominantWeightSpec]:
    """All level-k dominant weights, in lexicographic multiplicity order."""
    out = []
    for mult in iproduct(range(k + 1), repeat=l):
        if sum(mult) == k:
            out.append(DominantWeightSpec(l, k, mult))
    return out


# ---------------------------------------------------------------------------
# Position bookkeeping: position p >= 0 carries one power of q^n z_r with
# p = n(l-1) + r - 1, so a unit there costs depth n*l + r.
# ---------------------------------------------------------------------------

def position_nr(l: int, p: int) -> tuple[int, int]:
    n, r1 = divmod(p, l - 1)
    return n, r1 + 1


def unit_cost(l: int, p: int) -> int:
    n, r = position_nr(l, p)
    return n * l + r


def unit_vec(l: int, p: int) -> tuple[int, ...]:
    n, r = position_nr(l, p)
    m = [0] * (l - 1)
    m[r - 1] = 1
    return qz_to_expvec(n, m)


def deficit_vec(l: int, x) -> tuple[int, ...]:
    out = [0] * l
    for p, c in enumerate(x):
        if c:
            uv = unit_vec(l, p)
            for i in range(l):
                out[i] += c * uv[i]
    return tuple(out)


def deficit_weight(l: int, x) -> Weight:
    """The weight drop below the highest weight: sum x_p (alpha_{1,r+1} + n delta)."""
    w = zero_weight(l)
    for p, c in enumerate(x):
        if c:
            n, r = position_nr(l, p)
            w = w + Fraction(c) * (alpha_1j(l, r + 1) + Fraction(n) * delta_weight(l))
    return w


def is_admissible(x, l: int, k: int, b=None) -> bool:
    """Independent re-check of all constraints on a finitely supported sequence."""
    xs = tuple(x)
    if any(v < 0 or v > k for v in xs):
        return False
    padded = xs + (0,) * l
    for i in range(len(padded) - l + 1):
        if sum(padded[i : i + l]) > k:
            return False
    if b is not None:
        acc = 0
        for i in range(l - 1):
            acc += padded[i]
            if acc > b[i]:
                return False
    return True


def _enumerate(l: int, k: int, b, cost_fn, budget: int) -> list[tuple[int, ...]]:
    """Depth-first search with budget pruning; cost_fn must be strictly increasing."""
    results: list[tuple[int, ...]] = []

    def rec(p: int, window: tuple[int, ...], bsum: int, cost: int, prefix: list[int]) -> None:
        c = cost_fn(p)
        if c > 0 and cost + c > budget:
            out = list(prefix)
            while out and out[-1] == 0:
                out.pop()
            results.append(tuple(out))
            return
        vmax = k - sum(window)
        if p <= l - 2:
            vmax = min(vmax, b[p] - bsum)
        if c > 0:
            vmax = min(vmax, (budget - cost) // c)
        for v in range(vmax + 1):
            prefix.append(v)
            rec(p + 1, (window + (v,))[-(l - 1):], bsum + v, cost + v * c, prefix)
            prefix.pop()

    rec(0, (), 0, 0, [])
    return results


def enumerate_x(spec: DominantWeightSpec, n: int) -> list[tuple[int, ...]]:
    """All admissible sequences for spec whose deficit depth is at most n."""
    if n < 0:
        return []
    xs = _enumerate(spec.l, spec.k, spec.b, lambda p: unit_cost(spec.l, p), n)
    return sorted(set(xs), key=lambda x: (sum(x[p] * unit_cost(spec.l, p) for p in range(len(x))), x))


def char_bruteforce(spec: DominantWeightSpec, n: int) -> TruncatedSeries:
    """Generating function of the admissible sequences, graded by weight deficit."""
    terms: dict = {}
    for x in enumerate_x(spec, n):
        v = deficit_vec(spec.l, x)
        terms[v] = terms.get(v, 0) + 1
    return series._mk(spec.l, terms, n, (0,) * spec.l)


def char_translated_part(spec: DominantWeightSpec, shift_units: int, budget: int) -> TruncatedSeries:
    """Sum over admissible sequences of the translated deficit monomial.

    Each unit's exponent is lowered by shift_units copies of the null
    direction; the per-unit depth cost becomes cost(p) - l*shift_units,
    which is negative on an initial segment, so the search prunes only
    once costs turn positive.
    """
    l = spec.l
    drop = l * shift_units
    xs = _enumerate(l, spec.k, spec.b, lambda p: unit_cost(l, p) - drop, budget)
    ones = (1,) * l
    terms: dict = {}
    for x in set(xs):
        size = sum(x)
        v = deficit_vec(l, x)
        key = tuple(v[i] - size * shift_units * ones[i] for i in range(l))
        terms[key] = terms.get(key, 0) + 1
    return series._mk(l, terms, budget, None)


# ---------------------------------------------------------------------------
# The defining difference equation of the generating function.
# ---------------------------------------------------------------------------

def difference_equation_sides(spec: DominantWeightSpec, n: int):
    """Left and right side of the recursion that peels off the first entry."""
    l, k = spec.l, spec.k
    b = spec.b
    lhs = char_bruteforce(spec, n)
    rhs = series.zero(l, watermark=n)
    for i in range(b[0] + 1):
        newb = tuple(x - i for x in b[1:]) + (k - i,)
        inner = char_bruteforce(DominantWeightSpec.from_b(l, k, newb), n)
        z1_pow = series.mono(l, qz_to_expvec(0, (i,) + (0,) * (l - 2)))
        rhs = rhs + z1_pow.mul(series.shift(inner, 1), cap=n)
    return lhs, rhs.truncate(n)


def check_difference_equation(spec: DominantWeightSpec, n: int) -> bool:
    lhs, rhs = difference_equation_sides(spec, n)
    return lhs.eq_to_depth(rhs, n)


# ---------------------------------------------------------------------------
# Two-sided sequences with the highest-weight pattern on the left.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemiInfiniteSequence:
    base: int
    values: tuple[int, ...]
    deficit: tuple[int, ...]

    def pairs(self) -> list[tuple[int, int]]:
        """Sparse (index, value) form of the stored box."""
        return [(self.base + i, v) for i, v in enumerate(self.values) if v]


def vacuum_value(spec: DominantWeightSpec, j: int) -> int:
    return spec.mult[(j + 1) % spec.l] if j < 0 else 0


def default_window(l: int, n: int) -> int:
    w = l
    while unit_cost(l, w + 1) <= n or -unit_cost(l, -(w + 1)) <= n:
        w += 1
    return w


def _unit_vec_signed(l: int, j: int) -> tuple[int, ...]:
    n, r = position_nr(l, j)
    m = [0] * (l - 1)
    m[r - 1] = 1
    return qz_to_expvec(n, m)


def enumerate_semiinfinite(spec: DominantWeightSpec, n: int, window: int | None = None):
    """Two-sided admissible sequences pinned to the vacuum left of the window.

    Returns every sequence that agrees with the vacuum pattern below
    -window and vanishes above window, satisfies the window constraint
    everywhere, and whose deficit relative to the vacuum has depth <= n.
    """
    l, k = spec.l, spec.k
    if window is None:
        window = default_window(l, n)
    if unit_cost(l, window + 1) <= n or -unit_cost(l, -(window + 1)) <= n:
        raise ConfigurationError("window too small for the requested depth")
    # The vacuum pattern joined to zeros must itself be admissible.
    lo = -window - 2 * l
    base_vals = [vacuum_value(spec, j) for j in range(lo, window + l + 1)]
    for i in range(len(base_vals) - l + 1):
        if sum(base_vals[i : i + l]) > k:
            raise ConfigurationError("vacuum pattern violates the window constraint")

    # Max possible future depth decrease at or after position j: only
    # exceeding the vacuum at negative positions lowers the deficit.
    dec = {}
    acc = 0
    for j in range(-1, -window - 1, -1):
        acc += k * (-unit_cost(l, j))
        dec[j] = acc

    seed = tuple(vacuum_value(spec, j) for j in range(-window - (l - 1), -window))
    zero_vec = (0,) * l
    results = []

    def rec(j: int, windowvals: tuple[int, ...], dvec: tuple[int, ...], prefix: list[int]) -> None:
        if j > window:
            if sum(dvec) <= n:
                results.append(SemiInfiniteSequence(-window, tuple(prefix), dvec))
            return
        slack = dec.get(j, 0)
        if sum(dvec) - slack > n:
            return
        uv = _unit_vec_signed(l, j)
        vac = vacuum_value(spec, j)
        vmax = k - sum(windowvals)
        for v in range(vmax + 1):
            delta = v - vac
            nd = tuple(dvec[i] + delta * uv[i] for i in range(l)) if delta else dvec
            prefix.append(v)
            rec(j + 1, (windowvals + (v,))[-(l - 1):], nd, prefix)
            prefix.pop()

    rec(-window, seed if l > 1 else (), zero_vec, [])
    results.sort(key=lambda s: (sum(s.deficit), s.deficit, s.values))
    return results


def semiinfinite_series(spec: DominantWeightSpec, n: int, window: int | None = None) -> TruncatedSeries:
    terms: dict = {}
    for s in enumerate_semiinfinite(spec, n, window):
        terms[s.deficit] = terms.get(s.deficit, 0) + 1
    return series._mk(spec.l, terms, n, None)


def semiinfinite_depth_counts(spec: DominantWeightSpec, n: int, window: int | None = None) -> dict[int, int]:
    counts: dict[int, int] = {}
    for s in enumerate_semiinfinite(spec, n, window):
        d = sum(s.deficit)
        counts[d] = counts.get(d, 0) + 1
    return counts
