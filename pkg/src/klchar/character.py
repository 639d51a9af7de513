"""Character computations: brute force, signed-sum-over-words, alternating Weyl sum.

All characters are normalized by the highest weight, so every series lives
on the root lattice.  The alternating sum over the Weyl group enumerates
elements breadth-first up to word length equal to the depth budget; this
is complete because for a regular dominant weight the depth of
lambda - w(lambda) dominates the word length (asserted per element).
The signed sums over words stop adaptively: once two consecutive
degrees contribute nothing below the budget and a third confirms it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import series
from .admissible import (
    DominantWeightSpec,
    char_bruteforce,
    char_translated_part,
    semiinfinite_series,
)
from .monomials import (
    GoodMonomial,
    d_inverse_factored,
    denominator_directions,
    f_factored,
    good_of_degree,
    translated_of_size,
    weyl_of,
)
from .series import FactoredSeries, TruncatedSeries, depth, mono, zero
from .weyl import (
    WeylElement,
    enumerate_weyl,
    expvec,
    rho,
    translation,
    translation_beta,
)


class ConvergenceError(RuntimeError):
    pass


@dataclass
class CharacterResult:
    spec: DominantWeightSpec
    method: str
    series: TruncatedSeries
    watermark: int
    meta: dict = field(default_factory=dict)

    def table(self):
        """Integer coefficient rows (q_exp, z_exps, coeff) sorted by (depth, lex)."""
        rows = []
        for a, m, c in self.series.to_qz_table():
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise RuntimeError(f"non-integral coefficient {c} at {(a, m)}")
                c = int(c)
            rows.append((a, m, c))
        return rows


# ---------------------------------------------------------------------------
# Denominator.
# ---------------------------------------------------------------------------

def denominator_factored(l: int) -> FactoredSeries:
    form = FactoredSeries(l)
    for mu in denominator_directions(l):
        form = form.with_poch(expvec(mu))
    return form


def weyl_denominator(l: int, n: int) -> TruncatedSeries:
    return denominator_factored(l).expand(n)


_dinv_cache: dict[tuple[int, int], TruncatedSeries] = {}


def d_inverse_series(l: int, n: int) -> TruncatedSeries:
    key = (l, n)
    if key not in _dinv_cache:
        _dinv_cache[key] = d_inverse_factored(l).expand(n)
    return _dinv_cache[key]


def denominator_identity_sides(l: int, n: int):
    """Alternating sum over the group versus the product expansion, both to depth n."""
    r = rho(l)
    terms: dict = {}
    for w, length in enumerate_weyl(l, n):
        diff = w.apply(r) - r
        v = expvec(diff)
        d = depth(v)
        if d < length:
            raise RuntimeError("depth/length bound violated in the alternating sum")
        if d <= n:
            terms[v] = terms.get(v, 0) + w.sign()
    lhs = series._mk(l, terms, n, None)
    return lhs, weyl_denominator(l, n)


# ---------------------------------------------------------------------------
# The three characters.
# ---------------------------------------------------------------------------

def weyl_kac(spec: DominantWeightSpec, n: int) -> CharacterResult:
    """Alternating sum over the group divided by the denominator product."""
    l = spec.l
    lam_rho = spec.weight() + rho(l)
    terms: dict = {}
    for w, length in enumerate_weyl(l, n):
        diff = w.apply(lam_rho) - lam_rho
        v = expvec(diff)
        d = depth(v)
        if d < length or any(c < 0 for c in v):
            raise RuntimeError("depth/length bound violated in the alternating sum")
        if d <= n:
            terms[v] = terms.get(v, 0) + w.sign()
    num = series._mk(l, terms, n, None)
    out = num.mul(d_inverse_series(l, n), cap=n)
    for v, c in out.terms.items():
        if (isinstance(c, Fraction) and c.denominator != 1) or c < 0:
            raise RuntimeError(f"alternating-sum character has bad coefficient {c} at {v}")
    return CharacterResult(spec, "weyl_kac", out, n)


def bosonic(spec: DominantWeightSpec, n: int, max_degree: int | None = None) -> CharacterResult:
    """Signed sum over base-set words of the attached series times a monomial."""
    l = spec.l
    lam = spec.weight()
    if max_degree is None:
        max_degree = 3 * n + 12
    total = zero(l, watermark=n)
    d = 0
    empty_run = 0
    used = 0
    while True:
        contributed = False
        for m in good_of_degree(l, d):
            w = weyl_of(m)
            pref = expvec(w.apply(lam) - lam)
            form = f_factored(m).times_monomial(pref)
            if form.min_depth() <= n:
                total = total + form.expand(n)
                contributed = True
                used += 1
        if contributed:
            empty_run = 0
        else:
            empty_run += 1
            if empty_run >= 3:
                break
        d += 1
        if d > max_degree:
            raise ConvergenceError(
                f"signed word sum did not stabilize by degree {max_degree}"
            )
    return CharacterResult(spec, "bosonic", total.truncate(n), n, {"terms_used": used})


def translated_char(spec: DominantWeightSpec, m: int, n: int) -> CharacterResult:
    """Character of the m-fold translate, graded relative to the highest weight."""
    if m < 0:
        raise ValueError("translation count must be non-negative")
    l = spec.l
    lam = spec.weight()
    tm = translation(Fraction(m) * translation_beta(l))
    pref = expvec(tm.apply(lam) - lam)
    budget = n - depth(pref)
    part = char_translated_part(spec, m * l, budget)
    out = mono(l, pref).mul(part)
    return CharacterResult(spec, "translated", out.truncate(n), n, {"m": m})


def translated_char_via_words(
    spec: DominantWeightSpec, m: int, n: int, max_degree: int | None = None
) -> CharacterResult:
    """Alternative assembly of the translate through shifted word series.

    Exercises the display chain at small parameters: each base-set word W
    contributes the back-shifted series of B^{p} applied to the quotient
    representative B^{-p} W, p = m*l*(l-1).
    """
    l = spec.l
    lam = spec.weight()
    p = m * l * (l - 1)
    if max_degree is None:
        max_degree = 3 * n + 12
    total = zero(l, watermark=n)
    d = 0
    empty_run = 0
    while True:
        contributed = False
        for mm in good_of_degree(l, d):
            shifted_back = f_factored(mm).shifted(-p)
            w_translated = weyl_of(GoodMonomial(l, mm.word, 0).prepend_b(-p))
            pref = expvec(w_translated.apply(lam) - lam)
            form = shifted_back.times_monomial(pref)
            if form.min_depth() <= n:
                total = total + form.expand(n)
                contributed = True
        if contributed:
            empty_run = 0
        else:
            empty_run += 1
            if empty_run >= 3:
                break
        d += 1
        if d > max_degree:
            raise ConvergenceError(
                f"translated word sum did not stabilize by degree {max_degree}"
            )
    return CharacterResult(spec, "translated_words", total.truncate(n), n, {"m": m})


def limit_char(spec: DominantWeightSpec, n: int, max_size: int | None = None) -> CharacterResult:
    """Signed sum over quotient representatives of the limit series.

    Each representative contributes sign(w) e^{w(Lambda+rho)-(Lambda+rho)}
    against the inverse denominator.
    """
    l = spec.l
    lam_rho = spec.weight() + rho(l)
    if max_size is None:
        max_size = 3 * n + 12
    terms: dict = {}
    size = 0
    empty_run = 0
    used = 0
    while True:
        contributed = False
        for m in translated_of_size(l, size):
            w = weyl_of(m)
            v = expvec(w.apply(lam_rho) - lam_rho)
            if depth(v) <= n:
                terms[v] = terms.get(v, 0) + w.sign()
                contributed = True
                used += 1
        if contributed:
            empty_run = 0
        else:
            empty_run += 1
            if empty_run >= 3:
                break
        size += 1
        if size > max_size:
            raise ConvergenceError(
                f"limit word sum did not stabilize by size {max_size}"
            )
    num = series._mk(l, terms, n, None)
    out = num.mul(d_inverse_series(l, n), cap=n)
    return CharacterResult(spec, "limit", out, n, {"terms_used": used})


def semiinfinite_char(spec: DominantWeightSpec, n: int, window: int | None = None) -> CharacterResult:
    out = semiinfinite_series(spec, n, window)
    return CharacterResult(spec, "semiinfinite", out, n, {"window": window})


@dataclass
class StabilizationReport:
    spec: DominantWeightSpec
    depth: int
    m_star: int
    persists: bool


def stabilization_check(spec: DominantWeightSpec, n: int, max_m: int = 10) -> StabilizationReport:
    """Least translate count whose character matches the alternating sum to depth n."""
    wk = weyl_kac(spec, n).series
    m_star = None
    for m in range(max_m + 1):
        t = translated_char(spec, m, n).series
        if t.eq_to_depth(wk, n):
            m_star = m
            break
    if m_star is None:
        raise ConvergenceError(f"no stabilization up to m = {max_m}")
    t_next = translated_char(spec, m_star + 1, n).series
    return StabilizationReport(spec, n, m_star, t_next.eq_to_depth(wk, n))


# ---------------------------------------------------------------------------
# Specialization to two variables.
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class SpecializedSeries:
    """Series in (qbar, z) graded by total degree; watermark semantics as usual."""

    terms: dict
    watermark: int | None

    def coeff(self, key):
        return self.terms.get(tuple(key), 0)

    def min_known_deg(self):
        if self.terms:
            return min(a + b for a, b in self.terms)
        return math.inf if self.watermark is None else self.watermark + 1

    def __add__(self, other: "SpecializedSeries") -> "SpecializedSeries":
        wm = series._min_wm(self.watermark, other.watermark)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return _mk_spec(terms, wm)

    def __mul__(self, other: "SpecializedSeries") -> "SpecializedSeries":
        wm = series._min_wm(
            series._add_wm(self.watermark, other.min_known_deg()),
            series._add_wm(other.watermark, self.min_known_deg()),
        )
        bound = math.inf if wm is None else wm
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                if a1 + a2 + b1 + b2 > bound:
                    continue
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return _mk_spec(out, wm)

    def eq_to_depth(self, other: "SpecializedSeries", n: int) -> bool:
        keys = set(self.terms) | set(other.terms)
        return all(
            self.coeff(k) == other.coeff(k) for k in keys if k[0] + k[1] <= n
        )

    def rows(self):
        return sorted(
            ((a, b, c) for (a, b), c in self.terms.items()),
            key=lambda r: (r[0] + r[1], r[0], r[1]),
        )


def _mk_spec(terms: dict, watermark: int | None) -> SpecializedSeries:
    bound = math.inf if watermark is None else watermark
    clean = {}
    for k, c in terms.items():
        c = series._norm_coeff(c)
        if c != 0 and k[0] + k[1] <= bound:
            clean[k] = c
    return SpecializedSeries(clean, watermark)


def specialize_fjlmm(x: TruncatedSeries) -> SpecializedSeries:
    """Substitute q -> qbar^{l-1} and z_i -> qbar^{i-1} z, collapsing to two variables.

    The output watermark (in total degree of qbar and z) is the largest
    total degree whose preimage fibers lie entirely below the input
    watermark; for inputs supported in the non-negative orthant that is
    floor(n (l-1) / l).
    """
    l = x.l
    out: dict = {}
    for v, c in x.terms.items():
        a, m = series.expvec_to_qz(v)
        qbar = a * (l - 1) + sum((i - 1) * mi for i, mi in enumerate(m, 1))
        zdeg = sum(m)
        key = (qbar, zdeg)
        out[key] = out.get(key, 0) + c
    if x.watermark is None:
        return _mk_spec(out, None)
    if x.qz_min is None or any(c < 0 for c in x.qz_min):
        raise series.SeriesError(
            "specialization watermark needs a non-negative support certificate"
        )
    wm = (x.watermark * (l - 1)) // l
    return _mk_spec(out, wm)
