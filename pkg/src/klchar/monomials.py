"""Good words over {A, B}, their Weyl-group labels and attached series.

A word is good when every A at position i forces an A at position i+l-1;
the base set G also requires the word to be empty or end in B.  Formal
inverse powers of B extend G to a quotient set where a leading B cancels
against one inverse power; canonical representatives keep the inverse
power minimal.  Each element carries a Weyl-group element (built by a
one-letter recursion or directly as a product of reflections), a series
in factored form, and a companion series attached to the translated
limit.  The audit at the bottom checks that the labelling by group
elements is injective and eventually covers every element.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from . import series
from .series import FactoredSeries, TruncatedSeries
from .weyl import (
    WeylElement,
    alpha_ij,
    conjugate,
    delta_weight,
    enumerate_weyl,
    eps_bar,
    expvec,
    fundamental,
    r_chain,
    reflection_at,
    rho,
    special_s,
    s_power,
    weight_of_expvec,
    zero_weight,
)


class InjectivityError(RuntimeError):
    """The group-element labelling collided; this falsifies a structural claim."""


def is_good_word(word: str, l: int) -> bool:
    n = len(word)
    if any(c not in "AB" for c in word):
        return False
    for i in range(n - l + 1):
        if word[i] == "A" and word[i + l - 1] != "A":
            return False
    return True


def in_base_set(word: str, l: int) -> bool:
    return is_good_word(word, l) and (not word or word[-1] == "B")


@dataclass(frozen=True)
class GoodMonomial:
    """Canonical element B^{-offset} * word with word in the base set.

    A leading B of the word absorbs into the inverse power, so canonical
    representatives have offset 0, an empty word, or a word starting with A.
    """

    l: int
    word: str
    offset: int = 0

    def __post_init__(self) -> None:
        if self.offset < 0:
            raise ValueError("offset must be non-negative")
        word, offset = self.word, self.offset
        while offset > 0 and word.startswith("B"):
            offset -= 1
            word = word[1:]
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "offset", offset)
        if not in_base_set(self.word, self.l):
            raise ValueError(f"{self.word!r} is not a good monomial for l={self.l}")

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def size(self) -> int:
        return self.degree + self.offset

    def prepend_b(self, count: int = 1) -> "GoodMonomial":
        """Multiply by B^count on the left (count may be negative)."""
        if count >= 0:
            if self.offset >= count:
                return GoodMonomial(self.l, self.word, self.offset - count)
            extra = count - self.offset
            return GoodMonomial(self.l, "B" * extra + self.word, 0)
        return GoodMonomial(self.l, self.word, self.offset - count)


def enumerate_good(l: int, max_degree: int) -> list[GoodMonomial]:
    """All base-set monomials of degree <= max_degree, by (degree, word)."""
    out = [GoodMonomial(l, "")]
    for d in range(1, max_degree + 1):
        for letters in iproduct("AB", repeat=d):
            word = "".join(letters)
            if in_base_set(word, l):
                out.append(GoodMonomial(l, word))
    return out


def good_of_degree(l: int, d: int) -> list[GoodMonomial]:
    if d == 0:
        return [GoodMonomial(l, "")]
    return [
        GoodMonomial(l, "".join(w))
        for w in iproduct("AB", repeat=d)
        if in_base_set("".join(w), l)
    ]


def enumerate_translated(l: int, max_degree: int, max_offset: int) -> list[GoodMonomial]:
    """Canonical quotient representatives within the given bounds."""
    out = []
    for t in range(max_offset + 1):
        for m in enumerate_good(l, max_degree):
            if t > 0 and m.word.startswith("B"):
                continue
            if t == 0:
                out.append(m)
            else:
                out.append(GoodMonomial(l, m.word, t))
    out.sort(key=lambda m: (m.size, m.offset, m.word))
    return out


def translated_of_size(l: int, size: int) -> list[GoodMonomial]:
    out = []
    for t in range(size + 1):
        for m in good_of_degree(l, size - t):
            if t > 0 and m.word.startswith("B"):
                continue
            out.append(GoodMonomial(l, m.word, t))
    return out


# ---------------------------------------------------------------------------
# The Weyl-group label.
# ---------------------------------------------------------------------------

def weyl_of(m: GoodMonomial) -> WeylElement:
    """Label by the one-letter recursion, with inverse powers peeled at the end."""
    l = m.l
    s = special_s(l)
    r12 = reflection_at(alpha_ij(l, 1, 2))
    w = WeylElement.identity(l)
    for c in reversed(m.word):
        w = conjugate(s, w)
        if c == "B":
            w = w * r12
    s_inv = s.inverse()
    for _ in range(m.offset):
        w = conjugate(s_inv, w * r12)
    return w


def weyl_of_direct(m: GoodMonomial) -> WeylElement:
    """Label as the reflection product over kept positions, read right to left."""
    l = m.l
    a12 = alpha_ij(l, 1, 2)
    w = WeylElement.identity(l)
    for i, c in enumerate(m.word):
        if c == "B":
            root = s_power(l, i).apply(a12)
            w = reflection_at(root) * w
    # Inverse powers act by the translation identity for j = -offset.
    j = -m.offset
    if j:
        w = conjugate(s_power(l, j), w) * r_chain(l, j)
    return w


# ---------------------------------------------------------------------------
# The attached series.
# ---------------------------------------------------------------------------

def _vec(mu) -> tuple[int, ...]:
    return expvec(mu)


def f_factored(m: GoodMonomial) -> FactoredSeries:
    """Factored form of the series attached to the word.

    The base case is the product of inverse Pochhammer factors in the
    classical directions; each letter shifts the accumulated factors and
    appends one geometric factor, and each inverse power attaches a
    binomial (cancelling the matching geometric factor when one exists)
    and shifts everything back.
    """
    l = m.l
    s = special_s(l)
    r12 = reflection_at(alpha_ij(l, 1, 2))
    eps1, eps2 = eps_bar(l, 1), eps_bar(l, 2)
    form = FactoredSeries(l)
    for i in range(2, l + 1):
        form = form.with_poch_inv(_vec(-alpha_ij(l, 1, i)))
    w = WeylElement.identity(l)
    for c in reversed(m.word):
        adw = conjugate(s, w)
        form = form.shifted(1)
        if c == "B":
            direction = adw.apply(eps1) - eps2
            form = form.with_geom(_vec(direction))
            w = adw * r12
        else:
            if adw.apply(eps2) != eps2:
                raise RuntimeError(
                    "conjugated label moved eps_bar_2; the goodness assumption is violated"
                )
            direction = -adw.apply(alpha_ij(l, 1, 2))
            form = form.with_geom(_vec(direction))
            w = adw
    s_inv = s.inverse()
    for _ in range(m.offset):
        direction = w.apply(eps2) - eps2
        if direction.is_zero():
            form = form.with_binom((0,) * l)
        else:
            form = form.with_binom(_vec(direction))
        form = form.shifted(-1)
        w = conjugate(s_inv, w * r12)
    return form


def f_of(m: GoodMonomial, n: int) -> TruncatedSeries:
    return f_factored(m).expand(n)


def denominator_directions(l: int):
    """Directions of the Weyl denominator product, one entry per factor family."""
    dirs = []
    d = delta_weight(l)
    for _ in range(l - 1):
        dirs.append(-d)
    for i in range(1, l):
        dirs.append(-alpha_ij(l, 1, i + 1))
        dirs.append(-d + alpha_ij(l, 1, i + 1))
    for i in range(1, l):
        for j in range(i + 1, l):
            dirs.append(alpha_ij(l, 1, i + 1) - alpha_ij(l, 1, j + 1))
            dirs.append(-d - alpha_ij(l, 1, i + 1) + alpha_ij(l, 1, j + 1))
    return dirs


def d_inverse_factored(l: int) -> FactoredSeries:
    form = FactoredSeries(l)
    for mu in denominator_directions(l):
        form = form.with_poch_inv(_vec(mu))
    return form


def h_factored(m: GoodMonomial) -> FactoredSeries:
    """Closed form of the translated-limit series: signed monomial times the inverse denominator."""
    l = m.l
    w = weyl_of(m)
    form = d_inverse_factored(l)
    form = form.times_sign(w.sign())
    form = form.times_monomial(_vec(w.apply(rho(l)) - rho(l)))
    return form


def h_of(m: GoodMonomial, n: int) -> TruncatedSeries:
    return h_factored(m).expand(n)


def h_limit_form(m: GoodMonomial, steps: int) -> FactoredSeries:
    """Shifted-back factored form of the series for B^steps * m (the limit's n-th stage)."""
    return f_factored(m.prepend_b(steps)).shifted(-steps)


def ratio_factors(m: GoodMonomial):
    """Pochhammer directions of the finite product relating the two attached series."""
    l = m.l
    w = weyl_of(m)
    d = delta_weight(l)
    eps = [None] + [eps_bar(l, i) for i in range(1, l + 1)]
    dirs = []
    for i in range(2, l + 1):
        dirs.append(-d + w.apply(eps[1]) - eps[i])
    for i in range(2, l + 1):
        for j in range(2, i):
            dirs.append(w.apply(eps[i]) - eps[j])
    for i in range(2, l + 1):
        for j in range(i, l + 1):
            dirs.append(-d + w.apply(eps[i]) - eps[j])
    return dirs


def ratio_check(m: GoodMonomial, n: int) -> bool:
    """Does the word's series equal the limit series times the finite product?"""
    lhs = f_of(m, n)
    rhs_form = h_factored(m)
    for mu in ratio_factors(m):
        rhs_form = rhs_form.with_poch(_vec(mu))
    rhs = rhs_form.expand(n)
    return lhs.eq_to_depth(rhs, n)


# ---------------------------------------------------------------------------
# Injectivity / coverage audit of the labelling.
# ---------------------------------------------------------------------------

@dataclass
class BijectionReport:
    l: int
    max_length: int
    max_degree: int
    max_offset: int
    injective: bool
    total: int
    hit: int
    missed: list
    entries: list

    @property
    def covering(self) -> bool:
        return self.hit == self.total

    def to_json_dict(self) -> dict:
        return {
            "format_version": 1,
            "l": self.l,
            "max_length": self.max_length,
            "max_degree": self.max_degree,
            "max_offset": self.max_offset,
            "injective": self.injective,
            "coverage": {"total": self.total, "hit": self.hit, "missed": self.missed},
            "entries": self.entries,
        }


def bijection_audit(
    l: int,
    max_degree: int,
    max_offset: int,
    max_length: int,
    grow: bool = True,
    ceiling: int = 40,
) -> BijectionReport:
    """Check the labelling is injective and covers all elements up to a word length.

    Bounds grow until coverage is total or the ceiling is reached; an
    injectivity collision raises, since that would falsify the labelling.
    """
    targets = enumerate_weyl(l, max_length)
    target_keys = {w._key(): length for w, length in targets}
    while True:
        seen: dict = {}
        for m in enumerate_translated(l, max_degree, max_offset):
            w = weyl_of(m)
            key = w._key()
            if key in seen and seen[key] != m:
                raise InjectivityError(
                    f"distinct monomials {seen[key]} and {m} share the label {w}"
                )
            seen[key] = m
        hit = [k for k in target_keys if k in seen]
        missed = [k for k in target_keys if k not in seen]
        if not missed or not grow or (max_degree >= ceiling and max_offset >= ceiling):
            break
        max_degree += 2
        max_offset += 2
    entries = []
    for m in sorted(seen.values(), key=lambda m: (m.size, m.offset, m.word)):
        w = weyl_of(m)
        key = w._key()
        if key not in target_keys:
            continue
        entries.append(
            {
                "word": m.word,
                "offset": m.offset,
                "weyl": {
                    "gamma": [str(c) for c in w.gamma],
                    "sigma": list(w.sigma),
                },
                "sign": w.sign(),
                "length": target_keys[key],
            }
        )
    report = BijectionReport(
        l=l,
        max_length=max_length,
        max_degree=max_degree,
        max_offset=max_offset,
        injective=True,
        total=len(target_keys),
        hit=len(hit),
        missed=[
            {"gamma": [str(c) for c in k[0]], "sigma": list(k[1])} for k in sorted(missed)
        ],
        entries=entries,
    )
    return report
