"""Depth-truncated exact formal series on the affine root lattice.

A series term is keyed by an exponent vector n, standing for the group-ring
monomial e^{-sum n_i alpha_i}; the grading ("depth") is sum(n).  Every series
carries a watermark: coefficients at depth <= watermark are exactly those of
the untruncated series, deeper ones are discarded.  A watermark of None means
the stored terms are the whole series.

The variable dictionary is q = e^{-delta} and z_i = e^{-(alpha_1 + ... +
alpha_i)}, so a monomial q^a z^m corresponds to the exponent vector
n_0 = a, n_j = a + m_j + ... + m_{l-1}.

``FactoredSeries`` keeps products of the shapes that actually occur here --
a signed monomial times binomials (1 - e^mu), geometric inverses
1/(1 - e^mu) and Pochhammer factors (e^mu)_inf or their inverses -- in
unexpanded form, so that Weyl-group elements and the shift act exactly on
the direction lists and expansion happens once, at a chosen watermark.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .weyl import Weight, WeylElement, expvec, s_power, weight_of_expvec

ExpVec = tuple[int, ...]


class SeriesError(ValueError):
    pass


def depth(v: Sequence[int]) -> int:
    return sum(v)


def expvec_to_qz(v: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Invert the exponent-vector encoding back to (q-exponent, z-exponents)."""
    l = len(v)
    a = v[0]
    m = [v[j] - v[j + 1] for j in range(1, l - 1)]
    m.append(v[l - 1] - v[0])
    return a, tuple(m)


def qz_to_expvec(a: int, m: Sequence[int]) -> ExpVec:
    l = len(m) + 1
    out = [a] * l
    for j in range(1, l):
        out[j] = a + sum(m[j - 1 :])
    return tuple(out)


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _qz_bounds_from_terms(terms: Mapping[ExpVec, object]) -> tuple[int, ...] | None:
    if not terms:
        return None
    rows = [(*expvec_to_qz(v)[0:1], *expvec_to_qz(v)[1]) for v in terms]
    return tuple(min(r[i] for r in rows) for i in range(len(rows[0])))


@dataclass(eq=False)
class TruncatedSeries:
    """Finitely many exact coefficients below a depth watermark.

    ``qz_min`` is an optional certificate: componentwise lower bounds on the
    (q, z) exponents of *every* term of the untruncated series, known and
    unknown alike.  It is what makes the watermark of a termwise shift
    computable.
    """

    l: int
    terms: dict
    watermark: int | None
    qz_min: tuple[int, ...] | None = None

    def min_known_depth(self):
        if self.terms:
            return min(depth(v) for v in self.terms)
        if self.watermark is None:
            return math.inf
        return self.watermark + 1

    def coeff(self, v: ExpVec):
        return self.terms.get(tuple(v), 0)

    def constant_term(self):
        return self.coeff((0,) * self.l)

    def is_zero_to(self, n: int) -> bool:
        self._require_watermark(n)
        return all(depth(v) > n for v in self.terms)

    def _require_watermark(self, n: int) -> None:
        if self.watermark is not None and self.watermark < n:
            raise SeriesError(
                f"series only certified to depth {self.watermark}, needed {n}"
            )

    # ---- ring operations -------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.l != other.l:
            raise SeriesError("rank mismatch")
        wm = _min_wm(self.watermark, other.watermark)
        terms = dict(self.terms)
        for v, c in other.terms.items():
            terms[v] = terms.get(v, 0) + c
        cert = _cert_min(self.qz_min, other.qz_min)
        return _mk(self.l, terms, wm, cert)

    def __neg__(self) -> "TruncatedSeries":
        return _mk(self.l, {v: -c for v, c in self.terms.items()}, self.watermark, self.qz_min)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        if c == 0:
            return _mk(self.l, {}, self.watermark, self.qz_min)
        return _mk(self.l, {v: x * c for v, x in self.terms.items()}, self.watermark, self.qz_min)

    def mul(self, other: "TruncatedSeries", cap: int | None = None) -> "TruncatedSeries":
        """Product, truncated to the exactness the factors support (and to ``cap``).

        Every reported coefficient equals the untruncated product's
        coefficient: the watermark is min over both factors of (own
        watermark + partner's minimal depth), further capped by ``cap``.
        """
        if self.l != other.l:
            raise SeriesError("rank mismatch")
        wm = _min_wm(
            _add_wm(self.watermark, other.min_known_depth()),
            _add_wm(other.watermark, self.min_known_depth()),
        )
        wm = _min_wm(wm, cap)
        out: dict = {}
        bound = math.inf if wm is None else wm
        for v1, c1 in self.terms.items():
            d1 = depth(v1)
            for v2, c2 in other.terms.items():
                if d1 + depth(v2) > bound:
                    continue
                key = tuple(a + b for a, b in zip(v1, v2))
                out[key] = out.get(key, 0) + c1 * c2
        cert = None
        if self.qz_min is not None and other.qz_min is not None:
            cert = tuple(a + b for a, b in zip(self.qz_min, other.qz_min))
        return _mk(self.l, out, wm, cert)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.mul(other)

    def truncate(self, n: int) -> "TruncatedSeries":
        return _mk(self.l, dict(self.terms), _min_wm(self.watermark, n), self.qz_min)

    # ---- comparisons -----------------------------------------------------

    def eq_to_depth(self, other: "TruncatedSeries", n: int) -> bool:
        return self.first_mismatch(other, n) is None

    def first_mismatch(self, other: "TruncatedSeries", n: int):
        """First (depth, lex) exponent where coefficients differ, or None."""
        self._require_watermark(n)
        other._require_watermark(n)
        keys = set(self.terms) | set(other.terms)
        for v in sorted(keys, key=lambda x: (depth(x), x)):
            if depth(v) > n:
                continue
            a, b = self.coeff(v), other.coeff(v)
            if a != b:
                return v, a, b
        return None

    def leq_to_depth(self, other: "TruncatedSeries", n: int) -> bool:
        """Coefficientwise <= at every exponent of depth <= n."""
        self._require_watermark(n)
        other._require_watermark(n)
        keys = set(self.terms) | set(other.terms)
        return all(
            self.coeff(v) <= other.coeff(v) for v in keys if depth(v) <= n
        )

    # ---- presentation ----------------------------------------------------

    def to_qz_table(self) -> list[tuple[int, tuple[int, ...], object]]:
        rows = []
        for v, c in self.terms.items():
            a, m = expvec_to_qz(v)
            rows.append((a, m, c))
        rows.sort(key=lambda r: (r[0] * self.l + sum(i * e for i, e in enumerate(r[1], 1)), r[0], r[1]))
        return rows


def _min_wm(a: int | None, b) -> int | None:
    vals = [x for x in (a, b) if x is not None and x is not math.inf]
    if not vals:
        return None
    return min(vals)


def _add_wm(wm: int | None, md) -> int | None:
    if wm is None or md is math.inf:
        return None
    return wm + md


def _cert_min(a, b):
    if a is None or b is None:
        return None
    return tuple(min(x, y) for x, y in zip(a, b))


def _mk(l: int, terms: dict, watermark: int | None, qz_min) -> TruncatedSeries:
    bound = math.inf if watermark is None else watermark
    clean = {}
    for v, c in terms.items():
        c = _norm_coeff(c)
        if c != 0 and depth(v) <= bound:
            clean[v] = c
    if watermark is None:
        qz_min = _qz_bounds_from_terms(clean)
        if qz_min is None:
            qz_min = (0,) * l
    return TruncatedSeries(l, clean, watermark, qz_min)


def zero(l: int, watermark: int | None = None) -> TruncatedSeries:
    return _mk(l, {}, watermark, None)


def mono(l: int, v: Sequence[int], coeff=1) -> TruncatedSeries:
    return _mk(l, {tuple(v): coeff}, None, None)


def one(l: int) -> TruncatedSeries:
    return mono(l, (0,) * l)


def mono_of_weight(mu: Weight) -> TruncatedSeries:
    return mono(mu.l, expvec(mu))


def from_qz_table(l: int, rows: Iterable[tuple[int, Sequence[int], object]],
                  watermark: int | None = None) -> TruncatedSeries:
    terms: dict = {}
    for a, m, c in rows:
        v = qz_to_expvec(a, tuple(m))
        terms[v] = terms.get(v, 0) + c
    return _mk(l, terms, watermark, None if watermark is not None else None)


# ---------------------------------------------------------------------------
# Expansions of elementary factors.
# ---------------------------------------------------------------------------

def _geom_vec(l: int, v: ExpVec, n: int) -> TruncatedSeries:
    d = depth(v)
    if d == 0:
        if all(c == 0 for c in v):
            raise SeriesError("cannot invert 1 - e^0 = 0")
        raise SeriesError("cannot expand 1/(1 - e^mu) in a depth-zero direction")
    if d > 0:
        terms = {}
        j = 0
        while j * d <= n:
            terms[tuple(j * c for c in v)] = 1
            j += 1
        a0, m0 = expvec_to_qz(v)
        cert = (0,) * l if a0 >= 0 and all(c >= 0 for c in m0) else None
        return _mk(l, terms, n, cert)
    # Laurent direction: 1/(1-e^mu) = -e^{-mu} * sum_j e^{-j mu}
    w = tuple(-c for c in v)
    terms = {}
    j = 1
    while j * (-d) <= n:
        terms[tuple(j * c for c in w)] = -1
        j += 1
    a0, m0 = expvec_to_qz(w)
    ray = (a0, *m0)
    cert = ray if all(c >= 0 for c in ray) else None
    return _mk(l, terms, n, cert)


def _poch_factors(l: int, v: ExpVec):
    """Exponent vectors v + n*(1,..,1) of the factors (1 - q^n e^mu), lazily."""
    ones = (1,) * l
    n = 0
    while True:
        yield tuple(a + n * b for a, b in zip(v, ones))
        n += 1


def _poch_vec(l: int, v: ExpVec, n: int) -> TruncatedSeries:
    d = depth(v)
    # A factor with exponent exactly zero makes the whole product vanish.
    if all(c == v[0] for c in v) and v[0] <= 0:
        return zero(l)
    negs = []
    k = 0
    while d + k * l < 0:
        fv = tuple(c + k for c in v)
        if depth(fv) == 0:
            raise SeriesError("Pochhammer factor in a depth-zero direction")
        negs.append(fv)
        k += 1
    if d + k * l == 0:
        raise SeriesError("Pochhammer factor in a depth-zero direction")
    neg_total = sum(depth(f) for f in negs)
    acc = one(l)
    remaining_neg = neg_total
    cap = n - remaining_neg
    fd = d + k * l
    while fd <= n - neg_total:
        fv = tuple(c + k for c in v)
        acc = acc.mul(mono(l, (0,) * l) - mono(l, fv), cap=cap)
        k += 1
        fd += l
    for fv in negs:
        remaining_neg -= depth(fv)
        cap = n - remaining_neg
        acc = acc.mul(mono(l, (0,) * l) - mono(l, fv), cap=cap)
    acc = acc.truncate(n)
    a0, m0 = expvec_to_qz(v)
    if all(c >= 0 for c in m0):
        qpart = sum(min(0, a0 + j) for j in range(max(0, -a0)))
        cert = (qpart, *((0,) * (l - 1)))
    else:
        cert = None
    return _mk(l, dict(acc.terms), n, cert)


def _poch_inv_vec(l: int, v: ExpVec, n: int) -> TruncatedSeries:
    d = depth(v)
    if all(c == v[0] for c in v) and v[0] <= 0:
        raise SeriesError("cannot invert a vanishing Pochhammer product")
    acc = one(l)
    k = 0
    while True:
        fv = tuple(c + k for c in v)
        fd = d + k * l
        if fd > n and fd > 0:
            break
        acc = acc.mul(_geom_vec(l, fv, n), cap=n)
        k += 1
    a0, m0 = expvec_to_qz(v)
    cert = (0,) * l if a0 >= 0 and all(c >= 0 for c in m0) else None
    return _mk(l, dict(acc.terms), n, cert)


def geom_inverse(mu: Weight, n: int) -> TruncatedSeries:
    """Expansion of 1/(1 - e^mu), exact to depth n; mu must have nonzero depth."""
    return _geom_vec(mu.l, expvec(mu), n)


def pochhammer(mu: Weight, n: int) -> TruncatedSeries:
    """Expansion of (e^mu)_inf = prod_{j>=0} (1 - q^j e^mu), exact to depth n."""
    return _poch_vec(mu.l, expvec(mu), n)


def poch_inverse(mu: Weight, n: int) -> TruncatedSeries:
    return _poch_inv_vec(mu.l, expvec(mu), n)


# ---------------------------------------------------------------------------
# The shift operator.
# ---------------------------------------------------------------------------

_shift_cache: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}


def _shift_matrix(l: int, power: int) -> tuple[tuple[int, ...], ...]:
    """Columns are the exponent vectors of the shifted basis monomials."""
    key = (l, power)
    if key not in _shift_cache:
        w = s_power(l, power)
        cols = []
        for j in range(l):
            e = [0] * l
            e[j] = 1
            image = w.apply(weight_of_expvec(l, e))
            cols.append(expvec(image))
        _shift_cache[key] = tuple(cols)
    return _shift_cache[key]


def _apply_cols(cols, v: ExpVec) -> ExpVec:
    l = len(v)
    out = [0] * l
    for j, c in enumerate(v):
        if c:
            col = cols[j]
            for i in range(l):
                out[i] += c * col[i]
    return tuple(out)


def shift(x: TruncatedSeries, power: int) -> TruncatedSeries:
    """Apply the variable shift (q, z_1, .., z_{l-1}) -> (q, z_2, .., z_{l-1}, q z_1).

    The exponent map is exact; the watermark of a truncated input is
    recomputed from its support certificate (the smallest depth an unknown
    term could land on, minus one).  Exact inputs stay exact.
    """
    if power == 0:
        return x
    l = x.l
    cols = _shift_matrix(l, power)
    new_terms = {}
    for v, c in x.terms.items():
        key = _apply_cols(cols, v)
        new_terms[key] = new_terms.get(key, 0) + c
    if x.watermark is None:
        return _mk(l, new_terms, None, None)
    if x.qz_min is None:
        raise SeriesError(
            "cannot certify the watermark of a shifted truncated series "
            "without a support certificate"
        )
    wm = _shift_watermark(l, cols, x.qz_min, x.watermark)
    cert = _shift_cert(x.qz_min, power) if power > 0 else None
    return _mk(l, new_terms, wm, cert)


def _shift_watermark(l: int, cols, qz_min: tuple[int, ...], n: int) -> int:
    # Image depths of the unit monomials q and z_i, and their own depths.
    u = [depth(_apply_cols(cols, (1,) * l))]
    dvec = [l]
    for i in range(1, l):
        m = [0] * (l - 1)
        m[i - 1] = 1
        u.append(depth(_apply_cols(cols, qz_to_expvec(0, m))))
        dvec.append(i)
    if any(ui < 0 for ui in u):
        raise SeriesError("shift watermark is unbounded below on the certified cone")
    base_depth = sum(d * c for d, c in zip(dvec, qz_min))
    image_base = sum(ui * c for ui, c in zip(u, qz_min))
    t = n + 1 - base_depth
    lo = Fraction(image_base)
    if t > 0:
        lo += t * min(Fraction(ui, di) for ui, di in zip(u, dvec))
    return math.ceil(lo) - 1


def _shift_cert(qz_min: tuple[int, ...], power: int) -> tuple[int, ...]:
    c = list(qz_min)
    for _ in range(power):
        a, m = c[0], c[1:]
        c = [a + m[-1], m[-1], *m[:-1]]
    return tuple(c)


# ---------------------------------------------------------------------------
# Factored form.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactoredSeries:
    """sign * e^{prefactor} * prod binom * prod geom^{-1} * prod poch * prod poch^{-1}.

    Direction entries are exponent vectors; binom stands for a factor
    (1 - e^mu), geom for 1/(1 - e^mu), poch for (e^mu)_inf and poch_inv for
    its inverse.  Adding a binomial that matches a pending geometric factor
    cancels the pair exactly, which is what keeps quotient-compatible
    constructions well defined.
    """

    l: int
    coeff_sign: int = 1
    prefactor: ExpVec = None  # type: ignore[assignment]
    binom: tuple[ExpVec, ...] = ()
    geom: tuple[ExpVec, ...] = ()
    poch: tuple[ExpVec, ...] = ()
    poch_inv: tuple[ExpVec, ...] = ()

    def __post_init__(self):
        if self.prefactor is None:
            object.__setattr__(self, "prefactor", (0,) * self.l)

    # ---- construction ----------------------------------------------------

    def times_sign(self, s: int) -> "FactoredSeries":
        return self._replace(coeff_sign=self.coeff_sign * s)

    def times_monomial(self, v: ExpVec) -> "FactoredSeries":
        pref = tuple(a + b for a, b in zip(self.prefactor, v))
        return self._replace(prefactor=pref)

    def with_geom(self, v: ExpVec) -> "FactoredSeries":
        v = tuple(v)
        if v in self.binom:
            return self._replace(binom=_remove_one(self.binom, v))
        return self._replace(geom=self.geom + (v,))

    def with_binom(self, v: ExpVec) -> "FactoredSeries":
        v = tuple(v)
        if v in self.geom:
            return self._replace(geom=_remove_one(self.geom, v))
        return self._replace(binom=self.binom + (v,))

    def with_poch(self, v: ExpVec) -> "FactoredSeries":
        return self._replace(poch=self.poch + (tuple(v),))

    def with_poch_inv(self, v: ExpVec) -> "FactoredSeries":
        return self._replace(poch_inv=self.poch_inv + (tuple(v),))

    def product(self, other: "FactoredSeries") -> "FactoredSeries":
        if self.l != other.l:
            raise SeriesError("rank mismatch")
        out = self._replace(
            coeff_sign=self.coeff_sign * other.coeff_sign,
            prefactor=tuple(a + b for a, b in zip(self.prefactor, other.prefactor)),
            poch=self.poch + other.poch,
            poch_inv=self.poch_inv + other.poch_inv,
        )
        for v in other.geom:
            out = out.with_geom(v)
        for v in other.binom:
            out = out.with_binom(v)
        return out

    def _replace(self, **kw) -> "FactoredSeries":
        data = dict(
            l=self.l,
            coeff_sign=self.coeff_sign,
            prefactor=self.prefactor,
            binom=self.binom,
            geom=self.geom,
            poch=self.poch,
            poch_inv=self.poch_inv,
        )
        data.update(kw)
        return FactoredSeries(**data)

    # ---- exact structural maps --------------------------------------------

    def mapped(self, fn: Callable[[ExpVec], ExpVec]) -> "FactoredSeries":
        return self._replace(
            prefactor=fn(self.prefactor),
            binom=tuple(fn(v) for v in self.binom),
            geom=tuple(fn(v) for v in self.geom),
            poch=tuple(fn(v) for v in self.poch),
            poch_inv=tuple(fn(v) for v in self.poch_inv),
        )

    def shifted(self, power: int) -> "FactoredSeries":
        if power == 0:
            return self
        cols = _shift_matrix(self.l, power)
        return self.mapped(lambda v: _apply_cols(cols, v))

    def applied(self, w: WeylElement) -> "FactoredSeries":
        """Termwise action of a group element, performed on the directions."""
        return self.mapped(lambda v: expvec(w.apply(weight_of_expvec(self.l, v))))

    # ---- analysis ----------------------------------------------------------

    def is_zero(self) -> bool:
        zero_vec = (0,) * self.l
        if any(v == zero_vec for v in self.binom):
            return True
        for v in self.poch:
            if all(c == v[0] for c in v) and v[0] <= 0:
                return True
        return False

    def min_depth(self):
        """Exact minimal depth of the expanded series (inf when it vanishes)."""
        if self.is_zero():
            return math.inf
        total = depth(self.prefactor)
        for v in self.binom:
            total += min(0, depth(v))
        for v in self.geom:
            d = depth(v)
            if d == 0:
                raise SeriesError("geometric factor in a depth-zero direction")
            total += max(0, -d)
        for v in self.poch:
            total += self._poch_min(v, inverse=False)
        for v in self.poch_inv:
            total += self._poch_min(v, inverse=True)
        return total

    def _poch_min(self, v: ExpVec, inverse: bool) -> int:
        d = depth(v)
        total = 0
        k = 0
        while d + k * self.l < 0:
            total += -(d + k * self.l) if inverse else (d + k * self.l)
            k += 1
        if d + k * self.l == 0:
            raise SeriesError("Pochhammer factor in a depth-zero direction")
        return total

    def expand(self, n: int) -> TruncatedSeries:
        if self.is_zero():
            return zero(self.l)
        factors: list[tuple[str, ExpVec, int]] = []
        for v in self.binom:
            factors.append(("binom", v, min(0, depth(v))))
        for v in self.geom:
            factors.append(("geom", v, max(0, -depth(v))))
        for v in self.poch:
            factors.append(("poch", v, self._poch_min(v, inverse=False)))
        for v in self.poch_inv:
            factors.append(("poch_inv", v, self._poch_min(v, inverse=True)))
        total_min = depth(self.prefactor) + sum(m for _, _, m in factors)
        if total_min > n:
            return zero(self.l, watermark=n)
        acc = mono(self.l, self.prefactor, self.coeff_sign)
        remaining = total_min - depth(self.prefactor)
        for kind, v, m in factors:
            remaining -= m
            cap = n - remaining
            wanted = n - total_min + m
            if kind == "binom":
                f = one(self.l) - mono(self.l, v)
            elif kind == "geom":
                f = _geom_vec(self.l, v, max(wanted, m))
            elif kind == "poch":
                f = _poch_vec(self.l, v, max(wanted, m))
            else:
                f = _poch_inv_vec(self.l, v, max(wanted, m))
            acc = acc.mul(f, cap=cap)
        if acc.watermark is not None and acc.watermark < n:
            raise SeriesError("internal watermark bookkeeping failed")
        return acc.truncate(n)
