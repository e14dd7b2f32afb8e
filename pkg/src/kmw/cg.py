"""The twisted Weyl action on the coweight algebra.

For a simple reflection s_a with scaled coroot atv = n_a * a^vee the action
on a monomial is

  s_a * e^{L} = e^{s_a L} / (1 - v e^{-atv}) *
      [ (1-v) e^{r a^vee}
        - v g_{Q(a^vee) + B(L, a^vee)} e^{atv - a^vee} (1 - e^{-atv}) ]

with r = <L, x_a> reduced mod n_a.  Two realizations are provided:

  * an exact one on fractions (numerator an exact lattice sum, denominator
    a multiset of factors (1 - v^epsilon e^{w}) with w in the rescaled coroot
    lattice), suitable for involution/braid verification by
    cross-multiplication;
  * a truncated one that expands the denominator geometrically, losing one
    scaled-coroot height of guarantee per application.

Coefficients may be pulled through the action only when their exponents lie
in the rescaled lattice; the fraction denominators are kept in that shape.
"""

from collections import Counter
from fractions import Fraction

from .coeff import Coeff
from .series import (LatticeSeries, SeriesError, geometric, top_bound,
                     _vec_add, _vec_neg)


class StarError(ArithmeticError):
    pass


class StarContext:
    """Carries the rescaled datum plus the per-index action data."""

    def __init__(self, met):
        self.met = met
        self.datum = met.base
        self.n = met.n
        self.dim = self.datum.dim
        self.nroots = self.datum.rank
        self.q_vals = met.q_form.coroot_values
        self.n_i = met.n_i
        self.tilde_coroots = tuple(met.tilde_coroot(i) for i in range(self.nroots))

    def zero(self, floor=None):
        return LatticeSeries.zero(self.n, self.dim, self.nroots, floor=floor)

    def monomial(self, vec, coeff=None):
        return LatticeSeries.monomial(self.n, self.dim, self.nroots, vec, coeff)

    def pairing_with_root(self, vec, i):
        return self.datum.pair(vec, self.datum.root(i))

    def star_terms(self, i, vec, coeff):
        """Numerator of s_i * (coeff e^{vec}): list of (vector, Coeff).

        The implied denominator is (1 - v e^{-atv_i}).
        """
        datum = self.datum
        m = self.pairing_with_root(vec, i)
        b_val = self.met.q_form.b(vec, datum.coroot(i))
        if b_val != self.q_vals[i] * m:
            raise StarError("bilinear form and pairing disagree (datum drift)")
        ni = self.n_i[i]
        r = m % ni
        gauss = Coeff.g(self.n, (self.q_vals[i] + b_val) % self.n)
        v = Coeff.v(self.n, 1)
        one = Coeff.one(self.n)
        svec = datum.weyl.reflect_coweight(i, vec)
        av = datum.coroot(i)
        atv = self.tilde_coroots[i]
        out = []
        # (1-v) e^{s vec + r a^vee}
        t1 = _vec_add(svec, tuple(r * x for x in av))
        out.append((t1, coeff * (one - v)))
        # -v g e^{s vec + atv - a^vee} and +v g e^{s vec - a^vee}
        mid = _vec_add(svec, _vec_add(atv, _vec_neg(av)))
        out.append((mid, coeff * (-(v * gauss))))
        low = _vec_add(svec, _vec_neg(av))
        out.append((low, coeff * (v * gauss)))
        return out


class SeriesFraction:
    """num / prod over atoms (1 - v^{vexp} e^{w}), num an exact lattice sum.

    Atoms are (vexp, w) with w a coordinate tuple lying in the rescaled
    coroot lattice, so they relabel consistently under the twisted action.
    """

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den=()):
        self.ctx = ctx
        self.num = num
        self.den = Counter(den)

    @staticmethod
    def monomial(ctx, vec, coeff=None):
        return SeriesFraction(ctx, ctx.monomial(vec, coeff))

    def den_series(self):
        out = ctx_one = self.ctx.monomial([0] * self.ctx.dim)
        for (vexp, w), mult in sorted(self.den.items()):
            atom = ctx_one - self.ctx.monomial(w, Coeff.v(self.ctx.n, vexp))
            for _ in range(mult):
                out = out * atom
        return out

    def star(self, i):
        ctx = self.ctx
        terms = []
        for vec, c in self.num.terms.items():
            terms.extend(ctx.star_terms(i, vec, c))
        num = LatticeSeries(ctx.n, ctx.dim, ctx.nroots, {})
        acc = {}
        for vec, c in terms:
            s = acc.get(vec)
            s = c if s is None else s + c
            if s:
                acc[vec] = s
            elif vec in acc:
                del acc[vec]
        num = LatticeSeries(ctx.n, ctx.dim, ctx.nroots, acc)
        refl = ctx.datum.weyl.reflections_y[i]
        den = Counter()
        for (vexp, w), mult in self.den.items():
            nw = tuple(sum(refl[k][j] * w[j] for j in range(ctx.dim))
                       for k in range(ctx.dim))
            den[(vexp, nw)] += mult
        den[(1, _vec_neg(ctx.tilde_coroots[i]))] += 1
        return SeriesFraction(ctx, num, den)

    def star_word(self, word):
        out = self
        for i in reversed(tuple(word)):
            out = out.star(i)
        return out

    def scale(self, c):
        return SeriesFraction(self.ctx, self.num.scale(c), self.den)

    def mul_series(self, s):
        return SeriesFraction(self.ctx, self.num * s, self.den)

    def add(self, other):
        """Sum over the least common denominator (atom-multiset max)."""
        if other.ctx is not self.ctx:
            raise StarError("fractions from different contexts")
        den = self.den | other.den
        pad1 = SeriesFraction(self.ctx, self.ctx.monomial([0] * self.ctx.dim),
                              den - self.den).den_series()
        pad2 = SeriesFraction(self.ctx, self.ctx.monomial([0] * self.ctx.dim),
                              den - other.den).den_series()
        return SeriesFraction(self.ctx, self.num * pad1 + other.num * pad2, den)

    def equals(self, other):
        """Exact equality by cross-multiplication."""
        if other.ctx is not self.ctx:
            raise StarError("fractions from different contexts")
        lcm = self.den | other.den
        left = self.num * SeriesFraction(self.ctx, self.ctx.monomial([0] * self.ctx.dim),
                                         lcm - self.den).den_series()
        right = other.num * SeriesFraction(self.ctx, self.ctx.monomial([0] * self.ctx.dim),
                                           lcm - other.den).den_series()
        return left == right

    def expand(self, floor):
        """Truncated series expansion of the fraction down to `floor`."""
        ctx = self.ctx
        out = self.num
        for (vexp, w), mult in sorted(self.den.items()):
            h = sum(w[:ctx.nroots])
            for _ in range(mult):
                if h < 0:
                    geo = geometric(ctx.n, ctx.dim, ctx.nroots, w, vexp, floor - top_bound(out))
                    out = (out * geo).truncate(floor)
                elif h > 0:
                    # (1 - v^e e^{w}) = -v^e e^{w} (1 - v^{-e} e^{-w})
                    unit = Coeff.v(ctx.n, vexp).inverse() * Coeff.scalar(ctx.n, -1)
                    out = out.scale(unit).shift(_vec_neg(w))
                    geo = geometric(ctx.n, ctx.dim, ctx.nroots, _vec_neg(w), -vexp,
                                    floor - top_bound(out))
                    out = (out * geo).truncate(floor)
                else:
                    raise StarError("denominator atom with height-zero direction")
        return out.truncate(floor)


def star_simple(ctx, i, f, floor=None):
    """s_i * f for an exact series f.

    With floor=None the result is returned as an exact fraction; with a
    floor the denominator is expanded geometrically down to it.  The action
    is never applied termwise to an already-truncated series: a truncated
    tail can reflect back above any height, so that operation has no sound
    floor (the Weyl group does not act on the completion).
    """
    if isinstance(f, SeriesFraction):
        frac = f
    else:
        if not f.is_exact:
            raise StarError("the action applies to exact inputs only; "
                            "compose first, truncate last")
        frac = SeriesFraction(ctx, f)
    out = frac.star(i)
    return out if floor is None else out.expand(floor)


def star_word(ctx, w, f, floor=None):
    """w * f along the canonical reduced word, rightmost letter first."""
    word = w.word if hasattr(w, "word") else tuple(w)
    if isinstance(f, SeriesFraction):
        frac = f
    else:
        if not f.is_exact:
            raise StarError("the action applies to exact inputs only; "
                            "compose first, truncate last")
        frac = SeriesFraction(ctx, f)
    out = frac.star_word(word)
    return out if floor is None else out.expand(floor)
