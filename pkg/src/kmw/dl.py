"""Demazure-Lusztig type operators built from the twisted Weyl action.

Two flavors: 'spherical' uses the atom (1 - v X)/(1 - X), 'whittaker' the
atom (1 - v/X)/(1 - X), both at X = e^{scaled coroot}, plus the common
(v-1)/(1-X) term on the identity.

The whittaker flavor (and any flavor at cover degree 1) sends finite sums to
finite sums; the division by the atom denominators is then exact and checked
term by term.  The spherical flavor at higher cover degree produces genuinely
infinite expansions; compositions are carried exactly as fractions and only
expanded into a floor-truncated series at the very end (expanding early is
unsound: the reflected tail of a truncation can land above any height).
"""

from collections import Counter

from .coeff import Coeff
from .cg import SeriesFraction, StarContext, StarError
from .series import (LatticeSeries, SeriesError, divide_exact, top_bound,
                     _vec_neg)

SPHERICAL = "spherical"
WHITTAKER = "whittaker"


class DLError(ArithmeticError):
    pass


def _atom_fractions(ctx, flavor, i):
    """(c-part, b-part) as SeriesFractions with denominator (1 - e^{atv})."""
    n, dim = ctx.n, ctx.dim
    atv = ctx.tilde_coroots[i]
    one = ctx.monomial([0] * dim)
    v = Coeff.v(n, 1)
    if flavor == SPHERICAL:
        cnum = one - ctx.monomial(atv, v)
    elif flavor == WHITTAKER:
        cnum = one - ctx.monomial(_vec_neg(atv), v)
    else:
        raise DLError("unknown flavor %r" % (flavor,))
    bnum = one.scale(v - Coeff.one(n))
    den = ((0, atv),)
    return SeriesFraction(ctx, cnum, den), SeriesFraction(ctx, bnum, den)


def dl_apply_fraction(ctx, flavor, i, frac):
    """One simple operator applied to a fraction, exactly."""
    cpart, bpart = _atom_fractions(ctx, flavor, i)
    starred = frac.star(i)
    t1 = SeriesFraction(ctx, starred.num * cpart.num,
                        starred.den + Counter(cpart.den))
    t2 = SeriesFraction(ctx, frac.num * bpart.num,
                        frac.den + Counter(bpart.den))
    return t1.add(t2)


def dl_apply_exact(ctx, flavor, i, f):
    """Apply one simple operator to an exact series, yielding an exact series.

    Raises DLError when the denominators do not divide out (which happens
    for the spherical flavor at cover degree > 1).
    """
    if isinstance(f, LatticeSeries):
        frac = SeriesFraction(ctx, f)
    else:
        frac = f
    total = dl_apply_fraction(ctx, flavor, i, frac)
    return _clear_denominators(total)


def _clear_denominators(frac):
    out = frac.num
    try:
        for (vexp, w), mult in sorted(frac.den.items()):
            for _ in range(mult):
                out = divide_exact(out, vexp, w)
    except SeriesError as exc:
        raise DLError(
            "operator output is not a finite sum (%s); use truncated mode" % exc)
    return out


def dl_word(ctx, flavor, w, f, mode="exact", floor=None):
    """Compose simple operators along the canonical reduced word of w.

    mode 'exact': every intermediate is cleared to a finite sum (whittaker
    flavor, or cover degree 1).  mode 'truncated': the composition runs on
    fractions and is expanded down to `floor` at the end.
    """
    word = w.word if hasattr(w, "word") else tuple(w)
    if mode == "exact":
        out = f
        for i in reversed(word):
            out = dl_apply_exact(ctx, flavor, i, out)
        return out
    if mode == "truncated":
        if floor is None:
            raise DLError("truncated mode needs a floor")
        frac = f if isinstance(f, SeriesFraction) else SeriesFraction(ctx, f)
        for i in reversed(word):
            frac = dl_apply_fraction(ctx, flavor, i, frac)
        return frac.expand(floor)
    raise DLError("mode must be 'exact' or 'truncated'")


def upsilon(met, w, lam, flavor=WHITTAKER, mode="exact", floor=None):
    """Coefficient table of the operator for w applied to e^{lam}.

    lam must be dominant.  In exact mode the table is finite and each entry
    is checked to be polynomial in v and the symbols; truncated mode returns
    the table of the floor-truncated expansion instead (needed for the
    spherical flavor at cover degree > 1).
    """
    ctx = StarContext(met)
    lam = tuple(lam)
    if not ctx.datum.is_dominant(lam):
        raise DLError("coweight is not dominant")
    start = ctx.monomial(lam)
    out = dl_word(ctx, flavor, w, start, mode=mode, floor=floor)
    if mode == "exact":
        for vec, c in out.terms.items():
            if not c.is_v_polynomial():
                raise DLError("table entry with negative v-power (bug)")
    return dict(out.terms)
