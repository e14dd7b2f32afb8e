"""Delta factors, root multiplicities, the two infinite symmetrizers, the
correction factor by its independent routes, and proportionality reports.

All series here live over the ambient coweight lattice of the base datum;
floors are heights as in the series module.  Weyl sums run over explicit
length caps with a two-cap stabilization check in place of the (ineffective)
theoretical bounds.
"""

import json
from fractions import Fraction

from . import cartan, root_datum, weyl
from .coeff import Coeff
from .cg import SeriesFraction, StarContext, star_word
from . import dl as dl_mod
from .series import (LatticeSeries, SeriesError, expand_atom, geometric,
                     series_inverse, top_bound)


class SymmetrizerError(ArithmeticError):
    pass


def root_multiplicities(gcm, height):
    """Multiplicities of the positive roots of `gcm` up to the given height.

    Solved degree by degree from the equality of the product over positive
    roots of (1 - x^beta)^{mult} with the signed Weyl sum of x^{rho - w rho};
    real roots come out with multiplicity 1, imaginary ones with the
    dimension of their graded piece.  Returns {coordinate tuple: mult}.
    """
    if not isinstance(gcm, cartan.GCM):
        gcm = cartan.GCM(gcm)
    group = weyl.WeylGroup(gcm)
    r = gcm.size
    if height < 1:
        return {}
    # signed sum of x^{rho - w rho} in root coordinates, heights <= height
    numer = {}
    elements = group.enumerate(height)
    for el in elements:
        drop = [0] * r
        for beta in el.inversions(side="weight"):
            for k in range(r):
                drop[k] += beta[k]
        h = sum(drop)
        if h > height:
            continue
        key = tuple(drop)
        numer[key] = numer.get(key, 0) + el.sign()
        if numer[key] == 0:
            del numer[key]
    mults = {}
    prod = {tuple([0] * r): 1}

    def multiply_factor(beta, m):
        # prod *= (1 - x^beta)^m, truncated at total height
        for _ in range(m):
            out = dict(prod)
            for vec, c in prod.items():
                nv = tuple(a + b for a, b in zip(vec, beta))
                if sum(nv) > height:
                    continue
                out[nv] = out.get(nv, 0) - c
                if out[nv] == 0:
                    del out[nv]
            prod.clear()
            prod.update(out)

    from itertools import product as iproduct
    for h in range(1, height + 1):
        # lattice points of height h with nonnegative coordinates
        level = _compositions(h, r)
        for vec in level:
            m = prod.get(vec, 0) - numer.get(vec, 0)
            if m < 0:
                raise SymmetrizerError("negative multiplicity at %r (bug)" % (vec,))
            if m:
                mults[vec] = m
                multiply_factor(vec, m)
    return mults


def _compositions(total, parts):
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def coroot_multiplicities(met, height):
    """Positive coroots of the rescaled system with multiplicities, in the
    ambient coweight coordinates, up to ambient height <= height.

    Coroot multiplicities are root multiplicities of the transposed matrix.
    """
    tilde = met.tilde_gcm.dual()
    raw = root_multiplicities(tilde, height)
    dim = met.base.dim
    out = {}
    for vec, m in raw.items():
        ambient = [0] * dim
        for i, c in enumerate(vec):
            ambient[i] = c * met.n_i[i]
        if sum(ambient[: met.base.rank]) <= height:
            out[tuple(ambient)] = m
    return out


def delta(met, floor, inverse=False):
    """Truncated expansion of the product over positive rescaled coroots of
    ((1 - v e^{-b}) / (1 - e^{-b}))^mult, or of its reciprocal."""
    ctx = StarContext(met)
    n, dim, nroots = ctx.n, ctx.dim, ctx.nroots
    mults = coroot_multiplicities(met, -floor)
    out = LatticeSeries.monomial(n, dim, nroots, [0] * dim).truncate(floor)
    v = Coeff.v(n, 1)
    one = Coeff.one(n)
    for vec, m in sorted(mults.items()):
        neg = tuple(-x for x in vec)
        for _ in range(m):
            if inverse:
                numer = LatticeSeries(n, dim, nroots, {tuple([0] * dim): one, neg: -one})
                geo = geometric(n, dim, nroots, neg, 1, floor)
            else:
                numer = LatticeSeries(n, dim, nroots, {tuple([0] * dim): one, neg: -v})
                geo = geometric(n, dim, nroots, neg, 0, floor)
            out = (out * numer * geo).truncate(floor)
    return out


def _finite_coroot_orbit(met):
    """All real coroots of the finite part (affine base), ambient coords."""
    datum = met.base
    if datum.classification.kind != cartan.AFFINE:
        raise SymmetrizerError("finite part exists only for affine type")
    group = datum.weyl
    l = datum.rank - 1
    seeds = [datum.coroot(i) for i in range(l)]
    seen = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for vec in frontier:
            for i in range(l):
                w = group.reflect_coweight(i, vec)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def delta_w(met, w, floor):
    """The w-relabeled delta factor, expanded factorwise to the floor."""
    ctx = StarContext(met)
    n, dim, nroots = ctx.n, ctx.dim, ctx.nroots
    datum = met.base
    kind = datum.classification.kind
    if kind == cartan.AFFINE:
        theta = _rho_drop(datum, w)
        bound = 0
        for gv in _finite_coroot_orbit(met):
            bound = max(bound, abs(datum.pair(gv, theta)))
        height = -floor + bound
    elif kind == cartan.FINITE:
        height = None  # all positive coroots
    else:
        raise SymmetrizerError("delta_w supports finite and affine type only")
    if height is None:
        # finite type: there are exactly deg W(v) positive coroots; grow the
        # ambient height bound until all of them are collected
        expected = len(weyl.poincare_series(met.tilde_gcm)) - 1
        height = 1
        while True:
            mults = coroot_multiplicities(met, height)
            if sum(mults.values()) == expected:
                break
            height += 1
    mults = coroot_multiplicities(met, height if height > 0 else 1)
    out = LatticeSeries.monomial(n, dim, nroots, [0] * dim).truncate(floor)
    v = Coeff.v(n, 1)
    one = Coeff.one(n)
    negatives = 0
    for vec, m in sorted(mults.items()):
        gamma = w.apply_coweight(vec)
        h = sum(gamma[:nroots])
        if h == 0:
            raise SymmetrizerError("relabeled coroot of height zero (bug)")
        if h < 0:
            negatives += m
        if h > 0 and h > -floor:
            continue  # factor is 1 within the window
        neg = tuple(-x for x in gamma)
        for _ in range(m):
            top_out = top_bound(out)
            factor_num = LatticeSeries(n, dim, nroots,
                                       {tuple([0] * dim): one, neg: -v})
            factor_den = _inv_one_minus(n, dim, nroots, neg, 0,
                                        floor - top_out - max(-h, 0))
            pair = (factor_num * factor_den).truncate(floor - top_out)
            out = (out * pair).truncate(floor)
    if kind == cartan.AFFINE and negatives != w.length:
        raise SymmetrizerError(
            "missed %d inverted coroots; enumeration height too small (bug)"
            % (w.length - negatives))
    return out


def _safe_top(s):
    if not s.terms:
        return 0
    return max(s.height(v) for v in s.terms)


def _inv_one_minus(n, dim, nroots, vec, vexp, floor):
    """1/(1 - v^{vexp} e^{vec}) expanded toward the floor, either direction."""
    h = sum(vec[:nroots])
    if h < 0:
        return geometric(n, dim, nroots, vec, vexp, floor)
    # 1/(1 - u e^{w}) = -u^{-1} e^{-w} / (1 - u^{-1} e^{-w})
    unit = Coeff.v(n, vexp).inverse() * Coeff.scalar(n, -1)
    neg = tuple(-x for x in vec)
    geo = geometric(n, dim, nroots, neg, -vexp, floor - (-h))
    return geo.shift(neg).scale(unit).truncate(floor)


def _rho_drop(datum, w):
    """rho - w^{-1} rho as a weight vector (dual coordinates)."""
    rho = datum.rho()
    wr = w.inverse().apply_weight(rho)
    return tuple(a - b for a, b in zip(rho, wr))


def tilde_inversion_coroots(met, w):
    """Rescaled coroots inverted by w, via the word recursion."""
    datum = met.base
    mats = datum.weyl.reflections_y
    acc = []
    m = tuple(tuple(1 if i == j else 0 for j in range(datum.dim)) for i in range(datum.dim))
    for k in w.word:
        vec = met.tilde_coroot(k)
        moved = tuple(sum(m[i][j] * vec[j] for j in range(datum.dim))
                      for i in range(datum.dim))
        acc.append(moved)
        m = _mat_mul_local(m, mats[k])
    return tuple(acc)


def _mat_mul_local(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


I_FLAVOR = "I"
I_FLAT_FLAVOR = "Iflat"


def simple_symmetrizer(met, flavor, lam, floor, cap):
    """Truncated evaluation of the simple symmetrizer on e^{lam}.

    'Iflat': delta times the signed sum over w of e^{-sum inverted coroots}
    (w * e^{lam}); 'I': the sum over w of delta^w (w * e^{lam}).  The sum
    runs over lengths <= cap; use `stabilized_simple` for the two-cap check.
    """
    ctx = StarContext(met)
    datum = met.base
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise SymmetrizerError("evaluation needs a dominant coweight")
    total = LatticeSeries.zero(ctx.n, ctx.dim, ctx.nroots, floor=floor)
    elements = datum.weyl.enumerate(cap)
    if flavor == I_FLAT_FLAVOR:
        for el in elements:
            inv = tilde_inversion_coroots(met, el)
            shift = tuple(-sum(x) for x in zip(*inv)) if inv else tuple([0] * ctx.dim)
            starred = star_word(ctx, el, ctx.monomial(lam),
                                floor=floor - sum(shift[: ctx.nroots]))
            term = starred.shift(shift).scale(Coeff.scalar(ctx.n, el.sign()))
            total = total + term.truncate(floor)
        dl = delta(met, floor - top_bound(total))
        return (dl * total).truncate(floor)
    if flavor == I_FLAVOR:
        for el in elements:
            starred = star_word(ctx, el, ctx.monomial(lam), floor=floor)
            dw = delta_w(met, el, floor - top_bound(starred))
            total = total + (dw * starred).truncate(floor)
        return total
    raise SymmetrizerError("flavor must be 'I' or 'Iflat'")


P_FLAVOR = "P"
P_FLAT_FLAVOR = "Pflat"


def hecke_symmetrizer(met, flavor, lam, floor, cap):
    """Truncated evaluation of the sum of the operator family over lengths
    <= cap on e^{lam}; the whittaker flavor runs exactly per term."""
    ctx = StarContext(met)
    datum = met.base
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise SymmetrizerError("evaluation needs a dominant coweight")
    dlflavor = dl_mod.SPHERICAL if flavor == P_FLAVOR else dl_mod.WHITTAKER
    if flavor not in (P_FLAVOR, P_FLAT_FLAVOR):
        raise SymmetrizerError("flavor must be 'P' or 'Pflat'")
    total = LatticeSeries.zero(ctx.n, ctx.dim, ctx.nroots, floor=floor)
    exact_ok = (dlflavor == dl_mod.WHITTAKER) or met.n == 1
    for el in datum.weyl.enumerate(cap):
        if exact_ok:
            term = dl_mod.dl_word(ctx, dlflavor, el, ctx.monomial(lam), mode="exact")
            term = term.truncate(floor)
        else:
            term = dl_mod.dl_word(ctx, dlflavor, el, ctx.monomial(lam),
                                  mode="truncated", floor=floor)
        total = total + term
    return total


def stabilized(fn, met, flavor, lam, floor, cap):
    """Run a symmetrizer at caps cap-1 and cap; return (value, stabilized?)."""
    prev = fn(met, flavor, lam, floor, cap - 1)
    cur = fn(met, flavor, lam, floor, cap)
    return cur, prev.terms == cur.terms


# ---------------------------------------------------------------------------
# Correction factor.

FINITE_ONE = "finite_one"
MACDONALD_CT = "macdonald_ct"
EXPONENT_PRODUCT = "exponent_product"
VISWANATH_DIVISION = "viswanath_division"

_UNTWISTED_ADE = ("A1(1)", "A(1)", "D(1)", "E6(1)", "E7(1)", "E8(1)")


def constant_term(met, f):
    """Projection onto the line of multiples of the minimal imaginary coroot
    of the rescaled system."""
    gen = met.tilde_imaginary_generator()
    out = {}
    for vec, c in f.terms.items():
        if _is_multiple(vec, gen):
            out[vec] = c
    return f.copy_with(out, f.floor, f.apexes)


def _is_multiple(vec, gen):
    k = None
    for a, b in zip(vec, gen):
        if b == 0:
            if a != 0:
                return False
        else:
            q, r = divmod(a, b)
            if r != 0:
                return False
            if k is None:
                k = q
            elif q != k:
                return False
    return True


def correction_factor(met, method, floor, cap=None, vdeg=None):
    """The proportionality factor by one of its independent routes.

    finite_one: 1 (finite type).  macdonald_ct: the constant term of the
    reciprocal delta (affine).  exponent_product: the explicit product over
    finite-part exponents (untwisted ADE only).  viswanath_division: the
    length generating function divided by the summed relabeled deltas, with
    an explicit length cap.
    """
    ctx = StarContext(met)
    n, dim, nroots = ctx.n, ctx.dim, ctx.nroots
    kind = met.tilde_classification.kind
    if method == FINITE_ONE:
        if kind != cartan.FINITE:
            raise SymmetrizerError("finite_one applies to finite type only")
        return LatticeSeries.monomial(n, dim, nroots, [0] * dim).truncate(floor)
    if method == MACDONALD_CT:
        if kind != cartan.AFFINE:
            raise SymmetrizerError("macdonald_ct needs affine type")
        dinv = delta(met, floor, inverse=True)
        return constant_term(met, dinv)
    if method == EXPONENT_PRODUCT:
        if kind != cartan.AFFINE:
            raise SymmetrizerError("exponent_product needs affine type")
        family, rank = cartan.recognize_affine(met.tilde_gcm)
        if family not in _UNTWISTED_ADE:
            raise SymmetrizerError(
                "exponent_product is only transcribed for untwisted ADE type; "
                "the general product formula is out of scope here -- use "
                "macdonald_ct instead")
        finite_part = met.tilde_gcm.submatrix(tuple(range(met.tilde_gcm.size - 1)))
        poly = weyl.poincare_series(finite_part)
        exps = weyl.exponents_from_poincare(poly, finite_part.size)
        cvec = met.tilde_imaginary_generator()
        hc = sum(cvec[:nroots])
        out = LatticeSeries.monomial(n, dim, nroots, [0] * dim).truncate(floor)
        one = Coeff.one(n)
        for mj in exps:
            i = 1
            while i * hc <= -floor:
                vec = tuple(-i * x for x in cvec)
                numer = LatticeSeries(n, dim, nroots,
                                      {tuple([0] * dim): one, vec: -Coeff.v(n, mj)})
                geo = geometric(n, dim, nroots, vec, mj + 1, floor)
                out = (out * numer * geo).truncate(floor)
                i += 1
        return out
    if method == VISWANATH_DIVISION:
        if cap is None:
            raise SymmetrizerError("viswanath_division needs a length cap")
        if vdeg is None:
            vdeg = cap + floor  # complete v-degrees given the cap
            if vdeg < 0:
                raise SymmetrizerError("cap too small for this depth")
        numer_scalar = Coeff.zero(n)
        denom = LatticeSeries.zero(n, dim, nroots, floor=floor)
        for el in met.base.weyl.enumerate(cap):
            numer_scalar = numer_scalar + Coeff.v(n, el.length)
            denom = denom + delta_w(met, el, floor)
        return _divide_vadic(numer_scalar, denom, floor, vdeg)
    raise SymmetrizerError("unknown method %r" % (method,))


def _coeff_v_inverse(c, vdeg):
    """Inverse of a coefficient with unit lowest v-part, modulo v^{vdeg+1}."""
    low = c.min_v_exponent()
    lead_terms = {k: x for k, x in c.terms.items() if k[0] == low}
    if len(lead_terms) != 1 or next(iter(lead_terms))[1] != ():
        raise SymmetrizerError("coefficient with non-monomial lowest v-part")
    (key, lead), = lead_terms.items()
    lead_inv = Coeff(c.n, {(-low, ()): Fraction(1) / lead}, _normalized=True)
    rest = (c - Coeff(c.n, {key: lead}, _normalized=True)) * lead_inv
    bound = vdeg + abs(low) + 1
    out = Coeff.one(c.n)
    power = Coeff.one(c.n)
    sign = 1
    while True:
        power = (power * rest).truncate_v(bound)
        if not power:
            break
        sign = -sign
        out = out + power if sign > 0 else out - power
    return (out * lead_inv).truncate_v(vdeg)


def _divide_vadic(numer_scalar, denom, floor, vdeg):
    """numer_scalar * e^0 divided by the series denom, with coefficients
    computed modulo v^{vdeg+1}, down to the floor."""
    d0 = denom.coefficient(tuple([0] * denom.dim))
    if not d0:
        raise SymmetrizerError("denominator has no constant term")
    d0_inv = _coeff_v_inverse(d0, vdeg + 2)
    n, dim, nroots = denom.n, denom.dim, denom.nroots
    zero_vec = tuple([0] * dim)
    by_height = {}
    for vec, c in denom.terms.items():
        if vec == zero_vec:
            continue
        by_height.setdefault(denom.height(vec), {})[vec] = c
    out = {zero_vec: (numer_scalar * d0_inv).truncate_v(vdeg)}
    for h in range(-1, floor - 1, -1):
        level = {}
        for h1, terms in by_height.items():
            for vec, c in terms.items():
                for ov, oc in out.items():
                    if denom.height(ov) + h1 != h:
                        continue
                    nv = tuple(a + b for a, b in zip(vec, ov))
                    cur = level.get(nv, Coeff.zero(n))
                    level[nv] = cur + c * oc
        for vec, c in level.items():
            val = ((-c) * d0_inv).truncate_v(vdeg)
            if val:
                out[vec] = out.get(vec, Coeff.zero(n)) + val
    return LatticeSeries(n, dim, nroots, out, floor=floor,
                         apexes=frozenset([zero_vec]))


# ---------------------------------------------------------------------------
# Operator-coefficient tables and the proportionality report.

def operator_identity_coefficient(met, flavor, floor, cap):
    """The coefficient on the identity component of the summed operator
    family: sum over w (lengths <= cap) and over all interleavings whose
    chosen reflections multiply to the identity."""
    ctx = StarContext(met)
    n, dim, nroots = ctx.n, ctx.dim, ctx.nroots
    datum = met.base
    if flavor == P_FLAVOR:
        kind = "c"
    elif flavor == P_FLAT_FLAVOR:
        kind = "cflat"
    else:
        raise SymmetrizerError("flavor must be 'P' or 'Pflat'")
    total = LatticeSeries.zero(n, dim, nroots, floor=floor)
    identity = datum.weyl.identity()
    for el in datum.weyl.enumerate(cap):
        states = {identity: LatticeSeries.monomial(n, dim, nroots, [0] * dim).truncate(floor)}
        for letter in el.word:
            nxt = {}
            for u, acc in states.items():
                gamma = u.apply_coweight(met.tilde_coroot(letter))
                top = top_bound(acc)
                batom = expand_atom(n, dim, nroots, "b", gamma, floor - top)
                catom = expand_atom(n, dim, nroots, kind, gamma, floor - top)
                stay = (acc * batom).truncate(floor)
                if stay.terms or True:
                    cur = nxt.get(u)
                    nxt[u] = stay if cur is None else cur + stay
                u2 = u * datum.weyl.generator(letter)
                go = (acc * catom).truncate(floor)
                cur = nxt.get(u2)
                nxt[u2] = go if cur is None else cur + go
            states = nxt
        if identity in states:
            total = total + states[identity]
    return total


class SymmetrizerReport:
    """Comparison of the two symmetrizer routes at one depth and cap."""

    def __init__(self, depth, cap, stabilized_flag, mismatches):
        self.depth = depth
        self.cap = cap
        self.stabilized = stabilized_flag
        self.mismatches = mismatches

    @property
    def ok(self):
        return self.stabilized and not self.mismatches

    def to_json(self):
        return {
            "depth": self.depth,
            "cap": self.cap,
            "stabilized": self.stabilized,
            "mismatches": [
                {"component": list(vec),
                 "coefficient_lhs": lhs,
                 "coefficient_rhs": rhs}
                for vec, lhs, rhs in self.mismatches],
        }

    def render_json(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _compare_series(a, b):
    mismatches = []
    keys = set(a.terms) | set(b.terms)
    for vec in sorted(keys):
        ca = a.terms.get(vec, Coeff.zero(a.n))
        cb = b.terms.get(vec, Coeff.zero(b.n))
        if ca != cb:
            mismatches.append((vec, ca.render(), cb.render()))
    return mismatches


def check_proportionality(met, flavor, lam, floor, cap, mfactor_method=None):
    """Coefficientwise comparison of the Hecke route against the correction
    factor times the simple route, at the given floor and caps."""
    lam = tuple(lam)
    hk_flavor = P_FLAVOR if flavor in (P_FLAVOR, I_FLAVOR) else P_FLAT_FLAVOR
    si_flavor = I_FLAVOR if flavor in (P_FLAVOR, I_FLAVOR) else I_FLAT_FLAVOR
    hecke, stab1 = stabilized(hecke_symmetrizer, met, hk_flavor, lam, floor, cap)
    simple, stab2 = stabilized(simple_symmetrizer, met, si_flavor, lam, floor, cap)
    kind = met.tilde_classification.kind
    if mfactor_method is None:
        mfactor_method = FINITE_ONE if kind == cartan.FINITE else MACDONALD_CT
    mf = correction_factor(met, mfactor_method, floor - top_bound(simple), cap=cap)
    rhs = (mf * simple).truncate(floor)
    mismatches = _compare_series(hecke.truncate(floor), rhs)
    return SymmetrizerReport(-floor, cap, stab1 and stab2, mismatches)
