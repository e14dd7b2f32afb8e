"""Sparse exponential sums over the coweight lattice.

A series is a dict from integer coordinate vectors (coroots first, then
derivation directions) to ring coefficients.  Exact series are complete
finite sums.  Truncated series carry

  * an apex set: the support lies in the union of the down-cones of the
    apexes (down-cone = subtract nonnegative combinations of simple coroots),
  * a floor: every coefficient whose height (sum of coroot coordinates) is
    at least the floor is stored exactly; deeper terms are absent.

Under addition the floor is the max of the floors; under multiplication the
floor is max(floor_1 + top_2, floor_2 + top_1), where top bounds the height
of the other factor's support.  This reproduces the usual depth-below-apex
guarantee (depth = apex height - floor) while staying sound for mixed apex
sets.
"""

from fractions import Fraction

from .coeff import Coeff, CoeffError


class SeriesError(ArithmeticError):
    pass


NEG_INF = float("-inf")


def top_bound(s):
    """Nonnegative upper bound for the support height of a series."""
    t = s.top()
    if t == NEG_INF:
        return 0
    return max(int(t), 0)


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_neg(a):
    return tuple(-x for x in a)


def _vec_scale(a, k):
    return tuple(k * x for x in a)


class LatticeSeries:
    """Exponential sum with Coeff coefficients over Z^dim."""

    __slots__ = ("n", "dim", "nroots", "terms", "floor", "apexes")

    def __init__(self, n, dim, nroots, terms=None, floor=None, apexes=None):
        self.n = n
        self.dim = dim
        self.nroots = nroots
        self.terms = {}
        if terms:
            for vec, c in terms.items():
                if len(vec) != dim:
                    raise SeriesError("vector length mismatch")
                if not isinstance(c, Coeff):
                    c = Coeff.scalar(n, c)
                if c:
                    self.terms[tuple(vec)] = c
        self.floor = floor
        if floor is not None:
            self.apexes = frozenset(apexes) if apexes is not None else self._support_apexes()
            self.terms = {v: c for v, c in self.terms.items()
                          if self.height(v) >= floor}
        else:
            self.apexes = None

    # -- basics -----------------------------------------------------------

    def height(self, vec):
        return sum(vec[: self.nroots])

    @property
    def is_exact(self):
        return self.floor is None

    def _support_apexes(self):
        return frozenset(self.terms)

    def top(self):
        """Upper bound for the height of the (true) support."""
        pts = self.apexes if self.apexes is not None else self.terms
        if not pts:
            return NEG_INF
        return max(self.height(v) for v in pts)

    def copy_with(self, terms, floor, apexes):
        return LatticeSeries(self.n, self.dim, self.nroots, terms,
                             floor=floor, apexes=apexes)

    @staticmethod
    def zero(n, dim, nroots, floor=None):
        return LatticeSeries(n, dim, nroots, {}, floor=floor,
                             apexes=frozenset() if floor is not None else None)

    @staticmethod
    def monomial(n, dim, nroots, vec, coeff=None):
        c = coeff if coeff is not None else Coeff.one(n)
        return LatticeSeries(n, dim, nroots, {tuple(vec): c})

    def coefficient(self, vec):
        return self.terms.get(tuple(vec), Coeff.zero(self.n))

    def support(self):
        return set(self.terms)

    def _compat(self, other):
        if (self.n, self.dim, self.nroots) != (other.n, other.dim, other.nroots):
            raise SeriesError("series live over different lattices or moduli")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LatticeSeries):
            return NotImplemented
        self._compat(other)
        out = dict(self.terms)
        for v, c in other.terms.items():
            s = out.get(v)
            s = c if s is None else s + c
            if s:
                out[v] = s
            elif v in out:
                del out[v]
        if self.is_exact and other.is_exact:
            return self.copy_with(out, None, None)
        floors = [f for f in (self.floor, other.floor) if f is not None]
        floor = max(floors)
        apexes = frozenset((self.apexes or self._support_apexes())
                           | (other.apexes or other._support_apexes()))
        return self.copy_with(out, floor, apexes)

    def __neg__(self):
        return self.copy_with({v: -c for v, c in self.terms.items()},
                              self.floor, self.apexes)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Coeff, int, Fraction)):
            return self.scale(other)
        self._compat(other)
        if self.is_exact and other.is_exact:
            floor = None
            apexes = None
        else:
            t1, t2 = self.top(), other.top()
            bounds = []
            if self.floor is not None and t2 > NEG_INF:
                bounds.append(self.floor + int(t2))
            if other.floor is not None and t1 > NEG_INF:
                bounds.append(other.floor + int(t1))
            floor = max(bounds) if bounds else None
            a1 = self.apexes if self.apexes is not None else self._support_apexes()
            a2 = other.apexes if other.apexes is not None else other._support_apexes()
            apexes = frozenset(_vec_add(x, y) for x in a1 for y in a2)
            if floor is None and not (self.is_exact and other.is_exact):
                # a truncated factor with empty apex set is exactly zero
                return self.copy_with({}, None, None)
        out = {}
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for v1, c1 in small.terms.items():
            for v2, c2 in big.terms.items():
                v = _vec_add(v1, v2)
                if floor is not None and self.height(v) < floor:
                    continue
                c = c1 * c2
                s = out.get(v)
                s = c if s is None else s + c
                if s:
                    out[v] = s
                elif v in out:
                    del out[v]
        return self.copy_with(out, floor, apexes)

    __rmul__ = __mul__

    def scale(self, c):
        if not isinstance(c, Coeff):
            c = Coeff.scalar(self.n, c)
        if not c:
            zero_floor = self.floor if self.floor is not None else None
            return self.copy_with({}, zero_floor,
                                  frozenset() if zero_floor is not None else None)
        return self.copy_with({v: x * c for v, x in self.terms.items()},
                              self.floor, self.apexes)

    def shift(self, vec):
        """Multiply by e^{vec}."""
        vec = tuple(vec)
        dh = self.height(vec)
        floor = None if self.floor is None else self.floor + dh
        apexes = None if self.apexes is None else frozenset(
            _vec_add(a, vec) for a in self.apexes)
        return self.copy_with({_vec_add(v, vec): c for v, c in self.terms.items()},
                              floor, apexes)

    def relabel(self, matrix):
        """Apply an integer matrix to every exponent (e^{mu} -> e^{M mu}).

        Only exact series relabel safely: a truncated guarantee is a height
        region, which a general Weyl matrix does not preserve.
        """
        if not self.is_exact:
            raise SeriesError(
                "relabeling a truncated series breaks its cone bookkeeping; "
                "rebuild the series factorwise instead")
        out = {}
        for v, c in self.terms.items():
            nv = tuple(sum(matrix[i][j] * v[j] for j in range(self.dim))
                       for i in range(self.dim))
            if nv in out:
                out[nv] = out[nv] + c
            else:
                out[nv] = c
        return self.copy_with({v: c for v, c in out.items() if c}, None, None)

    def truncate(self, floor, apexes=None):
        """Forget terms below `floor` and record the weaker guarantee."""
        if self.floor is not None and self.floor > floor:
            raise SeriesError("cannot deepen a truncated series (floor %s -> %s)"
                              % (self.floor, floor))
        ap = apexes if apexes is not None else (
            self.apexes if self.apexes is not None else self._support_apexes())
        return LatticeSeries(self.n, self.dim, self.nroots, self.terms,
                             floor=floor, apexes=ap)

    def __eq__(self, other):
        return (isinstance(other, LatticeSeries)
                and (self.n, self.dim, self.nroots) == (other.n, other.dim, other.nroots)
                and self.terms == other.terms
                and self.floor == other.floor)

    def __repr__(self):
        return "LatticeSeries(%s)" % self.render(limit=6)

    def render(self, limit=None):
        if not self.terms:
            body = "0"
        else:
            keys = sorted(self.terms, key=lambda v: (-self.height(v), v))
            if limit is not None and len(keys) > limit:
                keys = keys[:limit]
                tail = " + ..."
            else:
                tail = ""
            body = " + ".join(
                "(%s)*e[%s]" % (self.terms[v].render(), ",".join(map(str, v)))
                for v in keys) + tail
        if self.floor is not None:
            body += "  {floor %d}" % self.floor
        return body

    # -- structure checks ------------------------------------------------------

    def assert_v_polynomial(self):
        for v, c in self.terms.items():
            if not c.is_v_polynomial():
                raise SeriesError(
                    "negative v-power at e[%s]: %s" % (",".join(map(str, v)), c.render()))

    def support_below(self, lam, dominance_leq):
        return all(dominance_leq(v, lam) for v in self.terms)


# ---------------------------------------------------------------------------
# Expansions of the rational atoms.

def geometric(n, dim, nroots, direction, unit_vexp, floor):
    """Expansion of 1/(1 - v^{unit_vexp} e^{direction}) down to `floor`.

    The direction must point strictly down (negative height, no derivation
    component) so the expansion lands in the depth-truncated cone.
    """
    direction = tuple(direction)
    h = sum(direction[:nroots])
    if h >= 0 or any(direction[nroots:]):
        raise SeriesError("geometric expansion in a non-descending direction")
    terms = {}
    k = 0
    vec = tuple([0] * dim)
    while sum(vec[:nroots]) >= floor:
        terms[vec] = Coeff.v(n, unit_vexp * k)
        k += 1
        vec = _vec_add(vec, direction)
    return LatticeSeries(n, dim, nroots, terms, floor=floor,
                         apexes=frozenset([tuple([0] * dim)]))


def expand_atom(n, dim, nroots, kind, coroot_vec, floor):
    """Truncated expansion of one rational atom at X = e^{coroot_vec}.

    kind: 'b' -> (v-1)/(1-X); 'c' -> (1-vX)/(1-X); 'cflat' -> (1-v/X)/(1-X).
    The expansion direction (in positive or negative powers of X) is chosen
    so the support descends; a height-zero argument has no such direction.
    """
    w = tuple(coroot_vec)
    h = sum(w[:nroots])
    if h == 0:
        raise SeriesError("atom argument has height zero: no convergent direction")
    down = w if h < 0 else _vec_neg(w)  # e^{down} descends
    geo = geometric(n, dim, nroots, down, 0, floor - abs(h))  # 1/(1 - e^{down})
    one = Coeff.one(n)
    v = Coeff.v(n, 1)

    def fin(s):
        return s.truncate(floor)

    if h > 0:
        # expansions in X^{-1}: 1/(1-X) = -X^{-1}/(1-X^{-1})
        if kind == "b":
            # (1-v)(X^{-1} + X^{-2} + ...)
            return fin(geo.shift(down).scale(one - v))
        if kind == "c":
            # v + (v-1)(X^{-1} + X^{-2} + ...)
            lead = LatticeSeries.monomial(n, dim, nroots, [0] * dim, v).truncate(
                floor, apexes=frozenset([tuple([0] * dim)]))
            return fin(lead + geo.shift(down).scale(v - one))
        if kind == "cflat":
            # -X^{-1} + (v-1)(X^{-2} + X^{-3} + ...)
            lead = LatticeSeries.monomial(n, dim, nroots, down, -one).truncate(
                floor, apexes=frozenset([down]))
            return fin(lead + geo.shift(_vec_scale(down, 2)).scale(v - one))
    else:
        # X itself descends: expand in positive powers of X
        if kind == "b":
            # (v-1)(1 + X + X^2 + ...)
            return fin(geo.scale(v - one))
        if kind == "c":
            # 1 + (1-v)(X + X^2 + ...)
            lead = LatticeSeries.monomial(n, dim, nroots, [0] * dim, one).truncate(
                floor, apexes=frozenset([tuple([0] * dim)]))
            return fin(lead + geo.shift(down).scale(one - v))
        if kind == "cflat":
            # -vX^{-1} + (1-v)(1 + X + X^2 + ...); X^{-1} ascends, so this
            # expansion only exists when the X^{-1} term is kept explicitly
            lead = LatticeSeries.monomial(n, dim, nroots, _vec_neg(down), -v).truncate(
                floor, apexes=frozenset([_vec_neg(down)]))
            return fin(lead + geo.scale(one - v))
    raise SeriesError("unknown atom kind %r" % (kind,))


def divide_exact(f, vexp, w):
    """Exact division of an exact series by (1 - v^{vexp} e^{w}).

    Terms are grouped on cosets of the line Z*w and divided synthetically;
    a nonzero remainder on any line raises SeriesError.
    """
    if not f.is_exact:
        raise SeriesError("exact division needs an exact series")
    w = tuple(w)
    j0 = next((j for j, x in enumerate(w) if x != 0), None)
    if j0 is None:
        raise SeriesError("cannot divide by a constant atom")
    lines = {}
    for vec, c in f.terms.items():
        p = vec[j0] // w[j0]
        base = tuple(x - p * y for x, y in zip(vec, w))
        lines.setdefault(base, {})[p] = c
    u = Coeff.v(f.n, vexp)
    out = {}
    for base, coeffs in lines.items():
        lo, hi = min(coeffs), max(coeffs)
        prev = Coeff.zero(f.n)
        for p in range(lo, hi + 1):
            q = coeffs.get(p, Coeff.zero(f.n)) + u * prev
            if p == hi:
                if q:
                    raise SeriesError("non-exact division: remainder on a line")
                break
            if q:
                vec = tuple(x + p * y for x, y in zip(base, w))
                out[vec] = q
            prev = q
    return LatticeSeries(f.n, f.dim, f.nroots, out)


def series_inverse(f, floor):
    """Inverse of a series whose unique highest term is an invertible monomial.

    Computed as the geometric series in the strictly descending remainder,
    truncated to `floor`.
    """
    if not f.terms:
        raise SeriesError("cannot invert zero")
    n, dim, nroots = f.n, f.dim, f.nroots
    top = max(f.height(v) for v in f.terms)
    leads = [v for v in f.terms if f.height(v) == top]
    if len(leads) != 1:
        raise SeriesError("leading level is not a single monomial")
    lead_vec = leads[0]
    lead_inv = f.terms[lead_vec].inverse()
    neg_lead = _vec_neg(lead_vec)
    g0 = LatticeSeries(n, dim, nroots, {neg_lead: lead_inv}, floor=floor,
                       apexes=frozenset([neg_lead]))
    lower = {v: c for v, c in f.terms.items() if v != lead_vec}
    if not lower:
        return g0
    rest = LatticeSeries(n, dim, nroots, lower)
    r = rest.scale(-Coeff.one(n)).shift(neg_lead).scale(lead_inv)
    acc = g0
    power = g0
    while True:
        power = (power * r).truncate(floor)
        if not power.terms:
            break
        acc = acc + power
    return acc
