"""A computable model of the local-field data: a Laurent-series field over a
finite residue field, the tame norm-residue symbol, symbol-axiom sweeps, and
exact Gauss sums in a cyclotomic field.

Elements of the multiplicative group are (valuation, unit residue, one-unit
tail); tame computations read only the first two, which the test sweeps
confirm.  The residue field supports prime powers via a generator/discrete
log table.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclotomic import Cyclotomic


class FieldError(ArithmeticError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                raise FieldError("%d is not a prime power" % q)
            f = 0
            m = q
            while m % p == 0:
                m //= p
                f += 1
            if m != 1:
                raise FieldError("%d is not a prime power" % q)
            return p, f
    raise FieldError("%d is not a prime power" % q)


class ResidueField:
    """GF(q) with multiplication via a discrete-log table.

    Elements are integers 0..q-1; for q = p^f with f > 1 the integer's base-p
    digits are the coefficients of the polynomial representative modulo a
    found irreducible polynomial.
    """

    def __init__(self, q):
        p, f = _factor_prime_power(q)
        self.q, self.p, self.f = q, p, f
        if f == 1:
            add = lambda a, b: (a + b) % p
            mul = lambda a, b: (a * b) % p
            self._add, self._mul = add, mul
        else:
            poly = self._find_irreducible(p, f)
            self._poly = poly
            self._add = self._poly_add
            self._mul = self._poly_mul
        self._build_log_tables()

    # -- polynomial representation for q = p^f ------------------------------

    @staticmethod
    def _digits(x, p, f):
        out = []
        for _ in range(f):
            out.append(x % p)
            x //= p
        return out

    @staticmethod
    def _undigits(ds, p):
        out = 0
        for d in reversed(ds):
            out = out * p + d
        return out

    def _poly_add(self, a, b):
        p, f = self.p, self.f
        da, db = self._digits(a, p, f), self._digits(b, p, f)
        return self._undigits([(x + y) % p for x, y in zip(da, db)], p)

    def _poly_mul(self, a, b):
        p, f = self.p, self.f
        da, db = self._digits(a, p, f), self._digits(b, p, f)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, pc in enumerate(self._poly):
                    prod[k - f + i] = (prod[k - f + i] - c * pc) % p
        return self._undigits(prod[:f], p)

    def _find_irreducible(self, p, f):
        # monic x^f + ...; brute force over lower coefficients
        from itertools import product as iproduct
        for tail in iproduct(range(p), repeat=f):
            poly = list(tail)  # x^f + tail (ascending)
            if poly[0] == 0:
                continue
            if self._poly_is_irreducible(poly, p, f):
                return poly
        raise FieldError("no irreducible polynomial found (bug)")

    @staticmethod
    def _poly_is_irreducible(tail, p, f):
        # check x^{p^k} != x for k < f and x^{p^f} == x, in GF(p)[x]/(poly)
        def mulmod(a, b):
            prod = [0] * (2 * f - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
            for k in range(2 * f - 2, f - 1, -1):
                c = prod[k]
                if c:
                    prod[k] = 0
                    for i, pc in enumerate(tail):
                        prod[k - f + i] = (prod[k - f + i] - c * pc) % p
            return prod[:f]

        def powp(a):
            out = [1] + [0] * (f - 1)
            base = list(a)
            e = p
            while e:
                if e & 1:
                    out = mulmod(out, base)
                base = mulmod(base, base)
                e >>= 1
            return out

        x = [0, 1] + [0] * (f - 2) if f > 1 else [0]
        cur = list(x)
        for _ in range(f - 1):
            cur = powp(cur)
            if cur == x:
                return False
        return powp(cur) == x

    def _build_log_tables(self):
        q = self.q
        for g in range(2, q):
            seen = set()
            cur = 1
            ok = True
            for _ in range(q - 1):
                cur = self._mul(cur, g)
                if cur in seen:
                    ok = False
                    break
                seen.add(cur)
            if ok and len(seen) == q - 1:
                self.generator = g
                break
        else:
            raise FieldError("no generator found (bug)")
        self.exp_table = [1]
        cur = 1
        for _ in range(q - 2):
            cur = self._mul(cur, self.generator)
            self.exp_table.append(cur)
        self.log_table = {x: k for k, x in enumerate(self.exp_table)}

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp((self.log(a) + self.log(b)) % (self.q - 1))

    def add(self, a, b):
        return self._add(a, b)

    def neg(self, a):
        if self.f == 1:
            return (-a) % self.p
        return self._undigits([(-d) % self.p for d in self._digits(a, self.p, self.f)],
                              self.p)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return self.exp((-self.log(a)) % (self.q - 1))

    def pow(self, a, k):
        if a == 0:
            if k <= 0:
                raise ZeroDivisionError
            return 0
        return self.exp((self.log(a) * k) % (self.q - 1))

    def log(self, a):
        return self.log_table[a]

    def exp(self, k):
        return self.exp_table[k % (self.q - 1)]

    def minus_one(self):
        return self.neg(1)

    def trace(self, a):
        """Trace to the prime field, as an integer mod p."""
        if self.f == 1:
            return a % self.p
        tot = 0
        cur = a
        for _ in range(self.f):
            tot = self._add(tot, cur)
            cur = self.pow(cur, self.p)
        # the trace lies in the prime field: constant digit
        return tot % self.p

    def units(self):
        return range(1, self.q) if self.f == 1 else list(self.exp_table)


class FieldModel:
    """Multiplicative data of a local field with residue field GF(q), tame
    cover degree n (q = 1 mod 2n), and one-unit precision `prec`."""

    def __init__(self, q, n, prec=4, val_window=64):
        if n < 1:
            raise FieldError("cover degree must be positive")
        if q % (2 * n) != 1 and n > 1:
            raise FieldError("need q = 1 mod 2n (got q=%d, n=%d)" % (q, n))
        if n == 1 and q < 2:
            raise FieldError("bad q")
        self.residue = ResidueField(q)
        self.q, self.n = q, n
        self.prec = prec
        self.val_window = val_window

    def element(self, val, unit, one_unit=()):
        return FieldElement(self, val, unit, tuple(one_unit))

    def one(self):
        return self.element(0, 1)

    def uniformizer(self):
        return self.element(1, 1)

    def from_unit_residue(self, u):
        return self.element(0, u)

    def minus_one(self):
        return self.element(0, self.residue.minus_one())


class FieldElement:
    """pi^val * u * (1 + c_1 pi + ... + c_prec pi^prec)."""

    __slots__ = ("field", "val", "unit", "one_unit")

    def __init__(self, field, val, unit, one_unit=()):
        if unit % field.q == 0:
            raise FieldError("zero is not in the unit group")
        if abs(val) > field.val_window:
            raise FieldError("valuation %d outside the configured window" % val)
        self.field = field
        self.val = val
        self.unit = unit % field.q
        tail = list(one_unit)[: field.prec]
        tail += [0] * (field.prec - len(tail))
        self.one_unit = tuple(x % field.q for x in tail)

    def _check(self, other):
        if other.field is not self.field:
            raise FieldError("elements of different field models")

    def __mul__(self, other):
        self._check(other)
        F = self.field.residue
        prec = self.field.prec
        a = (1,) + self.one_unit
        b = (1,) + other.one_unit
        prod = [0] * (prec + 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y and i + j <= prec:
                        prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        return FieldElement(self.field, self.val + other.val,
                            F.mul(self.unit, other.unit), tuple(prod[1:]))

    def inverse(self):
        F = self.field.residue
        prec = self.field.prec
        a = (1,) + self.one_unit
        inv = [1] + [0] * prec
        for k in range(1, prec + 1):
            s = 0
            for i in range(1, k + 1):
                s = F.add(s, F.mul(a[i], inv[k - i]))
            inv[k] = F.neg(s)
        return FieldElement(self.field, -self.val, F.inv(self.unit), tuple(inv[1:]))

    def __pow__(self, k):
        if k == 0:
            return self.field.one()
        base = self if k > 0 else self.inverse()
        out = self.field.one()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and other.field is self.field
                and (self.val, self.unit, self.one_unit)
                == (other.val, other.unit, other.one_unit))

    def __hash__(self):
        return hash((self.val, self.unit, self.one_unit))

    def __repr__(self):
        return "FieldElement(val=%d, unit=%d, tail=%r)" % (
            self.val, self.unit, self.one_unit)

    def one_minus(self):
        """1 - self, when representable at the model's precision."""
        F = self.field.residue
        q = self.field.q
        prec = self.field.prec
        # coefficients of self as a series in pi starting at self.val
        if self.val > prec:
            return self.field.one()
        if self.val < -self.field.val_window:
            raise FieldError("valuation window exceeded")
        if self.val < 0:
            # 1 - x = -x (1 - x^{-1}); leading term of -x dominates
            minus_self = FieldElement(self.field, self.val, F.neg(self.unit),
                                      self.one_unit)
            inv = self.inverse()
            # (1 - x^{-1}): valuation of x^{-1} is -val > 0
            tail = [0] * prec
            shift = -self.val
            coeffs = [inv.unit] + [F.mul(inv.unit, c) for c in inv.one_unit]
            for k in range(1, prec + 1):
                if k - shift >= 0 and k - shift < len(coeffs):
                    tail[k - 1] = F.neg(coeffs[k - shift])
            return minus_self * FieldElement(self.field, 0, 1, tail)
        coeffs = [0] * (prec + 1)
        base = [self.unit] + [F.mul(self.unit, c) for c in self.one_unit]
        for k, c in enumerate(base):
            if self.val + k <= prec:
                coeffs[self.val + k] = c
        one_minus = [F.neg(c) for c in coeffs]
        one_minus[0] = F.add(1, one_minus[0])
        val = next((k for k, c in enumerate(one_minus) if c), None)
        if val is None:
            return None  # 1 - x vanishes to the stored precision
        unit = one_minus[val]
        uinv = F.inv(unit)
        tail = [F.mul(uinv, one_minus[val + 1 + j]) if val + 1 + j <= prec else 0
                for j in range(prec)]
        return FieldElement(self.field, val, unit, tail)


def hilbert_symbol(field, x, y):
    """The tame symbol as an exponent k in 0..n-1: the value is zeta^k for
    zeta the distinguished root of unity g^{(q-1)/n}."""
    if not isinstance(x, FieldElement) or not isinstance(y, FieldElement):
        raise FieldError("arguments must be field elements")
    F = field.residue
    a, b = x.val, y.val
    # residue of (-1)^{ab} y^a / x^b
    r = F.pow(y.unit, a)
    r = F.mul(r, F.inv(F.pow(x.unit, b)))
    if (a * b) % 2:
        r = F.mul(r, F.minus_one())
    exponent = (F.log(r) * ((field.q - 1) // field.n)) % (field.q - 1)
    step = (field.q - 1) // field.n
    if exponent % step:
        raise FieldError("symbol landed outside the n-th roots (bug)")
    return (exponent // step) % field.n


def steinberg_check(field, val_range=2):
    """Sweep the symbol axioms and their standard consequences.

    Exhaustive over unit residues at valuations in [-val_range, val_range]:
    bimultiplicativity on all triples, skew-symmetry, the pairing with 1,
    (x, -x) = 1, (x, x)^2 = 1, the inverse identities, unramifiedness on
    units, and (x, 1-x) = 1 on representable pairs.  Returns a report dict
    whose 'violations' list must come back empty.
    """
    q, n = field.q, field.n
    F = field.residue
    units = list(F.units())
    vals = range(-val_range, val_range + 1)
    reps = [(v, u) for v in vals for u in units]
    step = (q - 1) // n

    def sym_el(x, y):
        return hilbert_symbol(field, x, y)

    violations = []
    elements = [field.element(v, u) for v, u in reps]
    one = field.one()
    minus_one = field.minus_one()
    for x in elements:
        if sym_el(one, x) or sym_el(x, one):
            violations.append(("pairing-with-one", (x.val, x.unit)))
        if sym_el(x, minus_one * x):
            violations.append(("x-with-minus-x", (x.val, x.unit)))
        if (2 * sym_el(x, x)) % n:
            violations.append(("square-not-involutive", (x.val, x.unit)))
        xinv = x.inverse()
        if sym_el(xinv, x) != sym_el(xinv, minus_one):
            violations.append(("inverse-pairing", (x.val, x.unit)))
        if (2 * sym_el(xinv, minus_one)) % n:
            violations.append(("inverse-minus-one-square", (x.val, x.unit)))
        for k in (2, 3):
            xk = x ** k
            if sym_el(xk, x) != (k * sym_el(x, x)) % n:
                violations.append(("integer-power", (x.val, x.unit, k)))
    for x in elements:
        for y in elements:
            if (sym_el(x, y) + sym_el(y, x)) % n:
                violations.append(("skew", (x.val, x.unit), (y.val, y.unit)))
    # bimultiplicativity over all triples, via (val, unit) data
    logm1 = F.log(F.minus_one())

    def fast_sym(a, la, b, lb):
        r = (lb * a - la * b) % (q - 1)
        if (a * b) % 2:
            r = (r + logm1) % (q - 1)
        return (r * step) % (q - 1) // step

    lreps = [(v, F.log(u)) for v, u in reps]
    for a, la in lreps:
        for b, lb in lreps:
            sab = fast_sym(a, la, b, lb)
            for c, lc in lreps:
                # (x, y z) = (x, y)(x, z)
                yz = (b + c, (lb + lc) % (q - 1))
                if fast_sym(a, la, *yz) != (sab + fast_sym(a, la, c, lc)) % n:
                    violations.append(("bimult", (a, la), (b, lb), (c, lc)))
                    break
    checked = 0
    for x in elements:
        if x == one:
            continue
        y = x.one_minus()
        if y is None:
            continue
        checked += 1
        if sym_el(x, y):
            violations.append(("steinberg-relation", (x.val, x.unit, x.one_unit)))
    for u1 in units:
        for u2 in units:
            if sym_el(field.element(0, u1), field.element(0, u2)):
                violations.append(("ramified-on-units", u1, u2))
    return {
        "q": q, "n": n,
        "elements": len(elements),
        "triples_checked": len(reps) ** 3,
        "steinberg_pairs": checked,
        "violations": violations,
    }


class GaussTable:
    """Exact Gauss sums for (q, n): values[k] for k mod n, in Q(zeta_m) with
    m = p (q - 1)."""

    def __init__(self, field):
        q, n = field.q, field.n
        F = field.residue
        p = F.p
        m = p * (q - 1)
        self.field = field
        self.m = m
        zeta_p = Cyclotomic.zeta(m, q - 1)       # zeta_m^{q-1} has order p
        zeta_q1 = Cyclotomic.zeta(m, p)          # zeta_m^{p} has order q-1
        values = {}
        step = (q - 1) // n
        for k in range(n):
            total = Cyclotomic.zero(m)
            for j in range(q - 1):
                u = F.exp(j)
                chi = Cyclotomic.zeta(m, p * ((j * k * step) % (q - 1)))
                tr = F.trace(F.neg(u))
                psi = Cyclotomic.zeta(m, (q - 1) * tr)
                total = total + chi * psi
            values[k] = total
        self.values = values
        minus_one = Cyclotomic.from_rational(m, -1)
        if values[0] != minus_one:
            raise FieldError("normalization failed: the k=0 sum is not -1 (bug)")
        for k in range(1, n):
            if values[k] * values[(n - k) % n] != Cyclotomic.from_rational(m, q):
                raise FieldError("pair product relation failed at k=%d (bug)" % k)

    def __getitem__(self, k):
        return self.values[k % self.field.n]

    def to_json(self):
        out = {}
        for k in sorted(self.values):
            z = self.values[k]
            c = z.to_complex()
            out["g%d" % k] = {
                "exact": repr(z),
                "complex": [c.real, c.imag],
            }
        return out


@lru_cache(maxsize=None)
def _cached_table(q, n):
    return GaussTable(FieldModel(q, n))


def gauss_table(field):
    """Gauss sums for the model, cached per (q, n)."""
    return _cached_table(field.q, field.n)


def specialize_coeff(c, q, table=None):
    """Evaluate a ring coefficient at v = 1/q with the symbol values for
    (q, n); exact cyclotomic output."""
    if table is None:
        table = _cached_table(q, c.n)
    return c.specialize(q, table.values, table.m)
