"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are polynomials in zeta_m reduced modulo the m-th cyclotomic
polynomial, with Fraction coefficients.  Complex values are available for
display; equality and all algebra are exact.
"""

import cmath
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Coefficients (ascending, ints) of the m-th cyclotomic polynomial."""
    if m == 1:
        return (-1, 1)
    # x^m - 1 divided by the product of Phi_d over proper divisors d | m
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d:
            continue
        phi = cyclotomic_polynomial(d)
        num = _polydiv_exact(num, phi)
    return tuple(num)


def _polydiv_exact(p, q):
    """p // q for integer coefficient lists, exact (q monic up to sign)."""
    p = list(p)
    dq = len(q) - 1
    lead = q[-1]
    out = [0] * (len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        if p[k] == 0:
            continue
        c, rem = divmod(p[k], lead)
        if rem:
            raise ArithmeticError("non-exact polynomial division")
        out[k - dq] = c
        for i, qc in enumerate(q):
            p[k - dq + i] -= c * qc
    if any(p[: dq]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def _phi_monic(m):
    return tuple(Fraction(c) for c in cyclotomic_polynomial(m))


def _reduce(m, coeffs):
    """Reduce a coefficient list modulo Phi_m, returning a fixed-length tuple."""
    phi = _phi_monic(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        t = c[k]
        if t == 0:
            continue
        c[k] = Fraction(0)
        for i in range(deg):
            c[k - deg + i] -= t * phi[i]
    c = c[:deg] + [Fraction(0)] * (deg - len(c))
    return tuple(c[:deg])


class Cyclotomic:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs):
        self.m = m
        self.coeffs = _reduce(m, [Fraction(c) for c in coeffs])

    @staticmethod
    def zero(m):
        return Cyclotomic(m, [])

    @staticmethod
    def from_rational(m, value):
        return Cyclotomic(m, [Fraction(value)])

    @staticmethod
    def zeta(m, k=1):
        k %= m
        return Cyclotomic(m, [0] * k + [1])

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ArithmeticError("mixed cyclotomic orders %d and %d"
                                      % (self.m, other.m))
            return other
        return Cyclotomic.from_rational(self.m, other)

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(o.coeffs) + [Fraction(0)] * (n - len(o.coeffs))
        return Cyclotomic(self.m, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] += a * b
        return Cyclotomic(self.m, out)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclid algorithm mod Phi_m."""
        phi = list(_phi_monic(self.m))
        a = list(self.coeffs)
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _frac_polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_polysub(s0, _frac_polymul(q, s1))
        # r0 is the gcd: a nonzero constant since Phi_m is irreducible
        const = next(c for c in r0 if c != 0)
        if any(c != 0 for c in r0[1:]):
            raise ArithmeticError("gcd with Phi_m not constant (bug)")
        inv = [c / const for c in s0]
        return Cyclotomic(self.m, inv)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def conjugate(self):
        """Complex conjugation: zeta -> zeta^{-1}."""
        out = [Fraction(0)] * self.m
        for k, c in enumerate(self.coeffs):
            if c:
                out[(-k) % self.m] += c
        return Cyclotomic(self.m, out)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ArithmeticError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ArithmeticError("not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def to_complex(self):
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(c) * z ** k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("%s*z%d" % (c, self.m))
            else:
                terms.append("%s*z%d^%d" % (c, self.m, k))
        return " + ".join(terms) if terms else "0"


def _frac_polydivmod(a, b):
    a = list(a)
    db = max(i for i, c in enumerate(b) if c != 0)
    q = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        if a[k] == 0:
            continue
        c = a[k] / b[db]
        q[k - db] = c
        for i in range(db + 1):
            a[k - db + i] -= c * b[i]
    return q, _trim(a[:db] if db else [Fraction(0)])


def _frac_polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1 or 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _frac_polysub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p
