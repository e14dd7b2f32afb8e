"""The coefficient ring: Laurent polynomials in v with Gauss-symbol
generators g_1..g_{n-1} modulo the defining relations

    g_k = g_{k mod n},   g_0 = -1,   g_k g_{n-k} = v^{-1}  (k != 0 mod n).

Every value carries its modulus n; mixing moduli is an error.  Scalars are
exact rationals.  Terms are kept in a normal form where no monomial
contains both g_k and g_{n-k} (for even n, no square of g_{n/2}).
"""

from fractions import Fraction

from .cyclotomic import Cyclotomic


class CoeffError(ArithmeticError):
    pass


def _normalize_monomial(n, vexp, gexps):
    """Reduce a raw monomial to normal form.

    gexps: dict index -> exponent (indices arbitrary ints, exponents >= 0).
    Returns (scalar_multiplier, vexp, gkey) with gkey a sorted tuple of
    (index, exponent) pairs, indices in 1..n-1.
    """
    scalar = Fraction(1)
    merged = {}
    for k, e in gexps.items():
        if e < 0:
            raise CoeffError("negative symbol exponent")
        if e == 0:
            continue
        k %= n
        if k == 0:
            if e % 2:
                scalar = -scalar
            continue
        merged[k] = merged.get(k, 0) + e
    for k in sorted(merged):
        if k not in merged:
            continue
        opp = (n - k) % n
        if opp == k:
            e = merged[k]
            vexp -= e // 2
            if e % 2:
                merged[k] = 1
            else:
                del merged[k]
        elif opp in merged and k < opp:
            m = min(merged[k], merged[opp])
            vexp -= m
            for idx in (k, opp):
                merged[idx] -= m
                if merged[idx] == 0:
                    del merged[idx]
    gkey = tuple(sorted(merged.items()))
    return scalar, vexp, gkey


class Coeff:
    """Element of the coefficient ring for a fixed modulus n."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms=None, _normalized=False):
        self.n = n
        self._hash = None
        if terms is None:
            self.terms = {}
        elif _normalized:
            self.terms = terms
        else:
            acc = {}
            for (vexp, gkey), c in terms.items():
                scalar, ve, gk = _normalize_monomial(n, vexp, dict(gkey))
                c = Fraction(c) * scalar
                if c:
                    key = (ve, gk)
                    c0 = acc.get(key)
                    c = c if c0 is None else c0 + c
                    if c:
                        acc[key] = c
                    elif key in acc:
                        del acc[key]
            self.terms = acc

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(n):
        return Coeff(n, {}, _normalized=True)

    @staticmethod
    def scalar(n, value):
        value = Fraction(value)
        if value == 0:
            return Coeff.zero(n)
        return Coeff(n, {(0, ()): value}, _normalized=True)

    @staticmethod
    def one(n):
        return Coeff.scalar(n, 1)

    @staticmethod
    def v(n, exponent=1):
        return Coeff(n, {(exponent, ()): Fraction(1)}, _normalized=True)

    @staticmethod
    def g(n, index):
        return Coeff(n, {(0, ((index, 1),)): Fraction(1)})

    # -- ring operations ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Coeff):
            return Coeff.scalar(self.n, other)
        if other.n != self.n:
            raise CoeffError("mixed moduli %d and %d" % (self.n, other.n))
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            c0 = out.get(key)
            s = c if c0 is None else c0 + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return Coeff(self.n, out, _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return Coeff(self.n, {k: -c for k, c in self.terms.items()}, _normalized=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for (v1, g1), c1 in self.terms.items():
            for (v2, g2), c2 in other.terms.items():
                gexps = dict(g1)
                for k, e in g2:
                    gexps[k] = gexps.get(k, 0) + e
                scalar, ve, gk = _normalize_monomial(self.n, v1 + v2, gexps)
                c = c1 * c2 * scalar
                key = (ve, gk)
                c0 = out.get(key)
                s = c if c0 is None else c0 + c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return Coeff(self.n, out, _normalized=True)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Coeff.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        """Inverse of a single-term unit (monomials in v and the symbols)."""
        if len(self.terms) != 1:
            raise CoeffError("only monomial units are invertible here")
        (vexp, gkey), c = next(iter(self.terms.items()))
        out = Coeff.scalar(self.n, Fraction(1) / c) * Coeff.v(self.n, -vexp)
        for k, e in gkey:
            # g_k^{-1} = v * g_{n-k}
            out = out * (Coeff.v(self.n, 1) * Coeff.g(self.n, self.n - k)) ** e
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coeff.scalar(self.n, other)
        return isinstance(other, Coeff) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, tuple(sorted(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------

    def min_v_exponent(self):
        if not self.terms:
            return None
        return min(v for v, _ in self.terms)

    def max_v_exponent(self):
        if not self.terms:
            return None
        return max(v for v, _ in self.terms)

    def is_v_polynomial(self):
        """True when no negative powers of v occur (symbol indices are
        always within 0..n-1 by normal form)."""
        return all(v >= 0 for v, _ in self.terms)

    def truncate_v(self, max_degree):
        out = {k: c for k, c in self.terms.items() if k[0] <= max_degree}
        return Coeff(self.n, out, _normalized=True)

    # -- rendering / parsing ------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for (vexp, gkey), c in sorted(self.terms.items()):
            factors = []
            if c != 1 or (vexp == 0 and not gkey):
                factors.append(str(c) if c > 0 else "(%s)" % c)
            if vexp == 1:
                factors.append("v")
            elif vexp:
                factors.append("v^%d" % vexp)
            for k, e in gkey:
                factors.append("g%d" % k if e == 1 else "g%d^%d" % (k, e))
            parts.append("*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " + " + p
        return out

    @staticmethod
    def parse(n, text):
        """Inverse of render (also accepts '-' between terms and spaces)."""
        text = text.strip()
        if text == "0":
            return Coeff.zero(n)
        out = Coeff.zero(n)
        term = ""
        sign = 1
        depth = 0
        tokens = []
        for ch in text:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch in "+-" and depth == 0 and term.strip() and term.rstrip()[-1] not in "^*/(":
                tokens.append((sign, term))
                sign = 1 if ch == "+" else -1
                term = ""
            else:
                term += ch
        tokens.append((sign, term))
        for sgn, t in tokens:
            out = out + Coeff._parse_term(n, t.strip()) * sgn
        return out

    @staticmethod
    def _parse_term(n, t):
        if not t:
            raise CoeffError("empty term")
        val = Coeff.one(n)
        for factor in t.split("*"):
            f = factor.strip()
            if f.startswith("(") and f.endswith(")"):
                f = f[1:-1].strip()
            if not f:
                raise CoeffError("empty factor in %r" % t)
            if f[0] == "v":
                exp = 1
                if "^" in f:
                    exp = int(f.split("^")[1])
                val = val * Coeff.v(n, exp)
            elif f[0] == "g":
                body = f[1:]
                exp = 1
                if "^" in body:
                    body, e = body.split("^")
                    exp = int(e)
                val = val * Coeff.g(n, int(body)) ** exp
            else:
                val = val * Coeff.scalar(n, Fraction(f))
        return val

    def __repr__(self):
        return "Coeff(n=%d, %s)" % (self.n, self.render())

    # -- specialization ------------------------------------------------------

    def specialize(self, q, gauss_values, m):
        """Evaluate at v = 1/q, g_k = gauss_values[k], exactly in Q(zeta_m).

        gauss_values maps residues 1..n-1 to Cyclotomic numbers of order m
        (as produced by the local-field layer for matching (q, n)).
        """
        if q % (2 * self.n) != 1 and self.n > 1:
            raise CoeffError("specialization needs q = 1 mod 2n")
        out = Cyclotomic.zero(m)
        for (vexp, gkey), c in self.terms.items():
            val = Cyclotomic.from_rational(m, c * Fraction(1, q) ** vexp)
            for k, e in gkey:
                gv = gauss_values[k]
                for _ in range(e):
                    val = val * gv
            out = out + val
        return out
