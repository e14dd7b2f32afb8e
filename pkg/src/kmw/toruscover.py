"""The central extension of the torus by the n-th roots of unity, driven by
the tame symbol and the invariant quadratic form.

Elements are kept in the straightened normal form

    zeta * prod over the ordered coweight basis of h_b(s_b),

with zeta an exponent mod n and s_b field-model elements.  The product rule
accumulates symbol twists: same-index merges contribute (s, t)^{Q(b)}, and
transpositions past later-ordered generators contribute (s, t)^{B(a, b)}.
"""

from .localfield import FieldError, FieldModel, hilbert_symbol


class CoverError(ArithmeticError):
    pass


class TorusCover:
    """Bundles the field model, the datum, and the form for the extension."""

    def __init__(self, datum, q_form, field):
        if q_form.datum is not datum:
            raise CoverError("form belongs to a different datum")
        self.datum = datum
        self.q_form = q_form
        self.field = field
        self.dim = datum.dim
        e = self.dim
        basis = []
        for j in range(e):
            v = [0] * e
            v[j] = 1
            basis.append(tuple(v))
        self.q_diag = tuple(q_form.q(b) for b in basis)
        self.b_matrix = q_form.bilinear

    def identity(self):
        return CoverElement(self, 0, tuple(self.field.one() for _ in range(self.dim)))

    def generator(self, j, s):
        """h_b(s) for the j-th ordered basis coweight."""
        coords = [self.field.one()] * self.dim
        coords[j] = s
        return CoverElement(self, 0, tuple(coords))

    def central(self, zeta):
        out = self.identity()
        return CoverElement(self, zeta % self.field.n, out.coords)

    def symbol(self, s, t):
        return hilbert_symbol(self.field, s, t)


class CoverElement:
    """zeta * prod_j h_j(s_j) in the fixed basis order."""

    __slots__ = ("cover", "zeta", "coords")

    def __init__(self, cover, zeta, coords):
        if len(coords) != cover.dim:
            raise CoverError("coordinate length mismatch")
        self.cover = cover
        self.zeta = zeta % cover.field.n
        self.coords = tuple(coords)

    def _check(self, other):
        if other.cover is not self.cover:
            raise CoverError("elements of different covers")

    def __mul__(self, other):
        """Straightened product: move the right factor's generators left.

        Passing h_j(t) across h_k(s) for k > j costs (s, t)^{B_kj}; merging
        h_j(s) h_j(t) into h_j(st) costs (s, t)^{Q_j}.
        """
        self._check(other)
        cover = self.cover
        n = cover.field.n
        zeta = (self.zeta + other.zeta) % n
        coords = list(self.coords)
        one = cover.field.one()
        for j, t in enumerate(other.coords):
            if t == one:
                continue
            for k in range(cover.dim - 1, j, -1):
                s = coords[k]
                if s == one:
                    continue
                b = cover.b_matrix[k][j]
                if b % n:
                    zeta = (zeta + cover.symbol(s, t) * b) % n
            s = coords[j]
            qj = cover.q_diag[j]
            if qj % n and s != one:
                zeta = (zeta + cover.symbol(s, t) * qj) % n
            coords[j] = s * t
        return CoverElement(cover, zeta, coords)

    def inverse(self):
        """Two-sided inverse: invert coordinates in reverse order with the
        same straightening costs."""
        cover = self.cover
        out = cover.central((-self.zeta) % cover.field.n)
        for j in range(cover.dim - 1, -1, -1):
            s = self.coords[j]
            # h_j(s)^{-1} = h_j(s^{-1}) (s, s)^{Q_j}
            inv = cover.generator(j, s.inverse())
            twist = (cover.symbol(s, s) * cover.q_diag[j]) % cover.field.n
            out = out * CoverElement(cover, twist, inv.coords)
        return out

    def __eq__(self, other):
        return (isinstance(other, CoverElement) and other.cover is self.cover
                and self.zeta == other.zeta and self.coords == other.coords)

    def __hash__(self):
        return hash((self.zeta, self.coords))

    def __repr__(self):
        parts = ["z^%d" % self.zeta] if self.zeta else []
        for j, s in enumerate(self.coords):
            if s != self.cover.field.one():
                parts.append("h%d(val=%d,unit=%d)" % (j, s.val, s.unit))
        return "CoverElement(%s)" % (" * ".join(parts) or "1")


def cover_mul(a, b):
    return a * b


def cover_inv(a):
    return a.inverse()


def s_auto(cover, i, h, direction="fwd"):
    """The reflection automorphism for the i-th simple root.

    inv: h_b(s) -> h_b(s) h_a(s^{-<a, b>});
    fwd: h_b(s) -> h_b(s) (h_a(s^{<a, b>}))^{-1}; both fix the center.
    """
    if not (0 <= i < cover.datum.rank):
        raise CoverError("index out of range")
    out = cover.central(h.zeta)
    for j, s in enumerate(h.coords):
        if s == cover.field.one():
            continue
        pair = cover.datum.pairing[j][i]  # <basis_j, x_i>
        piece = cover.generator(j, s)
        if direction == "inv":
            out = out * piece * cover.generator(i, s ** (-pair))
        elif direction == "fwd":
            out = out * piece * cover.generator(i, s ** pair).inverse()
        else:
            raise CoverError("direction must be 'fwd' or 'inv'")
    return out


def s_word(cover, w, h, direction="fwd"):
    """Composition of the reflection automorphisms along the canonical word."""
    word = w.word if hasattr(w, "word") else tuple(w)
    out = h
    for i in reversed(word):
        out = s_auto(cover, i, out, direction=direction)
    return out


def ad(g, h):
    """Conjugation g h g^{-1}."""
    return g * h * g.inverse()
