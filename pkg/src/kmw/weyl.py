"""Weyl group calculus for a GCM: reflection matrices, canonical reduced
words, enumeration, inversion sequences, length generating functions, and
the rank-2 recursion polynomials.

Elements are identified by their integer matrix on the full coweight basis
(coroots plus derivation directions); words are reduced to the
lexicographically least reduced word.
"""

from fractions import Fraction
from math import comb

from . import cartan


class WeylError(ValueError):
    pass


class ResourceLimit(RuntimeError):
    def __init__(self, message, count):
        super().__init__(message)
        self.count = count


def _mat_mul(a, b):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matrix_rank(rows):
    a = [[Fraction(x) for x in row] for row in rows]
    nrows, ncols = len(a), len(a[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, nrows) if a[k][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for k in range(nrows):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        r += 1
    return r


class WeylGroup:
    """Reflection representation of W(A) on the full coweight basis.

    The basis is the simple coroots followed by one derivation direction per
    corank, chosen so the pairing rows complete the Cartan matrix to full
    column rank (for affine type this is the usual derivation, pairing 1
    against the affine simple root and 0 against the others).
    """

    def __init__(self, gcm):
        if not isinstance(gcm, cartan.GCM):
            gcm = cartan.GCM(gcm)
        self.gcm = gcm
        r = gcm.size
        rank = _matrix_rank(gcm.entries)
        rows = [list(row) for row in gcm.entries]
        extras = []
        for c in range(r - 1, -1, -1):
            if len(extras) == r - rank:
                break
            e = [0] * r
            e[c] = 1
            if _matrix_rank(rows + [e]) > _matrix_rank(rows):
                rows.append(e)
                extras.append(c)
        if len(rows) - r != r - rank:
            raise WeylError("could not complete pairing to full rank (bug)")
        self.rank = r
        self.dim = r + len(extras)
        # pairing[j][i] = <basis_j, x_i>
        self.pairing = tuple(tuple(row) for row in rows)
        e = self.dim
        refl = []
        for i in range(r):
            m = [[1 if k == j else 0 for j in range(e)] for k in range(e)]
            for j in range(e):
                m[i][j] -= self.pairing[j][i]
            refl.append(tuple(tuple(row) for row in m))
        self.reflections_y = tuple(refl)
        # X-side reflections on root coordinates: s_i(x_j) = x_j - a_ij x_i
        reflx = []
        for i in range(r):
            m = [[1 if k == j else 0 for j in range(r)] for k in range(r)]
            for j in range(r):
                m[i][j] -= gcm.entries[i][j]
            reflx.append(tuple(tuple(row) for row in m))
        self.reflections_x = tuple(reflx)
        self._id = _identity(e)

    # -- words ---------------------------------------------------------

    def matrix_of_word(self, word):
        m = self._id
        for i in word:
            m = _mat_mul(m, self.reflections_y[i])
        return m

    def _xmatrix_of_word(self, word):
        m = _identity(self.rank)
        for i in word:
            m = _mat_mul(m, self.reflections_x[i])
        return m

    def reduce_word(self, word):
        """Canonical (lexicographically least) reduced word of the element."""
        for i in word:
            if not (0 <= i < self.rank):
                raise WeylError("generator index %r out of range" % (i,))
        minv = self._xmatrix_of_word(tuple(reversed(word)))
        out = []
        while True:
            desc = None
            for i in range(self.rank):
                col = tuple(minv[k][i] for k in range(self.rank))
                if any(c < 0 for c in col):
                    desc = i
                    break
            if desc is None:
                break
            out.append(desc)
            minv = _mat_mul(minv, self.reflections_x[desc])
        return tuple(out)

    def element(self, word=()):
        red = self.reduce_word(tuple(word))
        return WeylElement(self, self.matrix_of_word(red), red)

    def identity(self):
        return WeylElement(self, self._id, ())

    def generator(self, i):
        return self.element((i,))

    def enumerate(self, max_length, limit=None):
        """All elements of length <= max_length, ordered by (length, word).

        `limit` caps the number of elements; exceeding it raises ResourceLimit
        carrying the count found so far.
        """
        if max_length < 0:
            raise WeylError("max_length must be >= 0")
        seen = {self._id: ()}
        level = [(self._id, ())]
        out = [self.identity()]
        for _ in range(max_length):
            nxt = {}
            for m, word in level:
                for i in range(self.rank):
                    m2 = _mat_mul(m, self.reflections_y[i])
                    if m2 in seen:
                        continue
                    w2 = word + (i,)
                    if m2 not in nxt or w2 < nxt[m2]:
                        nxt[m2] = w2
            if not nxt:
                break
            level = sorted(nxt.items(), key=lambda kv: kv[1])
            level = [(m, w) for m, w in level]
            for m, w in level:
                seen[m] = w
                out.append(WeylElement(self, m, w))
                if limit is not None and len(out) > limit:
                    raise ResourceLimit("element cap exceeded", len(out))
        out.sort(key=lambda el: (len(el.word), el.word))
        return out

    # -- actions --------------------------------------------------------

    def reflect_coweight(self, i, vec):
        if not (0 <= i < self.rank):
            raise WeylError("index out of range")
        return _mat_vec(self.reflections_y[i], tuple(vec))

    def reflect_weight(self, i, vec):
        """s_i on X in coordinates dual to the coweight basis."""
        if not (0 <= i < self.rank):
            raise WeylError("index out of range")
        vec = tuple(vec)
        c = vec[i]
        return tuple(x - c * self.pairing[j][i] for j, x in enumerate(vec))

    def pair(self, yvec, xvec):
        """<y, x> for y in coweight coordinates, x in dual coordinates."""
        return sum(a * b for a, b in zip(yvec, xvec))

    def root_coords(self, i):
        """x_i in the dual coordinates (column i of the pairing)."""
        return tuple(self.pairing[j][i] for j in range(self.dim))

    def coroot_coords(self, i):
        v = [0] * self.dim
        v[i] = 1
        return tuple(v)

    def inversion_sequence(self, word, side="weight"):
        """beta_1 = a_{k1}, beta_2 = s_{k1} a_{k2}, ... for a (not necessarily
        reduced) word; on the root side ('weight') or coroot side ('coweight')."""
        out = []
        if side == "weight":
            mats = self.reflections_x
            basis = lambda i: tuple(1 if j == i else 0 for j in range(self.rank))
        elif side == "coweight":
            mats = self.reflections_y
            basis = self.coroot_coords
        else:
            raise WeylError("side must be 'weight' or 'coweight'")
        prefix = _identity(self.rank if side == "weight" else self.dim)
        for pos, k in enumerate(word):
            out.append(_mat_vec(prefix, basis(k)))
            prefix = _mat_mul(prefix, mats[k])
        return tuple(out)


class WeylElement:
    """Group element: matrix on the coweight basis plus canonical word."""

    __slots__ = ("group", "matrix", "word")

    def __init__(self, group, matrix, word):
        self.group = group
        self.matrix = matrix
        self.word = word

    @property
    def length(self):
        return len(self.word)

    def __mul__(self, other):
        if other.group is not self.group:
            raise WeylError("elements from different groups")
        return self.group.element(self.word + other.word)

    def inverse(self):
        return self.group.element(tuple(reversed(self.word)))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return "WeylElement(%s)" % ("*".join("s%d" % (i + 1) for i in self.word) or "e")

    def apply_coweight(self, vec):
        return _mat_vec(self.matrix, tuple(vec))

    def apply_weight(self, vec):
        out = tuple(vec)
        for i in reversed(self.word):
            out = self.group.reflect_weight(i, out)
        return out

    def inversions(self, side="weight"):
        return self.group.inversion_sequence(self.word, side=side)

    def sign(self):
        return -1 if self.length % 2 else 1

    def to_json(self):
        return list(self.word)


def normalize_word(gcm, word):
    """Canonical reduced word of the element given by an arbitrary word."""
    return WeylGroup(gcm).reduce_word(tuple(word))


def inversion_sequence(gcm, word, side="weight"):
    return WeylGroup(gcm).inversion_sequence(tuple(word), side=side)


def enumerate_elements(gcm, max_length, limit=None):
    return WeylGroup(gcm).enumerate(max_length, limit=limit)


# ---------------------------------------------------------------------------
# Length generating functions.

def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return list(p)


def poincare_series(gcm, max_degree=None):
    """Sum of v^length over W, as a coefficient list.

    Finite type: the full polynomial, computed by the parabolic-quotient
    recursion (orbit of a fundamental weight gives the minimal coset
    lengths).  Otherwise a truncation to max_degree via breadth-first
    enumeration level counts.
    """
    if not isinstance(gcm, cartan.GCM):
        gcm = cartan.GCM(gcm)
    cls = cartan.classify(gcm)
    kinds = ([c.kind for _, c in cls.per_component]
             if cls.per_component is not None else [cls.kind])
    if all(k == cartan.FINITE for k in kinds):
        return _poincare_finite(gcm)
    if max_degree is None:
        raise WeylError("infinite Weyl group: pass max_degree")
    counts = [0] * (max_degree + 1)
    group = WeylGroup(gcm)
    seen = {group._id}
    level = [group._id]
    counts[0] = 1
    for d in range(1, max_degree + 1):
        nxt = set()
        for m in level:
            for i in range(group.rank):
                m2 = _mat_mul(m, group.reflections_y[i])
                if m2 not in seen:
                    nxt.add(m2)
        seen |= nxt
        counts[d] = len(nxt)
        level = list(nxt)
    return counts


def _poincare_finite(gcm):
    n = gcm.size
    if n == 0:
        return [1]
    j = n - 1
    sub = gcm.submatrix(tuple(range(n - 1)))
    base = _poincare_finite(sub)
    # orbit of the fundamental weight for node j, coordinates in the
    # fundamental-weight basis; s_i subtracts c_i times column i of A
    cols = [tuple(gcm.entries[k][i] for k in range(n)) for i in range(n)]
    start = tuple(1 if k == j else 0 for k in range(n))
    seen = {start}
    level = [start]
    quot = [1]
    while level:
        nxt = set()
        for vec in level:
            for i in range(n):
                if vec[i] == 0:
                    continue
                moved = tuple(x - vec[i] * cols[i][k] for k, x in enumerate(vec))
                if moved not in seen:
                    nxt.add(moved)
        if not nxt:
            break
        seen |= nxt
        quot.append(len(nxt))
        level = list(nxt)
    return _poly_trim(_poly_mul(base, quot))


def exponents_from_poincare(poly, rank):
    """Exponents m_1 <= ... <= m_rank from W(v) = prod (1-v^{m_i+1})/(1-v).

    Peels factors from the lowest degree upward; the lowest nonconstant term
    of the product determines the smallest exponent and its multiplicity.
    """
    p = _poly_trim(list(poly))
    for _ in range(rank):
        p = _poly_trim(_poly_mul(p, [1, -1]))
    exps = []
    while p != [1]:
        d = next((k for k in range(1, len(p)) if p[k] != 0), None)
        if d is None or p[d] >= 0:
            raise WeylError("length generating function does not factor (bug)")
        c = -p[d]
        for _ in range(c):
            # ascending synthetic division by (1 - v^d)
            q = [0] * (len(p) - d)
            r = list(p)
            for k in range(len(q)):
                q[k] = r[k]
                r[k + d] += r[k]
            if any(x != 0 for x in r[len(q):]):
                raise WeylError("non-exact factor peel (bug)")
            p = _poly_trim(q)
            exps.append(d - 1)
    return tuple(sorted(exps))


# ---------------------------------------------------------------------------
# Rank-2 apparatus.

def rank2_fg(k):
    """(f_k, g_k) as integer coefficient lists (ascending), computed by the
    recursion g_{k+1} = f_k - g_k, f_{k+1} = X g_{k+1} - f_k and checked
    against the binomial closed forms."""
    if k < 0:
        raise WeylError("k must be >= 0")
    f, g = [1], [0]
    for _ in range(k):
        g2 = [a - b for a, b in zip(f + [0] * (len(g) - len(f)),
                                    g + [0] * (len(f) - len(g)))]
        g2 = _poly_trim(g2)
        xf = [0] + g2
        f2 = [a - b for a, b in zip(xf, f + [0] * (len(xf) - len(f)))]
        f, g = _poly_trim(f2), g2
    closed_g = [0] * max(k, 1)
    for i in range(k):
        closed_g[k - 1 - i] += (-1) ** i * comb(2 * k - 1 - i, i)
    closed_f = [0] * (k + 1)
    for j in range(k + 1):
        closed_f[k - j] += (-1) ** j * comb(2 * k - j, j)
    if _poly_trim(closed_f) != f or _poly_trim(closed_g) != g:
        raise WeylError("recursion and closed form disagree (bug)")
    return f, g


def _poly_eval(p, x):
    return sum(c * x ** i for i, c in enumerate(p))


def rank2_action_formula(kind, k, m, n):
    """Coefficients (c_a, c_b) of w(a) or w(b) per the rank-2 word formulas.

    kind is one of 'ab_even_on_a' ((s_a s_b)^k a), 'b_odd_on_a'
    (s_b (s_a s_b)^k a), 'ba_even_on_a', 'a_odd_on_a', and the four
    a<->b mirrored variants ending in '_on_b'.  m = <b, a^vee> = a_{ab},
    n = <a, b^vee> = a_{ba}; z = m n.
    """
    z = m * n
    fk, gk = rank2_fg(k)
    fk1, gk1 = rank2_fg(k + 1)
    fkm1, _ = rank2_fg(k - 1) if k >= 1 else ([0], [0])
    f = _poly_eval(fk, z)
    g = _poly_eval(gk, z)
    g1 = _poly_eval(gk1, z)
    fm1 = _poly_eval(fkm1, z)
    table = {
        "ab_even_on_a": (f, -n * g),
        "b_odd_on_a": (f, -n * g1),
        "ba_even_on_a": (-fm1, n * g),
        "a_odd_on_a": (-f, n * g),
        "ba_even_on_b": (-m * g, f),
        "a_odd_on_b": (-m * g1, f),
        "ab_even_on_b": (m * g, -fm1),
        "b_odd_on_b": (m * g, -f),
    }
    if kind not in table:
        raise WeylError("unknown formula kind %r" % (kind,))
    return table[kind]


def rank2_word(kind, k):
    """The word over indices (0, 1) realizing the rank-2 formula `kind`."""
    sa, sb = 0, 1
    if kind in ("ab_even_on_a", "ab_even_on_b"):
        return (sa, sb) * k
    if kind in ("b_odd_on_a", "b_odd_on_b"):
        return (sb,) + (sa, sb) * k
    if kind in ("ba_even_on_a", "ba_even_on_b"):
        return (sb, sa) * k
    if kind in ("a_odd_on_a", "a_odd_on_b"):
        return (sa,) + (sb, sa) * k
    raise WeylError("unknown formula kind %r" % (kind,))


def rank2_root_stabilizers(m, n, max_length):
    """Nontrivial words w (as canonical reduced words) with w(a) = a, for the
    rank-2 GCM [[2, m], [n, 2]], up to max_length."""
    g = WeylGroup([[2, m], [n, 2]])
    a = (1, 0)
    out = []
    for el in g.enumerate(max_length):
        if el.length and el.apply_weight(a) == a:
            out.append(el.word)
    return out


def rank2_root_transporters(m, n, max_length):
    """Words w with w(a) = b in the rank-2 GCM [[2, m], [n, 2]]."""
    g = WeylGroup([[2, m], [n, 2]])
    a, b = (1, 0), (0, 1)
    out = []
    for el in g.enumerate(max_length):
        if el.apply_weight(a) == b:
            out.append(el.word)
    return out
