"""Simply connected root data, W-invariant quadratic forms, and the
metaplectic construction (scaled coroots, fractional roots, and the new
Cartan matrix with its affine classification).

Coweights are integer coordinate vectors in the basis (simple coroots,
then derivation directions); weights use the dual coordinates, so the
pairing is the dot product.  Fractional weight coordinates appear only on
the metaplectic side.
"""

from fractions import Fraction
from math import gcd

from . import cartan, weyl


class RootDatumError(ValueError):
    pass


class RootDatum:
    """Simply connected root datum for a GCM.

    dim = |I| + corank; the coweight basis is the simple coroots followed by
    derivation directions, and the stored pairing has rows <basis_j, x_i>.
    """

    def __init__(self, gcm):
        if not isinstance(gcm, cartan.GCM):
            gcm = cartan.GCM(gcm)
        self.gcm = gcm
        self.weyl = weyl.WeylGroup(gcm)
        self.rank = gcm.size
        self.dim = self.weyl.dim
        self.pairing = self.weyl.pairing
        self.classification = cartan.classify(gcm)

    def coroot(self, i):
        return self.weyl.coroot_coords(i)

    def root(self, i):
        return self.weyl.root_coords(i)

    def pair(self, yvec, xvec):
        return self.weyl.pair(yvec, xvec)

    def rho(self):
        """The weight with <a_i^vee, rho> = 1 for all i, zero on derivations."""
        return tuple([1] * self.rank + [0] * (self.dim - self.rank))

    def height(self, yvec):
        """<rho, y>: the sum of the coroot coordinates."""
        return sum(yvec[: self.rank])

    def is_dominant(self, yvec):
        return all(self.pair(yvec, self.root(i)) >= 0 for i in range(self.rank))

    def dominance_leq(self, mu, lam):
        """mu <= lam: difference a nonnegative integer combination of simple
        coroots (derivation coordinates must agree)."""
        diff = [a - b for a, b in zip(lam, mu)]
        if any(diff[self.rank:]):
            return False
        return all(d >= 0 for d in diff[: self.rank])

    def imaginary_generator(self):
        """The minimal positive imaginary coroot (affine type only)."""
        if self.classification.kind != cartan.AFFINE:
            raise RootDatumError("imaginary coroots exist only in affine type")
        dd = self.classification.delta_dual
        return tuple(list(dd) + [0] * (self.dim - self.rank))

    def to_json(self):
        return {"cartan": [list(r) for r in self.gcm.entries]}


def simply_connected(gcm):
    return RootDatum(gcm)


class QuadraticForm:
    """Integral W-invariant quadratic form on the coweight lattice.

    Determined by the values on the simple coroots; extended by zero on the
    derivation directions, with the bilinear form against coroots forced by
    B(y, y_i) = <y, x_i> Q(y_i).
    """

    def __init__(self, datum, coroot_values):
        vals = tuple(int(v) for v in coroot_values)
        if len(vals) != datum.rank:
            raise RootDatumError("need one value per simple coroot")
        a = datum.gcm.entries
        for i in range(datum.rank):
            for j in range(datum.rank):
                if a[i][j] * vals[j] != a[j][i] * vals[i]:
                    raise RootDatumError(
                        "form not W-invariant: reflection s_%d breaks "
                        "Q on coroot %d (a_ij Q_j != a_ji Q_i)" % (j + 1, i + 1))
        self.datum = datum
        self.coroot_values = vals
        e, r = datum.dim, datum.rank
        # bilinear matrix: B[j][i] = <basis_j, x_i> Q_i for coroot columns,
        # symmetric completion, zero on derivation-derivation entries
        b = [[0] * e for _ in range(e)]
        for j in range(e):
            for i in range(r):
                b[j][i] = datum.pairing[j][i] * vals[i]
        for j in range(e):
            for i in range(r, e):
                b[j][i] = b[i][j]
        self.bilinear = tuple(tuple(row) for row in b)

    def b(self, y1, y2):
        return sum(y1[j] * self.bilinear[j][i] * y2[i]
                   for j in range(len(y1)) for i in range(len(y2))
                   if self.bilinear[j][i])

    def q(self, y):
        tot = 0
        e = len(y)
        for j in range(e):
            cj = y[j]
            if not cj:
                continue
            row = self.bilinear[j]
            tot += cj * cj * (self.coroot_values[j] if j < self.datum.rank else 0) * 2
            for i in range(j + 1, e):
                tot += 2 * cj * y[i] * row[i]
        if tot % 2:
            raise RootDatumError("bilinear matrix has odd diagonal (bug)")
        return tot // 2

    def to_json(self):
        return {"form": list(self.coroot_values)}


def standard_form(datum):
    """The normalized integral W-invariant form: values on simple coroots
    proportional to the symmetrization factors, scaled to minimum 1.

    Defined for finite and affine type; refused for indefinite type (the
    caller may construct QuadraticForm with explicit values instead).
    """
    kind = datum.classification.kind
    if kind == cartan.INDEFINITE:
        raise RootDatumError(
            "no normalization is fixed for indefinite type; pass explicit values")
    eps = cartan.symmetrize(datum.gcm).epsilon
    m = min(eps)
    vals = [e / m for e in eps]
    if any(v.denominator != 1 for v in vals):
        raise RootDatumError("normalized values not integral (bug)")
    return QuadraticForm(datum, [int(v) for v in vals])


class MetaplecticDatum:
    """The rescaled root datum attached to (Q, n).

    Carries the scaled coroots n_i y_i, the fractional roots x_i / n_i, the
    new Cartan matrix, and enough bookkeeping to run the twisted Weyl action
    and the scaled symmetrizers.
    """

    def __init__(self, datum, q_form, n):
        if n < 1:
            raise RootDatumError("cover degree must be >= 1")
        if q_form.datum is not datum:
            raise RootDatumError("form belongs to a different datum")
        self.base = datum
        self.q_form = q_form
        self.n = n
        r = datum.rank
        self.n_i = tuple(n // gcd(n, q_form.coroot_values[i]) for i in range(r))
        for i in range(r):
            ni = self.n_i[i]
            if (ni * q_form.coroot_values[i]) % n:
                raise RootDatumError("n_i computation inconsistent (bug)")
            for k in range(1, ni):
                if (k * q_form.coroot_values[i]) % n == 0:
                    raise RootDatumError("n_i not minimal (bug)")
        tilde = [[self.n_i[i] * datum.gcm.entries[i][j] // self.n_i[j]
                  for j in range(r)] for i in range(r)]
        for i in range(r):
            for j in range(r):
                if tilde[i][j] * self.n_i[j] != self.n_i[i] * datum.gcm.entries[i][j]:
                    raise RootDatumError("scaled Cartan entry not integral (bug)")
        self.tilde_gcm = cartan.GCM(tilde)
        self.tilde_classification = cartan.classify(self.tilde_gcm)
        if self.tilde_classification.kind != datum.classification.kind:
            raise RootDatumError("rescaling changed the classification type (bug)")

    def tilde_coroot(self, i):
        v = [0] * self.base.dim
        v[i] = self.n_i[i]
        return tuple(v)

    def tilde_root(self, i):
        return tuple(Fraction(x, self.n_i[i]) for x in self.base.root(i))

    def rho_tilde(self):
        """Weight with value 1 on every scaled coroot (fractional coordinates)."""
        r, e = self.base.rank, self.base.dim
        return tuple([Fraction(1, self.n_i[i]) for i in range(r)]
                     + [Fraction(0)] * (e - r))

    def tilde_lattice_basis(self):
        """Basis of {y : B(y, y') in nZ for all y'}, via Smith normal form."""
        b = [list(row) for row in self.q_form.bilinear]
        return _congruence_kernel_basis(b, self.n)

    def tilde_imaginary_generator(self):
        """Minimal positive imaginary coroot of the rescaled system, in the
        ambient coweight coordinates."""
        cls = self.tilde_classification
        if cls.kind != cartan.AFFINE:
            raise RootDatumError("imaginary coroots exist only in affine type")
        v = [0] * self.base.dim
        for i, c in enumerate(cls.delta_dual):
            v[i] = c * self.n_i[i]
        return tuple(v)

    def to_json(self):
        out = self.base.to_json()
        out.update(self.q_form.to_json())
        out["n"] = self.n
        return out


def metaplectic(datum, q_form, n):
    return MetaplecticDatum(datum, q_form, n)


def _smith_normal_form(mat):
    """(d, u, v) with u*mat*v = d diagonal; exact integer row/col reduction."""
    a = [list(row) for row in mat]
    nr, nc = len(a), len(a[0])
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_op(i, j, f):  # row_i -= f * row_j
        a[i] = [x - f * y for x, y in zip(a[i], a[j])]
        u[i] = [x - f * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, f):  # col_i -= f * col_j
        for row in a:
            row[i] -= f * row[j]
        for row in v:
            row[i] -= f * row[j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(nr, nc):
        piv = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    f = a[i][t] // a[t][t]
                    row_op(i, t, f)
                    if a[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    f = a[t][j] // a[t][t]
                    col_op(j, t, f)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
        t += 1
    d = [a[i][i] if i < nc else 0 for i in range(min(nr, nc))]
    return d, u, v


def _congruence_kernel_basis(b, n):
    """Basis of {y in Z^e : b y == 0 mod n} as tuples."""
    e = len(b)
    d, _u, v = _smith_normal_form(b)
    basis = []
    for i in range(e):
        di = d[i] if i < len(d) else 0
        scale = n // gcd(di % n if di else 0, n) if (di % n if di else 0) else 1
        col = tuple(v[k][i] * scale for k in range(e))
        basis.append(col)
    return tuple(basis)


# Golden data from the affine rescaling table: family -> rules keyed by n.
# Each rule maps n to the label (with the ranks substituted downstream).
def metaplectic_type_table(family, rank, n):
    """Expected type label of the rescaled Cartan matrix for an affine family
    carrying the standard form and cover degree n."""
    l = rank
    if family == "A1(1)":
        return "A1(1)"
    if family == "A(1)":
        return cartan.affine_label("A(1)", l)
    if family == "B(1)":
        return cartan.affine_label("B(1)", l) if n % 2 else cartan.affine_label("A2l-1(2)", l)
    if family == "C(1)":
        return cartan.affine_label("C(1)", l) if n % 2 else cartan.affine_label("Dl+1(2)", l)
    if family == "D(1)":
        return cartan.affine_label("D(1)", l)
    if family in ("E6(1)", "E7(1)", "E8(1)"):
        return family
    if family == "F4(1)":
        return "F4(1)" if n % 2 else "E6(2)"
    if family == "G2(1)":
        return "G2(1)" if n % 3 else "D4(3)"
    if family == "A2(2)":
        if n % 2:
            return "A2(2)"
        return "A2(2)" if n % 4 == 0 else "A1(1)"
    if family == "A2l(2)":
        if n % 2:
            return cartan.affine_label("A2l(2)", l)
        if n % 4 == 0:
            return cartan.affine_label("A2l(2)", l)
        return cartan.affine_label("Dl+1(2)", l)
    if family == "A2l-1(2)":
        return cartan.affine_label("A2l-1(2)", l) if n % 2 else cartan.affine_label("B(1)", l)
    if family == "Dl+1(2)":
        return cartan.affine_label("Dl+1(2)", l) if n % 2 else cartan.affine_label("C(1)", l)
    if family == "E6(2)":
        return "E6(2)" if n % 2 else "F4(1)"
    if family == "D4(3)":
        return "D4(3)" if n % 3 else "G2(1)"
    raise RootDatumError("unknown affine family %r" % (family,))


def datum_from_json(doc):
    """Rebuild (datum, form, n) from {"cartan": ..., "form": ..., "n": ...}."""
    datum = RootDatum(cartan.GCM(doc["cartan"]))
    if "form" in doc and doc["form"] is not None:
        form = QuadraticForm(datum, doc["form"])
    else:
        form = standard_form(datum)
    n = int(doc.get("n", 1))
    return datum, form, n
