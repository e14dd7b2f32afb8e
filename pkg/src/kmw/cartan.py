"""Generalized Cartan matrices: validation, classification, symmetrization,
and the sixteen affine families with their null-vector data.

Conventions: a_ij = <y_i, x_j> (coroot paired against root).  For affine
families the finite-type nodes come first (1..l in mathematical numbering)
and the affine node is last.  All arithmetic is exact (int / Fraction).
"""

from fractions import Fraction
from math import gcd

import networkx as nx


class CartanError(ValueError):
    pass


def _as_matrix(entries):
    m = tuple(tuple(int(x) for x in row) for row in entries)
    size = len(m)
    if any(len(row) != size for row in m):
        raise CartanError("matrix is not square")
    return m


class GCM:
    """A generalized Cartan matrix (integer entries, immutable)."""

    def __init__(self, entries):
        m = _as_matrix(entries)
        for i, row in enumerate(m):
            if row[i] != 2:
                raise CartanError("diagonal entry a_%d%d = %d != 2" % (i, i, row[i]))
            for j, a in enumerate(row):
                if i == j:
                    continue
                if a > 0:
                    raise CartanError("off-diagonal entry a_%d%d = %d > 0" % (i, j, a))
                if (a == 0) != (m[j][i] == 0):
                    raise CartanError(
                        "vanishing pattern broken: a_%d%d = %d but a_%d%d = %d"
                        % (i, j, a, j, i, m[j][i]))
        self.entries = m
        self.size = len(m)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, GCM) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "GCM(%r)" % (list(list(r) for r in self.entries),)

    def dual(self):
        """Transpose matrix; swaps roots and coroots."""
        return GCM(tuple(zip(*self.entries)))

    def components(self):
        """Index sets of the connected components of the Dynkin graph."""
        seen, comps = set(), []
        for start in range(self.size):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(self.size):
                    if j not in seen and self.entries[i][j] != 0 and i != j:
                        seen.add(j)
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def submatrix(self, idx):
        return GCM(tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def is_indecomposable(self):
        return len(self.components()) == 1

    def to_json(self):
        return {"cartan": [list(r) for r in self.entries]}


def _det(rows):
    """Exact determinant by fraction-free elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def rational_kernel(rows):
    """Basis of the rational kernel of an integer matrix (list of Fraction tuples)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    a = [[Fraction(x) for x in row] for row in rows]
    pivots = []
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
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for rr, pc in enumerate(pivots):
            v[pc] = -a[rr][fc]
        basis.append(tuple(v))
    return basis


def primitive_integer_vector(frac_vec):
    """Scale a rational vector to a primitive integer vector with positive first entry."""
    from functools import reduce
    denoms = [f.denominator for f in frac_vec]
    lcm = reduce(lambda x, y: x * y // gcd(x, y), denoms, 1)
    ints = [int(f * lcm) for f in frac_vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise CartanError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


FINITE, AFFINE, INDEFINITE = "finite", "affine", "indefinite"


class Classification:
    """Type of a GCM: kind plus, for affine, the primitive null vectors."""

    def __init__(self, kind, delta=None, delta_dual=None, per_component=None):
        self.kind = kind
        self.delta = delta
        self.delta_dual = delta_dual
        self.per_component = per_component

    def __repr__(self):
        if self.kind == AFFINE:
            return "Classification(affine, delta=%r)" % (self.delta,)
        return "Classification(%s)" % self.kind


def _classify_indecomposable(gcm):
    n = gcm.size
    # all principal minors positive <=> finite type
    from itertools import combinations
    finite = True
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = [[gcm.entries[i][j] for j in idx] for i in idx]
            if _det(sub) <= 0:
                finite = False
                break
        if not finite:
            break
    if finite:
        return Classification(FINITE)
    ker = rational_kernel(gcm.entries)
    if len(ker) == 1:
        delta = primitive_integer_vector(ker[0])
        if all(d > 0 for d in delta):
            ker_t = rational_kernel(list(zip(*gcm.entries)))
            delta_dual = primitive_integer_vector(ker_t[0])
            return Classification(AFFINE, delta=delta, delta_dual=delta_dual)
    return Classification(INDEFINITE)


def classify(gcm):
    """Finite / affine (with primitive positive null vector) / indefinite.

    Decomposable input is classified per component; the overall kind is the
    worst of the components (indefinite > affine > finite).
    """
    comps = gcm.components()
    if len(comps) == 1:
        return _classify_indecomposable(gcm)
    order = {FINITE: 0, AFFINE: 1, INDEFINITE: 2}
    per = []
    worst = FINITE
    for idx in comps:
        c = _classify_indecomposable(gcm.submatrix(idx))
        per.append((idx, c))
        if order[c.kind] > order[worst]:
            worst = c.kind
    return Classification(worst, per_component=tuple(per))


class Symmetrization:
    """Diagonal factors epsilon with diag(epsilon) * B = A, B symmetric rational."""

    def __init__(self, epsilon, b):
        self.epsilon = tuple(Fraction(e) for e in epsilon)
        self.b = tuple(tuple(Fraction(x) for x in row) for row in b)

    def __repr__(self):
        return "Symmetrization(epsilon=%r)" % (list(self.epsilon),)


def symmetrize(gcm):
    """Symmetrization of a symmetrizable GCM.

    Affine components are normalized so epsilon_i = d_i / d_i^vee (the two
    null vectors); other components get epsilon scaled to min 1.  Fails with
    a witness cycle if no symmetrization exists.
    """
    n = gcm.size
    eps = [None] * n
    for comp in gcm.components():
        root = comp[0]
        eps[root] = Fraction(1)
        parent = {root: None}
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or gcm.entries[i][j] == 0:
                    continue
                val = eps[i] * Fraction(gcm.entries[j][i], gcm.entries[i][j])
                if eps[j] is None:
                    eps[j] = val
                    parent[j] = i
                    stack.append(j)
                elif eps[j] != val:
                    cycle = [j, i]
                    k = parent[i]
                    while k is not None:
                        cycle.append(k)
                        k = parent[k]
                    raise CartanError(
                        "not symmetrizable: inconsistent cycle through nodes %r" % (cycle,))
        cls = _classify_indecomposable(gcm.submatrix(comp))
        if cls.kind == AFFINE:
            scale = None
            for pos, i in enumerate(comp):
                target = Fraction(cls.delta[pos], cls.delta_dual[pos])
                s = target / eps[i]
                if scale is None:
                    scale = s
                elif scale != s:
                    raise CartanError("affine null vectors inconsistent with symmetrization")
            for i in comp:
                eps[i] *= scale
        else:
            m = min(eps[i] for i in comp)
            for i in comp:
                eps[i] /= m
    b = [[Fraction(gcm.entries[i][j]) / eps[i] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if b[i][j] != b[j][i]:
                raise CartanError("symmetrization produced a non-symmetric matrix")
    return Symmetrization(eps, b)


# ---------------------------------------------------------------------------
# The sixteen affine families.  build_* return the GCM in the ordering with
# the affine node last; ranks follow the admissibility bounds of the family.

def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    return a


def finite_gcm(family, rank):
    """Finite-type Cartan matrix (A, B, C, D, E, F, G), standard node order."""
    f = family.upper()
    if f == "A" and rank >= 1:
        return GCM(_chain(rank))
    if f == "B" and rank >= 2:
        a = _chain(rank)
        a[rank - 2][rank - 1] = -1
        a[rank - 1][rank - 2] = -2
        return GCM(a)
    if f == "C" and rank >= 2:
        a = _chain(rank)
        a[rank - 2][rank - 1] = -2
        a[rank - 1][rank - 2] = -1
        return GCM(a)
    if f == "D" and rank >= 3:
        a = _chain(rank - 1)
        a = [row + [0] for row in a] + [[0] * rank]
        a[rank - 1][rank - 1] = 2
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
        return GCM(a)
    if f == "E" and rank in (6, 7, 8):
        a = _chain(rank - 1)
        a = [row + [0] for row in a] + [[0] * rank]
        a[rank - 1][rank - 1] = 2
        branch = {6: 2, 7: 2, 8: 4}[rank]
        a[branch][rank - 1] = a[rank - 1][branch] = -1
        return GCM(a)
    if f == "F" and rank == 4:
        a = _chain(4)
        a[2][1] = -2
        a[1][2] = -1
        return GCM(a)
    if f == "G" and rank == 2:
        return GCM([[2, -1], [-3, 2]])
    raise CartanError("no finite family %s_%d" % (family, rank))


_E_CHAINS = {
    # node ordering used here for E_l: chain 0..l-2 with branch node attached
    6: 2, 7: 2, 8: 4,
}


def _affine_entry_table():
    """family -> (min_rank, fixed_rank_or_None, builder(l) -> list-of-lists)."""

    def a1(l):
        return [[2, -2], [-2, 2]]

    def a_untw(l):  # A_l^(1), l >= 2: cycle
        a = _chain(l + 1)
        a[0][l] = a[l][0] = -1
        # remove the chain bond between l-1 and l, re-add: cycle is 0-1-..-(l-1), affine node l adjacent to 0 and l-1
        a[l - 1][l] = a[l][l - 1] = -1
        return a

    def b_untw(l):  # B_l^(1), l >= 3: affine node adjacent to node 2 (index 1)
        base = finite_gcm("B", l).entries
        a = [list(r) + [0] for r in base] + [[0] * (l + 1)]
        a[l][l] = 2
        a[1][l] = a[l][1] = -1
        return a

    def c_untw(l):  # C_l^(1), l >= 2: affine node double-bonded to node 1, arrow toward node 1
        base = finite_gcm("C", l).entries
        a = [list(r) + [0] for r in base] + [[0] * (l + 1)]
        a[l][l] = 2
        a[0][l] = -2
        a[l][0] = -1
        return a

    def d_untw(l):  # D_l^(1), l >= 4: affine node adjacent to node 2 (index 1)
        base = finite_gcm("D", l).entries
        a = [list(r) + [0] for r in base] + [[0] * (l + 1)]
        a[l][l] = 2
        a[1][l] = a[l][1] = -1
        return a

    def e_untw(l):  # E_l^(1): affine node adjacent to branch tip (E6) or chain start (E7, E8)
        base = finite_gcm("E", l).entries
        a = [list(r) + [0] for r in base] + [[0] * (l + 1)]
        a[l][l] = 2
        attach = {6: 5, 7: 0, 8: 0}[l]
        a[attach][l] = a[l][attach] = -1
        return a

    def f4_untw(l):
        base = finite_gcm("F", 4).entries
        a = [list(r) + [0] for r in base] + [[0] * 5]
        a[4][4] = 2
        a[0][4] = a[4][0] = -1
        return a

    def g2_untw(l):
        base = finite_gcm("G", 2).entries
        a = [list(r) + [0] for r in base] + [[0] * 3]
        a[2][2] = 2
        a[0][2] = a[2][0] = -1
        return a

    def a2_tw(l):  # A_2^(2)
        return [[2, -1], [-4, 2]]

    def a2l_tw(l):  # A_2l^(2), l >= 2
        a = _chain(l)
        a[l - 2][l - 1] = -2
        a[l - 1][l - 2] = -1
        a = [row + [0] for row in a] + [[0] * (l + 1)]
        a[l][l] = 2
        a[0][l] = -1
        a[l][0] = -2
        return a

    def a2lm1_tw(l):  # A_{2l-1}^(2), l >= 3
        a = _chain(l)
        a[l - 2][l - 1] = -2
        a[l - 1][l - 2] = -1
        a = [row + [0] for row in a] + [[0] * (l + 1)]
        a[l][l] = 2
        a[1][l] = a[l][1] = -1
        return a

    def dl1_tw(l):  # D_{l+1}^(2), l >= 2
        a = _chain(l)
        a[l - 2][l - 1] = -1
        a[l - 1][l - 2] = -2
        a = [row + [0] for row in a] + [[0] * (l + 1)]
        a[l][l] = 2
        a[0][l] = -1
        a[l][0] = -2
        return a

    def e6_tw(l):  # E_6^(2)
        a = _chain(4)
        a[1][2] = -2
        a[2][1] = -1
        a = [row + [0] for row in a] + [[0] * 5]
        a[4][4] = 2
        a[0][4] = a[4][0] = -1
        return a

    def d4_tw(l):  # D_4^(3)
        a = [[2, -3, 0], [-1, 2, 0], [0, 0, 2]]
        a[0][2] = a[2][0] = -1
        return a

    return {
        "A1(1)": (1, 1, a1),
        "A(1)": (2, None, a_untw),
        "B(1)": (3, None, b_untw),
        "C(1)": (2, None, c_untw),
        "D(1)": (4, None, d_untw),
        "E6(1)": (6, 6, e_untw),
        "E7(1)": (7, 7, e_untw),
        "E8(1)": (8, 8, e_untw),
        "F4(1)": (4, 4, f4_untw),
        "G2(1)": (2, 2, g2_untw),
        "A2(2)": (1, 1, a2_tw),
        "A2l(2)": (2, None, a2l_tw),
        "A2l-1(2)": (3, None, a2lm1_tw),
        "Dl+1(2)": (2, None, dl1_tw),
        "E6(2)": (4, 4, e6_tw),
        "D4(3)": (2, 2, d4_tw),
    }


AFFINE_FAMILIES = tuple(_affine_entry_table().keys())

# duality between family labels (transpose of the matrix)
AFFINE_DUALS = {
    "A1(1)": "A1(1)", "A(1)": "A(1)", "B(1)": "A2l-1(2)", "C(1)": "Dl+1(2)",
    "D(1)": "D(1)", "E6(1)": "E6(1)", "E7(1)": "E7(1)", "E8(1)": "E8(1)",
    "F4(1)": "E6(2)", "G2(1)": "D4(3)", "A2(2)": "A2(2)", "A2l(2)": "A2l(2)",
    "A2l-1(2)": "B(1)", "Dl+1(2)": "C(1)", "E6(2)": "F4(1)", "D4(3)": "G2(1)",
}


def affine_gcm(family, rank=None):
    """The GCM of an affine family ('A(1)', 'B(1)', ..., 'D4(3)'), affine node last.

    `rank` is the rank l of the underlying finite system (ignored for the
    fixed-rank families).
    """
    table = _affine_entry_table()
    if family not in table:
        raise CartanError("unknown affine family %r (choose from %s)"
                         % (family, ", ".join(sorted(table))))
    min_rank, fixed, builder = table[family]
    if fixed is not None:
        rank = fixed if rank is None else rank
        if rank != fixed:
            raise CartanError("family %s has fixed rank %d" % (family, fixed))
    else:
        if rank is None:
            raise CartanError("family %s needs a rank" % family)
        if rank < min_rank:
            raise CartanError("family %s needs rank >= %d" % (family, min_rank))
    return GCM(builder(rank))


class AffineData:
    """Null vectors, finite-part exponents and labels for one affine GCM."""

    def __init__(self, family, rank, gcm, delta, delta_dual, exponents):
        self.family = family
        self.rank = rank
        self.gcm = gcm
        self.delta = delta
        self.delta_dual = delta_dual
        self.exponents = exponents
        self.epsilon = tuple(Fraction(d, dv) for d, dv in zip(delta, delta_dual))

    def __repr__(self):
        return ("AffineData(%s, l=%d, delta=%r, delta_dual=%r, exponents=%r)"
                % (self.family, self.rank, self.delta, self.delta_dual, self.exponents))


def affine_table(family, rank=None):
    """Affine family data: delta, dual delta, and the exponents of the finite part.

    The null vectors are computed from exact kernels; the exponents come from
    the factorization of the finite Weyl group's length generating function.
    """
    from . import weyl
    gcm = affine_gcm(family, rank)
    l = gcm.size - 1
    cls = _classify_indecomposable(gcm)
    if cls.kind != AFFINE:
        raise CartanError("family table produced a non-affine matrix (bug)")
    if cls.delta_dual[l] != 1:
        raise CartanError("affine node coefficient of dual null vector is not 1 (bug)")
    finite_part = gcm.submatrix(tuple(range(l)))
    poly = weyl.poincare_series(finite_part)
    exponents = weyl.exponents_from_poincare(poly, l)
    return AffineData(family, l, gcm, cls.delta, cls.delta_dual, exponents)


def _dynkin_digraph(gcm):
    g = nx.DiGraph()
    for i in range(gcm.size):
        g.add_node(i)
    for i in range(gcm.size):
        for j in range(gcm.size):
            if i != j and gcm.entries[i][j] != 0:
                g.add_edge(i, j, a=gcm.entries[i][j])
    return g


def recognize_affine(gcm):
    """Match an affine GCM against the family tables, up to node relabeling.

    Returns (family, rank) or raises if no family matches.
    """
    cls = classify(gcm)
    if cls.kind != AFFINE or cls.per_component is not None:
        raise CartanError("recognition requires an indecomposable affine GCM")
    size = gcm.size
    g1 = _dynkin_digraph(gcm)
    table = _affine_entry_table()
    for family, (min_rank, fixed, _builder) in table.items():
        rank = fixed if fixed is not None else size - 1
        if rank is None or rank < min_rank or rank + 1 != size:
            continue
        cand = affine_gcm(family, rank)
        g2 = _dynkin_digraph(cand)
        matcher = nx.algorithms.isomorphism.DiGraphMatcher(
            g1, g2, edge_match=lambda e1, e2: e1["a"] == e2["a"])
        if matcher.is_isomorphic():
            return family, rank
    raise CartanError("no affine family matches this matrix")


def affine_label(family, rank):
    """Human-readable label like 'A5(2)' or 'C2(1)' for a family instance."""
    table = {
        "A1(1)": "A1(1)", "A(1)": "A%d(1)", "B(1)": "B%d(1)", "C(1)": "C%d(1)",
        "D(1)": "D%d(1)", "E6(1)": "E6(1)", "E7(1)": "E7(1)", "E8(1)": "E8(1)",
        "F4(1)": "F4(1)", "G2(1)": "G2(1)", "A2(2)": "A2(2)",
        "A2l(2)": "A%d(2)", "A2l-1(2)": "A%d(2)", "Dl+1(2)": "D%d(2)",
        "E6(2)": "E6(2)", "D4(3)": "D4(3)",
    }
    pat = table[family]
    if "%d" not in pat:
        return pat
    if family == "A2l(2)":
        return pat % (2 * rank)
    if family == "A2l-1(2)":
        return pat % (2 * rank - 1)
    if family == "Dl+1(2)":
        return pat % (rank + 1)
    return pat % rank
