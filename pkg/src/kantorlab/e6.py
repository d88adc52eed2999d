"""E6 from the exterior algebra of a rank-6 form space, and the pairs it envelops.

Exterior elements are stored in the display basis: v_S+ is the ascending
product of the v_i+, v_S- the descending product of the v_i-, so that
v_S- . v_T+ = [S == T] when |S| = |T|.  Computation happens on ascending
monomials; display_sign is the only place the two bases meet.  Subsets are
0-based tuples internally and printed 1-based.
"""
from fractions import Fraction
from itertools import combinations

from .bc2 import element, s1_obstruction_report, theta_image
from .exact_linalg import coordinates, kernel_basis, rank
from .lie import GradedLieAlgebra, change_basis, is_homomorphism, with_degrees
from .pairs import MINUS, PLUS, SIGNS, SIGN_CHAR, PairMap, TrilinearPair, opposite_pair

N = 6
FULL = tuple(range(N))
TRIPLES = list(combinations(range(N), 3))


def display_sign(sign, k):
    """v_S^sign = display_sign * (ascending monomial) for |S| = k."""
    if sign == MINUS and (k * (k - 1) // 2) % 2:
        return -1
    return 1


def subset_name(s):
    return "".join(str(i + 1) for i in s)


class ExtElement:
    """sum_S c_S v_S^sign in the display basis."""

    def __init__(self, field, sign, terms):
        self.field = field
        self.sign = sign
        self.terms = {tuple(sorted(s)): field(c) for s, c in terms.items()}
        self.terms = {s: c for s, c in self.terms.items() if c}

    @classmethod
    def basis(cls, field, sign, subset):
        return cls(field, sign, {tuple(subset): 1})

    @classmethod
    def scalar(cls, field, sign, c):
        return cls(field, sign, {(): c})

    def __eq__(self, other):
        return isinstance(other, ExtElement) and self.sign == other.sign and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"{self.field.to_str(c)}*v{SIGN_CHAR[self.sign]}[{subset_name(s)}]"
                          for s, c in sorted(self.terms.items()))
        return f"ExtElement({body or '0'})"

    def __add__(self, other):
        if other.sign != self.sign:
            raise ValueError("sign mismatch")
        t = dict(self.terms)
        for s, c in other.terms.items():
            t[s] = t.get(s, self.field.zero) + c
        return ExtElement(self.field, self.sign, t)

    def scale(self, c):
        return ExtElement(self.field, self.sign, {s: c * v for s, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {len(s) for s in self.terms}

    def scalar_part(self):
        return self.terms.get((), self.field.zero)

    def to_mono(self):
        return {s: c * display_sign(self.sign, len(s)) for s, c in self.terms.items()}

    @classmethod
    def from_mono(cls, field, sign, mono):
        return cls(field, sign, {s: c * display_sign(sign, len(s)) for s, c in mono.items()})


def _acc(d, key, c):
    v = d.get(key)
    d[key] = c if v is None else v + c


def _sort_sign(seq):
    """(sign, sorted tuple) of a sequence of distinct indices, or (0, None) on a repeat."""
    if len(set(seq)) != len(seq):
        return 0, None
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def _wedge_mono(a, b):
    out = {}
    for s, c in a.items():
        for t, d in b.items():
            sg, u = _sort_sign(s + t)
            if sg:
                _acc(out, u, c * d * sg)
    return {k: v for k, v in out.items() if v}


def _delta_one(pair_row, mono):
    """Anti-derivation of degree -1 with v_j -> pair_row[j]."""
    out = {}
    for s, c in mono.items():
        for m, j in enumerate(s):
            p = pair_row[j]
            if p:
                _acc(out, s[:m] + s[m + 1:], c * p * (-1 if m % 2 else 1))
    return {k: v for k, v in out.items() if v}


def _pair_rows(g, acting_sign):
    """rows[t][j] = g(v_t, v_j) for v_t of sign acting_sign acting on the opposite algebra."""
    if acting_sign == MINUS:
        return [[g[t, j] for j in range(N)] for t in range(N)]
    return [[g[j, t] for j in range(N)] for t in range(N)]


def _derivation_mono(a, mono, field):
    """D_A on ascending monomials; A[r, c] is the v_r coefficient of A v_c."""
    out = {}
    for s, c in mono.items():
        for m, j in enumerate(s):
            for r in range(N):
                x = a[r, j]
                if not x:
                    continue
                seq = s[:m] + (r,) + s[m + 1:]
                sg, u = _sort_sign(seq)
                if sg:
                    _acc(out, u, c * x * sg)
    return {k: v for k, v in out.items() if v}


def _unpack(field, g):
    """Accept a Field with an optional g, or a rank-6 FormSpace."""
    if hasattr(field, "g") and hasattr(field, "field"):
        fs = field
        if fs.e is not None:
            unit = fs.field.unit(N, 0)
            if fs.e[MINUS] != unit or fs.e[PLUS] != unit:
                raise ValueError("only e = (v1-, v1+) is supported")
        return fs.field, fs.g
    return field, g


class ExteriorContext:
    """The form g on M- x M+ of rank 6 together with the derived operations."""

    def __init__(self, field, g=None):
        field, g = _unpack(field, g)
        self.field = field
        self.g = field.identity(N) if g is None else (g if hasattr(g, "nrows") else field.matrix(g))
        if self.g.nrows() != N or self.g.ncols() != N or rank(self.g) != N:
            raise ValueError("need a non-singular 6 x 6 form")
        self.ginv = self.g.inv()
        self._rows = {s: _pair_rows(self.g, s) for s in SIGNS}

    def adjoint(self, sign, a):
        """A* in End(M^-sign) for A in End(M^sign)."""
        g, gi = self.g, self.ginv
        if sign == PLUS:
            return gi.transpose() * a.transpose() * g.transpose()
        return gi * a.transpose() * g


def ext_product(x, y):
    if x.sign != y.sign:
        raise ValueError("sign mismatch")
    return ExtElement.from_mono(x.field, x.sign, _wedge_mono(x.to_mono(), y.to_mono()))


def inner_action(ctx, a, x):
    """a . x for a in the exterior algebra of the opposite sign."""
    if a.sign == x.sign:
        raise ValueError("inner action needs opposite signs")
    rows = ctx._rows[a.sign]
    out = {}
    xm = x.to_mono()
    for t, c in a.to_mono().items():
        cur = xm
        for idx in reversed(t):
            cur = _delta_one(rows[idx], cur)
            if not cur:
                break
        for s, v in cur.items():
            _acc(out, s, c * v)
    return ExtElement.from_mono(x.field, x.sign, {k: v for k, v in out.items() if v})


def pairing(ctx, x, a):
    """The scalar x . a for equal degrees."""
    return inner_action(ctx, x, a).scalar_part()


class STilde:
    """(-(A+)*, A+) + a*h0."""

    def __init__(self, field, a_plus, h0=0):
        self.field = field
        self.a_plus = a_plus
        self.h0 = field(h0)

    def __eq__(self, other):
        return isinstance(other, STilde) and self.a_plus == other.a_plus and self.h0 == other.h0

    def __repr__(self):
        return f"STilde(h0={self.h0}, A+={self.a_plus.entries()})"

    def __add__(self, other):
        return STilde(self.field, self.a_plus + other.a_plus, self.h0 + other.h0)

    def scale(self, c):
        return STilde(self.field, self.a_plus * c, self.h0 * c)

    def is_zero(self):
        return not any(self.a_plus.entries()) and not self.h0

    @classmethod
    def iota(cls, field, a_plus):
        return cls(field, a_plus, 0)

    @classmethod
    def unit(cls, field, i, j):
        m = field.zeros(N, N)
        m[i, j] = field.one
        return cls(field, m, 0)

    @classmethod
    def h0_elem(cls, field):
        return cls(field, field.zeros(N, N), 1)


def matrix_circ(a, x):
    """A o x: the derivation extending A in End(M^sign)."""
    return ExtElement.from_mono(x.field, x.sign, _derivation_mono(a, x.to_mono(), x.field))


def circ_action(ctx, s, x):
    """S~ acting on the exterior algebra of either sign."""
    a = s.a_plus if x.sign == PLUS else -ctx.adjoint(PLUS, s.a_plus)
    out = matrix_circ(a, x)
    if s.h0:
        degs = x.degrees()
        if any(k % 3 for k in degs):
            raise ValueError("h0 acts only on degrees 0, 3, 6")
        extra = ExtElement(x.field, x.sign, {t: c * s.h0 * x.sign * (len(t) // 3) for t, c in x.terms.items()})
        out = out + extra
    return out


def e_operator(ctx, x, a):
    """E^sign(x, a) v = (v . a) . x as a 6 x 6 matrix on M^sign."""
    f = x.field
    if x.sign == a.sign:
        raise ValueError("E-operator needs opposite signs")
    if x.degrees() - {0} and a.degrees() and x.degrees() != a.degrees():
        raise ValueError("E-operator needs equal degrees")
    m = f.zeros(N, N)
    for j in range(N):
        v = ExtElement.basis(f, x.sign, (j,))
        w = inner_action(ctx, inner_action(ctx, v, a), x)
        for s, c in w.terms.items():
            if len(s) != 1:
                raise ValueError("E-operator needs equal degrees")
            m[s[0], j] = c
    return m


def e_pair(ctx, x, y):
    """E(x, y) in S~ for x, y of opposite signs (E(x+, x-) = -E(x-, x+))."""
    if x.sign == PLUS:
        return e_pair(ctx, y, x).scale(-ctx.field.one)
    # E(x-, x+) has + component -E+(x+, x-)
    return STilde(ctx.field, -e_operator(ctx, y, x), 0)


# the 79-dimensional algebra


def _tilde_basis():
    """Basis labels in order: v-[123456], v-S, E_ij row-major, h0, v+S, v+[123456]."""
    lab = [("v", MINUS, FULL)]
    lab += [("v", MINUS, s) for s in TRIPLES]
    lab += [("E", i, j) for i in range(N) for j in range(N)]
    lab += [("h0",)]
    lab += [("v", PLUS, s) for s in TRIPLES]
    lab += [("v", PLUS, FULL)]
    return lab


def _label_name(lab):
    if lab[0] == "v":
        return f"v{SIGN_CHAR[lab[1]]}{subset_name(lab[2])}"
    if lab[0] == "E":
        return f"E{lab[1] + 1}{lab[2] + 1}"
    if lab[0] == "h":
        return f"h{lab[1]}"
    return "h0"


def _degree_of(lab):
    if lab[0] == "v":
        return (lab[1] * (len(lab[2]) // 3), 0)
    return (0, 0)


def _component(ctx, lab):
    f = ctx.field
    if lab[0] == "v":
        return ("x", ExtElement.basis(f, lab[1], lab[2]))
    if lab[0] == "E":
        return ("s", STilde.unit(f, lab[1], lab[2]))
    return ("s", STilde.h0_elem(f))


def tilde_bracket(ctx, a, b):
    """[a, b] of homogeneous components ('x', ExtElement) or ('s', STilde)."""
    f = ctx.field
    ka, xa = a
    kb, xb = b
    if ka == "s" and kb == "s":
        return ("s", STilde(f, xa.a_plus * xb.a_plus - xb.a_plus * xa.a_plus, 0))
    if ka == "s":
        return ("x", circ_action(ctx, xa, xb))
    if kb == "s":
        r = circ_action(ctx, xb, xa)
        return ("x", r.scale(-f.one))
    da, db = max(xa.degrees()), max(xb.degrees())
    if xa.sign == xb.sign:
        if da == 3 and db == 3:
            return ("x", ext_product(xa, xb))
        return None
    if da == db == 3:
        # [p-1, q1] = E(p-1, q1) + (p-1 . q1) h0
        if xa.sign == MINUS:
            e = e_pair(ctx, xa, xb)
            return ("s", STilde(f, e.a_plus, pairing(ctx, xa, xb)))
        r = tilde_bracket(ctx, b, a)
        return ("s", r[1].scale(-f.one))
    if da == db == 6:
        # [p-2, q2] = -(p . q)(h_M - 2 h0)
        if xa.sign == MINUS:
            c = pairing(ctx, xa, xb)
            return ("s", STilde(f, f.identity(N) * (-c), 2 * c))
        r = tilde_bracket(ctx, b, a)
        return ("s", r[1].scale(-f.one))
    if da == 3 and db == 6:
        return ("x", inner_action(ctx, xa, xb))
    if da == 6 and db == 3:
        return ("x", inner_action(ctx, xb, xa).scale(-f.one))
    return None


class TildeCoords:
    def __init__(self, labels):
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}

    def vector(self, field, comp):
        v = [field.zero] * len(self.labels)
        if comp is None:
            return v
        kind, x = comp
        if kind == "x":
            for s, c in x.terms.items():
                v[self.index[("v", x.sign, s)]] += c
        else:
            for i in range(N):
                for j in range(N):
                    c = x.a_plus[i, j]
                    if c:
                        v[self.index[("E", i, j)]] += c
            v[self.index[("h0",)]] += x.h0
        return v


def build_e_tilde(field, g=None):
    """The 79-dimensional 5-graded algebra; returns (algebra, labels, ctx)."""
    ctx = ExteriorContext(field, g)
    field = ctx.field
    labels = _tilde_basis()
    co = TildeCoords(labels)
    comps = [_component(ctx, lab) for lab in labels]
    brackets = {}
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            r = tilde_bracket(ctx, comps[a], comps[b])
            if r is None:
                continue
            v = co.vector(field, r)
            out = {k: c for k, c in enumerate(v) if c}
            if out:
                brackets[(a, b)] = out
    degs = [_degree_of(lab) for lab in labels]
    alg = GradedLieAlgebra(field, len(labels), degs, brackets, [_label_name(x) for x in labels], "Z")
    return alg, labels, ctx


def _e_rows(field, labels):
    """78 rows in E~ coordinates: v-, h1..h6, off-diagonal E_ij, v+ (row-major)."""
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    rows, names, e_labels = [], [], []

    def unit(lab):
        return field.unit(n, idx[lab])

    for lab in labels:
        if lab[0] == "v" and lab[1] == MINUS:
            rows.append(unit(lab))
            e_labels.append(lab)
    for i in range(5):
        r = [field.zero] * n
        r[idx[("E", i, i)]] = field.one
        r[idx[("E", i + 1, i + 1)]] = -field.one
        rows.append(r)
        e_labels.append(("h", i + 1))
    r = [field.zero] * n
    for i in (3, 4, 5):
        r[idx[("E", i, i)]] = field.one
    r[idx[("h0",)]] = -field.one
    rows.append(r)
    e_labels.append(("h", 6))
    for i in range(N):
        for j in range(N):
            if i != j:
                rows.append(unit(("E", i, j)))
                e_labels.append(("E", i, j))
    for lab in labels:
        if lab[0] == "v" and lab[1] == PLUS:
            rows.append(unit(lab))
            e_labels.append(lab)
    names = [_label_name(x) for x in e_labels]
    return rows, names, e_labels


class E6Algebra:
    def __init__(self, algebra, labels, rows, tilde, tilde_labels, ctx):
        self.algebra = algebra
        self.labels = labels
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.rows = rows
        self.tilde = tilde
        self.tilde_labels = tilde_labels
        self.ctx = ctx

    @property
    def field(self):
        return self.algebra.field

    def __repr__(self):
        return f"E6Algebra(dim={self.algebra.dim}, {self.field.name})"

    def pair_embedding(self):
        return {s: [i for i, lab in enumerate(self.labels) if lab[0] == "v" and lab[1] == s and len(lab[2]) == 3]
                for s in SIGNS}

    def h_indices(self):
        return [self.index[("h", i)] for i in range(1, 7)]


def lambda_functional(field, labels, v):
    """tr(A+) + 3a on the degree-0 part of an E~ vector."""
    tot = field.zero
    for i, lab in enumerate(labels):
        if lab[0] == "E" and lab[1] == lab[2]:
            tot += v[i]
        elif lab[0] == "h0":
            tot += 3 * v[i]
    return tot


def build_e(field, g=None, tilde=None):
    """The 78-dimensional ideal cut out by the trace functional, in the basis h_i, E_ij, v_S."""
    if tilde is None:
        tilde = build_e_tilde(field, g)
    lt, labels, ctx = tilde
    field = ctx.field
    rows, names, e_labels = _e_rows(field, labels)
    for r in rows:
        if lt.degrees[next(i for i, c in enumerate(r) if c)][0] == 0 and lambda_functional(field, labels, r):
            raise ValueError("basis row outside the kernel of the trace functional")
    degs = [_degree_of(lab) if lab[0] == "v" else (0, 0) for lab in e_labels]
    alg = change_basis(lt, rows, degs, names, "Z")
    return E6Algebra(alg, e_labels, rows, lt, labels, ctx)


def lambda_on_brackets(tilde):
    """True if the trace functional vanishes on every bracket landing in degree 0."""
    lt, labels, _ = tilde
    f = lt.field
    zero_idx = [i for i, d in enumerate(lt.degrees) if d[0] == 0]
    for (a, b), vec in lt.brackets.items():
        if lt.degrees[a][0] + lt.degrees[b][0] != 0:
            continue
        v = [f.zero] * lt.dim
        for k, c in vec.items():
            v[k] = c
        if any(v[i] for i in range(lt.dim) if i not in zero_idx):
            return False
        if lambda_functional(f, labels, v):
            return False
    return True


# roots and the Chevalley basis


def _require_standard(e6):
    f = e6.field
    if e6.ctx.g != f.identity(N):
        raise ValueError("root data are implemented for the dual standard bases (g = identity)")
    if f.p != 0:
        raise ValueError("root decomposition needs characteristic 0")


class RootData:
    def __init__(self, roots, simple, cartan, cartan_from_h, h_values):
        self.roots = roots  # list of dicts
        self.simple = simple
        self.cartan = cartan
        self.cartan_from_h = cartan_from_h
        self.h_values = h_values

    def by_eps(self):
        return {r["eps"]: r for r in self.roots}


def _to_fraction(c):
    return Fraction(int(c.p), int(c.q))


def _eps_coords(vals):
    """Solve mu(h_i) = vals for mu = sum c_i eps_i."""
    # c1 - c2 = v1, ..., c5 - c6 = v5, c4 + c5 + c6 - (c1 + ... + c6)/3 = v6
    m = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(5):
        m[i][i], m[i][i + 1] = Fraction(1), Fraction(-1)
    for j in range(6):
        m[5][j] = Fraction(-1, 3) + (1 if j >= 3 else 0)
    aug = [m[i] + [Fraction(vals[i])] for i in range(6)]
    for col in range(6):
        piv = next(r for r in range(col, 6) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(6):
            if r != col and aug[r][col]:
                fac = aug[r][col]
                aug[r] = [x - fac * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][6] for i in range(6))


SIMPLE_EPS = (
    (1, -1, 0, 0, 0, 0),
    (0, 1, -1, 0, 0, 0),
    (0, 0, 1, -1, 0, 0),
    (0, 0, 0, 1, -1, 0),
    (0, 0, 0, 0, 1, -1),
    (0, 0, 0, 1, 1, 1),
)
E6_CARTAN = (
    (2, -1, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0),
    (0, -1, 2, -1, 0, -1),
    (0, 0, -1, 2, -1, 0),
    (0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 2),
)


def _simple_coords(eps):
    """k with eps = sum k_j mu_j (exact)."""
    m = [[Fraction(SIMPLE_EPS[j][i]) for j in range(6)] + [Fraction(eps[i])] for i in range(6)]
    for col in range(6):
        piv = next(r for r in range(col, 6) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(6):
            if r != col and m[r][col]:
                fac = m[r][col]
                m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
    return tuple(m[i][6] for i in range(6))


def _family(eps):
    e = [int(x) for x in eps]
    if sorted(e) == [-1, 0, 0, 0, 0, 1]:
        return "48", ("E", e.index(1), e.index(-1))
    for s in SIGNS:
        if sorted(x * s for x in e) == [0, 0, 0, 1, 1, 1]:
            return "49", ("v", s, tuple(i for i in range(6) if e[i] == s))
        if all(x == s for x in e):
            return "50", ("v", s, FULL)
    return None, None


def root_decomposition(e6):
    """Eigen-decomposition of ad h1..h6 on the basis, with exact kernel checks."""
    _require_standard(e6)
    l = e6.algebra
    f = l.field
    hs = e6.h_indices()
    h_values = {}
    for b in range(l.dim):
        vals = []
        for h in hs:
            out = l.basis_bracket(h, b)
            if any(k != b for k in out):
                raise ValueError("basis vector is not an eigenvector of the Cartan subalgebra")
            vals.append(out.get(b, f.zero))
        h_values[b] = tuple(vals)
    ads = [l.ad(h) for h in hs]
    roots = []
    seen = {}
    for b in range(l.dim):
        vals = h_values[b]
        if not any(vals):
            continue
        # eigenspace dimension: kernel of the stacked ad h_i - a_i
        stack = f.zeros(6 * l.dim, l.dim)
        for t, (ad, a) in enumerate(zip(ads, vals)):
            for r in range(l.dim):
                for c in range(l.dim):
                    x = ad[r, c] - (a if r == c else 0)
                    if x:
                        stack[t * l.dim + r, c] = x
        dim = kernel_basis(stack).dim
        eps = _eps_coords([_to_fraction(v) for v in vals])
        fam, expect = _family(eps)
        roots.append({
            "index": b,
            "name": l.names[b],
            "h_values": tuple(_to_fraction(v) for v in vals),
            "eps": eps,
            "simple": _simple_coords(eps),
            "space_dim": dim,
            "family": fam,
            "vector_matches": fam is not None and e6.labels[b] == expect,
        })
        seen[eps] = seen.get(eps, 0) + 1
    by_eps = {r["eps"]: r for r in roots}
    simple = [by_eps.get(tuple(Fraction(x) for x in s)) for s in SIMPLE_EPS]
    if any(s is None for s in simple):
        raise ValueError("a simple root is missing")
    eps_set = set(by_eps)

    def string(a, b):
        r = 0
        while tuple(x - (r + 1) * y for x, y in zip(a, b)) in eps_set:
            r += 1
        q = 0
        while tuple(x + (q + 1) * y for x, y in zip(a, b)) in eps_set:
            q += 1
        return r - q

    cartan = tuple(tuple(2 if i == j else string(simple[i]["eps"], simple[j]["eps"]) for j in range(6))
                   for i in range(6))
    # second route: mu_i(h_{mu_j}) with h_mu = [x_mu, x_-mu]
    cartan_h = []
    for i in range(6):
        row = []
        for j in range(6):
            hm = _h_mu(e6, simple[j]["index"], by_eps)
            xi = simple[i]["index"]
            br = _bracket_vec(l, hm, xi)
            row.append(_to_fraction(br[xi]))
        cartan_h.append(tuple(int(x) for x in row))
    return RootData(roots, simple, cartan, tuple(cartan_h), h_values)


def _bracket_vec(l, x, b):
    """[x, e_b] for a vector x."""
    f = l.field
    out = [f.zero] * l.dim
    for a, c in enumerate(x):
        if c:
            for k, v in l.basis_bracket(a, b).items():
                out[k] += c * v
    return out


def _neg_index(by_eps, e6, b):
    eps = next(r["eps"] for r in by_eps.values() if r["index"] == b)
    return by_eps[tuple(-x for x in eps)]["index"]


def _h_mu(e6, b, by_eps):
    l = e6.algebra
    nb = _neg_index(by_eps, e6, b)
    out = [l.field.zero] * l.dim
    for k, v in l.basis_bracket(b, nb).items():
        out[k] = v
    return out


def chevalley_involution_matrix(e6):
    """Matrix (columns = images) of the map swapping the two exterior sides.

    Built componentwise: ascending monomials move to the other sign, (A-, A+)
    becomes (A+, A-) and h0 goes to -h0; the result is read back in the
    display basis.
    """
    f = e6.field
    lt_labels = e6.tilde_labels
    co = TildeCoords(lt_labels)
    n = len(lt_labels)
    tilde_map = f.zeros(n, n)
    for c, lab in enumerate(lt_labels):
        kind, x = _component(e6.ctx, lab)
        if kind == "x":
            img = ExtElement.from_mono(f, -x.sign, x.to_mono())
            comp = ("x", img)
        elif lab[0] == "E":
            # iota+(A) = (-A^T, A) -> (A, -A^T) = iota+(-A^T)
            comp = ("s", STilde(f, -e6.ctx.adjoint(PLUS, x.a_plus), 0))
        else:
            comp = ("s", STilde(f, f.zeros(N, N), -1))
        v = co.vector(f, comp)
        for r in range(n):
            if v[r]:
                tilde_map[r, c] = v[r]
    # restrict to the 78-dim basis
    rows = f.matrix(e6.rows, n)
    images = (tilde_map * rows.transpose()).transpose()
    co78 = coordinates(f, rows, images)
    return co78.transpose()


def chevalley_checks(e6, roots=None):
    if roots is None:
        roots = root_decomposition(e6)
    l = e6.algebra
    f = l.field
    by_eps = roots.by_eps()
    a_ok = True
    for r in roots.roots:
        hm = _h_mu(e6, r["index"], by_eps)
        br = _bracket_vec(l, hm, r["index"])
        expect = [f.zero] * l.dim
        expect[r["index"]] = f(2)
        if br != expect:
            a_ok = False
    b_ok = True
    for i, s in enumerate(roots.simple):
        hm = _h_mu(e6, s["index"], by_eps)
        if hm != f.unit(l.dim, e6.index[("h", i + 1)]):
            b_ok = False
    m = chevalley_involution_matrix(e6)
    action = True
    for r in roots.roots:
        nb = by_eps[tuple(-x for x in r["eps"])]["index"]
        col = [m[k, r["index"]] for k in range(l.dim)]
        expect = [f.zero] * l.dim
        expect[nb] = -f.one
        if col != expect:
            action = False
    for h in e6.h_indices():
        col = [m[k, h] for k in range(l.dim)]
        expect = [f.zero] * l.dim
        expect[h] = -f.one
        if col != expect:
            action = False
    c_ok = action and is_homomorphism(l, l, m) and m * m == f.identity(l.dim)
    return {"a_ok": a_ok, "b_ok": b_ok, "c_ok": c_ok}


def weighted_grading(e6, weights, roots=None):
    """Z-grading by chi_p; returns (algebra, report)."""
    if roots is None:
        roots = root_decomposition(e6)
    p = [int(x) for x in weights]
    if len(p) != 6 or any(x < 0 for x in p):
        raise ValueError("need 6 non-negative integers")
    l = e6.algebra
    degs = [(0, 0)] * l.dim
    top = 0
    for r in roots.roots:
        chi = sum(k * w for k, w in zip(r["simple"], p))
        if chi.denominator != 1:
            raise ValueError("non-integral simple-root coordinates")
        degs[r["index"]] = (int(chi), 0)
    highest = max(roots.roots, key=lambda r: sum(r["simple"]))
    top = int(sum(k * w for k, w in zip(highest["simple"], p)))
    g = with_degrees(l, degs, "Z")
    dims = {}
    for d in degs:
        dims[d[0]] = dims.get(d[0], 0) + 1
    report = {
        "weights": tuple(p),
        "degree_dims": dict(sorted(dims.items())),
        "chi_highest": top,
        "criterion": top <= 2 and 1 in p,
        "five_graded": max(dims) <= 2 and dims.get(1, 0) > 0,
    }
    return g, report


def search_weights(e6, profile, roots=None, max_weight=2):
    """All weight vectors whose grading has dims (G_-2, G_-1) equal to profile (report only)."""
    from itertools import product

    if roots is None:
        roots = root_decomposition(e6)
    found = []
    for p in product(range(max_weight + 1), repeat=6):
        if not any(p):
            continue
        _, rep = weighted_grading(e6, p, roots)
        d = rep["degree_dims"]
        if rep["five_graded"] and (d.get(-2, 0), d.get(-1, 0)) == tuple(profile):
            found.append(p)
    return found


# BC2-grading and the pairs


def bc2_degree(lab):
    """BC2 degree of a basis label for g = identity and e = (v1-, v1+)."""
    if lab[0] == "v":
        s, sub = lab[1], lab[2]
        if len(sub) == 6:
            return (2 * s, s)
        return (s, s if 0 in sub else 0)
    if lab[0] == "E":
        i, j = lab[1], lab[2]
        if i == 0 and j != 0:
            return (0, 1)
        if j == 0 and i != 0:
            return (0, -1)
    return (0, 0)


def bc2_on_e(e6):
    """E with the degrees induced by e = (v1-, v1+) (dual standard bases)."""
    f = e6.field
    if e6.ctx.g != f.identity(N):
        raise ValueError("the BC2-grading is implemented for g = identity with e = (v1-, v1+)")
    l = with_degrees(e6.algebra, [bc2_degree(lab) for lab in e6.labels], "Z2")
    return E6Algebra(l, e6.labels, e6.rows, e6.tilde, e6.tilde_labels, e6.ctx)


def lambda3_pair(field, g=None, labelled=False):
    """{x y z} = E(x, y) o z - (x . y) z on the degree-3 parts, computed directly."""
    ctx = ExteriorContext(field, g)
    field = ctx.field
    if labelled and ctx.g != field.identity(N):
        raise ValueError("labels are implemented for g = identity with e = (v1-, v1+)")
    basis = {s: [ExtElement.basis(field, s, t) for t in TRIPLES] for s in SIGNS}
    pos = {t: i for i, t in enumerate(TRIPLES)}
    prods = {}
    for s in SIGNS:
        out = {}
        for i, x in enumerate(basis[s]):
            for j, y in enumerate(basis[-s]):
                e = e_operator(ctx, x, y)
                xy = pairing(ctx, x, y)
                if not any(e.entries()) and not xy:
                    continue
                for k, z in enumerate(basis[s]):
                    r = matrix_circ(e, z) + z.scale(-xy)
                    d = {pos[t]: c for t, c in r.terms.items()}
                    if d:
                        out[(i, j, k)] = d
        prods[s] = out
    labels = None
    if labelled:
        lab = [1 if 0 in t else 0 for t in TRIPLES]
        labels = {s: list(lab) for s in SIGNS}
    return TrilinearPair(field, {s: len(TRIPLES) for s in SIGNS}, prods, labels)


def u_pair(field):
    """U = (span v2..v6 in M-, span v2..v6 in M+) with g(u, v)w + g(w, v)u (g = identity)."""
    from .skew import FormSpace, u_pair_data

    return u_pair_data(FormSpace.standard(field, N))[0]


def mu_map(e6_bc2):
    """U^op -> (E_0,-1, E_0,1): v_j- -> iota+(E_1j), v_j+ -> iota+(E_j1), as a map into
    the degree +-2 parts of the s1-image (indices in algebra order)."""
    f = e6_bc2.field
    img = theta_image(e6_bc2.algebra, element("s1"))
    comps = {}
    for s in SIGNS:
        idx = [i for i, d in enumerate(img.degrees) if d[0] == 2 * s]
        pos = {b: r for r, b in enumerate(idx)}
        m = f.zeros(len(idx), N - 1)
        for j in range(1, N):
            # (U^op)^s = U^-s; U- -> E_0,1 and U+ -> E_0,-1
            lab = ("E", 0, j) if s == PLUS else ("E", j, 0)
            m[pos[e6_bc2.index[lab]], j - 1] = f.one
        comps[s] = m
    return img, PairMap(comps)


def lambda3_obstruction_report(field):
    """U^op -> (E_0,-1, E_0,1) -> J(K(reflected Lambda3)), checked as pair maps."""
    e6 = build_e(field)
    b = bc2_on_e(e6)
    uop = opposite_pair(u_pair(field))
    _, mu = mu_map(b)
    return s1_obstruction_report(b.algebra, uop, mu)
