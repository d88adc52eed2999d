"""Skew transformations of a hyperbolic form and the pairs they carry.

V~ = V- + V+ is stored with the V- coordinates first.  The form on V~ is
g~(v- + v+, w- + w+) = g(v-, w+) + g(w-, v+), with g(x-, y+) = x^T G y+.
"""
from .bc2 import element, s1_obstruction_report, sp_pair_from_bc2, theta_image
from .exact_linalg import Subspace, coordinates, kernel_basis, rank
from .kantor import enveloped_pair, graded_pair
from .lie import matrix_lie_algebra
from .pairs import MINUS, PLUS, SIGNS, PairMap, TrilinearPair, double_of_triple


class FormSpace:
    """Non-degenerate g on V- x V+ (n x n matrix G), optionally a pair e with g(e-, e+) = 1."""

    def __init__(self, field, g, e=None):
        self.field = field
        self.g = g if hasattr(g, "nrows") else field.matrix(g)
        self.n = self.g.nrows()
        if self.g.ncols() != self.n or rank(self.g) != self.n:
            raise ValueError("g must be square and non-singular")
        n = self.n
        self.gt = field.zeros(2 * n, 2 * n)
        for i in range(n):
            for j in range(n):
                self.gt[i, n + j] = self.g[i, j]
                self.gt[n + j, i] = self.g[i, j]
        self.e = None
        if e is not None:
            em, ep = [field(x) for x in e[0]], [field(x) for x in e[1]]
            if self.pairing(em, ep) != field.one:
                raise ValueError("need g(e-, e+) = 1")
            self.e = {MINUS: em, PLUS: ep}

    @classmethod
    def standard(cls, field, n, with_e=True):
        """Dual bases (G = I) with e = (v1-, v1+)."""
        e = (field.unit(n, 0), field.unit(n, 0)) if with_e else None
        return cls(field, field.identity(n), e)

    def pairing(self, xm, yp):
        """g(x-, y+)."""
        f = self.field
        return sum((xm[i] * self.g[i, j] * yp[j] for i in range(self.n) for j in range(self.n) if xm[i] and yp[j]),
                   f.zero)

    def g_between(self, s, u, v):
        """g(u, v) for u in V^s and v in V^-s."""
        return self.pairing(u, v) if s == MINUS else self.pairing(v, u)

    def embed(self, s, v):
        z = [self.field.zero] * self.n
        return list(v) + z if s == MINUS else z + list(v)

    def basis_vector(self, s, i):
        return self.embed(s, self.field.unit(self.n, i))

    def u_basis(self, s):
        """Basis of U^s = (e^-s)^perp inside V^s (coordinates in V^s)."""
        if self.e is None:
            raise ValueError("the form space carries no e")
        other = self.e[-s]
        row = [self.g_between(s, self.field.unit(self.n, i), other) for i in range(self.n)]
        return kernel_basis(self.field.matrix([row], self.n)).vectors()


def zeta(fs, v, w):
    """zeta(v, w)x = g~(x, w)v - g~(x, v)w, as a matrix on V~."""
    f = fs.field
    vm = f.matrix([[x] for x in v], 1)
    wm = f.matrix([[x] for x in w], 1)
    return (vm * wm.transpose() - wm * vm.transpose()) * fs.gt


def _fso_groups(fs):
    n = fs.n
    b = {s: [fs.basis_vector(s, i) for i in range(n)] for s in SIGNS}
    return [
        ((-1, 0), [zeta(fs, b[MINUS][i], b[MINUS][j]) for i in range(n) for j in range(i + 1, n)]),
        ((0, 0), [zeta(fs, b[PLUS][i], b[MINUS][j]) for i in range(n) for j in range(n)]),
        ((1, 0), [zeta(fs, b[PLUS][i], b[PLUS][j]) for i in range(n) for j in range(i + 1, n)]),
    ]


def build_fso(fs, with_matrices=False):
    """The 3-graded Lie algebra zeta(V~, V~), basis row reduced per degree."""
    l, mats = matrix_lie_algebra(fs.field, _fso_groups(fs), kind="Z")
    return (l, mats) if with_matrices else l


def fskew_pair(fs):
    """(zeta(V-, V-), zeta(V+, V+)) with products [[x, y], z]."""
    return enveloped_pair(build_fso(fs))


def _bc2_groups(fs):
    e = {s: fs.embed(s, fs.e[s]) for s in SIGNS}
    u = {s: [fs.embed(s, v) for v in fs.u_basis(s)] for s in SIGNS}
    groups = {}
    for s in SIGNS:
        us = u[s]
        groups[(s, 0)] = [zeta(fs, us[i], us[j]) for i in range(len(us)) for j in range(i + 1, len(us))]
        groups[(s, s)] = [zeta(fs, e[s], x) for x in us]
        groups[(0, s)] = [zeta(fs, e[s], x) for x in u[-s]]
    groups[(0, 0)] = [zeta(fs, x, y) for x in u[MINUS] for y in u[PLUS]] + [zeta(fs, e[MINUS], e[PLUS])]

    def key(d):
        return (d[0], d[0] * d[1]) if d[0] else (0, d[1])

    return [(d, groups[d]) for d in sorted(groups, key=key)]


def bc2_on_fso(fs, with_matrices=False):
    """zeta(V~, V~) with the BC2-grading induced by e."""
    if fs.e is None:
        raise ValueError("the form space carries no e")
    l, mats = matrix_lie_algebra(fs.field, _bc2_groups(fs), kind="Z2")
    return (l, mats) if with_matrices else l


def sp_fskew(fs):
    """FSkew with labels 0 on zeta(U, U) and 1 on zeta(e, U)."""
    return sp_pair_from_bc2(bc2_on_fso(fs))


def alternating_matrix_pair(field, n, labelled=False):
    """Double of alternating n x n matrices under ABC + CBA, basis E_ij - E_ji (i < j)."""
    idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pos = {p: t for t, p in enumerate(idx)}

    def mat(t):
        i, j = idx[t]
        m = field.zeros(n, n)
        m[i, j], m[j, i] = field.one, -field.one
        return m

    mats = [mat(t) for t in range(len(idx))]
    prods = {}
    for a in range(len(idx)):
        for b in range(len(idx)):
            ab = mats[a] * mats[b]
            if not any(ab.entries()):
                continue
            for c in range(len(idx)):
                r = ab * mats[c] + mats[c] * mats[b] * mats[a]
                out = {pos[(i, j)]: r[i, j] for (i, j) in idx if r[i, j]}
                if out:
                    prods[(a, b, c)] = out
    p = double_of_triple(field, len(idx), prods)
    if labelled:
        lab = [1 if i == 0 else 0 for i, _ in idx]
        p = p.with_labels({s: list(lab) for s in SIGNS})
    return p


def u_pair_data(fs):
    """(U, U', U'') with U on (U-, U+) in the basis of u_basis.

    U' and U'' are returned as {sign: Subspace} in U-coordinates.
    """
    f = fs.field
    ub = {s: fs.u_basis(s) for s in SIGNS}
    dims = {s: len(ub[s]) for s in SIGNS}
    bmat = {s: f.matrix(ub[s], fs.n) if ub[s] else f.zeros(0, fs.n) for s in SIGNS}

    def coords(s, vecs):
        return coordinates(f, bmat[s], f.matrix(vecs, fs.n))

    prods = {}
    for s in SIGNS:
        out = {}
        for i, x in enumerate(ub[s]):
            for j, y in enumerate(ub[-s]):
                gxy = fs.g_between(s, x, y)
                for k, z in enumerate(ub[s]):
                    gzy = fs.g_between(s, z, y)
                    if not gxy and not gzy:
                        continue
                    vec = [gxy * z[t] + gzy * x[t] for t in range(fs.n)]
                    c = coords(s, [vec])
                    d = {a: c[0, a] for a in range(dims[s]) if c[0, a]}
                    if d:
                        out[(i, j, k)] = d
        prods[s] = out
    upair = TrilinearPair(f, dims, prods)

    prime = {}
    for s in SIGNS:
        vecs = []
        us = [fs.embed(s, v) for v in ub[s]]
        for a in range(len(us)):
            for b in range(a + 1, len(us)):
                z = zeta(fs, us[a], us[b])
                for w in ub[-s]:
                    col = fs.embed(-s, w)
                    img = [sum((z[r, c] * col[c] for c in range(2 * fs.n) if col[c]), f.zero)
                           for r in range(2 * fs.n)]
                    part = img[:fs.n] if s == MINUS else img[fs.n:]
                    if any(part):
                        vecs.append(part)
        cs = coords(s, vecs) if vecs else f.zeros(0, dims[s])
        prime[s] = Subspace.from_vectors(f, dims[s], [[cs[r, c] for c in range(dims[s])] for r in range(cs.nrows())])
    dprime = {}
    for s in SIGNS:
        # u in U'^s with g(u, U'^-s) = 0
        rows = []
        for w in prime[-s].vectors():
            wv = [sum((w[t] * ub[-s][t][c] for t in range(dims[-s])), f.zero) for c in range(fs.n)]
            rows.append([fs.g_between(s, ub[s][t], wv) for t in range(dims[s])])
        perp = kernel_basis(f.matrix(rows, dims[s])) if rows else Subspace.full(f, dims[s])
        dprime[s] = perp.intersect(prime[s])
    return upair, prime, dprime


def lambda_map(fs, algebra=None, mats=None):
    """omega^s(u) = s zeta(e^s, u) for u in U^-s, into the (2s)-components of the s1-image.

    Returns (U^op, target pair, PairMap).  With the s1-image E of the
    BC2-graded zeta(V~, V~), the target is (E_-2, E_2) = (L_0,-1, L_0,1).
    """
    f = fs.field
    if algebra is None:
        algebra, mats = bc2_on_fso(fs, with_matrices=True)
    upair, _, _ = u_pair_data(fs)
    from .pairs import opposite_pair

    uop = opposite_pair(upair)
    img = theta_image(algebra, element("s1"))
    target = graded_pair(img, 2)
    comps = {}
    for s in SIGNS:
        idx = [i for i, d in enumerate(img.degrees) if d[0] == 2 * s]
        basis = f.matrix([mats[i].entries() for i in idx], 4 * fs.n * fs.n) if idx else None
        cols = []
        for u in fs.u_basis(-s):
            z = zeta(fs, fs.embed(s, fs.e[s]), fs.embed(-s, u))
            z = z * f(s)
            cols.append(coordinates(f, basis, f.matrix([z.entries()], 4 * fs.n * fs.n)))
        m = f.zeros(len(idx), len(cols))
        for c, v in enumerate(cols):
            for r in range(len(idx)):
                m[r, c] = v[0, r]
        comps[s] = m
    return uop, target, PairMap(comps)


def obstruction_report(fs):
    """Compare J of the reflected FSkew with U^op through the s1-image of zeta(V~, V~).

    The map checked is U^op -> (E_-2, E_2) -> J(K(FSkew reflected)), the second
    arrow being the canonical isomorphism E -> K restricted to degrees +-2.
    """
    algebra, mats = bc2_on_fso(fs, with_matrices=True)
    uop, _, omega = lambda_map(fs, algebra, mats)
    rep = s1_obstruction_report(algebra, uop, omega)
    return {
        "u_dims": rep["source_dims"],
        "lambda_hom": rep["map_hom"],
        "lambda_bijective": rep["map_bijective"],
        "obstruction_dims": rep["obstruction_dims"],
        "envelope_pair_equal": rep["envelope_pair_equal"],
        "canonical_iso": rep["canonical_iso"],
        "u_op_to_obstruction_hom": rep["source_to_obstruction_hom"],
    }
