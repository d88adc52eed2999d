"""Trilinear pairs P = (P-, P+) with products {x, y, z}^sigma.

Signs are the ints -1 and +1.  A product tensor for sign s maps index
triples (i, j, k) to sparse output vectors {a: c}, meaning
{e_i^s, e_j^-s, e_k^s}^s = sum_a c e_a^s.
"""
import numpy as np

from .exact_linalg import (Field, Subspace, commutant, exact_einsum, kernel_basis,
                           scalars_to_ints)

MINUS, PLUS = -1, 1
SIGNS = (MINUS, PLUS)
SIGN_NAME = {MINUS: "minus", PLUS: "plus"}
SIGN_CHAR = {MINUS: "-", PLUS: "+"}


def _clean(field, products):
    out = {}
    for key, vec in products.items():
        v = {int(a): field(c) for a, c in vec.items()}
        v = {a: c for a, c in v.items() if c}
        if v:
            out[tuple(int(t) for t in key)] = v
    return out


class TrilinearPair:
    def __init__(self, field, dims, products, sp_labels=None):
        self.field = field
        self.dims = {s: int(dims[s]) for s in SIGNS}
        self.products = {s: _clean(field, products.get(s, {})) for s in SIGNS}
        for s in SIGNS:
            n, m = self.dims[s], self.dims[-s]
            for (i, j, k), vec in self.products[s].items():
                if not (0 <= i < n and 0 <= j < m and 0 <= k < n):
                    raise ValueError(f"index out of range in product {s}: {(i, j, k)}")
                if any(not 0 <= a < n for a in vec):
                    raise ValueError("output index out of range")
        self.sp_labels = None
        if sp_labels is not None:
            labels = {s: [int(x) for x in sp_labels[s]] for s in SIGNS}
            for s in SIGNS:
                if len(labels[s]) != self.dims[s]:
                    raise ValueError("label list length mismatch")
                if any(x not in (0, 1) for x in labels[s]):
                    raise ValueError("SP labels must lie in {0, 1}")
            ok, bad = check_grading(self, labels)
            if not ok:
                raise ValueError(f"labels violate the grading rule, e.g. {bad[0]}")
            self.sp_labels = labels

    def __repr__(self):
        tag = " SP" if self.sp_labels else ""
        return f"TrilinearPair(dims=({self.dims[MINUS]}, {self.dims[PLUS]}), {self.field.name}{tag})"

    def __eq__(self, other):
        if not isinstance(other, TrilinearPair):
            return NotImplemented
        return (self.field == other.field and self.dims == other.dims
                and self.products == other.products and self.sp_labels == other.sp_labels)

    def same_products(self, other):
        return self.field == other.field and self.dims == other.dims and self.products == other.products

    def with_labels(self, labels):
        return TrilinearPair(self.field, self.dims, self.products, labels)

    def without_labels(self):
        return TrilinearPair(self.field, self.dims, self.products)

    def dense(self):
        """Integer arrays A[s][a, i, j, k] with one shared denominator."""
        vals = [c for s in SIGNS for vec in self.products[s].values() for c in vec.values()]
        den, ints = scalars_to_ints(self.field, vals)
        arrays = {}
        pos = 0
        for s in SIGNS:
            n, m = self.dims[s], self.dims[-s]
            a = np.zeros((n, n, m, n), dtype=object)
            for (i, j, k), vec in self.products[s].items():
                for o in vec:
                    a[o, i, j, k] = ints[pos]
                    pos += 1
            arrays[s] = a
        return arrays, den


def zero_pair(field, n_minus, n_plus):
    return TrilinearPair(field, {MINUS: n_minus, PLUS: n_plus}, {})


def _vec(field, x, n):
    if len(x) != n:
        raise ValueError("dimension mismatch")
    return [field(c) for c in x]


def triple_product(p, sigma, x, y, z):
    f = p.field
    x = _vec(f, x, p.dims[sigma])
    y = _vec(f, y, p.dims[-sigma])
    z = _vec(f, z, p.dims[sigma])
    out = [f.zero] * p.dims[sigma]
    for (i, j, k), vec in p.products[sigma].items():
        c = x[i] * y[j] * z[k]
        if c:
            for a, t in vec.items():
                out[a] += c * t
    return out


def d_operator(p, sigma, x, y):
    """Matrix of z -> {x, y, z}^sigma."""
    f = p.field
    n = p.dims[sigma]
    x = _vec(f, x, n)
    y = _vec(f, y, p.dims[-sigma])
    m = f.zeros(n, n)
    for (i, j, k), vec in p.products[sigma].items():
        c = x[i] * y[j]
        if c:
            for a, t in vec.items():
                m[a, k] += c * t
    return m


def k_operator(p, sigma, x, z):
    """Matrix of y -> {x, y, z}^sigma - {z, y, x}^sigma, from P^-sigma to P^sigma."""
    f = p.field
    n = p.dims[sigma]
    x = _vec(f, x, n)
    z = _vec(f, z, n)
    m = f.zeros(n, p.dims[-sigma])
    for (i, j, k), vec in p.products[sigma].items():
        c = x[i] * z[k] - z[i] * x[k]
        if c:
            for a, t in vec.items():
                m[a, j] += c * t
    return m


def opposite_pair(p):
    labels = None if p.sp_labels is None else {s: p.sp_labels[-s] for s in SIGNS}
    return TrilinearPair(p.field, {s: p.dims[-s] for s in SIGNS},
                         {s: p.products[-s] for s in SIGNS}, labels)


def double_of_triple(field, n, t, signed=False):
    """The double (X, X) of a triple system on field^n, or the signed double."""
    prods = {}
    for s in SIGNS:
        scale = field(s) if signed else field.one
        prods[s] = {key: {a: scale * field(c) for a, c in vec.items()} for key, vec in t.items()}
    return TrilinearPair(field, {MINUS: n, PLUS: n}, prods)


def direct_sum(p, q):
    if p.field != q.field:
        raise ValueError("field mismatch")
    prods = {}
    for s in SIGNS:
        d = dict(p.products[s])
        on, om = p.dims[s], p.dims[-s]
        for (i, j, k), vec in q.products[s].items():
            d[(i + on, j + om, k + on)] = {a + on: c for a, c in vec.items()}
        prods[s] = d
    labels = None
    if p.sp_labels is not None and q.sp_labels is not None:
        labels = {s: p.sp_labels[s] + q.sp_labels[s] for s in SIGNS}
    return TrilinearPair(p.field, {s: p.dims[s] + q.dims[s] for s in SIGNS}, prods, labels)


def permute(p, order):
    """Pair on the same spaces with basis reordered: new index t is old order[s][t]."""
    inv = {s: {old: new for new, old in enumerate(order[s])} for s in SIGNS}
    for s in SIGNS:
        if sorted(order[s]) != list(range(p.dims[s])):
            raise ValueError("not a permutation")
    prods = {}
    for s in SIGNS:
        prods[s] = {(inv[s][i], inv[-s][j], inv[s][k]): {inv[s][a]: c for a, c in vec.items()}
                    for (i, j, k), vec in p.products[s].items()}
    labels = None
    if p.sp_labels is not None:
        labels = {s: [p.sp_labels[s][old] for old in order[s]] for s in SIGNS}
    return TrilinearPair(p.field, p.dims, prods, labels)


def restrict(p, idx):
    """Sub-pair spanned by the basis vectors idx[s]; raises if not closed."""
    pos = {s: {old: new for new, old in enumerate(idx[s])} for s in SIGNS}
    prods = {}
    for s in SIGNS:
        d = {}
        for (i, j, k), vec in p.products[s].items():
            if i in pos[s] and j in pos[-s] and k in pos[s]:
                if any(a not in pos[s] for a in vec):
                    raise ValueError("index set is not closed under the products")
                d[(pos[s][i], pos[-s][j], pos[s][k])] = {pos[s][a]: c for a, c in vec.items()}
        prods[s] = d
    labels = None
    if p.sp_labels is not None:
        labels = {s: [p.sp_labels[s][i] for i in idx[s]] for s in SIGNS}
    return TrilinearPair(p.field, {s: len(idx[s]) for s in SIGNS}, prods, labels)


def labeled_part(p, label):
    if p.sp_labels is None:
        raise ValueError("pair carries no SP labels")
    return {s: [i for i, x in enumerate(p.sp_labels[s]) if x == label] for s in SIGNS}


def is_left_ideal(p, idx):
    """{P^s, P^-s, Q^s} inside Q^s for the coordinate sub-pair Q."""
    inside = {s: set(idx[s]) for s in SIGNS}
    for s in SIGNS:
        for (i, j, k), vec in p.products[s].items():
            if k in inside[s] and any(a not in inside[s] for a in vec):
                return False
    return True


def is_ideal(p, idx):
    inside = {s: set(idx[s]) for s in SIGNS}
    for s in SIGNS:
        for (i, j, k), vec in p.products[s].items():
            hit = i in inside[s] or j in inside[-s] or k in inside[s]
            if hit and any(a not in inside[s] for a in vec):
                return False
    return True


def _deg_add(x, y, sign=1):
    if isinstance(x, tuple):
        return tuple(a + sign * b for a, b in zip(x, y))
    return x + sign * y


def check_grading(p, labels, group=None):
    """Does {P_g, P_k, P_l} land in P_(g - k + l)?  Returns (ok, violations)."""
    for s in SIGNS:
        if len(labels[s]) != p.dims[s]:
            raise ValueError("label list length mismatch")
    bad = []
    for s in SIGNS:
        lab, opp = labels[s], labels[-s]
        for (i, j, k), vec in sorted(p.products[s].items()):
            want = _deg_add(_deg_add(lab[i], opp[j], -1), lab[k])
            for a in sorted(vec):
                if lab[a] != want:
                    bad.append((s, i, j, k, a))
    return not bad, bad


class PairMap:
    """omega = (omega-, omega+), each a matrix from P^s to P'^s."""

    def __init__(self, components):
        self.components = {s: components[s] for s in SIGNS}

    def __repr__(self):
        return "PairMap(" + ", ".join(
            f"{SIGN_NAME[s]}: {m.nrows()}x{m.ncols()}" for s, m in self.components.items()) + ")"


def identity_map(p):
    return PairMap({s: p.field.identity(p.dims[s]) for s in SIGNS})


def _mat_ints(field, m):
    den, ints = scalars_to_ints(field, m.entries())
    return np.array(ints, dtype=object).reshape(m.nrows(), m.ncols()), den


def check_homomorphism(p, q, omega):
    if p.field != q.field:
        raise ValueError("field mismatch")
    f = p.field
    for s in SIGNS:
        m = omega.components[s]
        if m.nrows() != q.dims[s] or m.ncols() != p.dims[s]:
            raise ValueError("map shape mismatch")
    ap, dp = p.dense()
    aq, dq = q.dense()
    om, dom = {}, {}
    for s in SIGNS:
        om[s], dom[s] = _mat_ints(f, omega.components[s])
    pr = f.p
    for s in SIGNS:
        # omega{e_i, e_j, e_k} versus {omega e_i, omega e_j, omega e_k}
        lhs = exact_einsum("ba,aijk->bijk", om[s], ap[s], p=pr)
        rhs = exact_einsum("bxyz,xi,yj,zk->bijk", aq[s], om[s], om[-s], om[s], p=pr)
        # lhs carries dom*dp, rhs carries dq*dom^3
        lhs_s = lhs * (dq * dom[-s] * dom[s])
        rhs_s = rhs * dp
        if pr:
            lhs_s, rhs_s = lhs_s % pr, rhs_s % pr
        if lhs_s.shape != rhs_s.shape or not np.array_equal(
                np.asarray(lhs_s, dtype=object), np.asarray(rhs_s, dtype=object)):
            return False
    return True


def is_jordan(p):
    for s in SIGNS:
        t = p.products[s]
        for (i, j, k), vec in t.items():
            if t.get((k, j, i), {}) != vec:
                return False
    return True


def multiplication_operators(p):
    """All maps z -> {x,y,z}, y -> {x,y,z}, x -> {x,y,z} on V = P- + P+ (minus first)."""
    f = p.field
    off = {MINUS: 0, PLUS: p.dims[MINUS]}
    n = p.dims[MINUS] + p.dims[PLUS]
    ops = {}
    for s in SIGNS:
        for (i, j, k), vec in p.products[s].items():
            for kind, key, src, dst_sign in (("L", (i, j), (s, k), s),
                                              ("M", (i, k), (-s, j), s),
                                              ("R", (j, k), (s, i), s)):
                name = (kind, s) + key
                m = ops.get(name)
                if m is None:
                    m = ops[name] = {}
                col = off[src[0]] + src[1]
                for a, c in vec.items():
                    r = off[dst_sign] + a
                    m[(r, col)] = m.get((r, col), f.zero) + c
    mats = []
    for name in sorted(ops):
        entries = {k: v for k, v in ops[name].items() if v}
        if not entries:
            continue
        m = f.zeros(n, n)
        for (r, c), v in entries.items():
            m[r, c] = v
        mats.append(m)
    return mats


def centroid_pair(p, method="commutant"):
    """Centroid as a Subspace of End(P-) + End(P+), flattened minus block first.

    method "commutant" solves for maps commuting with every multiplication
    operator; method "stacked" solves the defining equations directly.
    """
    f = p.field
    nm, np_ = p.dims[MINUS], p.dims[PLUS]
    if method == "stacked":
        return _centroid_stacked(p)
    n = nm + np_
    blocks = [list(range(nm)), list(range(nm, n))]
    com = commutant(f, n, multiplication_operators(p), blocks)
    vecs = []
    for v in com.vectors():
        w = [v[r * n + c] for r in range(nm) for c in range(nm)]
        w += [v[r * n + c] for r in range(nm, n) for c in range(nm, n)]
        vecs.append(w)
    return Subspace.from_vectors(f, nm * nm + np_ * np_, vecs)


def _centroid_stacked(p):
    f = p.field
    dims = p.dims
    off = {MINUS: 0, PLUS: dims[MINUS] ** 2}
    total = dims[MINUS] ** 2 + dims[PLUS] ** 2

    def var(s, r, c):
        return off[s] + r * dims[s] + c

    rows = []
    for s in SIGNS:
        n, m = dims[s], dims[-s]
        t = p.products[s]
        for i in range(n):
            for j in range(m):
                for k in range(n):
                    # four expressions as linear forms in omega, for each output a
                    exprs = [{}, {}, {}, {}]
                    for (a, coef) in t.get((i, j, k), {}).items():
                        for b in range(n):
                            exprs[0][(b, var(s, b, a))] = exprs[0].get((b, var(s, b, a)), f.zero) + coef
                    for x in range(n):
                        for a, coef in t.get((x, j, k), {}).items():
                            key = (a, var(s, x, i))
                            exprs[1][key] = exprs[1].get(key, f.zero) + coef
                    for y in range(m):
                        for a, coef in t.get((i, y, k), {}).items():
                            key = (a, var(-s, y, j))
                            exprs[2][key] = exprs[2].get(key, f.zero) + coef
                    for z in range(n):
                        for a, coef in t.get((i, j, z), {}).items():
                            key = (a, var(s, z, k))
                            exprs[3][key] = exprs[3].get(key, f.zero) + coef
                    for other in exprs[1:]:
                        for b in range(n):
                            r = [f.zero] * total
                            for (a, v), c in exprs[0].items():
                                if a == b:
                                    r[v] += c
                            for (a, v), c in other.items():
                                if a == b:
                                    r[v] -= c
                            if any(r):
                                rows.append(r)
    if not rows:
        return Subspace.full(f, total)
    return kernel_basis(f.matrix(rows, total))


def centroid_element_to_map(p, vec):
    f = p.field
    nm, np_ = p.dims[MINUS], p.dims[PLUS]
    om = f.matrix([vec[r * nm:(r + 1) * nm] for r in range(nm)], nm) if nm else f.zeros(0, 0)
    base = nm * nm
    op = f.matrix([vec[base + r * np_: base + (r + 1) * np_] for r in range(np_)], np_) if np_ else f.zeros(0, 0)
    return PairMap({MINUS: om, PLUS: op})


def pair_to_json(p):
    f = p.field
    items = []
    for s in SIGNS:
        for (i, j, k), vec in p.products[s].items():
            items.append((SIGN_CHAR[s], i, j, k, vec))
    items.sort(key=lambda t: t[:4])
    prods = [{"sigma": sg, "i": i, "j": j, "k": k,
              "out": [{"a": a, "c": f.to_str(vec[a])} for a in sorted(vec)]}
             for sg, i, j, k, vec in items]
    d = {"field": f.name, "dims": {"minus": p.dims[MINUS], "plus": p.dims[PLUS]}}
    if p.sp_labels is not None:
        d["sp_labels"] = {"minus": list(p.sp_labels[MINUS]), "plus": list(p.sp_labels[PLUS])}
    d["products"] = prods
    return d


def pair_from_json(d):
    f = Field.parse(d["field"])
    dims = {MINUS: d["dims"]["minus"], PLUS: d["dims"]["plus"]}
    prods = {MINUS: {}, PLUS: {}}
    for e in d["products"]:
        s = PLUS if e["sigma"] == "+" else MINUS
        key = (e["i"], e["j"], e["k"])
        prods[s][key] = {o["a"]: f.from_str(o["c"]) for o in e["out"]}
    labels = None
    if "sp_labels" in d:
        labels = {MINUS: d["sp_labels"]["minus"], PLUS: d["sp_labels"]["plus"]}
    return TrilinearPair(f, dims, prods, labels)


def jordan_1d(field, scale=2):
    """One-dimensional pair with {x, y, z} = scale * xyz."""
    return double_of_triple(field, 1, {(0, 0, 0): {0: scale}})


def matrix_pair(field, r, c):
    """Jordan pair of r x c matrices, {x, y, z} = x y^T z + z y^T x, row-major basis."""
    def idx(a, b):
        return a * c + b

    t = {}
    for a in range(r):
        for b in range(c):
            for a2 in range(r):
                # x = E_ab, y = E_a2 b, z = E_a2 b2 gives E_ab2 from x y^T z
                for b2 in range(c):
                    key = (idx(a, b), idx(a2, b), idx(a2, b2))
                    out = t.setdefault(key, {})
                    out[idx(a, b2)] = out.get(idx(a, b2), 0) + 1
                    key = (idx(a2, b2), idx(a2, b), idx(a, b))
                    out = t.setdefault(key, {})
                    out[idx(a, b2)] = out.get(idx(a, b2), 0) + 1
    return double_of_triple(field, r * c, t)
