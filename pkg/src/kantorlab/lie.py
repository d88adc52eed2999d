"""Finite-dimensional Lie algebras with Z^2-valued degrees on a basis.

Structure constants are stored for i < j only: brackets[(i, j)] = {k: c}
means [e_i, e_j] = sum_k c e_k.  Degrees are pairs (d1, d2) in root-lattice
coordinates; a plain Z-grading uses d2 = 0.
"""
import numpy as np

from .exact_linalg import (Field, Subspace, commutant, coordinates, exact_einsum,
                           kernel_basis, rank, rref, scalars_to_ints)


class GradedLieAlgebra:
    def __init__(self, field, dim, degrees, brackets, names=None, kind="Z2"):
        self.field = field
        self.dim = int(dim)
        self.degrees = [tuple(int(x) for x in d) for d in degrees]
        if len(self.degrees) != self.dim:
            raise ValueError("one degree per basis vector")
        clean = {}
        for (i, j), vec in brackets.items():
            if i == j:
                raise ValueError("diagonal brackets are zero by construction")
            sign = field.one
            if i > j:
                i, j, sign = j, i, -field.one
            v = {int(k): sign * field(c) for k, c in vec.items()}
            v = {k: c for k, c in v.items() if c}
            if any(not 0 <= k < self.dim for k in v):
                raise ValueError("bracket output index out of range")
            if v:
                clean[(int(i), int(j))] = v
        self.brackets = clean
        self.names = list(names) if names is not None else [f"e{i}" for i in range(self.dim)]
        self.kind = kind
        self._ad = None
        self._dense = None

    def __repr__(self):
        return f"GradedLieAlgebra(dim={self.dim}, {self.field.name})"

    def __eq__(self, other):
        if not isinstance(other, GradedLieAlgebra):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim and self.degrees == other.degrees
                and self.brackets == other.brackets)

    def basis_bracket(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def ad(self, i):
        if self._ad is None:
            f = self.field
            mats = [f.zeros(self.dim, self.dim) for _ in range(self.dim)]
            for (a, b), vec in self.brackets.items():
                for k, c in vec.items():
                    mats[a][k, b] = c
                    mats[b][k, a] = -c
            self._ad = mats
        return self._ad[i]

    def ad_vector(self, x):
        f = self.field
        m = f.zeros(self.dim, self.dim)
        for i, c in enumerate(x):
            if c:
                m += c * self.ad(i)
        return m

    def dense(self):
        """Integer array c[i, j, k] (coefficient of e_k in [e_i, e_j]) and its denominator."""
        if self._dense is None:
            vals = [c for vec in self.brackets.values() for c in vec.values()]
            den, ints = scalars_to_ints(self.field, vals)
            n = self.dim
            arr = np.zeros((n, n, n), dtype=np.int64 if max(map(abs, ints), default=0) < 2 ** 62 else object)
            pos = 0
            for (i, j), vec in self.brackets.items():
                for k in vec:
                    arr[i, j, k] = ints[pos]
                    arr[j, i, k] = -ints[pos]
                    pos += 1
            self._dense = (arr, den)
        return self._dense

    def degree_dims(self):
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out

    def first_degree_dims(self, lo=-2, hi=2):
        counts = {}
        for d in self.degrees:
            counts[d[0]] = counts.get(d[0], 0) + 1
        return tuple(counts.get(t, 0) for t in range(lo, hi + 1))

    def indices_of_degree(self, pred):
        return [i for i, d in enumerate(self.degrees) if pred(d)]


def bracket(l, x, y):
    f = l.field
    if len(x) != l.dim or len(y) != l.dim:
        raise ValueError("dimension mismatch")
    out = [f.zero] * l.dim
    xs = [(i, f(c)) for i, c in enumerate(x) if c]
    ys = [(j, f(c)) for j, c in enumerate(y) if c]
    for i, a in xs:
        for j, b in ys:
            if i == j:
                continue
            vec = l.basis_bracket(i, j)
            if vec:
                ab = a * b
                for k, c in vec.items():
                    out[k] += ab * c
    return out


def jacobi_check(l):
    """Jacobi identity on all basis triples.  Returns (ok, first bad triple or None)."""
    n = l.dim
    if n < 3:
        return True, None
    c, _ = l.dense()
    p = l.field.p
    for i in range(n):
        t1 = exact_einsum("jkm,ml->jkl", c, c[i], p=p)
        t2 = exact_einsum("km,jml->jkl", c[:, i, :], c, p=p)
        t3 = exact_einsum("jm,kml->jkl", c[i], c, p=p)
        tot = t1 + t2 + t3
        if p:
            tot = tot % p
        bad = np.argwhere(tot != 0)
        if len(bad):
            j, k, _ = (int(x) for x in bad[0])
            return False, tuple(sorted((i, j, k)))
    return True, None


def grading_check(l, allowed_support=None):
    """Degrees inside the allowed support and every bracket degree-additive."""
    report = []
    if allowed_support is not None:
        allowed = {tuple(a) for a in allowed_support}
        for i, d in enumerate(l.degrees):
            if d not in allowed:
                report.append(("support", i, d))
    for (i, j), vec in sorted(l.brackets.items()):
        want = tuple(a + b for a, b in zip(l.degrees[i], l.degrees[j]))
        for k in sorted(vec):
            if l.degrees[k] != want:
                report.append(("bracket", i, j, k))
    return not report, report


def _stack_ad_rows(l):
    rows = []
    for i in range(l.dim):
        rows.extend(l.ad(i).tolist())
    return rows


def center(l):
    if l.dim == 0:
        return Subspace.zero(l.field, 0)
    rows = [r for r in _stack_ad_rows(l) if any(r)]
    if not rows:
        return Subspace.full(l.field, l.dim)
    return kernel_basis(l.field.matrix(rows, l.dim))


def derived_algebra(l):
    vecs = []
    for (i, j), vec in l.brackets.items():
        v = [l.field.zero] * l.dim
        for k, c in vec.items():
            v[k] = c
        vecs.append(v)
    return Subspace.from_vectors(l.field, l.dim, vecs)


def killing_form(l):
    """Matrix tr(ad e_i ad e_j) and whether it is nondegenerate."""
    f = l.field
    n = l.dim
    if n == 0:
        return f.zeros(0, 0), True
    a = f.matrix([l.ad(i).entries() for i in range(n)], n * n)
    b = f.matrix([l.ad(i).transpose().entries() for i in range(n)], n * n)
    k = a * b.transpose()
    return k, rank(k) == n


def centroid_lie(l, graded_only=False):
    """Maps commuting with every ad(e_i); optionally also preserving each degree."""
    blocks = None
    if graded_only:
        groups = {}
        for i, d in enumerate(l.degrees):
            groups.setdefault(d, []).append(i)
        blocks = [groups[d] for d in sorted(groups)]
    ops = [l.ad(i) for i in range(l.dim)]
    ops = [m for m in ops if any(m.entries())]
    return commutant(l.field, l.dim, ops, blocks)


def component_grading(l, which="first"):
    pos = {"first": 0, "second": 1}[which]
    return GradedLieAlgebra(l.field, l.dim, [(d[pos], 0) for d in l.degrees], l.brackets,
                            l.names, kind="Z")


def with_degrees(l, degrees, kind=None):
    return GradedLieAlgebra(l.field, l.dim, degrees, l.brackets, l.names, kind or l.kind)


def subalgebra_generated(l, seed):
    """Smallest bracket-closed subspace containing seed."""
    f = l.field
    cur = Subspace.from_vectors(f, l.dim, seed.vectors())
    new = cur.vectors()
    while new:
        basis = cur.vectors()
        cand = []
        for x in new:
            for y in basis:
                v = bracket(l, x, y)
                if any(v):
                    cand.append(v)
        if not cand:
            break
        nxt = Subspace.from_vectors(f, l.dim, basis + cand)
        if nxt.dim == cur.dim:
            break
        # the fresh directions are the rows of nxt outside cur
        fresh = [v for v in nxt.vectors() if not cur.contains(v)]
        cur, new = nxt, fresh
    return cur


def vector_degree(l, v):
    """Degree of a homogeneous vector, or None if v is zero or mixed."""
    degs = {l.degrees[i] for i, c in enumerate(v) if c}
    if len(degs) != 1:
        return None
    return degs.pop()


def graded_components(l, space):
    """Split a graded subspace into its homogeneous pieces {degree: Subspace}."""
    f = l.field
    out = {}
    for d in sorted(set(l.degrees)):
        idx = [i for i, e in enumerate(l.degrees) if e == d]
        piece = space.intersect(Subspace.coordinate(f, l.dim, idx))
        if piece.dim:
            out[d] = piece
    return out


def change_basis(l, rows, degrees=None, names=None, kind=None):
    """Algebra on the span of the given vectors (which must span a subalgebra)."""
    f = l.field
    k = len(rows)
    basis = f.matrix(rows, l.dim)
    if degrees is None:
        degrees = []
        for r in rows:
            d = vector_degree(l, r)
            if d is None:
                raise ValueError("basis vector is not homogeneous")
            degrees.append(d)
    pairs, vecs = [], []
    for a in range(k):
        for b in range(a + 1, k):
            v = bracket(l, rows[a], rows[b])
            if any(v):
                pairs.append((a, b))
                vecs.append(v)
    coords = coordinates(f, basis, f.matrix(vecs, l.dim)) if vecs else f.zeros(0, k)
    brackets = {}
    for t, (a, b) in enumerate(pairs):
        brackets[(a, b)] = {c: coords[t, c] for c in range(k) if coords[t, c]}
    return GradedLieAlgebra(f, k, degrees, brackets, names, kind or l.kind)


def matrix_lie_algebra(field, groups, names=None, kind="Z2"):
    """Lie algebra spanned by square matrices, one spanning list per degree.

    groups is a list of (degree, [matrices]) with distinct degrees, in the
    desired basis order.  Each list is row reduced; brackets are commutators.
    Returns (algebra, basis matrices).
    """
    f = field
    basis, degrees, spans = [], [], {}
    n = None
    for d, mats in groups:
        d = tuple(d)
        if d in spans:
            raise ValueError("repeated degree")
        if not mats:
            continue
        n = mats[0].nrows()
        red, rk, _ = rref(f.matrix([m.entries() for m in mats], n * n))
        start = len(basis)
        for r in range(rk):
            basis.append(f.matrix([[red[r, i * n + j] for j in range(n)] for i in range(n)], n))
            degrees.append(d)
        if rk:
            spans[d] = (start, f.matrix([[red[r, c] for c in range(n * n)] for r in range(rk)], n * n))
    todo = {}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            c = basis[a] * basis[b] - basis[b] * basis[a]
            ent = c.entries()
            if not any(ent):
                continue
            d = (degrees[a][0] + degrees[b][0], degrees[a][1] + degrees[b][1])
            if d not in spans:
                raise ValueError(f"commutator of degree {d} outside the spanned algebra")
            todo.setdefault(d, []).append(((a, b), ent))
    brackets = {}
    for d, items in todo.items():
        start, bm = spans[d]
        co = coordinates(f, bm, f.matrix([e for _, e in items], n * n))
        for t, (key, _) in enumerate(items):
            brackets[key] = {start + u: co[t, u] for u in range(bm.nrows()) if co[t, u]}
    return GradedLieAlgebra(f, len(basis), degrees, brackets, names, kind), basis


def quotient(l, ideal_rows, keep):
    """Quotient by the span of ideal_rows, with basis the images of e_i, i in keep."""
    f = l.field
    k = len(keep)
    full = [f.unit(l.dim, i) for i in keep] + list(ideal_rows)
    basis = f.matrix(full, l.dim)
    if rank(basis) != l.dim:
        raise ValueError("keep indices and ideal do not form a basis")
    pos = {i: t for t, i in enumerate(keep)}
    pairs, vecs = [], []
    for a in keep:
        for b in keep:
            if a < b:
                vec = l.basis_bracket(a, b)
                if vec:
                    v = [f.zero] * l.dim
                    for c, x in vec.items():
                        v[c] = x
                    pairs.append((pos[a], pos[b]))
                    vecs.append(v)
    coords = coordinates(f, basis, f.matrix(vecs, l.dim)) if vecs else f.zeros(0, l.dim)
    brackets = {}
    for t, (a, b) in enumerate(pairs):
        brackets[(a, b)] = {c: coords[t, c] for c in range(k) if coords[t, c]}
    return GradedLieAlgebra(f, k, [l.degrees[i] for i in keep], brackets,
                            [l.names[i] for i in keep], l.kind)


def is_homomorphism(l1, l2, phi):
    """phi (l2.dim x l1.dim matrix) preserves brackets on all basis pairs."""
    images = [[phi[r, c] for r in range(l2.dim)] for c in range(l1.dim)]
    for a in range(l1.dim):
        lhs = phi * l1.ad(a)
        rhs = l2.ad_vector(images[a]) * phi
        if lhs != rhs:
            return False
    return True


def direct_sum_lie(l1, l2):
    n1 = l1.dim
    br = dict(l1.brackets)
    for (i, j), vec in l2.brackets.items():
        br[(i + n1, j + n1)] = {k + n1: c for k, c in vec.items()}
    return GradedLieAlgebra(l1.field, n1 + l2.dim, l1.degrees + l2.degrees, br,
                            l1.names + l2.names, l1.kind)


def abelian(field, dim, degrees=None):
    return GradedLieAlgebra(field, dim, degrees or [(0, 0)] * dim, {})


def lie_to_json(l, extra=None):
    f = l.field
    d = {"field": f.name, "dim": l.dim, "degrees": [list(x) for x in l.degrees],
         "brackets": [{"i": i, "j": j, "out": [{"k": k, "c": f.to_str(vec[k])} for k in sorted(vec)]}
                      for (i, j), vec in sorted(l.brackets.items())]}
    if extra:
        d.update(extra)
    return d


def lie_from_json(d):
    f = Field.parse(d["field"])
    br = {}
    for e in d["brackets"]:
        br[(e["i"], e["j"])] = {o["k"]: f.from_str(o["c"]) for o in e["out"]}
    return GradedLieAlgebra(f, d["dim"], [tuple(x) for x in d["degrees"]], br)
