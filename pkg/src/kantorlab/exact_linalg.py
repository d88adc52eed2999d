"""Exact linear algebra over Q and GF(p), p >= 5.

Scalars and dense matrices are python-flint objects (fmpq / nmod and
fmpq_mat / nmod_mat).  Vectors are plain lists of scalars.  Every other
module goes through the helpers here so the field never leaks into the
algebra code.
"""
from fractions import Fraction

import flint


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Q (p = 0) or the prime field GF(p) with p >= 5."""

    def __init__(self, p=0):
        p = int(p)
        if p != 0 and (p < 5 or not _is_prime(p)):
            raise ValueError(f"unsupported characteristic {p}: need 0 or a prime >= 5")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @property
    def char(self):
        return self.p

    @property
    def name(self):
        return "Q" if self.p == 0 else f"GF({self.p})"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @classmethod
    def parse(cls, text):
        t = str(text).strip().lower()
        if t in ("q", "qq"):
            return cls(0)
        if t.startswith("gf:"):
            return cls(int(t[3:]))
        if t.startswith("gf(") and t.endswith(")"):
            return cls(int(t[3:-1]))
        raise ValueError(f"unknown field {text!r}")

    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, flint.fmpq):
                return x
            if isinstance(x, (Fraction,)):
                return flint.fmpq(x.numerator, x.denominator)
            if isinstance(x, str):
                return self.from_str(x)
            if isinstance(x, flint.nmod):
                raise TypeError("cannot coerce a residue into Q")
            return flint.fmpq(int(x))
        if isinstance(x, flint.nmod):
            if x.modulus() != self.p:
                raise TypeError("residue modulus mismatch")
            return x
        if isinstance(x, str):
            return self.from_str(x)
        if isinstance(x, (Fraction, flint.fmpq)):
            num = x.numerator if isinstance(x, Fraction) else int(x.p)
            den = x.denominator if isinstance(x, Fraction) else int(x.q)
            if den % self.p == 0:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            return flint.nmod(num, self.p) / flint.nmod(den, self.p)
        return flint.nmod(int(x), self.p)

    def to_str(self, c):
        if self.p == 0:
            return f"{int(c.p)}/{int(c.q)}"
        return str(int(c))

    def from_str(self, s):
        s = str(s).strip()
        if "/" in s:
            a, b = s.split("/")
            return self(Fraction(int(a), int(b)))
        return self(int(s))

    # matrices

    def _mat(self, r, c, entries=None):
        if self.p == 0:
            if entries is None:
                return flint.fmpq_mat(r, c)
            return flint.fmpq_mat(r, c, entries)
        if entries is None:
            return flint.nmod_mat(r, c, self.p)
        return flint.nmod_mat(r, c, entries, self.p)

    def matrix(self, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            flat.extend(self(x) for x in r)
        if not flat:
            return self._mat(len(rows), ncols)
        return self._mat(len(rows), ncols, flat)

    def zeros(self, r, c):
        return self._mat(r, c)

    def identity(self, n):
        m = self._mat(n, n)
        for i in range(n):
            m[i, i] = self.one
        return m

    def vector(self, xs):
        return [self(x) for x in xs]

    def unit(self, n, i):
        v = [self.zero] * n
        v[i] = self.one
        return v


QQ = Field(0)


def field_of(m):
    if isinstance(m, flint.nmod_mat):
        return Field(m.modulus())
    return QQ


def shape(m):
    return m.nrows(), m.ncols()


def rows_of(m):
    return m.tolist()


def row(m, i):
    return [m[i, j] for j in range(m.ncols())]


def column(m, j):
    return [m[i, j] for i in range(m.nrows())]


def from_columns(field, cols, nrows):
    return field.matrix([[c[i] for c in cols] for i in range(nrows)], len(cols))


def stack(field, mats, ncols):
    rows = []
    for m in mats:
        rows.extend(m.tolist())
    return field.matrix(rows, ncols)


def select_columns(field, m, idx):
    return field.matrix([[r[j] for j in idx] for r in m.tolist()], len(idx))


def mat_vec(m, v):
    field = field_of(m)
    if m.ncols() != len(v):
        raise ValueError("dimension mismatch")
    if m.nrows() == 0:
        return []
    if m.ncols() == 0:
        return [field.zero] * m.nrows()
    return (m * field.matrix([[x] for x in v], 1)).entries()


def is_zero_matrix(m):
    return all(not x for x in m.entries())


def rref(m):
    """Reduced row-echelon form.  Returns (R, rank, pivots); R keeps m's shape."""
    if m.nrows() == 0 or m.ncols() == 0:
        return m, 0, []
    r, rank = m.rref()
    pivots = []
    nc = m.ncols()
    for i in range(rank):
        for j in range(pivots[-1] + 1 if pivots else 0, nc):
            if r[i, j]:
                pivots.append(j)
                break
    return r, rank, pivots


def rank(m):
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def solve(a, b):
    """Some x with a*x = b (free variables zero), or None when inconsistent."""
    field = field_of(a)
    nr, nc = shape(a)
    if len(b) != nr:
        raise ValueError("dimension mismatch")
    aug = field.matrix([list(r) + [field(bi)] for r, bi in zip(a.tolist(), b)], nc + 1) if nr else field.zeros(0, nc + 1)
    r, rk, piv = rref(aug)
    if piv and piv[-1] == nc:
        return None
    x = [field.zero] * nc
    for i, j in enumerate(piv):
        x[j] = r[i, nc]
    return x


def kernel_basis(m):
    """Null space {x : m*x = 0} as a Subspace."""
    field = field_of(m)
    nr, nc = shape(m)
    r, rk, piv = rref(m)
    free = [j for j in range(nc) if j not in set(piv)]
    vecs = []
    for f in free:
        v = [field.zero] * nc
        v[f] = field.one
        for i, j in enumerate(piv):
            v[j] = -r[i, f]
        vecs.append(v)
    return Subspace.from_vectors(field, nc, vecs)


def coordinates(field, basis, vectors):
    """Rows X with X*basis = vectors, basis having independent rows.

    Raises ValueError if some vector is outside the row space.
    """
    k, n = shape(basis)
    if vectors.nrows() == 0:
        return field.zeros(0, k)
    if k == 0:
        if not is_zero_matrix(vectors):
            raise ValueError("vector outside the span")
        return field.zeros(vectors.nrows(), 0)
    _, rk, piv = rref(basis)
    if rk != k:
        raise ValueError("basis rows are dependent")
    sub = select_columns(field, basis, piv)
    x = select_columns(field, vectors, piv) * sub.inv()
    if x * basis != vectors:
        raise ValueError("vector outside the span")
    return x


class Subspace:
    """A subspace of field^n held as the nonzero rows of its rref."""

    def __init__(self, field, ambient_dim, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = list(pivots)

    @classmethod
    def from_vectors(cls, field, n, vecs):
        vecs = [list(v) for v in vecs]
        if not vecs:
            return cls(field, n, field.zeros(0, n), [])
        m = field.matrix(vecs, n)
        return cls.from_matrix(m)

    @classmethod
    def from_matrix(cls, m):
        field = field_of(m)
        n = m.ncols()
        r, rk, piv = rref(m)
        rows = r.tolist()[:rk]
        return cls(field, n, field.matrix(rows, n) if rk else field.zeros(0, n), piv)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, field.zeros(0, n), [])

    @classmethod
    def full(cls, field, n):
        return cls(field, n, field.identity(n), list(range(n)))

    @classmethod
    def coordinate(cls, field, n, idx):
        return cls.from_vectors(field, n, [field.unit(n, i) for i in sorted(idx)])

    @property
    def dim(self):
        return len(self.pivots)

    def vectors(self):
        return self.basis.tolist()

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field.name})"

    def _check(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")

    def coords(self, v):
        """Coordinates of v in the rref basis, or None if v is not in the span."""
        c = [v[j] for j in self.pivots]
        recon = [self.field.zero] * self.ambient_dim
        for ci, r in zip(c, self.basis.tolist()):
            if ci:
                for j, x in enumerate(r):
                    if x:
                        recon[j] = recon[j] + ci * x
        if any(a != b for a, b in zip(recon, v)):
            return None
        return c

    def contains(self, other):
        if isinstance(other, Subspace):
            self._check(other)
            if other.dim == 0:
                return True
            if self.dim == 0:
                return False
            return rank(stack(self.field, [self.basis, other.basis], self.ambient_dim)) == self.dim
        if len(other) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return self.coords(list(other)) is not None

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.pivots)))

    def equal(self, other):
        self._check(other)
        return self == other

    def sum(self, other):
        self._check(other)
        return Subspace.from_vectors(self.field, self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other):
        self._check(other)
        a, b = self.dim, other.dim
        if a == 0 or b == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        rows_a, rows_b = self.vectors(), other.vectors()
        n = self.ambient_dim
        # (x, y) with x*A - y*B = 0, as the kernel of the transposed stack
        sys = self.field.matrix([[rows_a[i][j] for i in range(a)] + [-rows_b[i][j] for i in range(b)]
                                 for j in range(n)], a + b)
        ker = kernel_basis(sys)
        vecs = []
        for kv in ker.vectors():
            v = [self.field.zero] * n
            for i in range(a):
                if kv[i]:
                    for j, x in enumerate(rows_a[i]):
                        if x:
                            v[j] = v[j] + kv[i] * x
            vecs.append(v)
        return Subspace.from_vectors(self.field, n, vecs)

    def complement_indices(self):
        """Coordinate indices not used as pivots (a coordinate complement)."""
        s = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in s]


def subspace_ops(a, b, query):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if query == "contains":
        return a.contains(b)
    if query == "equal":
        return a.equal(b)
    if query == "intersect":
        return a.intersect(b)
    if query == "sum":
        return a.sum(b)
    raise ValueError(f"unknown query {query!r}")


def _pad_cols(field, m, ncols):
    if m.ncols() == ncols:
        return m
    rows = [r + [field.zero] * (ncols - m.ncols()) for r in m.tolist()]
    return field.matrix(rows, ncols)


def commutant(field, n, ops, blocks=None):
    """All n x n matrices X commuting with every op and preserving the blocks.

    Returned as a Subspace of flattened (row-major) matrices.  X is pinned down
    by its values on a set of seed vectors whose orbit under the ops spans
    the space; commutation with each op is then imposed on that finite family
    of candidates, stopping early once only the scalars remain.
    """
    if blocks is None:
        blocks = [list(range(n))]
    block_of = {}
    for bi, b in enumerate(blocks):
        for i in b:
            block_of[i] = bi
    if sorted(block_of) != list(range(n)):
        raise ValueError("blocks must partition the index set")
    projections = []
    if len(blocks) > 1:
        for b in blocks:
            p = field.zeros(n, n)
            for i in b:
                p[i, i] = field.one
            projections.append(p)
    all_ops = list(ops) + projections
    if n == 0:
        return Subspace.zero(field, 0)

    span_rows = []
    spanned = []  # (w as n x 1 matrix, omega as n x U matrix)
    total_u = 0
    stacked = stack(field, all_ops, n) if all_ops else None

    for seed in range(n):
        e = field.unit(n, seed)
        if span_rows and rank(field.matrix(span_rows + [e], n)) == len(span_rows):
            continue
        blk = blocks[block_of[seed]]
        om = field.zeros(n, total_u + len(blk))
        for t, i in enumerate(blk):
            om[i, total_u + t] = field.one
        total_u += len(blk)
        item = (field.matrix([[x] for x in e], 1), om)
        span_rows.append(e)
        spanned.append(item)
        queue = [item]
        while queue and len(span_rows) < n and stacked is not None:
            w, om = queue.pop(0)
            flat = (stacked * w).entries()
            imgs = [flat[q * n:(q + 1) * n] for q in range(len(all_ops))]
            k0 = len(span_rows)
            cols = span_rows + imgs
            m = field.matrix([[c[i] for c in cols] for i in range(n)], len(cols))
            _, _, piv = rref(m)
            for p in piv:
                if p < k0:
                    continue
                q = p - k0
                new = (field.matrix([[x] for x in imgs[q]], 1), all_ops[q] * om)
                span_rows.append(imgs[q])
                spanned.append(new)
                queue.append(new)
        if len(span_rows) == n:
            break

    wmat = field.matrix([[w[i, 0] for w, _ in spanned] for i in range(n)], n)
    winv = wmat.inv()
    oms = [_pad_cols(field, om, total_u) for _, om in spanned]
    # candidate X_t has column k (before winv) equal to omega_k e_t
    cands = []
    for t in range(total_u):
        cols = [[om[i, t] for i in range(n)] for om in oms]
        cands.append(from_columns(field, cols, n) * winv)

    kern = field.identity(total_u)  # columns span the surviving u
    for m in all_ops:
        k = kern.ncols()
        if k <= 1:
            break
        combos = []
        for j in range(k):
            x = field.zeros(n, n)
            for t in range(total_u):
                c = kern[t, j]
                if c:
                    x = x + c * cands[t]
            combos.append(x)
        cols = []
        for x in combos:
            d = m * x - x * m
            cols.append(d.entries())
        sysm = field.matrix([[c[r] for c in cols] for r in range(n * n)], k)
        ker = kernel_basis(sysm)
        if ker.dim == k:
            continue
        kv = ker.vectors()
        kern = kern * field.matrix([[v[j] for v in kv] for j in range(k)], len(kv)) if kv else field.zeros(total_u, 0)
    result = []
    for j in range(kern.ncols()):
        x = field.zeros(n, n)
        for t in range(total_u):
            c = kern[t, j]
            if c:
                x = x + c * cands[t]
        result.append(x.entries())
    return Subspace.from_vectors(field, n * n, result)


def _max_abs(a):
    if a.size == 0:
        return 0
    return max(abs(int(a.max())), abs(int(a.min())))


def exact_einsum(subscripts, *operands, p=0):
    """einsum on integer arrays without rounding or overflow.

    Uses float64 (BLAS) when a crude bound keeps every partial sum below
    2**52, otherwise python integers.  Results are reduced mod p when p > 0.
    """
    import numpy as np

    inputs, output = subscripts.split("->")
    terms = inputs.split(",")
    sizes = {}
    for t, op in zip(terms, operands):
        for ch, s in zip(t, op.shape):
            sizes[ch] = s
    summed = set("".join(terms)) - set(output)
    count = 1
    for ch in summed:
        count *= max(sizes[ch], 1)
    bound = count
    for op in operands:
        bound *= max(_max_abs(op), 1)
    if bound < 2 ** 52:
        res = np.einsum(subscripts, *[op.astype(np.float64) for op in operands], optimize=True)
        res = np.rint(res).astype(np.int64)
    else:
        res = np.einsum(subscripts, *[op.astype(object) for op in operands], optimize=True)
        if not isinstance(res, np.ndarray):
            res = np.array(res, dtype=object)
    if p:
        res = res % p
    return res


def scalars_to_ints(field, values):
    """Common denominator and integer numerators (or residues) for scalars."""
    if field.p:
        return 1, [int(v) for v in values]
    den = 1
    for v in values:
        q = int(v.q)
        if den % q:
            from math import gcd
            den = den * q // gcd(den, q)
    return den, [int(v.p) * (den // int(v.q)) for v in values]


def thread_count():
    """Worker cap from KANTORLAB_THREADS (default 1)."""
    import os

    try:
        return max(1, int(os.environ.get("KANTORLAB_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    """Ordered map, threaded when KANTORLAB_THREADS > 1 (numpy releases the GIL)."""
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
