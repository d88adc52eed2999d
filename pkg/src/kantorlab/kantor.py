"""Kantor identities, the Kantor Lie algebra of a pair, envelopes and simplicity."""
import numpy as np

from .exact_linalg import Subspace, coordinates, exact_einsum, pmap, rank, rref
from .lie import (GradedLieAlgebra, center, centroid_lie, derived_algebra,
                  graded_components, is_homomorphism, killing_form, quotient,
                  subalgebra_generated)
from .pairs import MINUS, PLUS, SIGNS, TrilinearPair

# checking (K1) and (K2)


def _k1_defect(a, b, x, p):
    """All of (K1) at fixed first argument x; index order (y, z, w, a, c)."""
    dall = a.transpose(1, 2, 0, 3)
    dx = dall[x]
    lhs1 = exact_einsum("yab,zwbc->yzwac", dx, dall, p=p)
    lhs2 = exact_einsum("zwab,ybc->yzwac", dall, dx, p=p)
    v = a[:, x, :, :].transpose(1, 2, 0)
    rhs1 = exact_einsum("yzb,bwac->yzwac", v, dall, p=p)
    w = b[:, :, x, :].transpose(1, 2, 0)
    rhs2 = exact_einsum("ywb,zbac->yzwac", w, dall, p=p)
    return lhs1 - lhs2 - rhs1 + rhs2


def _k2_defect(a, b, x, p):
    """All of (K2) at fixed first argument x; index order (z, w, u, a, c)."""
    kx = a[:, x, :, :].transpose(2, 0, 1) - a[:, :, :, x].transpose(1, 0, 2)
    dball = b.transpose(1, 2, 0, 3)
    dall = a.transpose(1, 2, 0, 3)
    kall = a.transpose(1, 3, 0, 2) - a.transpose(3, 1, 0, 2)
    lhs1 = exact_einsum("zab,wubc->zwuac", kx, dball, p=p)
    lhs2 = exact_einsum("uwab,zbc->zwuac", dall, kx, p=p)
    rhs = exact_einsum("zwb,buac->zwuac", kx.transpose(0, 2, 1), kall, p=p)
    return lhs1 + lhs2 - rhs


def check_kantor(p):
    """(K1) and (K2) on all basis 5-tuples.  Returns (ok, witness or None).

    The witness is (identity, sigma, 5 basis indices, output index); the
    indices are (x, y, z, w, u) for K1 and (x, z, w, u, v) for K2.
    """
    arrays, _ = p.dense()
    pr = p.field.p
    for s in SIGNS:
        a = arrays[s]
        b = arrays[-s]
        if 0 in a.shape or 0 in b.shape:
            continue
        a = a.astype(np.int64) if _fits(a) else a
        b = b.astype(np.int64) if _fits(b) else b
        for name, fn in (("K1", _k1_defect), ("K2", _k2_defect)):
            def run(x, fn=fn, a=a, b=b):
                d = fn(a, b, x, pr)
                if pr:
                    d = d % pr
                bad = np.argwhere(d != 0)
                if len(bad):
                    t = tuple(int(v) for v in bad[0])
                    return (name, s, (x,) + t[:3] + (t[4],), t[3])
                return None
            for res in pmap(run, range(a.shape[1])):
                if res is not None:
                    return False, res
    return True, None


def _fits(arr):
    if arr.size == 0:
        return True
    return max(abs(int(arr.max())), abs(int(arr.min()))) < 2 ** 62


# the Kantor Lie algebra


class KantorAlgebra:
    def __init__(self, pair, algebra, pair_embedding, s_block, s_rows, s_index):
        self.pair = pair
        self.algebra = algebra
        self.pair_embedding = pair_embedding
        self.s_block = s_block
        self.s_rows = s_rows
        self.s_index = s_index

    def __repr__(self):
        return f"KantorAlgebra(dim={self.algebra.dim}, dims={self.algebra.first_degree_dims()})"

    def embedding_block(self):
        return {"minus": list(self.pair_embedding[MINUS]), "plus": list(self.pair_embedding[PLUS])}


def _vspace_degrees(p, use_labels):
    labels = p.sp_labels if (use_labels and p.sp_labels is not None) else None
    degs = []
    for s in (MINUS, PLUS):
        for i in range(p.dims[s]):
            lab = labels[s][i] if labels else 0
            degs.append((s, s * lab))
    return degs


def _generators(p):
    """Spanning blocks of S(P) as sparse matrices on V = P- + P+."""
    f = p.field
    m = p.dims[MINUS]
    off = {MINUS: 0, PLUS: m}
    tm, tp = p.products[MINUS], p.products[PLUS]
    gens = []

    def k_gen(s, i, k):
        t = p.products[s]
        ent = {}
        for j in range(p.dims[-s]):
            for a, c in t.get((i, j, k), {}).items():
                ent[(off[s] + a, off[-s] + j)] = ent.get((off[s] + a, off[-s] + j), f.zero) + c
            for a, c in t.get((k, j, i), {}).items():
                ent[(off[s] + a, off[-s] + j)] = ent.get((off[s] + a, off[-s] + j), f.zero) - c
        return {key: v for key, v in ent.items() if v}

    for i in range(p.dims[MINUS]):
        for k in range(i + 1, p.dims[MINUS]):
            gens.append((("K", MINUS, i, k), k_gen(MINUS, i, k)))
    for i in range(p.dims[MINUS]):
        for j in range(p.dims[PLUS]):
            ent = {}
            for k in range(p.dims[MINUS]):
                for a, c in tm.get((i, j, k), {}).items():
                    ent[(a, k)] = ent.get((a, k), f.zero) + c
            for k in range(p.dims[PLUS]):
                for a, c in tp.get((j, i, k), {}).items():
                    ent[(m + a, m + k)] = ent.get((m + a, m + k), f.zero) - c
            gens.append((("D", i, j), {key: v for key, v in ent.items() if v}))
    for i in range(p.dims[PLUS]):
        for k in range(i + 1, p.dims[PLUS]):
            gens.append((("K", PLUS, i, k), k_gen(PLUS, i, k)))
    return gens


def _sparse_to_mat(f, n, ent):
    m = f.zeros(n, n)
    for (r, c), v in ent.items():
        m[r, c] = v
    return m


def kantor_construct(p, use_labels=False):
    """K(P) = S(P) + (P- + P+) with its 5-grading, or its BC2-grading from SP labels.

    Basis order: degree -2 rows, P- in source order, degree 0 rows, P+ in
    source order, degree +2 rows; S rows are the rref of the generating
    blocks within each degree.
    """
    f = p.field
    m, n = p.dims[MINUS], p.dims[PLUS]
    nv = m + n
    vdeg = _vspace_degrees(p, use_labels)

    def unit_degree(r, c):
        return (vdeg[r][0] - vdeg[c][0], vdeg[r][1] - vdeg[c][1])

    groups = {}
    gen_mats = {}
    for name, ent in _generators(p):
        if not ent:
            gen_mats[name] = {}
            continue
        degs = {unit_degree(r, c) for (r, c) in ent}
        if len(degs) != 1:
            raise ValueError(f"ungradable generator {name}")
        groups.setdefault(degs.pop(), []).append(ent)
        gen_mats[name] = ent

    rows_by_degree = {}
    for d, ents in groups.items():
        support = sorted({key for e in ents for key in e})
        col = {key: t for t, key in enumerate(support)}
        mat = f.zeros(len(ents), len(support))
        for r, e in enumerate(ents):
            for key, v in e.items():
                mat[r, col[key]] = v
        red, rk, _ = rref(mat)
        rows = []
        for r in range(rk):
            ent = {}
            for t, key in enumerate(support):
                v = red[r, t]
                if v:
                    ent[key] = v
            rows.append(ent)
        rows_by_degree[d] = rows

    basis_kind = []  # ("S", ent) or ("V", v_index)
    degrees = []
    names = []

    def add_s(d):
        for t, ent in enumerate(rows_by_degree[d]):
            basis_kind.append(("S", ent))
            degrees.append(d)
            names.append(f"s{d[0]},{d[1]}#{t}")

    sdeg = sorted(rows_by_degree)
    for d in [d for d in sdeg if d[0] < -1]:
        add_s(d)
    emb = {MINUS: [], PLUS: []}
    for i in range(m):
        emb[MINUS].append(len(basis_kind))
        basis_kind.append(("V", i))
        degrees.append(vdeg[i])
        names.append(f"x-{i}")
    for d in [d for d in sdeg if -1 <= d[0] <= 1]:
        add_s(d)
    for j in range(n):
        emb[PLUS].append(len(basis_kind))
        basis_kind.append(("V", m + j))
        degrees.append(vdeg[m + j])
        names.append(f"x+{j}")
    for d in [d for d in sdeg if d[0] > 1]:
        add_s(d)

    dim = len(basis_kind)
    s_index = [b for b, (kind, _) in enumerate(basis_kind) if kind == "S"]
    s_mats = {b: _sparse_to_mat(f, nv, basis_kind[b][1]) for b in s_index}
    v_to_basis = {}
    for b, (kind, v) in enumerate(basis_kind):
        if kind == "V":
            v_to_basis[v] = b

    # matrices of [x, y] for basis columns x, y
    def col_bracket(u, v):
        if u == v:
            return {}
        su = MINUS if u < m else PLUS
        sv = MINUS if v < m else PLUS
        iu = u if su == MINUS else u - m
        iv = v if sv == MINUS else v - m
        if su == MINUS and sv == PLUS:
            return gen_mats[("D", iu, iv)]
        if su == PLUS and sv == MINUS:
            return {key: -c for key, c in gen_mats[("D", iv, iu)].items()}
        if iu < iv:
            return gen_mats[("K", su, iu, iv)]
        return {key: -c for key, c in gen_mats[("K", su, iv, iu)].items()}

    s_results = []  # (a, b, flattened matrix)
    brackets = {}
    for x in range(dim):
        for y in range(x + 1, dim):
            kx, ky = basis_kind[x], basis_kind[y]
            if kx[0] == "S" and ky[0] == "S":
                mm = s_mats[x] * s_mats[y] - s_mats[y] * s_mats[x]
                ent = mm.entries()
                if any(ent):
                    s_results.append((x, y, ent))
            elif kx[0] == "V" and ky[0] == "V":
                ent = col_bracket(kx[1], ky[1])
                if ent:
                    flat = [f.zero] * (nv * nv)
                    for (r, c), v in ent.items():
                        flat[r * nv + c] = v
                    s_results.append((x, y, flat))
            else:
                sb, vb, sign = (x, y, f.one) if kx[0] == "S" else (y, x, -f.one)
                col = basis_kind[vb][1]
                out = {}
                for r in range(nv):
                    c = s_mats[sb][r, col]
                    if c:
                        out[v_to_basis[r]] = sign * c
                if out:
                    brackets[(x, y)] = out

    if s_index:
        r_mat = f.matrix([s_mats[b].entries() for b in s_index], nv * nv)
        _, rk, piv = rref(r_mat)
        if rk != len(s_index):
            raise ValueError("S rows are dependent")
    if s_results:
        if not s_index:
            raise ValueError("bracket lands outside S(P): not a Kantor pair")
        vmat = f.matrix([e for _, _, e in s_results], nv * nv)
        try:
            coords = coordinates(f, r_mat, vmat)
        except ValueError:
            raise ValueError("bracket lands outside S(P): not a Kantor pair") from None
        for t, (x, y, _) in enumerate(s_results):
            out = {s_index[u]: coords[t, u] for u in range(len(s_index)) if coords[t, u]}
            if out:
                brackets[(x, y)] = out

    alg = GradedLieAlgebra(f, dim, degrees, brackets, names, "Z2" if use_labels else "Z")
    s_rows = [s_mats[b] for b in s_index]
    s_block = Subspace.from_vectors(f, nv * nv, [mm.entries() for mm in s_rows])
    return KantorAlgebra(p, alg, emb, s_block, s_rows, s_index)


# envelopes


def graded_pair(l, degree=1, idx=None, labels=None):
    """Pair (L_-degree, L_degree) with products [[x, y], z], by first degree.

    idx optionally fixes the basis indices used for each sign.
    """
    f = l.field
    if idx is None:
        idx = {s: [i for i, d in enumerate(l.degrees) if d[0] == s * degree] for s in SIGNS}
    pos = {s: {b: t for t, b in enumerate(idx[s])} for s in SIGNS}
    prods = {MINUS: {}, PLUS: {}}
    for s in SIGNS:
        for ti, i in enumerate(idx[s]):
            for tj, j in enumerate(idx[-s]):
                u = l.basis_bracket(i, j)
                if not u:
                    continue
                for tk, k in enumerate(idx[s]):
                    out = {}
                    for c, uc in u.items():
                        for o, v in l.basis_bracket(c, k).items():
                            out[o] = out.get(o, f.zero) + uc * v
                    out = {o: v for o, v in out.items() if v}
                    if not out:
                        continue
                    if any(o not in pos[s] for o in out):
                        raise ValueError("double bracket leaves the chosen component")
                    prods[s][(ti, tj, tk)] = {pos[s][o]: v for o, v in out.items()}
    return TrilinearPair(f, {s: len(idx[s]) for s in SIGNS}, prods, labels)


def enveloped_pair(l, embedding=None):
    """(L_-1, L_1) with {x, y, z} = [[x, y], z]."""
    for d in l.degrees:
        if not -2 <= d[0] <= 2:
            raise ValueError("degree outside -2..2")
    return graded_pair(l, 1, embedding)


def _t_vectors(l, embedding):
    f = l.field
    return [f.unit(l.dim, i) for s in SIGNS for i in embedding[s]]


def _tt_span(l, embedding):
    f = l.field
    ts = [i for s in SIGNS for i in embedding[s]]
    vecs = []
    for a in range(len(ts)):
        for b in range(a + 1, len(ts)):
            vec = l.basis_bracket(ts[a], ts[b])
            if vec:
                v = [f.zero] * l.dim
                for k, c in vec.items():
                    v[k] = c
                vecs.append(v)
    return Subspace.from_vectors(f, l.dim, vecs)


def tight_report(l, embedding):
    f = l.field
    t = Subspace.from_vectors(f, l.dim, _t_vectors(l, embedding))
    gen = subalgebra_generated(l, t)
    meet = center(l).intersect(_tt_span(l, embedding))
    return {"generated_dim": gen.dim, "dim": l.dim, "generates": gen.dim == l.dim,
            "center_meets_tt": meet.dim}


def tight_check(l, embedding):
    """Generated by the pair and no center inside [T, T]."""
    r = tight_report(l, embedding)
    return r["generates"] and r["center_meets_tt"] == 0


def tighten(l, embedding):
    """Tight envelope: generated subalgebra modulo its center inside [T, T].

    Returns (algebra, embedding); the pair's basis vectors stay basis vectors
    in their original order.
    """
    f = l.field
    tvec = _t_vectors(l, embedding)
    gen = subalgebra_generated(l, Subspace.from_vectors(f, l.dim, tvec))
    comps = graded_components(l, gen)
    rows, degs = [], []
    new_emb = {MINUS: [], PLUS: []}
    for d in sorted(comps):
        if d[0] in (-1, 1):
            s = MINUS if d[0] == -1 else PLUS
            own = [i for i in embedding[s] if l.degrees[i] == d]
            piece = comps[d]
            span_t = Subspace.from_vectors(f, l.dim, [f.unit(l.dim, i) for i in own])
            if not span_t.equal(piece):
                raise ValueError("odd components of the generated algebra exceed the pair")
            continue
        for v in comps[d].vectors():
            rows.append(v)
            degs.append(d)
    # degree order, pair vectors in embedding order within a degree
    items = [(l.degrees[i], ("T", s, i)) for s in SIGNS for i in embedding[s]]
    items += [(d, ("R", v)) for v, d in zip(rows, degs)]
    items.sort(key=lambda t: t[0])
    final_rows, final_degs, names = [], [], []
    by_old = {}
    for d, item in items:
        if item[0] == "T":
            by_old[item[2]] = len(final_rows)
            final_rows.append(f.unit(l.dim, item[2]))
            names.append(l.names[item[2]])
        else:
            final_rows.append(item[1])
            names.append(f"r{len(final_rows) - 1}")
        final_degs.append(d)
    for s in SIGNS:
        new_emb[s] = [by_old[i] for i in embedding[s]]
    sub = _change_basis_fast(l, final_rows, final_degs, names)

    cen = center(sub).intersect(_tt_span(sub, new_emb))
    if cen.dim == 0:
        return sub, new_emb
    keep, acc = [], list(cen.vectors())
    for i in range(sub.dim):
        cand = acc + [f.unit(sub.dim, i)]
        if rank(f.matrix(cand, sub.dim)) == len(cand):
            keep.append(i)
            acc = cand
    q = quotient(sub, cen.vectors(), keep)
    pos = {i: t for t, i in enumerate(keep)}
    return q, {s: [pos[i] for i in new_emb[s]] for s in SIGNS}


def _change_basis_fast(l, rows, degrees, names):
    from .lie import change_basis

    return change_basis(l, rows, degrees, names)


class IsoResult:
    def __init__(self, matrix, verified, report, target):
        self.matrix = matrix
        self.verified = verified
        self.report = report
        self.target = target

    def __bool__(self):
        return self.verified

    def __repr__(self):
        return f"IsoResult(verified={self.verified}, {self.report})"


def canonical_iso(l, embedding, p, kantor=None):
    """Graded isomorphism L -> K(P): identity on the pair, [x, y] -> [x, y] on [T, T].

    kantor may be a prebuilt KantorAlgebra of p (for instance with BC2 degrees).
    """
    f = l.field
    k_alg = kantor if kantor is not None else kantor_construct(p)
    kl = k_alg.algebra
    kemb = k_alg.pair_embedding
    report = {}
    for s in SIGNS:
        if len(embedding[s]) != p.dims[s]:
            raise ValueError("embedding does not match the pair")
    if not tight_check(l, embedding):
        report["tight"] = False
        return IsoResult(None, False, report, k_alg)
    report["tight"] = True
    chi = {}
    for s in SIGNS:
        for t, i in enumerate(embedding[s]):
            chi[i] = kemb[s][t]
    ts = [i for s in SIGNS for i in embedding[s]]
    src, dst = [], []
    for a in range(len(ts)):
        for b in range(a + 1, len(ts)):
            u = l.basis_bracket(ts[a], ts[b])
            w = kl.basis_bracket(chi[ts[a]], chi[ts[b]])
            if not u and not w:
                continue
            v1 = [f.zero] * l.dim
            for c, x in u.items():
                v1[c] = x
            v2 = [f.zero] * kl.dim
            for c, x in w.items():
                v2[c] = x
            src.append(v1)
            dst.append(v2)
    # well defined: relations among the brackets hold in the target too
    if src:
        rb = rank(f.matrix(src, l.dim))
        rbc = rank(f.matrix([a + b for a, b in zip(src, dst)], l.dim + kl.dim))
    else:
        rb = rbc = 0
    report["well_defined"] = rb == rbc
    if rb != rbc:
        return IsoResult(None, False, report, k_alg)
    basis_rows, image_rows = [], []
    for i in ts:
        basis_rows.append(f.unit(l.dim, i))
        image_rows.append(f.unit(kl.dim, chi[i]))
    if src:
        red, rk, piv = rref(f.matrix([a + b for a, b in zip(src, dst)], l.dim + kl.dim))
        for r in range(rk):
            rowv = [red[r, c] for c in range(l.dim + kl.dim)]
            if piv[r] < l.dim:
                basis_rows.append(rowv[:l.dim])
                image_rows.append(rowv[l.dim:])
    report["spans"] = len(basis_rows) == l.dim and rank(f.matrix(basis_rows, l.dim)) == l.dim
    if not report["spans"]:
        return IsoResult(None, False, report, k_alg)
    b_mat = f.matrix(basis_rows, l.dim)
    i_mat = f.matrix(image_rows, kl.dim)
    # phi acts on columns: phi * b^T = i^T
    phi = i_mat.transpose() * b_mat.transpose().inv()
    report["bijective"] = l.dim == kl.dim and rank(phi) == l.dim
    deg_ok = True
    for c in range(l.dim):
        for r in range(kl.dim):
            if phi[r, c] and kl.degrees[r] != l.degrees[c]:
                deg_ok = False
    report["degree_preserving"] = deg_ok
    report["bracket_preserving"] = report["bijective"] and is_homomorphism(l, kl, phi)
    ok = all(report[k] for k in ("tight", "well_defined", "spans", "bijective",
                                 "degree_preserving", "bracket_preserving"))
    return IsoResult(phi, ok, report, k_alg)


def jordan_obstruction(p, kantor=None):
    """J(P) = (K(P)_-2, K(P)_2) with products [[x, y], z]."""
    k = kantor if kantor is not None else kantor_construct(p)
    return graded_pair(k.algebra, 2)


# simplicity


def central_simple_char0(p, kantor=None):
    """Verdict from the Killing form and centroid of K(P) (characteristic 0 only)."""
    if p.field.p != 0:
        raise ValueError("the Killing-form criterion needs characteristic 0; use ideal_closure")
    k = kantor if kantor is not None else kantor_construct(p)
    l = k.algebra
    perfect = derived_algebra(l).dim == l.dim
    _, nondeg = killing_form(l)
    if not perfect or not nondeg:
        return "degenerate_killing"
    if centroid_lie(l).dim != 1:
        return "not_central"
    return "central_simple"


class _Lcg:
    def __init__(self, seed):
        self.state = seed & 0x7FFFFFFF

    def next(self):
        self.state = (1103515245 * self.state + 12345) & 0x7FFFFFFF
        return self.state

    def small(self):
        return (self.next() >> 16) % 7 - 3


class IdealReport:
    def __init__(self, verdict, minus, plus, seed, trials, found_from=None):
        self.verdict = verdict
        self.minus = minus
        self.plus = plus
        self.seed = seed
        self.trials = trials
        self.found_from = found_from

    def __repr__(self):
        return (f"IdealReport({self.verdict}, dims=({self.minus.dim}, {self.plus.dim}), "
                f"seed={self.seed}, trials={self.trials})")


def _closure(p, start):
    f = p.field
    spaces = {s: Subspace.from_vectors(f, p.dims[s], start.get(s, [])) for s in SIGNS}
    while True:
        grew = False
        for s in SIGNS:
            new = []
            for (i, j, k), vec in p.products[s].items():
                # {P, P, Q} + {P, Q, P} + {Q, P, P}
                for q in spaces[s].vectors():
                    for c in (q[k], q[i]):
                        if c:
                            v = [f.zero] * p.dims[s]
                            for a, t in vec.items():
                                v[a] = c * t
                            new.append(v)
                for q in spaces[-s].vectors():
                    if q[j]:
                        v = [f.zero] * p.dims[s]
                        for a, t in vec.items():
                            v[a] = q[j] * t
                        new.append(v)
            if new:
                nxt = Subspace.from_vectors(f, p.dims[s], spaces[s].vectors() + new)
                if nxt.dim > spaces[s].dim:
                    spaces[s] = nxt
                    grew = True
        if not grew:
            return spaces


def ideal_closure(p, seeds=None, trials=10, seed=0):
    """Close seed vectors (and pseudo-random ones) under the ideal products.

    Reports proper_ideal_found as soon as some closure is proper and nonzero;
    no_counterexample is evidence, not proof.
    """
    f = p.field
    total = p.dims[MINUS] + p.dims[PLUS]
    starts = []
    if seeds is not None:
        starts.append(("seeds", {s: [list(v) for v in seeds.get(s, [])] for s in SIGNS}))
    gen = _Lcg(seed)
    for t in range(trials):
        s = SIGNS[gen.next() % 2] if p.dims[MINUS] and p.dims[PLUS] else (PLUS if p.dims[PLUS] else MINUS)
        if p.dims[s] == 0:
            continue
        v = [f(gen.small()) for _ in range(p.dims[s])]
        if not any(v):
            v[0] = f.one
        starts.append((f"trial{t}", {s: [v]}))
    last = None
    for label, st in starts:
        sp = _closure(p, st)
        last = sp
        d = sp[MINUS].dim + sp[PLUS].dim
        if 0 < d < total:
            return IdealReport("proper_ideal_found", sp[MINUS], sp[PLUS], seed, trials, label)
    if last is None:
        last = {s: Subspace.zero(f, p.dims[s]) for s in SIGNS}
    return IdealReport("no_counterexample", last[MINUS], last[PLUS], seed, trials)
