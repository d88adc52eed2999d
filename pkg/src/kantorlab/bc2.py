"""BC2 root data, its Weyl group and Weyl images of SP-graded pairs.

Degrees live in the base coordinates (l1, l2) = l1*alpha1 + l2*alpha2 with
alpha1 short and alpha2 long.  Pair transforms can report an origin map:
origin[s][t] = (tau, j) says basis vector t of the new s-space is basis
vector j of the old tau-space.
"""
from .kantor import graded_pair, kantor_construct
from .lie import grading_check, with_degrees
from .pairs import MINUS, PLUS, SIGNS, TrilinearPair, opposite_pair

ROOTS = frozenset({
    (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1),
    (2, 0), (-2, 0), (2, 1), (-2, -1), (2, 2), (-2, -2),
})
SUPPORT = ROOTS | {(0, 0)}
SHORT = frozenset({(1, 0), (-1, 0), (1, 1), (-1, -1)})


class WeylElement:
    def __init__(self, name, matrix):
        self.name = name
        self.matrix = tuple(tuple(r) for r in matrix)

    def __call__(self, d):
        (a, b), (c, e) = self.matrix
        return (a * d[0] + b * d[1], c * d[0] + e * d[1])

    def __mul__(self, other):
        return element_of_matrix(_mul(self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WeylElement({self.name})"


def _mul(m, n):
    return tuple(tuple(sum(m[i][k] * n[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _neg(m):
    return tuple(tuple(-x for x in r) for r in m)


_S1 = ((-1, 2), (0, 1))
_S2 = ((1, 0), (1, -1))
_ID = ((1, 0), (0, 1))
_MATS = {
    "1": _ID,
    "s1": _S1,
    "s2": _S2,
    "s2s1": _mul(_S2, _S1),
}
for _k in list(_MATS):
    _MATS["-" + _k if _k != "1" else "-1"] = _neg(_MATS[_k])
NAMES = ("1", "s1", "s2", "s2s1", "-1", "-s1", "-s2", "-s2s1")
_BY_MATRIX = {m: n for n, m in _MATS.items()}
ALIASES = {"s1s2": "-s2s1", "-s1s2": "s2s1", "id": "1", "e": "1"}


def element(name):
    name = ALIASES.get(name, name)
    if name not in _MATS:
        raise ValueError(f"unknown Weyl element {name!r}")
    return WeylElement(name, _MATS[name])


def element_of_matrix(m):
    m = tuple(tuple(r) for r in m)
    if m not in _BY_MATRIX:
        raise ValueError("matrix is not in the Weyl group")
    return WeylElement(_BY_MATRIX[m], m)


def weyl_group():
    """The 8 elements and their multiplication table {(a, b): a*b} by name."""
    els = [element(n) for n in NAMES]
    table = {(a.name, b.name): (a * b).name for a in els for b in els}
    return els, table


def epsilon_coords(d):
    """Display coordinates <k1 - k2, k2> of a root-lattice point."""
    return (d[0] - d[1], d[1])


def theta_image(l, u, check=True):
    """Same algebra, each degree d replaced by u(d)."""
    if check:
        ok, rep = grading_check(l, SUPPORT)
        if not ok:
            raise ValueError(f"not BC2-graded: {rep[:3]}")
    return with_degrees(l, [u(d) for d in l.degrees], "Z2")


def _sp_indices(l):
    return {s: [i for i, d in enumerate(l.degrees) if d[0] == s] for s in SIGNS}


def _sp_from(l, idx):
    labels = {s: [s * l.degrees[i][1] for i in idx[s]] for s in SIGNS}
    for s in SIGNS:
        if any(x not in (0, 1) for x in labels[s]):
            raise ValueError("degree (+-1, *) outside the short roots")
    return graded_pair(l, 1, idx, labels)


def sp_pair_from_bc2(l, check=True):
    """SP-graded pair with P_i^s = L_(s, s i), basis in L's order."""
    if check:
        ok, rep = grading_check(l, SUPPORT)
        if not ok:
            raise ValueError(f"not BC2-graded: {rep[:3]}")
    return _sp_from(l, _sp_indices(l))


def standard_bc2_on_kantor(p):
    """K(P) with degrees K_(s, s i) = P_i^s and S(P)-rows graded accordingly."""
    if p.sp_labels is None:
        raise ValueError("pair carries no SP labels")
    return kantor_construct(p, use_labels=True)


def _identity_origin(p):
    return {s: [(s, j) for j in range(p.dims[s])] for s in SIGNS}


def _order_rule(items, label_of):
    """Keep source order unless the items mix source signs; then label 0 first."""
    if len({it[0] for it in items}) <= 1:
        return list(items)
    return [it for it in items if label_of(it) == 0] + [it for it in items if label_of(it) == 1]


def _weyl(p, u, kantor=None):
    k = kantor if kantor is not None else standard_bc2_on_kantor(p)
    img = theta_image(k.algebra, u, check=False)
    where = {}
    for s in SIGNS:
        for j, b in enumerate(k.pair_embedding[s]):
            where[b] = (s, j)
    idx, origin = {}, {}
    for s in SIGNS:
        items = [(where[b], b) for b, d in enumerate(img.degrees) if d[0] == s]
        if any(b not in where for _, b in items):
            raise ValueError("a short-root component is not part of the pair")
        chosen = _order_rule([(o[0], o[1], b) for o, b in items],
                             lambda it, s=s: s * img.degrees[it[2]][1])
        idx[s] = [it[2] for it in chosen]
        origin[s] = [(it[0], it[1]) for it in chosen]
    return _sp_from(img, idx), origin


def weyl_image(p, u, with_origin=False):
    """The u-image of an SP-graded Kantor pair, computed through K(P)."""
    if isinstance(u, str):
        u = element(u)
    q, origin = _weyl(p, u)
    return (q, origin) if with_origin else q


def _reflect(p):
    if p.sp_labels is None:
        raise ValueError("pair carries no SP labels")
    f = p.field
    lab = p.sp_labels
    origin, pos = {}, {}
    for s in SIGNS:
        items = [(-s, j) for j in range(p.dims[-s]) if lab[-s][j] == 0]
        items += [(s, j) for j in range(p.dims[s]) if lab[s][j] == 1]
        origin[s] = items
        pos[s] = {it: t for t, it in enumerate(items)}
    prods = {MINUS: {}, PLUS: {}}

    def add(s, a, b, c, vec, sign, src):
        key = (pos[s][a], pos[-s][b], pos[s][c])
        d = prods[s].setdefault(key, {})
        for o, v in vec.items():
            t = pos[s][(src, o)]
            d[t] = d.get(t, f.zero) + sign * v

    one = f.one
    for s in SIGNS:
        # products of P^-s feed the s-product of the reflection, and vice versa
        for (i, j, k), vec in p.products[-s].items():
            pat = (lab[-s][i], lab[s][j], lab[-s][k])
            if pat == (0, 0, 0):
                add(s, (-s, i), (s, j), (-s, k), vec, one, -s)
            elif pat == (1, 1, 0):
                # -{b, a, c} with b = i, a = j, c = k; and -{b, c, a} inside K(a, b)c
                add(s, (s, j), (-s, i), (-s, k), vec, -one, -s)
                add(s, (-s, k), (-s, i), (s, j), vec, -one, -s)
            elif pat == (0, 1, 1):
                # {a, c, b} inside K(a, b)c with a = i, c = j, b = k
                add(s, (-s, i), (-s, k), (s, j), vec, one, -s)
        for (i, j, k), vec in p.products[s].items():
            pat = (lab[s][i], lab[-s][j], lab[s][k])
            if pat == (1, 1, 1):
                add(s, (s, i), (-s, j), (s, k), vec, one, s)
            elif pat == (0, 0, 1):
                # -{b, a, c} with b = i, a = j, c = k; and -{b, c, a} inside K(a, b)c
                add(s, (-s, j), (s, i), (s, k), vec, -one, s)
                add(s, (s, k), (s, i), (-s, j), vec, -one, s)
            elif pat == (1, 0, 0):
                # {a, c, b} inside K(a, b)c with a = i, c = j, b = k
                add(s, (s, i), (s, k), (-s, j), vec, one, s)
    labels = {s: [lab[t][j] for t, j in origin[s]] for s in SIGNS}
    q = TrilinearPair(f, {s: len(origin[s]) for s in SIGNS}, prods, labels)
    return q, origin


def reflection_direct(p, with_origin=False):
    """The reflection of an SP-graded pair from the termwise product formula."""
    q, origin = _reflect(p)
    return (q, origin) if with_origin else q


def _shift(p):
    if p.sp_labels is None:
        raise ValueError("pair carries no SP labels")
    q = TrilinearPair(p.field, p.dims, p.products, {s: [1 - x for x in p.sp_labels[s]] for s in SIGNS})
    return q, _identity_origin(p)


def _op(p):
    if p.sp_labels is None:
        raise ValueError("pair carries no SP labels")
    return opposite_pair(p), {s: [(-s, j) for j in range(p.dims[-s])] for s in SIGNS}


def sp_shift(p, with_origin=False):
    q, o = _shift(p)
    return (q, o) if with_origin else q


def sp_opposite(p, with_origin=False):
    q, o = _op(p)
    return (q, o) if with_origin else q


def compose_origins(outer, inner):
    """Origin of a transform applied after another one."""
    return {s: [inner[t][j] for t, j in outer[s]] for s in SIGNS}


def align(q, origin, target_origin):
    """Reorder q's basis so that its origin list matches target_origin."""
    from .pairs import permute

    order = {}
    for s in SIGNS:
        where = {o: t for t, o in enumerate(origin[s])}
        if set(where) != set(target_origin[s]) or len(where) != len(origin[s]):
            raise ValueError("origins cover different basis vectors")
        order[s] = [where[o] for o in target_origin[s]]
    return permute(q, order)


def s1_obstruction_report(l, source, omega):
    """Carry a map source -> (E_-2, E_2) of the s1-image E of l into J of the reflection.

    omega maps into graded_pair(E, 2) (basis in E's order).  The reflection R
    of the SP-pair of l is built termwise; its J(K(R)) is reached through the
    canonical isomorphism E -> K(R) restricted to degrees +-2.
    """
    from .exact_linalg import rank
    from .kantor import canonical_iso, jordan_obstruction
    from .pairs import PairMap, check_homomorphism

    f = l.field
    r = reflection_direct(sp_pair_from_bc2(l))
    img = theta_image(l, element("s1"))
    target = graded_pair(img, 2)
    rep = {"source_dims": (source.dims[MINUS], source.dims[PLUS])}
    rep["map_hom"] = check_homomorphism(source, target, omega)
    rep["map_bijective"] = all(
        omega.components[s].nrows() == omega.components[s].ncols() == source.dims[s]
        and rank(omega.components[s]) == source.dims[s] for s in SIGNS)
    kb = standard_bc2_on_kantor(r)
    obs = jordan_obstruction(r, kb)
    rep["obstruction_dims"] = (obs.dims[MINUS], obs.dims[PLUS])
    emb = {s: [i for i, d in enumerate(img.degrees) if d[0] == s] for s in SIGNS}
    # the reflection lists label 0 first, the s1-image lists by index: align
    emb = {s: sorted(emb[s], key=lambda i, s=s: s * img.degrees[i][1]) for s in SIGNS}
    rep["envelope_pair_equal"] = graded_pair(img, 1, emb, r.sp_labels) == r
    iso = canonical_iso(img, emb, r, kb)
    rep["canonical_iso"] = iso.verified
    rep["source_to_obstruction_hom"] = False
    if iso.verified:
        comps = {}
        kl = kb.algebra
        for s in SIGNS:
            rows = [i for i, d in enumerate(kl.degrees) if d[0] == 2 * s]
            cols = [i for i, d in enumerate(img.degrees) if d[0] == 2 * s]
            block = f.zeros(len(rows), len(cols))
            for a, i in enumerate(rows):
                for b, j in enumerate(cols):
                    block[a, b] = iso.matrix[i, j]
            comps[s] = block * omega.components[s]
        rep["source_to_obstruction_hom"] = check_homomorphism(source, obs, PairMap(comps))
    return rep
