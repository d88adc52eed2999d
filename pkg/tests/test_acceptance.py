"""Acceptance criteria 1-10, one test each, each printing a single PASS/FAIL line.

Run alone with `pytest tests/test_acceptance.py -v`; the lines print even without -s.
"""
import time
from fractions import Fraction

import pytest

from kantorlab.exact_linalg import QQ, Field, Subspace
from kantorlab import e6, skew
from kantorlab.bc2 import (NAMES, SUPPORT, align, compose_origins, reflection_direct,
                           sp_opposite, sp_shift, weyl_group, weyl_image)
from kantorlab.kantor import (canonical_iso, central_simple_char0, check_kantor, enveloped_pair,
                              graded_pair, jordan_obstruction, kantor_construct, tight_check, tighten)
from kantorlab.lie import center, derived_algebra, grading_check, jacobi_check, subalgebra_generated
from kantorlab.pairs import (MINUS, PLUS, SIGNS, check_grading, direct_sum, is_jordan,
                             jordan_1d, matrix_pair, opposite_pair)

import test_e6 as ext_suite
from oracles import fraction_rank
from test_kantor import test_sign_table as sign_table_suite


class Checks:
    """Collects named boolean checks; the criterion passes when all of them hold."""

    def __init__(self):
        self.failed = []
        self.t0 = time.perf_counter()

    def __call__(self, name, ok):
        if not ok:
            self.failed.append(name)
        return ok

    def run(self, name, fn, *args):
        try:
            fn(*args)
        except AssertionError:
            self.failed.append(name)


@pytest.fixture
def report(request, capsys):
    checks = Checks()
    yield checks
    n = request.node.callspec.params["n"] if hasattr(request.node, "callspec") else request.node.name
    verdict = "FAIL" if checks.failed else "PASS"
    with capsys.disabled():
        extra = f" (failed: {', '.join(checks.failed)})" if checks.failed else ""
        print(f"\ncriterion {n}: {verdict} [{time.perf_counter() - checks.t0:.1f}s]{extra}")
    assert not checks.failed, checks.failed


def _criterion(n):
    return pytest.mark.parametrize("n", [n])


def _pair_dims(p):
    return (p.dims[MINUS], p.dims[PLUS])


def _same(q, q_origin, r, r_origin):
    return align(q, q_origin, r_origin) == r


@_criterion(1)
def test_criterion_1_e6(n, report, e6_alg):
    l = e6_alg.algebra
    report("dim 78", l.dim == 78)
    report("degree dims", l.first_degree_dims() == (1, 20, 36, 20, 1))
    t = time.perf_counter()
    report("jacobi", jacobi_check(l)[0])
    report("jacobi budget", time.perf_counter() - t < 300)
    report("center 0", center(l).dim == 0)


@_criterion(2)
def test_criterion_2_roots(n, report, e6_alg):
    t = time.perf_counter()
    roots = e6.root_decomposition(e6_alg)
    fams = {}
    for r in roots.roots:
        fams[r["family"]] = fams.get(r["family"], 0) + 1
    report("72 roots", len(roots.roots) == 72)
    report("one-dimensional", all(r["space_dim"] == 1 for r in roots.roots))
    report("families", fams == {"48": 30, "49": 40, "50": 2})
    report("cartan", roots.cartan == e6.E6_CARTAN)
    report("chevalley", e6.chevalley_checks(e6_alg, roots) == {"a_ok": True, "b_ok": True, "c_ok": True})
    report("budget", time.perf_counter() - t < 120)


@_criterion(3)
def test_criterion_3_lambda3(n, report, lambda3, k_lambda3, e6_alg):
    p = lambda3.without_labels()
    t = time.perf_counter()
    report("check_kantor", check_kantor(p)[0])
    report("budget", time.perf_counter() - t < 900)
    report("balanced 20", _pair_dims(p) == (20, 20))
    j = jordan_obstruction(p, kantor=k_lambda3)
    report("obstruction (1,1)", _pair_dims(j) == (1, 1))
    # J = (L_-2, L_2) with {p, q, r} = 2(p . q) r; on the top basis vectors p . q = 1
    prods = e6_alg.algebra.indices_of_degree(lambda d: abs(d[0]) == 2)
    report("top degree basis", len(prods) == 2)
    jp = graded_pair(e6_alg.algebra, 2)
    pq = e6.pairing(e6_alg.ctx, e6.ExtElement.basis(QQ, MINUS, tuple(range(6))),
                    e6.ExtElement.basis(QQ, PLUS, tuple(range(6))))
    report("obstruction product", all(jp.products[s] == {(0, 0, 0): {0: 2 * pq}} for s in SIGNS))
    report("K dims", k_lambda3.algebra.first_degree_dims() == (1, 20, 36, 20, 1))
    iso = canonical_iso(e6_alg.algebra, e6_alg.pair_embedding(), p, kantor=k_lambda3)
    report("canonical iso", bool(iso.verified))


@_criterion(4)
def test_criterion_4_lambda3_reflected(n, report, lambda3_reflected):
    q = lambda3_reflected
    report("check_kantor", check_kantor(q)[0])
    report("not jordan", not is_jordan(q))
    report("balanced 20", _pair_dims(q) == (20, 20))
    report("obstruction (5,5)", _pair_dims(jordan_obstruction(q.without_labels())) == (5, 5))
    rep = e6.lambda3_obstruction_report(QQ)
    report("U^op identification", rep["obstruction_dims"] == (5, 5) and all(
        rep[k] is True for k in ("map_hom", "map_bijective", "source_to_obstruction_hom")))


@_criterion(5)
def test_criterion_5_weyl_laws(n, report, sp_fskew4, lambda3, lambda3_reflected):
    p = sp_fskew4
    images = {u: weyl_image(p, u, with_origin=True) for u in NAMES}
    els, table = weyl_group()
    bad = 0
    for b in els:
        q2, o2 = images[b.name]
        for a in els:
            q12, o12 = weyl_image(q2, a, with_origin=True)
            r, ro = images[table[(a.name, b.name)]]
            bad += not _same(q12, compose_origins(o12, o2), r, ro)
    report("64 compositions", bad == 0)
    q, o = images["-1"]
    r, ro = sp_opposite(p, with_origin=True)
    report("-1 is opposite", _same(q, o, r, ro) and r.products == opposite_pair(p).products)
    q, o = images["s2"]
    r, ro = sp_shift(p, with_origin=True)
    report("s2 is shift", _same(q, o, r, ro))
    report("reflection fskew", reflection_direct(p) == images["s1"][0])
    report("reflection lambda3", lambda3_reflected == weyl_image(lambda3, "s1"))


@_criterion(6)
def test_criterion_6_fskew(n, report, fs4, sp_fskew4, fskew4_reflected):
    for m in (2, 3, 4, 5):
        fs = skew.FormSpace.standard(QQ, m)
        _, mats = skew.build_fso(fs, with_matrices=True)
        span = fraction_rank([[Fraction(str(x)) for x in a.entries()] for a in mats])
        report(f"fso dim n={m}", len(mats) == span == m * (2 * m - 1))
    dims = skew.bc2_on_fso(fs4).degree_dims()
    short = [dims.get(d, 0) for d in [(-1, 0), (1, 0), (-1, -1), (1, 1), (0, -1), (0, 1)]]
    report("bc2 dims", short == [3] * 6 and dims[(0, 0)] == 10 and sum(dims.values()) == 28)
    report("long roots empty", all(d not in dims for d in [(2, 0), (-2, 0), (2, 2), (-2, -2)]))
    q = fskew4_reflected
    report("reflection kantor", check_kantor(q)[0])
    report("reflection not jordan", not is_jordan(q))
    report("obstruction (3,3)", _pair_dims(jordan_obstruction(q.without_labels())) == (3, 3))
    rep = skew.obstruction_report(fs4)
    report("lambda map", all(rep[k] is True for k in ("lambda_hom", "lambda_bijective",
                                                      "u_op_to_obstruction_hom")))


@_criterion(7)
def test_criterion_7_central_simple(n, report, lambda3, lambda3_reflected, k_lambda3, sp_fskew4,
                                    fskew4_reflected, two_jordan):
    report("lambda3", central_simple_char0(lambda3.without_labels(), kantor=k_lambda3) == "central_simple")
    report("lambda3 reflected", central_simple_char0(lambda3_reflected.without_labels()) == "central_simple")
    report("fskew4", central_simple_char0(sp_fskew4.without_labels()) == "central_simple")
    report("fskew4 reflected", central_simple_char0(fskew4_reflected.without_labels()) == "central_simple")
    report("two jordan", central_simple_char0(two_jordan) == "not_central")


@_criterion(8)
def test_criterion_8_tight(n, report, sp_fskew4, fskew4_reflected, lambda3, lambda3_reflected,
                           k_lambda3, two_jordan, e_tilde):
    fixtures = {
        "jordan1d": jordan_1d(QQ),
        "matrix23": matrix_pair(QQ, 2, 3),
        "two_jordan": two_jordan,
        "fskew4": sp_fskew4.without_labels(),
        "fskew4_reflected": fskew4_reflected.without_labels(),
        "u_pair": e6.u_pair(QQ),
        "lambda3_reflected": lambda3_reflected.without_labels(),
    }
    for name, p in fixtures.items():
        k = kantor_construct(p)
        report(name, tight_check(k.algebra, k.pair_embedding))
    report("lambda3", tight_check(k_lambda3.algebra, k_lambda3.pair_embedding))
    alg = e_tilde[0]
    emb = {s: [i for i, d in enumerate(alg.degrees) if d[0] == s] for s in SIGNS}
    t, temb = tighten(alg, emb)
    report("tighten dims", t.first_degree_dims() == (1, 20, 36, 20, 1))
    report("tighten pair", enveloped_pair(t, temb).same_products(lambda3.without_labels()))


def _bracket_span_dim(l, i, j):
    vecs = []
    for a in l.indices_of_degree(lambda d: d[0] == i):
        for b in l.indices_of_degree(lambda d: d[0] == j):
            v = [l.field.zero] * l.dim
            for k, c in l.basis_bracket(a, b).items():
                v[k] = c
            vecs.append(v)
    return Subspace.from_vectors(l.field, l.dim, vecs).dim


@_criterion(9)
def test_criterion_9_positive_characteristic(n, report):
    for p in (5, 7):
        f = Field(p)
        tilde = e6.build_e_tilde(f)
        ea = e6.build_e(f, tilde=tilde)
        l = ea.algebra
        report(f"GF({p}) jacobi", jacobi_check(l)[0])
        # basis: h1..h6, E_ij (i != j), the 20 + 20 triples and the two top vectors
        names = set(l.names)
        basis_ok = ({f"h{i}" for i in range(1, 7)} | {f"E{i}{j}" for i in range(1, 7)
                                                      for j in range(1, 7) if i != j}) <= names
        report(f"GF({p}) basis", basis_ok and l.first_degree_dims() == (1, 20, 36, 20, 1))
        comp = l.first_degree_dims()
        spans = {(i, j): _bracket_span_dim(l, i, j) for i, j in [(-1, 1), (1, 1), (-1, -1), (-1, 2), (1, -2)]}
        report(f"GF({p}) graded brackets", spans == {(-1, 1): comp[2], (1, 1): comp[4], (-1, -1): comp[0],
                                                     (-1, 2): comp[3], (1, -2): comp[1]})
        odd = l.indices_of_degree(lambda d: abs(d[0]) == 1)
        gen = subalgebra_generated(l, Subspace.from_vectors(f, l.dim, [f.unit(l.dim, i) for i in odd]))
        report(f"GF({p}) generated by odd part", gen.dim == 78)
        report(f"GF({p}) derived", derived_algebra(tilde[0]).dim == 78 and derived_algebra(l).dim == 78)

        # pair-level suites
        lam = e6.lambda3_pair(f, labelled=True)
        report(f"GF({p}) lambda3 kantor", check_kantor(lam)[0])
        report(f"GF({p}) lambda3 envelope",
               enveloped_pair(l, ea.pair_embedding()).same_products(lam.without_labels()))
        fs = skew.FormSpace.standard(f, 4)
        sp = skew.sp_fskew(fs)
        report(f"GF({p}) fskew kantor jordan", check_kantor(sp)[0] and is_jordan(sp))
        r = reflection_direct(sp)
        report(f"GF({p}) reflection", check_kantor(r)[0] and not is_jordan(r)
               and _pair_dims(jordan_obstruction(r.without_labels())) == (3, 3))
        report(f"GF({p}) reflection = s1 image", r == weyl_image(sp, "s1"))
        report(f"GF({p}) images kantor", all(check_grading(weyl_image(sp, u), weyl_image(sp, u).sp_labels)[0]
                                             for u in NAMES))
        rep = skew.obstruction_report(fs)
        report(f"GF({p}) lambda map", rep["lambda_hom"] and rep["u_op_to_obstruction_hom"])
        k = kantor_construct(sp.without_labels())
        report(f"GF({p}) tight", tight_check(k.algebra, k.pair_embedding) and grading_check(k.algebra)[0])
        bc = skew.bc2_on_fso(fs)
        report(f"GF({p}) bc2 grading", grading_check(bc, SUPPORT)[0] and bc.dim == 28)


@_criterion(10)
def test_criterion_10_properties(n, report, fskew4_reflected, sp_fskew4, two_jordan):
    report.run("sign table", sign_table_suite, fskew4_reflected)
    for g in (None, ext_suite.RANDOM_G):
        ctx = e6.ExteriorContext(QQ, g)
        tag = "identity" if g is None else "random g"
        report.run(f"pairing nondegenerate ({tag})", ext_suite.test_pairing_nondegenerate, ctx)
        report.run(f"top degree contraction ({tag})", ext_suite.test_top_degree_contraction, ctx)
        report.run(f"derivation compatibility ({tag})", ext_suite.test_derivation_compatibility, ctx)
        report.run(f"trace on top degree ({tag})", ext_suite.test_trace_on_top_degree, ctx)
        report.run(f"e operator adjoint ({tag})", ext_suite.test_e_operator_adjoint_and_trace, ctx)
    # reflection stays Jordan when both labelled parts are ideals
    p = two_jordan.with_labels({MINUS: [0, 1], PLUS: [0, 1]})
    q = reflection_direct(p)
    report("two ideals: reflection jordan", is_jordan(q) and check_kantor(q)[0])
    mixed = direct_sum(jordan_1d(QQ), jordan_1d(QQ)).with_labels({MINUS: [1, 1], PLUS: [1, 1]})
    report("trivial label-1 grading: reflection jordan", is_jordan(reflection_direct(mixed)))
    report("fskew4: reflection not jordan", is_jordan(sp_fskew4) and not is_jordan(fskew4_reflected))
