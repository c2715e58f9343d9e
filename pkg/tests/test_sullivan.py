import pytest

from elliptica import dsl, invariants, sullivan
from elliptica.commutative import Generator
from elliptica.errors import TruncationNotClosed
from elliptica.sullivan import SullivanModel, tensor_product


def truncated_polynomial_betti(a, m, top):
    """Betti oracle for Lambda(x:2a, y:2am-1), dy = x^m: the cohomology is
    Q[x]/(x^m), so dimension 1 exactly at 0, 2a, ..., 2a(m-1)."""
    hits = {2 * a * k for k in range(m)}
    return [1 if i in hits else 0 for i in range(top + 1)]


@pytest.mark.parametrize("a,m", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3),
                                 (3, 2)])
def test_cohomology_matches_truncated_polynomial_oracle(a, m):
    x = Generator("x", 2 * a, 0)
    y = Generator("y", 2 * a * m - 1, 1)
    model = SullivanModel([x, y], {}, name="tp")
    dy = model.algebra.from_monomial(((0, m),))
    model = SullivanModel([x, y], {1: dy}, name="tp")
    top = 2 * a * m + 2
    cx = model.complex()
    assert [cx.betti(i) for i in range(top + 1)] == \
        truncated_polynomial_betti(a, m, top)


def test_odd_sphere_cohomology(s3):
    cx = s3.complex()
    assert [cx.betti(i) for i in range(8)] == [1, 0, 0, 1, 0, 0, 0, 0]


def test_kunneth_on_products(catalog_sullivan):
    """Betti numbers of a tensor product are the convolution of the factors'."""
    a = dsl.catalog_spec("s2")
    b = dsl.catalog_spec("sphere_odd(3)")
    prod = tensor_product(a, b)
    top = 8
    ba = [a.complex().betti(i) for i in range(top + 1)]
    bb = [b.complex().betti(i) for i in range(top + 1)]
    conv = [sum(ba[j] * bb[i - j] for j in range(i + 1)) for i in range(top + 1)]
    bp = [prod.complex().betti(i) for i in range(top + 1)]
    assert bp == conv


def test_validation_catches_d_squared():
    x = Generator("x", 2, 0)
    y = Generator("y", 3, 1)
    z = Generator("z", 4, 2)
    scratch = SullivanModel([x, y, z], {})
    alg = scratch.algebra
    # dy = x^2 and dz = x*y give d(dz) = x^3 != 0
    bad = SullivanModel([x, y, z], {
        1: alg.from_monomial(((0, 2),)),
        2: alg.multiply(alg.gen("x"), alg.gen("y")),
    })
    report = bad.validate()
    assert any(i.check == "d-squared" for i in report.issues)


def test_validation_catches_linear_terms_and_low_degrees():
    x = Generator("x", 2, 0)
    y = Generator("y", 1, 1)
    report = SullivanModel([x, y], {}).validate()
    assert any(i.check == "simple-connectivity" for i in report.issues)


def test_truncation_closure_enforced():
    x = Generator("x", 2, 0)
    y = Generator("y", 3, 1)
    scratch = SullivanModel([x, y], {})
    m = SullivanModel([x, y], {1: scratch.algebra.from_monomial(((0, 2),))})
    t = m.truncate(2)
    assert [g.name for g in t.generators] == ["x"]
    # truncating so that d(y) escapes must fail on a model where it would
    w = Generator("w", 4, 0)
    v = Generator("v", 3, 1)
    scratch2 = SullivanModel([w, v], {})
    m2 = SullivanModel([v, w], {})  # no differential: fine at any cut
    assert m2.truncate(3).generators[0].name == "v"


def test_truncation_not_closed_raises():
    # d(u) involves z of degree 4; cutting at 5 keeps u:5 but drops nothing,
    # cutting at 3 drops z while keeping nothing that maps to it -- build a
    # case where a kept generator maps onto a dropped one's product.
    z = Generator("z", 4, 0)
    u = Generator("u", 7, 1)
    scratch = SullivanModel([z, u], {})
    m = SullivanModel([z, u], {1: scratch.algebra.from_monomial(((0, 2),))})
    with pytest.raises(TruncationNotClosed):
        # keep u (degree 7) but cut z away: impossible directly since z < u;
        # emulate via a same-degree pair instead
        z2 = Generator("z", 8, 0)
        u2 = Generator("u", 7, 1)
        s2_ = SullivanModel([z2, u2], {})
        mm = SullivanModel([z2, u2], {1: s2_.algebra.from_monomial(((0, 1),))})
        mm.truncate(7)


def test_l_spaces_cpn(cp2):
    assert [sullivan.L_dim(cp2, i) for i in range(4, 11)] == \
        [1, 0, 1, 0, 0, 0, 0]
    cp3 = dsl.catalog("cpn_sullivan", 3)
    assert [sullivan.L_dim(cp3, i) for i in range(4, 15)] == \
        [1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0]


def test_whitehead_sequence_exact_on_catalog(catalog_sullivan):
    for m in catalog_sullivan:
        bound = min(invariants.default_bound(m), 12)
        report = sullivan.whitehead_sequence(m, bound)
        assert report.exact


def test_whitehead_nodes_cp2(cp2):
    report = sullivan.whitehead_sequence(cp2, 6)
    by_deg = {n.degree: n for n in report.nodes}
    assert by_deg[2].dim_v == 1 and by_deg[2].rank_b == 0
    assert by_deg[5].dim_v == 1 and by_deg[5].dim_l_next == 1
    assert by_deg[5].rank_b == 1  # d(y) = x^3 hits L^6
