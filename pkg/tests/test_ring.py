import threading

import pytest

from jacring.errors import InvalidParameter, NotSmooth, RingMismatch, SmoothnessNotFound
from jacring.forms import parse_form
from jacring.linalg import FieldMode
from jacring.ring import (
    DegreeSubspace,
    degree_basis,
    dim_R,
    hilbert_series,
    koszul_cohomology_dims,
    macaulay_pairing_rank,
    make_fermat,
    make_random_smooth,
    make_ring,
    multiply,
    normal_form,
    product_span_rank,
    root_extension,
    smoothness_certificate,
    socle_degree,
)
from oracles import binom, brute_dim_R, capped_count, hilbert_coeffs

PRIME = FieldMode.prime()


def dims(ring, top=None):
    top = ring.socle + 1 if top is None else top
    return tuple(dim_R(ring, mu) for mu in range(top + 1))


def test_fermat_examples():
    assert dims(make_fermat(5, 2)) == (1, 2, 3, 4, 3, 2, 1, 0)
    r = make_fermat(5, 5)
    assert socle_degree(r) == 15
    assert dim_R(r, 5) == 101 and dim_R(r, 4) == 65
    assert dim_R(r, 15) == 1 and dim_R(r, 16) == 0 and dim_R(r, -1) == 0
    assert dims(make_fermat(2, 3), 3) == (1, 0, 0, 0)
    assert socle_degree(make_fermat(4, 3)) == 6


@pytest.mark.parametrize("d,nvars", [(1, 3), (5, 1)])
def test_fermat_rejects_bad_parameters(d, nvars):
    with pytest.raises(InvalidParameter):
        make_fermat(d, nvars)


@pytest.mark.parametrize("d,nvars", [(3, 3), (4, 3), (5, 4), (6, 2)])
def test_fermat_dims_match_capped_enumeration(d, nvars):
    r = make_fermat(d, nvars)
    assert dims(r) == tuple(capped_count(mu, nvars, d - 2) for mu in range(r.socle + 2))


def test_standard_monomials():
    r = make_fermat(4, 2)
    assert degree_basis(r, 2) == ((2, 0), (1, 1), (0, 2))
    assert degree_basis(r, 3) == ((2, 1), (1, 2))
    assert degree_basis(make_random_smooth(4, 3, seed=1), 0) == ((0, 0, 0),)


def test_random_examples():
    r = make_random_smooth(4, 3, seed=1)
    assert dims(r, r.socle) == (1, 3, 6, 7, 6, 3, 1)
    r = make_random_smooth(3, 2, seed=7)
    assert r.socle == 2 and dims(r, 2) == (1, 2, 1)
    assert dims(make_random_smooth(2, 2, seed=0), 1) == (1, 0)


def test_random_is_deterministic():
    a = make_random_smooth(4, 3, seed=5)
    b = make_random_smooth(4, 3, seed=5)
    c = make_random_smooth(4, 3, seed=6)
    assert a.form == b.form and a.form != c.form
    assert make_random_smooth(4, 3, PRIME, seed=5).form.terms.keys() == a.form.terms.keys()


def test_random_exhaustion():
    with pytest.raises(SmoothnessNotFound):
        make_random_smooth(4, 3, seed=0, max_tries=0)


@pytest.mark.parametrize("text", ["x0^3 + x1^3 + x2^3 + x0*x1*x2", "x0^4 - 2*x0*x1^3 + x1^4 + 3*x2^4"])
def test_dims_match_brute_force(text):
    f = parse_form(text)
    r = make_ring(f)
    terms = {e: int(f.field.export(c)) for e, c in f.terms.items()}
    for mu in range(r.socle + 2):
        assert dim_R(r, mu) == brute_dim_R(terms, f.nvars, f.degree, mu)


def test_small_degree_formulas():
    r = make_random_smooth(5, 4, seed=2)
    n, d = r.n, r.d
    for mu in range(d - 1):
        assert dim_R(r, mu) == binom(n + mu, n)
    assert dim_R(r, d - 1) == binom(n + d - 1, n) - (n + 1)


def test_hilbert_series_helper():
    for d, k in [(3, 3), (4, 3), (5, 4), (2, 5)]:
        assert list(hilbert_series(d, k)) == hilbert_coeffs(d, k)


def test_normal_form_examples():
    r = make_fermat(5, 2)
    assert set(normal_form(r, "x0^4")) == {0}
    v = normal_form(r, "x0^3*x1^2")
    idx = degree_basis(r, 5).index((3, 2))
    assert v[idx] == 1 and sum(abs(x) for x in v) == 1
    s = make_random_smooth(3, 2, seed=7)
    for p in s.partials:
        assert set(normal_form(s, p)) == {0}


def test_normal_form_rank_on_monomials():
    from jacring.forms import monomials
    from jacring.linalg import span_reduce

    r = make_random_smooth(4, 3, seed=3)
    for mu in range(r.socle + 1):
        vecs = [normal_form(r, {e: 1}) for e in monomials(mu, 3)]
        assert len(span_reduce(vecs)) == dim_R(r, mu)


def test_normal_form_is_linear():
    r = make_random_smooth(4, 3, seed=3)
    a = normal_form(r, "x0^2*x1*x2")
    b = normal_form(r, "x1^3*x2")
    c = normal_form(r, "2*x0^2*x1*x2 - 3*x1^3*x2")
    assert tuple(2 * x - 3 * y for x, y in zip(a, b)) == c


def test_multiply_examples():
    r = make_fermat(5, 5)
    a = r.element("x0^3*x1^2")
    b = r.element("x1*x2^3*x3")
    c = r.element("x3^2*x4^3")
    prod = multiply(r, multiply(r, a, b), c)
    assert prod.mu == 15 and prod.coords == (1,)
    s = make_fermat(5, 2)
    assert multiply(s, s.element("x0^3*x1^2"), s.element("x0^2*x1^3")).is_zero()
    x = s.element("x0*x1 + 2*x1^2")
    assert (s.one() * x).coords == x.coords
    with pytest.raises(RingMismatch):
        multiply(r, a, s.one())


def test_multiply_commutative_associative():
    r = make_random_smooth(4, 3, seed=1)
    a, b, c = r.element("x0 + 2*x1"), r.element("x1^2 - x0*x2"), r.element("x2 - x0")
    assert (a * b).coords == (b * a).coords
    assert ((a * b) * c).coords == (a * (b * c)).coords


def test_pairing_examples():
    assert macaulay_pairing_rank(make_fermat(4, 3), 3) == 7
    assert macaulay_pairing_rank(make_random_smooth(4, 3, seed=1), 0) == 1
    assert macaulay_pairing_rank(make_fermat(5, 5), 5) == 101


def test_smoothness_certificate():
    assert smoothness_certificate(make_fermat(5, 5))
    assert smoothness_certificate(make_fermat(2, 3))
    sing = make_ring(parse_form("x0^2*x1"))
    assert not smoothness_certificate(sing)
    assert dim_R(sing, sing.socle + 1) > 0
    with pytest.raises(NotSmooth):
        sing.require_smooth()


def test_root_extension():
    base = make_fermat(5, 2)
    top = base
    for _ in range(3):
        top = root_extension(top)
    assert top.form == make_fermat(5, 5).form
    assert dims(top) == dims(make_fermat(5, 5))
    r = root_extension(make_fermat(4, 3))
    assert dim_R(r, 3) == 16
    assert r.socle == 6 + 2


def test_root_extension_of_random_base():
    base = make_random_smooth(4, 3, seed=1)
    top = root_extension(base)
    for mu in range(top.socle + 2):
        assert dim_R(top, mu) == sum(dim_R(base, mu - e) for e in range(3))
    assert not top.is_capped and top.ncapped == 1


def test_koszul_examples():
    r = make_fermat(5, 2)
    kc = koszul_cohomology_dims(r, 5, 1)
    assert kc.at(0) == 2 and kc.at(1) == 0
    kc = koszul_cohomology_dims(make_random_smooth(3, 3, seed=0), 9, 3)
    assert all(kc.at(j) == 0 for j in range(1, 4))
    assert koszul_cohomology_dims(r, -2, 2).dims == (0, 0, 0)


def test_koszul_detects_singular_form():
    sing = make_ring(parse_form("x0^2*x1"))
    kc = koszul_cohomology_dims(sing, 6, 2)
    assert kc.at(1) > 0


def test_product_span_surjective():
    r = make_random_smooth(4, 3, seed=2)
    for mu in range(r.socle + 1):
        for nu in range(r.socle + 1 - mu):
            assert product_span_rank(r, mu, nu) == dim_R(r, mu + nu)


def test_degree_subspace():
    r = make_fermat(4, 2)
    sub = DegreeSubspace.span(r, 2, [[1, 1, 0], [2, 2, 0], [0, 0, 3]])
    assert sub.dim == 2
    assert sub.rows() == [(1, 1, 0), (0, 0, 1)]
    assert sub.monomial_support() is None
    assert DegreeSubspace.full(r, 2).monomial_support() == [(2, 0), (1, 1), (0, 2)]


def test_concurrent_piece_access():
    r = make_random_smooth(4, 4, seed=0)
    out = {}

    def work(k):
        out[k] = tuple(dim_R(r, mu) for mu in range(r.socle + 1))

    threads = [threading.Thread(target=work, args=(k,)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(out.values())) == 1
    assert list(out[0]) == list(hilbert_series(4, 4))


def test_prime_mode_agrees():
    a = make_random_smooth(5, 3, seed=4)
    b = make_random_smooth(5, 3, PRIME, seed=4)
    assert dims(a) == dims(b)
