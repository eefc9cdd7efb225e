import pytest

from jacring.errors import InvalidParameter
from jacring.hodge import (
    HodgeVector,
    eigen_hodge,
    eigen_hodge_table,
    eigen_sum_check,
    first_hodge_rank_chain,
    hodge_diamond,
    primitive_hodge,
    cover_decomposition_check,
)
from jacring.ring import make_fermat, make_random_smooth
from oracles import capped_count


def test_primitive_examples():
    assert primitive_hodge(make_fermat(5, 5)).h == (1, 101, 101, 1)
    assert primitive_hodge(make_fermat(4, 4)).h == (1, 19, 1)
    assert primitive_hodge(make_fermat(4, 3)).h == (3, 3)


def test_primitive_independent_of_form():
    assert primitive_hodge(make_random_smooth(4, 3, seed=2)).h == (3, 3)
    assert primitive_hodge(make_random_smooth(3, 4, seed=0)).h == (0, 6, 0)


def test_diamond_examples():
    assert hodge_diamond(make_fermat(4, 4)).middle.h == (1, 20, 1)
    assert hodge_diamond(make_fermat(5, 5)).middle.h == (1, 101, 101, 1)
    assert hodge_diamond(make_fermat(2, 4)).middle.h == (0, 2, 0)


def test_diamond_off_middle_rows():
    dia = hodge_diamond(make_fermat(4, 4))
    assert dia.rows() == [[1], [0, 0], [1, 20, 1], [0, 0], [1]]
    assert "20" in str(dia)


def test_hodge_vector_validation():
    with pytest.raises(InvalidParameter):
        HodgeVector(2, (1, 2))
    assert HodgeVector(1, (3, 0)).reversed().h == (0, 3)


def test_eigen_binary_quintic():
    base = make_fermat(5, 2)
    assert [eigen_hodge(base, i).h for i in range(1, 5)] == [(3, 0), (2, 1), (1, 2), (0, 3)]
    with pytest.raises(InvalidParameter):
        eigen_hodge(base, 5)


def test_eigen_last_index_starts_with_zero():
    for d, k in [(4, 3), (5, 3), (6, 4)]:
        assert eigen_hodge(make_fermat(d, k), d - 1).h[0] == 0


@pytest.mark.parametrize("d,k", [(3, 3), (4, 3), (5, 2), (5, 3), (4, 4)])
def test_eigen_sum(d, k):
    assert eigen_sum_check(make_fermat(d, k))
    assert eigen_sum_check(make_random_smooth(d, k, seed=1))


def test_eigen_entries_from_capped_oracle():
    d, k = 5, 3
    tab = eigen_hodge_table(make_fermat(d, k))
    N = k - 1
    for i, v in tab.items():
        assert v.h == tuple(capped_count((p + 1) * d - i - N - 1, k, d - 2) for p in range(N + 1))


def test_eigen_conjugate_symmetry():
    tab = eigen_hodge_table(make_fermat(6, 3))
    for i in range(1, 6):
        assert tab[i].h == tab[6 - i].h[::-1]


def test_cover_decomposition():
    r = cover_decomposition_check(5, 2)
    assert r.off_center_equal and (r.residual_W, r.residual_Wprime) == (0, 0)
    r = cover_decomposition_check(4, 3)
    assert r.off_center_equal and r.residual_W >= 0 and r.residual_Wprime >= 0
    assert r.lhs == (0, 21, 142, 21, 0)
    with pytest.raises(InvalidParameter):
        cover_decomposition_check(3, 3)


def test_first_hodge_rank_chain():
    chain = first_hodge_rank_chain(make_fermat(6, 5))
    assert chain == [1, 15]
    for d, k in [(5, 4), (7, 5), (8, 6)]:
        chain = first_hodge_rank_chain(make_fermat(d, k))
        assert all(a < b for a, b in zip(chain, chain[1:]))
