"""Acceptance suite: one test per published criterion.

Each test prints a single PASS/FAIL line (run with ``pytest -s`` to see them).
All comparisons are exact integer equality; the only tolerances are wall-clock
limits, pinned below.
"""
import time

import pytest

from jacring.coupling import (
    coupling_profile,
    cover_family_length,
    eigenspace_coupling_length,
    family_length,
    include_subspace,
    product_map_nonzero,
    tangent_subspace_full,
    tower_length_table,
)
from jacring.hodge import (
    eigen_hodge,
    eigen_sum_check,
    first_hodge_rank_chain,
    hodge_diamond,
    primitive_hodge,
    cover_decomposition_check,
)
from jacring.ring import (
    dim_R,
    koszul_cohomology_dims,
    macaulay_pairing_rank,
    make_fermat,
    make_random_smooth,
    product_span_rank,
    root_extension,
)
from oracles import capped_count, hilbert_coeffs

TABLE_LIMIT_S = 300.0       # per table
EIGEN_LIMIT_S = 1.0
FAMILY_LIMIT_S = 600.0      # all family lengths together


def verdict(num, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    return ok


TABLES = {
    (4, 3): {1: 1, 2: 1},
    (5, 3): {1: 1, 2: 1},
    (5, 4): {1: 2, 2: 1, 3: 1},
    (6, 4): {1: 2, 2: 2, 3: 1},
    (8, 4): {1: 3, 2: 2, 3: 1},
}


@pytest.mark.slow
def test_criterion_1_iterated_cover_tables():
    rows, ok = [], True
    for (d, n), want in TABLES.items():
        t0 = time.perf_counter()
        tab = tower_length_table(d, n)
        dt = time.perf_counter() - t0
        good = tab.match and tab.computed() == want and dt < TABLE_LIMIT_S
        ok &= good
        rows.append(f"({d},{n})={tab.computed()} {dt:.2f}s")
    assert verdict(1, ok, "; ".join(rows))


def test_criterion_2_binary_quintic_eigen_ranks():
    t0 = time.perf_counter()
    base = make_fermat(5, 2)
    got = [eigen_hodge(base, i).h for i in range(1, 5)]
    dt = time.perf_counter() - t0
    ok = got == [(3, 0), (2, 1), (1, 2), (0, 3)] and dt < EIGEN_LIMIT_S
    assert verdict(2, ok, f"{got} in {dt:.3f}s")


def _oracle_primitive(d, nvars):
    n = nvars - 1
    return tuple(capped_count((p + 1) * d - n - 1, nvars, d - 2) for p in range(n))


def test_criterion_3_hodge_numbers():
    quintic = primitive_hodge(make_fermat(5, 5)).h
    surface = hodge_diamond(make_fermat(4, 4)).middle.h
    curve = primitive_hodge(make_fermat(4, 3)).h
    oracle_surface = list(_oracle_primitive(4, 4))
    oracle_surface[1] += 1
    ok = (quintic == (1, 101, 101, 1) == _oracle_primitive(5, 5)
          and surface == (1, 20, 1) == tuple(oracle_surface)
          and curve == (3, 3) == _oracle_primitive(4, 3))
    assert verdict(3, ok, f"quintic {quintic}, quartic surface {surface}, quartic curve {curve}")


@pytest.mark.slow
def test_criterion_4_family_lengths():
    t0 = time.perf_counter()
    fam = [family_length(make_fermat(d, k)) for d, k in [(4, 3), (5, 5), (3, 3)]]
    cov = [cover_family_length(make_fermat(d, k)) for d, k in [(6, 5), (8, 4), (4, 2)]]
    dt = time.perf_counter() - t0
    # n - 1 for the fibres; n - 1, n, n for the covers (n = nvars - 1 of the base)
    ok = fam == [1, 3, 1] and cov == [3, 3, 1] and dt < FAMILY_LIMIT_S
    assert verdict(4, ok, f"family {fam}, cover {cov} in {dt:.2f}s")


def test_criterion_5_sextic_boundary():
    ring = make_fermat(6, 5)
    V = tangent_subspace_full(ring)
    cubes = [mu for mu in range(ring.socle + 1) if product_map_nonzero(ring, V, mu, 3)]
    quartics = [mu for mu in range(ring.socle + 1) if product_map_nonzero(ring, V, mu, 4)]
    ok = cubes == [0, 1, 2] and quartics == []
    assert verdict(5, ok, f"S^3 nonzero at {cubes}, S^4 nonzero at {quartics}")


PAIRS = [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4)]


def _property_failures(ring):
    d, sigma = ring.d, ring.socle
    dims = [dim_R(ring, mu) for mu in range(sigma + 2)]
    fails = []
    series = hilbert_coeffs(d, ring.nvars)
    if dims != series + [0] * (len(dims) - len(series)):
        fails.append("hilbert")
    if any(dims[mu] != dims[sigma - mu] for mu in range(sigma + 1)):
        fails.append("symmetry")
    if any(macaulay_pairing_rank(ring, mu) != dims[mu] for mu in range(sigma + 1)):
        fails.append("pairing")
    if any(dims[mu] >= dims[mu + 1] for mu in range(1, d - 1)):
        fails.append("growth")
    if any(product_span_rank(ring, mu, nu) != dims[mu + nu]
           for mu in range(sigma + 1) for nu in range(sigma + 1 - mu)):
        fails.append("surjectivity")
    cover = root_extension(ring)
    if any(dim_R(cover, mu) != sum(dims[mu - e] for e in range(d - 1) if 0 <= mu - e <= sigma)
           for mu in range(cover.socle + 2)):
        fails.append("tower")
    if not eigen_sum_check(ring):
        fails.append("eigen_sum")
    p = ring.nvars
    for mu in sorted({d - 1, sigma // 2 + 1, sigma + 1}):
        kc = koszul_cohomology_dims(ring, mu, p)
        if any(kc.at(r) for r in range(1, p + 1)) or kc.at(0) != dim_R(ring, mu):
            fails.append(f"koszul@{mu}")
    return fails


# Strict growth fails for plane cubics: dim R_{d-2} = C(n+d-2, n) and
# dim R_{d-1} = C(n+d-1, n) - (n+1) differ by C(n+d-2, n-1) - (n+1), which is 0
# at d=3, n=2 (both are 3).  This is the only expected failure.
KNOWN_FAILURES = {(3, 3, "fermat"): ["growth"], (3, 3, "random"): ["growth"]}


@pytest.mark.slow
def test_criterion_6_property_suites():
    bad = {}
    for d, k in PAIRS:
        for label, ring in (("fermat", make_fermat(d, k)), ("random", make_random_smooth(d, k, seed=0))):
            f = _property_failures(ring)
            if f:
                bad[(d, k, label)] = f
    cubic = [dim_R(make_fermat(3, 3), mu) for mu in (1, 2)]
    if bad == KNOWN_FAILURES and cubic == [3, 3]:
        verdict(6, False, f"{2 * len(PAIRS)} rings; all properties hold except strict growth "
                          f"on (3,3), where dim R_1 = dim R_2 = 3")
        pytest.xfail("strict growth on [1, d-1] is false for plane cubics")
    assert verdict(6, not bad, f"{2 * len(PAIRS)} rings, failures: {bad or 'none'}")


def test_criterion_7_cover_decomposition():
    a = cover_decomposition_check(5, 2)
    b = cover_decomposition_check(4, 3)
    ok = (a.off_center_equal and (a.residual_W, a.residual_Wprime) == (0, 0)
          and b.off_center_equal and b.residual_W >= 0 and b.residual_Wprime >= 0)
    assert verdict(7, ok, f"(5,2) residuals {(a.residual_W, a.residual_Wprime)}; "
                          f"(4,3) residuals {(b.residual_W, b.residual_Wprime)}")


def test_criterion_8_sextic_eigenspaces():
    base = make_fermat(6, 5)
    lengths = {i: eigenspace_coupling_length(base, i) for i in range(1, 6)}
    chain = first_hodge_rank_chain(base)
    ok = (lengths[1] == lengths[5] == 3 and all(lengths[i] < 3 for i in (2, 3, 4))
          and all(x < y for x, y in zip(chain, chain[1:])))
    assert verdict(8, ok, f"lengths {lengths}, rank chain {chain}")
