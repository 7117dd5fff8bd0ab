import itertools
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from embedlattice.lattice import (
    CHAIN_VARIANTS,
    EmbeddedSubset,
    LatticeError,
    bottom,
    build_lattice,
    complements_of,
    count_chains_embedded,
    count_chains_oracle,
    cover_count_formula,
    covers_of,
    described_irreducibles,
    element_count,
    emb_join,
    emb_meet,
    embedded,
    irreducibles,
    lattice_properties,
    leq,
    level_count,
    moebius_atoms,
    moebius_embedded,
    moebius_oracle,
    parse_element,
    top,
    total_chain_count,
)
from embedlattice.partitions import canonicalize, enumerate_partitions, finest, refines

E = parse_element


def set_leq(x, y):
    # order straight from the definition, on frozensets
    if x.is_bottom:
        return True
    if y.is_bottom:
        return False
    ys = [set(b) for b in y.pi.blocks]
    return set(x.s) <= set(y.s) and all(any(set(b) <= c for c in ys) for b in x.pi.blocks)


def brute_elements(n):
    out = [bottom(n)]
    for p in enumerate_partitions(n):
        out.extend(EmbeddedSubset(n, blk, p) for blk in p.blocks)
    return out


# -- elements and counts -------------------------------------------------------------

@pytest.mark.parametrize("n, count", [(1, 2), (2, 4), (3, 11), (4, 38), (5, 152), (6, 675), (7, 3264), (8, 17008)])
def test_element_count(n, count):
    assert element_count(n) == count
    assert sum(level_count(n, h) for h in range(n + 1)) == count


@pytest.mark.parametrize("n", range(1, 7))
def test_materialized_elements(n):
    L = build_lattice(n)
    assert len(L) == element_count(n)
    assert set(L) == set(brute_elements(n))
    keys = [x.key() for x in L]
    assert keys == sorted(keys)
    assert L[L.bottom].is_bottom and L[L.top] == top(n)


def test_build_limits():
    with pytest.raises(LatticeError):
        build_lattice(0)
    with pytest.raises(LatticeError):
        build_lattice(8)


def test_parse_and_print():
    x = E("12{12,3}")
    assert x.s == (1, 2) and x.pi.serialize() == [[1, 2], [3]]
    assert str(x) == "12{12,3}"
    assert E("bot", 3) == bottom(3) and str(bottom(3)) == "⊥"
    assert E("3{12,3}", 3).height == 2
    with pytest.raises(LatticeError):
        E("13{12,3}")
    with pytest.raises(LatticeError):
        E("⊥")
    with pytest.raises(LatticeError):
        E("nonsense")
    with pytest.raises(LatticeError):
        E("1{1,2}", 3)


def test_embedded_requires_block():
    with pytest.raises(LatticeError):
        embedded([1], [[1, 2], [3]])


def test_dotted_notation_for_large_n():
    blocks = [[1, 10]] + [[i] for i in range(2, 10)]
    x = embedded([1, 10], blocks)
    assert str(x).startswith("1.10{1.10,2,")
    assert E(str(x)) == x


# -- order ---------------------------------------------------------------------------

def test_leq_examples():
    assert leq(E("1{1,2,3}"), E("12{12,3}"))
    assert not leq(E("3{1,2,3}"), E("12{12,3}"))
    assert leq(E("3{1,2,3}"), E("3{12,3}"))
    assert not leq(E("12{12,3}"), E("1{1,23}"))
    assert leq(bottom(3), E("2{1,2,3}"))
    assert not leq(E("2{1,2,3}"), bottom(3))
    with pytest.raises(LatticeError):
        leq(bottom(2), bottom(3))


@pytest.mark.parametrize("n", range(1, 6))
def test_order_matrix_matches_definition(n):
    L = build_lattice(n)
    expect = np.array([[set_leq(x, y) for y in L] for x in L])
    assert np.array_equal(L.leq, expect)
    if n <= 4:
        assert all(leq(x, y) == set_leq(x, y) for x in L for y in L)


@pytest.mark.parametrize("n", range(1, 6))
def test_partial_order_axioms(n):
    P = build_lattice(n).leq
    assert P.diagonal().all()
    assert not (P & P.T & ~np.eye(len(P), dtype=bool)).any()
    Pi = P.astype(np.int64)
    assert np.array_equal((Pi @ Pi > 0), P)


# -- join and meet ---------------------------------------------------------------------

def test_join_meet_examples():
    assert emb_join(E("1{1,2,3}"), E("2{1,2,3}")) == E("12{12,3}")
    assert emb_join(E("1{1,23}"), E("3{12,3}")) == E("123{123}")
    assert emb_join(E("1{1,2,3}"), E("1{1,23}")) == E("1{1,23}")
    assert emb_meet(E("12{12,3}"), E("1{1,23}")) == E("1{1,2,3}")
    assert emb_meet(E("12{12,3}"), E("3{12,3}")) == bottom(3)
    assert emb_meet(E("12{12,3}"), E("23{1,23}")) == E("2{1,2,3}")
    assert emb_join(bottom(3), E("3{1,2,3}")) == E("3{1,2,3}")


@pytest.mark.parametrize("n", range(1, 5))
def test_join_meet_are_lub_glb(n):
    L = build_lattice(n)
    P = np.array([[set_leq(x, y) for y in L] for x in L])
    for i, x in enumerate(L):
        for j, y in enumerate(L):
            ub = np.flatnonzero(P[i] & P[j])
            lb = np.flatnonzero(P[:, i] & P[:, j])
            lub = [u for u in ub if P[u, ub].all()]
            glb = [b for b in lb if P[lb, b].all()]
            assert [L.index_of(emb_join(x, y))] == lub
            assert [L.index_of(emb_meet(x, y))] == glb
            assert L.join_table[i, j] == lub[0] and L.meet_table[i, j] == glb[0]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.data())
def test_join_meet_algebra(n, data):
    elems = list(build_lattice(n))
    x, y, z = (data.draw(st.sampled_from(elems)) for _ in range(3))
    assert emb_join(x, y) == emb_join(y, x)
    assert emb_join(emb_join(x, y), z) == emb_join(x, emb_join(y, z))
    assert emb_meet(emb_meet(x, y), z) == emb_meet(x, emb_meet(y, z))
    assert emb_join(x, emb_meet(x, y)) == x
    assert emb_meet(x, emb_join(x, y)) == x
    assert leq(x, y) == (emb_join(x, y) == y)


# -- covers ---------------------------------------------------------------------------

def test_cover_examples():
    c = covers_of(E("1{1,2,3}"))
    assert c.lower == (bottom(3),)
    assert set(c.upper) == {E("12{12,3}"), E("13{13,2}"), E("1{1,23}")}
    c = covers_of(E("123{123}"))
    assert len(c.lower) == 6 and c.upper == ()
    assert cover_count_formula(E("12{12,3}")) == (1, 2)


def test_cover_edge_counts():
    assert len(build_lattice(1).cover_edges) == 1
    assert len(build_lattice(2).cover_edges) == 4
    assert len(build_lattice(3).cover_edges) == 18


@pytest.mark.parametrize("n", range(1, 7))
def test_cover_count_formula_every_element(n):
    L = build_lattice(n)
    for i, x in enumerate(L):
        if x.is_bottom:
            assert len(L.upper_covers[i]) == n
            continue
        up, low = cover_count_formula(x)
        atom = x.height == 1
        assert (len(L.upper_covers[i]), len(L.lower_covers[i])) == (up, low + atom)


def test_cover_formula_rejects_bottom():
    with pytest.raises(LatticeError):
        cover_count_formula(bottom(3))


@pytest.mark.parametrize("n", range(1, 6))
def test_heights_are_rank(n):
    L = build_lattice(n)
    for i, j in L.cover_edges:
        assert L[j].height == L[i].height + 1


# -- irreducibles, complements, structure ---------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5])
def test_irreducibles_match_description(n):
    assert irreducibles(build_lattice(n)) == described_irreducibles(n)


def test_irreducibles_small():
    irr = irreducibles(build_lattice(2))
    assert set(irr.join_irr) == {E("1{1,2}"), E("2{1,2}")}
    assert set(irr.meet_irr) == {E("1{1,2}"), E("2{1,2}")}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complements(n):
    L = build_lattice(n)
    for x in L:
        comp = complements_of(x, L)
        brute = [y for y in L if emb_join(x, y) == top(n) and emb_meet(x, y) == bottom(n)]
        assert comp == brute
        if not x.is_bottom and len(x.s) < n:
            rest = tuple(t for t in range(1, n + 1) if t not in x.s)
            # (S-bar, pi) is a complement whenever S-bar is a block of pi
            for p in enumerate_partitions(n):
                if rest in p.blocks:
                    assert EmbeddedSubset(n, rest, p) in comp
    assert complements_of(bottom(n), L) == [top(n)]


def test_structure_n2():
    assert all(lattice_properties(build_lattice(2)).as_dict().values())


@pytest.mark.parametrize("n", [3, 4])
def test_structure(n):
    props = lattice_properties(build_lattice(n)).as_dict()
    assert props == {"ranked": True, "upper_semimodular": True, "lower_semimodular": False,
                     "modular": False, "distributive": False, "atomistic": False}


# -- chains and Moebius ---------------------------------------------------------------------

@pytest.mark.parametrize("n, chains", [(1, 1), (2, 2), (3, 9), (4, 72), (5, 900), (6, 16200),
                                       (7, 396900), (8, 12700800)])
def test_total_chains(n, chains):
    assert total_chain_count(n) == chains == count_chains_embedded(bottom(n), top(n))


@pytest.mark.parametrize("n", range(1, 7))
def test_total_chains_dp(n):
    L = build_lattice(n)
    assert L.poset.count_chains(L.bottom, L.top) == total_chain_count(n)


def test_chain_examples():
    assert count_chains_embedded(E("1{1,2,3}"), E("123{123}")) == 3
    assert count_chains_embedded(bottom(3), E("12{12,3}")) == 2
    assert count_chains_embedded(bottom(3), E("3{12,3}")) == 1
    assert count_chains_embedded(E("1{1,2,3,4}"), E("1234{1234}")) == 18
    with pytest.raises(LatticeError):
        count_chains_embedded(E("12{12,3}"), E("1{1,2,3}"))
    with pytest.raises(ValueError):
        count_chains_embedded(bottom(3), top(3), variant="nope")


def test_top_from_element_formula():
    # from S pi (k blocks) to the top: k!(k-1)!/2^(k-1)
    for x in build_lattice(5):
        if not x.is_bottom:
            k = x.pi.b
            assert count_chains_embedded(x, top(5)) == factorial(k) * factorial(k - 1) // 2 ** (k - 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_chains_against_dp(n):
    L = build_lattice(n)
    for i, x in enumerate(L):
        ways = L.poset.chains_from(i)
        for j in np.flatnonzero(L.leq[i]):
            assert count_chains_embedded(x, L[j]) == ways[j]


def test_alternative_chain_variants_disagree():
    x, y = E("1{1,2,3}"), E("123{123}")
    assert count_chains_oracle(x, y) == 3
    assert count_chains_embedded(x, y, "printed") != 3
    assert count_chains_embedded(x, y, "l1_factorial") != 3
    assert set(CHAIN_VARIANTS) == {"exact", "printed", "l1_factorial"}


def test_moebius_examples():
    assert moebius_embedded(bottom(3), E("1{1,2,3}")) == -1
    assert moebius_embedded(bottom(3), E("12{12,3}")) == 1
    assert moebius_embedded(bottom(3), E("3{12,3}")) == 0
    assert moebius_embedded(bottom(3), top(3)) == -1
    assert moebius_embedded(E("1{1,2,3}"), top(3)) == 2
    assert moebius_embedded(E("3{12,3}"), E("3{12,3}")) == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_moebius_against_recursion(n):
    L = build_lattice(n)
    for i, x in enumerate(L):
        mu = L.poset.moebius_from(i)
        for j in np.flatnonzero(L.leq[i]):
            assert moebius_embedded(x, L[j]) == mu[j]


@pytest.mark.parametrize("n", range(1, 5))
def test_moebius_crosscut(n):
    L = build_lattice(n)
    for x in L:
        assert moebius_atoms(x, L) == moebius_embedded(bottom(n), x)


def test_oracle_wrappers():
    assert moebius_oracle(bottom(3), top(3)) == -1
    with pytest.raises(LatticeError):
        moebius_oracle(top(3), bottom(3))


@pytest.mark.parametrize("n", range(1, 6))
def test_upper_interval_isomorphic_to_partitions(n):
    L = build_lattice(n)
    for i in range(1, n + 1):
        start = EmbeddedSubset(n, (i,), finest(n))
        ivl = [L[j] for j in L.interval(start, L.top)]
        pis = [x.pi for x in ivl]
        assert sorted(pis, key=lambda p: p.rgs()) == enumerate_partitions(n)
        for x, y in itertools.product(ivl, repeat=2):
            assert leq(x, y) == refines(x.pi, y.pi)


def test_level_count_matches_stirling():
    L = build_lattice(5)
    for h in range(6):
        assert len(L.level(h)) == level_count(5, h)
    assert level_count(4, 4) == 1 and level_count(4, 1) == 4 * comb(4, 4)


def test_meet_needs_common_element():
    x = canonicalize([[1, 2], [3, 4]])
    assert emb_meet(EmbeddedSubset(4, (1, 2), x), EmbeddedSubset(4, (3, 4), x)) == bottom(4)
