import itertools
from fractions import Fraction

import pytest

import quasihyper as qh


def brute_hom(f, h):
    count = 0
    for phi in itertools.product(range(h.n), repeat=f.n):
        if all(h.contains([phi[v] for v in e]) for e in f.edges()):
            count += 1
    return count


def test_version():
    assert qh.__version__


def test_mq_c4():
    q = qh.SetSystem(2, [[1], [2]])
    assert qh.mq_size(q) == (4, 4)
    m = qh.mq(q)
    assert m.k == 2 and m.n == 4 and m.edge_count == 4


def test_hom_count_matches_brute_force():
    h = qh.random_hypergraph(6, 2, "1/2", 3)
    f = qh.Hypergraph(2, 3, [[0, 1], [1, 2]])
    assert qh.hom_count(f, h) == brute_hom(f, h)
    k4 = qh.Hypergraph.complete(2, 4)
    assert qh.labeled_copies(qh.Hypergraph(2, 2, [[0, 1]]), k4) == 12


def test_setsystem_ops():
    q = qh.SetSystem(3, [[1, 2], [1], [2, 3]])
    assert qh.antichain(q).sets == [[1, 2], [2, 3]]
    assert qh.degree(q, 2) == 2
    assert qh.precedes(qh.SetSystem(3, [[1]]), q) == [1, 2, 3]
    assert qh.precedes(qh.SetSystem(3, [[1, 2, 3]]), q) is None


def test_simplicity():
    path = qh.Hypergraph(2, 3, [[0, 1], [1, 2]])
    r = qh.is_q_simple(path, qh.SetSystem(2, [[1], [2]]))
    assert r["simple"]
    assert len(r["edge_order"]) == 2


def test_exact_values_are_fractions():
    h = qh.Hypergraph.complete(2, 4)
    assert qh.density(h) == Fraction(1)
    q = qh.SetSystem(2, [[1], [2]])
    assert qh.dev(h, "1", q, mode="injective") == 0
    assert qh.dev(h, "1/2", q, mode="factorized") == qh.dev(h, "1/2", q, mode="maps")
    hits, supported, value = qh.disc(h, "1/2", q, [[[0], [1]], [[2], [3]]])
    assert supported == 4 and hits == 4 and value == 2


def test_float_mode():
    h = qh.random_hypergraph(8, 3, "1/2", 1)
    q = qh.SetSystem(3, [[1], [2]])
    exact = qh.dev(h, "1/2", q)
    approx = qh.dev(h, "1/2", q, exact=False)
    assert isinstance(approx, float)
    assert approx == pytest.approx(float(exact), rel=1e-9, abs=1e-9)


def test_constants():
    j = qh.constants(qh.SetSystem(3, [[1]]), "1/4")
    assert j["rows"][0]["epsilon"] == "1/16"


def test_errors():
    with pytest.raises(qh.InvalidArgument):
        qh.SetSystem(2, [[3]])
    with pytest.raises(qh.ParseError):
        qh.Hypergraph.parse("2 3\n0 0\n")
    with pytest.raises(qh.Error):
        qh.constants(qh.SetSystem(3, [[1]]), "2")


def test_quick_acceptance_subset():
    results = qh.run_acceptance(only=[2, 3])
    assert [r["id"] for r in results] == [2, 3]
    assert all(r["passed"] for r in results)
