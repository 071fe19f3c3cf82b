import pytest

import latconv as lc


def Q(num, den=1):
    return lc.Rational(num, den)


def test_rational_arithmetic():
    assert Q(1, 2) + Q(1, 3) == Q(5, 6)
    assert Q(2, 4) == Q(1, 2)
    assert str(Q(-3, 6)) == "-1/2"
    assert lc.Rational.parse("7/3") == Q(7, 3)
    with pytest.raises(lc.LatconvError):
        lc.Rational(1, 0)


def test_lattice_operations():
    x = lc.Vector([Q(1), Q(-2)])
    y = lc.Vector([Q(0), Q(5)])
    assert lc.join(x, y) == lc.Vector([Q(1), Q(5)])
    assert lc.meet(x, y) == lc.Vector([Q(0), Q(-2)])
    assert lc.modulus(x) == lc.Vector([Q(1), Q(2)])
    assert lc.positive_part(x) - lc.negative_part(x) == x
    assert lc.compare(lc.meet(x, y), x) == lc.OrderRelation.Less
    assert lc.leq(lc.meet(x, y), y)


def test_index_sets_and_density():
    evens = lc.IndexSet.ap(2, 0)
    cubes = lc.IndexSet.power(3)
    assert cubes.contains(27)
    assert not cubes.contains(28)
    assert evens.count(0, 10) == 5
    d = lc.density(evens)
    assert d["kind"] == "exact"
    assert d["value"] == "1/2"
    assert lc.density(cubes)["value"] == "0/1"


def test_deferred_pair():
    pair = lc.DeferredPair.make(1, 0, 2, 0)  # (n, 2n]
    assert pair.width(10) == 10
    assert lc.density(lc.IndexSet.all(), pair)["value"] == "1/1"
    with pytest.raises(lc.LatconvError):
        lc.DeferredPair.make(4, 0, 2, 0)


SPEC = """\
SPACE dim = 1
PAIR p = 0 q = n
SET K = NOT(POW(2))
SEQ x = (1/n) if K ; (n)
SEQ z = (2/n)
CERT c = DSTAT x limit (0) dom z on K
TASK t1 check c
TASK t2 density K
"""


def test_run_spec_end_to_end():
    info = lc.validate_spec(SPEC)
    assert info["tasks"] == 2
    res = lc.run_spec(SPEC, prefix_n=2000, n_max=50000)
    assert res["clean"]
    assert '"verdict": "verified"' in res["report"]
    with pytest.raises(lc.LatconvError):
        lc.validate_spec("PAIR p = 0 q = n\n")


def test_theorems_tiny():
    res = lc.theorem_report(seed=7, trials=3)
    assert res["clean"]
