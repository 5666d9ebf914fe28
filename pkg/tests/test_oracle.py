from solcalc.intmat import IntegerMatrix
from solcalc.oracle import oracle_cycle_min, oracle_limit_sign

FIB = IntegerMatrix([[1, 1], [1, 0]])
DYAD = IntegerMatrix([[1, 1], [1, 1]])


def test_cycle_min_examples(dyadic, ex4y):
    assert oracle_cycle_min(dyadic.graph, (0, -1), 2) == -1
    assert oracle_cycle_min(dyadic.graph, (1, -1), 4) == 0
    assert oracle_cycle_min(dyadic.graph, (1, -1), 1) is None  # no loops
    for L in range(1, 6):
        m = oracle_cycle_min(ex4y.graph, (0, 2, 1), L)
        assert m is not None and m >= 0


def test_limit_sign_oracle_examples():
    assert oracle_limit_sign(FIB, (1, -2), 8) == "negative"
    assert oracle_limit_sign(DYAD, (1, -1), 1) == "zero"
    assert oracle_limit_sign(FIB, (2, -3), 8) == "positive"
    assert oracle_limit_sign(FIB, (2, -3), 0) == "unknown"
