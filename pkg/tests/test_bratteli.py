import random
from fractions import Fraction

import pytest

from ordarena import ordinal
from ordarena.bratteli import (
    Diagram,
    a_seq,
    diagram_for_dimension,
    diagram_for_stack,
    duplication_matrix,
    export,
    level,
    limit_diagram,
    parse_diagram,
    positive_preimage,
    preimage,
    stack_omega,
    theta,
)
from ordarena.linalg import identity, mat_eq, mat_mul, mat_vec


def test_a_seq():
    assert a_seq(1, 2) == [3, 8, 18]
    assert a_seq(2, 2) == [4, 9, 19]
    for k in range(1, 6):
        seq = a_seq(k, 7)
        for n in range(7):
            assert seq[n + 1] + k - 1 == 2 * (seq[n] + 1)
    with pytest.raises(ValueError):
        a_seq(0, 3)


def test_level_spot_values():
    lv1 = level(1, 0)
    assert lv1.b_n == 120
    assert lv1.connecting == [[Fraction(2520)]]
    lv2 = level(2, 0)
    assert lv2.b_n == 189
    assert lv2.connecting == [[Fraction(6615), Fraction(945)], [Fraction(945), Fraction(6615)]]


def test_level_inverse_is_exact():
    for k in range(1, 6):
        lv = level(k, 0)
        assert mat_eq(mat_mul(lv.matrix_inverse, lv.matrix), identity(k))


def test_theta_columns_strictly_positive():
    for k in range(1, 5):
        for n in range(3):
            c = theta(k, n)
            assert all(x > 0 for row in c for x in row)


def test_preimage_examples():
    y = preimage(1, 0, [1])
    c1 = theta(1, 1)
    assert mat_vec(c1, [Fraction(v) for v in y]) == [Fraction(1, 6)]
    assert preimage(2, 1, [0, 0]) == [0, 0]


def test_preimage_sweep():
    rng = random.Random(3)
    for k in range(1, 5):
        for n in range(4):
            for _ in range(10):
                x = [rng.randint(-9, 9) for _ in range(k)]
                preimage(k, n, x)  # verification is internal and fatal on failure


def test_positive_preimage():
    m, y = positive_preimage(2, 0, [1, 1])
    assert m == 0 and all(v > 0 for v in y)
    m2, y2 = positive_preimage(2, 0, [1, 1000])
    assert m2 > 0 and all(v > 0 for v in y2)
    with pytest.raises(ValueError):
        positive_preimage(2, 0, [1, 0])


def test_stack_omega():
    st = stack_omega(2)
    e12 = st.connecting[1]
    assert len(e12) == 2 and len(e12[0]) == 1
    assert all(x > 0 and x.denominator == 1 for row in e12 for x in row)


def test_duplication_matrix_shape():
    d2 = duplication_matrix(2)
    assert d2 == [[1, 0], [0, 1], [0, 1]]


def test_limit_diagram_omega_matches_stack_shape():
    fundamental = [ordinal.fin(i) for i in range(4)]
    diag = limit_diagram(ordinal.OMEGA, fundamental, depth=4)
    assert [lvl.finite_dim for lvl in diag.levels] == [1, 2, 3, 4]
    assert diag.matrices is not None
    for i, m in enumerate(diag.matrices):
        assert m == duplication_matrix(i + 1)


def test_limit_diagram_two_phase():
    w2 = ordinal.mul(ordinal.OMEGA, ordinal.fin(2))
    fundamental = [ordinal.add(ordinal.OMEGA, ordinal.fin(i)) for i in range(4)]
    diag = limit_diagram(w2, fundamental, depth=4)
    assert diag.matrices is None  # stages are infinite
    assert [lvl.finite_dim for lvl in diag.levels] == [None] * 4
    # w+1, w+2, ... are pairwise homeomorphic: every later level reuses level 0
    assert diag.levels[0].reuses is None
    assert all(lvl.reuses == 0 for lvl in diag.levels[1:])
    thresholds = [m.threshold for m in diag.maps]
    assert all(thresholds[i] < thresholds[i + 1] for i in range(len(thresholds) - 1))


def test_limit_diagram_depth_zero_and_errors():
    assert limit_diagram(ordinal.OMEGA, [ordinal.fin(i) for i in range(3)], 0).levels == []
    with pytest.raises(ValueError):
        limit_diagram(ordinal.OMEGA, [ordinal.fin(2), ordinal.fin(1)], 2)
    with pytest.raises(ValueError):
        limit_diagram(ordinal.parse("w+1"), [ordinal.fin(1)], 1)
    with pytest.raises(ValueError):
        limit_diagram(ordinal.OMEGA, [ordinal.OMEGA], 1)


def test_export_dot():
    text = export(diagram_for_dimension(1, 1), "DOT")
    assert "L0_0 -> L1_0 [label=2520]" in text
    empty = export(Diagram([], []), "DOT")
    assert empty.startswith("digraph")


def test_export_json_roundtrip():
    diag = diagram_for_stack(stack_omega(2))
    text = export(diag, "JSON")
    again = parse_diagram(text)
    assert again.vertex_counts == diag.vertex_counts
    assert again.edges == [[[int(x) for x in row] for row in m] for m in diag.edges]
    with pytest.raises(ValueError):
        export(diag, "yaml")


def test_b_n_alternative_product_form():
    # independent route: b_n equals the telescoped product
    # (a_n+1)(a_n+2)...(a_{n+1}-2) * a_{n+1} / (a_{n+1}+k-1)
    for k in range(1, 6):
        for n in range(4):
            lv = level(k, n)
            prod = 1
            for t in range(lv.a_n + 1, lv.a_next - 1):
                prod *= t
            prod *= lv.a_next
            assert prod % (lv.a_next + k - 1) == 0
            assert lv.b_n == prod // (lv.a_next + k - 1)


def test_limit_diagram_omega_squared_distinct_levels():
    w2 = ordinal.omega_pow(ordinal.fin(2))
    fundamental = [ordinal.mul(ordinal.OMEGA, ordinal.fin(n)) for n in range(1, 5)]
    diag = limit_diagram(w2, fundamental, depth=4)
    # w*n+1 has invariant (1, n): all levels distinct, nothing reused
    assert all(lvl.reuses is None for lvl in diag.levels)
    assert [lvl.ms for lvl in diag.levels] == [("1", n) for n in range(1, 5)]


def test_stack_omega_three_levels():
    import time

    start = time.monotonic()
    st = stack_omega(3)
    assert set(st.connecting) == {1, 2}
    e23 = st.connecting[2]
    assert len(e23) == 3 and len(e23[0]) == 2
    assert all(x > 0 and x.denominator == 1 for row in e23 for x in row)
    assert time.monotonic() - start < 10
