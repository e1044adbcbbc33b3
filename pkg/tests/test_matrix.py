import json
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusteraut.dynkin import (
    UnknownDynkinLabel,
    catalan_number,
    classify_cartan,
    coxeter_number,
    parse_label,
    standard_cartan,
)
from clusteraut.matrix import (
    ExchangeMatrix,
    InvalidMatrix,
    bipartite_sign,
    cartan_counterpart,
    find_symmetrizer,
    is_gluing_free,
    matrix_isomorphisms,
    mutate_matrix,
    parse_matrix_text,
    quiver_dot,
)

A2 = ExchangeMatrix.from_rows([[0, 1], [-1, 0]])
CYCLE3 = ExchangeMatrix.from_rows([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
A3_PATH = ExchangeMatrix.from_rows([[0, 1, 0], [-1, 0, -1], [0, 1, 0]])


def mutation_oracle(rows, n, k):
    """b'_ij = -b_ij on row/column k, else b_ij + sgn(b_ik) max(b_ik b_kj, 0)."""
    out = []
    for i, row in enumerate(rows):
        new = []
        for j in range(n):
            if i == k or j == k:
                new.append(-row[j])
            else:
                bik, bkj = row[k], rows[k][j]
                sgn = (bik > 0) - (bik < 0)
                new.append(row[j] + sgn * max(bik * bkj, 0))
        out.append(tuple(new))
    return tuple(out)


@st.composite
def skew_symmetrizable(draw, frozen=True):
    n = draw(st.integers(2, 4))
    d = [draw(st.sampled_from((1, 1, 2, 3))) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = draw(st.integers(-1, 1))
            # d_i b_ij = -d_j b_ji with entries kept small
            rows[i][j] = c * d[j]
            rows[j][i] = -c * d[i]
    for i in range(n - 1):
        if not any(rows[i][j] for j in range(n) if j != i):
            rows[i][i + 1], rows[i + 1][i] = d[i + 1], -d[i]
    extra = []
    if frozen:
        for _ in range(draw(st.integers(0, 3))):
            r = [draw(st.integers(-3, 3)) for _ in range(n)]
            if any(r):
                extra.append(r)
    try:
        return ExchangeMatrix.from_rows(rows, extra)
    except InvalidMatrix:
        return ExchangeMatrix.from_rows([[0, 1], [-1, 0]], [[1, 0]])


def test_symmetrizer_examples():
    assert find_symmetrizer([[0, 1], [-1, 0]]) == (1, 1)
    assert find_symmetrizer([[0, 2], [-1, 0]]) == (1, 2)
    assert find_symmetrizer([[0, 1], [1, 0]]) is None


def test_symmetrizer_is_minimal_positive():
    d = find_symmetrizer([[0, 4, 0], [-2, 0, 3], [0, -6, 0]])
    assert d == (1, 2, 1)


def test_mutation_examples():
    assert mutate_matrix(A2, 0).entries == ((0, -1), (1, 0))
    b = ExchangeMatrix.from_rows([[0, 1], [-1, 0]], [[1, 0]])
    assert mutate_matrix(b, 0).entries == ((0, -1), (1, 0), (-1, 1))


def test_mutation_keeps_labels():
    b = ExchangeMatrix.from_rows([[0, 1], [-1, 0]], [[1, 0]], ["a", "b", "c"])
    assert mutate_matrix(b, 1).row_labels == ("a", "b", "c")


def test_mutation_index_out_of_range():
    with pytest.raises(IndexError):
        mutate_matrix(A2, 2)


def test_construction_rejects_bad_input():
    with pytest.raises(InvalidMatrix):
        ExchangeMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(InvalidMatrix):
        ExchangeMatrix.from_rows([[0, 0], [0, 0]])
    with pytest.raises(InvalidMatrix):
        ExchangeMatrix.from_rows([[0]])
    with pytest.raises(InvalidMatrix):
        ExchangeMatrix.from_rows([[0, 1], [-1, 0]], [[0, 0]])


def test_cartan_counterpart():
    a = cartan_counterpart(A2)
    assert a.entries == ((2, -1), (-1, 2))
    assert str(a.dynkin_type) == "A2"
    b = cartan_counterpart(ExchangeMatrix.from_rows([[0, 2], [-1, 0]]))
    assert b.entries == ((2, -2), (-1, 2))
    assert str(b.dynkin_type) == "B2"
    assert cartan_counterpart([[0, 2], [-2, 0]]).dynkin_type is None


def test_bipartite_sign():
    assert bipartite_sign(A2).signs == (1, -1)
    assert bipartite_sign(-A2).signs == (-1, 1)
    assert bipartite_sign(CYCLE3) is None


def test_composite_mutation_at_sinks_flips_sign():
    eps = bipartite_sign(A3_PATH)
    b = A3_PATH
    for k in eps.indices(-1):
        b = mutate_matrix(b, k)
    assert b.entries == (-A3_PATH).entries
    assert bipartite_sign(b) == -eps


def test_gluing_free():
    assert not is_gluing_free(ExchangeMatrix.from_rows([[0, 1], [-1, 0]], [[1, 0], [1, 0]]))
    assert is_gluing_free(A2)


def test_isomorphisms():
    assert (0, 1) in [r.exchangeable for r in matrix_isomorphisms(A2, A2, 1)]
    assert [r.exchangeable for r in matrix_isomorphisms(A2, A2, -1)] == [(1, 0)]
    assert matrix_isomorphisms(A3_PATH, CYCLE3, 1) == []
    assert matrix_isomorphisms(A3_PATH, CYCLE3, -1) == []
    with pytest.raises(ValueError):
        matrix_isomorphisms(A2, A3_PATH, 1)


def test_isomorphisms_permute_frozen_rows():
    b = ExchangeMatrix.from_rows([[0, 1], [-1, 0]], [[1, 0], [0, -1]])
    c = ExchangeMatrix.from_rows([[0, 1], [-1, 0]], [[0, -1], [1, 0]])
    rels = matrix_isomorphisms(b, c, 1)
    assert [(r.exchangeable, r.frozen) for r in rels] == [((0, 1), (1, 0))]


def test_text_and_json_roundtrip():
    b = ExchangeMatrix.from_rows([[0, 1], [-1, 0]], [[1, 0]], ["x1", "x2", "y"])
    assert parse_matrix_text(b.to_text(with_labels=True)) == b
    assert ExchangeMatrix.from_json(json.dumps(b.to_json())) == b
    assert parse_matrix_text("0 1\n-1 0\n---\n1 0\n").frozen_rows == ((1, 0),)


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_matrix_text("0 one\n-1 0\n")
    with pytest.raises(ValueError):
        parse_matrix_text("")


def test_quiver_dot_valued_arrow():
    # five rows, four columns: the valued arrow between 2 and 3 carries (2,1)
    b = ExchangeMatrix.from_rows(
        [[0, 1, 0, 0], [-1, 0, -1, 0], [0, 2, 0, 2], [0, 0, -2, 0]],
        [[0, 0, 0, -1]],
    )
    dot = quiver_dot(b)
    assert dot.startswith("digraph")
    nodes = re.findall(r'^\s+"(\w+)"\s*\[', dot, re.M)
    assert nodes == ["x1", "x2", "x3", "x4", "y1"]
    assert '"x3" -> "x2" [label="(2,1)"]' in dot
    assert '"x1" -> "x2"' in dot
    assert '"x4" -> "y1"' in dot
    assert '"y1" [shape=box]' in dot


def test_quiver_dot_a2():
    dot = quiver_dot(A2)
    assert dot.count("->") == 1
    assert '"x1" -> "x2";' in dot


def test_dynkin_labels():
    assert str(parse_label("a_3")) == "A3"
    for bad in ("D3", "E9", "G3", "Q2", "A0"):
        with pytest.raises(UnknownDynkinLabel):
            parse_label(bad)


def test_catalan_oracle_values():
    expected = {"A2": 5, "A3": 14, "A4": 42, "B2": 6, "B3": 20, "C3": 20, "D4": 50, "G2": 8, "F4": 105, "E6": 833}
    for label, count in expected.items():
        assert catalan_number(label) == count


def test_coxeter_numbers():
    expected = {"A4": 5, "B3": 6, "C3": 6, "D4": 6, "D5": 8, "E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6}
    for label, h in expected.items():
        assert coxeter_number(label) == h


def test_classify_recovers_relabelled_types():
    for label in ("A4", "B3", "C3", "D5", "E6", "F4", "G2"):
        a = standard_cartan(label)
        n = len(a)
        p = list(reversed(range(n)))
        shuffled = [[a[p[i]][p[j]] for j in range(n)] for i in range(n)]
        found = classify_cartan(shuffled)
        assert found is not None and str(found[0]) == label
    assert classify_cartan([[2, -2], [-2, 2]]) is None


@settings(max_examples=200, deadline=None)
@given(skew_symmetrizable(), st.data())
def test_mutation_is_an_involution(b, data):
    k = data.draw(st.integers(0, b.n - 1))
    assert mutate_matrix(mutate_matrix(b, k), k) == b


@settings(max_examples=200, deadline=None)
@given(skew_symmetrizable(), st.data())
def test_mutation_matches_oracle(b, data):
    k = data.draw(st.integers(0, b.n - 1))
    assert mutate_matrix(b, k).entries == mutation_oracle(b.entries, b.n, k)


@settings(max_examples=200, deadline=None)
@given(skew_symmetrizable(frozen=False), st.data())
def test_symmetrizer_is_mutation_invariant(b, data):
    k = data.draw(st.integers(0, b.n - 1))
    assert find_symmetrizer(mutate_matrix(b, k)) == find_symmetrizer(b)


@settings(max_examples=200, deadline=None)
@given(skew_symmetrizable(), st.data())
def test_gluing_free_is_preserved(b, data):
    k = data.draw(st.integers(0, b.n - 1))
    assert is_gluing_free(mutate_matrix(b, k)) == is_gluing_free(b)


@settings(max_examples=200, deadline=None)
@given(skew_symmetrizable(frozen=False))
def test_bipartite_sign_is_a_two_colouring(b):
    eps = bipartite_sign(b)
    if eps is None:
        return
    for j in range(b.n):
        for i in range(b.n):
            if b[j, i] > 0:
                assert eps[j] == 1 and eps[i] == -1
            if b[j, i]:
                assert b[j, i] * b[i, j] < 0
