import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicfc.coxeter import (
    INF,
    braid_class,
    build_family,
    canonical_form,
    commutation_class,
    custom_system,
    cyclic_shift,
    is_fc_exhaustive,
    is_involution,
    is_reduced,
    length,
    load_system,
    occurrence_counts,
    reflect,
    simple_root,
)
from cyclicfc.errors import CapExceededError, PreconditionError, RangeError, UnknownGeneratorError
from cyclicfc.ring import ONE, ZERO, RingElem

A2 = build_family("A", 3)
A3 = build_family("A", 4)
B3 = build_family("B", 3)
C2 = build_family("Ctilde", 2)
L7 = build_family("linear", 7)


def words(sys, k):
    return [w for L in range(k + 1) for w in itertools.product(range(len(sys)), repeat=L)]


# -- exact ring ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "x, approx",
    [
        (RingElem(1, 0, 0, 0), 1.0),
        (RingElem(0, 1, 0, 0), math.sqrt(2)),
        (RingElem(-1, 0, 1, 0), math.sqrt(3) - 1),
        (RingElem(5, -3, -1, 0), 5 - 3 * math.sqrt(2) - math.sqrt(3)),
        (RingElem(-5, 2, 0, 1), -5 + 2 * math.sqrt(2) + math.sqrt(6)),
        (RingElem(0, 0, 0, 0), 0.0),
    ],
)
def test_ring_sign(x, approx):
    assert x.sign() == (approx > 0) - (approx < 0)


@given(
    st.tuples(*[st.integers(-20, 20)] * 4),
    st.tuples(*[st.integers(-20, 20)] * 4),
)
def test_ring_arithmetic_is_exact(a, b):
    x, y = RingElem(*a), RingElem(*b)
    assert (x + y) - y == x
    assert x * y == y * x
    assert x * ONE == x and x + ZERO == x
    assert (x * y).sign() == x.sign() * y.sign()


# -- systems ------------------------------------------------------------------------


def test_build_family_type_a():
    sys = build_family("A", 4)
    assert sys.names == ("s1", "s2", "s3")
    i = sys.index
    assert sys.m(i["s1"], i["s2"]) == sys.m(i["s2"], i["s3"]) == 3
    assert sys.m(i["s1"], i["s3"]) == 2


def test_build_family_ctilde():
    sys = build_family("Ctilde", 2)
    assert sys.names == ("t", "s1", "u")
    i = sys.index
    assert sys.m(i["t"], i["s1"]) == sys.m(i["s1"], i["u"]) == 4
    assert sys.m(i["t"], i["u"]) == 2


def test_build_family_atilde_too_small():
    with pytest.raises(RangeError, match="n >= 3"):
        build_family("Atilde", 2)


@pytest.mark.parametrize(
    "family, n, names",
    [
        ("A", 2, ("s1",)),
        ("Atilde", 3, ("s0", "s1", "s2")),
        ("B", 3, ("t", "s1", "s2")),
        ("Ctilde", 3, ("t", "s1", "s2", "u")),
        ("D", 3, ("t1", "t2", "s1", "s2")),
        ("Btilde", 2, ("t1", "t2", "s1", "u")),
        ("Dtilde", 2, ("t1", "t2", "s1", "u1", "u2")),
        ("linear", 3, ("s0", "s1", "s2")),
        ("G2tilde", None, ("s", "t", "u")),
    ],
)
def test_generator_names(family, n, names):
    assert build_family(family, n).names == names


@pytest.mark.parametrize(
    "family, n, edges",
    [
        ("Atilde", 3, {("s0", "s1", 3), ("s1", "s2", 3), ("s0", "s2", 3)}),
        ("B", 3, {("t", "s1", 4), ("s1", "s2", 3)}),
        ("D", 3, {("t1", "s1", 3), ("t2", "s1", 3), ("s1", "s2", 3)}),
        ("Btilde", 2, {("t1", "s1", 3), ("t2", "s1", 3), ("s1", "u", 4)}),
        ("Dtilde", 2, {("t1", "s1", 3), ("t2", "s1", 3), ("s1", "u1", 3), ("s1", "u2", 3)}),
        ("G2tilde", None, {("s", "t", 3), ("t", "u", 6)}),
    ],
)
def test_diagram_edges(family, n, edges):
    sys = build_family(family, n)
    got = {(sys.names[i], sys.names[j], sys.m(i, j)) for i, j in sys.edges()}
    norm = lambda es: {(frozenset((a, b)), m) for a, b, m in es}  # noqa: E731
    assert norm(got) == norm(edges)


@pytest.mark.parametrize("family, size", [("E6tilde", 7), ("E7tilde", 8)])
def test_exceptional_diagrams_are_trees(family, size):
    sys = build_family(family)
    assert len(sys) == size and len(sys.edges()) == size - 1
    assert all(sys.m(i, j) == 3 for i, j in sys.edges())


def test_parse_rejects_unknown_token():
    with pytest.raises(UnknownGeneratorError) as e:
        A3.parse("s1 s9")
    assert e.value.token == "s9"


def test_custom_system_roundtrip(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"generators": ["a", "b"], "matrix": [[1, "inf"], ["inf", 1]]}))
    sys = load_system(path)
    assert sys.m(0, 1) == INF
    assert sys.to_json() == {"generators": ["a", "b"], "matrix": [[1, "inf"], ["inf", 1]]}


@pytest.mark.parametrize("bad", [[[1, 5], [5, 1]], [[1, 3], [2, 1]], [[2, 3], [3, 1]]])
def test_custom_system_validation(bad):
    with pytest.raises(ValueError):
        custom_system(["a", "b"], bad)


# -- words --------------------------------------------------------------------------


@pytest.mark.parametrize(
    "w, k, out",
    [("s1 s2 s3", 1, "s2 s3 s1"), ("s1 s2 s3", 0, "s1 s2 s3"), ("", 5, ""), ("s1 s2 s3", -1, "s3 s1 s2")],
)
def test_cyclic_shift(w, k, out):
    assert A3.format(cyclic_shift(A3.parse(w), k)) == out


@pytest.mark.parametrize(
    "sys, w, counts",
    [
        (C2, "t s1 u s1", {"t": 1, "s1": 2, "u": 1}),
        (C2, "", {"t": 0, "s1": 0, "u": 0}),
        (build_family("Atilde", 3), "s0 s1 s2 s0 s1 s2", {"s0": 2, "s1": 2, "s2": 2}),
    ],
)
def test_occurrence_counts(sys, w, counts):
    assert occurrence_counts(sys, sys.parse(w)) == counts


# -- geometric representation -------------------------------------------------------


def test_reflect_simple_root_negated():
    for s in range(len(B3)):
        assert reflect(B3, s, simple_root(B3, s)) == tuple(-x for x in simple_root(B3, s))


def test_reflect_simply_laced():
    v = reflect(A2, 0, simple_root(A2, 1))
    assert v == (ONE, ONE)


def test_reflect_m4():
    sys = build_family("B", 2)
    t, s1 = sys.index["t"], sys.index["s1"]
    v = reflect(sys, t, simple_root(sys, s1))
    assert v[s1] == ONE and v[t] == RingElem(0, 1, 0, 0)


@settings(max_examples=60)
@given(st.lists(st.integers(0, 3), max_size=8), st.integers(0, 3))
def test_reflect_is_an_involution(w, s):
    v = simple_root(C2, 0)
    for x in w:
        v = reflect(C2, x % 3, v)
    assert reflect(C2, s % 3, reflect(C2, s % 3, v)) == v


@pytest.mark.parametrize(
    "sys, w, reduced",
    [(A2, "s1 s1", False), (A2, "s1 s2 s1", True), (C2, "t s1 t s1", True), (A2, "s1 s2 s1 s2", False)],
)
def test_is_reduced(sys, w, reduced):
    assert is_reduced(sys, sys.parse(w)) is reduced


@pytest.mark.parametrize("w, ell", [("s1 s1", 0), ("s1 s2 s1 s2", 2), ("s1 s2", 2), ("", 0)])
def test_length(w, ell):
    assert length(A2, A2.parse(w)) == ell


def _perm_length(w, n):
    perm = list(range(n))
    for s in w:
        perm[s], perm[s + 1] = perm[s + 1], perm[s]
    return sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))


def test_reduced_matches_permutation_inversions():
    # A_3 is S_4: reducedness by counting inversions
    for w in words(A3, 6):
        assert is_reduced(A3, w) == (_perm_length(w, 4) == len(w))
        assert length(A3, w) == _perm_length(w, 4)


def _act(sys, s, cols):
    return tuple(reflect(sys, s, v) for v in cols)


def _cayley_distances(sys, depth):
    """Length of every element up to ``depth`` by breadth-first search on
    exact reflection matrices (columns are images of the simple roots)."""
    ident = tuple(simple_root(sys, t) for t in range(len(sys)))
    dist = {ident: 0}
    frontier = [ident]
    for d in range(1, depth + 1):
        nxt = []
        for g in frontier:
            for s in range(len(sys)):
                h = _act(sys, s, g)
                if h not in dist:
                    dist[h] = d
                    nxt.append(h)
        frontier = nxt
    return dist


@pytest.mark.parametrize("sys", [A3, B3, C2], ids=["A3", "B3", "Ctilde2"])
def test_is_reduced_matches_cayley_graph(sys):
    depth = 10
    dist = _cayley_distances(sys, depth)
    ident = tuple(simple_root(sys, t) for t in range(len(sys)))
    checked = 0

    def rec(w, g):
        nonlocal checked
        if len(w) == depth:
            return
        for s in range(len(sys)):
            # g is the element of reversed(w); appending s multiplies on the left
            h = _act(sys, s, g)
            child = w + (s,)
            expected = dist.get(h, depth + 1) == len(child)
            assert is_reduced(sys, child) == expected
            checked += 1
            if expected:
                rec(child, h)

    rec((), ident)
    assert checked > 0


@pytest.mark.parametrize("sys", [B3, C2], ids=["B3", "Ctilde2"])
def test_reduced_words_are_closed_under_braid_moves(sys):
    for w in words(sys, 5):
        if is_reduced(sys, w):
            cls = braid_class(sys, w)
            assert all(is_reduced(sys, x) and length(sys, x) == len(w) for x in cls)


@settings(max_examples=80)
@given(st.lists(st.integers(0, 2), max_size=10))
def test_length_invariant_under_commutation(w):
    w = tuple(w)
    for x in commutation_class(C2, w, cap=10_000):
        assert length(C2, x) == length(C2, w)


# -- classes ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "sys, w, cls",
    [
        (A3, "s1 s3", {"s1 s3", "s3 s1"}),
        (A2, "s1 s2", {"s1 s2"}),
    ],
)
def test_commutation_class(sys, w, cls):
    assert {sys.format(x) for x in commutation_class(sys, sys.parse(w))} == cls


def test_commutation_class_size_linear():
    assert len(commutation_class(L7, L7.parse("s2 s1 s0 s3 s2"))) == 5


def test_commutation_class_cap():
    with pytest.raises(CapExceededError):
        commutation_class(L7, L7.parse("s0 s2 s4 s6 s0 s2 s4 s6"), cap=10)


@pytest.mark.parametrize(
    "sys, w, cls",
    [
        (A2, "s1 s2 s1", {"s1 s2 s1", "s2 s1 s2"}),
        (A3, "s1 s3", {"s1 s3", "s3 s1"}),
        (C2, "t s1 t s1", {"t s1 t s1", "s1 t s1 t"}),
    ],
)
def test_braid_class(sys, w, cls):
    assert {sys.format(x) for x in braid_class(sys, sys.parse(w))} == cls


def test_braid_class_needs_reduced_word():
    with pytest.raises(PreconditionError):
        braid_class(A2, A2.parse("s1 s1"))


@pytest.mark.parametrize(
    "sys, w, fc", [(A2, "s1 s2 s1", False), (A3, "s1 s3", True), (C2, "t s1 t s1", False)]
)
def test_is_fc_exhaustive(sys, w, fc):
    assert is_fc_exhaustive(sys, sys.parse(w)) is fc


@pytest.mark.parametrize(
    "sys, w, inv",
    [(A2, "s1", True), (A2, "s1 s2", False), (A3, "s1 s3", True), (A2, "s1 s2 s1", True), (A2, "", True)],
)
def test_is_involution(sys, w, inv):
    assert is_involution(sys, sys.parse(w)) is inv


@pytest.mark.parametrize(
    "sys, w, out", [(A3, "s3 s1", "s1 s3"), (A2, "s1 s2", "s1 s2"), (A3, "s2 s3 s1 s2", "s2 s1 s3 s2")]
)
def test_canonical_form(sys, w, out):
    assert sys.format(canonical_form(sys, sys.parse(w))) == out


def test_canonical_form_decides_commutation_class():
    ws = words(A3, 6)
    classes = {}
    for w in ws:
        classes.setdefault(canonical_form(A3, w), set()).add(w)
    for key, members in classes.items():
        assert commutation_class(A3, key) == members
