import pytest

from cyclicfc.classify import (
    Classification,
    cfc_condition,
    classify_cfc,
    is_cfc_involution_char,
    is_exceptional_periodic,
    is_logarithmic_cfc,
    verify_logarithmic,
    zigzag_factor_check,
)
from cyclicfc.coxeter import build_family, custom_system, is_involution
from cyclicfc.cylindric import is_cfc_word
from cyclicfc.enumeration import reduced_words
from cyclicfc.errors import ClassifierUnavailableError, PreconditionError

A2 = build_family("A", 3)
A3 = build_family("A", 4)
C2 = build_family("Ctilde", 2)
AT2 = build_family("Atilde", 3)
G2 = build_family("G2tilde")


@pytest.mark.parametrize(
    "sys, w, condition",
    [
        (A3, "s1 s3", "a"),
        (AT2, "s0 s1 s2 s0 s1 s2", "b"),
        (C2, "t s1 u s1", "c"),
        (C2, "t s1 t s1", None),
        (G2, "u t s u t u t s u t", "exceptional_periodic"),
        (G2, "s t u", "exceptional_finite"),
    ],
)
def test_classify_condition(sys, w, condition):
    c = classify_cfc(sys, sys.parse(w))
    assert c.cfc_condition == condition
    assert c.cfc is (condition is not None)


def test_classification_json_fields():
    data = classify_cfc(C2, C2.parse("t s1 u s1")).to_json(C2)
    assert data == {
        "reduced": True,
        "fc": True,
        "cfc": True,
        "cfc_condition": "c",
        "involution": False,
        "cfc_involution": False,
        "logarithmic": True,
        "witness": None,
    }


def test_classification_witness_serializes_points():
    data = classify_cfc(A2, A2.parse("s1 s2 s1")).to_json(A2)
    assert data["witness"] == {"kind": "same_label_cover", "points": [2, 0], "pair": ["s1", "s1"]}


def test_non_reduced_word():
    c = classify_cfc(A2, A2.parse("s1 s1"))
    assert c == Classification(False, False, False, None, False, False, None, None)


def test_custom_system_uses_general_criterion():
    sys = custom_system(["a", "b", "c"], [[1, 3, 2], [3, 1, 3], [2, 3, 1]])
    c = classify_cfc(sys, sys.parse("a b c"))
    assert c.cfc and c.cfc_condition is None
    assert not classify_cfc(sys, sys.parse("a b a")).cfc
    with pytest.raises(ClassifierUnavailableError):
        classify_cfc(sys, sys.parse("a b c"), require_classifier=True)


FAMILIES = [
    ("A", 5, 8),
    ("B", 4, 8),
    ("D", 3, 8),
    ("Atilde", 3, 8),
    ("Atilde", 4, 7),
    ("Ctilde", 2, 9),
    ("Ctilde", 3, 8),
    ("Btilde", 2, 8),
    ("Dtilde", 2, 7),
    ("G2tilde", None, 10),
]


@pytest.mark.parametrize("family, n, horizon", FAMILIES)
def test_classifier_matches_general_criterion(family, n, horizon):
    sys = build_family(family, n)
    for w in reduced_words(sys, horizon):
        c = classify_cfc(sys, w)
        assert c.cfc == is_cfc_word(sys, w), sys.format(w)
        assert (not c.cfc or c.fc) and c.reduced
        assert c.cfc_involution == (c.cfc and c.involution)
        assert (c.cfc_condition is not None) == c.cfc


@pytest.mark.parametrize("sys, w, ok", [(C2, "t s1 u s1", True), (C2, "t s1 t s1", False), (C2, "s1 t", False)])
def test_zigzag_factor_check(sys, w, ok):
    assert zigzag_factor_check(sys, sys.parse(w)) is ok


def test_zigzag_needs_zigzag_family():
    with pytest.raises(PreconditionError):
        zigzag_factor_check(AT2, ())


def test_periodic_form_needs_whole_periods():
    assert not is_exceptional_periodic(G2, G2.parse("u t s u"))
    assert is_exceptional_periodic(G2, G2.parse("t s u t u"))


def test_cfc_condition_unavailable_for_custom():
    sys = custom_system(["a", "b"], [[1, 3], [3, 1]])
    with pytest.raises(ClassifierUnavailableError):
        cfc_condition(sys, (0,))


@pytest.mark.parametrize(
    "sys, w, ok",
    [(build_family("D", 3), "t1 t2", True), (A2, "s1 s2", False), (A3, "s1 s3 s1", False)],
)
def test_is_cfc_involution_char(sys, w, ok):
    assert is_cfc_involution_char(sys, sys.parse(w)) is ok


@pytest.mark.parametrize(
    "family, n, horizon", [("A", 5, 8), ("Ctilde", 2, 8), ("Dtilde", 2, 7), ("G2tilde", None, 8)]
)
def test_involution_characterization(family, n, horizon):
    sys = build_family(family, n)
    for w in reduced_words(sys, horizon):
        both = is_cfc_word(sys, w) and is_involution(sys, w)
        assert is_cfc_involution_char(sys, w) == both
        if both:
            assert len(w) <= len(sys)


@pytest.mark.parametrize("sys, w, ok", [(AT2, "s0 s1 s2", True), (AT2, "s0 s1", False), (C2, "t s1 u s1", True)])
def test_is_logarithmic_cfc(sys, w, ok):
    assert is_logarithmic_cfc(sys, sys.parse(w)) is ok


@pytest.mark.parametrize(
    "sys, w",
    [(A2, "s1 s2"), (AT2, "s0 s0"), (AT2, "s0 s1 s0")],
    ids=["finite family", "not reduced", "not CFC"],
)
def test_is_logarithmic_cfc_preconditions(sys, w):
    with pytest.raises(PreconditionError):
        is_logarithmic_cfc(sys, sys.parse(w))


@pytest.mark.parametrize(
    "sys, w, kmax, ok",
    [(AT2, "s0 s1 s2", 5, True), (A2, "s1 s2", 3, False), (A2, "s1 s2", 1, True), (C2, "t s1 u s1", 6, True)],
)
def test_verify_logarithmic(sys, w, kmax, ok):
    assert verify_logarithmic(sys, sys.parse(w), kmax) is ok
