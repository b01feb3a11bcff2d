"""Word-level CFC classifiers for each family, CFC involutions, and the
logarithmic criterion.

Each classifier takes a reduced word and reads off occurrence counts,
alternation, or membership in an explicit family of words; the general
pattern criterion in ``cylindric`` is the reference they are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coxeter import (
    CoxeterSystem,
    canonical_form,
    commutation_class,
    cyclic_shift,
    is_involution,
    is_reduced,
    length,
    occurrence_counts,
)
from .cylindric import is_cfc_heap, is_cfc_word
from .errors import ClassifierUnavailableError, PreconditionError
from .heaps import heap_of, is_alternating, is_fc_heap

AT_MOST_ONCE_FAMILIES = ("A", "B", "D", "linear")
ZIGZAG_FAMILIES = ("Ctilde", "Btilde", "Dtilde")
LOGARITHMIC_FAMILIES = ("Atilde", "Btilde", "Ctilde", "Dtilde")

PERIODIC_WORDS = {
    "G2tilde": "u t s u t",
    "E6tilde": "s1 t s1' s1 s2 t s2' s2 s3 t s3' s3",
    "E7tilde": "s1 t s1' s0 s1 s1'' t s1' s1 s2 t s2' s0 s2 s2'' t s2' s2",
}
# census horizons used to collect the finite part of the exceptional classifiers
EXCEPTIONAL_HORIZON = {"G2tilde": 30, "E6tilde": 26, "E7tilde": 38}


@dataclass(frozen=True)
class Classification:
    reduced: bool
    fc: bool
    cfc: bool
    cfc_condition: str | None
    involution: bool
    cfc_involution: bool
    logarithmic: bool | None
    witness: object = None

    def to_json(self, sys=None) -> dict:
        return {
            "reduced": self.reduced,
            "fc": self.fc,
            "cfc": self.cfc,
            "cfc_condition": self.cfc_condition,
            "involution": self.involution,
            "cfc_involution": self.cfc_involution,
            "logarithmic": self.logarithmic,
            "witness": self.witness.to_json(sys) if self.witness else None,
        }


def _counts(sys, w) -> list:
    c = [0] * len(sys)
    for x in w:
        c[x] += 1
    return c


def _at_most_once(counts) -> bool:
    return max(counts, default=0) <= 1


# -- zigzag words ---------------------------------------------------------------------


def _zigzag_periods(sys: CoxeterSystem) -> list:
    """One period of each zigzag word, for every ordering of the fork pairs.

    Swapping a fork pair inside a factor is a commutation, so fixing the
    order of every pair at once is enough to reach every commutation class
    of a factor.
    """
    idx = sys.index
    chain = [idx[f"s{i}"] for i in range(1, sys.rank)]
    if sys.family == "Ctilde":
        left_orders = [[idx["t"]]]
        right_orders = [[idx["u"]]]
    elif sys.family == "Btilde":
        left_orders = [[idx["t1"], idx["t2"]], [idx["t2"], idx["t1"]]]
        right_orders = [[idx["u"]]]
    else:
        left_orders = [[idx["t1"], idx["t2"]], [idx["t2"], idx["t1"]]]
        right_orders = [[idx["u1"], idx["u2"]], [idx["u2"], idx["u1"]]]
    return [
        tuple(left + chain + right + chain[::-1])
        for left in left_orders
        for right in right_orders
    ]


def _zigzag_counts_ok(sys, counts) -> bool:
    idx = sys.index
    s = [counts[idx[f"s{i}"]] for i in range(1, sys.rank)]
    if len(set(s)) != 1 or s[0] < 2 or s[0] % 2:
        return False
    half = s[0] // 2
    ends = {"Ctilde": ("t", "u"), "Btilde": ("t1", "t2", "u"), "Dtilde": ("t1", "t2", "u1", "u2")}
    return all(counts[idx[e]] == half for e in ends[sys.family])


def zigzag_factor_check(sys: CoxeterSystem, w) -> bool:
    """Some word commutation equivalent to ``w`` is a factor of a zigzag word,
    with the occurrence counts the factor condition requires."""
    if sys.family not in ZIGZAG_FAMILIES:
        raise PreconditionError(f"zigzag factors are defined for {ZIGZAG_FAMILIES}, not {sys.label}")
    w = tuple(w)
    if not _zigzag_counts_ok(sys, _counts(sys, w)):
        return False
    target = canonical_form(sys, w)
    L = len(w)
    for period in _zigzag_periods(sys):
        reps = L // len(period) + 2
        long = period * reps
        for p in range(len(period)):
            if canonical_form(sys, long[p:p + L]) == target:
                return True
    return False


# -- exceptional families -------------------------------------------------------------


@lru_cache(maxsize=None)
def _periodic_classes(sys: CoxeterSystem, k: int) -> frozenset:
    """Canonical forms of w1 w2^(k-1) w3 with w3 w1 = w2, w2 in R(w_2)."""
    w2 = sys.parse(PERIODIC_WORDS[sys.family])
    out = set()
    for x in commutation_class(sys, w2):
        for p in range(len(x)):
            out.add(canonical_form(sys, cyclic_shift(x, p) * k))
    return frozenset(out)


def is_exceptional_periodic(sys: CoxeterSystem, w) -> bool:
    period = len(PERIODIC_WORDS[sys.family].split())
    if not w or len(w) % period:
        return False
    return canonical_form(sys, w) in _periodic_classes(sys, len(w) // period)


@lru_cache(maxsize=None)
def exceptional_finite_set(sys: CoxeterSystem) -> frozenset:
    """CFC elements (canonical words) up to the census horizon that are not of
    the periodic form."""
    from .enumeration import enumerate_cfc

    _, words = enumerate_cfc(sys, EXCEPTIONAL_HORIZON[sys.family], words=True)
    return frozenset(w for w in words if not is_exceptional_periodic(sys, w))


# -- dispatch -------------------------------------------------------------------------


def cfc_condition(sys: CoxeterSystem, w):
    """Name of the condition that makes the reduced word ``w`` CFC under its
    family's classifier, or None when none holds."""
    w = tuple(w)
    fam = sys.family
    counts = _counts(sys, w)
    if fam in PERIODIC_WORDS:
        if is_exceptional_periodic(sys, w):
            return "exceptional_periodic"
        if canonical_form(sys, w) in exceptional_finite_set(sys):
            return "exceptional_finite"
        return None
    if fam is None or fam not in AT_MOST_ONCE_FAMILIES + ZIGZAG_FAMILIES + ("Atilde",):
        raise ClassifierUnavailableError(f"no word-level classifier for {sys.label} systems")
    if _at_most_once(counts):
        return "a"
    if fam in AT_MOST_ONCE_FAMILIES:
        return None
    if _alternating_counts_ok(sys, counts) and is_alternating(sys, w):
        return "b"
    if fam in ZIGZAG_FAMILIES and zigzag_factor_check(sys, w):
        return "c"
    return None


def _alternating_counts_ok(sys, counts) -> bool:
    fam = sys.family
    if fam in ("Atilde", "Ctilde"):
        return len(set(counts)) == 1 and counts[0] >= 2
    idx = sys.index
    main = [counts[idx[f"s{i}"]] for i in range(1, sys.rank)]
    if fam == "Btilde":
        main.append(counts[idx["u"]])
        forks = ("t1", "t2")
    else:
        forks = ("t1", "t2", "u1", "u2")
    if len(set(main)) != 1 or main[0] < 2 or main[0] % 2:
        return False
    return all(counts[idx[f]] == main[0] // 2 for f in forks)


def is_cfc_involution_char(sys: CoxeterSystem, w) -> bool:
    """Each generator at most once and the support pairwise commuting."""
    w = tuple(w)
    if len(set(w)) != len(w):
        return False
    return all(sys.matrix[a][b] == 2 for i, a in enumerate(w) for b in w[i + 1:])


def is_logarithmic_cfc(sys: CoxeterSystem, w) -> bool:
    """For a CFC element of an affine family: logarithmic iff full support."""
    if sys.family not in LOGARITHMIC_FAMILIES:
        raise PreconditionError(f"logarithmic criterion needs one of {LOGARITHMIC_FAMILIES}")
    if not is_reduced(sys, w):
        raise PreconditionError(f"{sys.format(w)!r} is not reduced")
    if not is_cfc_word(sys, w):
        raise PreconditionError(f"{sys.format(w)!r} is not CFC")
    return len(set(w)) == len(sys)


def verify_logarithmic(sys: CoxeterSystem, w, kmax: int) -> bool:
    """l(w^k) = k l(w) for 1 <= k <= kmax, by the length oracle."""
    w = tuple(w)
    ell = length(sys, w)
    return all(length(sys, w * k) == k * ell for k in range(1, kmax + 1))


def classify_cfc(sys: CoxeterSystem, w, require_classifier: bool = False) -> Classification:
    """Everything known about the word ``w``.

    ``cfc`` comes from the family classifier when there is one and from the
    general pattern criterion otherwise (``cfc_condition`` is then None);
    with ``require_classifier=True`` a missing classifier raises instead.
    """
    w = tuple(w)
    if not is_reduced(sys, w):
        return Classification(False, False, False, None, False, False, None, None)
    h = heap_of(sys, w)
    fc_witness = is_fc_heap(sys, h)
    fc = not fc_witness
    general = is_cfc_heap(sys, h)
    try:
        condition = cfc_condition(sys, w)
        cfc = condition is not None
    except ClassifierUnavailableError:
        if require_classifier:
            raise
        condition = None
        cfc = not general
    involution = is_involution(sys, w)
    logarithmic = None
    if cfc and sys.family in LOGARITHMIC_FAMILIES:
        logarithmic = len(set(w)) == len(sys)
    # a non-FC heap also fails the cylindric test, so its witness comes first
    witness = general or fc_witness or None
    return Classification(
        reduced=True,
        fc=fc,
        cfc=cfc,
        cfc_condition=condition,
        involution=involution,
        cfc_involution=cfc and involution,
        logarithmic=logarithmic,
        witness=witness,
    )
