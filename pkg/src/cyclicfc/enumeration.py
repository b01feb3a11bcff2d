"""Enumeration of FC and CFC elements by length, CFC involutions, and the
oracle cross-check driver.

FC elements are grown one letter at a time as lex-least words of their
commutation class.  Both properties are prefix-closed (a prefix of a reduced
word of an FC element is again one, and a prefix of a lex-least word is
lex-least), so a branch can be cut as soon as it fails.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field

from .coxeter import INF, CoxeterSystem, _ElementMatrix, braid_class, is_fc_exhaustive
from .cylindric import fc_word_is_cfc, is_cfc_definitional, is_cfc_word
from .errors import CapExceededError, ClassifierUnavailableError
from .heaps import is_fc_reduced_word


@dataclass
class LengthCensus:
    family: str | None
    n: int | None
    counts: list
    horizon: int
    klass: str  # "FC", "CFC" or "CFC_involution"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "class": self.klass,
            "horizon": self.horizon,
            "counts": list(self.counts),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["length", "count"])
        for k, c in enumerate(self.counts):
            writer.writerow([k, c])
        return buf.getvalue()


class _Grower:
    """Mutable search state for one growing canonical FC word."""

    def __init__(self, sys: CoxeterSystem):
        self.sys = sys
        r = len(sys)
        self.word = []
        self.down = []
        self.last = [-1] * r
        self.closed = sys.closed_mask
        self.nbrs = sys.neighbors
        self.finite_nbrs = [
            [t for t in sys.neighbors[s] if sys.matrix[s][t] != INF] for s in range(r)
        ]
        # alternation run of the word projected to {s, t}, keyed by ordered pair
        self.run = {}
        self.top = {}

    def canonical_after(self, s: int) -> bool:
        closed = self.closed[s]
        for x in reversed(self.word):
            if closed >> x & 1:
                return True
            if x > s:
                return False
        return True

    def fc_after(self, s: int) -> bool:
        """Would appending s keep the word a reduced word of an FC element?"""
        w = self.word
        j = len(w)
        ls = self.last[s]
        if ls >= 0 and all(self.last[t] < ls for t in self.nbrs[s]):
            return False  # same-label chain cover
        down_j = (1 << j) | self._below(s)
        for t in self.finite_nbrs[s]:
            key = (s, t) if s < t else (t, s)
            m = self.sys.matrix[s][t]
            run = self.run.get(key, 0) + 1 if self.top.get(key) == t else 1
            if run < m:
                continue
            # first point of the alternating window of m points ending at j
            need = m - 1
            i1 = j
            for k in range(j - 1, -1, -1):
                if w[k] == s or w[k] == t:
                    i1 = k
                    need -= 1
                    if need == 0:
                        break
            size = 1
            for u in range(i1, j):
                if down_j >> u & 1 and self.down[u] >> i1 & 1:
                    size += 1
            if size == m:
                return False
        return True

    def _below(self, s: int) -> int:
        mask = 0
        closed = self.closed[s]
        for x, lx in enumerate(self.last):
            if lx >= 0 and closed >> x & 1:
                mask |= self.down[lx]
        return mask

    def push(self, s: int):
        j = len(self.word)
        saved = (self.last[s], [])
        self.down.append((1 << j) | self._below(s))
        for t in self.nbrs[s]:
            key = (s, t) if s < t else (t, s)
            saved[1].append((key, self.run.get(key, 0), self.top.get(key)))
            self.run[key] = self.run.get(key, 0) + 1 if self.top.get(key) == t else 1
            self.top[key] = s
        self.word.append(s)
        self.last[s] = j
        return saved

    def pop(self, saved):
        s = self.word.pop()
        self.down.pop()
        self.last[s] = saved[0]
        for key, run, top in saved[1]:
            self.run[key] = run
            self.top[key] = top


def _walk(sys: CoxeterSystem, horizon: int, visit, cap: int | None = None):
    g = _Grower(sys)
    r = len(sys)
    seen = [0]

    def rec():
        visit(g.word)
        seen[0] += 1
        if cap is not None and seen[0] > cap:
            raise CapExceededError("FC enumeration", cap)
        if len(g.word) == horizon:
            return
        for s in range(r):
            if g.canonical_after(s) and g.fc_after(s):
                saved = g.push(s)
                rec()
                g.pop(saved)

    rec()


def iter_fc(sys: CoxeterSystem, horizon: int, cap: int | None = None):
    """Canonical reduced words of FC elements of length <= horizon, DFS order."""
    out = []
    _walk(sys, horizon, lambda w: out.append(tuple(w)), cap)
    return iter(out)


def enumerate_fc(sys: CoxeterSystem, horizon: int, cap: int | None = None) -> list:
    """One canonical word per FC element of length <= horizon, sorted by
    (length, word)."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    return sorted(iter_fc(sys, horizon, cap), key=lambda w: (len(w), w))


def fc_census(sys: CoxeterSystem, horizon: int, cap: int | None = None) -> LengthCensus:
    counts = [0] * (horizon + 1)

    def visit(w):
        counts[len(w)] += 1

    _walk(sys, horizon, visit, cap)
    return LengthCensus(sys.family, sys.rank, counts, horizon, "FC")


def enumerate_cfc(sys: CoxeterSystem, horizon: int, cap: int | None = None, words: bool = False):
    """Census of CFC elements by length; with ``words=True`` also returns the
    canonical words, sorted by (length, word)."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    counts = [0] * (horizon + 1)
    found = []

    def visit(w):
        if fc_word_is_cfc(sys, w):
            counts[len(w)] += 1
            if words:
                found.append(tuple(w))

    _walk(sys, horizon, visit, cap)
    census = LengthCensus(sys.family, sys.rank, counts, horizon, "CFC")
    if words:
        return census, sorted(found, key=lambda w: (len(w), w))
    return census


def independent_sets(sys: CoxeterSystem) -> list:
    """All sets of pairwise commuting generators, as sorted tuples."""
    r = len(sys)
    closed = sys.closed_mask
    out = []

    def rec(i, chosen, blocked):
        if i == r:
            out.append(tuple(chosen))
            return
        rec(i + 1, chosen, blocked)
        if not blocked >> i & 1:
            chosen.append(i)
            rec(i + 1, chosen, blocked | closed[i])
            chosen.pop()

    rec(0, [], 0)
    return sorted(out, key=lambda x: (len(x), x))


def enumerate_cfc_involutions(sys: CoxeterSystem, words: bool = False):
    sets = independent_sets(sys)
    counts = [0] * (len(sys) + 1)
    for x in sets:
        counts[len(x)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    census = LengthCensus(sys.family, sys.rank, counts, len(sys), "CFC_involution")
    return (census, sets) if words else census


# -- cross-check driver -----------------------------------------------------------------


def reduced_words(sys: CoxeterSystem, horizon: int):
    """Every reduced word of length <= horizon, grown by the root criterion."""
    out = []

    def rec(word, mat):
        out.append(tuple(word))
        if len(word) == horizon:
            return
        for s in range(len(sys)):
            if word and word[-1] == s:
                continue
            if mat.descends(s):
                continue
            child = _ElementMatrix.__new__(_ElementMatrix)
            child.sys = sys
            child.cols = [list(c) for c in mat.cols]
            child.multiply(s)
            word.append(s)
            rec(word, child)
            word.pop()

    rec([], _ElementMatrix(sys))
    return out


@dataclass
class CrosscheckReport:
    system: str
    horizon: int
    words_checked: int = 0
    elements_checked: int = 0
    sampled: bool = False
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "horizon": self.horizon,
            "words_checked": self.words_checked,
            "elements_checked": self.elements_checked,
            "sampled": self.sampled,
            "ok": self.ok,
            "first_disagreement": self.disagreements[0] if self.disagreements else None,
            "disagreements": len(self.disagreements),
        }


def crosscheck(
    sys: CoxeterSystem,
    horizon: int,
    sample: int | None = None,
    seed: int = 0,
    max_exhaustive: int = 200_000,
) -> CrosscheckReport:
    """Compare every CFC and FC decision procedure on reduced words.

    All reduced words up to ``horizon`` are used unless there are more than
    ``max_exhaustive`` of them or ``sample`` is given, in which case a
    seeded random sample of that size is taken.
    """
    from .classify import classify_cfc

    words = reduced_words(sys, horizon)
    report = CrosscheckReport(sys.label, horizon)
    if sample is not None or len(words) > max_exhaustive:
        k = min(len(words), sample or max_exhaustive)
        words = random.Random(seed).sample(words, k)
        report.sampled = True
    element = {}  # word -> definitional verdict, shared across a braid class
    for w in words:
        if w not in element:
            cls = braid_class(sys, w)
            verdict = is_cfc_definitional(sys, w)
            fc = is_fc_exhaustive(sys, w)
            for x in cls:
                element[x] = (verdict, fc)
            report.elements_checked += 1
        definitional, fc_def = element[w]
        word_cfc = is_cfc_word(sys, w)
        try:
            cls_cfc = classify_cfc(sys, w).cfc
        except ClassifierUnavailableError:
            cls_cfc = word_cfc
        fc_heap = is_fc_reduced_word(sys, w)
        report.words_checked += 1
        if not (definitional == word_cfc == cls_cfc) or fc_heap != fc_def:
            report.disagreements.append(
                {
                    "word": sys.format(w),
                    "classify_cfc": cls_cfc,
                    "is_cfc_word": word_cfc,
                    "is_cfc_definitional": definitional,
                    "is_fc_reduced_word": fc_heap,
                    "is_fc_exhaustive": fc_def,
                }
            )
    return report
