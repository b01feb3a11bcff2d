"""Coxeter systems, words, and an exact length oracle.

Words are plain tuples of generator indices; the system that gives them
meaning is always passed alongside.  Generator order (index order) is the
order used for lexicographic canonical forms.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    CapExceededError,
    PreconditionError,
    RangeError,
    UnknownGeneratorError,
)
from .ring import ONE, ZERO, RingElem

INF = math.inf
DEFAULT_CAP = 10**6
SUPPORTED_M = (2, 3, 4, 6, INF)

Word = tuple  # tuple[int, ...]

# -2 B(alpha_s, alpha_t) = 2 cos(pi / m)
_FORM = {
    2: ZERO,
    3: ONE,
    4: RingElem(0, 1, 0, 0),
    6: RingElem(0, 0, 1, 0),
    INF: RingElem(2),
}


@dataclass(frozen=True)
class CoxeterSystem:
    names: tuple
    matrix: tuple
    family: str | None = None
    rank: int | None = None
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValueError("generator names must be distinct")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("Coxeter matrix must be square and match the generators")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise ValueError("Coxeter matrix diagonal must be 1")
            for j in range(n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if i != j and m not in SUPPORTED_M:
                    raise ValueError(f"unsupported entry m={m}; allowed: 2, 3, 4, 6, inf")
        object.__setattr__(self, "index", {s: i for i, s in enumerate(self.names)})

    def __len__(self):
        return len(self.names)

    @property
    def label(self) -> str:
        if self.family is None:
            return "custom"
        if self.rank is None or self.family not in SUBSCRIPT_OFFSET:
            return self.family
        return f"{self.family}_{self.rank + SUBSCRIPT_OFFSET[self.family]}"

    def m(self, i: int, j: int):
        return self.matrix[i][j]

    @cached_property
    def neighbors(self) -> tuple:
        """Generators joined to each generator in the Coxeter diagram."""
        n = len(self)
        return tuple(
            tuple(j for j in range(n) if j != i and self.matrix[i][j] >= 3)
            for i in range(n)
        )

    @cached_property
    def closed_mask(self) -> tuple:
        """Bitmask of the generator and its diagram neighbours."""
        return tuple(
            (1 << i) | sum(1 << j for j in nbrs) for i, nbrs in enumerate(self.neighbors)
        )

    def edges(self) -> list:
        n = len(self)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.matrix[i][j] >= 3]

    def commute(self, i: int, j: int) -> bool:
        return self.matrix[i][j] == 2

    def parse(self, text) -> Word:
        """Parse whitespace-separated generator names into a word."""
        if isinstance(text, tuple):
            return text
        word = []
        for token in str(text).split():
            try:
                word.append(self.index[token])
            except KeyError:
                raise UnknownGeneratorError(token, self.names) from None
        return tuple(word)

    def format(self, word) -> str:
        return " ".join(self.names[i] for i in word)

    def to_json(self) -> dict:
        return {
            "generators": list(self.names),
            "matrix": [["inf" if m == INF else m for m in row] for row in self.matrix],
        }


def custom_system(names, matrix, family=None, rank=None) -> CoxeterSystem:
    rows = []
    for row in matrix:
        rows.append(tuple(INF if (m == "inf" or m == INF) else int(m) for m in row))
    return CoxeterSystem(tuple(names), tuple(rows), family, rank)


def load_system(path) -> CoxeterSystem:
    with open(path) as fh:
        data = json.load(fh)
    return custom_system(data["generators"], data["matrix"])


def _from_edges(names, edges, family, rank) -> CoxeterSystem:
    n = len(names)
    idx = {s: i for i, s in enumerate(names)}
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for a, b, m in edges:
        i, j = idx[a], idx[b]
        mat[i][j] = mat[j][i] = m
    return CoxeterSystem(tuple(names), tuple(tuple(r) for r in mat), family, rank)


def _path(names):
    return [(a, b, 3) for a, b in zip(names, names[1:])]


# Every family is indexed by the parameter n of its usual name:
# A_{n-1}, Atilde_{n-1}, B_n, Ctilde_n, D_{n+1}, Btilde_{n+1}, Dtilde_{n+2}.
# "linear" is a path s0 - ... - s_{n-1} on n generators.
FAMILY_MIN_RANK = {
    "A": 2,
    "Atilde": 3,
    "B": 2,
    "Ctilde": 2,
    "D": 1,
    "Btilde": 2,
    "Dtilde": 2,
    "linear": 1,
}
SUBSCRIPT_OFFSET = {"A": -1, "Atilde": -1, "B": 0, "Ctilde": 0, "D": 1, "Btilde": 1, "Dtilde": 2, "linear": 0}
FIXED_FAMILIES = ("G2tilde", "E6tilde", "E7tilde")
AFFINE_FAMILIES = ("Atilde", "Btilde", "Ctilde", "Dtilde", "G2tilde", "E6tilde", "E7tilde")


def build_family(family: str, n: int | None = None) -> CoxeterSystem:
    """Build a named Coxeter system.

    ``n`` is the parameter in the family's usual name (see FAMILY_MIN_RANK),
    so ``build_family("A", 3)`` is A_2 with generators s1 s2,
    ``build_family("Atilde", 3)`` is Atilde_2 with generators s0 s1 s2 and
    ``build_family("Ctilde", 2)`` is Ctilde_2 with generators t s1 u.
    """
    if family in FIXED_FAMILIES:
        return _exceptional(family)
    if family not in FAMILY_MIN_RANK:
        raise RangeError(f"unknown family {family!r}")
    if n is None or n < FAMILY_MIN_RANK[family]:
        raise RangeError(
            f"family {family} needs n >= {FAMILY_MIN_RANK[family]}, got {n}"
        )
    s = lambda lo, hi: [f"s{i}" for i in range(lo, hi + 1)]  # noqa: E731
    chain = s(1, n - 1)
    if family == "A":
        return _from_edges(chain, _path(chain), family, n)
    if family == "linear":
        names = s(0, n - 1)
        return _from_edges(names, _path(names), family, n)
    if family == "Atilde":
        names = s(0, n - 1)
        edges = _path(names) + [(names[-1], names[0], 3)]
        return _from_edges(names, edges, family, n)
    if family == "B":
        edges = [("t", "s1", 4)] + _path(chain)
        return _from_edges(["t"] + chain, edges, family, n)
    if family == "Ctilde":
        edges = [("t", "s1", 4), (chain[-1], "u", 4)] + _path(chain)
        return _from_edges(["t"] + chain + ["u"], edges, family, n)
    fork = [("t1", "s1", 3), ("t2", "s1", 3)] if chain else []
    if family == "D":
        return _from_edges(["t1", "t2"] + chain, fork + _path(chain), family, n)
    if family == "Btilde":
        edges = fork + [(chain[-1], "u", 4)] + _path(chain)
        return _from_edges(["t1", "t2"] + chain + ["u"], edges, family, n)
    if family == "Dtilde":
        edges = fork + [(chain[-1], "u1", 3), (chain[-1], "u2", 3)] + _path(chain)
        return _from_edges(["t1", "t2"] + chain + ["u1", "u2"], edges, family, n)
    raise AssertionError(family)


def _exceptional(family):
    if family == "G2tilde":
        # affine node s, then the 6-bond between t and u
        return _from_edges(["s", "t", "u"], [("s", "t", 3), ("t", "u", 6)], family, None)
    if family == "E6tilde":
        names = ["t", "s1", "s1'", "s2", "s2'", "s3", "s3'"]
        edges = []
        for i in "123":
            edges += [("t", f"s{i}", 3), (f"s{i}", f"s{i}'", 3)]
        return _from_edges(names, edges, family, None)
    if family == "E7tilde":
        names = ["t", "s0", "s1", "s1'", "s1''", "s2", "s2'", "s2''"]
        edges = [("t", "s0", 3)]
        for i in "12":
            edges += [("t", f"s{i}", 3), (f"s{i}", f"s{i}'", 3), (f"s{i}'", f"s{i}''", 3)]
        return _from_edges(names, edges, family, None)
    raise AssertionError(family)


# -- word primitives ---------------------------------------------------------


def cyclic_shift(w, k: int):
    """The cyclic shift starting at letter k (0-based), k taken mod len(w)."""
    if not w:
        return tuple(w)
    k %= len(w)
    return tuple(w[k:]) + tuple(w[:k])


def occurrence_counts(sys: CoxeterSystem, w) -> dict:
    counts = {name: 0 for name in sys.names}
    for i in w:
        counts[sys.names[i]] += 1
    return counts


def support(w) -> frozenset:
    return frozenset(w)


# -- geometric representation --------------------------------------------------


def form_coefficient(sys: CoxeterSystem, s: int, t: int) -> RingElem:
    return _FORM[sys.matrix[s][t]]


def simple_root(sys: CoxeterSystem, s: int) -> tuple:
    return tuple(ONE if i == s else ZERO for i in range(len(sys)))


def reflect(sys: CoxeterSystem, s: int, v) -> tuple:
    """Image of the root vector ``v`` under the simple reflection s."""
    new = -v[s]
    for t in sys.neighbors[s]:
        new = new + form_coefficient(sys, s, t) * v[t]
    return tuple(new if i == s else x for i, x in enumerate(v))


def root_sign(v) -> int:
    """1 for a positive root, -1 for a negative one.

    Raises if the coordinates have mixed signs, which cannot happen for a
    genuine root.
    """
    signs = {x.sign() for x in v} - {0}
    if signs == {1}:
        return 1
    if signs == {-1}:
        return -1
    raise ValueError(f"vector {v} is not a root")


class _ElementMatrix:
    """Columns cols[t] = w(alpha_t) for the element w built so far."""

    __slots__ = ("sys", "cols")

    def __init__(self, sys):
        self.sys = sys
        self.cols = [list(col) for col in (simple_root(sys, t) for t in range(len(sys)))]

    def descends(self, s: int) -> bool:
        """True iff l(ws) < l(w)."""
        return root_sign(self.cols[s]) < 0

    def multiply(self, s: int):
        """Replace w by ws."""
        cs = self.cols[s]
        for t in self.sys.neighbors[s]:
            c = form_coefficient(self.sys, s, t)
            ct = self.cols[t]
            self.cols[t] = [x + c * y for x, y in zip(ct, cs)]
        self.cols[s] = [-x for x in cs]


def is_reduced(sys: CoxeterSystem, w) -> bool:
    """Root criterion: letter s lengthens prefix u iff u(alpha_s) > 0."""
    mat = _ElementMatrix(sys)
    for s in w:
        if mat.descends(s):
            return False
        mat.multiply(s)
    return True


def length(sys: CoxeterSystem, w) -> int:
    """Coxeter length of the element represented by ``w``."""
    mat = _ElementMatrix(sys)
    for s in w:
        mat.multiply(s)
    ell = 0
    while True:
        for s in range(len(sys)):
            if mat.descends(s):
                mat.multiply(s)
                ell += 1
                break
        else:
            return ell


def is_involution(sys: CoxeterSystem, w) -> bool:
    return length(sys, tuple(w) + tuple(w)) == 0


# -- commutation and braid closures ------------------------------------------


def _closure(start, moves, cap, what):
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in moves(x):
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceededError(what, cap)
                queue.append(y)
    return seen


def commutation_class(sys: CoxeterSystem, w, cap: int = DEFAULT_CAP) -> set:
    """All words reachable from ``w`` by swapping adjacent commuting letters."""

    def moves(x):
        for i in range(len(x) - 1):
            a, b = x[i], x[i + 1]
            if a != b and sys.matrix[a][b] == 2:
                yield x[:i] + (b, a) + x[i + 2:]

    return _closure(tuple(w), moves, cap, "commutation class")


def braid_class(sys: CoxeterSystem, w, cap: int = DEFAULT_CAP) -> set:
    """R(w): closure of a reduced word under all braid relations."""
    w = tuple(w)
    if not is_reduced(sys, w):
        raise PreconditionError(f"braid_class needs a reduced word, got {sys.format(w)!r}")

    def moves(x):
        n = len(x)
        for i in range(n - 1):
            a, b = x[i], x[i + 1]
            if a == b:
                continue
            m = sys.matrix[a][b]
            if m == INF or i + m > n:
                continue
            if all(x[i + k] == (a if k % 2 == 0 else b) for k in range(m)):
                swapped = tuple(b if k % 2 == 0 else a for k in range(m))
                yield x[:i] + swapped + x[i + m:]

    return _closure(w, moves, cap, "braid class")


def is_fc_exhaustive(sys: CoxeterSystem, w, cap: int = DEFAULT_CAP) -> bool:
    """Definitional FC test: braid class equals commutation class."""
    return braid_class(sys, w, cap) == commutation_class(sys, w, cap)


# -- canonical forms --------------------------------------------------------------


def canonical_form(sys: CoxeterSystem, w) -> Word:
    """Lexicographically least word in the commutation class of ``w``."""
    rest = list(w)
    out = []
    closed = sys.closed_mask
    while rest:
        blocked = 0
        best = None
        for j, s in enumerate(rest):
            if not blocked >> s & 1 and (best is None or s < rest[best]):
                best = j
            blocked |= closed[s]
        out.append(rest.pop(best))
    return tuple(out)


def extends_canonically(sys: CoxeterSystem, w, s: int) -> bool:
    """True iff w + (s,) is canonical, given that w already is."""
    closed = sys.closed_mask[s]
    for x in reversed(w):
        if closed >> x & 1:
            return True
        if x > s:
            return False
    return True
