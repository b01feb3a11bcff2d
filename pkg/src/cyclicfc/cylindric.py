"""Cylindric transformation of heaps and the CFC pattern criterion.

A cylindric heap keeps the chain covers of a heap and adds "wrap" edges that
close every one- and two-generator chain into a cycle.  It is not a poset;
no transitive closure is ever taken over wrap edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coxeter import (
    DEFAULT_CAP,
    INF,
    CoxeterSystem,
    braid_class,
    canonical_form,
    commutation_class,
    cyclic_shift,
    is_fc_exhaustive,
    is_reduced,
)
from .errors import PreconditionError
from .heaps import Heap, heap_of

BASE, WRAP = "base", "wrap"


@dataclass(frozen=True)
class CylindricHeap:
    base: Heap
    edges: frozenset  # of (i, j, tag)

    def __len__(self):
        return len(self.base)

    @property
    def labels(self):
        return self.base.labels

    def untagged(self) -> frozenset:
        return frozenset((i, j) for i, j, _ in self.edges)

    def successors(self) -> list:
        out = [[] for _ in range(len(self))]
        for i, j, _ in sorted(self.edges):
            if j not in out[i]:
                out[i].append(j)
        return out


@dataclass(frozen=True)
class CfcWitness:
    kind: str  # "cylindric_convex_chain", "same_label_cover" or "none"
    points: tuple = ()
    pair: tuple | None = None

    def __bool__(self):
        return self.kind != "none"

    def to_json(self, sys=None):
        pair = self.pair
        if pair is not None and sys is not None:
            pair = [sys.names[x] for x in pair]
        return {"kind": self.kind, "points": list(self.points), "pair": list(pair) if pair else None}


NO_CFC_WITNESS = CfcWitness("none")


def cylindric_transform(sys: CoxeterSystem, h: Heap) -> CylindricHeap:
    edges = {(i, j, BASE) for i, j in h.chain_covers}
    for s in range(len(sys)):
        pts = h.points_with(s)
        if pts and h.is_minimal(pts[0]) and h.is_maximal(pts[-1]):
            edges.add((pts[-1], pts[0], WRAP))
    for s, t in sys.edges():
        pts = [i for i, lab in enumerate(h.labels) if lab in (s, t)]
        if pts and h.labels[pts[0]] != h.labels[pts[-1]]:
            edges.add((pts[-1], pts[0], WRAP))
    return CylindricHeap(h, frozenset(edges))


def shortest_full_prefix(w) -> tuple:
    """Shortest prefix of ``w`` containing every letter that occurs in ``w``."""
    letters = set(w)
    seen = set()
    for p, x in enumerate(w):
        seen.add(x)
        if seen == letters:
            return tuple(w[: p + 1])
    return ()


def cylindric_via_concat(sys: CoxeterSystem, w) -> CylindricHeap:
    """Build H^c from the heap of w w_1 by gluing the copy of w_1 onto w."""
    w = tuple(w)
    k = len(w)
    doubled = heap_of(sys, w + shortest_full_prefix(w))
    edges = set()
    for i, j in doubled.chain_covers:
        tag = WRAP if i < k <= j else BASE
        edges.add((i % k, j % k, tag))
    return CylindricHeap(heap_of(sys, w), frozenset(edges))


def find_same_label_cover(ch: CylindricHeap, include_loops: bool = True):
    labels = ch.labels
    for i, j, tag in sorted(ch.edges, key=lambda e: (e[2] != BASE, e[0], e[1])):
        if labels[i] == labels[j] and (include_loops or i != j):
            return (i, j)
    return None


def candidate_chains(sys: CoxeterSystem, ch: CylindricHeap, wrap_only: bool = False):
    """Alternating chains of m_st distinct points along the edges of ``ch``.

    Such chains walk the cyclic sequence H_{s,t}; the step from its last
    point back to its first exists only when their labels differ.
    """
    labels = ch.labels
    for s, t in sys.edges():
        m = sys.matrix[s][t]
        if m == INF:
            continue
        proj = [i for i, lab in enumerate(labels) if lab == s or lab == t]
        n = len(proj)
        if n < m:
            continue
        closed = labels[proj[0]] != labels[proj[-1]]
        starts = range(n) if closed else range(n - m + 1)
        for j in starts:
            if wrap_only and j + m <= n:
                continue
            window = tuple(proj[(j + k) % n] for k in range(m))
            if all(labels[window[k]] != labels[window[k + 1]] for k in range(m - 1)):
                yield (labels[window[0]], labels[window[1]]), window


def _rotation_interval_size(sys, labels, first, last) -> int:
    """Size of [first, last] in the heap of the rotation starting at ``first``."""
    n = len(labels)
    span = (last - first) % n
    factor = [labels[(first + r) % n] for r in range(span + 1)]
    closed = sys.closed_mask
    reach = [False] * (span + 1)
    reach[0] = True
    mask = closed[factor[0]]
    for r in range(1, span + 1):
        if mask >> factor[r] & 1:
            reach[r] = True
            mask |= closed[factor[r]]
    size = 0
    mask = closed[factor[span]]
    for r in range(span, -1, -1):
        if r == span or mask >> factor[r] & 1:
            if r != span:
                mask |= closed[factor[r]]
            if reach[r]:
                size += 1
    return size


def _has_bypass_paths(ch: CylindricHeap, chain) -> bool:
    """Literal search for an all-distinct path first -> ... -> last through an
    outside point.  Exponential; meant for small heaps."""
    succ = ch.successors()
    first, last = chain[0], chain[-1]
    members = set(chain)
    visited = {first}

    def dfs(x, outside):
        for y in succ[x]:
            if y == x:
                continue
            if y == last:
                if outside:
                    return True
                continue
            if y in visited:
                continue
            visited.add(y)
            if dfs(y, outside or y not in members):
                return True
            visited.discard(y)
        return False

    return dfs(first, False)


def find_cylindric_convex_chain(sys: CoxeterSystem, ch: CylindricHeap, method: str = "rotation"):
    """First cylindric convex alternating chain as (pair, points), or None.

    ``method="rotation"`` tests convexity in the heap of the cyclic shift
    that starts at the chain's first point; ``method="paths"`` searches all
    distinct-point bypass paths in the cylindric heap directly.
    """
    for pair, chain in candidate_chains(sys, ch):
        if method == "rotation":
            convex = _rotation_interval_size(sys, ch.labels, chain[0], chain[-1]) == len(chain)
        elif method == "paths":
            convex = not _has_bypass_paths(ch, chain)
        else:
            raise ValueError(f"unknown method {method!r}")
        if convex:
            return pair, chain
    return None


def is_cfc_heap(sys: CoxeterSystem, h: Heap, method: str = "rotation") -> CfcWitness:
    ch = cylindric_transform(sys, h)
    cover = find_same_label_cover(ch, include_loops=False)
    if cover is not None:
        lab = ch.labels[cover[0]]
        return CfcWitness("same_label_cover", cover, (lab, lab))
    found = find_cylindric_convex_chain(sys, ch, method)
    if found is not None:
        pair, chain = found
        return CfcWitness("cylindric_convex_chain", chain, pair)
    return NO_CFC_WITNESS


def is_cfc_word(sys: CoxeterSystem, w) -> bool:
    """True iff ``w`` is a reduced word of a CFC element."""
    return is_reduced(sys, w) and not is_cfc_heap(sys, heap_of(sys, w))


def fc_word_is_cfc(sys: CoxeterSystem, w) -> bool:
    """CFC test for a word already known to be a reduced word of an FC element.

    In an FC heap every violation must use a wrap edge, so only the
    same-label wraps and the chains through a pair wrap are examined.
    """
    n = len(w)
    if n == 0:
        return True
    closed = sys.closed_mask
    first = {}
    last = {}
    for i, x in enumerate(w):
        first.setdefault(x, i)
        last[x] = i
    for s, a in first.items():
        b = last[s]
        if a == b:
            continue
        nbr = closed[s] & ~(1 << s)
        if not any(nbr >> w[i] & 1 for i in range(a)) and not any(
            nbr >> w[i] & 1 for i in range(b + 1, n)
        ):
            return False
    for s, t in sys.edges():
        m = sys.matrix[s][t]
        if m == INF or s not in first or t not in first:
            continue
        proj = [i for i, x in enumerate(w) if x == s or x == t]
        p = len(proj)
        if p < m or w[proj[0]] == w[proj[-1]]:
            continue
        for j in range(p - m + 1, p):
            window = [proj[(j + k) % p] for k in range(m)]
            if any(w[window[k]] == w[window[k + 1]] for k in range(m - 1)):
                continue
            if _rotation_interval_size(sys, w, window[0], window[-1]) == m:
                return False
    return True


# -- definitional oracle --------------------------------------------------------


@lru_cache(maxsize=None)
def _reduced_fc_class(sys: CoxeterSystem, key) -> bool:
    return is_reduced(sys, key) and is_fc_exhaustive(sys, key)


def _reduced_and_fc(sys, y) -> bool:
    # both properties are constant on commutation classes
    return _reduced_fc_class(sys, canonical_form(sys, y))


def is_cfc_definitional(sys: CoxeterSystem, w, strategy: str = "braid", cap: int = DEFAULT_CAP) -> bool:
    """CFC straight from the definition: every cyclic shift of every reduced
    expression is a reduced expression of an FC element.

    ``strategy`` picks the set of reduced expressions: ``"braid"`` closes
    under all braid moves; ``"commutation"`` first checks FC and then uses
    the commutation class, which is all of R(w) in that case.
    """
    w = tuple(w)
    if not is_reduced(sys, w):
        raise PreconditionError(f"{sys.format(w)!r} is not reduced")
    if strategy == "braid":
        words = braid_class(sys, w, cap)
    elif strategy == "commutation":
        if not is_fc_exhaustive(sys, w, cap):
            return False
        words = commutation_class(sys, w, cap)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    for x in words:
        for k in range(max(len(x), 1)):
            if not _reduced_and_fc(sys, cyclic_shift(x, k)):
                return False
    return True
