"""Heaps of words: construction, chain covers, and the FC pattern test."""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import DEFAULT_CAP, INF, CoxeterSystem
from .errors import CapExceededError, PreconditionError


@dataclass(frozen=True)
class Heap:
    """Labelled poset on the positions 0..len-1 of a word.

    ``down[i]`` is a bitmask of every point j with j <= i in the order
    (including i itself).  ``origin`` maps points back to the positions of
    the word the heap was cut from (identity for full heaps).
    """

    sys: CoxeterSystem
    labels: tuple
    down: tuple
    chain_covers: frozenset
    origin: tuple

    def __len__(self):
        return len(self.labels)

    def precedes(self, i: int, j: int) -> bool:
        """Strict order i < j in the heap."""
        return i != j and bool(self.down[j] >> i & 1)

    def points_with(self, s: int) -> list:
        return [i for i, lab in enumerate(self.labels) if lab == s]

    def is_minimal(self, i: int) -> bool:
        return self.down[i] == 1 << i

    def is_maximal(self, i: int) -> bool:
        return not any(self.down[j] >> i & 1 for j in range(i + 1, len(self.labels)))

    def covers(self) -> list:
        """Covering pairs of the order, i.e. the Hasse diagram edges."""
        out = []
        for j, dj in enumerate(self.down):
            below = dj & ~(1 << j)
            for i in _bits(below):
                # i is covered by j iff no k in (i, j) sits between them
                rest = below & ~(1 << i)
                if not any(self.down[k] >> i & 1 for k in _bits(rest)):
                    out.append((i, j))
        return sorted(out)

    def interval(self, i: int, j: int) -> list:
        """Points u with i <= u <= j."""
        return [u for u in range(i, j + 1) if self.down[j] >> u & 1 and self.down[u] >> i & 1]


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def heap_of(sys: CoxeterSystem, w) -> Heap:
    w = tuple(w)
    closed = sys.closed_mask
    n = len(sys)
    last = [-1] * n
    down = []
    for j, s in enumerate(w):
        mask = 1 << j
        for x in range(n):
            if closed[s] >> x & 1 and last[x] >= 0:
                mask |= down[last[x]]
        down.append(mask)
        last[s] = j
    return Heap(sys, w, tuple(down), frozenset(_word_chain_covers(sys, w)), tuple(range(len(w))))


def _word_chain_covers(sys, w):
    covers = set()
    nbrs = sys.neighbors
    for s, t in sys.edges():
        prev = None
        for j, x in enumerate(w):
            if x == s or x == t:
                if prev is not None and w[prev] != x:
                    covers.add((prev, j))
                prev = j
    for s in range(len(sys)):
        prev = None
        blocked = False
        for j, x in enumerate(w):
            if x == s:
                if prev is not None and not blocked:
                    covers.add((prev, j))
                prev, blocked = j, False
            elif x in nbrs[s]:
                blocked = True
    return covers


def chain_covers_from_order(sys, labels, down) -> set:
    """Chain covering relation read straight off an order (slow, generic)."""
    k = len(labels)
    covers = set()
    for j in range(k):
        for i in range(j):
            if not down[j] >> i & 1:
                continue
            a, b = labels[i], labels[j]
            between = [z for z in range(i + 1, j) if down[z] >> i & 1 and down[j] >> z & 1]
            if a == b:
                if not between:
                    covers.add((i, j))
            elif sys.matrix[a][b] >= 3:
                if not any(labels[z] in (a, b) for z in between):
                    covers.add((i, j))
    return covers


def subheap(h: Heap, gens) -> Heap:
    """Induced labelled subposet H_I on the points whose label is in ``gens``."""
    gens = set(gens)
    keep = [i for i, lab in enumerate(h.labels) if lab in gens]
    pos = {old: new for new, old in enumerate(keep)}
    labels = tuple(h.labels[i] for i in keep)
    down = []
    for old in keep:
        mask = 0
        for other in keep:
            if h.down[old] >> other & 1:
                mask |= 1 << pos[other]
        down.append(mask)
    down = tuple(down)
    covers = chain_covers_from_order(h.sys, labels, down)
    return Heap(h.sys, labels, down, frozenset(covers), tuple(h.origin[i] for i in keep))


@dataclass(frozen=True)
class FcWitness:
    kind: str  # "convex_alternating_chain", "same_label_cover" or "none"
    points: tuple = ()
    pair: tuple | None = None

    def __bool__(self):
        return self.kind != "none"

    def to_json(self, sys=None):
        pair = self.pair
        if pair is not None and sys is not None:
            pair = [sys.names[x] for x in pair]
        return {"kind": self.kind, "points": list(self.points), "pair": list(pair) if pair else None}


NO_WITNESS = FcWitness("none")


def alternating_windows(h: Heap, s: int, t: int, m: int):
    """Windows of m consecutive points of H_{s,t} with alternating labels."""
    proj = [i for i, lab in enumerate(h.labels) if lab == s or lab == t]
    for j in range(len(proj) - m + 1):
        window = proj[j:j + m]
        if all(h.labels[window[k]] != h.labels[window[k + 1]] for k in range(m - 1)):
            yield tuple(window)


def is_fc_heap(sys: CoxeterSystem, h: Heap) -> FcWitness:
    """Stembridge's criterion; returns the first violation or NO_WITNESS."""
    for i, j in sorted(h.chain_covers):
        if h.labels[i] == h.labels[j]:
            return FcWitness("same_label_cover", (i, j), (h.labels[i], h.labels[j]))
    for s, t in sys.edges():
        m = sys.matrix[s][t]
        if m == INF:
            continue
        for window in alternating_windows(h, s, t, m):
            if len(h.interval(window[0], window[-1])) == m:
                return FcWitness(
                    "convex_alternating_chain", window, (h.labels[window[0]], h.labels[window[1]])
                )
    return NO_WITNESS


def is_fc_reduced_word(sys: CoxeterSystem, w) -> bool:
    return not is_fc_heap(sys, heap_of(sys, w))


def linear_extensions(h: Heap, cap: int = DEFAULT_CAP) -> set:
    """Words read off all linear extensions of ``h``."""
    k = len(h)
    preds = [h.down[i] & ~(1 << i) for i in range(k)]
    out = set()

    # same-label points are comparable, so distinct extensions give distinct words
    def walk(done, word):
        if done == (1 << k) - 1:
            out.add(word)
            if len(out) > cap:
                raise CapExceededError("linear extensions", cap)
            return
        for i in range(k):
            if not done >> i & 1 and preds[i] & ~done == 0:
                walk(done | 1 << i, word + (h.labels[i],))

    walk(0, ())
    return out


FORK_MERGE = {
    "D": {"t2": "t1"},
    "Btilde": {"t2": "t1"},
    "Dtilde": {"t2": "t1", "u2": "u1"},
}
ALTERNATION_FAMILIES = ("A", "B", "Ctilde", "linear", "Atilde", "D", "Btilde", "Dtilde")


def _interleaves(w, x, y) -> bool:
    prev = None
    for letter in w:
        if letter == x or letter == y:
            if letter == prev:
                return False
            prev = letter
    return True


def is_alternating(sys: CoxeterSystem, w) -> bool:
    """Occurrences of every pair of diagram neighbours strictly interleave.

    For forked diagrams the two fork leaves are merged into one letter for
    the test, and additionally the two leaves must alternate with each other.
    """
    if sys.family not in ALTERNATION_FAMILIES:
        raise PreconditionError(f"alternation is not defined for family {sys.label}")
    merge = {sys.index[a]: sys.index[b] for a, b in FORK_MERGE.get(sys.family, {}).items()}
    merged = tuple(merge.get(x, x) for x in w)
    for s, t in sys.edges():
        s, t = merge.get(s, s), merge.get(t, t)
        if not _interleaves(merged, s, t):
            return False
    return all(_interleaves(w, a, b) for a, b in merge.items())


@dataclass(frozen=True)
class MotzkinPath:
    heights: tuple
    steps: tuple  # "U", "D", "R" or "L"

    def max_height(self) -> int:
        return max(self.heights)


def motzkin_profile(sys: CoxeterSystem, h: Heap) -> MotzkinPath:
    """Lattice path of occurrence counts along the diagram.

    For A_{n-1} the points are P_0..P_n with virtual s_0, s_n of height 0;
    for the affine family the path closes up with s_n = s_0.
    """
    if sys.family not in ("A", "Atilde"):
        raise PreconditionError("Motzkin profiles exist for families A and Atilde only")
    if is_fc_heap(sys, h):
        raise PreconditionError("Motzkin profile needs the heap of an FC element")
    counts = [0] * len(sys)
    first = [None] * len(sys)
    for i, lab in enumerate(h.labels):
        counts[lab] += 1
        if first[lab] is None:
            first[lab] = i
    if sys.family == "A":
        heights = [0] + counts + [0]
        firsts = [None] + first + [None]
    else:
        heights = counts + [counts[0]]
        firsts = first + [first[0]]
    steps = []
    for i in range(len(heights) - 1):
        a, b = heights[i], heights[i + 1]
        if b == a + 1:
            steps.append("U")
        elif b == a - 1:
            steps.append("D")
        elif a == 0:
            steps.append("R")
        else:
            steps.append("R" if firsts[i] < firsts[i + 1] else "L")
    return MotzkinPath(tuple(heights), tuple(steps))
