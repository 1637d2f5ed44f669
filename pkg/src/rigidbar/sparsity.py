"""(k, 0)-sparsity of looped graphs: pebble game, tight spanning subgraphs, brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .graph import ElementId, LoopedGraph


class SizeCapError(ValueError):
    """Input too large for an exhaustive routine."""


@dataclass(frozen=True)
class SparsityParams:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")


@dataclass(frozen=True)
class SparsityVerdict:
    is_sparse: bool
    matroid_rank: Optional[int]
    violation: Optional[frozenset] = None
    accepted: tuple = ()


def _k(params) -> int:
    return params.k if isinstance(params, SparsityParams) else SparsityParams(int(params)).k


class PebbleGame:
    """Incremental (k, 0) pebble game on ``n`` vertices.

    Every accepted element is covered by one pebble taken from its tail
    vertex; edges are stored as directed arcs tail -> head so pebbles can be
    pulled back along reversed paths.  Loops cover their own vertex and never
    move.
    """

    def __init__(self, n: int, k: int):
        self.k = k
        self.free = [k] * n
        self.out = [dict() for _ in range(n)]  # tail -> {element: head}
        self.accepted = []

    def _search(self, root: int, blocked: frozenset):
        """DFS from root to a vertex (not in blocked) holding a free pebble.

        Returns (path of (tail, element, head) arcs, visited set).
        """
        parent = {root: None}
        stack = [root]
        while stack:
            x = stack.pop()
            if x != root and x not in blocked and self.free[x] > 0:
                path = []
                while parent[x] is not None:
                    tail, el = parent[x]
                    path.append((tail, el, x))
                    x = tail
                return path[::-1], set(parent)
            for el, y in self.out[x].items():
                if y not in parent:
                    parent[y] = (x, el)
                    stack.append(y)
        return None, set(parent)

    def _pull(self, root: int, blocked: frozenset):
        path, seen = self._search(root, blocked)
        if path is None:
            return False, seen
        for tail, el, head in path:
            del self.out[tail][el]
            self.out[head][el] = tail
        self.free[path[-1][2]] -= 1
        self.free[root] += 1
        return True, seen

    def try_insert(self, el: ElementId, ends: tuple):
        """Accept ``el`` if a free pebble can be brought to one of ``ends``.

        Returns ``(True, None)`` or ``(False, X)`` where X is the closed region
        reached by the failed searches; X holds exactly k|X| accepted elements
        and contains ``ends``, so X + el violates the count.
        """
        ends = tuple(dict.fromkeys(ends))
        region = set()
        for u in ends:
            if self.free[u] > 0:
                self._cover(el, u, ends)
                return True, None
        for u in ends:
            ok, seen = self._pull(u, frozenset(ends))
            region |= seen
            if ok:
                self._cover(el, u, ends)
                return True, None
        return False, frozenset(region)

    def _cover(self, el, tail, ends):
        self.free[tail] -= 1
        head = ends[1] if len(ends) == 2 and ends[0] == tail else ends[0]
        if head != tail:
            self.out[tail][el] = head
        self.accepted.append(el)


def pebble_game(g: LoopedGraph, params) -> SparsityVerdict:
    """Exact verdict for i(X) <= k|X| over all X; inserts loops first, then edges."""
    k = _k(params)
    game = PebbleGame(g.n, k)
    violation = None
    for el in g.elements():
        ok, region = game.try_insert(el, g.endpoints(el))
        if not ok and violation is None:
            violation = region
    return SparsityVerdict(violation is None, len(game.accepted), violation, tuple(game.accepted))


def is_tight(g: LoopedGraph, params) -> bool:
    k = _k(params)
    return g.num_elements == k * g.n and pebble_game(g, k).is_sparse


def has_tight_spanning_subgraph(g: LoopedGraph, params) -> Optional[LoopedGraph]:
    """A spanning k-tight subgraph (greedy pebble-game basis), or None."""
    k = _k(params)
    verdict = pebble_game(g, k)
    if verdict.matroid_rank != k * g.n:
        return None
    return g.spanning_subgraph(verdict.accepted)


BRUTE_MAX_VERTICES = 20
BRUTE_MAX_ELEMENTS = 22


def brute_force_sparse(g: LoopedGraph, params) -> SparsityVerdict:
    """Verdict by enumerating every nonempty X ⊆ V.

    The matroid rank comes from an exhaustive search over element subsets,
    largest first, seeded by the elementary upper bound
    |S| <= |A| - i_A(X) + k|X| (valid for any sparse S ⊆ A and any X).
    Omitted (None) above BRUTE_MAX_ELEMENTS elements.
    """
    k = _k(params)
    if g.n > BRUTE_MAX_VERTICES:
        raise SizeCapError(f"brute force limited to {BRUTE_MAX_VERTICES} vertices")
    elements = g.elements()
    m = len(elements)
    ends = [g.endpoints(el) for el in elements]
    vbits = [sum(1 << v for v in e) for e in ends]
    # induced[X] = bitmask of elements with all endpoints in X
    subsets = range(1, 1 << g.n)
    induced = {}
    for xs in subsets:
        mask = 0
        for i, b in enumerate(vbits):
            if b & xs == b:
                mask |= 1 << i
        induced[xs] = mask
    cap = {xs: k * xs.bit_count() for xs in subsets}

    full = (1 << m) - 1
    violation = None
    for xs in subsets:
        if induced[xs].bit_count() > cap[xs]:
            if violation is None or xs.bit_count() < len(violation):
                violation = frozenset(v for v in range(g.n) if xs >> v & 1)
    if m > BRUTE_MAX_ELEMENTS:
        return SparsityVerdict(violation is None, None, violation)

    def sparse(s):
        return all((s & induced[xs]).bit_count() <= cap[xs] for xs in subsets)

    upper = min([m] + [m - induced[xs].bit_count() + cap[xs] for xs in subsets])
    best = None
    for size in range(upper, -1, -1):
        # choose which elements to drop; fewer drops are tried first
        for drop in combinations(range(m), m - size):
            s = full
            for i in drop:
                s &= ~(1 << i)
            if sparse(s):
                best = s
                break
        if best is not None:
            break
    accepted = tuple(el for i, el in enumerate(elements) if best >> i & 1)
    return SparsityVerdict(violation is None, size, violation, accepted)
