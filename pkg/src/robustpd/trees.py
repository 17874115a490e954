"""Spider covers and the k-robust number of trees.

The spider number is taken from the power domination number (the two agree on
trees).  A minimum spider cover certificate is searched for separately on small
trees: parts of a cover are subtrees, so a cover with p parts is the set of
components left after deleting p-1 edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .engine import Placement, is_pds
from .graph import Graph, is_spider
from .solvers import SearchOptions, pd_number

CERTIFICATE_MAX_VERTICES = 16


class NotATreeError(ValueError):
    pass


@dataclass(frozen=True)
class SpiderCover:
    parts: tuple[tuple[int, ...], ...]

    @classmethod
    def from_lists(cls, parts) -> SpiderCover:
        return cls(tuple(sorted(tuple(sorted(p)) for p in parts)))

    def to_list(self) -> list[list[int]]:
        return [list(p) for p in self.parts]

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class RootedTree:
    root: int
    parent: tuple[int, ...]  # -1 at the root
    depth: tuple[int, ...]
    order: tuple[int, ...]  # BFS order from the root

    def children(self, v: int) -> list[int]:
        return [u for u in self.order if self.parent[u] == v]

    def is_ancestor(self, u: int, v: int) -> bool:
        """True when u lies on the root-to-v path (u == v included)."""
        while v != -1:
            if v == u:
                return True
            v = self.parent[v]
        return False


def root_tree(t: Graph, root: int = 0) -> RootedTree:
    parent = [-1] * t.n
    depth = [0] * t.n
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in t.neighbors(v):
            if u not in seen:
                seen.add(u)
                parent[u] = v
                depth[u] = depth[v] + 1
                order.append(u)
                queue.append(u)
    return RootedTree(root, tuple(parent), tuple(depth), tuple(order))


def _require_tree(t: Graph) -> None:
    if not t.is_tree():
        raise NotATreeError("expected a tree (connected and acyclic)")


def verify_spider_cover(t: Graph, cover: SpiderCover) -> bool:
    seen: set[int] = set()
    for part in cover.parts:
        if not part or seen.intersection(part):
            return False
        seen.update(part)
        sub, _ = t.induced(part)
        if not is_spider(sub):
            return False
    return seen == set(range(t.n))


def cover_anchors(t: Graph, cover: SpiderCover) -> list[int]:
    """Per part: its vertex of induced degree >= 3 if there is one, else its lowest id."""
    anchors = []
    for part in cover.parts:
        sub, old = t.induced(part)
        hubs = [old[i] for i in range(sub.n) if sub.degree(i) >= 3]
        anchors.append(hubs[0] if hubs else part[0])
    return anchors


def _components(t: Graph, removed: set[tuple[int, int]]) -> list[list[int]]:
    seen = [False] * t.n
    comps = []
    for s in range(t.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for u in t.neighbors(v):
                if not seen[u] and (min(u, v), max(u, v)) not in removed:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def find_spider_cover(t: Graph, parts: int) -> SpiderCover | None:
    """Search covers with exactly ``parts`` parts; prefer one whose anchors form a PDS."""
    rooted = root_tree(t)
    # deepest edges first, so cuts are tried near the leaves before the root
    edges = sorted(t.edges(), key=lambda e: -max(rooted.depth[e[0]], rooted.depth[e[1]]))
    fallback = None
    for cut in combinations(edges, parts - 1):
        comps = _components(t, set(cut))
        cover = SpiderCover.from_lists(comps)
        if not verify_spider_cover(t, cover):
            continue
        if is_pds(t, cover_anchors(t, cover)):
            return cover
        if fallback is None:
            fallback = cover
    return fallback


def spider_number(t: Graph, opts: SearchOptions | None = None) -> tuple[int, SpiderCover | None]:
    _require_tree(t)
    value = pd_number(t, opts).value
    cover = None
    if t.n <= CERTIFICATE_MAX_VERTICES:
        cover = find_spider_cover(t, value)
    return value, cover


def tree_krpds(t: Graph, k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    _require_tree(t)
    return (k + 1) * pd_number(t).value


def tree_witness(t: Graph, k: int, cover: SpiderCover) -> Placement:
    """k+1 PMUs on the anchor of every cover part."""
    return Placement.from_counts({v: k + 1 for v in cover_anchors(t, cover)})
