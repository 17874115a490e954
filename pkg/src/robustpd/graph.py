"""Simple undirected graphs, edge-list I/O and the graph families used throughout.

Vertices are dense ids ``0..n-1``.  Each vertex also carries a neighbor bitmask
(a Python int) so that the propagation engine can do frontier arithmetic with
plain integer operations.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence


class GraphParseError(ValueError):
    """Raised for malformed edge lists or family spec strings."""


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "_adj", "_masks", "_edges", "_memo")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self._adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._masks = tuple(sum(1 << u for u in s) for s in nbrs)
        self._edges = tuple(sorted(seen))
        # per-graph caches (observation closures etc.); not part of identity
        self._memo: dict = {}

    # -- basic queries -------------------------------------------------

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def closed_mask(self, v: int) -> int:
        return self._masks[v] | (1 << v)

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= self._masks[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen == self.full_mask

    def is_tree(self) -> bool:
        return self.n >= 1 and self.num_edges == self.n - 1 and self.is_connected()

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, relabelled densely; also returns the old ids in new order."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self._edges if u in index and v in index]
        return Graph(len(old), edges), old

    def to_edge_list(self) -> str:
        lines = [f"{u} {v}" for u, v in self._edges]
        touched = {u for e in self._edges for u in e}
        # isolated vertices (including a lone top id) would otherwise be lost
        lines += [str(v) for v in range(self.n) if v not in touched]
        return "\n".join(lines) + ("\n" if lines else "")

    # -- dunder --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def parse_edge_list(text: str) -> Graph:
    """Parse a line-oriented edge list.

    Each line is ``u v``; ``#`` starts a comment and blank lines are skipped.  A
    line holding a single id declares a vertex without edges, which is the only
    way to write down ``K_1``.
    """
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            ids = [int(t) for t in tokens]
        except ValueError:
            raise GraphParseError(f"line {lineno}: malformed token in {raw.strip()!r}") from None
        if len(ids) not in (1, 2) or any(i < 0 for i in ids):
            raise GraphParseError(f"line {lineno}: expected 'u v' with non-negative ids, got {raw.strip()!r}")
        top = max(top, *ids)
        if len(ids) == 1:
            continue
        u, v = ids
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge {u} {v} (first on line {seen[key]})")
        seen[key] = lineno
        edges.append(key)
    return Graph(top + 1, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

FAMILY_KINDS = ("path", "star", "complete_bipartite", "spider", "random_tree", "family_T")


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family plus its parameters.

    ``params`` per kind: path ``(n,)``; star ``(n,)``; complete_bipartite
    ``(n, m)``; spider ``(leg lengths...)``; random_tree ``(n, seed)``;
    family_T ``(H, flags)`` with ``flags`` one bool per vertex of ``H``.
    """

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "family_T":
            h, flags = self.params
            if not isinstance(h, Graph) or h.n < 1:
                raise ValueError("family_T needs a non-empty base graph")
            if len(flags) != h.n:
                raise ValueError(f"family_T needs {h.n} flags, got {len(flags)}")
        elif self.kind == "random_tree":
            n, _seed = self.params
            if n < 1:
                raise ValueError("tree size must be >= 1")
        else:
            if not self.params or any(int(p) < 1 for p in self.params):
                raise ValueError(f"{self.kind}: size parameters must be >= 1")
            if self.kind in ("path", "star") and len(self.params) != 1:
                raise ValueError(f"{self.kind} takes one parameter")
            if self.kind == "complete_bipartite" and len(self.params) != 2:
                raise ValueError("complete_bipartite takes two parameters")

    @classmethod
    def path(cls, n: int) -> FamilySpec:
        return cls("path", (n,))

    @classmethod
    def star(cls, n: int) -> FamilySpec:
        return cls("star", (n,))

    @classmethod
    def complete_bipartite(cls, n: int, m: int) -> FamilySpec:
        return cls("complete_bipartite", (n, m))

    @classmethod
    def spider(cls, legs: Sequence[int]) -> FamilySpec:
        return cls("spider", tuple(legs))

    @classmethod
    def random_tree(cls, n: int, seed: int) -> FamilySpec:
        return cls("random_tree", (n, seed))

    @classmethod
    def family_T(cls, h: Graph, flags: Sequence[bool] | None = None) -> FamilySpec:
        if flags is None:
            flags = (False,) * h.n
        return cls("family_T", (h, tuple(bool(f) for f in flags)))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices: center 0, leaves 1..n-1."""
    return Graph(n, [(0, i) for i in range(1, n)])


def complete_bipartite_graph(n: int, m: int) -> Graph:
    """Part X = 0..n-1, part Y = n..n+m-1."""
    return Graph(n + m, [(x, n + y) for x in range(n) for y in range(m)])


def spider_graph(legs: Sequence[int]) -> Graph:
    """Center 0; legs numbered consecutively, each from the center outwards."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def prufer_tree(n: int, seed: int) -> Graph:
    """Uniform random labelled tree from a seeded Prüfer sequence."""
    if n <= 2:
        return path_graph(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return Graph(n, edges)


def family_T_graph(h: Graph, flags: Sequence[bool]) -> Graph:
    """Attach pendant pair (v', v'') = (h+2v, h+2v+1) to every vertex v of H.

    ``flags[v]`` adds the optional edge v'v''.
    """
    base = h.n
    edges = list(h.edges())
    for v in range(base):
        a, b = base + 2 * v, base + 2 * v + 1
        edges += [(v, a), (v, b)]
        if flags[v]:
            edges.append((a, b))
    return Graph(3 * base, edges)


def generate(spec: FamilySpec) -> Graph:
    kind, p = spec.kind, spec.params
    if kind == "path":
        return path_graph(p[0])
    if kind == "star":
        return star_graph(p[0])
    if kind == "complete_bipartite":
        return complete_bipartite_graph(p[0], p[1])
    if kind == "spider":
        return spider_graph(p)
    if kind == "random_tree":
        return prufer_tree(p[0], p[1])
    return family_T_graph(p[0], p[1])


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise GraphParseError(f"bad integer list {text!r} in {what}") from None


def parse_family(text: str) -> FamilySpec:
    """Parse a CLI family string.

    Accepted forms: ``kpq:N,M``, ``star:N``, ``path:N``, ``spider:L1,L2,...``,
    ``tree:N,SEED`` and ``T:EDGELIST_FILE[:FLAGS]`` where FLAGS is a 0/1 string
    with one character per vertex of H.
    """
    head, _, rest = text.partition(":")
    try:
        if head == "kpq":
            vals = _ints(rest, text)
            if len(vals) != 2:
                raise GraphParseError(f"kpq needs two sizes: {text!r}")
            return FamilySpec.complete_bipartite(*vals)
        if head in ("star", "path"):
            vals = _ints(rest, text)
            if len(vals) != 1:
                raise GraphParseError(f"{head} needs one size: {text!r}")
            return FamilySpec(head, tuple(vals))
        if head == "spider":
            return FamilySpec.spider(_ints(rest, text))
        if head == "tree":
            vals = _ints(rest, text)
            if len(vals) != 2:
                raise GraphParseError(f"tree needs N,SEED: {text!r}")
            return FamilySpec.random_tree(*vals)
        if head == "T":
            fname, _, flag_text = rest.partition(":")
            try:
                h = read_edge_list(fname)
            except OSError as exc:
                raise GraphParseError(f"cannot read base graph {fname!r}: {exc}") from None
            if flag_text and set(flag_text) - {"0", "1"}:
                raise GraphParseError(f"flags must be a 0/1 string: {flag_text!r}")
            flags = [c == "1" for c in flag_text] if flag_text else None
            return FamilySpec.family_T(h, flags)
    except GraphParseError:
        raise
    except ValueError as exc:
        raise GraphParseError(f"invalid family {text!r}: {exc}") from None
    raise GraphParseError(f"unknown family {text!r}")


# ---------------------------------------------------------------------------
# Structural helpers
# ---------------------------------------------------------------------------


def terminal_attachments(g: Graph, v: int) -> tuple[int, int]:
    """Count terminal paths and terminal cycles hanging off ``v``."""
    paths = 0
    cycle_walks = 0
    for first in g.neighbors(v):
        prev, cur = v, first
        while True:
            if cur == v:
                cycle_walks += 1
                break
            d = g.degree(cur)
            if d == 1:
                paths += 1
                break
            if d != 2:
                break
            a, b = g.neighbors(cur)
            prev, cur = cur, (b if a == prev else a)
    # each terminal cycle is walked once in each direction
    return paths, cycle_walks // 2


def is_spider(g: Graph) -> bool:
    if not g.is_tree():
        return False
    return sum(1 for v in range(g.n) if g.degree(v) >= 3) <= 1


def complete_bipartite_parts(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Return parts (X, Y), X holding vertex 0, if ``g`` is complete bipartite."""
    if g.n < 2 or not g.is_connected():
        return None
    x = tuple(v for v in range(g.n) if v == 0 or not (g.neighbor_mask(0) >> v) & 1)
    y = g.neighbors(0)
    xm = sum(1 << v for v in x)
    ym = sum(1 << v for v in y)
    if xm | ym != g.full_mask or g.num_edges != len(x) * len(y):
        return None
    if any(g.neighbor_mask(v) != ym for v in x) or any(g.neighbor_mask(v) != xm for v in y):
        return None
    return x, tuple(y)


def twin_classes(g: Graph) -> list[tuple[int, ...]]:
    """Partition V into twin classes (equal open or equal closed neighborhoods).

    Any permutation inside one class is an automorphism of ``g``.  Classes are
    returned sorted, ordered by smallest member.
    """
    by_open: dict[int, list[int]] = {}
    for v in range(g.n):
        by_open.setdefault(g.neighbor_mask(v), []).append(v)
    classes = [tuple(c) for c in by_open.values() if len(c) > 1]
    placed = {v for c in classes for v in c}
    by_closed: dict[int, list[int]] = {}
    for v in range(g.n):
        if v not in placed:
            by_closed.setdefault(g.closed_mask(v), []).append(v)
    classes += [tuple(c) for c in by_closed.values()]
    return sorted(classes)
