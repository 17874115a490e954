"""Power domination process and the k-robust verification predicate."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import Graph


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Placement:
    """A multiset of PMUs: sorted ``(vertex, multiplicity)`` pairs, multiplicities >= 1."""

    items: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = -1
        for v, c in self.items:
            if v <= prev:
                raise ValueError("placement items must be sorted by vertex without repeats")
            if v < 0 or c < 1:
                raise ValueError(f"bad placement entry {v}:{c}")
            prev = v

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> Placement:
        return cls(tuple(sorted((v, c) for v, c in counts.items() if c)))

    @classmethod
    def from_vertices(cls, vertices: Iterable[int]) -> Placement:
        """Build from a list of PMU locations, repeats allowed."""
        counts: dict[int, int] = {}
        for v in vertices:
            counts[v] = counts.get(v, 0) + 1
        return cls.from_counts(counts)

    @classmethod
    def parse(cls, text: str) -> Placement:
        """Parse ``"0:2,4:1"``.  A bare vertex id means multiplicity 1."""
        counts: dict[int, int] = {}
        for entry in text.split(","):
            entry = entry.strip()
            if not entry:
                continue
            v_text, sep, c_text = entry.partition(":")
            try:
                v = int(v_text)
                c = int(c_text) if sep else 1
            except ValueError:
                raise ValueError(f"malformed placement entry {entry!r}") from None
            if v < 0 or c < 1:
                raise ValueError(f"placement entry {entry!r} must have vertex >= 0 and count >= 1")
            if v in counts:
                raise ValueError(f"vertex {v} listed twice in placement")
            counts[v] = c
        return cls.from_counts(counts)

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.items)

    @property
    def size(self) -> int:
        return sum(c for _, c in self.items)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.items)

    @property
    def support_mask(self) -> int:
        return to_mask(v for v, _ in self.items)

    @property
    def max_multiplicity(self) -> int:
        return max((c for _, c in self.items), default=0)

    def multiplicity(self, v: int) -> int:
        return self.counts.get(v, 0)

    def remove(self, other: Placement) -> Placement:
        counts = self.counts
        for v, c in other.items:
            if counts.get(v, 0) < c:
                raise ValueError(f"cannot remove {c} PMUs from vertex {v}")
            counts[v] -= c
        return Placement.from_counts(counts)

    def to_list(self) -> list[list[int]]:
        return [[v, c] for v, c in self.items]

    def __str__(self) -> str:
        return ",".join(f"{v}:{c}" for v, c in self.items)

    def __len__(self) -> int:
        return self.size


@dataclass
class ObservationResult:
    observed: frozenset[int]
    dominated: frozenset[int]
    force_trace: list[tuple[int, int]] = field(default_factory=list)

    def covers(self, n: int) -> bool:
        return len(self.observed) == n


@dataclass(frozen=True)
class Verdict:
    ok: bool
    counterexample: Placement | None = None

    def to_dict(self) -> dict:
        out: dict = {"ok": self.ok}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_list()
        return out


def _support_mask(g: Graph, support) -> int:
    if isinstance(support, Placement):
        vs = support.support
    else:
        vs = set(support)
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph with n={g.n}")
    return to_mask(vs)


def _force_closure(masks: Sequence[int], observed: int) -> int:
    """Apply zero forcing steps until none fires; returns the fixed point."""
    active = [v for v in iter_bits(observed) if masks[v] & ~observed]
    while active:
        still = []
        fired = False
        for v in active:
            rest = masks[v] & ~observed
            if not rest:
                continue
            if rest & (rest - 1) == 0:
                observed |= rest
                fired = True
                u = rest.bit_length() - 1
                if masks[u] & ~observed:
                    still.append(u)
            else:
                still.append(v)
        if not fired:
            break
        active = still
    return observed


def observed_mask(g: Graph, support_mask: int) -> int:
    """Observed set (as a bitmask) reached from the PMU locations in ``support_mask``."""
    memo = g._memo.setdefault("observed", {})
    hit = memo.get(support_mask)
    if hit is not None:
        return hit
    masks = g.masks
    dom = 0
    for v in iter_bits(support_mask):
        dom |= masks[v] | (1 << v)
    result = _force_closure(masks, dom)
    memo[support_mask] = result
    return result


def is_pds_mask(g: Graph, support_mask: int) -> bool:
    return observed_mask(g, support_mask) == g.full_mask


def power_dominate(g: Graph, support) -> ObservationResult:
    """Run the process with a full force trace.

    At every zero forcing step the lowest-id observed vertex with exactly one
    unobserved neighbor forces; the final observed set does not depend on this.
    """
    smask = _support_mask(g, support)
    masks = g.masks
    dom = 0
    for v in iter_bits(smask):
        dom |= masks[v] | (1 << v)
    observed = dom
    trace: list[tuple[int, int]] = []
    while True:
        for v in iter_bits(observed):
            rest = masks[v] & ~observed
            if rest and rest & (rest - 1) == 0:
                u = rest.bit_length() - 1
                observed |= rest
                trace.append((v, u))
                break
        else:
            break
    return ObservationResult(frozenset(iter_bits(observed)), frozenset(iter_bits(dom)), trace)


def is_pds(g: Graph, support) -> bool:
    return is_pds_mask(g, _support_mask(g, support))


def removal_vectors(counts: Sequence[int], k: int) -> Iterator[tuple[int, ...]]:
    """Distinct ways to remove exactly ``k`` PMUs: vectors r with 0 <= r_i <= counts[i].

    The first coordinate is tried from its largest feasible value downwards.
    """
    suffix = [0] * (len(counts) + 1)
    for i in range(len(counts) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + counts[i]

    def rec(i: int, left: int) -> Iterator[tuple[int, ...]]:
        if i == len(counts):
            if left == 0:
                yield ()
            return
        hi = min(counts[i], left)
        lo = max(0, left - suffix[i + 1])
        for r in range(hi, lo - 1, -1):
            for tail in rec(i + 1, left - r):
                yield (r,) + tail

    if 0 <= k <= suffix[0]:
        yield from rec(0, k)


def _complete_failure(items: list[tuple[int, int]], zeroed: set[int], k: int) -> Placement:
    """Extend 'empty these vertices' to a failure multiset of exactly k PMUs."""
    fail = {v: c for v, c in items if v in zeroed}
    left = k - sum(fail.values())
    for v, c in items:
        if v not in zeroed and left:
            take = min(c - 1, left)
            if take:
                fail[v] = take
                left -= take
    for v, c in items:
        if left == 0:
            break
        extra = min(c - fail.get(v, 0), left)
        if extra:
            fail[v] = fail.get(v, 0) + extra
            left -= extra
    return Placement.from_counts(fail)


def is_krpds(g: Graph, s: Placement, k: int, method: str = "support") -> Verdict:
    """Decide whether every removal of exactly ``k`` PMUs from ``s`` leaves a PDS.

    ``method="support"`` searches the sets of support vertices that a failure
    can empty (total multiplicity <= k); only the surviving support matters to
    the process.  ``method="vectors"`` walks every distinct removal vector.
    Both return the same verdict; the counterexample always has size k.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if s.size < k:
        raise ValueError(f"placement has {s.size} PMUs, fewer than k={k}")
    _support_mask(g, s)
    # highest multiplicity first: emptying heavy vertices is where failures hide
    items = sorted(s.items, key=lambda vc: (-vc[1], vc[0]))
    full = g.full_mask

    if method == "vectors":
        for r in removal_vectors([c for _, c in items], k):
            alive = 0
            for (v, c), rv in zip(items, r):
                if c > rv:
                    alive |= 1 << v
            if observed_mask(g, alive) != full:
                return Verdict(False, Placement.from_counts({v: rv for (v, _), rv in zip(items, r)}))
        return Verdict(True)
    if method != "support":
        raise ValueError(f"unknown method {method!r}")

    verts = [v for v, _ in items]
    cnts = [c for _, c in items]
    support = to_mask(verts)

    def search(i: int, budget: int, alive: int) -> set[int] | None:
        if observed_mask(g, alive) != full:
            return set(iter_bits(support & ~alive))
        for j in range(i, len(verts)):
            if cnts[j] <= budget:
                found = search(j + 1, budget - cnts[j], alive & ~(1 << verts[j]))
                if found is not None:
                    return found
        return None

    zeroed = search(0, k, support)
    if zeroed is None:
        return Verdict(True)
    return Verdict(False, _complete_failure(items, zeroed, k))
