"""Exact solvers for power domination, Q(G), fault-tolerant and k-robust numbers.

The k-robust search is iterative deepening on the total PMU count m.  At each m
the candidate multisets are enumerated support-first: for a support set T we
compute once the minimal *cuts* of T (sets D of at most k support vertices whose
loss leaves a non-PDS), and a multiplicity vector c on T is k-robust exactly when
every cut carries at least k+1 PMUs.  Symmetry is broken with twin classes:
inside a class the chosen vertices form a prefix and their multiplicities are
non-increasing.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from . import closed_forms
from .engine import Placement, is_krpds, is_pds_mask, observed_mask, to_mask
from .graph import Graph, complete_bipartite_parts, terminal_attachments, twin_classes

SOFT_MAX_VERTICES = 64
SYMMETRY_MODES = ("none", "bipartite_parts", "auto")


class DisconnectedGraphError(ValueError):
    pass


@dataclass
class SearchOptions:
    use_deg3_restriction: bool = True
    use_forced_multiplicity: bool = True
    symmetry: str = "auto"
    max_size: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.symmetry not in SYMMETRY_MODES:
            raise ValueError(f"symmetry must be one of {SYMMETRY_MODES}")
        if self.max_size is not None and self.max_size < 1:
            raise ValueError("max_size must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class SolveReport:
    parameter: str
    value: int | None
    witness: Placement | tuple[int, ...] | None
    lower: int
    lower_src: str
    upper: int | None
    upper_src: str
    k: int | None = None
    nodes: int = 0
    elapsed: float = 0.0
    status: str = "optimal"

    def to_dict(self, timing: bool = True) -> dict:
        if isinstance(self.witness, Placement):
            witness = self.witness.to_list()
        elif self.witness is None:
            witness = None
        else:
            witness = list(self.witness)
        out = {"parameter": self.parameter}
        if self.k is not None:
            out["k"] = self.k
        out.update(
            {
                "status": self.status,
                "value": self.value,
                "witness": witness,
                "bounds": {
                    "lower": self.lower,
                    "lower_src": self.lower_src,
                    "upper": self.upper,
                    "upper_src": self.upper_src,
                },
                "nodes": self.nodes,
                "millis": round(self.elapsed * 1000) if timing else 0,
            }
        )
        return out


class _Timeout(Exception):
    pass


@dataclass
class _Context:
    g: Graph
    opts: SearchOptions
    start: float = field(default_factory=time.perf_counter)
    nodes: int = 0

    def tick(self) -> None:
        self.nodes += 1
        limit = self.opts.time_limit
        if limit is not None and self.nodes % 64 == 0 and time.perf_counter() - self.start > limit:
            raise _Timeout

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("solvers need a connected graph")
    if g.n > SOFT_MAX_VERTICES:
        warnings.warn(f"{g.n} vertices is past the {SOFT_MAX_VERTICES}-vertex range exact search is tuned for",
                      RuntimeWarning, stacklevel=3)


# ---------------------------------------------------------------------------
# Symmetry and candidate structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Layout:
    """Candidate vertices grouped into interchangeable classes."""

    classes: tuple[tuple[int, ...], ...]
    swap: tuple[tuple[int, ...], tuple[int, ...]] | None


def _layout(g: Graph, symmetry: str, candidates: Sequence[int]) -> _Layout:
    cand = set(candidates)
    swap = None
    if symmetry == "none":
        classes = [(v,) for v in sorted(cand)]
    else:
        parts = complete_bipartite_parts(g)
        if symmetry == "bipartite_parts":
            if parts is None:
                raise ValueError("symmetry=bipartite_parts needs a complete bipartite graph")
            classes = list(parts)
        else:
            classes = twin_classes(g)
        if parts is not None and len(parts[0]) == len(parts[1]) and set(parts) <= set(classes):
            swap = parts
        # twins share their degree and attachments, so a class is all-in or all-out
        classes = [c for c in classes if c[0] in cand]
        if swap is not None and not set(swap) <= set(classes):
            swap = None
    return _Layout(tuple(sorted(classes)), swap)


def _supports(layout: _Layout, size: int) -> Iterator[tuple[int, ...]]:
    """Canonical supports of the given size: a prefix of every class."""
    classes = layout.classes
    room = [0] * (len(classes) + 1)
    for i in range(len(classes) - 1, -1, -1):
        room[i] = room[i + 1] + len(classes[i])
    picks = [0] * len(classes)

    def rec(i: int, left: int) -> Iterator[tuple[int, ...]]:
        if i == len(classes):
            if left == 0:
                yield tuple(v for c, a in zip(classes, picks) for v in c[:a])
            return
        for a in range(min(len(classes[i]), left), max(0, left - room[i + 1]) - 1, -1):
            picks[i] = a
            yield from rec(i + 1, left - a)

    if size <= room[0]:
        yield from rec(0, size)


def _class_index(layout: _Layout) -> dict[int, int]:
    return {v: i for i, c in enumerate(layout.classes) for v in c}


def _swap_ok(layout: _Layout, counts: dict[int, int]) -> bool:
    if layout.swap is None:
        return True
    xs, ys = layout.swap
    return [counts.get(v, 0) for v in xs] >= [counts.get(v, 0) for v in ys]


def _compositions(
    support: Sequence[int],
    cls: dict[int, int],
    total: int,
    bounds: Sequence[tuple[int, int]],
    checks: Sequence[Sequence[Sequence[int]]] = (),
    need: int = 0,
) -> Iterator[list[int]]:
    """Multiplicity vectors on ``support`` summing to ``total``.

    ``bounds[p]`` is the (lo, hi) range at position p; within one class the
    values are non-increasing.  ``checks[p]`` lists position groups, ending at p,
    whose multiplicities must add up to at least ``need``.
    """
    t = len(support)
    smin = [0] * (t + 1)
    smax = [0] * (t + 1)
    for p in range(t - 1, -1, -1):
        smin[p] = smin[p + 1] + bounds[p][0]
        smax[p] = smax[p + 1] + bounds[p][1]
    same = [p > 0 and cls[support[p]] == cls[support[p - 1]] for p in range(t)]
    counts = [0] * t

    def rec(p: int, left: int) -> Iterator[list[int]]:
        if p == t:
            if left == 0:
                yield counts
            return
        lo, hi = bounds[p]
        if same[p]:
            hi = min(hi, counts[p - 1])
        lo = max(lo, left - smax[p + 1])
        hi = min(hi, left - smin[p + 1])
        for c in range(hi, lo - 1, -1):
            counts[p] = c
            if checks and any(sum(counts[q] for q in grp) < need for grp in checks[p]):
                continue
            yield from rec(p + 1, left - c)

    if smin[0] <= total <= smax[0]:
        yield from rec(0, total)


def canonical_multisets(g: Graph, m: int, k: int, opts: SearchOptions | None = None) -> Iterator[Placement]:
    """One placement of size ``m`` per symmetry orbit, multiplicities capped at k+1.

    Only ``opts.symmetry`` is consulted; degree restriction and forced
    multiplicities belong to the solver, not to the orbit enumeration.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    opts = opts or SearchOptions()
    layout = _layout(g, opts.symmetry, range(g.n))
    cls = _class_index(layout)
    cap = k + 1
    for t in range(1, min(m, g.n) + 1):
        for support in _supports(layout, t):
            for counts in _compositions(support, cls, m, [(1, cap)] * t):
                placed = dict(zip(support, counts))
                if _swap_ok(layout, placed):
                    yield Placement.from_counts(placed)


# ---------------------------------------------------------------------------
# gamma_P
# ---------------------------------------------------------------------------


def _deg3_candidates(g: Graph, opts: SearchOptions) -> list[int] | None:
    if opts.use_deg3_restriction and g.max_degree >= 3:
        return [v for v in range(g.n) if g.degree(v) >= 3]
    return None


def _find_pds(ctx: _Context, layout: _Layout, size: int) -> tuple[int, ...] | None:
    full = ctx.g.full_mask
    for support in _supports(layout, size):
        ctx.tick()
        if observed_mask(ctx.g, to_mask(support)) == full:
            return support
    return None


def pd_number(g: Graph, opts: SearchOptions | None = None) -> SolveReport:
    """Power domination number by increasing-size exhaustive search."""
    opts = opts or SearchOptions()
    _require_connected(g)
    ctx = _Context(g, opts)
    upper, upper_src = (g.n // 3, "n_over_3") if g.n >= 3 else (1, "trivial")
    restricted = _deg3_candidates(g, opts)
    plan = []
    if restricted is not None:
        plan.append((_layout(g, opts.symmetry, restricted), len(restricted)))
    # unrestricted pass: the reference path, and a fallback if the restriction came up empty
    plan.append((_layout(g, opts.symmetry, range(g.n)), g.n))
    lower = 1
    try:
        for layout, top in plan:
            for size in range(lower, top + 1):
                if opts.max_size is not None and size > opts.max_size:
                    break
                found = _find_pds(ctx, layout, size)
                if found is not None:
                    return SolveReport("pd", size, found, 1, "trivial", upper, upper_src,
                                       nodes=ctx.nodes, elapsed=ctx.elapsed)
                if layout is plan[-1][0]:
                    lower = size + 1
    except _Timeout:
        pass
    return SolveReport("pd", None, None, lower, "search", upper, upper_src,
                       nodes=ctx.nodes, elapsed=ctx.elapsed, status="bounded")


def _need_pd(g: Graph, opts: SearchOptions) -> SolveReport:
    rep = pd_number(g, SearchOptions(opts.use_deg3_restriction, opts.use_forced_multiplicity, opts.symmetry))
    assert rep.value is not None
    return rep


# ---------------------------------------------------------------------------
# Q(G)
# ---------------------------------------------------------------------------


def _greedy_q(g: Graph, gp: int, good) -> list[int]:
    chosen: list[int] = []
    for v in range(g.n):
        if all(good(combo + (v,)) for combo in combinations(chosen, gp - 1)):
            chosen.append(v)
    return chosen


def q_number(g: Graph, opts: SearchOptions | None = None) -> SolveReport:
    """Largest A such that every gamma_P-subset of A is a PDS.

    Greedy seed, then exhaustive augmentation over vertices in id order; among
    maximum sets the lexicographically first one is returned.
    """
    opts = opts or SearchOptions()
    _require_connected(g)
    gp = _need_pd(g, opts).value
    ctx = _Context(g, opts)
    memo: dict[tuple[int, ...], bool] = {}

    def good(combo: tuple[int, ...]) -> bool:
        key = tuple(sorted(combo))
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = is_pds_mask(g, to_mask(key))
        return hit

    if gp == 1:
        best = [v for v in range(g.n) if good((v,))]
        return SolveReport("q", len(best), tuple(best), gp, "pd", g.n, "trivial",
                           nodes=g.n, elapsed=ctx.elapsed)

    seed = _greedy_q(g, gp, good)
    best = list(seed) if len(seed) >= gp else []
    chosen: list[int] = []

    def grow(start: int) -> None:
        nonlocal best
        ctx.tick()
        if len(chosen) > len(best) or (len(chosen) == len(best) and chosen < best):
            best = list(chosen)
        for v in range(start, g.n):
            if len(chosen) + (g.n - v) < len(best):
                return
            if all(good(combo + (v,)) for combo in combinations(chosen, gp - 1)):
                chosen.append(v)
                grow(v + 1)
                chosen.pop()

    status = "optimal"
    try:
        grow(0)
    except _Timeout:
        status = "bounded"
    value = len(best) if status == "optimal" else None
    return SolveReport("q", value, tuple(best), max(gp, len(best)), "pd", g.n, "trivial",
                       nodes=ctx.nodes, elapsed=ctx.elapsed, status=status)


# ---------------------------------------------------------------------------
# Cuts
# ---------------------------------------------------------------------------


def _cuts(g: Graph, support: tuple[int, ...], k: int) -> list[tuple[int, ...]] | None:
    """Minimal position sets D, |D| <= k, whose removal leaves a non-PDS.

    Returns None when the support itself is not a PDS.
    """
    memo = g._memo.setdefault("cuts", {})
    key = (support, k)
    if key in memo:
        return memo[key]
    full = g.full_mask
    smask = to_mask(support)
    if observed_mask(g, smask) != full:
        memo[key] = None
        return None
    found: list[int] = []
    out: list[tuple[int, ...]] = []
    t = len(support)
    for size in range(1, min(k, t) + 1):
        for pos in combinations(range(t), size):
            pmask = to_mask(pos)
            if any(c & pmask == c for c in found):
                continue
            alive = smask
            for p in pos:
                alive &= ~(1 << support[p])
            if observed_mask(g, alive) != full:
                found.append(pmask)
                out.append(pos)
    memo[key] = out
    return out


# ---------------------------------------------------------------------------
# Fault-tolerant (sets, one PMU per vertex)
# ---------------------------------------------------------------------------


def _is_ft(g: Graph, support: tuple[int, ...], k: int) -> bool:
    if len(support) <= k:
        return False
    full = g.full_mask
    smask = to_mask(support)
    if observed_mask(g, smask) != full:
        return False
    # a larger failure set only shrinks the survivors, so |F| = k suffices
    for dead in combinations(support, k):
        if observed_mask(g, smask & ~to_mask(dead)) != full:
            return False
    return True


def ftpd_number(g: Graph, k: int, opts: SearchOptions | None = None) -> SolveReport:
    """Minimum vertex set S with S minus F a PDS for every F of at most k vertices."""
    opts = opts or SearchOptions()
    if k < 0:
        raise ValueError("k must be non-negative")
    _require_connected(g)
    gp = _need_pd(g, opts).value
    ctx = _Context(g, opts)
    everything = tuple(range(g.n))
    lower = gp + k
    if not _is_ft(g, everything, k):
        return SolveReport("ftpd", None, None, lower, "basic_lower", None, "infeasible", k=k,
                           nodes=1, elapsed=ctx.elapsed, status="infeasible")
    layout = _layout(g, opts.symmetry, everything)
    top = g.n - 1
    if opts.max_size is not None:
        top = min(top, opts.max_size)
    try:
        for size in range(lower, top + 1):
            for support in _supports(layout, size):
                ctx.tick()
                if _is_ft(g, support, k):
                    return SolveReport("ftpd", size, support, gp + k, "basic_lower", g.n, "all_vertices",
                                       k=k, nodes=ctx.nodes, elapsed=ctx.elapsed)
            lower = size + 1
    except _Timeout:
        pass
    if lower >= g.n:
        return SolveReport("ftpd", g.n, everything, gp + k, "basic_lower", g.n, "all_vertices",
                           k=k, nodes=ctx.nodes, elapsed=ctx.elapsed)
    return SolveReport("ftpd", None, None, lower, "search", g.n, "all_vertices", k=k,
                       nodes=ctx.nodes, elapsed=ctx.elapsed, status="bounded")


# ---------------------------------------------------------------------------
# k-robust
# ---------------------------------------------------------------------------


def forced_vertices(g: Graph) -> set[int]:
    """Vertices with two terminal paths or a terminal cycle."""
    out = set()
    for v in range(g.n):
        paths, cycles = terminal_attachments(g, v)
        if paths >= 2 or cycles >= 1:
            out.add(v)
    return out


def _starting_bounds(g: Graph, k: int, opts: SearchOptions):
    """Best proven lower bound and constructive upper bound (with witness)."""
    pd = _need_pd(g, opts)
    gp = pd.value
    lower, lower_src = gp + k, "basic_lower"
    upper, upper_src = (k + 1) * gp, "basic_upper"
    witness = Placement.from_counts({v: k + 1 for v in pd.witness})
    if gp >= 2:
        q = q_number(g, opts)
        a = q.witness
        if q.value is not None and q.value >= k + gp:
            return gp + k, "q_exact", gp + k, "q_exact", Placement.from_vertices(a[: k + gp])
        if q.value is not None and q.value > gp and k >= 1:
            qb = closed_forms.qbound(q.value, gp, k)
            if qb < upper:
                upper, upper_src = qb, "q_upper"
                witness = closed_forms.qbound_placement(a, gp, k)
    return lower, lower_src, upper, upper_src, witness


def _robust_at(ctx: _Context, layout: _Layout, forced: set[int], m: int, k: int) -> Placement | None:
    g = ctx.g
    cls = _class_index(layout)
    cap = k + 1
    n_cand = sum(len(c) for c in layout.classes)
    for t in range(1, min(m, n_cand) + 1):
        for support in _supports(layout, t):
            ctx.tick()
            if layout.swap is not None and not any(v in support for v in layout.swap[0]):
                continue
            n_forced = sum(1 for v in support if v in forced)
            if n_forced * cap + (t - n_forced) > m:
                continue
            cuts = _cuts(g, support, k)
            if cuts is None:
                continue
            checks: list[list[tuple[int, ...]]] = [[] for _ in range(t)]
            for pos in cuts:
                checks[pos[-1]].append(pos)
            bounds = [(cap, cap) if v in forced else (1, cap) for v in support]
            for counts in _compositions(support, cls, m, bounds, checks, cap):
                ctx.tick()
                placed = dict(zip(support, counts))
                if _swap_ok(layout, placed):
                    return Placement.from_counts(placed)
    return None


def krpds_number(g: Graph, k: int, opts: SearchOptions | None = None) -> SolveReport:
    """Minimum size of a k-robust power dominating multiset."""
    opts = opts or SearchOptions()
    if k < 0:
        raise ValueError("k must be non-negative")
    _require_connected(g)
    ctx = _Context(g, opts)
    lower, lower_src, upper, upper_src, witness = _starting_bounds(g, k, opts)
    if not is_krpds(g, witness, k).ok:
        raise RuntimeError(f"bound construction {upper_src} produced a non-robust placement")

    def report(value, wit, lo, lo_src, status="optimal"):
        return SolveReport("krpds", value, wit, lo, lo_src, upper, upper_src, k=k,
                           nodes=ctx.nodes, elapsed=ctx.elapsed, status=status)

    if lower == upper:
        return report(upper, witness, lower, lower_src)

    restricted = _deg3_candidates(g, opts)
    if restricted is not None:
        layout = _layout(g, opts.symmetry, restricted)
        forced = forced_vertices(g) & set(restricted) if opts.use_forced_multiplicity else set()
    else:
        layout = _layout(g, opts.symmetry, range(g.n))
        forced = set()

    top = upper - 1
    if opts.max_size is not None:
        top = min(top, opts.max_size)
    m = lower
    try:
        while m <= top:
            found = _robust_at(ctx, layout, forced, m, k)
            if found is not None:
                return report(m, found, lower, lower_src)
            m += 1
    except _Timeout:
        return report(None, witness, m, "search", status="bounded")
    if m == upper:
        return report(upper, witness, lower, lower_src)
    return report(None, witness, m, "search", status="bounded")
