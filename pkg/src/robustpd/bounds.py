"""Every applicable bound on the k-robust number of a graph, with its source tag."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import closed_forms as cf
from .graph import Graph, complete_bipartite_parts
from .solvers import SearchOptions, _require_connected, pd_number, q_number

TAGS = (
    "basic_lower", "basic_upper", "basic_exact", "q_exact", "q_upper", "n_over_3",
    "bip_lower", "bip_upper", "k33", "k3m", "knn", "tree",
)


@dataclass(frozen=True)
class BoundEntry:
    kind: str  # lower | upper | exact
    value: int | None
    source: str
    applicable: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "source": self.source,
            "applicable": self.applicable,
            "reason": self.reason,
        }


@dataclass
class BoundsReport:
    k: int
    gp: int
    q: int
    entries: list[BoundEntry] = field(default_factory=list)

    def _live(self, *kinds: str) -> list[int]:
        return [e.value for e in self.entries if e.applicable and e.kind in kinds]

    @property
    def lower(self) -> int:
        return max(self._live("lower", "exact"))

    @property
    def upper(self) -> int:
        return min(self._live("upper", "exact"))

    @property
    def exact(self) -> int | None:
        vals = self._live("exact")
        return vals[0] if vals else None

    def consistent(self) -> bool:
        return self.lower <= self.upper and all(v == self.lower == self.upper for v in self._live("exact"))

    def to_list(self) -> list[dict]:
        return [e.to_dict() for e in self.entries]


def bounds_report(g: Graph, k: int, opts: SearchOptions | None = None) -> BoundsReport:
    if k < 0:
        raise ValueError("k must be non-negative")
    _require_connected(g)
    gp = pd_number(g, opts).value
    q = q_number(g, opts).value
    rep = BoundsReport(k, gp, q)
    add = rep.entries.append

    def na(kind: str, source: str, reason: str) -> None:
        add(BoundEntry(kind, None, source, False, reason))

    add(BoundEntry("lower", gp + k, "basic_lower", True))
    add(BoundEntry("upper", (k + 1) * gp, "basic_upper", True))
    if gp + k == (k + 1) * gp:
        add(BoundEntry("exact", gp + k, "basic_exact", True, "k = 0" if k == 0 else "gamma_P = 1"))
    else:
        na("exact", "basic_exact", "needs k = 0 or gamma_P = 1")

    if q >= k + gp:
        add(BoundEntry("exact", k + gp, "q_exact", True, f"Q={q} >= k + gamma_P"))
    else:
        na("exact", "q_exact", f"Q={q} < k + gamma_P = {k + gp}")
    try:
        add(BoundEntry("upper", cf.qbound(q, gp, k), "q_upper", True))
    except cf.NotApplicable as exc:
        na("upper", "q_upper", str(exc))
    try:
        add(BoundEntry("upper", cf.n_over_3_bound(g.n, k), "n_over_3", True))
    except cf.NotApplicable as exc:
        na("upper", "n_over_3", str(exc))

    parts = complete_bipartite_parts(g)
    a, b = sorted((len(parts[0]), len(parts[1]))) if parts else (0, 0)
    if parts is None:
        for kind, tag in (("lower", "bip_lower"), ("upper", "bip_upper"), ("exact", "k33"),
                          ("exact", "k3m"), ("exact", "knn")):
            na(kind, tag, "not complete bipartite")
    else:
        try:
            lo, hi = cf.knm_bounds(a, b, k)
            add(BoundEntry("lower", lo, "bip_lower", True))
            add(BoundEntry("upper", hi, "bip_upper", True))
        except cf.NotApplicable as exc:
            na("lower", "bip_lower", str(exc))
            na("upper", "bip_upper", str(exc))
        if (a, b) == (3, 3):
            add(BoundEntry("exact", cf.k33_value(k), "k33", True))
        else:
            na("exact", "k33", f"graph is K_{a},{b}")
        if a == 3:
            try:
                add(BoundEntry("exact", cf.k3m_value(k, b), "k3m", True))
            except cf.NotApplicable as exc:
                na("exact", "k3m", str(exc))
        else:
            na("exact", "k3m", f"graph is K_{a},{b}")
        try:
            if a != b:
                raise cf.NotApplicable(f"graph is K_{a},{b}, not balanced")
            add(BoundEntry("exact", cf.knn_value(a, k), "knn", True))
        except cf.NotApplicable as exc:
            na("exact", "knn", str(exc))

    if g.is_tree():
        add(BoundEntry("exact", (k + 1) * gp, "tree", True, "spider number equals gamma_P"))
    else:
        na("exact", "tree", "not a tree")
    return rep
