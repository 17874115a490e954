"""Named regression suites comparing solver output against formula and figure values."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor

from . import closed_forms as cf
from .bounds import bounds_report
from .engine import Placement, is_krpds
from .graph import (
    FamilySpec,
    Graph,
    complete_bipartite_graph,
    generate,
    path_graph,
    prufer_tree,
    spider_graph,
    star_graph,
)
from .solvers import SearchOptions, ftpd_number, krpds_number, pd_number

SUITES = ("fig-k33", "trees-small", "knn-balanced", "bounds-sanity", "star-contrast")


def random_trees(seed: int, count: int = 50, lo: int = 4, hi: int = 10) -> list[Graph]:
    """Seeded trees with lo <= n <= hi, each from its own Prüfer sequence."""
    rng = random.Random(seed)
    return [prufer_tree(rng.randint(lo, hi), rng.randrange(2**31)) for _ in range(count)]


def sanity_graphs() -> list[tuple[str, Graph]]:
    """Small mixed corpus: paths, stars, spiders, trees, K_{n,m}, family T."""
    out = [(f"path:{n}", path_graph(n)) for n in (2, 3, 5, 8, 11)]
    out += [(f"star:{n}", star_graph(n)) for n in (3, 6, 10)]
    out += [(f"spider:{','.join(map(str, legs))}", spider_graph(legs))
            for legs in ((1, 1, 1), (2, 2, 2), (1, 2, 3, 1), (3, 3, 1))]
    out += [(f"tree:{n},{s}", prufer_tree(n, s))
            for n, s in ((7, 1), (8, 2), (9, 3), (10, 4), (9, 11), (11, 5), (12, 6))]
    out += [(f"kpq:{a},{b}", complete_bipartite_graph(a, b))
            for a, b in ((1, 1), (2, 2), (2, 3), (3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (2, 5))]
    k1 = Graph(1)
    k2 = path_graph(2)
    p3 = path_graph(3)
    for name, h in (("K1", k1), ("K2", k2), ("P3", p3)):
        for flags in ((False,) * h.n, (True,) + (False,) * (h.n - 1)):
            tag = "".join("1" if f else "0" for f in flags)
            out.append((f"T:{name}:{tag}", generate(FamilySpec.family_T(h, flags))))
    out.append(("double-spider", double_spider()))
    return out


def double_spider() -> Graph:
    """Two adjacent degree-3 centers 0 and 1, each with two pendant legs of length 1."""
    return Graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


# A job is (instance label, kind, args); kinds are dispatched in _run_job.


def _jobs(suite: str, seed: int) -> list[tuple[str, str, tuple]]:
    if suite == "fig-k33":
        return [(f"K3,3 k={k}", "krpds", ("kpq", (3, 3), k, cf.k33_value(k))) for k in range(8)]
    if suite == "star-contrast":
        return [("star16 ftpd k=1", "ftpd", (16, 1, 15)), ("star16 krpds k=1", "star_krpds", (16, 1))]
    if suite == "trees-small":
        jobs = []
        for i, t in enumerate(random_trees(seed)):
            for k in (0, 1, 2):
                jobs.append((f"tree#{i} n={t.n} k={k}", "tree", (t.n, t.edges(), k)))
        return jobs
    if suite == "knn-balanced":
        jobs = [(f"K4,4 k={k}", "krpds", ("kpq", (4, 4), k, cf.knn_value(4, k))) for k in range(1, 5)]
        jobs += [(f"knn_witness n={n} k={k}", "knn_witness", (n, k)) for n in (4, 5) for k in range(1, 9)]
        return jobs
    if suite == "bounds-sanity":
        return [(f"{name} k={k}", "bounds", (g.n, g.edges(), k))
                for name, g in sanity_graphs() for k in range(4)]
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def _run_job(job: tuple[str, str, tuple], time_limit: float | None) -> dict:
    label, kind, args = job
    opts = SearchOptions(time_limit=time_limit)
    start = time.perf_counter()
    if kind == "krpds":
        _, (a, b), k, expected = args
        g = complete_bipartite_graph(a, b)
        got = krpds_number(g, k, opts).value
        ok = got == expected
    elif kind == "ftpd":
        n, k, expected = args
        got = ftpd_number(star_graph(n), k, opts).value
        ok = got == expected
    elif kind == "star_krpds":
        n, k = args
        rep = krpds_number(star_graph(n), k, opts)
        expected = f"{k + 1} @ 0:{k + 1}"
        got = f"{rep.value} @ {rep.witness}"
        ok = rep.value == k + 1 and rep.witness == Placement.from_counts({0: k + 1})
    elif kind == "tree":
        n, edges, k = args
        t = Graph(n, edges)
        expected = (k + 1) * pd_number(t).value
        got = krpds_number(t, k, opts).value
        ok = got == expected
    elif kind == "knn_witness":
        n, k = args
        w = cf.knn_witness(n, k)
        expected = f"robust, size {cf.knn_value(n, k)}"
        verdict = is_krpds(complete_bipartite_graph(n, n), w, k)
        got = f"{'robust' if verdict.ok else 'NOT robust'}, size {w.size}"
        ok = got == expected
    elif kind == "bounds":
        n, edges, k = args
        g = Graph(n, edges)
        rep = bounds_report(g, k)
        expected = f"{rep.lower}..{rep.upper}"
        got = krpds_number(g, k, opts).value
        ok = rep.consistent() and got is not None and rep.lower <= got <= rep.upper
    else:
        raise ValueError(f"unknown job kind {kind!r}")
    millis = round((time.perf_counter() - start) * 1000)
    return {"instance": label, "expected": expected, "got": got, "ok": ok, "millis": millis}


def run_suite(suite: str, seed: int = 0, workers: int = 1, time_limit: float | None = 60.0) -> list[dict]:
    """Run a suite; rows come back in job order regardless of worker count."""
    jobs = _jobs(suite, seed)
    if workers <= 1:
        return [_run_job(j, time_limit) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs, [time_limit] * len(jobs)))
