"""Bounds on the minimal faithful dimension of a right-angled Artin group."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations


class GraphError(ValueError):
    pass


class Graph:
    def __init__(self, n, edges=()):
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        es = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise GraphError(f"loop at {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge {i}-{j} out of range")
            es.add((min(i, j), max(i, j)))
        self.n = n
        self.edges = tuple(sorted(es))
        self.adj = [set() for _ in range(n)]
        for i, j in self.edges:
            self.adj[i].add(j)
            self.adj[j].add(i)

    @classmethod
    def parse(cls, text):
        """Edge-list text ("0-1\\n1-2") or JSON {"n": k, "edges": [[i, j], ...]}."""
        text = text.strip()
        if text.startswith("{"):
            d = json.loads(text)
            return cls(d["n"], [tuple(e) for e in d.get("edges", [])])
        edges, verts = [], set()
        n = None
        for line in text.replace(",", "\n").splitlines():
            line = line.split("#")[0].strip()
            if not line:
                continue
            if line.startswith("n="):
                n = int(line[2:])
                continue
            if "-" in line:
                a, b = line.split("-")
                edges.append((int(a), int(b)))
                verts.update(edges[-1])
            else:
                verts.add(int(line))
        if n is None:
            n = max(verts) + 1 if verts else 1
        return cls(n, edges)

    def to_json(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def induced(self, verts):
        verts = list(verts)
        pos = {v: k for k, v in enumerate(verts)}
        return Graph(len(verts), [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos])

    def is_complete(self):
        return len(self.edges) == self.n * (self.n - 1) // 2

    def components(self):
        seen, comps = set(), []
        for s in range(self.n):
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(sorted(comp))
        return comps


@dataclass
class Interval:
    lo: int
    hi: int | None = None  # None: unknown

    @property
    def exact(self):
        return self.hi is not None and self.lo == self.hi

    def contains(self, v):
        return self.lo <= v and (self.hi is None or v <= self.hi)

    def to_json(self):
        return {"lo": self.lo, "hi": "unknown" if self.hi is None else self.hi}


@dataclass
class BoundReport:
    char0: Interval
    positive_char: Interval
    justifications: list = field(default_factory=list)

    def to_json(self):
        return {"char0": self.char0.to_json(), "positive_char": self.positive_char.to_json(),
                "justifications": [{"rule": r, "reason": s} for r, s in self.justifications]}


def induced_c4(g: Graph):
    for quad in combinations(range(g.n), 4):
        sub = [(i, j) for i, j in g.edges if i in quad and j in quad]
        if len(sub) != 4:
            continue
        deg = {v: 0 for v in quad}
        for i, j in sub:
            deg[i] += 1
            deg[j] += 1
        if all(v == 2 for v in deg.values()):
            # four edges, all degrees 2: a 4-cycle; order it around the cycle
            a = quad[0]
            b, d = sorted(v for v in quad if v in g.adj[a])
            c = next(v for v in quad if v not in (a, b, d))
            return (a, b, c, d)
    return None


def _is_forest_of_trees_and_triangles(g: Graph):
    for comp in g.components():
        sub = g.induced(comp)
        m = len(sub.edges)
        if m == len(comp) - 1:
            continue
        if len(comp) == 3 and m == 3:
            continue
        return False
    return True


def _single_cycle(g: Graph):
    """Length m if g is one cycle C_m (m >= 3), else None."""
    if g.n < 3 or len(g.components()) != 1:
        return None
    if all(len(a) == 2 for a in g.adj):
        return g.n
    return None


def bounds(g: Graph) -> BoundReport:
    just = []
    lo0 = lop = 1
    hi0 = hip = None

    def upper(h0, hp):
        nonlocal hi0, hip
        if h0 is not None:
            hi0 = h0 if hi0 is None else min(hi0, h0)
        if hp is not None:
            hip = hp if hip is None else min(hip, hp)

    if g.is_complete():
        just.append(("COMPLETE", "free abelian group: independent transcendentals in dimension 1"))
        return BoundReport(Interval(1, 1), Interval(1, 1), just)
    lo0 = lop = 2
    just.append(("NONABELIAN", "non-complete graph gives a non-abelian group, so dimension 1 fails"))

    universal = [v for v in range(g.n) if len(g.adj[v]) == g.n - 1]
    rest = [v for v in range(g.n) if v not in universal]
    r = g.induced(rest)
    if universal:
        just.append(("CENTER_DP", f"{len(universal)} universal vertices generate a central Z^k; "
                                  "adding scalar matrices keeps the dimension"))
    comps = r.components()
    if len(comps) >= 2 and all(r.induced(c).is_complete() for c in comps):
        just.append(("PROP_2D", "free product of free abelian groups (times a center): "
                                "dimension 2 in every characteristic"))
        return BoundReport(Interval(2, 2), Interval(2, 2), just)

    lo0 = lop = 3
    just.append(("NOT_2D", "not a direct product of a free abelian group with a free product of "
                           "free abelian groups, so no faithful 2-dim representation"))
    if induced_c4(g) is not None:
        lo0 = lop = 4
        just.append(("INDUCED_C4", "induced square gives F2 x F2, which is not linear in dimension 3"))

    if _is_forest_of_trees_and_triangles(r):
        upper(3, 3)
        just.append(("FOREST_LE3", "trees and triangles: dimension 3 in every characteristic"))
    m = _single_cycle(r)
    if m is not None and m >= 5:
        upper(3, None)
        just.append(("CYCLE_C5PLUS", f"C_{m}: dimension 3 in characteristic 0; "
                                     "positive characteristic upper bound unknown"))
    if m == 4:
        upper(4, 4)
        just.append(("C4_EXACT", "C_4 = F2 x F2: two 2-dim blocks in every characteristic"))
    if hi0 is None or hi0 > 2 * r.n:
        upper(2 * r.n, None)
        just.append(("COXETER_2N", f"embedding in a right-angled Coxeter group acting in "
                                   f"dimension 2n = {2 * r.n} (characteristic 0)"))
    return BoundReport(Interval(lo0, hi0), Interval(lop, hip), just)
