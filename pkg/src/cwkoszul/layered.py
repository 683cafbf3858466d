"""Layered graphs (finite ranked posets with a unique minimum).

Vertices are string ids, totally ordered by the usual string order; every
derived enumeration (spheres, chains, witnesses) follows that order so results
are reproducible.  The minimum carries the reserved id "0bar" and is implicit
in serialized graphs; rank-1 vertices are wired to it automatically.
"""

from __future__ import annotations

from collections import deque


BOTTOM = "0bar"
TOP = "1bar"
RESERVED_IDS = {BOTTOM}


class GraphError(ValueError):
    pass


class LayeredGraph:
    """Immutable ranked poset: ranks, cover relations, cached reachability.

    `covers` are (upper, lower) pairs dropping rank by exactly one; the order
    relation is their transitive closure, materialized at construction.
    """

    def __init__(self, vertices: dict[str, int], covers: set[tuple[str, str]], name: str = ""):
        self.name = name
        verts = dict(vertices)
        if BOTTOM in verts and verts[BOTTOM] != 0:
            raise GraphError(f"reserved vertex {BOTTOM!r} must have rank 0")
        verts[BOTTOM] = 0
        for v, r in verts.items():
            if not isinstance(r, int) or r < 0:
                raise GraphError(f"vertex {v!r} has invalid rank {r!r}")
            if r == 0 and v != BOTTOM:
                raise GraphError(f"vertex {v!r} has rank 0 but only {BOTTOM!r} may")
        cover_set = set(covers)
        for u, l in cover_set:
            if u not in verts or l not in verts:
                raise GraphError(f"cover ({u!r}, {l!r}) references unknown vertex")
            if l == BOTTOM:
                raise GraphError(f"cover ({u!r}, {BOTTOM!r}) must be left implicit")
        for v, r in verts.items():
            if r == 1:
                cover_set.add((v, BOTTOM))
        for u, l in cover_set:
            if verts[u] != verts[l] + 1:
                raise GraphError(
                    f"cover ({u!r}, {l!r}) drops rank from {verts[u]} to {verts[l]}, expected 1"
                )
        self.vertices = verts
        self.covers = frozenset(cover_set)

        lower: dict[str, list[str]] = {v: [] for v in verts}
        upper: dict[str, list[str]] = {v: [] for v in verts}
        for u, l in cover_set:
            lower[u].append(l)
            upper[l].append(u)
        self._lower = {v: tuple(sorted(ws)) for v, ws in lower.items()}
        self._upper = {v: tuple(sorted(ws)) for v, ws in upper.items()}

        for v, r in verts.items():
            if r >= 1 and not self._lower[v]:
                raise GraphError(f"vertex {v!r} of rank {r} has no lower cover")

        by_rank: dict[int, list[str]] = {}
        for v, r in verts.items():
            by_rank.setdefault(r, []).append(v)
        self._by_rank = {r: tuple(sorted(vs)) for r, vs in by_rank.items()}
        self.max_rank = max(verts.values())

        below: dict[str, frozenset[str]] = {}
        for r in range(self.max_rank + 1):
            for v in self._by_rank.get(r, ()):
                acc: set[str] = set()
                for w in self._lower[v]:
                    acc.add(w)
                    acc.update(below[w])
                below[v] = frozenset(acc)
        self._below = below
        self._cache: dict = {}

    # -- basic queries ------------------------------------------------------

    def rank(self, v: str) -> int:
        try:
            return self.vertices[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def __contains__(self, v: str) -> bool:
        return v in self.vertices

    def vertex_ids(self, skip_bottom: bool = False) -> list[str]:
        out = []
        for r in sorted(self._by_rank):
            if skip_bottom and r == 0:
                continue
            out.extend(self._by_rank[r])
        return out

    def at_rank(self, r: int) -> tuple[str, ...]:
        return self._by_rank.get(r, ())

    def lower_covers(self, v: str) -> tuple[str, ...]:
        self.rank(v)
        return self._lower[v]

    def upper_covers(self, v: str) -> tuple[str, ...]:
        self.rank(v)
        return self._upper[v]

    def le(self, a: str, b: str) -> bool:
        self.rank(a), self.rank(b)
        return a == b or a in self._below[b]

    def strictly_below(self, v: str) -> frozenset[str]:
        self.rank(v)
        return self._below[v]

    def maximal_vertices(self) -> list[str]:
        return sorted(v for v in self.vertices if not self._upper[v])

    def sphere(self, x: str, n: int) -> tuple[str, ...]:
        """Vertices strictly below x whose rank is rank(x) - n; sphere(x, 0) = (x,)."""
        r = self.rank(x)
        if n < 0:
            raise GraphError(f"negative sphere radius {n}")
        if n == 0:
            return (x,)
        want = r - n
        if want < 0:
            return ()
        return tuple(v for v in self.at_rank(want) if v in self._below[x])

    def below(self, x: str) -> "LayeredGraph":
        """The induced layered graph on [bottom, x]; ranks unchanged."""
        self.rank(x)
        key = ("below", x)
        if key not in self._cache:
            keep = set(self._below[x]) | {x}
            verts = {v: self.vertices[v] for v in keep}
            covs = {(u, l) for (u, l) in self.covers if u in keep and l in keep and l != BOTTOM}
            name = f"{self.name}[<={x}]" if self.name else f"[<={x}]"
            self._cache[key] = LayeredGraph(verts, covs, name=name)
        return self._cache[key]

    # -- structure predicates ------------------------------------------------

    def _cover_classes(self, a: str) -> list[list[str]]:
        """Partition of the lower covers of `a` under 'shares a lower cover'."""
        items = list(self._lower[a])
        parent = {v: v for v in items}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        owner: dict[str, str] = {}
        for b in items:
            for c in self._lower[b]:
                if c in owner:
                    ra, rb = find(owner[c]), find(b)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
                else:
                    owner[c] = b
        groups: dict[str, list[str]] = {}
        for v in items:
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_uniform(self) -> tuple[bool, tuple[str, list[list[str]]] | None]:
        """True iff every vertex of rank >= 2 has a single cover class.

        On failure the witness is (vertex, partition of its lower covers).
        """
        for v in self.vertex_ids():
            if self.vertices[v] < 2:
                continue
            classes = self._cover_classes(v)
            if len(classes) > 1:
                return False, (v, classes)
        return True, None

    def is_thin(self) -> tuple[bool, tuple[str, str, list[str]] | None]:
        """True iff every rank-2 interval [b, a] has exactly four elements.

        Witness on failure: (a, b, interval elements).
        """
        for a in self.vertex_ids():
            for b in self.sphere(a, 2):
                mids = [z for z in self._lower[a] if b in self._below[z]]
                if len(mids) != 2:
                    return False, (a, b, sorted([a, b] + mids))
        return True, None

    def _linked_sequence(self, a: str, a2: str, shared: str) -> tuple[list[str], list[str]] | None:
        """BFS witness for down-up ('lower') or up-down ('upper') connectivity."""
        if self.rank(a) != self.rank(a2):
            raise GraphError(f"{a!r} and {a2!r} have different ranks")
        if a == a2:
            return [a], []
        nbrs = self._lower if shared == "lower" else self._upper
        side = self._upper if shared == "lower" else self._lower
        prev: dict[str, tuple[str, str]] = {a: ("", "")}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            for m in nbrs[u]:
                for w in side[m]:
                    if w not in prev and self.vertices[w] == self.vertices[a]:
                        prev[w] = (u, m)
                        if w == a2:
                            seq, links = [w], []
                            while prev[w][0]:
                                u0, m0 = prev[w]
                                links.append(m0)
                                seq.append(u0)
                                w = u0
                            seq.reverse()
                            links.reverse()
                            return seq, links
                        queue.append(w)
        return None

    def down_up_sequence(self, a: str, a2: str) -> tuple[list[str], list[str]] | None:
        """Same-rank witness a_0..a_n with common lower covers b_1..b_n, or None."""
        return self._linked_sequence(a, a2, "lower")

    def up_down_sequence(self, a: str, a2: str) -> tuple[list[str], list[str]] | None:
        """Same-rank witness a_0..a_n with common upper covers b_1..b_n, or None."""
        return self._linked_sequence(a, a2, "upper")

    # -- chains ---------------------------------------------------------------

    def maximal_chains(self, b: str, a: str) -> list[tuple[str, ...]]:
        """All maximal chains of [a, b] as descending tuples, lexicographically."""
        if not self.le(a, b):
            raise GraphError(f"{a!r} is not below {b!r}")
        out: list[tuple[str, ...]] = []
        stack = [b]

        def descend():
            cur = stack[-1]
            if cur == a:
                out.append(tuple(stack))
                return
            for w in self._lower[cur]:
                if w == a or a in self._below[w]:
                    stack.append(w)
                    descend()
                    stack.pop()

        descend()
        return out

    def diamond_classes(self, b: str, a: str) -> list[list[tuple[str, ...]]]:
        """Partition of maximal_chains(b, a) under one-position exchanges.

        Two chains are directly related when they differ in at most one
        position; classes are the transitive closure, each sorted, listed by
        smallest member.
        """
        chains = self.maximal_chains(b, a)
        index = {ch: i for i, ch in enumerate(chains)}
        parent = list(range(len(chains)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

        if chains:
            length = len(chains[0])
            for pos in range(1, length - 1):
                buckets: dict[tuple, int] = {}
                for ch, i in index.items():
                    key = ch[:pos] + ch[pos + 1:]
                    if key in buckets:
                        union(buckets[key], i)
                    else:
                        buckets[key] = i
        groups: dict[int, list[tuple[str, ...]]] = {}
        for ch, i in index.items():
            groups.setdefault(find(i), []).append(ch)
        return sorted(sorted(g) for g in groups.values())

    # -- extension -------------------------------------------------------------

    def extend_with_top(self, top_id: str = TOP) -> "LayeredGraph":
        """Add a maximum covering all maximal vertices; they must share a rank."""
        if top_id in self.vertices:
            raise GraphError(f"vertex id {top_id!r} already in use")
        maxima = self.maximal_vertices()
        ranks = {self.vertices[v] for v in maxima}
        if len(ranks) != 1:
            raise GraphError(
                f"maximal vertices sit at mixed ranks {sorted(ranks)}; graph is not pure"
            )
        d = ranks.pop()
        verts = dict(self.vertices)
        verts[top_id] = d + 1
        covs = {(u, l) for (u, l) in self.covers if l != BOTTOM}
        covs |= {(top_id, v) for v in maxima if v != BOTTOM}
        return LayeredGraph(verts, covs, name=f"{self.name}^" if self.name else "^")

    # -- serialization -----------------------------------------------------------

    def to_dict(self) -> dict:
        verts = [
            {"id": v, "rank": r}
            for v, r in sorted(self.vertices.items())
            if v != BOTTOM
        ]
        covs = sorted([u, l] for (u, l) in self.covers if l != BOTTOM)
        return {"name": self.name, "vertices": verts, "covers": covs}

    def __eq__(self, other):
        return (
            isinstance(other, LayeredGraph)
            and self.vertices == other.vertices
            and self.covers == other.covers
        )

    def __repr__(self):
        return f"LayeredGraph({self.name!r}, {len(self.vertices)} vertices, max rank {self.max_rank})"


def graph_from_dict(data: dict) -> LayeredGraph:
    """Build a graph from the JSON schema; the minimum is implicit."""
    if not isinstance(data, dict):
        raise GraphError("graph file must contain a JSON object")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise GraphError("'name' must be a string")
    raw_vertices = data.get("vertices")
    if not isinstance(raw_vertices, list):
        raise GraphError("'vertices' must be a list")
    verts: dict[str, int] = {}
    for i, item in enumerate(raw_vertices):
        if not isinstance(item, dict) or "id" not in item or "rank" not in item:
            raise GraphError(f"vertices[{i}]: expected an object with 'id' and 'rank'")
        vid, r = item["id"], item["rank"]
        if not isinstance(vid, str) or not vid:
            raise GraphError(f"vertices[{i}]: id must be a nonempty string")
        if vid in RESERVED_IDS:
            raise GraphError(f"vertices[{i}]: id {vid!r} is reserved")
        if not isinstance(r, int) or r < 1:
            raise GraphError(f"vertices[{i}] ({vid!r}): rank must be an integer >= 1")
        if vid in verts:
            raise GraphError(f"vertices[{i}]: duplicate id {vid!r}")
        verts[vid] = r
    raw_covers = data.get("covers", [])
    if not isinstance(raw_covers, list):
        raise GraphError("'covers' must be a list")
    covers: set[tuple[str, str]] = set()
    for i, pair in enumerate(raw_covers):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise GraphError(f"covers[{i}]: expected [upperId, lowerId]")
        u, l = pair
        if l == BOTTOM or u == BOTTOM:
            raise GraphError(f"covers[{i}]: covers to the minimum must be omitted")
        for x in (u, l):
            if x not in verts:
                raise GraphError(f"covers[{i}]: unknown vertex {x!r}")
        covers.add((u, l))
    return LayeredGraph(verts, covers, name=name)
