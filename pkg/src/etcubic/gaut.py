"""Graph automorphisms by individualization-refinement.

The search tree refines an equitable coloring, individualizes one vertex
of the first smallest non-singleton cell per level, and prunes siblings
lying in one orbit of the pointwise path stabilizer of the automorphisms
found so far.  Leaves yield a labeling; equal leaf certificates yield
automorphisms and the least certificate is the canonical form."""

from .perms import PermGroup, pid, pinv


def _refine(adj, colors):
    """Equitable refinement: split cells by multisets of neighbor colors
    until stable.  Color ids follow the (old color, neighbor counts)
    signature order, so refinement commutes with graph isomorphisms."""
    n = len(colors)
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v])))
                for v in range(n)]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        if len(rank) == ncolors:
            return colors
        colors = tuple(rank[s] for s in sigs)
        ncolors = len(rank)


def _individualize(colors, v):
    # v moves to a fresh color just before the rest of its cell
    return tuple(c + (1 if c > colors[v] or (c == colors[v] and w != v)
                      else 0)
                 for w, c in enumerate(colors))


def _target_cell(colors):
    """Vertices of the first smallest cell of size > 1, or None."""
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            if best is None or len(cells[c]) < len(cells[best]):
                best = c
    return None if best is None else cells[best]


def _leaf_certificate(adj, colors):
    lam = list(colors)  # discrete: color = position
    n = len(lam)
    pos_nbrs = [None] * n
    for v in range(n):
        pos_nbrs[lam[v]] = sorted(lam[w] for w in adj[v])
    out = bytearray()
    for nbrs in pos_nbrs:
        for p in nbrs:
            out += p.to_bytes(2, "big")
    return bytes(out), lam


class _Search:
    def __init__(self, adj):
        self.adj = adj
        self.n = len(adj)
        self.gens = []
        self.first = None   # (cert, lam, path)
        self.best = None    # (cert, lam, path)
        self.nodes = 0

    def _orbit_find(self, path):
        """Union-find lookup for orbits of the pointwise stabilizer of
        path within the found group, or None while no generators exist."""
        if not self.gens:
            return None
        chain = PermGroup(self.gens, degree=self.n, base_hint=tuple(path))
        stab_gens = [g for g in chain.strong_gens()
                     if all(g[p] == p for p in path)]
        if not stab_gens:
            return None
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in stab_gens:
            for v in range(self.n):
                a, b = find(v), find(g[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return find

    def run(self):
        colors = _refine(self.adj, tuple([0] * self.n))
        self._node(colors, [])
        return self

    def _record_leaf(self, colors, path):
        """Returns the depth to unwind to after a new automorphism, else
        None."""
        cert, lam = _leaf_certificate(self.adj, colors)
        if self.first is None:
            self.first = (cert, lam, list(path))
            self.best = self.first
            return None
        jump = None
        for known_cert, known_lam, known_path in (self.first, self.best):
            if cert == known_cert:
                # send v to the vertex at lam(v)'s position in known_lam
                inv_known = pinv(known_lam)
                auto = [inv_known[lam[v]] for v in range(self.n)]
                if auto != pid(self.n) and auto not in self.gens:
                    self.gens.append(auto)
                    h = 0
                    while (h < len(path) and h < len(known_path)
                           and path[h] == known_path[h]):
                        h += 1
                    jump = h
                break
        if cert < self.best[0]:
            self.best = (cert, lam, list(path))
        return jump

    def _node(self, colors, path):
        self.nodes += 1
        cell = _target_cell(colors)
        if cell is None:
            return self._record_leaf(colors, path)
        explored = []
        find = None
        gens_seen = -1
        for v in cell:
            if len(self.gens) != gens_seen:
                gens_seen = len(self.gens)
                find = self._orbit_find(path)
            if find is not None and any(find(v) == find(u)
                                        for u in explored):
                continue
            explored.append(v)
            child = _refine(self.adj, _individualize(colors, v))
            res = self._node(child, path + [v])
            if res is not None and res < len(path):
                return res
        return None


from functools import lru_cache


@lru_cache(maxsize=64)
def _search(g):
    s = _Search(g.adjacency)
    s.run()
    return s


def automorphism_group(g):
    """The full automorphism group as a PermGroup on the vertices."""
    s = _search(g)
    gens = s.gens or [pid(g.n)]
    return PermGroup(gens, degree=g.n)


def canonical_key(g):
    """Isomorphism-invariant bytes: equal exactly for isomorphic graphs."""
    s = _search(g)
    return g.n.to_bytes(4, "big") + s.best[0]


def _orbit_count(items, gens, act):
    index = {x: i for i, x in enumerate(items)}
    parent = list(range(len(items)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, x in enumerate(items):
            j = index[act(g, x)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return len({find(i) for i in range(len(items))})


def symmetry_kind(g):
    """Classify the graph's symmetry.

    Returns a dict with "kind" one of "arc-transitive", "semisymmetric"
    or "neither", the automorphism group, and vertex/edge/arc orbit
    counts."""
    aut = automorphism_group(g)
    gens = aut.gens if aut.gens else [pid(g.n)]
    vertex_orbits = aut.orbits()
    edges = g.edges()
    edge_orbits = _orbit_count(
        edges, gens, lambda p, e: tuple(sorted((p[e[0]], p[e[1]]))))
    arcs = [(v, w) for v in range(g.n) for w in g.adjacency[v]]
    arc_orbits = _orbit_count(arcs, gens,
                              lambda p, a: (p[a[0]], p[a[1]]))
    if edge_orbits == 1:
        if len(vertex_orbits) == 1:
            kind = "arc-transitive"
        else:
            kind = "semisymmetric"
    else:
        kind = "neither"
    return {
        "kind": kind,
        "aut": aut,
        "vertex_orbits": len(vertex_orbits),
        "edge_orbits": edge_orbits,
        "arc_orbits": arc_orbits,
    }
