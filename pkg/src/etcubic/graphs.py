"""Cubic graphs: coset-graph constructions from normal subgroup records,
invariants, hamilton cycles, and the sparse6 codec."""


class CubicGraph:
    """A connected simple 3-regular graph on vertices 0..n-1.

    adjacency[v] is a sorted triple of distinct neighbors; bipartition,
    when given, is a pair of vertex tuples covering every vertex with all
    edges crossing."""

    def __init__(self, adjacency, bipartition=None):
        adj = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        for v, nbrs in enumerate(adj):
            if len(nbrs) != 3 or len(set(nbrs)) != 3:
                raise ValueError(f"vertex {v} does not have 3 distinct "
                                 f"neighbors: {nbrs}")
            if v in nbrs:
                raise ValueError(f"loop at vertex {v}")
            for w in nbrs:
                if not 0 <= w < len(adj):
                    raise ValueError(f"neighbor {w} out of range")
                if v not in adj[w]:
                    raise ValueError(f"adjacency not symmetric at "
                                     f"({v}, {w})")
        self.adjacency = adj
        if bipartition is not None:
            left, right = (frozenset(bipartition[0]),
                           frozenset(bipartition[1]))
            if left | right != set(range(len(adj))) or left & right:
                raise ValueError("bipartition does not split the vertices")
            for v in left:
                if any(w in left for w in adj[v]):
                    raise ValueError("edge inside a bipartition part")
            bipartition = (tuple(sorted(left)), tuple(sorted(right)))
        self.bipartition = bipartition

    @property
    def n(self):
        return len(self.adjacency)

    def edges(self):
        return [(v, w) for v in range(self.n) for w in self.adjacency[v]
                if v < w]

    def __eq__(self, other):
        return (isinstance(other, CubicGraph)
                and self.adjacency == other.adjacency)

    def __hash__(self):
        return hash(self.adjacency)

    def __repr__(self):
        return f"CubicGraph(n={self.n})"


def _union(parent, a, b):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    while parent[b] != b:
        parent[b] = parent[parent[b]]
        b = parent[b]
    if a != b:
        parent[max(a, b)] = min(a, b)


def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _coset_orbits(table, gen_columns):
    """Partition of the table's points into orbits under right
    multiplication by the given generator columns.  Returns (labels,
    roots): labels[p] = orbit id, roots[i] = least point of orbit i,
    with orbits numbered by least point."""
    parent = list(range(table.n))
    for p in range(table.n):
        for c in gen_columns:
            _union(parent, p, table.rows[p][c])
    roots = sorted({_find(parent, p) for p in range(table.n)})
    index = {r: i for i, r in enumerate(roots)}
    labels = [index[_find(parent, p)] for p in range(table.n)]
    return labels, roots


def _gen_columns(pres, names):
    return [2 * pres.gen_index(nm) for nm in names]


def _subgroup_point_count(table, cols):
    # orbit of the identity point under the subgroup's generators has
    # exactly the image subgroup's order, the action being regular
    seen = {0}
    queue = [0]
    while queue:
        p = queue.pop()
        for c in cols:
            q = table.rows[p][c]
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen)


def _check_stabilizer_orders(table, spec):
    for which, expected in (("A", spec.order_a), ("B", spec.order_b),
                            ("C", spec.order_c)):
        cols = _gen_columns(spec.pres, spec.pres.subgroups[which])
        got = _subgroup_point_count(table, cols)
        if got != expected:
            raise ValueError(
                f"stabiliser order collapse: image of {which} has order "
                f"{got}, expected {expected}")


def _bfs_renumber(neighbors, root, order_key):
    """BFS vertex numbering from root, neighbors visited in order_key
    order.  Returns old-id -> new-id map."""
    new_id = {root: 0}
    queue = [root]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for w in sorted(neighbors[v], key=order_key):
            if w not in new_id:
                new_id[w] = len(new_id)
                queue.append(w)
    if len(new_id) != len(neighbors):
        raise ValueError("coset graph is disconnected")
    return new_id


def coset_graph_at(rec, spec):
    """The cubic graph on which the record's quotient acts
    arc-transitively: vertices are cosets of the image of A, edges cosets
    of the image of B, incidence by intersection.  Degenerate quotients
    (collapsed stabilisers, loops, multi-edges) are rejected."""
    if spec.kind != "arc-transitive":
        raise ValueError("spec is not arc-transitive")
    table = rec.table
    _check_stabilizer_orders(table, spec)
    va, va_roots = _coset_orbits(
        table, _gen_columns(spec.pres, spec.pres.subgroups["A"]))
    vb, _ = _coset_orbits(
        table, _gen_columns(spec.pres, spec.pres.subgroups["B"]))
    n_vertices = len(va_roots)
    if table.n != spec.order_a * n_vertices:
        raise ValueError("vertex count does not match the order law")

    incident = {}
    for p in range(table.n):
        incident.setdefault(vb[p], set()).add(va[p])
    neighbors = {v: set() for v in range(n_vertices)}
    seen_pairs = set()
    for ends in incident.values():
        if len(ends) != 2:
            raise ValueError("degenerate quotient: edge coset with "
                             f"{len(ends)} endpoints")
        u, w = sorted(ends)
        if (u, w) in seen_pairs:
            raise ValueError("degenerate quotient: multi-edge")
        seen_pairs.add((u, w))
        neighbors[u].add(w)
        neighbors[w].add(u)

    renum = _bfs_renumber(neighbors, va[0], lambda v: va_roots[v])
    adj = [None] * n_vertices
    for v, nbrs in neighbors.items():
        adj[renum[v]] = tuple(sorted(renum[w] for w in nbrs))
    return CubicGraph(adj)


def coset_graph_ss(rec, spec):
    """The bipartite cubic graph on which the record's quotient acts
    edge- but not vertex-transitively: one part is the coset space of the
    image of A, the other of B, with edges the cosets of the image of C."""
    if spec.kind != "semisymmetric":
        raise ValueError("spec is not semisymmetric")
    table = rec.table
    _check_stabilizer_orders(table, spec)
    va, va_roots = _coset_orbits(
        table, _gen_columns(spec.pres, spec.pres.subgroups["A"]))
    vb, vb_roots = _coset_orbits(
        table, _gen_columns(spec.pres, spec.pres.subgroups["B"]))
    vc, _ = _coset_orbits(
        table, _gen_columns(spec.pres, spec.pres.subgroups["C"]))
    half = len(va_roots)
    if len(vb_roots) != half or table.n != spec.order_a * half:
        raise ValueError("part sizes do not match the order law")

    # vertex ids: A-side 0..half-1, B-side half..2*half-1
    neighbors = {v: set() for v in range(2 * half)}
    seen_pairs = set()
    edge_ends = {}
    for p in range(table.n):
        edge_ends.setdefault(vc[p], set()).add((0, va[p]))
        edge_ends[vc[p]].add((1, vb[p]))
    for ends in edge_ends.values():
        if len(ends) != 2:
            raise ValueError("degenerate quotient: edge coset with "
                             f"{len(ends)} endpoints")
        (_, u), (_, w) = sorted(ends)
        u_id, w_id = u, half + w
        if (u_id, w_id) in seen_pairs:
            raise ValueError("degenerate quotient: multi-edge")
        seen_pairs.add((u_id, w_id))
        neighbors[u_id].add(w_id)
        neighbors[w_id].add(u_id)

    def order_key(v):
        return (0, va_roots[v]) if v < half else (1, vb_roots[v - half])

    renum = _bfs_renumber(neighbors, va[0], order_key)
    adj = [None] * (2 * half)
    for v, nbrs in neighbors.items():
        adj[renum[v]] = tuple(sorted(renum[w] for w in nbrs))
    left = tuple(sorted(renum[v] for v in range(half)))
    right = tuple(sorted(renum[v] for v in range(half, 2 * half)))
    return CubicGraph(adj, bipartition=(left, right))


def _bfs_distances(g, root):
    dist = [-1] * g.n
    dist[root] = 0
    queue = [root]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for w in g.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def is_connected(g):
    return all(d >= 0 for d in _bfs_distances(g, 0))


def girth(g):
    """Length of a shortest cycle, by truncated BFS from every vertex."""
    best = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent_edge = [-1] * g.n
        dist[root] = 0
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            if best is not None and 2 * dist[v] + 1 >= best:
                break
            for w in g.adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent_edge[w] = v
                    queue.append(w)
                elif parent_edge[v] != w:
                    cycle = dist[v] + dist[w] + 1
                    if best is None or cycle < best:
                        best = cycle
    return best


def diameter(g):
    best = 0
    for root in range(g.n):
        dist = _bfs_distances(g, root)
        m = max(dist)
        if m < 0 or min(dist) < 0:
            raise ValueError("graph is disconnected")
        best = max(best, m)
    return best


def bipartition_of(g):
    """The 2-coloring of a bipartite graph as (part0, part1) with vertex 0
    in part0, or None if an odd cycle exists."""
    color = [-1] * g.n
    color[0] = 0
    queue = [0]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for w in g.adjacency[v]:
            if color[w] < 0:
                color[w] = 1 - color[v]
                queue.append(w)
            elif color[w] == color[v]:
                return None
    part0 = tuple(v for v in range(g.n) if color[v] == 0)
    part1 = tuple(v for v in range(g.n) if color[v] == 1)
    return part0, part1


def invariants(g):
    """Exact girth, diameter, bipartiteness and connectivity by BFS."""
    return {
        "girth": girth(g),
        "diameter": diameter(g),
        "bipartite": bipartition_of(g) is not None,
        "connected": is_connected(g),
    }


def hamilton_cycle(g, budget=None):
    """Search for a hamilton cycle by backtracking.

    Returns ("cycle", [v0..v_{n-1}]) with v0 = 0, ("proven-none", None)
    when the whole search space was exhausted, or ("none-found", None)
    when the node budget ran out first."""
    import sys
    if budget is None:
        budget = 20_000_000
    n = g.n
    adj = g.adjacency
    adjset = [frozenset(nbrs) for nbrs in adj]
    on_path = [False] * n
    on_path[0] = True
    path = [0]
    nodes = 0
    exhausted = True

    # free_deg[u] = unvisited neighbors of u.  An unvisited vertex must
    # keep at least 2 connections into unvisited + {endpoint, start}: a
    # completed cycle passes through it on two such edges.
    free_deg = [3] * n

    def usable(u, endpoint):
        c = free_deg[u]
        if endpoint in adjset[u]:
            c += 1
        if 0 in adjset[u]:
            c += 1
        return c

    def dfs():
        nonlocal nodes, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = False
            return None
        v = path[-1]
        if len(path) == n:
            return path[:] if 0 in adjset[v] else None
        for w in adj[v]:
            if on_path[w]:
                continue
            on_path[w] = True
            path.append(w)
            for u in adj[w]:
                free_deg[u] -= 1
            # v became interior and w's edges got consumed: only their
            # unvisited neighbors can have lost usable connections
            ok = all(on_path[u] or usable(u, w) >= 2
                     for u in adjset[v] | adjset[w])
            result = dfs() if ok else None
            for u in adj[w]:
                free_deg[u] += 1
            path.pop()
            on_path[w] = False
            if result is not None:
                return result
        return None

    for u in adj[0]:
        free_deg[u] -= 1
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 2 * n + 100))
    try:
        cycle = dfs()
    finally:
        sys.setrecursionlimit(old_limit)
    if cycle is not None:
        return ("cycle", cycle)
    return ("proven-none", None) if exhausted else ("none-found", None)


def check_hamilton_cycle(g, cycle):
    """True when the vertex list is a hamilton cycle of g."""
    if sorted(cycle) != list(range(g.n)):
        return False
    return all(cycle[(i + 1) % g.n] in g.adjacency[cycle[i]]
               for i in range(g.n))


# --- sparse6 ---------------------------------------------------------------
#
# The code for a graph on n vertices is ':', the encoding of n, then a
# bit stream of (1+k)-bit items (b, x) with k the number of bits needed
# to write n-1.  Decoding keeps a current vertex v: b=1 increments v;
# then x > v replaces v by x, otherwise {x, v} is an edge.


def _s6_number_bits(n):
    if n < 0 or n > 68_719_476_735:
        raise ValueError(f"vertex count out of range: {n}")
    if n <= 62:
        return [(n, 6)]
    if n <= 258_047:
        return [(63, 6), (n, 18)]
    return [(63, 6), (63, 6), (n, 36)]


class _BitWriter:
    def __init__(self):
        self.bits = []

    def write(self, value, width):
        for i in range(width - 1, -1, -1):
            self.bits.append((value >> i) & 1)

    def to_bytes(self, pad_bit=1):
        out = bytearray()
        bits = self.bits[:]
        first_pad = len(bits)
        while len(bits) % 6:
            bits.append(pad_bit if len(bits) == first_pad else 1)
        for i in range(0, len(bits), 6):
            value = 0
            for b in bits[i:i + 6]:
                value = value * 2 + b
            out.append(value + 63)
        return bytes(out)


def _s6_k(n):
    return max(1, (n - 1).bit_length())


def sparse6_encode(g):
    """The sparse6 byte string of the graph (without trailing newline)."""
    return encode_sparse6(g.n, g.edges())


def encode_sparse6(n, edges):
    """sparse6 for an arbitrary simple graph given as an edge list."""
    k = _s6_k(n)
    writer = _BitWriter()
    for value, width in _s6_number_bits(n):
        writer.write(value, width)
    v = 0
    degree = [0] * n
    for a, b in sorted(edges, key=lambda e: (max(e), min(e))):
        a, b = min(a, b), max(a, b)
        degree[a] += 1
        degree[b] += 1
        if b == v:
            writer.write(0, 1)
        elif b == v + 1:
            v += 1
            writer.write(1, 1)
        else:
            v = b
            writer.write(1, 1)
            writer.write(b, k)
            writer.write(0, 1)
        writer.write(a, k)
    # pad with 1s; but when the pad could decode as one more item that
    # names vertex n-1 (n a power of 2, n-2 used, n-1 isolated), lead
    # with a single 0 bit
    pad = (-len(writer.bits)) % 6
    pad_bit = 1
    if (k < 6 and n == (1 << k) and pad >= k + 1
            and n >= 2 and degree[n - 2] > 0 and degree[n - 1] == 0):
        pad_bit = 0
    return b":" + writer.to_bytes(pad_bit=pad_bit)


class _BitReader:
    def __init__(self, data):
        self.bits = []
        for byte in data:
            value = byte - 63
            if not 0 <= value <= 63:
                raise ValueError(f"out-of-range sparse6 byte: {byte}")
            for i in range(5, -1, -1):
                self.bits.append((value >> i) & 1)
        self.pos = 0

    @property
    def remaining(self):
        return len(self.bits) - self.pos

    def read(self, width):
        if self.remaining < width:
            raise ValueError("truncated sparse6 stream")
        value = 0
        for _ in range(width):
            value = value * 2 + self.bits[self.pos]
            self.pos += 1
        return value


def decode_sparse6(data):
    """(n, edge list) from a sparse6 byte string."""
    data = bytes(data).rstrip(b"\n")
    if not data.startswith(b":"):
        raise ValueError("sparse6 must start with ':'")
    reader = _BitReader(data[1:])
    head = reader.read(6)
    if head != 63:
        n = head
    else:
        mid = reader.read(6)
        if mid != 63:
            n = (mid << 12) | reader.read(12)
        else:
            n = reader.read(36)
    k = _s6_k(n) if n > 1 else 1
    edges = []
    v = 0
    while reader.remaining >= 1 + k:
        b = reader.read(1)
        x = reader.read(k)
        if b:
            v += 1
        if v >= n:
            break
        if x > v:
            v = x
            if v >= n:
                break
        else:
            edges.append((x, v))
    if any(bit == 0 for bit in reader.bits[reader.pos:]):
        raise ValueError("trailing garbage after sparse6 stream")
    return n, edges


def sparse6_decode(data):
    """A CubicGraph from its sparse6 byte string."""
    n, edges = decode_sparse6(data)
    nbrs = [set() for _ in range(n)]
    for a, b in edges:
        if a == b:
            raise ValueError("sparse6 stream encodes a loop")
        if b in nbrs[a]:
            raise ValueError("sparse6 stream encodes a multi-edge")
        nbrs[a].add(b)
        nbrs[b].add(a)
    return CubicGraph([tuple(sorted(s)) for s in nbrs])


def write_sparse6_file(path, graphs):
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(sparse6_encode(g) + b"\n")


def read_sparse6_file(path):
    out = []
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(sparse6_decode(line))
    return out
