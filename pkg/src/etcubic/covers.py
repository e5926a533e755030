"""Regular covers of cubic graphs from homology voltages.

A spanning tree fixes a basis of fundamental cycles for the first
homology of the graph; automorphisms act on that basis by integer
matrices.  Reducing mod a prime p and quotienting by an invariant
subspace gives an elementary-abelian voltage assignment on the cotree
arcs whose derived cover the whole group lifts to.  The lift, the
covering-transformation group, and the projection are all constructed
explicitly and verified, never assumed.
"""

import random

from .graphs import CubicGraph, is_connected
from .perms import pid, pmul


# ---- linear algebra over F_p (tiny matrices, rows are tuples) ----

def _rref(rows, p):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    m = len(rows)
    width = len(rows[0]) if rows else 0
    piv = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, m) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    return [tuple(x) for x in rows[:r]], piv


def _nullspace(rows, p, width):
    """Basis of {x : M x^T = 0} for the matrix with the given rows."""
    red, piv = _rref(rows, p)
    basis = []
    for f in range(width):
        if f in piv:
            continue
        v = [0] * width
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = -red[i][f] % p
        basis.append(tuple(v))
    return basis


def _matmul(a, b, p):
    bt = list(zip(*b))
    return [tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
            for row in a]


def _vecmat(v, m, p):
    return tuple(sum(x * row[j] for x, row in zip(v, m)) % p
                 for j in range(len(m[0])))


def _identity_matrix(k):
    return [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]


def _inverse(rows, p):
    k = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(k)]
           for i, r in enumerate(rows)]
    red, piv = _rref(aug, p)
    if piv != list(range(k)):
        raise ValueError("matrix is singular")
    return [tuple(r[k:]) for r in red]


def _span_contains(basis_red, piv, v, p):
    v = list(v)
    for row, c in zip(basis_red, piv):
        if v[c]:
            f = v[c]
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return not any(v)


def _projective_points(basis, p):
    """One representative per 1-dim subspace of the span (first nonzero
    coordinate scaled to 1)."""
    k = len(basis)
    width = len(basis[0])
    coeffs = [[]]
    for _ in range(k):
        coeffs = [c + [x] for c in coeffs for x in range(p)]
    out = []
    for c in coeffs:
        lead = next((i for i, x in enumerate(c) if x), None)
        if lead is None or c[lead] != 1:
            continue
        v = [0] * width
        for x, row in zip(c, basis):
            for j in range(width):
                v[j] = (v[j] + x * row[j]) % p
        out.append(tuple(v))
    return out


# ---- homology basis ----

class HomologyBasis:
    """Spanning tree plus an ordered list of cotree arcs; the cotree
    arcs index the fundamental-cycle basis, of rank |E| - |V| + 1."""

    def __init__(self, g):
        self.graph = g
        n = g.n
        parent = [None] * n
        depth = [0] * n
        order = [0]
        seen = {0}
        qi = 0
        while qi < len(order):
            x = order[qi]
            qi += 1
            for y in g.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    order.append(y)
        if len(seen) != n:
            raise ValueError("graph is not connected")
        self.parent = parent
        self.depth = depth
        tree = {tuple(sorted((y, parent[y]))) for y in range(n)
                if parent[y] is not None}
        self.tree_edges = tree
        self.cotree_arcs = [e for e in g.edges() if e not in tree]
        self.beta = len(self.cotree_arcs)
        assert self.beta == 3 * n // 2 - n + 1
        self._arc_index = {}
        for i, (x, y) in enumerate(self.cotree_arcs):
            self._arc_index[(x, y)] = (i, 1)
            self._arc_index[(y, x)] = (i, -1)

    def tree_path(self, x, y):
        """Arcs along the tree path from x to y."""
        up_x, up_y = [], []
        a, b = x, y
        while a != b:
            if self.depth[a] >= self.depth[b]:
                up_x.append((a, self.parent[a]))
                a = self.parent[a]
            else:
                up_y.append((self.parent[b], b))
                b = self.parent[b]
        return up_x + up_y[::-1]

    def fundamental_cycle(self, i):
        """The closed walk: cotree arc i, then back through the tree."""
        x, y = self.cotree_arcs[i]
        return [(x, y)] + self.tree_path(y, x)

    def project(self, arcs):
        """Homology class of a closed walk in fundamental-cycle
        coordinates (tree arcs contribute nothing)."""
        v = [0] * self.beta
        for arc in arcs:
            hit = self._arc_index.get(arc)
            if hit is not None:
                v[hit[0]] += hit[1]
        return tuple(v)


def matrix_for(basis, perm, p):
    """The action of one automorphism on fundamental-cycle coordinates,
    as a beta x beta matrix over F_p (rows are images of basis cycles)."""
    rows = []
    for i in range(basis.beta):
        image = [(perm[a], perm[b]) for a, b in basis.fundamental_cycle(i)]
        rows.append(tuple(x % p for x in basis.project(image)))
    return rows


class HomologyAction:
    """Matrices of a group's generators on H1 mod p; behaves as the
    list of matrices.  faithful reports a sampling check: False means a
    nonidentity element was seen acting trivially mod p."""

    def __init__(self, graph, basis, group, p, matrices, faithful):
        self.graph = graph
        self.basis = basis
        self.group = group
        self.p = p
        self.matrices = matrices
        self.faithful = faithful

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]

    def __iter__(self):
        return iter(self.matrices)


def homology_action(g, group, p, samples=12):
    """Action of the group's generators on H1(g; F_p).

    Raises if a generator is not an automorphism.  Multiplicativity is
    verified on random word samples, and faithfulness of the sampled
    elements is reported on the result."""
    basis = HomologyBasis(g)
    adj = {(x, y) for x in range(g.n) for y in g.adjacency[x]}
    for gen in group.gens:
        if any((gen[x], gen[y]) not in adj for x, y in adj):
            raise ValueError("generator is not an automorphism")
    mats = [matrix_for(basis, gen, p) for gen in group.gens]

    rnd = random.Random(911)
    idm = _identity_matrix(basis.beta)
    faithful = True
    if group.gens:
        words = []
        for _ in range(samples):
            w = pid(g.n)
            m = idm
            for _ in range(rnd.randint(1, 5)):
                k = rnd.randrange(len(group.gens))
                w = pmul(w, group.gens[k])
                m = _matmul(m, mats[k], p)
            words.append((w, m))
        for w, m in words:
            assert matrix_for(basis, w, p) == m, \
                "homology action is not multiplicative"
            if w != pid(g.n) and m == idm:
                faithful = False
        for gen, m in zip(group.gens, mats):
            if gen != pid(g.n) and m == idm:
                faithful = False
    return HomologyAction(g, basis, group, p, mats, faithful)


# ---- invariant subspaces ----

def invariant_subspaces(mats, p, codim, budget=200000):
    """All subspaces of F_p^beta of the given codimension invariant
    under the row action of every matrix, each returned as a reduced
    row basis.  Found through the dual representation: codimension-1
    searches intersect eigenspaces, deeper ones spin up from 1-dim
    seeds.  Raises when the seed enumeration would exceed the budget."""
    if not mats:
        raise ValueError("need at least one matrix (use the identity)")
    beta = len(mats[0])
    if not 0 <= codim <= beta:
        raise ValueError("codimension out of range")
    if codim == 0:
        return [[tuple(r) for r in _identity_matrix(beta)]]
    transposed = [list(zip(*m)) for m in mats]
    if codim == 1:
        duals = _common_eigenvectors(transposed, p, beta, budget)
    else:
        duals = _spun_subspaces(transposed, p, beta, codim, budget)
    out = [_rref(_nullspace(u, p, beta), p)[0] for u in duals]
    out.sort()
    return out


def _common_eigenvectors(mats, p, beta, budget):
    """1-dim subspaces [v] with v M = lambda_M v for every matrix, by
    branching on the eigenvalue per matrix; each surviving branch is a
    subspace on which all matrices act as scalars."""
    states = [[tuple(r) for r in _identity_matrix(beta)]]
    for m in mats:
        new = []
        for b in states:
            images = [_vecmat(v, m, p) for v in b]
            for lam in range(1, p):
                diff = [tuple((x - lam * y) % p for x, y in zip(img, v))
                        for img, v in zip(images, b)]
                coeffs = _nullspace(list(zip(*diff)), p, len(b))
                if coeffs:
                    new.append([_vecmat(c, b, p) for c in coeffs])
        states = new
    total = sum((p ** len(b) - 1) // (p - 1) for b in states)
    if total > budget:
        raise ValueError(f"budget exceeded: {total} eigen-seeds")
    return [[v] for b in states for v in _projective_points(b, p)]


def _spin(seed_rows, mats, p):
    basis, piv = _rref(seed_rows, p)
    grew = True
    while grew:
        grew = False
        for v in list(basis):
            for m in mats:
                w = _vecmat(v, m, p)
                if not _span_contains(basis, piv, w, p):
                    basis, piv = _rref(list(basis) + [w], p)
                    grew = True
    return basis, piv


def _spun_subspaces(mats, p, beta, dim, budget):
    seeds = (p ** beta - 1) // (p - 1)
    if seeds > budget:
        raise ValueError(f"budget exceeded: {seeds} seeds")
    points = _projective_points(_identity_matrix(beta), p)
    found = {}

    def grow(basis, piv):
        key = tuple(basis)
        if key in found or len(basis) > dim:
            return
        found[key] = (basis, piv)
        if len(basis) == dim:
            return
        for w in points:
            if not _span_contains(basis, piv, w, p):
                grow(*_spin(list(basis) + [w], mats, p))

    for w in points:
        grow(*_spin([w], mats, p))
    return [b for b, piv in found.values() if len(b) == dim]


# ---- cover specifications ----

def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class CoverSpec:
    """An elementary-abelian voltage assignment on the cotree arcs of a
    base graph, plus the data needed to lift a group: one d x d matrix
    per group generator."""

    def __init__(self, base, p, voltages, basis=None, group=None,
                 matrices=None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.base = base
        self.p = p
        self.basis = basis if basis is not None else HomologyBasis(base)
        if set(voltages) != set(self.basis.cotree_arcs):
            raise ValueError("voltages must cover exactly the cotree arcs")
        dims = {len(v) for v in voltages.values()}
        if len(dims) > 1:
            raise ValueError("voltage vectors of mixed dimension")
        self.d = dims.pop() if dims else 0
        self.voltages = {a: tuple(x % p for x in v)
                         for a, v in voltages.items()}
        if self.d and len(_rref(list(self.voltages.values()), p)[0]) < self.d:
            raise ValueError("voltages do not span, cover disconnected")
        self.group = group
        self.matrices = list(matrices) if matrices is not None else None
        if self.group is not None:
            if self.matrices is None or \
                    len(self.matrices) != len(self.group.gens):
                raise ValueError("need one matrix per group generator")
        self.maximality = None

    def __repr__(self):
        return (f"CoverSpec(n={self.base.n}, p={self.p}, d={self.d}, "
                f"order={self.base.n * self.p ** self.d})")


def quotient_spec(action, subspace):
    """CoverSpec for the quotient of H1 mod p by an invariant subspace
    (given as a row basis; the empty list keeps all of H1)."""
    basis, p = action.basis, action.p
    beta = basis.beta
    w_red, w_piv = _rref(subspace, p) if subspace else ([], [])
    if len(w_red) != len(subspace or []):
        raise ValueError("subspace basis is not independent")
    free = [c for c in range(beta) if c not in w_piv]
    d = len(free)
    full = [list(r) for r in w_red] + \
        [[1 if j == f else 0 for j in range(beta)] for f in free]
    inv = _inverse(full, p)
    proj = [tuple(row[beta - d:]) for row in inv]  # beta x d, v -> v.proj

    def project(v):
        return _vecmat(v, proj, p)

    voltages = {arc: project(tuple(1 if j == i else 0 for j in range(beta)))
                for i, arc in enumerate(basis.cotree_arcs)}
    mats = []
    for m in action.matrices:
        rows = []
        for f in free:
            unit = tuple(1 if j == f else 0 for j in range(beta))
            rows.append(project(_vecmat(unit, m, p)))
        # well-defined only because the subspace is invariant; verify
        for w in w_red:
            if any(project(_vecmat(w, m, p))):
                raise ValueError("subspace is not invariant")
        mats.append(rows)
    return CoverSpec(action.graph, p, voltages, basis=basis,
                     group=action.group, matrices=mats)


# ---- the derived cover ----

def derived_cover(spec):
    """Build the cover: n * p^d vertices, fibre coordinates in F_p^d.

    Returns (cover, certificate); the certificate carries the
    projection, one verified lift per group generator, and generators
    of the covering-transformation group, which acts regularly on every
    fibre."""
    base, p, d = spec.base, spec.p, spec.d
    n = base.n
    fibre = p ** d
    vecs = [()]
    for _ in range(d):
        vecs = [v + (x,) for x in range(p) for v in vecs]
    vecs.sort(key=lambda t: sum(x * p ** k for k, x in enumerate(t)))
    rank = {v: i for i, v in enumerate(vecs)}

    def idx(v, t):
        return v * fibre + rank[t]

    zero = (0,) * d
    arc_volt = {}
    for (x, y), z in spec.voltages.items():
        arc_volt[(x, y)] = z
        arc_volt[(y, x)] = tuple(-a % p for a in z)

    nbrs = [[] for _ in range(n * fibre)]
    for x, y in base.edges():
        z = arc_volt.get((x, y), zero)
        for t in vecs:
            s = tuple((a + b) % p for a, b in zip(t, z))
            nbrs[idx(x, t)].append(idx(y, s))
            nbrs[idx(y, s)].append(idx(x, t))
    cover = CubicGraph([tuple(sorted(b)) for b in nbrs])
    if not is_connected(cover):
        raise AssertionError("spanning voltages gave a disconnected cover")

    projection = tuple(v for v in range(n) for _ in range(fibre))
    cover_edges = {(a, b) for a in range(cover.n)
                   for b in cover.adjacency[a]}

    lifts = []
    if spec.group is not None:
        for gen, m in zip(spec.group.gens, spec.matrices):
            lifts.append(_lift(spec, gen, m, idx, vecs, arc_volt, zero))
        for gen, lift in zip(spec.group.gens, lifts):
            assert all((lift[a], lift[b]) in cover_edges
                       for a, b in cover_edges), "lift breaks adjacency"
            assert all(projection[lift[idx(v, t)]] == gen[v]
                       for v in range(n) for t in vecs), \
                "lift does not commute with the projection"

    ct = []
    for k in range(d):
        unit = tuple(1 if j == k else 0 for j in range(d))
        tau = [0] * cover.n
        for v in range(n):
            for t in vecs:
                s = tuple((a + b) % p for a, b in zip(t, unit))
                tau[idx(v, t)] = idx(v, s)
        assert all((tau[a], tau[b]) in cover_edges for a, b in cover_edges)
        ct.append(tuple(tau))
    # the translations fix every fibre and act regularly within one
    reach = {zero}
    queue = [zero]
    while queue:
        t = queue.pop()
        for k in range(d):
            s = tuple((a + (1 if j == k else 0)) % p
                      for j, a in enumerate(t))
            if s not in reach:
                reach.add(s)
                queue.append(s)
    assert len(reach) == fibre, "covering group is not regular on fibres"

    cert = {"projection": projection, "lifts": lifts, "ct": ct,
            "p": p, "d": d}
    return cover, cert


def _lift(spec, gen, m, idx, vecs, arc_volt, zero):
    """The lift of one base automorphism: fibre-offset vectors come from
    walking the spanning tree, then every cotree arc is checked for the
    voltage compatibility the invariant quotient guarantees."""
    base, p, d = spec.base, spec.p, spec.d
    basis = spec.basis
    offset = {0: zero}
    order = [0]
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for y in base.adjacency[x]:
            if y in offset or tuple(sorted((x, y))) not in basis.tree_edges:
                continue
            z = arc_volt.get((gen[x], gen[y]), zero)
            offset[y] = tuple((a + b) % p for a, b in zip(offset[x], z))
            order.append(y)
    for x, y in basis.cotree_arcs:
        lhs = arc_volt.get((gen[x], gen[y]), zero)
        want = _vecmat(arc_volt[(x, y)], m, p) if d else zero
        rhs = tuple((a + b - c) % p for a, b, c in
                    zip(want, offset[y], offset[x]))
        if lhs != rhs:
            raise ValueError("automorphism does not lift along the voltages")
    lift = [0] * (base.n * p ** d)
    for v in range(base.n):
        for t in vecs:
            s = _vecmat(t, m, p) if d else zero
            s = tuple((a + b) % p for a, b in zip(s, offset[v]))
            lift[idx(v, t)] = idx(gen[v], s)
    return tuple(lift)


# ---- strong realizations ----

def _edge_transitive(g, group):
    gens = group.gens or [pid(g.n)]
    e0 = tuple(sorted((0, g.adjacency[0][0])))
    seen = {e0}
    queue = [e0]
    qi = 0
    while qi < len(queue):
        e = queue[qi]
        qi += 1
        for pg in gens:
            img = tuple(sorted((pg[e[0]], pg[e[1]])))
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return len(seen) == 3 * g.n // 2


def make_strong_realization(g, group, p, dim=None, verify_limit=20000):
    """CoverSpec along which the group lifts with the ambition that the
    lift is the full automorphism group of the cover.

    dim defaults to the full Betti rank (the whole mod-p homology
    cover); smaller values quotient by the first invariant subspace of
    that codimension.  When the cover has at most verify_limit vertices
    its automorphism group is computed and compared against the lift,
    setting maximality to "verified" or "not-maximal"; larger covers
    get "unverified-maximality"."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not _edge_transitive(g, group):
        raise ValueError("group is not edge-transitive on the base")
    if group.order() % p == 0:
        raise ValueError("p must not divide the group order")
    action = homology_action(g, group, p)
    beta = action.basis.beta
    if dim is None:
        dim = beta
    if dim == beta:
        spec = quotient_spec(action, [])
    else:
        subs = invariant_subspaces(action.matrices, p, dim)
        if not subs:
            raise ValueError(f"no invariant quotient of dimension {dim}")
        spec = quotient_spec(action, subs[0])
    if g.n * p ** dim <= verify_limit:
        from .gaut import automorphism_group
        cover, cert = derived_cover(spec)
        want = group.order() * p ** dim
        spec.maximality = ("verified"
                           if automorphism_group(cover).order() == want
                           else "not-maximal")
    else:
        spec.maximality = "unverified-maximality"
    return spec
