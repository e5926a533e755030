"""Type assignment for edge-transitive group actions on cubic graphs.

Every edge-transitive action realizes one of the 22 catalog classes, and
the class is pinned down by a short signature: the vertex stabiliser
order, the rooted arc-transitivity depths, the stabiliser isomorphism
types, and whether some arc-reversing element is an involution.  The
signatures are computed from the catalog presentations themselves and
asserted pairwise distinct, so a lookup can never be ambiguous.
"""

from functools import lru_cache

from .amalgams import load_catalog
from .gaut import automorphism_group
from .perms import PermGroup, identify_small, perm_order, pid, pinv, pmul


class TypeAssignment:
    """The catalog class realized by one edge-transitive action."""

    def __init__(self, name, kind, local_s, vertex_stab_order,
                 edge_stab_order, group_order, swapped=False, group=None):
        self.name = name
        self.kind = kind
        self.local_s = local_s
        self.vertex_stab_order = vertex_stab_order
        self.edge_stab_order = edge_stab_order
        self.group_order = group_order
        self.swapped = swapped
        self.group = group

    def __repr__(self):
        return f"TypeAssignment({self.name}, {self.kind}, s={self.local_s})"


def local_s(g, group, u, cap=8):
    """Largest s <= cap such that the stabiliser of u in the group is
    transitive on the 3 * 2^(s-1) s-arcs rooted at u; 0 when it is not
    even transitive on the neighbors."""
    adj = g.adjacency
    gens = group.point_stabilizer(u).gens
    if not gens:
        gens = [pid(g.n)]
    best = 0
    for s in range(1, cap + 1):
        arcs = [(u, w) for w in adj[u]]
        for _ in range(s - 1):
            arcs = [a + (w,) for a in arcs for w in adj[a[-1]] if w != a[-2]]
        seen = {arcs[0]}
        queue = [arcs[0]]
        qi = 0
        while qi < len(queue):
            arc = queue[qi]
            qi += 1
            for p in gens:
                img = tuple(p[x] for x in arc)
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        if len(seen) != len(arcs):
            break
        best = s
    return best


# ---- catalog signatures ----

def _side_label(side):
    return identify_small(PermGroup(side.table.permutations(), side.n))


def _reverser_involution(spec):
    # the arc-reversing elements are exactly B minus C; element 0 of a
    # side's regular table is the identity, so k * k == 0 tests order 2
    b = spec.side_b
    return any(k not in b.c_set and b.mult(k, k) == 0 for k in range(b.n))


@lru_cache(maxsize=1)
def _signatures():
    sigs = {}
    for name, spec in load_catalog().items():
        if spec.kind == "arc-transitive":
            sigs[name] = ("at", spec.order_a, spec.local_s,
                          _side_label(spec.side_b),
                          _reverser_involution(spec))
        else:
            pair = sorted([(spec.local_s[0], _side_label(spec.side_a)),
                           (spec.local_s[1], _side_label(spec.side_b))])
            sigs[name] = ("ss", spec.order_a, tuple(pair))
    assert len(set(sigs.values())) == len(sigs), \
        "catalog signatures do not separate the classes"
    return sigs


def _lookup(sig):
    matches = [nm for nm, x in _signatures().items() if x == sig]
    if len(matches) != 1:
        raise ValueError(f"no catalog class matches signature {sig}")
    return matches[0]


# ---- classification of one action ----

def _edge_orbit_size(g, gens, edge):
    e0 = tuple(sorted(edge))
    seen = {e0}
    queue = [e0]
    qi = 0
    while qi < len(queue):
        e = queue[qi]
        qi += 1
        for p in gens:
            img = tuple(sorted((p[e[0]], p[e[1]])))
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return len(seen)


def _arc_reverser(g, group, u, v):
    """Some group element sending the arc (u, v) to (v, u), or None."""
    gens = group.gens or [pid(g.n)]
    witness = {(u, v): pid(g.n)}
    queue = [(u, v)]
    qi = 0
    while qi < len(queue):
        arc = queue[qi]
        qi += 1
        w = witness[arc]
        for p in gens:
            img = (p[arc[0]], p[arc[1]])
            if img not in witness:
                witness[img] = pmul(w, p)
                queue.append(img)
    return witness.get((v, u))


def classify_action(g, group):
    """The catalog class realized by an edge-transitive group of
    automorphisms of g, as a TypeAssignment."""
    n = g.n
    u = 0
    v = g.adjacency[0][0]
    gens = group.gens or [pid(n)]
    if _edge_orbit_size(g, gens, (u, v)) != 3 * n // 2:
        raise ValueError("the action is not edge-transitive")
    order = group.order()
    orbits = group.orbits()

    if len(orbits) == 1:
        s = local_s(g, group, u)
        if s == 0 or order != 3 * 2 ** (s - 1) * n:
            raise ValueError(
                f"group order {order} does not match arc depth {s}")
        vstab = order // n
        arc_stab = group.point_stabilizer(u).point_stabilizer(v)
        r = _arc_reverser(g, group, u, v)
        if r is None:
            raise ValueError("vertex- and edge- but not arc-transitive")
        reversers = [pmul(x, r) for x in arc_stab.elements(limit=4096)]
        flag = any(pmul(t, t) == pid(n) for t in reversers)
        label = identify_small(PermGroup(arc_stab.gens + [r], n))
        name = _lookup(("at", vstab, s, label, flag))
        return TypeAssignment(name, "arc-transitive", s, vstab,
                              2 * vstab // 3, order, group=group)

    if len(orbits) != 2 or 2 * len(orbits[0]) != n:
        raise ValueError("vertex orbits do not split the graph in half")
    su = local_s(g, group, u)
    sv = local_s(g, group, v)
    vstab = 2 * order // n
    label_u = identify_small(group.point_stabilizer(u))
    label_v = identify_small(group.point_stabilizer(v))
    pair = tuple(sorted([(su, label_u), (sv, label_v)]))
    name = _lookup(("ss", vstab, pair))
    spec = load_catalog()[name]
    swapped = (su, sv) != spec.local_s
    return TypeAssignment(name, "semisymmetric", (su, sv), vstab,
                          vstab // 3, order, swapped=swapped, group=group)


def classify(g):
    """The catalog class realized by the full automorphism group."""
    return classify_action(g, automorphism_group(g))


# ---- enumeration of all edge-transitive actions ----

def _closure(gens, n):
    els = {pid(n)}
    queue = [pid(n)]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for p in gens:
            y = pmul(x, p)
            if y not in els:
                els.add(y)
                queue.append(y)
    return els


def _subgroups_above_seeds(seeds, ambient, n):
    """All subgroups of the ambient element set that contain at least one
    seed element, as a dict frozenset -> generator list.  Every such
    subgroup is reached by adding one ambient element at a time."""
    found = {}
    queue = []
    for x in seeds:
        start = frozenset(_closure([x], n))
        if start not in found:
            found[start] = [x]
            queue.append(start)
    qi = 0
    while qi < len(queue):
        sub = queue[qi]
        qi += 1
        base = found[sub]
        for x in ambient:
            if x in sub:
                continue
            bigger = frozenset(_closure(base + [x], n))
            if bigger not in found:
                found[bigger] = base + [x]
                queue.append(bigger)
    return found


def _neighbor_transitive_subgroups(g, stab, u, min_order):
    """Subgroups of the vertex stabiliser acting transitively on the
    neighbors of u.  Any such subgroup contains an order-3 element
    rotating the neighbors (the stabiliser order is 3 * 2^k), so growing
    upward from those seeds finds them all."""
    nbrs = g.adjacency[u]
    els = stab.elements()
    seeds = [x for x in els if perm_order(x) == 3 and x[nbrs[0]] != nbrs[0]]
    out = {}
    for sub, gens in _subgroups_above_seeds(seeds, els, g.n).items():
        if len(sub) < min_order:
            continue
        if {x[nbrs[0]] for x in sub} >= set(nbrs):
            out[sub] = gens
    return out


def _edge_subgroups(g, aut, u, v):
    """Subgroups of the setwise stabiliser of the edge (u, v) that
    contain an arc reverser."""
    r = _arc_reverser(g, aut, u, v)
    if r is None:
        return {}
    arc_els = aut.point_stabilizer(u).point_stabilizer(v).elements(limit=4096)
    rev_els = [pmul(x, r) for x in arc_els]
    return _subgroups_above_seeds(rev_els, arc_els + rev_els, g.n)


def action_type(g, index_budget=None):
    """Catalog classes of all edge-transitive subgroup actions on g, one
    TypeAssignment per conjugacy class of subgroups of the full group,
    in catalog order.  index_budget, when given, skips actions whose
    vertex stabiliser has larger index in the full one.

    Soundness rests on the amalgam property: an edge-transitive group is
    generated by a vertex stabiliser together with either the other
    endpoint's stabiliser or the setwise edge stabiliser, so closing all
    such candidate pairs reaches every action."""
    aut = automorphism_group(g)
    n = g.n
    u = 0
    v = g.adjacency[0][0]
    if _edge_orbit_size(g, aut.gens or [pid(n)], (u, v)) != 3 * n // 2:
        return []
    stab_u = aut.point_stabilizer(u)
    stab_v = aut.point_stabilizer(v)
    min_u = min_v = 1
    if index_budget is not None:
        min_u = -(-stab_u.order() // index_budget)
        min_v = -(-stab_v.order() // index_budget)
    p_cands = _neighbor_transitive_subgroups(g, stab_u, u, min_u)
    q_cands = _neighbor_transitive_subgroups(g, stab_v, v, min_v)
    r_cands = _edge_subgroups(g, aut, u, v)

    candidates = {}
    others = list(q_cands.values()) + list(r_cands.values())
    for p_gens in p_cands.values():
        for extra in others:
            els = frozenset(_closure(p_gens + extra, n))
            if els not in candidates:
                candidates[els] = p_gens + extra

    assignments = []
    for els, gens in candidates.items():
        if _edge_orbit_size(g, gens, (u, v)) != 3 * n // 2:
            continue
        grp = PermGroup(gens, n)
        assignments.append((classify_action(g, grp), els, gens, grp))

    # one representative per conjugacy class of subgroups
    kept = []
    aut_els = None
    for ta, els, gens, grp in assignments:
        dup = False
        for ta2, els2, gens2, grp2 in kept:
            if ta2.name != ta.name or len(els2) != len(els):
                continue
            if aut_els is None:
                aut_els = aut.elements()
            for a in aut_els:
                ai = pinv(a)
                if all(grp2.contains(pmul(pmul(ai, x), a)) for x in gens):
                    dup = True
                    break
            if dup:
                break
        if not dup:
            kept.append((ta, els, gens, grp))

    names = list(load_catalog())
    kept.sort(key=lambda t: names.index(t[0].name))
    return [t[0] for t in kept]
