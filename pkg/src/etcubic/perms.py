"""Permutation groups: BSGS via deterministic Schreier-Sims, orbits,
stabilizers, normal closures, and small-group identification.

Permutations are tuples of images on 0..n-1.  Composition is left to
right: pmul(a, b) applies a first, then b, matching the right action of
words on coset tables.
"""

from math import gcd


_ID_CACHE = {}


def pid(n):
    p = _ID_CACHE.get(n)
    if p is None:
        p = _ID_CACHE[n] = tuple(range(n))
    return p


def pmul(a, b):
    return tuple(map(b.__getitem__, a))


def pinv(a):
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def is_identity(p):
    return p == pid(len(p))


def perm_parity(p):
    """+1 for even permutations, -1 for odd."""
    n = len(p)
    seen = [False] * n
    transpositions = 0
    for i in range(n):
        if not seen[i]:
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ln += 1
            transpositions += ln - 1
    return -1 if transpositions % 2 else 1


def perm_order(p):
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if not seen[i]:
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ln += 1
            out = out * ln // gcd(out, ln)
    return out


def perm_cycles(p):
    """Nontrivial cycles, each starting at its least point."""
    seen = [False] * len(p)
    cyc = []
    for i in range(len(p)):
        if not seen[i] and p[i] != i:
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = p[j]
            cyc.append(tuple(c))
    return cyc


class PermGroup:
    def __init__(self, gens, degree=None, base_hint=()):
        gens = [tuple(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("need degree for the trivial group")
            degree = len(gens[0])
        self.degree = degree
        self.gens = [g for g in gens if not is_identity(g)]
        for g in self.gens:
            if len(g) != degree:
                raise ValueError("generator degree mismatch")
        self._base_hint = tuple(base_hint)
        self._levels = None  # list of [point, gens, tr, trinv]

    # ---- BSGS ----

    def _chain(self, stop_order=None):
        """Build the stabilizer chain.  With stop_order, stop as soon as
        the partial chain's transversal product reaches it and return the
        (possibly unverified) levels WITHOUT caching them; the product of
        transversal sizes of a partial chain is always a lower bound for
        the group order, so this is a sound fast path for order_at_least."""
        if self._levels is not None and stop_order is None:
            return self._levels
        degree = self.degree
        id_ = pid(degree)
        levels = []

        def new_level(pt):
            levels.append([pt, [], {pt: id_}, {pt: id_}])

        def first_moved(p):
            for hint in self._base_hint:
                if p[hint] != hint:
                    return hint
            for x in range(degree):
                if p[x] != x:
                    return x
            return None

        def extend_orbit(i):
            pt, lgens, tr, trinv = levels[i]
            q = list(tr)
            qi = 0
            while qi < len(q):
                a = q[qi]
                qi += 1
                ua = tr[a]
                for g in lgens:
                    b = g[a]
                    if b not in tr:
                        ub = pmul(ua, g)
                        tr[b] = ub
                        trinv[b] = pinv(ub)
                        q.append(b)

        def strip(p, start):
            for i in range(start, len(levels)):
                u = levels[i][3].get(p[levels[i][0]])
                if u is None:
                    return p, i
                p = pmul(p, u)
            return p, len(levels)

        for hint in self._base_hint:
            new_level(hint)
        for g in self.gens:
            # place the initial generators in every level they fix into
            h, j = (g, 0)
            for k in range(len(levels)):
                if g[levels[k][0]] != levels[k][0]:
                    j = k
                    break
                j = k + 1
            if j == len(levels):
                mv = first_moved(g)
                if mv is None:
                    continue
                new_level(mv)
            for k in range(j + 1):
                levels[k][1].append(g)
                extend_orbit(k)

        def product():
            n = 1
            for lvl in levels:
                n *= len(lvl[2])
            return n

        if stop_order is not None and product() >= stop_order:
            return levels

        i = len(levels) - 1
        while i >= 0:
            pt, lgens, tr, trinv = levels[i]
            extend_orbit(i)
            clean = True
            for b in list(tr):
                ub = tr[b]
                for g in lgens:
                    c = g[b]
                    uc_inv = trinv[c]
                    sg = pmul(pmul(ub, g), uc_inv)
                    if sg == id_:
                        continue
                    h, j = strip(sg, i + 1)
                    if h != id_:
                        if j == len(levels):
                            new_level(first_moved(h))
                        for k in range(i + 1, j + 1):
                            levels[k][1].append(h)
                            extend_orbit(k)
                        if stop_order is not None \
                                and product() >= stop_order:
                            return levels
                        i = j
                        clean = False
                        break
                if not clean:
                    break
            if clean:
                i -= 1
        # drop trailing trivial levels from the hint seeding
        while levels and len(levels[-1][2]) == 1 and not levels[-1][1]:
            levels.pop()
        self._levels = levels
        return levels

    def order(self):
        n = 1
        for lvl in self._chain():
            n *= len(lvl[2])
        return n

    def order_at_least(self, target):
        """True iff the group order is certified >= target.

        Builds an unverified stabilizer chain by sifting deterministic
        pseudo-random Schreier elements.  The product of transversal
        sizes of any partial chain is a lower bound for the order (the
        products of transversal elements are pairwise distinct), so a
        True answer is always sound, and it usually arrives long before
        a fully verified chain would.  Falls back to the exact order on
        stall, so False answers are exact too.
        """
        import random
        if target <= 1:
            return True
        if not self.gens:
            return False
        if self._levels is not None:
            return self.order() >= target
        degree = self.degree
        id_ = pid(degree)
        rng = random.Random(0x5EED)
        levels = []  # [point, gens, tr(list-free dict), orbit list]

        def product():
            n = 1
            for lvl in levels:
                n *= len(lvl[2])
            return n

        def extend(i):
            pt, lgens, tr, orb = levels[i]
            qi = 0
            while qi < len(orb):
                a = orb[qi]
                qi += 1
                ua = tr[a]
                for g in lgens:
                    b = g[a]
                    if b not in tr:
                        tr[b] = pmul(ua, g)
                        orb.append(b)

        def sift_add(p):
            # returns True if the chain grew
            for i, (pt, lgens, tr, orb) in enumerate(levels):
                b = p[pt]
                u = tr.get(b)
                if u is None:
                    lgens.append(p)
                    extend(i)
                    return True
                p = pmul(p, pinv(u))
            if p == id_:
                return False
            mv = 0
            while p[mv] == mv:
                mv += 1
            levels.append([mv, [p], {mv: id_}, [mv]])
            extend(len(levels) - 1)
            return True

        for g in self.gens:
            sift_add(g)
            if product() >= target:
                return True

        stall = 0
        limit = 400 + 60 * degree
        while stall < limit:
            # a pseudo-random Schreier element of a pseudo-random level
            i = rng.randrange(len(levels))
            pt, lgens, tr, orb = levels[i]
            b = orb[rng.randrange(len(orb))]
            g = lgens[rng.randrange(len(lgens))]
            c = g[b]
            sg = pmul(pmul(tr[b], g), pinv(tr[c]))
            grew = sift_add(sg)
            if rng.random() < 0.3 and len(levels) > 1:
                # occasionally mix two transversal elements across levels
                l1 = levels[rng.randrange(len(levels))]
                l2 = levels[rng.randrange(len(levels))]
                t1 = l1[2][l1[3][rng.randrange(len(l1[3]))]]
                t2 = l2[2][l2[3][rng.randrange(len(l2[3]))]]
                grew = sift_add(pmul(t1, t2)) or grew
            if grew:
                stall = 0
                if product() >= target:
                    return True
            else:
                stall += 1
        return self.order() >= target

    def contains(self, p):
        p = tuple(p)
        if is_identity(p):
            return True
        for lvl in self._chain():
            u = lvl[3].get(p[lvl[0]])
            if u is None:
                return False
            p = pmul(p, u)
        return is_identity(p)

    def base(self):
        return [lvl[0] for lvl in self._chain()]

    def strong_gens(self):
        out = []
        seen = set()
        for lvl in self._chain():
            for g in lvl[1]:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    # ---- orbits and stabilizers ----

    def orbit(self, point):
        seen = {point}
        q = [point]
        qi = 0
        while qi < len(q):
            a = q[qi]
            qi += 1
            for g in self.gens:
                b = g[a]
                if b not in seen:
                    seen.add(b)
                    q.append(b)
        return sorted(seen)

    def orbit_transversal(self, point):
        """dict mapped_point -> permutation sending point there."""
        id_ = pid(self.degree)
        tr = {point: id_}
        q = [point]
        qi = 0
        while qi < len(q):
            a = q[qi]
            qi += 1
            ua = tr[a]
            for g in self.gens:
                b = g[a]
                if b not in tr:
                    tr[b] = pmul(ua, g)
                    q.append(b)
        return tr

    def orbits(self):
        left = set(range(self.degree))
        out = []
        while left:
            p = min(left)
            orb = self.orbit(p)
            out.append(orb)
            left -= set(orb)
        return out

    def point_stabilizer(self, point):
        g = PermGroup(self.gens, self.degree, base_hint=(point,))
        levels = g._chain()
        if not levels or levels[0][0] != point:
            # point fixed by everything
            return PermGroup(self.gens, self.degree)
        gens = []
        seen = set()
        for lvl in levels[1:]:
            for s in lvl[1]:
                if s not in seen:
                    seen.add(s)
                    gens.append(s)
        for s in levels[0][1]:
            if s[point] == point and s not in seen:
                seen.add(s)
                gens.append(s)
        return PermGroup(gens, self.degree)

    def is_transitive(self, points=None):
        if points is None:
            return len(self.orbit(0)) == self.degree
        pts = set(points)
        return set(self.orbit(min(pts))) >= pts

    def minimal_blocks(self, pair_point):
        """The finest block system whose block containing 0 also contains
        pair_point (Atkinson's algorithm).  Returns the partition as a
        sorted list of sorted blocks; [all points] when primitive on the
        pair.  The group must be transitive."""
        n = self.degree
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        queue = [(0, pair_point)]
        while queue:
            a, b = queue.pop()
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra
            for g in self.gens:
                queue.append((g[a], g[b]))
        cells = {}
        for x in range(n):
            cells.setdefault(find(x), []).append(x)
        return sorted(sorted(c) for c in cells.values())

    def block_systems(self):
        """All distinct minimal block systems (nontrivial ones), each a
        sorted list of sorted blocks."""
        out = []
        seen = set()
        for p in range(1, self.degree):
            sys = self.minimal_blocks(p)
            if len(sys) in (1, self.degree):
                continue
            key = tuple(tuple(b) for b in sys)
            if key not in seen:
                seen.add(key)
                out.append(sys)
        return out

    def block_action(self, blocks):
        """The induced permutation group on a block system, plus the
        per-generator block permutations."""
        index_of = {}
        for i, blk in enumerate(blocks):
            for x in blk:
                index_of[x] = i
        first = [blk[0] for blk in blocks]
        perms = [tuple(index_of[g[f]] for f in first) for g in self.gens]
        return PermGroup(perms, len(blocks)), perms

    def restrict_to(self, points):
        """Restriction to an invariant point set as a group on
        len(points) relabeled points.  Raises if not invariant."""
        pos = {p: i for i, p in enumerate(points)}
        gens = []
        for g in self.gens:
            img = [0] * len(points)
            for p in points:
                q = g[p]
                if q not in pos:
                    raise ValueError("point set is not invariant")
                img[pos[p]] = pos[q]
            gens.append(tuple(img))
        return PermGroup(gens, len(points))

    # ---- element enumeration (small groups) ----

    def elements(self, limit=200000):
        if self.order() > limit:
            raise ValueError(f"group too large to enumerate ({self.order()})")
        id_ = pid(self.degree)
        seen = {id_}
        q = [id_]
        qi = 0
        while qi < len(q):
            a = q[qi]
            qi += 1
            for g in self.gens:
                b = pmul(a, g)
                if b not in seen:
                    seen.add(b)
                    q.append(b)
        return q

    # ---- normal structure ----

    def normal_closure(self, seeds):
        seeds = [tuple(s) for s in seeds if not is_identity(tuple(s))]
        if not seeds:
            return PermGroup([], self.degree)
        ker = list(seeds)
        grp = PermGroup(ker, self.degree)
        changed = True
        conj = self.gens + [pinv(g) for g in self.gens]
        while changed:
            changed = False
            for k in list(ker):
                for g in conj:
                    c = pmul(pmul(pinv(g), k), g)
                    if not grp.contains(c):
                        ker.append(c)
                        grp = PermGroup(ker, self.degree)
                        changed = True
        return grp

    def derived_subgroup(self):
        comms = []
        for i, a in enumerate(self.gens):
            for b in self.gens[i + 1:]:
                comms.append(pmul(pmul(pmul(pinv(a), pinv(b)), a), b))
        return self.normal_closure(comms)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens={len(self.gens)})"


# ---- small-group fingerprints and identification ----

def element_order_histogram(g, limit=5000):
    hist = {}
    for e in g.elements(limit):
        o = perm_order(e)
        hist[o] = hist.get(o, 0) + 1
    return tuple(sorted(hist.items()))


def conjugacy_class_sizes(g, limit=5000):
    els = g.elements(limit)
    els_set = set(els)
    assert len(els_set) == len(els)
    sizes = []
    done = set()
    for e in sorted(els):
        if e in done:
            continue
        cls = set()
        q = [e]
        while q:
            a = q.pop()
            if a in cls:
                continue
            cls.add(a)
            for h in g.gens:
                q.append(pmul(pmul(pinv(h), a), h))
        done |= cls
        sizes.append(len(cls))
    return tuple(sorted(sizes))


def center_order(g, limit=5000):
    els = g.elements(limit)
    count = 0
    for e in els:
        if all(pmul(e, h) == pmul(h, e) for h in g.gens):
            count += 1
    return count


def fingerprint(g, limit=5000):
    """Isomorphism-invariant signature used to identify small groups."""
    return (g.order(),
            element_order_histogram(g, limit),
            conjugacy_class_sizes(g, limit),
            center_order(g, limit),
            g.derived_subgroup().order())


def greedy_generators(g, limit=5000):
    els = sorted(g.elements(limit), key=lambda e: (-perm_order(e), e))
    chosen = []
    cur = PermGroup([], g.degree)
    target = g.order()
    for e in els:
        if cur.order() == target:
            break
        if not cur.contains(e):
            chosen.append(e)
            cur = PermGroup(chosen, g.degree)
    return chosen


def find_isomorphism(g, h, limit=5000):
    """A generator-image map g -> h extending to an isomorphism, or None.
    Sound and complete for groups small enough to enumerate."""
    if g.order() != h.order():
        return None
    gens = greedy_generators(g, limit)
    h_els = h.elements(limit)
    by_order = {}
    for e in h_els:
        by_order.setdefault(perm_order(e), []).append(e)
    gen_orders = [perm_order(e) for e in gens]
    for o in gen_orders:
        if o not in by_order:
            return None

    g_els = g.elements(limit)
    target = g.order()

    def extend(images):
        # grow the word map; any conflict means these images satisfy some
        # relation of g differently, so they do not define a homomorphism
        idg = pid(g.degree)
        idh = pid(h.degree)
        mp = {idg: idh}
        q = [idg]
        qi = 0
        while qi < len(q):
            a = q[qi]
            qi += 1
            fa = mp[a]
            for x, fx in zip(gens, images):
                b = pmul(a, x)
                fb = pmul(fa, fx)
                old = mp.get(b)
                if old is None:
                    mp[b] = fb
                    q.append(b)
                elif old != fb:
                    return None
        if len(mp) != target or len(set(mp.values())) != target:
            return None
        return mp

    def rec(i, images):
        if i == len(gens):
            return extend(images)
        for cand in by_order[gen_orders[i]]:
            res = rec(i + 1, images + [cand])
            if res is not None:
                return res
        return None

    if not gens:
        return {pid(g.degree): pid(h.degree)}
    return rec(0, [])


def is_isomorphic(g, h, limit=5000):
    if g.order() != h.order():
        return False
    if fingerprint(g, limit) != fingerprint(h, limit):
        return False
    return find_isomorphism(g, h, limit) is not None


# ---- stock constructions ----

def cyclic(n):
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([tuple(list(range(1, n)) + [0])], n)


def dihedral(n):
    """Dihedral group of degree n, order 2n (n >= 3)."""
    rot = tuple(list(range(1, n)) + [0])
    ref = tuple((n - i) % n for i in range(n))
    return PermGroup([rot, ref], n)


def symmetric(n):
    if n <= 1:
        return PermGroup([], max(n, 1))
    gens = [tuple(list(range(1, n)) + [0]),
            tuple([1, 0] + list(range(2, n)))]
    return PermGroup(gens, n)


def alternating(n):
    if n <= 2:
        return PermGroup([], max(n, 1))
    three = list(range(n))
    three[0], three[1], three[2] = 1, 2, 0
    gens = [tuple(three)]
    if n > 3:
        if n % 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        else:
            gens.append(tuple([0] + list(range(2, n)) + [1]))
    return PermGroup(gens, n)


def quaternion8():
    # elements 1,-1,i,-i,j,-j,k,-k; right multiplication by i and j
    return PermGroup([(2, 3, 1, 0, 7, 6, 4, 5),
                      (4, 5, 6, 7, 1, 0, 3, 2)], 8)


def direct_product(g, h):
    n, m = g.degree, h.degree
    gens = [tuple(list(p) + list(range(n, n + m))) for p in g.gens]
    gens += [tuple(list(range(n)) + [n + x for x in p]) for p in h.gens]
    return PermGroup(gens, n + m)


def elementary_abelian2(k):
    g = cyclic(2)
    out = g
    for _ in range(k - 1):
        out = direct_product(out, g)
    return out if k >= 1 else PermGroup([], 1)


def _mod_mult_group(n, mult):
    """<a, b | a^n, b^2, b a b = a^mult> on n points (b = x -> mult*x)."""
    rot = tuple(list(range(1, n)) + [0])
    b = tuple((mult * i) % n for i in range(n))
    return PermGroup([rot, b], n)


def _builtin_named():
    named = [
        ("C1", PermGroup([], 1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C6", cyclic(6)),
        ("C8", cyclic(8)),
        ("C2^2", elementary_abelian2(2)),
        ("C2^3", elementary_abelian2(3)),
        ("S3", symmetric(3)),
        ("D4", dihedral(4)),
        ("Q8", quaternion8()),
        ("D6", dihedral(6)),
        ("A4", alternating(4)),
        ("C3xC4", direct_product(cyclic(3), cyclic(4))),
        ("D12", dihedral(12)),
        ("S4", symmetric(4)),
        ("C3xD4", direct_product(cyclic(3), dihedral(4))),
        # C3 : D4 with the rotation of D4 inverting the C3 and the
        # reflection centralising it; centre C2, unlike C3xD4 (centre C6)
        ("C3:D4", PermGroup([(1, 2, 0, 3, 4, 5, 6),
                             (0, 2, 1, 4, 5, 6, 3),
                             (0, 1, 2, 3, 6, 5, 4)], 7)),
        ("A4xC2", direct_product(alternating(4), cyclic(2))),
        ("D6xC2", direct_product(dihedral(6), cyclic(2))),
        ("D4xC2", direct_product(dihedral(4), cyclic(2))),
        ("SD16", _mod_mult_group(8, 3)),
        ("M16", _mod_mult_group(8, 5)),
        ("D8", dihedral(8)),
        ("S4xC2", direct_product(symmetric(4), cyclic(2))),
        ("S3xD4", direct_product(symmetric(3), dihedral(4))),
        ("D6xC2^2", direct_product(dihedral(6), elementary_abelian2(2))),
    ]
    return named


_NAME_CACHE = None


def identify_small(g, extra=(), limit=5000):
    """Best-effort name for a small group; never guesses.  extra is an
    iterable of (name, PermGroup) consulted after the built-ins.  Returns
    'unidentified(order=N)' when nothing matches."""
    global _NAME_CACHE
    if _NAME_CACHE is None:
        _NAME_CACHE = [(nm, grp, fingerprint(grp)) for nm, grp in
                       _builtin_named()]
    try:
        fp = fingerprint(g, limit)
    except ValueError:
        return f"unidentified(order={g.order()})"
    for nm, grp, gfp in _NAME_CACHE:
        if gfp == fp and find_isomorphism(g, grp, limit) is not None:
            return nm
    for nm, grp in extra:
        if grp.order() == g.order() and fingerprint(grp, limit) == fp \
                and find_isomorphism(g, grp, limit) is not None:
            return nm
    return f"unidentified(order={g.order()})"
