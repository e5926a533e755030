"""Todd-Coxeter coset enumeration (HLT strategy with coincidence handling).

Tables index cosets from 0 (the subgroup itself).  Column layout: letter
(g, +1) acts through column 2g, letter (g, -1) through column 2g+1, so
column c and column c^1 are mutually inverse.  Enumeration is
deterministic and the returned table is in BFS-standard form, so equal
subgroups of equal presentations give byte-identical tables.
"""

from collections import deque

from .words import free_reduce


class EnumerationBudgetExceeded(RuntimeError):
    """Raised when the enumeration defines more cosets than the budget
    allows.  Recoverable: retry with a larger budget."""

    def __init__(self, defined, budget):
        super().__init__(
            f"coset enumeration exceeded budget ({defined} cosets defined, "
            f"budget {budget})")
        self.defined = defined
        self.budget = budget


def _cols(word):
    return [2 * g + (0 if s > 0 else 1) for g, s in word]


class _Enumerator:
    def __init__(self, width, budget):
        self.width = width
        self.budget = budget
        self.tab = [[None] * width]
        self.p = [0]           # union-find parent, reps are minimal
        self.q = deque()
        self.defined = 1

    def rep(self, k):
        l = k
        p = self.p
        while p[l] != l:
            l = p[l]
        while p[k] != l:
            p[k], k = l, p[k]
        return l

    def merge(self, k, l):
        a, b = self.rep(k), self.rep(l)
        if a != b:
            if a > b:
                a, b = b, a
            self.p[b] = a
            self.q.append(b)

    def define(self, a, x):
        if self.defined >= self.budget:
            raise EnumerationBudgetExceeded(self.defined, self.budget)
        b = len(self.tab)
        self.tab.append([None] * self.width)
        self.p.append(b)
        self.defined += 1
        self.tab[a][x] = b
        self.tab[b][x ^ 1] = a
        return b

    def coincidence(self, a, b):
        self.merge(a, b)
        tab = self.tab
        while self.q:
            e = self.q.popleft()
            row = tab[e]
            for x in range(self.width):
                f = row[x]
                if f is None:
                    continue
                tab[f][x ^ 1] = None
                mu, nu = self.rep(e), self.rep(f)
                if tab[mu][x] is not None:
                    self.merge(nu, tab[mu][x])
                elif tab[nu][x ^ 1] is not None:
                    self.merge(mu, tab[nu][x ^ 1])
                else:
                    tab[mu][x] = nu
                    tab[nu][x ^ 1] = mu

    def scan_and_fill(self, a, w):
        # scan relator w at coset a, defining cosets to close the gap
        tab = self.tab
        f, i = a, 0
        b, j = a, len(w) - 1
        while True:
            while i <= j:
                c = tab[f][w[i]]
                if c is None:
                    break
                f = c
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                c = tab[b][w[j] ^ 1]
                if c is None:
                    break
                b = c
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                tab[f][w[i]] = b
                tab[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])


def standardize(table):
    """Renumber a complete table into BFS-standard form: cosets appear in
    first-visit order scanning rows in order, columns left to right."""
    width = len(table[0])
    seen = {0: 0}
    order = [0]
    qi = 0
    while qi < len(order):
        a = order[qi]
        qi += 1
        for x in range(width):
            b = table[a][x]
            if b not in seen:
                seen[b] = len(order)
                order.append(b)
    new = [[None] * width for _ in order]
    for a, row in enumerate(table):
        ra = seen[a]
        for x, b in enumerate(row):
            new[ra][x] = seen[b]
    return new


class CosetTable:
    """A complete, standardized coset table."""

    def __init__(self, rows, ngens):
        self.rows = rows
        self.ngens = ngens

    @property
    def n(self):
        return len(self.rows)

    def act(self, coset, word):
        for g, s in word:
            coset = self.rows[coset][2 * g + (0 if s > 0 else 1)]
        return coset

    def permutation(self, g):
        return tuple(row[2 * g] for row in self.rows)

    def permutations(self):
        return [self.permutation(g) for g in range(self.ngens)]

    def key(self):
        # deterministic dedup / ordering key
        return b",".join(
            b":".join(str(v).encode() for v in row) for row in self.rows)

    def core_quotient(self):
        """The group acting on the cosets (quotient by the normal core of
        the subgroup) as a PermGroup."""
        from .perms import PermGroup
        perms = self.permutations()
        for p in perms:
            if len(set(p)) != len(p):
                raise AssertionError("generator column is not a permutation")
        return PermGroup(perms, degree=self.n)

    def __repr__(self):
        return f"CosetTable({self.n} cosets, {self.ngens} gens)"


def enumerate_cosets(pres, sub_words=(), expected_index=None, budget=None):
    """Enumerate cosets of <sub_words> in the group presented by pres.

    Budget is the total number of cosets ever defined (live plus dead):
    200 * expected_index when an expected index is given, else 10**6.
    Raises EnumerationBudgetExceeded when the budget runs out; that is
    the recoverable out-of-resources signal, not a wrongness proof.
    """
    if budget is None:
        budget = 200 * expected_index if expected_index else 10 ** 6
    width = 2 * len(pres.gens)
    relators = [_cols(r) for r in pres.relators if r]
    subs = [_cols(free_reduce(w)) for w in sub_words]
    e = _Enumerator(width, budget)
    for w in subs:
        if w:
            e.scan_and_fill(0, w)
    alpha = 0
    while alpha < len(e.tab):
        if e.rep(alpha) != alpha:
            alpha += 1
            continue
        for r in relators:
            e.scan_and_fill(alpha, r)
            if e.rep(alpha) != alpha:
                break
        if e.rep(alpha) == alpha:
            row = e.tab[alpha]
            for x in range(width):
                if row[x] is None:
                    e.define(alpha, x)
        alpha += 1

    # compress to live cosets
    live = [k for k in range(len(e.tab)) if e.rep(k) == k]
    renum = {old: new for new, old in enumerate(live)}
    rows = [[renum[e.rep(e.tab[old][x])] for x in range(width)]
            for old in live]

    # closure sweep: every relator and subgroup word must scan closed
    ct = CosetTable(standardize(rows), len(pres.gens))
    for r in pres.relators:
        for a in range(ct.n):
            if ct.act(a, r) != a:
                raise AssertionError("relator fails to close; table corrupt")
    for w in sub_words:
        if ct.act(0, w) != 0:
            raise AssertionError("subgroup word fails to close at coset 0")
    return ct


def permutation_image(ct, word):
    """The permutation a word induces on the cosets of a complete table.
    Raises if the image is not a bijection (a complete table cannot
    produce one, so this doubles as a corruption check)."""
    img = tuple(ct.act(c, word) for c in range(ct.n))
    if len(set(img)) != len(img):
        raise AssertionError("word image is not a permutation")
    return img


def core_quotient(pres, sub_words=(), expected_index=None, budget=None):
    """The image of the group acting on the cosets, i.e. the quotient by
    the normal core of the subgroup, as a PermGroup."""
    ct = enumerate_cosets(pres, sub_words, expected_index, budget)
    return ct.core_quotient()
