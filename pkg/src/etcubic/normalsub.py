"""Search for all normal subgroups of index <= k in a finitely
presented group.

The search enumerates coset tables directly.  A normal subgroup N of
index n corresponds to the right-regular action of G/N on n cosets, and
a transitive coset table has a normal point stabilizer exactly when
there is a full set of left-multiplication permutations commuting with
the table (the centralizer of the image is then transitive, which forces
all point stabilizers to coincide).  So alongside the right table T we
grow partial left tables L[g], propagate commuting-square deductions in
both directions, and prune any branch where they clash: a clash is a
proof that no completion of the current partial table has a normal
stabilizer.  Deductions never merge cosets; a collapsed table is simply
reached on another branch, so no coincidence machinery is needed here.

New coset numbers are only born at the scan pointer (the first undefined
cell in row-major order), which makes the search deterministic and lets
each normal subgroup be found exactly once.  Recorded tables are
BFS-standardized, so records are stable dedup keys.
"""

from .coset import CosetTable, standardize
from .words import free_reduce


class SearchBudgetExceeded(RuntimeError):
    """Raised when the search visits more branch nodes than allowed.
    Recoverable: retry with a smaller index cap or a larger budget."""

    def __init__(self, nodes, budget):
        super().__init__(
            f"normal subgroup search exceeded node budget "
            f"({nodes} nodes, budget {budget})")
        self.nodes = nodes
        self.budget = budget


class NormalSubgroupRecord:
    """One normal subgroup, presented as the coset table of the quotient
    acting regularly on its cosets."""

    def __init__(self, table):
        self.table = table

    @property
    def index(self):
        return self.table.n

    def key(self):
        return self.table.key()

    def quotient(self):
        return self.table.core_quotient()

    def __repr__(self):
        return f"NormalSubgroupRecord(index={self.index})"


def _rotations_by_column(relators, ngens):
    """rot[x] = list of relator rotations (as column sequences) whose
    first letter acts through column x."""
    width = 2 * ngens
    rot = [[] for _ in range(width)]
    seen = set()
    for r in relators:
        cols = tuple(2 * g + (0 if s > 0 else 1) for g, s in r)
        if not cols:
            continue
        for i in range(len(cols)):
            rho = cols[i:] + cols[:i]
            if rho not in seen:
                seen.add(rho)
                rot[rho[0]].append(rho)
    return rot


class _Clash(Exception):
    pass


class _Search:
    def __init__(self, pres, max_index, node_budget, free_on=()):
        self.pres = pres
        self.ngens = len(pres.gens)
        self.width = 2 * self.ngens
        self.relators = [free_reduce(r) for r in pres.relators]
        self.rot = _rotations_by_column(self.relators, self.ngens)
        self.max_index = max_index
        self.budget = node_budget
        self.nodes = 0
        self.T = [[-1] * self.width]
        self.L = [[-1] for _ in range(self.ngens)]
        self.LI = [[-1] for _ in range(self.ngens)]
        self.trail = []
        self.queue = []
        self.records = []
        self.free_checks = []  # (column list, required orbit size)
        self._seed(free_on)

    def _seed(self, free_on):
        """Restrict the search to quotients where each named generator
        subset generates a subgroup of full order (its image embeds).
        The first subset's regular table is pre-filled as cosets
        0..m-1, which both enforces freeness and prunes hard; the rest
        are checked at the leaves via orbit size."""
        from .coset import enumerate_cosets
        for pos, names in enumerate(free_on):
            sub = self.pres.restriction(names)
            table = enumerate_cosets(sub, [])
            cols = []
            for i, nm in enumerate(names):
                g = self.pres.gen_index(nm)
                cols.append((2 * i, 2 * g))
            if pos == 0:
                if table.n > self.max_index:
                    raise ValueError("free subgroup larger than index cap")
                while len(self.T) < table.n:
                    self.new_coset()
                for j in range(table.n):
                    for sub_x, big_x in cols:
                        self.set_T(j, big_x, table.rows[j][sub_x])
                self.propagate()
            else:
                self.free_checks.append(
                    ([big_x for _, big_x in cols], table.n))

    # ---- assignment with trail ----

    def set_T(self, j, x, k):
        T = self.T
        cur = T[j][x]
        if cur != -1:
            if cur != k:
                raise _Clash
            return
        back = T[k][x ^ 1]
        if back != -1 and back != j:
            raise _Clash
        T[j][x] = k
        self.trail.append((0, j, x))
        self.queue.append((0, j, x, k))
        if back == -1:
            T[k][x ^ 1] = j
            self.trail.append((0, k, x ^ 1))
            self.queue.append((0, k, x ^ 1, j))

    def set_L(self, g, j, k):
        L, LI = self.L[g], self.LI[g]
        cur = L[j]
        if cur != -1:
            if cur != k:
                raise _Clash
            return
        if LI[k] != -1 and LI[k] != j:
            raise _Clash
        L[j] = k
        LI[k] = j
        self.trail.append((1, g, j, k))
        self.queue.append((1, g, j, k))

    def new_coset(self):
        self.T.append([-1] * self.width)
        for g in range(self.ngens):
            self.L[g].append(-1)
            self.LI[g].append(-1)
        self.trail.append((2,))
        return len(self.T) - 1

    def undo_to(self, mark):
        T, L, LI = self.T, self.L, self.LI
        while len(self.trail) > mark:
            e = self.trail.pop()
            if e[0] == 0:
                T[e[1]][e[2]] = -1
            elif e[0] == 1:
                L[e[1]][e[2]] = -1
                LI[e[1]][e[3]] = -1
            else:
                T.pop()
                for g in range(self.ngens):
                    L[g].pop()
                    LI[g].pop()

    # ---- propagation ----

    def scan(self, rho, base):
        """Bidirectional scan of a relator rotation at a base coset;
        deduces the single missing edge when one gap remains."""
        T = self.T
        f, i = base, 0
        last = len(rho) - 1
        while i <= last:
            c = T[f][rho[i]]
            if c == -1:
                break
            f = c
            i += 1
        else:
            if f != base:
                raise _Clash
            return
        b, j = base, last
        while j >= i:
            c = T[b][rho[j] ^ 1]
            if c == -1:
                break
            b = c
            j -= 1
        if j < i:
            raise _Clash
        if j == i:
            self.set_T(f, rho[i], b)

    def propagate(self):
        q = self.queue
        T, L, LI = self.T, self.L, self.LI
        while q:
            ev = q.pop()
            if ev[0] == 0:
                _, j, x, k = ev
                for rho in self.rot[x]:
                    self.scan(rho, j)
                # left-right agreement at the subgroup coset
                if j == 0 and not (x & 1):
                    self.set_L(x >> 1, 0, k)
                # regularity: a column with a fixed point is the identity
                if j == k:
                    for i in range(len(T)):
                        self.set_T(i, x, i)
                # regularity: columns agreeing anywhere agree everywhere
                Tj = T[j]
                for y in range(self.width):
                    if y != x and Tj[y] == k:
                        for i, row in enumerate(T):
                            vx, vy = row[x], row[y]
                            if vx != -1 and vy == -1:
                                self.set_T(i, y, vx)
                            elif vy != -1 and vx == -1:
                                self.set_T(i, x, vy)
                for g in range(self.ngens):
                    Lg, LIg = L[g], LI[g]
                    j2 = Lg[j]
                    if j2 != -1:
                        k2 = T[j2][x]
                        if k2 != -1:
                            self.set_L(g, k, k2)
                        else:
                            k2 = Lg[k]
                            if k2 != -1:
                                self.set_T(j2, x, k2)
                    i = LIg[j]
                    if i != -1:
                        i3 = T[i][x]
                        if i3 != -1:
                            self.set_L(g, i3, k)
                        else:
                            i4 = LIg[k]
                            if i4 != -1:
                                self.set_T(i, x, i4)
            else:
                _, g, j, j2 = ev
                if j == 0:
                    self.set_T(0, 2 * g, j2)
                # regularity, left version: fixed point => identity;
                # two left tables agreeing anywhere agree everywhere
                if j == j2:
                    for i in range(len(T)):
                        self.set_L(g, i, i)
                for g2 in range(self.ngens):
                    if g2 != g and L[g2][j] == j2:
                        La, Lb = L[g], L[g2]
                        for i in range(len(T)):
                            va, vb = La[i], Lb[i]
                            if va != -1 and vb == -1:
                                self.set_L(g2, i, va)
                            elif vb != -1 and va == -1:
                                self.set_L(g, i, vb)
                Tj = T[j]
                Tj2 = T[j2]
                Lg = L[g]
                for x in range(self.width):
                    k = Tj[x]
                    if k != -1:
                        k2 = Tj2[x]
                        if k2 != -1:
                            self.set_L(g, k, k2)
                        elif Lg[k] != -1:
                            self.set_T(j2, x, Lg[k])
                # edges into j: T[i][x] = j, i.e. i = T[j][x^1]
                for x in range(self.width):
                    i = Tj[x ^ 1]
                    if i != -1:
                        i2 = Lg[i]
                        if i2 != -1:
                            self.set_T(i2, x, j2)

    # ---- leaf validation ----

    def leaf_check(self):
        """T is complete; rebuild the left tables from scratch and accept
        only if they close into commuting permutations."""
        T = self.T
        n = len(T)
        for g in range(self.ngens):
            Lg = [-1] * n
            Lg[0] = T[0][2 * g]
            # fill along the right action; standard form guarantees every
            # coset is reached from 0
            pending = [0]
            while pending:
                j = pending.pop()
                base = Lg[j]
                for x in range(self.width):
                    k = T[j][x]
                    v = T[base][x]
                    if Lg[k] == -1:
                        Lg[k] = v
                        pending.append(k)
                    elif Lg[k] != v:
                        return False
            if sorted(Lg) != list(range(n)):
                return False
        return True

    def orbit_checks(self):
        """Leaf filter for the non-seeded freeness requirements: the
        orbit of coset 0 under the listed columns must have full size."""
        T = self.T
        for cols, size in self.free_checks:
            seen = {0}
            q = [0]
            while q:
                a = q.pop()
                for x in cols:
                    for b in (T[a][x], T[a][x ^ 1]):
                        if b not in seen:
                            seen.add(b)
                            q.append(b)
            if len(seen) != size:
                return False
        return True

    # ---- main search ----

    def run(self):
        T = self.T
        width = self.width
        stack = [(len(self.trail), 0, 0, None)]
        # frame: (trail mark, scan pointer, next candidate, made_new)
        while stack:
            mark, ptr, cand, _ = stack.pop()
            self.undo_to(mark)
            # find first undefined cell from ptr
            total = len(T) * width
            pos = ptr
            while pos < len(T) * width and T[pos // width][pos % width] != -1:
                pos += 1
            total = len(T) * width
            if pos >= total:
                # complete table
                if self.leaf_check() and self.orbit_checks():
                    rows = [list(r) for r in T]
                    ct = CosetTable(standardize(rows), self.ngens)
                    self.records.append(NormalSubgroupRecord(ct))
                continue
            j, x = pos // width, pos % width
            # candidates: existing cosets with free inverse slot, then new
            k = cand
            n = len(T)
            while k < n and T[k][x ^ 1] != -1:
                k += 1
            if k < n:
                stack.append((mark, ptr, k + 1, None))
                choice = k
                is_new = False
            elif k == n and n < self.max_index and cand <= n:
                choice = None
                is_new = True
            else:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(self.nodes, self.budget)
            try:
                if is_new:
                    c = self.new_coset()
                else:
                    c = choice
                self.queue.clear()
                self.set_T(j, x, c)
                self.propagate()
            except _Clash:
                self.undo_to(mark)
                continue
            stack.append((len(self.trail), pos, 0, None))
        return self.records


def normal_subgroups(pres, max_index, node_budget=None, free_on=()):
    """All normal subgroups of index <= max_index, as records holding the
    standardized coset table of each quotient's regular action.  Results
    are sorted by (index, table key) and contain no duplicates.  Raises
    SearchBudgetExceeded past the node budget (default 400 * max_index).

    free_on, if given, is a list of generator-name tuples; only quotients
    in which each listed subset generates a subgroup of full order (its
    image embeds) are returned.  The first subset is also used to seed
    the table, which prunes the search dramatically; censuses pass the
    two amalgamated subgroups here, since only embedding quotients give
    graphs.
    """
    if node_budget is None:
        node_budget = max(400 * max_index, 20000)
    s = _Search(pres, max_index, node_budget, free_on=free_on)
    recs = s.run()
    recs.sort(key=lambda r: (r.index, r.key()))
    return recs
