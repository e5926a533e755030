"""The 22 classes of edge-transitive group actions on the cubic tree.

The catalog holds one finitely presented group per class: 15 semisymmetric
classes (G...) where the group acts on the tree with two vertex orbits, and
7 arc-transitive classes (DjM...).  Every group is an amalgamated free
product A *_C B of its two distinguished finite subgroups over their
intersection, which gives each element a unique normal form: an alternating
product of left-coset representatives of C followed by a trailing element
of C.  That normal form solves the word problem and lets the inclusion
records between classes be verified mechanically.

Data lives in data/amalgams.txt and data/inclusions.txt; loading re-derives
all stated orders and indices by coset enumeration, so a corrupted data
file fails fast.
"""

import math
import os
import re

from .coset import EnumerationBudgetExceeded, enumerate_cosets, \
    permutation_image
from .perms import PermGroup
from .words import Presentation, concat, inverse, substitute, word_to_text

_DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def _data_text(fname):
    with open(os.path.join(_DATA_DIR, fname)) as fh:
        return fh.read()


def _split_blocks(text):
    """Split a data file into (header, block_text) pieces at [header] lines.

    A header is a bracketed line without a comma; bracketed relator lines
    such as [c,d] always contain one, so they stay inside their block."""
    blocks = []
    current = None
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped.startswith("[") and stripped.endswith("]") \
                and "," not in stripped:
            current = [raw]
            blocks.append((stripped[1:-1].strip(), current))
        elif current is not None:
            current.append(raw)
    return [(header, "\n".join(lines)) for header, lines in blocks]


def eval_order_expr(text):
    """Evaluate an exact integer expression built from integers, n!, ^,
    *, / and parentheses.  Division must be exact."""
    if not re.fullmatch(r"[0-9()!^*/ ]+", text):
        raise ValueError(f"bad order expression: {text!r}")
    toks = re.findall(r"\d+|[()!^*/]", text)
    pos = 0

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise ValueError(f"truncated order expression: {text!r}")
        tok = toks[pos]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r} at {tok!r} in {text!r}")
        pos += 1
        return tok

    def peek():
        return toks[pos] if pos < len(toks) else None

    def atom():
        if peek() == "(":
            take("(")
            value = expr()
            take(")")
        else:
            value = int(take())
        while peek() == "!":
            take("!")
            value = math.factorial(value)
        return value

    def power():
        value = atom()
        if peek() == "^":
            take("^")
            value = value ** atom()
        return value

    def expr():
        value = power()
        while peek() in ("*", "/"):
            op = take()
            rhs = power()
            if op == "*":
                value *= rhs
            else:
                if rhs == 0 or value % rhs:
                    raise ValueError(f"inexact division in {text!r}")
                value //= rhs
        return value

    value = expr()
    if pos != len(toks):
        raise ValueError(f"trailing junk in order expression: {text!r}")
    return value


# ---- vertex stabilisers as concrete groups ----

class SideGroup:
    """One vertex stabiliser (A or B) of an amalgam, materialised through
    its right regular permutation representation.

    Element k is the group element reached from the identity (element 0)
    by the coset-table action; `word[k]` is its shortest word in the
    side's generators, lexicographically least in the alphabet
    g0 < g0^-1 < g1 < g1^-1 < ...  Left cosets kC of the edge stabiliser
    C are the orbits of right multiplication by C, and `coset_rep[k]`
    is the member of kC with the least word.
    """

    def __init__(self, pres, c_names, expected_order):
        self.pres = pres
        self.table = enumerate_cosets(pres, (), expected_index=expected_order)
        if self.table.n != expected_order:
            raise ValueError(
                f"{pres.name}: order {self.table.n}, expected {expected_order}")
        self.n = self.table.n
        self.c_names = tuple(c_names)
        self.c_gens = tuple(pres.gen_index(nm) for nm in self.c_names)
        self.word = self._shortest_words(range(len(pres.gens)))
        cw = self._shortest_words(self.c_gens)
        self.c_word = {k: w for k, w in enumerate(cw) if w is not None}
        self.c_set = frozenset(self.c_word)
        self.coset_rep = self._left_coset_reps()

    def _shortest_words(self, gens):
        # BFS from the identity; FIFO order with a fixed alphabet makes the
        # first word found both shortest and lexicographically least
        found = [None] * self.n
        found[0] = ()
        queue = [0]
        qi = 0
        alphabet = [(g, s) for g in gens for s in (1, -1)]
        while qi < len(queue):
            k = queue[qi]
            qi += 1
            for g, s in alphabet:
                m = self.table.act(k, ((g, s),))
                if found[m] is None:
                    found[m] = found[k] + ((g, s),)
                    queue.append(m)
        return found

    def _word_key(self, k):
        w = self.word[k]
        return (len(w), tuple(2 * g + (0 if s > 0 else 1) for g, s in w))

    def _left_coset_reps(self):
        rep = [None] * self.n
        for start in range(self.n):
            if rep[start] is not None:
                continue
            orbit = [start]
            seen = {start}
            qi = 0
            while qi < len(orbit):
                k = orbit[qi]
                qi += 1
                for g in self.c_gens:
                    for s in (1, -1):
                        m = self.table.act(k, ((g, s),))
                        if m not in seen:
                            seen.add(m)
                            orbit.append(m)
            best = min(orbit, key=self._word_key)
            for k in orbit:
                rep[k] = best
        return rep

    def eval_word(self, word):
        return self.table.act(0, word)

    def mult(self, i, j):
        return self.table.act(i, self.word[j])

    def inv(self, i):
        return self.table.act(0, inverse(self.word[i]))

    def word_text(self, k):
        return word_to_text(self.word[k], self.pres.gens)


class AmalgamElement:
    """Normal form of an amalgam element: alternating coset representatives
    from the two sides, then a trailing element of the edge stabiliser C.

    `syllables` is a tuple of (side, word) pairs with side 'A' or 'B' and
    word the representative's shortest word in that side's generators;
    `tail` is the trailing C-element as a word in the shared C generators.
    """

    def __init__(self, syllables, tail):
        self.syllables = tuple(syllables)
        self.tail = tail

    @property
    def is_identity(self):
        return not self.syllables and self.tail == "1"

    def __eq__(self, other):
        return (isinstance(other, AmalgamElement)
                and self.syllables == other.syllables
                and self.tail == other.tail)

    def __hash__(self):
        return hash((self.syllables, self.tail))

    def __repr__(self):
        parts = [f"{side}:{word}" for side, word in self.syllables]
        parts.append(self.tail)
        return "AmalgamElement(" + " . ".join(parts) + ")"


class AmalgamSpec:
    """One catalog class: the presentation, its stabiliser data, and the
    machinery for normal forms of its elements."""

    def __init__(self, pres):
        self.pres = pres
        self.name = pres.name
        meta = pres.meta
        self.kind = meta["kind"]
        if self.kind not in ("semisymmetric", "arc-transitive"):
            raise ValueError(f"{self.name}: bad kind {self.kind!r}")
        orders = tuple(int(t) for t in meta["orders"].split())
        self.order_a, self.order_b, self.order_c = orders
        s_vals = tuple(int(t) for t in meta["local_s"].split())
        if self.kind == "semisymmetric":
            self.local_s = s_vals
        else:
            self.local_s, = s_vals
        self.iso_a = meta.get("iso_a")
        self.iso_b = meta.get("iso_b")
        self.iso_c = meta.get("iso_c")
        self.variant_relator = meta.get("variant_relator")
        self.variant_replaces = meta.get("variant_replaces")
        for key in ("A", "B", "C"):
            if key not in pres.subgroups:
                raise ValueError(f"{self.name}: missing subgroup {key}")
        self._side_a = None
        self._side_b = None
        self._c_maps = None

    @property
    def layer(self):
        return self.order_c

    @property
    def edge_stab_order(self):
        """Order of the stabiliser of an (undirected) edge."""
        return self.order_b if self.kind == "arc-transitive" else self.order_c

    def stabilizer(self, which):
        """Restriction presentation for subgroup 'A', 'B' or 'C'."""
        names = self.pres.subgroups[which]
        return self.pres.restriction(names, name=f"{self.name}.{which}")

    @property
    def side_a(self):
        if self._side_a is None:
            self._side_a = SideGroup(self.stabilizer("A"),
                                     self.pres.subgroups["C"], self.order_a)
        return self._side_a

    @property
    def side_b(self):
        if self._side_b is None:
            self._side_b = SideGroup(self.stabilizer("B"),
                                     self.pres.subgroups["C"], self.order_b)
        return self._side_b

    @property
    def c_maps(self):
        """The identification of C inside the two sides, as a pair of
        mutually inverse dicts (a_to_b, b_to_a) on element indices.

        Built by closing the diagonal subgroup generated by the pairs
        (c in A, c in B); it has exactly |C| elements precisely when the
        two embeddings of C agree, so this doubles as the well-definedness
        check of the amalgam."""
        if self._c_maps is None:
            a, b = self.side_a, self.side_b
            pairs = {(0, 0)}
            queue = [(0, 0)]
            gen_pairs = []
            for nm in self.pres.subgroups["C"]:
                wa = ((a.pres.gen_index(nm), 1),)
                wb = ((b.pres.gen_index(nm), 1),)
                gen_pairs.append((wa, wb))
            qi = 0
            while qi < len(queue):
                i, j = queue[qi]
                qi += 1
                for wa, wb in gen_pairs:
                    for sign in (1, -1):
                        nxt = (a.table.act(i, wa if sign > 0 else inverse(wa)),
                               b.table.act(j, wb if sign > 0 else inverse(wb)))
                        if nxt not in pairs:
                            pairs.add(nxt)
                            queue.append(nxt)
            if len(pairs) != self.order_c:
                raise ValueError(
                    f"{self.name}: the two embeddings of C disagree "
                    f"(diagonal has {len(pairs)} elements, C has "
                    f"{self.order_c})")
            a_to_b = dict(pairs)
            b_to_a = {j: i for i, j in pairs}
            self._c_maps = (a_to_b, b_to_a)
        return self._c_maps

    def _side(self, side):
        return self.side_a if side == "A" else self.side_b

    def _convert(self, side, k, target):
        """Carry a C-element index from one side's numbering to the other's."""
        if side == target:
            return k
        a_to_b, b_to_a = self.c_maps
        return a_to_b[k] if side == "A" else b_to_a[k]

    def normal_form(self, word):
        """Normal form of a word in the full generator set; accepts text."""
        if isinstance(word, str):
            word = self.pres.parse_word(word)
        a_names = set(self.pres.subgroups["A"])
        b_names = set(self.pres.subgroups["B"])
        c_names = set(self.pres.subgroups["C"])
        stack = []
        cur_side, cur = "A", 0
        for g, s in word:
            nm = self.pres.gens[g]
            if nm in c_names:
                letter_side = cur_side
            elif nm in a_names:
                letter_side = "A"
            else:
                if nm not in b_names:
                    raise ValueError(f"{self.name}: generator {nm} is in "
                                     "neither stabiliser")
                letter_side = "B"
            if letter_side != cur_side:
                side = self._side(cur_side)
                if cur in side.c_set:
                    cur = self._convert(cur_side, cur, letter_side)
                    cur_side = letter_side
                    if stack and stack[-1][0] == letter_side:
                        _, prev = stack.pop()
                        cur = self._side(letter_side).mult(prev, cur)
                else:
                    stack.append((cur_side, cur))
                    cur_side, cur = letter_side, 0
            side = self._side(cur_side)
            letter = ((side.pres.gen_index(nm), s),)
            cur = side.table.act(cur, letter)

        if cur in self._side(cur_side).c_set:
            if not stack:
                tail = self._convert(cur_side, cur, "A")
                return AmalgamElement(
                    (), word_to_text(self.side_a.c_word[tail],
                                     self.side_a.pres.gens))
            prev_side, prev = stack.pop()
            cur = self._side(prev_side).mult(
                prev, self._convert(cur_side, cur, prev_side))
            cur_side = prev_side

        syllables = stack + [(cur_side, cur)]
        out = []
        carry_side, carry = syllables[0][0], 0
        for side_name, elt in syllables:
            side = self._side(side_name)
            h = side.mult(self._convert(carry_side, carry, side_name), elt)
            t = side.coset_rep[h]
            out.append((side_name, side.word_text(t)))
            carry_side, carry = side_name, side.mult(side.inv(t), h)
            if carry not in side.c_set:
                raise AssertionError("carry left the edge stabiliser")
        tail = self._convert(carry_side, carry, "A")
        return AmalgamElement(
            out, word_to_text(self.side_a.c_word[tail],
                              self.side_a.pres.gens))

    def __repr__(self):
        return (f"AmalgamSpec({self.name}: {self.kind}, "
                f"|A|={self.order_a}, |B|={self.order_b}, "
                f"|C|={self.order_c})")


def amalgam_normal_form(spec, word):
    return spec.normal_form(word)


def _is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


def _validate_spec(spec):
    """Re-derive the stated orders and indices by coset enumeration and
    check the structural laws the catalog promises."""
    # subgroup orders, including C built from its own relators
    for key, stated in (("A", spec.order_a), ("B", spec.order_b),
                        ("C", spec.order_c)):
        sub = spec.stabilizer(key)
        n = 1 if not sub.gens else enumerate_cosets(
            sub, (), expected_index=stated).n
        if n != stated:
            raise ValueError(f"{spec.name}: |{key}| = {n}, stated {stated}")

    # indices of C inside the two sides
    for key, order, expected in (("A", spec.order_a, 3),
                                 ("B", spec.order_b,
                                  3 if spec.kind == "semisymmetric" else 2)):
        sub = spec.stabilizer(key)
        c_words = tuple(((sub.gen_index(nm), 1),)
                        for nm in spec.pres.subgroups["C"])
        n = enumerate_cosets(sub, c_words, expected_index=expected).n
        if n != expected:
            raise ValueError(
                f"{spec.name}: [{key}:C] = {n}, expected {expected}")

    if spec.order_c != spec.order_a // 3:
        raise ValueError(f"{spec.name}: |C| != |A|/3")
    if spec.kind == "semisymmetric":
        if spec.order_a != spec.order_b:
            raise ValueError(f"{spec.name}: |A| != |B|")
        if spec.order_a % 3 or not _is_power_of_two(spec.order_a // 3) \
                or spec.order_a // 3 > 2 ** 7:
            raise ValueError(f"{spec.name}: |A| is not 3*2^k with k <= 7")
        if len(spec.local_s) != 2 or max(spec.local_s) > 8:
            raise ValueError(f"{spec.name}: bad local_s {spec.local_s}")
    else:
        s = spec.local_s
        if not 1 <= s <= 5 or spec.order_a != 3 * 2 ** (s - 1):
            raise ValueError(f"{spec.name}: |A| != 3*2^(s-1) or s > 5")
        if spec.order_b != 2 * spec.order_c:
            raise ValueError(f"{spec.name}: |B| != 2|C|")

    # every relator must live in one side; otherwise A *_C B is not what
    # the presentation presents
    a_names = set(spec.pres.subgroups["A"])
    b_names = set(spec.pres.subgroups["B"])
    if set(spec.pres.gens) != a_names | b_names:
        raise ValueError(f"{spec.name}: generators not covered by A and B")
    for r in spec.pres.relators:
        used = {spec.pres.gens[g] for g, _ in r}
        if not (used <= a_names or used <= b_names):
            raise ValueError(
                f"{spec.name}: relator {spec.pres.word_str(r)} mixes sides")

    # the two embeddings of C must agree (builds the diagonal)
    spec.c_maps


_CATALOG_CACHE = None


def load_catalog(validate=True):
    """The 22 amalgam classes as an ordered dict name -> AmalgamSpec."""
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        specs = {}
        for header, block in _split_blocks(_data_text("amalgams.txt")):
            pres = Presentation.parse(block)
            if pres.name in specs:
                raise ValueError(f"duplicate catalog entry {pres.name}")
            specs[pres.name] = AmalgamSpec(pres)
        if validate:
            for spec in specs.values():
                _validate_spec(spec)
        _CATALOG_CACHE = specs
    return dict(_CATALOG_CACHE)


# ---- inclusion records ----

class InclusionRecord:
    """One recorded embedding of a smaller catalog group in a larger one."""

    def __init__(self, rec_id, sub_name, super_name, image_texts, index,
                 normal, conj_class, core_text, core_name, maximal,
                 conj_actions, notes):
        self.rec_id = rec_id
        self.sub_name = sub_name
        self.super_name = super_name
        self.image_texts = tuple(image_texts)
        self.index = index
        self.normal = normal
        self.conj_class = conj_class
        self.core_text = core_text
        self.core_order = eval_order_expr(core_text)
        self.core_name = core_name
        self.maximal = maximal
        self.conj_actions = tuple((g, tuple(ws)) for g, ws in conj_actions)
        self.notes = tuple(notes)

    @property
    def label(self):
        return f"{self.sub_name} <= {self.super_name}"

    def __repr__(self):
        return f"InclusionRecord({self.rec_id}: {self.label})"


_HEADER_RE = re.compile(r"^(\d+):\s*(\S+)\s*<=\s*(\S+)$")

_INCLUSIONS_CACHE = None


def load_inclusions():
    """All inclusion records, in file order."""
    global _INCLUSIONS_CACHE
    if _INCLUSIONS_CACHE is not None:
        return _INCLUSIONS_CACHE
    records = []
    for header, block in _split_blocks(_data_text("inclusions.txt")):
        m = _HEADER_RE.match(header)
        if not m:
            raise ValueError(f"bad inclusion header {header!r}")
        rec_id, sub_name, super_name = int(m.group(1)), m.group(2), m.group(3)
        fields = {}
        conj_actions = []
        notes = []
        for raw in block.splitlines()[1:]:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, val = line.split(":", 1)
            key, val = key.strip(), val.strip()
            if key.startswith("conj "):
                conj_actions.append(
                    (key[5:].strip(),
                     tuple(t.strip() for t in val.split(","))))
            elif key == "note":
                notes.append(val)
            else:
                fields[key] = val
        records.append(InclusionRecord(
            rec_id, sub_name, super_name,
            tuple(t.strip() for t in fields["images"].split(",")),
            int(fields["index"]),
            {"yes": True, "no": False}[fields["normal"]],
            int(fields["class"]),
            fields["core"],
            fields.get("core_name"),
            fields.get("maximal", "unstated"),
            conj_actions, notes))
    ids = [r.rec_id for r in records]
    if ids != list(range(1, len(records) + 1)):
        raise ValueError("inclusion records are not numbered 1..n in order")
    _INCLUSIONS_CACHE = tuple(records)
    return _INCLUSIONS_CACHE


def list_inclusions(name=None):
    """Inclusion records, optionally only those with `name` as subgroup
    or supergroup; stable file order."""
    records = load_inclusions()
    if name is None:
        return list(records)
    return [r for r in records if name in (r.sub_name, r.super_name)]


class InclusionReport:
    """Outcome of verifying one inclusion record."""

    def __init__(self, record, failed=None, witness=None, index=None,
                 normal=None, conj_class=None, core_order=None):
        self.record = record
        self.failed = failed
        self.witness = witness
        self.index = index
        self.normal = normal
        self.conj_class = conj_class
        self.core_order = core_order

    @property
    def ok(self):
        return self.failed is None

    def line(self):
        r = self.record
        head = (f"{r.rec_id}: {r.label} index={r.index} "
                f"normal={'yes' if r.normal else 'no'} class={r.conj_class} "
                f"core={r.core_order}")
        if self.ok:
            return head + " : PASS"
        tail = f" : FAIL({self.failed})"
        if self.witness:
            tail += f" {self.witness}"
        return head + tail

    def __repr__(self):
        return f"InclusionReport({self.line()})"


def verify_inclusion(record, catalog=None):
    """Re-check everything an inclusion record claims.

    Five checks, each with a named failure mode:
      well-defined   every subgroup relator maps to the identity (by
                     amalgam normal form), as do the stated conjugation
                     actions when present
      index          coset enumeration over the image words reaches
                     exactly the stated index
      edge-transitive the supergroup's edge stabiliser is transitive on
                     those cosets, so the subgroup is still edge-transitive
      normality      the recorded normal / conjugacy-class-size data match
                     the coset action
      core           the quotient by the normal core has exactly the
                     stated order
    """
    catalog = catalog if catalog is not None else load_catalog()
    sub = catalog[record.sub_name]
    sup = catalog[record.super_name]
    if len(record.image_texts) != len(sub.pres.gens):
        raise ValueError(f"record {record.rec_id}: expected "
                         f"{len(sub.pres.gens)} images")
    images = tuple(sup.pres.parse_word(t) for t in record.image_texts)

    # 1: the map extends to a homomorphism, and the conjugation data holds
    for rel in sub.pres.relators:
        if not sup.normal_form(substitute(rel, images)).is_identity:
            return InclusionReport(record, failed="well-defined",
                                   witness=sub.pres.word_str(rel))
    for conj_text, action_texts in record.conj_actions:
        g = sup.pres.parse_word(conj_text)
        for i, action in enumerate(action_texts):
            target = substitute(sub.pres.parse_word(action), images)
            probe = concat(inverse(g), images[i], g, inverse(target))
            if not sup.normal_form(probe).is_identity:
                return InclusionReport(
                    record, failed="well-defined",
                    witness=f"conj {conj_text} on generator "
                            f"{sub.pres.gens[i]}")

    # 2: index by coset enumeration
    try:
        table = enumerate_cosets(sup.pres, images,
                                 expected_index=record.index)
    except EnumerationBudgetExceeded:
        return InclusionReport(record, failed="index",
                               witness="enumeration budget exceeded")
    if table.n != record.index:
        return InclusionReport(record, failed="index",
                               witness=f"found index {table.n}",
                               index=table.n)

    # 3: the edge stabiliser still reaches every coset
    est_key = "B" if sup.kind == "arc-transitive" else "C"
    est_words = sup.pres.subgroup_words(est_key)
    reached = {0}
    queue = [0]
    qi = 0
    while qi < len(queue):
        k = queue[qi]
        qi += 1
        for w in est_words:
            for step in (w, inverse(w)):
                m = table.act(k, step)
                if m not in reached:
                    reached.add(m)
                    queue.append(m)
    if len(reached) != table.n:
        return InclusionReport(
            record, failed="edge-transitive",
            witness=f"edge stabiliser reaches {len(reached)} of {table.n} "
                    "cosets", index=table.n)

    # 4: normality and conjugacy class size from the coset action
    image_perms = [permutation_image(table, w) for w in images]
    fixed = sum(1 for k in range(table.n)
                if all(p[k] == k for p in image_perms))
    is_normal = fixed == table.n
    if table.n % fixed:
        raise AssertionError("normaliser index does not divide the index")
    conj_class = table.n // fixed
    if is_normal != record.normal:
        return InclusionReport(
            record, failed="normality",
            witness=f"computed normal={'yes' if is_normal else 'no'}",
            index=table.n, normal=is_normal, conj_class=conj_class)
    if conj_class != record.conj_class:
        return InclusionReport(
            record, failed="normality",
            witness=f"computed class={conj_class}",
            index=table.n, normal=is_normal, conj_class=conj_class)

    # 5: order of the quotient by the normal core
    core_order = table.core_quotient().order()
    if core_order != record.core_order:
        return InclusionReport(
            record, failed="core",
            witness=f"computed core order {core_order}",
            index=table.n, normal=is_normal, conj_class=conj_class,
            core_order=core_order)

    return InclusionReport(record, index=table.n, normal=is_normal,
                           conj_class=conj_class, core_order=core_order)


def verify_all_inclusions(name=None, catalog=None, progress=None):
    """Verify every (matching) record; returns the list of reports."""
    catalog = catalog if catalog is not None else load_catalog()
    reports = []
    for record in list_inclusions(name):
        report = verify_inclusion(record, catalog)
        reports.append(report)
        if progress is not None:
            progress(report)
    return reports
