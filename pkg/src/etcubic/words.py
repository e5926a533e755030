"""Words and presentations for finitely presented groups.

A word is a tuple of letters, each letter a pair (generator_index, sign)
with sign +1 or -1.  The empty tuple is the identity.  Words are always
kept freely reduced by the constructors here; raw tuples fed in from
outside should go through free_reduce first.
"""


def free_reduce(word):
    """Cancel adjacent inverse pairs until none remain."""
    out = []
    for g, s in word:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def inverse(word):
    return tuple((g, -s) for g, s in reversed(word))


def concat(*words):
    joined = []
    for w in words:
        joined.extend(w)
    return free_reduce(joined)


def word_pow(word, n):
    if n < 0:
        return word_pow(inverse(word), -n)
    return concat(*([word] * n)) if n else ()


def commutator(u, v):
    # [u, v] = u^-1 v^-1 u v
    return concat(inverse(u), inverse(v), u, v)


def substitute(word, images):
    """Replace generator i by images[i] (a word), freely reducing."""
    out = []
    for g, s in word:
        img = images[g]
        out.extend(img if s > 0 else inverse(img))
    return free_reduce(out)


def cyclic_conjugates(word):
    """All cyclic rotations of a word (used by relator scanners)."""
    n = len(word)
    return [tuple(word[i:] + word[:i]) for i in range(n)] if n else [()]


class WordSyntaxError(ValueError):
    pass


def parse_word(text, gens):
    """Parse a word in the plain text format.

    Grammar: a word is a sequence of factors; a factor is a generator
    name, a parenthesised word, or a commutator [u,v] (= u^-1 v^-1 u v),
    optionally followed by ^k for an integer k (k may be negative).
    Whitespace separates nothing and is ignored.  Unknown symbols are
    rejected.
    """
    # longest-match generator lookup, so multi-letter names are safe
    by_length = sorted(gens, key=len, reverse=True)
    pos = [0]
    n = len(text)

    def skip_ws():
        while pos[0] < n and text[pos[0]].isspace():
            pos[0] += 1

    def parse_int():
        skip_ws()
        start = pos[0]
        if pos[0] < n and text[pos[0]] == '-':
            pos[0] += 1
        digits = pos[0]
        while pos[0] < n and text[pos[0]].isdigit():
            pos[0] += 1
        if pos[0] == digits:
            raise WordSyntaxError(f"expected integer at {start} in {text!r}")
        return int(text[start:pos[0]])

    def parse_factor():
        skip_ws()
        c = text[pos[0]]
        if c == '(':
            pos[0] += 1
            w = parse_seq(')')
            pos[0] += 1  # past ')'
        elif c == '[':
            pos[0] += 1
            u = parse_seq(',')
            pos[0] += 1  # past ','
            v = parse_seq(']')
            pos[0] += 1  # past ']'
            w = commutator(u, v)
        elif c == '1' and not any(n2.startswith('1') for n2 in gens):
            pos[0] += 1
            w = ()
        else:
            for name in by_length:
                if text.startswith(name, pos[0]):
                    pos[0] += len(name)
                    w = ((gens.index(name), 1),)
                    break
            else:
                raise WordSyntaxError(
                    f"unknown symbol {c!r} at {pos[0]} in {text!r}")
        skip_ws()
        if pos[0] < n and text[pos[0]] == '^':
            pos[0] += 1
            w = word_pow(w, parse_int())
        return w

    def parse_seq(close=None):
        parts = []
        while True:
            skip_ws()
            if pos[0] >= n:
                if close is not None:
                    raise WordSyntaxError(f"missing {close!r} in {text!r}")
                break
            if close is not None and text[pos[0]] == close:
                break
            if text[pos[0]] in ')],':
                raise WordSyntaxError(
                    f"unexpected {text[pos[0]]!r} at {pos[0]} in {text!r}")
            parts.append(parse_factor())
        return concat(*parts)

    return parse_seq()


def word_to_text(word, gens):
    """Render a word back to the text format, collapsing runs into powers."""
    if not word:
        return "1"
    chunks = []
    i = 0
    while i < len(word):
        g, s = word[i]
        j = i
        while j < len(word) and word[j] == (g, s):
            j += 1
        k = (j - i) * s
        chunks.append(gens[g] if k == 1 else f"{gens[g]}^{k}")
        i = j
    return "".join(chunks)


class Presentation:
    """A finitely presented group: generator names, relator words, and
    optional named subgroups (each a list of generator names)."""

    def __init__(self, gens, relators, subgroups=None, meta=None, name=None):
        self.gens = tuple(gens)
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("duplicate generator names")
        self.relators = tuple(
            parse_word(r, self.gens) if isinstance(r, str) else free_reduce(r)
            for r in relators)
        self.subgroups = {k: tuple(v) for k, v in (subgroups or {}).items()}
        for k, names in self.subgroups.items():
            for nm in names:
                if nm not in self.gens:
                    raise ValueError(f"subgroup {k}: unknown generator {nm}")
        self.meta = dict(meta or {})
        self.name = name

    def gen_index(self, name):
        return self.gens.index(name)

    def parse_word(self, text):
        return parse_word(text, self.gens)

    def word_str(self, word):
        return word_to_text(word, self.gens)

    def restriction(self, gen_names, name=None):
        """The sub-presentation on a subset of generators, keeping exactly
        the relators that use only those generators.  For the amalgam
        presentations in the catalog this presents the named subgroup."""
        gen_names = tuple(gen_names)
        idx = {self.gens.index(nm): i for i, nm in enumerate(gen_names)}
        rels = []
        for r in self.relators:
            if all(g in idx for g, _ in r):
                rels.append(tuple((idx[g], s) for g, s in r))
        return Presentation(gen_names, rels, name=name)

    def subgroup_words(self, key):
        """Named subgroup generators as single-letter words."""
        return tuple(((self.gen_index(nm), 1),)
                     for nm in self.subgroups[key])

    def __repr__(self):
        nm = self.name or "?"
        return (f"Presentation({nm}: {len(self.gens)} gens, "
                f"{len(self.relators)} relators)")

    def to_text(self):
        lines = []
        if self.name:
            lines.append(f"[{self.name}]")
        for k, v in self.meta.items():
            lines.append(f"{k}: {v}")
        lines.append("generators: " + " ".join(self.gens))
        for k, names in self.subgroups.items():
            lines.append(f"sub {k}: " + " ".join(names))
        lines.append("relators:")
        for r in self.relators:
            lines.append(word_to_text(r, self.gens))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text, name=None):
        """Parse the block text format written by to_text.

        Lines are `key: value` pairs until a `relators:` line; after it,
        one relator per line (blank lines and # comments ignored).  A
        leading [name] line names the presentation; `sub K: g1 g2 ...`
        declares a named subgroup.
        """
        gens = None
        subgroups = {}
        meta = {}
        relator_lines = []
        in_relators = False
        for raw in text.splitlines():
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if not in_relators:
                if line.startswith('[') and line.endswith(']'):
                    name = line[1:-1].strip()
                    continue
                if line == 'relators:':
                    in_relators = True
                    continue
                if ':' not in line:
                    raise ValueError(f"expected key: value, got {raw!r}")
                key, val = line.split(':', 1)
                key, val = key.strip(), val.strip()
                if key == 'generators':
                    gens = tuple(val.split())
                elif key.startswith('sub '):
                    subgroups[key[4:].strip()] = tuple(val.split())
                else:
                    meta[key] = val
            else:
                relator_lines.append(line)
        if gens is None:
            raise ValueError("missing generators line")
        relators = [parse_word(s, gens) for s in relator_lines]
        return cls(gens, relators, subgroups, meta, name=name)
