"""Words, presentations, normal forms and ball enumeration.

A Word is a tuple of syllables ``(generator index, nonzero exponent)`` with no
two adjacent syllables on the same generator, so constructing a Word performs
free reduction.
"""

from __future__ import annotations

import os
import re
from collections import deque

__all__ = [
    "Word", "Presentation", "PresentationError", "UnsupportedPresentation",
    "BallTooLarge", "NotCyclicallyReduced", "normal_form", "ball", "ball_tree",
    "evaluate", "cyclic_obstruction", "max_ball",
]

DEFAULT_MAX_BALL = 2_000_000


def max_ball():
    return int(os.environ.get("REPCERT_MAX_BALL", DEFAULT_MAX_BALL))


class PresentationError(ValueError):
    pass


class UnsupportedPresentation(PresentationError):
    pass


class BallTooLarge(PresentationError):
    pass


class NotCyclicallyReduced(PresentationError):
    pass


class Word:
    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables=()):
        out = []
        for g, e in syllables:
            if e == 0:
                continue
            if out and out[-1][0] == g:
                e2 = out[-1][1] + e
                if e2:
                    out[-1] = (g, e2)
                else:
                    out.pop()
            else:
                out.append((g, e))
        self.syllables = tuple(out)
        self._hash = hash(self.syllables)

    @classmethod
    def from_letters(cls, letters):
        return cls((g, s) for g, s in letters)

    def letters(self):
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield (g, s)

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __mul__(self, other):
        return Word(self.syllables + other.syllables)

    def inverse(self):
        return Word((g, -e) for g, e in reversed(self.syllables))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.syllables * k)

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __lt__(self, other):
        return self.syllables < other.syllables

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Word({list(self.syllables)})"

    def substitute(self, images):
        """Image under the homomorphism generator i -> images[i]."""
        out = []
        for g, e in self.syllables:
            img = images[g] if e > 0 else images[g].inverse()
            out.extend(img.syllables * abs(e))
        return Word(out)

    def is_cyclically_reduced(self):
        s = self.syllables
        return len(s) < 2 or s[0][0] != s[-1][0]


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


_SYL = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?")


class Presentation:
    """A group presentation of one of the supported kinds.

    kinds: ``raag`` (graph), ``free``, ``free_by_cyclic`` (free generators plus
    stable letter ``t``, automorphism and its inverse as image words),
    ``braid`` (relators only), ``torus_amalgam`` (<x, y | x^p = y^q>) and
    ``amalgam`` (explicit relators, no normal form).
    """

    def __init__(self, kind, names, *, edges=(), alpha=None, alpha_inv=None,
                 p=None, q=None, relators=None, strands=None):
        self.kind = kind
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise PresentationError(f"repeated generator names {self.names}")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.n = len(self.names)
        self.edges = tuple(sorted({tuple(sorted(e)) for e in edges}))
        self.adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            if i == j:
                raise PresentationError("loops are not allowed")
            self.adj[i].add(j)
            self.adj[j].add(i)
        self.alpha = alpha
        self.alpha_inv = alpha_inv
        self.p, self.q = p, q
        self.strands = strands
        self._relators = relators
        self._alpha_cache = {}
        if kind == "free_by_cyclic":
            self._validate_fbc()
        elif kind not in ("raag", "free", "braid", "torus_amalgam", "amalgam"):
            raise PresentationError(f"unknown presentation kind {kind!r}")

    # -- constructors
    @classmethod
    def raag(cls, n_or_names, edges):
        names = n_or_names if not isinstance(n_or_names, int) else [f"v{i}" for i in range(n_or_names)]
        return cls("raag", names, edges=edges)

    @classmethod
    def free(cls, n_or_names):
        names = n_or_names if not isinstance(n_or_names, int) else (
            ["x", "y"] if n_or_names == 2 else [f"x{i + 1}" for i in range(n_or_names)])
        return cls("free", names)

    @classmethod
    def free_by_cyclic(cls, names, alpha, alpha_inv, stable="t"):
        """``alpha``/``alpha_inv``: image word texts (or Words) of the free generators."""
        names = list(names)
        tmp = cls("free", names)
        conv = lambda w: w if isinstance(w, Word) else tmp.parse_word(w)
        return cls("free_by_cyclic", names + [stable],
                   alpha=[conv(w) for w in alpha], alpha_inv=[conv(w) for w in alpha_inv])

    @classmethod
    def braid(cls, strands):
        if strands < 2:
            raise PresentationError("braid groups need at least 2 strands")
        return cls("braid", [f"s{i}" for i in range(1, strands)], strands=strands)

    @classmethod
    def torus_amalgam(cls, p, q, names=("x", "y")):
        return cls("torus_amalgam", names, p=p, q=q)

    @classmethod
    def amalgam(cls, names, relators):
        return cls("amalgam", names, relators=list(relators))

    def _validate_fbc(self):
        k = self.n - 1
        if len(self.alpha) != k or len(self.alpha_inv) != k:
            raise PresentationError("alpha and alpha_inv need one image per free generator")
        for w in list(self.alpha) + list(self.alpha_inv):
            if any(g >= k for g, _ in w):
                raise PresentationError("automorphism images must avoid the stable letter")
        for i in range(k):
            gi = Word([(i, 1)])
            if gi.substitute(self.alpha_inv).substitute(self.alpha) != gi or \
                    gi.substitute(self.alpha).substitute(self.alpha_inv) != gi:
                raise PresentationError(f"alpha_inv is not inverse to alpha on {self.names[i]}")

    # -- words
    def gen(self, name_or_index, e=1):
        i = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        return Word([(i, e)])

    def parse_word(self, text):
        text = text.strip()
        if text in ("", "1", "e"):
            return Word()
        out = []
        for tok in text.replace("*", " ").split():
            m = _SYL.fullmatch(tok)
            if not m or m.group(1) not in self.index:
                raise PresentationError(f"bad syllable {tok!r} for generators {self.names}")
            out.append((self.index[m.group(1)], int(m.group(2) or 1)))
        return Word(out)

    def word_text(self, w):
        if not w:
            return "1"
        return " ".join(self.names[g] if e == 1 else f"{self.names[g]}^{e}" for g, e in w)

    def letters(self):
        return [(i, s) for i in range(self.n) for s in (1, -1)]

    # -- relators
    def relators(self):
        kind = self.kind
        if kind == "raag":
            return [commutator(self.gen(i), self.gen(j)) for i, j in self.edges]
        if kind == "free":
            return []
        if kind == "free_by_cyclic":
            t = self.gen(self.n - 1)
            return [t * self.gen(i) * t.inverse() * self.alpha[i].inverse() for i in range(self.n - 1)]
        if kind == "braid":
            rels = []
            m = self.n
            for i in range(m):
                for j in range(i + 2, m):
                    rels.append(commutator(self.gen(i), self.gen(j)))
            for i in range(m - 1):
                a, b = self.gen(i), self.gen(i + 1)
                rels.append(a * b * a * b.inverse() * a.inverse() * b.inverse())
            return rels
        if kind == "torus_amalgam":
            return [Word([(0, self.p), (1, -self.q)])]
        return [w if isinstance(w, Word) else self.parse_word(w) for w in self._relators]

    def has_normal_form(self):
        return self.kind in ("raag", "free", "free_by_cyclic", "torus_amalgam")

    # -- automorphism powers for free-by-cyclic groups
    def alpha_power(self, k, i):
        """alpha^k applied to free generator i."""
        key = (k, i)
        w = self._alpha_cache.get(key)
        if w is None:
            if k == 0:
                w = Word([(i, 1)])
            elif k > 0:
                w = self.alpha_power(k - 1, i).substitute(self.alpha)
            else:
                w = self.alpha_power(k + 1, i).substitute(self.alpha_inv)
            self._alpha_cache[key] = w
        return w

    def apply_alpha(self, w, k=1):
        return w.substitute([self.alpha_power(k, i) for i in range(self.n - 1)])

    # -- json
    def to_json(self):
        d = {"kind": self.kind, "generators": list(self.names)}
        if self.kind == "raag":
            d["edges"] = [list(e) for e in self.edges]
        elif self.kind == "free_by_cyclic":
            d["alpha"] = [self.word_text(w) for w in self.alpha]
            d["alpha_inv"] = [self.word_text(w) for w in self.alpha_inv]
        elif self.kind == "braid":
            d["n"] = self.strands
        elif self.kind == "torus_amalgam":
            d["p"], d["q"] = self.p, self.q
        elif self.kind == "amalgam":
            d["relators"] = [self.word_text(w) for w in self.relators()]
        return d

    @classmethod
    def from_json(cls, d):
        kind = d["kind"]
        if kind == "raag":
            return cls("raag", d["generators"], edges=[tuple(e) for e in d["edges"]])
        if kind == "free":
            return cls("free", d["generators"])
        if kind == "free_by_cyclic":
            return cls.free_by_cyclic(d["generators"][:-1], d["alpha"], d["alpha_inv"],
                                      stable=d["generators"][-1])
        if kind == "braid":
            return cls.braid(d["n"])
        if kind == "torus_amalgam":
            return cls.torus_amalgam(d["p"], d["q"], d["generators"])
        if kind == "amalgam":
            tmp = cls("free", d["generators"])
            return cls.amalgam(d["generators"], [tmp.parse_word(r) for r in d["relators"]])
        raise PresentationError(f"unknown presentation kind {kind!r}")

    def __repr__(self):
        return f"Presentation({self.kind}, {self.names})"


def _raag_nf(p, w):
    adj = p.adj
    out = []
    for g, s in w.letters():
        # slide the new letter left past commuting letters looking for its inverse
        j = len(out) - 1
        cancelled = False
        while j >= 0:
            h, t = out[j]
            if h == g:
                if t == -s:
                    del out[j]
                    cancelled = True
                break
            if h not in adj[g]:
                break
            j -= 1
        if not cancelled:
            out.append((g, s))
    # lexicographically least shuffle of the reduced word
    res = []
    rem = out
    while rem:
        best = None
        for i, (g, s) in enumerate(rem):
            if all(h != g and h in adj[g] for h, _ in rem[:i]):
                key = (g, 0 if s > 0 else 1)
                if best is None or key < best[0]:
                    best = (key, i)
        i = best[1]
        res.append(rem[i])
        rem = rem[:i] + rem[i + 1:]
    return Word.from_letters(res)


def _fbc_nf(p, w):
    tgen = p.n - 1
    free = []
    k = 0
    for g, e in w:
        if g == tgen:
            k += e
        else:
            img = p.alpha_power(k, g)
            if e < 0:
                img = img.inverse()
            free.extend(img.syllables * abs(e))
    return Word(free + [(tgen, k)])


def _torus_nf(p, w):
    mods = (p.p, p.q)
    syl = []
    z = 0
    for g, e in w:
        if syl and syl[-1][0] == g:
            e += syl.pop()[1]
        z += e // mods[g]
        e %= mods[g]
        if e:
            syl.append((g, e))
    if z:
        syl.append((0, p.p * z))
    return Word(syl)


def normal_form(p: Presentation, w: Word) -> Word:
    kind = p.kind
    if kind == "free":
        return w
    if kind == "raag":
        return _raag_nf(p, w)
    if kind == "free_by_cyclic":
        return _fbc_nf(p, w)
    if kind == "torus_amalgam":
        return _torus_nf(p, w)
    raise UnsupportedPresentation(f"no normal form for {kind} presentations")


def ball_tree(p: Presentation, L: int, cap: int | None = None):
    """Breadth-first ball of radius L.

    Returns a list of ``(word, parent index, letter)``; entry 0 is the identity
    with parent -1.  Every group element of word length <= L appears exactly
    once, represented by its normal form, in deterministic order.
    """
    if not p.has_normal_form():
        raise UnsupportedPresentation(f"no normal form for {p.kind} presentations")
    cap = max_ball() if cap is None else cap
    letters = p.letters()
    nodes = [(Word(), -1, None)]
    seen = {Word()}
    frontier = [0]
    for _ in range(L):
        nxt = []
        for idx in frontier:
            w = nodes[idx][0]
            for g, s in letters:
                v = normal_form(p, w * Word([(g, s)]))
                if v in seen:
                    continue
                seen.add(v)
                nodes.append((v, idx, (g, s)))
                nxt.append(len(nodes) - 1)
                if len(nodes) > cap:
                    raise BallTooLarge(f"ball exceeds {cap} elements")
        frontier = nxt
    return nodes


def ball(p: Presentation, L: int, cap: int | None = None):
    return [w for w, _, _ in ball_tree(p, L, cap)]


def evaluate(rep, w: Word):
    """Product of generator matrices (or cached inverses) in word order."""
    m = rep.identity()
    for g, e in w:
        gm = rep.matrices[g] if e > 0 else rep.inverses[g]
        for _ in range(abs(e)):
            m = m * gm
    return m


def cyclic_obstruction(r: Word) -> bool:
    """Whether r(x^-1, y^-1) or its inverse is a cyclic permutation of r."""
    if not r.is_cyclically_reduced():
        raise NotCyclicallyReduced("relator must be cyclically reduced")
    letters = list(r.letters())
    flipped = [(g, -s) for g, s in letters]
    flipped_inv = [(g, s) for g, s in reversed(letters)]
    n = len(letters)
    rotations = {tuple(letters[i:] + letters[:i]) for i in range(max(n, 1))}
    return tuple(flipped) in rotations or tuple(flipped_inv) in rotations
