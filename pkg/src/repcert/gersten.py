"""Permutation systems, symbolic eigenvalue exponents, Jordan-centralizer
classification and the Gersten group presentation."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import lcm

from .grouppres import Presentation
from .linalg import nullspace_rational


class NotConjugate(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


# --- permutation systems --------------------------------------------------

def parse_perm(text, d):
    """Cycle notation "(1 2)(3 4)" or an image list "2 1 4 3" (1-based)."""
    text = text.strip()
    img = list(range(d))
    if not text or text in ("id", "()"):
        return tuple(img)
    if "(" in text:
        for cyc in text.replace(")", ") ").split(")"):
            cyc = cyc.strip().lstrip("(").replace(",", " ").split()
            if not cyc:
                continue
            pts = [int(v) - 1 for v in cyc]
            for k, v in enumerate(pts):
                img[v] = pts[(k + 1) % len(pts)]
        out = tuple(img)
    else:
        out = tuple(int(v) - 1 for v in text.replace(",", " ").split())
    if sorted(out) != list(range(d)):
        raise ValueError(f"{text!r} is not a permutation of 1..{d}")
    return out


@dataclass(frozen=True)
class PermSystem:
    d: int
    pi: tuple
    sigma: tuple

    def __post_init__(self):
        for p in (self.pi, self.sigma):
            if sorted(p) != list(range(self.d)):
                raise ValueError(f"{p} is not a permutation of 0..{self.d - 1}")

    @classmethod
    def random(cls, d, rng):
        a, b = list(range(d)), list(range(d))
        rng.shuffle(a)
        rng.shuffle(b)
        return cls(d, tuple(a), tuple(b))

    def relabel(self, g):
        """Conjugate both permutations by g."""
        gi = [0] * self.d
        for i, v in enumerate(g):
            gi[v] = i
        return PermSystem(self.d, tuple(g[self.pi[gi[i]]] for i in range(self.d)),
                          tuple(g[self.sigma[gi[i]]] for i in range(self.d)))


def perm_system_matrix(ps: PermSystem):
    """Row i encodes 2 x_pi(i) - x_i - x_sigma(i) = 0."""
    rows = []
    for i in range(ps.d):
        r = [0] * ps.d
        r[ps.pi[i]] += 2
        r[i] -= 1
        r[ps.sigma[i]] -= 1
        rows.append(r)
    return rows


def orbits(ps: PermSystem):
    parent = list(range(ps.d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in (ps.pi, ps.sigma):
        for i, j in enumerate(p):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(ps.d):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


@dataclass
class OrbitCertificate:
    nullspace_dim: int
    orbit_count: int
    verdict: bool
    orbits: list

    def to_json(self):
        return {"nullspace_dim": self.nullspace_dim, "orbit_count": self.orbit_count,
                "verdict": self.verdict, "orbits": [[i + 1 for i in o] for o in self.orbits]}


def certify_orbit_constancy(ps: PermSystem) -> OrbitCertificate:
    """Solutions of the system are exactly the vectors constant on orbits of <pi, sigma>."""
    m = perm_system_matrix(ps)
    basis = nullspace_rational(m)
    orbs = orbits(ps)
    ok = len(basis) == len(orbs)
    if ok:
        for o in orbs:
            v = [1 if i in o else 0 for i in range(ps.d)]
            if any(sum(r[j] * v[j] for j in range(ps.d)) for r in m):
                ok = False
                break
    return OrbitCertificate(len(basis), len(orbs), ok, orbs)


# --- symbolic eigenvalues -------------------------------------------------

@dataclass(frozen=True, order=True)
class EigenSymbol:
    """Element of Z^r + Q/Z: a monomial in r free generators times exp(2 pi i torsion)."""
    free: tuple
    torsion: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(v) for v in self.free))
        object.__setattr__(self, "torsion", Fraction(self.torsion) % 1)

    def __mul__(self, other):
        return EigenSymbol(tuple(a + b for a, b in zip(self.free, other.free)),
                           self.torsion + other.torsion)

    def __pow__(self, k):
        return EigenSymbol(tuple(a * k for a in self.free), self.torsion * k)

    def is_one(self):
        return not any(self.free) and self.torsion == 0

    def torsion_order(self):
        return self.torsion.denominator

    @classmethod
    def parse(cls, text):
        """"[1,0,2]@1/3" or "1 0 2 @ 1/3"."""
        text = text.strip()
        free, _, tor = text.partition("@")
        free = free.strip().strip("[]()").replace(",", " ").split()
        return cls(tuple(int(v) for v in free), Fraction(tor.strip() or 0))

    def __str__(self):
        s = "[" + ",".join(map(str, self.free)) + "]"
        return s if self.torsion == 0 else f"{s}@{self.torsion}"


def _match(src, dst):
    """Greedy bijection i -> j with dst-list value equal to src[i]."""
    pools = {}
    for j, v in enumerate(dst):
        pools.setdefault(v, []).append(j)
    out = []
    for v in src:
        out.append(pools[v].pop(0))
    return tuple(out)


def _all_matchings(src, dst):
    groups = {}
    for i, v in enumerate(src):
        groups.setdefault(v, []).append(i)
    targets = {}
    for j, v in enumerate(dst):
        targets.setdefault(v, []).append(j)
    keys = list(groups)
    for choice in product(*(permutations(targets[k]) for k in keys)):
        img = [0] * len(src)
        for k, perm in zip(keys, choice):
            for i, j in zip(groups[k], perm):
                img[i] = j
        yield tuple(img)


@dataclass
class RootsResult:
    e: int
    pi: tuple
    sigma: tuple
    certificate: OrbitCertificate
    matchings_checked: int = 1

    def to_json(self):
        return {"e": self.e, "pi": [i + 1 for i in self.pi], "sigma": [i + 1 for i in self.sigma],
                "orbit_certificate": self.certificate.to_json(),
                "matchings_checked": self.matchings_checked}


def _exponent_from(T, A, pi, sigma):
    ps = PermSystem(len(T), pi, sigma)
    cert = certify_orbit_constancy(ps)
    m = perm_system_matrix(ps)
    r = len(T[0].free)
    for c in range(r):
        x = [t.free[c] for t in T]
        if any(sum(row[j] * x[j] for j in range(len(x))) for row in m):
            raise AssertionError("free parts do not solve the permutation system")
    # constancy on orbits forces a_i = x_pi(i) - x_i = 0 in every free coordinate
    if cert.verdict and any(any(a.free) for a in A):
        raise AssertionError("orbit-constant solution with non-torsion A")
    e = lcm(*(a.torsion_order() for a in A)) if A else 1
    return e, ps, cert


def roots_of_unity_exponent(T, A, all_matchings=False) -> RootsResult:
    """Least e >= 1 with A^e = I, given T ~ TA ~ TA^2 for diagonal T, A.

    Raises NotConjugate when diag(TA) or diag(TA^2) is not a rearrangement of
    diag(T).
    """
    T, A = list(T), list(A)
    if len(T) != len(A) or not T:
        raise ValueError("T and A must be nonempty and of equal length")
    TA = [t * a for t, a in zip(T, A)]
    TA2 = [t * a * a for t, a in zip(T, A)]
    base = Counter(T)
    for name, lst in (("TA", TA), ("TA^2", TA2)):
        if Counter(lst) != base:
            diff = (Counter(lst) - base) or (base - Counter(lst))
            raise NotConjugate(f"diag({name}) is not a rearrangement of diag(T)",
                               witness=str(next(iter(diff))))
    pi = _match(TA, T)
    sigma = _match(TA2, T)
    e, ps, cert = _exponent_from(T, A, pi, sigma)
    checked = 1
    if all_matchings:
        checked = 0
        for p in _all_matchings(TA, T):
            for s in _all_matchings(TA2, T):
                e2, _, c2 = _exponent_from(T, A, p, s)
                if e2 != e or not c2.verdict:
                    raise AssertionError("exponent depends on the matching")
                checked += 1
    return RootsResult(e, pi, sigma, cert, checked)


def random_instance(rng: random.Random, d=None, r=None, max_order=12):
    """Random (T, A) with TA and TA^2 rearrangements of T.

    Built from blocks u * c * mu_m: within a block of size m the T entries are
    u c z^k (z = exp(2 pi i/m)) and A multiplies entry k by z^(pi(k) - k) for
    a permutation pi of Z/m with k -> 2 pi(k) - k also bijective.
    """
    d = d or rng.randint(1, 6)
    r = r or rng.randint(1, 3)
    T, A = [], []
    left = d
    while left:
        divs = [m for m in range(1, min(left, max_order) + 1)]
        m = rng.choice(divs)
        u = tuple(rng.randint(-3, 3) for _ in range(r))
        c = Fraction(rng.randint(0, max_order - 1), rng.randint(1, max_order))
        while True:
            p = list(range(m))
            rng.shuffle(p)
            if sorted((2 * p[k] - k) % m for k in range(m)) == list(range(m)):
                break
        for k in range(m):
            T.append(EigenSymbol(u, c + Fraction(k, m)))
            A.append(EigenSymbol((0,) * r, Fraction(p[k] - k, m)))
        left -= m
    idx = list(range(d))
    rng.shuffle(idx)
    return [T[i] for i in idx], [A[i] for i in idx]


def power_is_one(A, e):
    return all((a ** e).is_one() for a in A)


# --- Jordan structures ----------------------------------------------------

BIG_TABLE = {(1, 1), (1, 1, 1), (1, 1, 1, 1), (2, 1, 1), (2, 2)}


@dataclass
class JordanStructure:
    blocks: list  # [(label, (sizes...)), ...]

    def __post_init__(self):
        labels = [lab for lab, _ in self.blocks]
        if len(set(labels)) != len(labels):
            raise ValueError("eigenvalue labels must be distinct")
        for _, sizes in self.blocks:
            if not sizes or any(s < 1 for s in sizes):
                raise ValueError("block sizes must be positive")

    @property
    def size(self):
        return sum(sum(s) for _, s in self.blocks)


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def jordan_big_centralizer(js: JordanStructure):
    """Whether the centralizer contains a non-abelian free group.

    Returns (verdict, trace, heuristic) where verdict is "big" or "not_big".
    """
    trace = []
    heuristic = False
    big = False
    for label, sizes in js.blocks:
        key = tuple(sorted(sizes, reverse=True))
        if sum(key) <= 4:
            hit = key in BIG_TABLE
            trace.append((label, list(key), "table", hit))
        else:
            heuristic = True
            hit = any(v >= 2 for v in Counter(key).values())
            trace.append((label, list(key), "repeated block size (heuristic)", hit))
        big = big or hit
    return ("big" if big else "not_big"), trace, heuristic


def gersten_presentation():
    return Presentation.free_by_cyclic(["a", "b", "c"], ["a", "b a", "c a^2"],
                                       ["a", "b a^-1", "c a^-2"])
