"""Simplicial automorphisms, group actions given by generators, and certificates.

Composition follows the left-action convention: ``(g * h)(v) == g(h(v))`` and a
word ``[a, b]`` evaluates to ``a * b``.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import (Cube, FiniteComplex, LatticeComplex, ProductComplex, ball,
                      bfs_layers, convex_hull, cubes, cubes_at, is_median_closed)
from .errors import (FilteringViolation, InternalError, InvalidInput, NoInvariantCube,
                     PreconditionViolated, UnknownGenerator)
from .hyperplanes import crosses, hyperplane_of, hyperplanes_between, side

Word = tuple


@dataclass(frozen=True)
class Budget:
    power: int = 8
    radius: int = 12
    orbit_cap: int = 20000


# -- automorphisms ----------------------------------------------------------

class PermutationAut:
    """A vertex permutation of a finite complex."""

    def __init__(self, table):
        self.table = dict(table)

    def __call__(self, v):
        return self.table[v]

    def __mul__(self, other):
        return PermutationAut({v: self.table[other(v)] for v in other.table})

    def inverse(self):
        return PermutationAut({w: v for v, w in self.table.items()})

    def __eq__(self, other):
        return isinstance(other, PermutationAut) and self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __repr__(self):
        moved = {v: w for v, w in self.table.items() if v != w}
        return f"PermutationAut({moved})"


@dataclass(frozen=True)
class AffineAut:
    """x -> y with y[i] = signs[i] * x[perm[i]] + translate[i]."""

    signs: tuple
    perm: tuple
    translate: tuple

    def __call__(self, v):
        return tuple(s * v[p] + t for s, p, t in zip(self.signs, self.perm, self.translate))

    def __mul__(self, other):
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(len(self.perm)))
        perm = tuple(other.perm[self.perm[i]] for i in range(len(self.perm)))
        translate = tuple(self.signs[i] * other.translate[self.perm[i]] + self.translate[i]
                          for i in range(len(self.perm)))
        return AffineAut(signs, perm, translate)

    def inverse(self):
        n = len(self.perm)
        signs, perm, translate = [0] * n, [0] * n, [0] * n
        for i, p in enumerate(self.perm):
            perm[p] = i
            signs[p] = self.signs[i]
            translate[p] = -self.signs[i] * self.translate[i]
        return AffineAut(tuple(signs), tuple(perm), tuple(translate))


@dataclass(frozen=True)
class ProductAut:
    """(a, b) -> (first(a), second(b)), or (first(b), second(a)) when ``swap``."""

    first: object
    second: object
    swap: bool = False

    def __call__(self, v):
        a, b = v
        if self.swap:
            return (self.first(b), self.second(a))
        return (self.first(a), self.second(b))

    def __mul__(self, other):
        f1, f2, g1, g2 = self.first, self.second, other.first, other.second
        if not self.swap:
            return ProductAut(f1 * g1, f2 * g2, other.swap)
        return ProductAut(f1 * g2, f2 * g1, not other.swap)

    def inverse(self):
        if self.swap:
            return ProductAut(self.second.inverse(), self.first.inverse(), True)
        return ProductAut(self.first.inverse(), self.second.inverse())


def identity(X):
    if isinstance(X, FiniteComplex):
        return PermutationAut({v: v for v in X.vertices})
    if isinstance(X, LatticeComplex):
        n = X.rank
        return AffineAut((1,) * n, tuple(range(n)), (0,) * n)
    if isinstance(X, ProductComplex):
        return ProductAut(identity(X.factors[0]), identity(X.factors[1]))
    raise TypeError(f"unsupported complex {X!r}")


def power(X, g, k):
    out = identity(X)
    step = g if k >= 0 else g.inverse()
    for _ in range(abs(k)):
        out = step * out
    return out


def verify_automorphism(X, g, radius=3):
    """``None`` if g preserves adjacency, else an offending edge (or vertex)."""
    if isinstance(X, FiniteComplex):
        if not isinstance(g, PermutationAut) or set(g.table) != set(X.index):
            return ("domain", None)
        if set(g.table.values()) != set(X.index):
            return ("not a bijection", None)
        for a, b in X.edges:
            if not X.adjacent(g(a), g(b)):
                return (a, b)
        return None
    if isinstance(X, LatticeComplex):
        if not isinstance(g, AffineAut) or len(g.perm) != X.rank:
            return ("shape", None)
        if sorted(g.perm) != list(range(X.rank)) or any(s not in (1, -1) for s in g.signs):
            return ("not a signed permutation", None)
        if any(type(t) is not int for t in g.translate) or len(g.translate) != X.rank:
            return ("translation", None)
    elif isinstance(X, ProductComplex):
        if not isinstance(g, ProductAut):
            return ("shape", None)
        if g.swap and X.factors[0] != X.factors[1]:
            return ("swap between different factors", None)
        for F, h in zip(X.factors, (g.first, g.second)):
            bad = verify_automorphism(F, h, radius)
            if bad is not None:
                return bad
    sample = ball(X, X.base, radius)
    for a, b in sample.edges:
        if X.distance(g(a), g(b)) != 1:
            return (a, b)
    for a in sample.vertices:
        if not X.contains(g(a)):
            return (a, None)
    return None


def translate_hyperplane(X, g, H):
    return hyperplane_of(X, (g(H.tail), g(H.head)))


def cube_image(g, C):
    return frozenset(g(v) for v in C.vertices)


def stabilizes(g, C):
    return cube_image(g, C) == C.vertex_set


# -- actions and words ------------------------------------------------------

class GroupAction:
    """A finitely generated action, closed under inverses.

    For each generator whose inverse is not already a generator, a new
    generator ``name^-1`` is appended; ``symmetric`` lists all names in order.
    """

    def __init__(self, complex, generators, base=None):
        self.complex = complex
        self.base = complex.base if base is None else base
        gens = dict(generators)
        self.given = list(gens)
        self.inverse_name = {}
        for name, g in list(gens.items()):
            if name in self.inverse_name:
                continue
            inv = g.inverse()
            twin = next((n for n, h in gens.items() if h == inv), None)
            if twin is None:
                twin = f"{name}^-1"
                if twin in gens:
                    raise InvalidInput(f"generator name {twin!r} clashes with a derived inverse")
                gens[twin] = inv
            self.inverse_name[name] = twin
            self.inverse_name[twin] = name
        self.generators = gens
        self.symmetric = list(gens)
        self._rank = {n: i for i, n in enumerate(self.symmetric)}

    def __repr__(self):
        return f"GroupAction({self.complex!r}, {self.symmetric})"

    def __getitem__(self, name):
        try:
            return self.generators[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def evaluate(self, word):
        out = identity(self.complex)
        for name in reversed(word):
            out = self[name] * out
        return out

    def apply(self, word, v=None):
        v = self.base if v is None else v
        for name in reversed(word):
            v = self[name](v)
        return v

    def inverse_word(self, word):
        return tuple(self.inverse_name[n] for n in reversed(word))

    def reduce(self, word):
        """Freely reduce a word (cancel adjacent ``x x^-1``)."""
        out = []
        for n in word:
            self[n]
            if out and self.inverse_name[out[-1]] == n:
                out.pop()
            else:
                out.append(n)
        return tuple(out)

    def word_key(self, word):
        return (len(word), [self._rank[n] for n in word])

    def verify(self):
        """Map of generator name to violation, for generators that fail verification."""
        return {n: bad for n, g in self.generators.items()
                if (bad := verify_automorphism(self.complex, g)) is not None}


def apply(A, word, v=None):
    return A.apply(word, v)


def evaluate(A, word):
    return A.evaluate(word)


@dataclass
class Orbit:
    words: dict

    @property
    def vertices(self):
        return set(self.words)


@dataclass
class CapExceeded:
    farthest: object
    word: tuple
    explored: int


def orbit(X, A, v=None, cap=20000):
    """BFS closure of ``v`` under the generators; each vertex keeps its shortest word."""
    v = A.base if v is None else v
    words = {v: ()}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for name in A.symmetric:
            w = A[name](u)
            if w not in words:
                if len(words) >= cap:
                    far = max(words, key=lambda z: (X.distance(v, z), -len(words[z])))
                    return CapExceeded(far, words[far], len(words))
                words[w] = (name,) + words[u]
                queue.append(w)
    return Orbit(words)


# -- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class Elliptic:
    cube: Cube


@dataclass(frozen=True)
class Hyperbolic:
    hyperplane: object
    triple: tuple
    power: int
    sides: tuple


@dataclass(frozen=True)
class Undecided:
    report: dict = field(default_factory=dict)


def hyperbolic_search(X, g, v, max_power):
    """Look for H with g^-k H, H, g^k H pairwise disjoint and H in the middle."""
    walls = hyperplanes_between(X, v, g(v))
    gk = identity(X)
    for k in range(1, max_power + 1):
        gk = g * gk
        inv = gk.inverse()
        for H in walls:
            lo, hi = translate_hyperplane(X, inv, H), translate_hyperplane(X, gk, H)
            if len({lo, H, hi}) < 3:
                continue
            if crosses(X, lo, H) or crosses(X, H, hi) or crosses(X, lo, hi):
                continue
            s_lo, s_hi = side(X, H, lo.tail), side(X, H, hi.tail)
            if s_lo != s_hi:
                return Hyperbolic(H, (lo, H, hi), k, (s_lo, s_hi))
    return None


def elliptic_search(X, g, v, radius):
    """First setwise-invariant cube, scanning cubes by distance from ``v``."""
    for r, layer in bfs_layers(X, v, radius):
        for u in layer:
            for C in cubes_at(X, u):
                if stabilizes(g, C) and min(X.distance(v, w) for w in C.vertices) == r:
                    return Elliptic(C)
    return None


def classify(X, g, v=None, budget=Budget()):
    v = X.base if v is None else v
    cert = hyperbolic_search(X, g, v, budget.power)
    if cert is None:
        cert = elliptic_search(X, g, v, budget.radius)
    if cert is None:
        return Undecided({"power": budget.power, "radius": budget.radius})
    return cert


def translation_length_estimate(X, g, v, n):
    if n < 1:
        raise PreconditionViolated("n must be positive")
    return Fraction(X.distance(v, power(X, g, n)(v)), n)


# -- fixed sets -------------------------------------------------------------

@dataclass(frozen=True)
class FixSet:
    vertices: frozenset
    cubes: frozenset

    def __le__(self, other):
        return self.vertices <= other.vertices and self.cubes <= other.cubes

    def __and__(self, other):
        return FixSet(self.vertices & other.vertices, self.cubes & other.cubes)


def fix_set(X, S):
    S = list(S)
    verts = frozenset(v for v in X.vertices if all(g(v) == v for g in S))
    cs = frozenset(C.vertex_set for C in cubes(X) if all(stabilizes(g, C) for g in S))
    if not is_median_closed(X, verts):
        raise InternalError("fixed vertex set is not median-closed")
    return FixSet(verts, cs)


@dataclass(frozen=True)
class FilteringReport:
    union: FixSet
    meet: FixSet

    @property
    def equal(self):
        return self.union == self.meet


def fix_intersection(X, S, T):
    union = fix_set(X, list(S) + list(T))
    meet = fix_set(X, S) & fix_set(X, T)
    if not union <= meet:
        raise FilteringViolation("Fix(S u T) is not contained in Fix(S) n Fix(T)")
    return FilteringReport(union, meet)


def bounded_orbit_fixed_cube(X, A, orbit_vertices):
    """A cube fixed by every generator, found inside the convex hull of a finite orbit."""
    hull = convex_hull(X, X.sort(orbit_vertices))
    inside = set(hull)
    gens = [A[n] for n in A.symmetric]
    found = {}
    for u in hull:
        for C in cubes_at(X, u):
            if C.vertex_set <= inside:
                found.setdefault(C.vertex_set, C)
    for C in sorted(found.values(), key=lambda c: (c.dim, [X.key(w) for w in c.vertices])):
        if all(stabilizes(g, C) for g in gens):
            return C
    raise NoInvariantCube(f"no invariant cube in the hull of a {len(inside)}-vertex orbit")
