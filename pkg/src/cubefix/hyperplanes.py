"""Hyperplanes as Θ-classes of edges, their halfspaces, and the three-walls search.

A :class:`Hyperplane` is stored by its canonical representative edge, so two
hyperplanes are equal exactly when their representatives are.  Canonical forms:

* finite: the class member that is smallest in canonical edge order, oriented
  from the earlier to the later endpoint;
* lattice: the edge from ``c*e_i`` to ``(c+1)*e_i`` (the wall ``x_i = c + 1/2``);
* product: a factor hyperplane's representative, paired with the other
  factor's base vertex.

The positive side of a hyperplane is the side of its representative's head.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .complex import (Cube, FiniteComplex, LatticeComplex, ProductComplex,
                      convex_hull, cubes, geodesic, median_candidates)
from .errors import (DimensionViolation, HellyViolation, InternalError, NotFound,
                     PreconditionViolated, WindowRequired)


@dataclass(frozen=True)
class Hyperplane:
    tail: object
    head: object

    @property
    def edge(self):
        return (self.tail, self.head)


def hyperplane_key(X, H):
    return (X.key(H.tail), X.key(H.head))


def sort_hyperplanes(X, hs):
    return sorted(hs, key=lambda H: hyperplane_key(X, H))


def prop1_bound(d):
    """Size above which any hyperplane family must contain three disjoint walls."""
    return d + d * (d + 1)


# -- Θ relation and canonical forms -----------------------------------------

def theta_related(X, e, f):
    a, b = e
    for c, d in (f, f[::-1]):
        ac = X.distance(a, c)
        if (X.distance(b, d) == ac and X.distance(a, d) == ac + 1
                and X.distance(b, c) == ac + 1):
            return True
    return False


def _finite_classes(X):
    cached = X._cache.get("theta")
    if cached is None:
        reps, classes, lookup = [], [], {}
        for e in X.edges:
            for cid, r in enumerate(reps):
                if theta_related(X, r, e):
                    classes[cid].append(e)
                    break
            else:
                cid = len(reps)
                reps.append(e)
                classes.append([e])
            lookup[frozenset(e)] = cid
        cached = ([Hyperplane(*r) for r in reps], classes, lookup)
        X._cache["theta"] = cached
    return cached


def lattice_wall(rank, axis, wall):
    tail = [0] * rank
    tail[axis] = wall
    head = list(tail)
    head[axis] = wall + 1
    return Hyperplane(tuple(tail), tuple(head))


def axis_wall(H):
    """(axis, wall) of a lattice hyperplane."""
    for i, (a, b) in enumerate(zip(H.tail, H.head)):
        if a != b:
            return i, min(a, b)
    raise ValueError(f"{H!r} is not a lattice edge")


def factor_of(X, H):
    """(factor index, factor hyperplane) of a product hyperplane."""
    (a, b), (a2, b2) = H.tail, H.head
    if a != a2:
        return 0, Hyperplane(a, a2)
    return 1, Hyperplane(b, b2)


def lift(X, i, H):
    """Product hyperplane dual to factor ``i``'s hyperplane ``H``."""
    if i == 0:
        b = X.factors[1].base
        return Hyperplane((H.tail, b), (H.head, b))
    a = X.factors[0].base
    return Hyperplane((a, H.tail), (a, H.head))


def hyperplane_of(X, e):
    a, b = e
    if isinstance(X, FiniteComplex):
        reps, _, lookup = _finite_classes(X)
        return reps[lookup[frozenset(e)]]
    if isinstance(X, LatticeComplex):
        return lattice_wall(X.rank, *axis_wall(Hyperplane(a, b)))
    if isinstance(X, ProductComplex):
        if a[0] != b[0]:
            return lift(X, 0, hyperplane_of(X.factors[0], (a[0], b[0])))
        return lift(X, 1, hyperplane_of(X.factors[1], (a[1], b[1])))
    raise TypeError(f"unsupported complex {X!r}")


def hyperplanes(X):
    """All hyperplanes of a finite complex, in canonical order."""
    if not isinstance(X, FiniteComplex):
        raise WindowRequired("only finite complexes have a finite hyperplane list")
    return list(_finite_classes(X)[0])


def members(X, H):
    """Edges dual to H (finite complexes only)."""
    reps, classes, lookup = _finite_classes(X)
    return list(classes[lookup[frozenset(H.edge)]])


def hyperplanes_between(X, x, y):
    path = geodesic(X, x, y)
    return [hyperplane_of(X, (p, q)) for p, q in zip(path, path[1:])]


def side(X, H, w):
    """+1 if ``w`` is on the head side of H, else -1."""
    if isinstance(X, LatticeComplex):
        i, c = axis_wall(H)
        return 1 if w[i] > c else -1
    if isinstance(X, ProductComplex):
        i, F = factor_of(X, H)
        return side(X.factors[i], F, w[i])
    return 1 if X.distance(w, H.head) < X.distance(w, H.tail) else -1


def separating(X, x, y):
    """Hyperplanes with x and y on opposite sides, by scanning every class."""
    return [H for H in hyperplanes(X) if side(X, H, x) != side(X, H, y)]


# -- crossing and separation ------------------------------------------------

def crosses(X, H1, H2):
    """True iff all four sign quadrants of (H1, H2) contain a vertex."""
    if H1 == H2:
        return False
    if isinstance(X, LatticeComplex):
        return axis_wall(H1)[0] != axis_wall(H2)[0]
    if isinstance(X, ProductComplex):
        i, F1 = factor_of(X, H1)
        j, F2 = factor_of(X, H2)
        return i != j or crosses(X.factors[i], F1, F2)
    cache = X._cache.setdefault("cross", {}) if isinstance(X, FiniteComplex) else None
    pair = frozenset((H1, H2))
    if cache is not None and pair in cache:
        return cache[pair]
    ends = [H1.tail, H1.head, H2.tail, H2.head]
    probes = list(ends)
    for trip in combinations(ends, 3):
        probes.extend(median_candidates(X, *trip))
    result = _quadrants(X, H1, H2, probes) == 4
    if not result:
        # two halfspaces and the hull each meet pairwise, so by Helly a
        # realized quadrant always has a witness inside the hull
        result = _quadrants(X, H1, H2, convex_hull(X, ends)) == 4
    if cache is not None:
        cache[pair] = result
    return result


def _quadrants(X, H1, H2, vertices):
    return len({(side(X, H1, w), side(X, H2, w)) for w in vertices})


def crosses_brute(X, H1, H2):
    """Reference check: scan every vertex of a finite complex."""
    return H1 != H2 and _quadrants(X, H1, H2, X.vertices) == 4


def separates(X, H, H1, H2):
    hs = (H, H1, H2)
    if len(set(hs)) != 3:
        raise PreconditionViolated("separates needs three distinct hyperplanes")
    for A, B in combinations(hs, 2):
        if crosses(X, A, B):
            raise PreconditionViolated(f"{A!r} crosses {B!r}")
    return side(X, H, H1.tail) != side(X, H, H2.tail)


def separator_index(X, triple):
    """Index of the member of a pairwise disjoint triple separating the others."""
    for i in range(3):
        others = [triple[j] for j in range(3) if j != i]
        if separates(X, triple[i], *others):
            return i
    return None


# -- three pairwise disjoint walls ------------------------------------------

def max_pairwise_intersecting(X, S):
    T = []
    for H in S:
        if all(crosses(X, H, J) for J in T):
            T.append(H)
    if len(T) > X.dimension:
        raise DimensionViolation(f"{len(T)} pairwise crossing hyperplanes in dimension {X.dimension}")
    return T


def bucket_map_q(X, S, T):
    """Map each hyperplane outside T to the (1-based) index of the first T member it misses."""
    q = {}
    inT = set(T)
    for J in S:
        if J in inT:
            continue
        for i, Ji in enumerate(T, start=1):
            if not crosses(X, J, Ji):
                q[J] = i
                break
        else:
            raise InternalError(f"{J!r} crosses every member of a maximal crossing family")
    return q


@dataclass(frozen=True)
class DisjointTriple:
    hyperplanes: tuple
    bucket: int
    crossing_family: tuple = field(repr=False)
    separating: object = None


def find_disjoint_triple(X, S):
    """Three pairwise disjoint members of S, found by bucketing against a maximal crossing family.

    Guaranteed to succeed when ``len(S) >= prop1_bound(d)``; below that it is
    best effort and raises :class:`NotFound` when the buckets yield nothing.
    """
    S = list(S)
    if len(set(S)) != len(S):
        raise PreconditionViolated("hyperplane list has duplicates")
    d = X.dimension
    above = len(S) >= prop1_bound(d)
    T = max_pairwise_intersecting(X, S)
    q = bucket_map_q(X, S, T)
    buckets = {j: [] for j in range(1, len(T) + 1)}
    for J in S:
        if J in q:
            buckets[q[J]].append(J)
    for j, B in buckets.items():
        if above and len(B) < d + 1:
            continue
        pair = next(((H1, H2) for H1, H2 in combinations(B, 2) if not crosses(X, H1, H2)), None)
        if pair is not None:
            trip = (T[j - 1],) + pair
            return DisjointTriple(trip, j, tuple(T), separator_index(X, trip))
        if above:
            raise InternalError(f"bucket {j} has {len(B)} members but no disjoint pair")
    if above:
        raise InternalError("no bucket reached the pigeonhole bound")
    raise NotFound(f"no disjoint triple found among {len(S)} hyperplanes")


# -- Helly ------------------------------------------------------------------

def cube_hyperplanes(X, C):
    u = C.vertices[0]
    return {hyperplane_of(X, (u, w)) for w in C.vertices if X.adjacent(u, w)}


def helly_common_cube(X, F):
    """A cube of dimension len(F) dual to every hyperplane in a pairwise crossing family."""
    if not isinstance(X, FiniteComplex):
        raise WindowRequired("helly_common_cube needs a finite complex")
    F = list(F)
    for A, B in combinations(F, 2):
        if not crosses(X, A, B):
            raise PreconditionViolated(f"{A!r} and {B!r} do not cross")
    if not F:
        return Cube((X.base,), 0)
    want = set(F)
    for C in cubes(X):
        if C.dim == len(F) and want <= cube_hyperplanes(X, C):
            return C
    raise HellyViolation(f"no cube is dual to all of {F!r}")
