"""Global fixed cube or hyperbolic witness for a finitely generated action.

The procedure follows the classical argument: if the orbit of the base vertex
closes up it is bounded and its convex hull carries an invariant cube.
Otherwise a far orbit point is joined to the base by a concatenation of
translated generator geodesics.  Every wall it must cross is a translate of
one of finitely many base walls, so some base wall has enough translates among
them to contain three pairwise disjoint ones, and comparing those three
produces a candidate hyperbolic element.
"""

from dataclasses import dataclass, field

from .actions import (Budget, Hyperbolic, Orbit, Undecided, bounded_orbit_fixed_cube,
                      classify, identity)
from .complex import Cube, geodesic
from .errors import BudgetExceeded, InternalError
from .hyperplanes import (find_disjoint_triple, hyperplane_key, hyperplane_of,
                          hyperplanes_between, prop1_bound, side, sort_hyperplanes)


@dataclass
class BaseHyperplanes:
    per_generator: dict
    union: list


def base_hyperplane_set(X, A):
    v = A.base
    per = {n: hyperplanes_between(X, v, A[n](v)) for n in A.symmetric}
    union = sort_hyperplanes(X, {H for hs in per.values() for H in hs})
    return BaseHyperplanes(per, union)


def threshold(size_S, d):
    return size_S * prop1_bound(d)


@dataclass
class FarElement:
    word: tuple
    distance: int


@dataclass
class AllBounded:
    orbit: Orbit


def find_far_element(X, A, N, budget=Budget()):
    """Shortest (then lexicographically least) word moving the base at least N.

    Words grow on the left, so a word's image depends only on the image of
    its suffix; each layer keeps one word per new image vertex.
    """
    v = A.base
    if N <= 0:
        return FarElement((), 0)
    words = {v: ()}
    layer = {v: ()}
    while layer:
        nxt = {}
        for u, w in sorted(layer.items(), key=lambda item: A.word_key(item[1])):
            for name in A.symmetric:
                x = A[name](u)
                if x in words:
                    continue
                cand = (name,) + w
                if x not in nxt or A.word_key(cand) < A.word_key(nxt[x]):
                    nxt[x] = cand
        hits = [w for x, w in nxt.items() if X.distance(v, x) >= N]
        if hits:
            best = min(hits, key=A.word_key)
            return FarElement(best, X.distance(v, A.apply(best)))
        words.update(nxt)
        if len(words) > budget.orbit_cap:
            raise BudgetExceeded(f"orbit passed {budget.orbit_cap} vertices before reaching distance {N}")
        layer = nxt
    return AllBounded(Orbit(words))


@dataclass(frozen=True)
class PathEdge:
    tail: object
    head: object
    segment: int
    prefix: tuple
    base: object
    hyperplane: object


@dataclass
class TranslatedPath:
    vertices: list
    edges: list
    segments: list


def build_translated_path(X, A, word):
    """Concatenate the prefix-translates of the generator geodesics along ``word``.

    Segment j is the geodesic for ``word[j]`` moved by the product of
    ``word[:j]``; every edge records that prefix and the base wall it came from.
    """
    v = A.base
    h = identity(X)
    vertices, edges, segments = [v], [], []
    for j, name in enumerate(word):
        lam = geodesic(X, v, A[name](v))
        start = len(vertices) - 1
        for p, q in zip(lam, lam[1:]):
            tail, head = h(p), h(q)
            edges.append(PathEdge(tail, head, j, tuple(word[:j]),
                                  hyperplane_of(X, (p, q)), hyperplane_of(X, (tail, head))))
            vertices.append(head)
        segments.append((start, len(vertices) - 1))
        h = h * A[name]
    return TranslatedPath(vertices, edges, segments)


@dataclass
class FixedPoint:
    cube: Cube
    report: dict = field(default_factory=dict)


@dataclass
class HyperbolicWitness:
    word: tuple
    certificate: Hyperbolic
    label: str
    candidates: list
    report: dict = field(default_factory=dict)


def fixed_point_or_witness(X, A, budget=Budget()):
    v = A.base
    d = X.dimension
    base = base_hyperplane_set(X, A)
    N = threshold(len(base.union), d)
    report = {"base_hyperplanes": len(base.union), "dimension": d, "threshold": N}

    if not base.union:
        # every generator fixes v
        report["orbit_size"] = 1
        return FixedPoint(bounded_orbit_fixed_cube(X, A, {v}), report)
    far = find_far_element(X, A, N, budget)
    if isinstance(far, AllBounded):
        report["orbit_size"] = len(far.orbit.words)
        return FixedPoint(bounded_orbit_fixed_cube(X, A, far.orbit.vertices), report)

    report["far_word"] = far.word
    report["far_distance"] = far.distance
    path = build_translated_path(X, A, far.word)
    gv = path.vertices[-1]
    first = {}
    for pos, e in enumerate(path.edges):
        K = e.hyperplane
        if K not in first and side(X, K, v) != side(X, K, gv):
            first[K] = (pos, e)
    if len(first) != far.distance:
        raise InternalError(f"{len(first)} separating walls on the path, distance is {far.distance}")

    buckets = {}
    for pos, e in first.values():
        buckets.setdefault(e.base, []).append((pos, e))
    report["bucket_sizes"] = sorted(len(b) for b in buckets.values())
    bound = prop1_bound(d)
    full = [J for J, b in buckets.items() if len(b) >= bound]
    if not full:
        raise InternalError(f"no base wall has {bound} separating translates")
    J = min(full, key=lambda H: hyperplane_key(X, H))
    bucket = buckets[J]
    report["bucket_base"] = J

    found = find_disjoint_triple(X, [e.hyperplane for _, e in bucket])
    if found.separating is None:
        raise InternalError("three nested walls on a geodesic but none separates the others")
    by_wall = {e.hyperplane: (pos, e) for pos, e in bucket}
    mid = found.hyperplanes[found.separating]
    ends = sorted((by_wall[K] for K in found.hyperplanes if K != mid), key=lambda pe: pe[0])
    e1, e2, e3 = ends[0][1], by_wall[mid][1], ends[1][1]
    report["triple"] = (e1.hyperplane, e2.hyperplane, e3.hyperplane)

    inv1 = A.inverse_word(e1.prefix)
    a = A.reduce(e2.prefix + inv1)
    b = A.reduce(e3.prefix + inv1)
    ba = A.reduce(b + A.inverse_word(a))
    tried = []
    for label, word in (("a", a), ("b", b), ("b*a^-1", ba)):
        cert = classify(X, A.evaluate(word), v, budget)
        tried.append((label, word, type(cert).__name__))
        if isinstance(cert, Hyperbolic):
            report["candidates"] = tried
            return HyperbolicWitness(word, cert, label, tried, report)
    report["candidates"] = tried
    return Undecided(report)
