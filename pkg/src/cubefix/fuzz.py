"""Seeded corpus of finite median graphs with actions, and the invariant suites run over it.

Every random choice flows from an explicit integer seed through
:class:`random.Random`, so a case regenerates identically from its seed.
"""

import logging
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .actions import (GroupAction, PermutationAut, elliptic_search, fix_intersection,
                      hyperbolic_search, stabilizes)
from .complex import FiniteComplex, ProductComplex, flatten_product, verify_median_graph
from .errors import GenerationFailed, InvalidArguments, SizeExceeded
from .hyperplanes import (crosses, crosses_brute, cube_hyperplanes, find_disjoint_triple,
                          helly_common_cube, hyperplanes, hyperplanes_between, prop1_bound,
                          separating, theta_related)
from .io import serialize_action, serialize_complex
from .oracles import coordinate_median, square_classes
from .theorem_a import FixedPoint, fixed_point_or_witness

log = logging.getLogger(__name__)

FAMILIES = ("tree", "staircase", "product")
MAX_VERTICES = 60
SUITES = ("helly", "prop1", "theorem_a", "theta_oracle", "distance_count",
          "exclusion", "filtering")


# -- complexes --------------------------------------------------------------

def _tree(rng, n):
    names = [f"t{i}" for i in range(n)]
    if n == 1:
        return FiniteComplex(names, [])
    if n == 2:
        return FiniteComplex(names, [(names[0], names[1])])
    # Prüfer decoding gives a uniform labelled tree
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((names[leaf], names[x]))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [i for i in range(n) if degree[i] == 1]
    edges.append((names[u], names[w]))
    return FiniteComplex(names, edges)


def _staircase(rng, max_w, max_h):
    w, h = rng.randint(1, max_w), rng.randint(1, max_h)
    heights = sorted((rng.randint(1, h) for _ in range(w)), reverse=True)
    cells = {(x, y) for x in range(w) for y in range(heights[x])}
    repairs = 0
    grown = True
    while grown:
        grown = False
        for p, q, r in combinations(sorted(cells), 3):
            m = coordinate_median(p, q, r)
            if m not in cells:
                cells.add(m)
                repairs += 1
                grown = True
    if repairs:
        log.warning("staircase needed %d median-closure repairs", repairs)
    pts = sorted(cells)
    names = {p: f"x{p[0]}y{p[1]}" for p in pts}
    edges = [(names[p], names[q]) for p, q in combinations(pts, 2)
             if abs(p[0] - q[0]) + abs(p[1] - q[1]) == 1]
    return FiniteComplex([names[p] for p in pts], edges)


def _small(rng, max_tree=5):
    if rng.random() < 0.5:
        return _tree(rng, rng.randint(2, max_tree))
    return _staircase(rng, 3, 3)


def generate_complex(seed, family, max_vertices=MAX_VERTICES, retries=50):
    """A random finite median graph from one of the corpus families."""
    if family not in FAMILIES:
        raise InvalidArguments(f"unknown family {family!r}")
    rng = random.Random(seed)
    for _ in range(retries):
        if family == "tree":
            X = _tree(rng, rng.randint(2, 50))
        elif family == "staircase":
            X = _staircase(rng, 8, 8)
        else:
            X = flatten_product(ProductComplex(_small(rng, 12), _small(rng)))
        if len(X.vertices) < 2 or len(X.vertices) > max_vertices:
            continue
        if verify_median_graph(X) is None:
            X.name = f"{family}-{seed}"
            return X
    raise GenerationFailed(f"{family} generation failed for seed {seed}")


# -- automorphisms ----------------------------------------------------------

def _joint_refine(adj, c1, c2):
    n = len(adj)
    while True:
        s1 = [(c1[v], tuple(sorted(c1[w] for w in adj[v]))) for v in range(n)]
        s2 = [(c2[v], tuple(sorted(c2[w] for w in adj[v]))) for v in range(n)]
        if Counter(s1) != Counter(s2):
            return None
        ids = {s: i for i, s in enumerate(sorted(set(s1)))}
        n1, n2 = [ids[s] for s in s1], [ids[s] for s in s2]
        if len(ids) == len(set(c1)):
            return n1, n2
        c1, c2 = n1, n2


def _individualize(c, x):
    c = list(c)
    c[x] = max(c) + 1
    return c


def _extend(adj, c1, c2):
    n = len(adj)
    sizes = Counter(c1)
    if len(sizes) == n:
        where = {col: u for u, col in enumerate(c2)}
        perm = [where[c1[v]] for v in range(n)]
        if all(set(perm[w] for w in adj[v]) == set(adj[perm[v]]) for v in range(n)):
            return perm
        return None
    col = min((s, c) for c, s in sizes.items() if s > 1)[1]
    x = c1.index(col)
    for y in (u for u in range(n) if c2[u] == col):
        refined = _joint_refine(adj, _individualize(c1, x), _individualize(c2, y))
        if refined is not None:
            found = _extend(adj, *refined)
            if found is not None:
                return found
    return None


def automorphism_search(X, limit=MAX_VERTICES):
    """Generators of Aut(X), one coset transversal per level of a stabilizer chain."""
    n = len(X.vertices)
    if n > limit:
        raise SizeExceeded(f"automorphism search is limited to {limit} vertices")
    adj = [[X.index[w] for w in X.neighbors(v)] for v in X.vertices]
    c, _ = _joint_refine(adj, [len(a) for a in adj], [len(a) for a in adj])
    gens = []
    for b in range(n):
        cell = [u for u in range(n) if c[u] == c[b]]
        if len(cell) > 1:
            level = []
            orbit = {b}
            for y in cell:
                if y in orbit:
                    continue
                refined = _joint_refine(adj, _individualize(c, b), _individualize(c, y))
                perm = None if refined is None else _extend(adj, *refined)
                if perm is not None:
                    level.append(perm)
                    orbit = _orbit_of(b, level)
            gens.extend(level)
        c, _ = _joint_refine(adj, _individualize(c, b), _individualize(c, b))
        if len(set(c)) == n:
            break
    vs = X.vertices
    return [PermutationAut({vs[i]: vs[p[i]] for i in range(n)}) for p in gens]


def _orbit_of(b, perms):
    seen = {b}
    stack = [b]
    while stack:
        u = stack.pop()
        for p in perms:
            if p[u] not in seen:
                seen.add(p[u])
                stack.append(p[u])
    return seen


# -- cases ------------------------------------------------------------------

@dataclass
class FuzzCase:
    seed: int
    family: str
    complex: FiniteComplex
    action: GroupAction
    expectation: str = "FixedPointExpected"

    def document(self):
        return {"seed": self.seed, "family": self.family,
                "complex": serialize_complex(self.complex),
                "action": serialize_action(self.action),
                "expectation": self.expectation}


def make_case(seed):
    rng = random.Random(seed)
    family = rng.choice(FAMILIES)
    X = generate_complex(rng.getrandbits(64), family)
    gens = automorphism_search(X)
    base = rng.choice(X.vertices)
    A = GroupAction(X, {f"g{i}": g for i, g in enumerate(gens)}, base)
    return FuzzCase(seed, family, X, A)


def case_seeds(n, seed0):
    rng = random.Random(seed0)
    return [rng.getrandbits(64) for _ in range(n)]


def corpus(n, seed0):
    return [make_case(s) for s in case_seeds(n, seed0)]


# -- invariant suites -------------------------------------------------------

class Skip(Exception):
    pass


def _crossing_families(X, hs, d):
    out = []

    def grow(fam, start):
        if fam:
            out.append(list(fam))
        if len(fam) == d:
            return
        for j in range(start, len(hs)):
            if all(crosses(X, hs[j], H) for H in fam):
                grow(fam + [hs[j]], j + 1)

    grow([], 0)
    return out


def suite_helly(case, rng):
    X = case.complex
    d = X.dimension
    for F in _crossing_families(X, hyperplanes(X), d):
        C = helly_common_cube(X, F)
        assert C.dim == len(F) and set(F) <= cube_hyperplanes(X, C), f"bad cube for {F}"


def suite_prop1(case, rng, samples=20):
    X = case.complex
    hs = hyperplanes(X)
    bound = prop1_bound(X.dimension)
    if len(hs) < bound:
        raise Skip
    for _ in range(samples):
        S = rng.sample(hs, rng.randint(bound, len(hs)))
        trip = find_disjoint_triple(X, S).hyperplanes
        assert len(set(trip)) == 3 and set(trip) <= set(S)
        for A, B in combinations(trip, 2):
            assert not crosses_brute(X, A, B), f"{A} crosses {B}"


def suite_theorem_a(case, rng):
    out = fixed_point_or_witness(case.complex, case.action)
    assert isinstance(out, FixedPoint), f"got {type(out).__name__}"
    for name in case.action.symmetric:
        assert stabilizes(case.action[name], out.cube), f"{name} moves the cube"


def suite_theta_oracle(case, rng):
    X = case.complex
    if len(X.vertices) > 40:
        raise Skip
    classes = square_classes(X)
    for e, f in combinations(X.edges, 2):
        same = classes[frozenset(e)] == classes[frozenset(f)]
        assert theta_related(X, e, f) == same, f"{e} vs {f}"


def suite_distance_count(case, rng):
    X = case.complex
    if len(X.vertices) > 40:
        raise Skip
    for x, y in combinations(X.vertices, 2):
        d = X.distance(x, y)
        hb = hyperplanes_between(X, x, y)
        assert len(hb) == d and len(set(hb)) == d, f"{x},{y}"
        assert set(separating(X, x, y)) == set(hb), f"{x},{y}"


def suite_exclusion(case, rng, words=5):
    X, A = case.complex, case.action
    samples = [(n,) for n in A.symmetric]
    if A.symmetric:
        samples += [tuple(rng.choice(A.symmetric) for _ in range(rng.randint(2, 6)))
                    for _ in range(words)]
    for w in samples:
        g = A.evaluate(w)
        hyp = hyperbolic_search(X, g, A.base, 8)
        ell = elliptic_search(X, g, A.base, 12)
        assert not (hyp and ell), f"word {w} certified both ways"
        assert ell is not None, f"word {w} has no invariant cube"


def suite_filtering(case, rng):
    A = case.action
    names = A.symmetric
    for _ in range(3):
        S = [A[n] for n in names if rng.random() < 0.5]
        T = [A[n] for n in names if rng.random() < 0.5]
        fix_intersection(case.complex, S, T)


SUITE_FUNCS = {
    "helly": suite_helly,
    "prop1": suite_prop1,
    "theorem_a": suite_theorem_a,
    "theta_oracle": suite_theta_oracle,
    "distance_count": suite_distance_count,
    "exclusion": suite_exclusion,
    "filtering": suite_filtering,
}


def run_fuzz(n_cases, seed0, suites):
    """Run the chosen suites over ``n_cases`` seeded cases; the report is plain JSON data."""
    suites = list(suites)
    if n_cases < 1:
        raise InvalidArguments("n_cases must be at least 1")
    if not suites:
        raise InvalidArguments("select at least one suite")
    unknown = [s for s in suites if s not in SUITE_FUNCS]
    if unknown:
        raise InvalidArguments(f"unknown suites {unknown}")
    results = {s: {"passed": 0, "failed": 0, "skipped": 0, "failures": []} for s in suites}
    for i, seed in enumerate(case_seeds(n_cases, seed0)):
        case = make_case(seed)
        for s in suites:
            rng = random.Random(f"{seed}:{s}")
            try:
                SUITE_FUNCS[s](case, rng)
            except Skip:
                results[s]["skipped"] += 1
            except Exception as exc:
                results[s]["failed"] += 1
                results[s]["failures"].append({"case": i, "seed": seed,
                                               "detail": f"{type(exc).__name__}: {exc}"})
            else:
                results[s]["passed"] += 1
    return {"n_cases": n_cases, "seed": seed0, "suites": results,
            "ok": all(r["failed"] == 0 for r in results.values())}
