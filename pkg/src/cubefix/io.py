"""JSON documents for complexes, actions and results, plus DOT export.

Parsing is strict: unknown keys, wrong types and dangling vertex references
raise :class:`SchemaError` carrying a JSON-path-like location.
"""

import json
from fractions import Fraction

from .actions import (AffineAut, CapExceeded, Elliptic, GroupAction, Hyperbolic, Orbit,
                      PermutationAut, ProductAut, Undecided, verify_automorphism)
from .complex import Cube, FiniteComplex, LatticeComplex, ProductComplex, verify_median_graph
from .errors import InvalidInput, NotMedianGraph, SchemaError
from .hyperplanes import (Hyperplane, axis_wall, factor_of, hyperplane_of, lattice_wall, lift,
                          members)
from .theorem_a import FixedPoint, HyperbolicWitness


def _check_keys(doc, path, required, optional=()):
    if not isinstance(doc, dict):
        raise SchemaError(path, f"expected an object, got {type(doc).__name__}")
    for k in doc:
        if k not in required and k not in optional:
            raise SchemaError(f"{path}.{k}", "unknown key")
    for k in required:
        if k not in doc:
            raise SchemaError(f"{path}.{k}", "missing key")


def _int(x, path):
    if type(x) is not int:
        raise SchemaError(path, f"expected an integer, got {x!r}")
    return x


def _tupleize(x):
    if isinstance(x, list):
        return tuple(_tupleize(y) for y in x)
    return x


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(y) for y in x]
    return x


# -- complexes --------------------------------------------------------------

def parse_complex(doc, unchecked=False, path="$"):
    """Build a complex from its JSON document; finite graphs must be median unless ``unchecked``."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise SchemaError(f"{path}.type", "missing key")
    kind = doc["type"]
    if kind == "finite":
        _check_keys(doc, path, ("type", "vertices", "edges"), ("name", "dimension"))
        vs = doc["vertices"]
        if not isinstance(vs, list) or not vs:
            raise SchemaError(f"{path}.vertices", "expected a non-empty list")
        seen = set()
        for i, v in enumerate(vs):
            if not isinstance(v, str):
                raise SchemaError(f"{path}.vertices[{i}]", "vertex names must be strings")
            if v in seen:
                raise SchemaError(f"{path}.vertices[{i}]", f"duplicate vertex {v!r}")
            seen.add(v)
        if not isinstance(doc["edges"], list):
            raise SchemaError(f"{path}.edges", "expected a list")
        edges = []
        for i, e in enumerate(doc["edges"]):
            if not isinstance(e, list) or len(e) != 2:
                raise SchemaError(f"{path}.edges[{i}]", "expected a pair")
            for j, v in enumerate(e):
                if v not in seen:
                    raise SchemaError(f"{path}.edges[{i}][{j}]", f"unknown vertex {v!r}")
            if e[0] == e[1]:
                raise SchemaError(f"{path}.edges[{i}]", "loop")
            edges.append(tuple(e))
        X = FiniteComplex(vs, edges, name=doc.get("name"))
        if not unchecked:
            bad = verify_median_graph(X)
            if bad is not None:
                raise NotMedianGraph(bad)
    elif kind == "lattice":
        _check_keys(doc, path, ("type", "rank"), ("name", "dimension"))
        rank = _int(doc["rank"], f"{path}.rank")
        if rank < 1:
            raise SchemaError(f"{path}.rank", "rank must be positive")
        X = LatticeComplex(rank)
    elif kind == "product":
        _check_keys(doc, path, ("type", "factors"), ("name", "dimension"))
        fs = doc["factors"]
        if not isinstance(fs, list) or len(fs) != 2:
            raise SchemaError(f"{path}.factors", "expected exactly two factors")
        X = ProductComplex(*(parse_complex(f, unchecked, f"{path}.factors[{i}]")
                             for i, f in enumerate(fs)))
    else:
        raise SchemaError(f"{path}.type", f"unknown complex type {kind!r}")
    X.name = doc.get("name")
    if "dimension" in doc and _int(doc["dimension"], f"{path}.dimension") != X.dimension:
        raise SchemaError(f"{path}.dimension",
                          f"declared {doc['dimension']}, computed {X.dimension}")
    return X


def serialize_complex(X):
    if isinstance(X, FiniteComplex):
        doc = {"type": "finite", "vertices": [_listify(v) for v in X.vertices],
               "edges": [[_listify(a), _listify(b)] for a, b in X.edges]}
    elif isinstance(X, LatticeComplex):
        doc = {"type": "lattice", "rank": X.rank}
    elif isinstance(X, ProductComplex):
        doc = {"type": "product", "factors": [serialize_complex(f) for f in X.factors]}
    else:
        raise TypeError(f"unsupported complex {X!r}")
    if getattr(X, "name", None):
        doc["name"] = X.name
    return doc


def load_complex(path, unchecked=False):
    with open(path) as fh:
        return parse_complex(json.load(fh), unchecked)


# -- vertices and hyperplanes -----------------------------------------------

def encode_vertex(X, v):
    if isinstance(X, ProductComplex):
        return [encode_vertex(X.factors[0], v[0]), encode_vertex(X.factors[1], v[1])]
    return _listify(v)


def decode_vertex(X, obj, path="$"):
    if isinstance(X, ProductComplex):
        if not isinstance(obj, list) or len(obj) != 2:
            raise SchemaError(path, "product vertices are [first, second] pairs")
        return (decode_vertex(X.factors[0], obj[0], f"{path}[0]"),
                decode_vertex(X.factors[1], obj[1], f"{path}[1]"))
    if isinstance(X, LatticeComplex):
        if not isinstance(obj, list) or len(obj) != X.rank:
            raise SchemaError(path, f"lattice vertices are lists of {X.rank} integers")
        return tuple(_int(c, f"{path}[{i}]") for i, c in enumerate(obj))
    v = _tupleize(obj)
    try:
        known = X.contains(v)
    except TypeError:
        known = False
    if not known:
        raise SchemaError(path, f"unknown vertex {obj!r}")
    return v


def parse_vertex_arg(X, text):
    """A CLI vertex argument: JSON if it parses, else a bare finite vertex name."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = text
    if isinstance(X, FiniteComplex) and not isinstance(obj, (list, str)):
        obj = text
    return decode_vertex(X, obj, "vertex")


def encode_hyperplane(X, H):
    if isinstance(X, LatticeComplex):
        axis, wall = axis_wall(H)
        return {"axis": axis, "wall": wall}
    if isinstance(X, ProductComplex):
        i, F = factor_of(X, H)
        return {"factor": i, "hyperplane": encode_hyperplane(X.factors[i], F)}
    return [encode_vertex(X, H.tail), encode_vertex(X, H.head)]


def decode_hyperplane(X, obj, path="$"):
    if isinstance(X, LatticeComplex):
        _check_keys(obj, path, ("axis", "wall"))
        axis = _int(obj["axis"], f"{path}.axis")
        if not 0 <= axis < X.rank:
            raise SchemaError(f"{path}.axis", "axis out of range")
        return lattice_wall(X.rank, axis, _int(obj["wall"], f"{path}.wall"))
    if isinstance(X, ProductComplex):
        _check_keys(obj, path, ("factor", "hyperplane"))
        i = _int(obj["factor"], f"{path}.factor")
        if i not in (0, 1):
            raise SchemaError(f"{path}.factor", "factor must be 0 or 1")
        return lift(X, i, decode_hyperplane(X.factors[i], obj["hyperplane"], f"{path}.hyperplane"))
    if not isinstance(obj, list) or len(obj) != 2:
        raise SchemaError(path, "finite hyperplanes are given by an edge [a, b]")
    a, b = (decode_vertex(X, o, f"{path}[{i}]") for i, o in enumerate(obj))
    if not X.adjacent(a, b):
        raise SchemaError(path, f"{obj!r} is not an edge")
    return hyperplane_of(X, (a, b))


# -- actions ----------------------------------------------------------------

def parse_automorphism(X, doc, path):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError(f"{path}.kind", "missing key")
    kind = doc["kind"]
    if kind == "permutation":
        _check_keys(doc, path, ("kind", "map"))
        if not isinstance(X, FiniteComplex):
            raise SchemaError(path, "permutations act on finite complexes only")
        raw = doc["map"]
        pairs = raw.items() if isinstance(raw, dict) else raw
        if not isinstance(pairs, (list, type({}.items()))):
            raise SchemaError(f"{path}.map", "expected an object or a list of pairs")
        table = {v: v for v in X.vertices}
        for i, pair in enumerate(pairs):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise SchemaError(f"{path}.map[{i}]", "expected a pair")
            src = decode_vertex(X, pair[0], f"{path}.map[{i}][0]")
            table[src] = decode_vertex(X, pair[1], f"{path}.map[{i}][1]")
        return PermutationAut(table)
    if kind == "affine":
        _check_keys(doc, path, ("kind", "signs", "perm", "translate"))
        if not isinstance(X, LatticeComplex):
            raise SchemaError(path, "affine maps act on lattices only")
        fields = []
        for k in ("signs", "perm", "translate"):
            val = doc[k]
            if not isinstance(val, list) or len(val) != X.rank:
                raise SchemaError(f"{path}.{k}", f"expected {X.rank} integers")
            fields.append(tuple(_int(c, f"{path}.{k}[{i}]") for i, c in enumerate(val)))
        return AffineAut(*fields)
    if kind == "product":
        _check_keys(doc, path, ("kind", "first", "second"), ("swap",))
        if not isinstance(X, ProductComplex):
            raise SchemaError(path, "product maps act on product complexes only")
        swap = doc.get("swap", False)
        if not isinstance(swap, bool):
            raise SchemaError(f"{path}.swap", "expected a boolean")
        F0, F1 = X.factors
        first = parse_automorphism(F1 if swap else F0, doc["first"], f"{path}.first")
        second = parse_automorphism(F0 if swap else F1, doc["second"], f"{path}.second")
        return ProductAut(first, second, swap)
    raise SchemaError(f"{path}.kind", f"unknown automorphism kind {kind!r}")


def serialize_automorphism(X, g):
    if isinstance(g, PermutationAut):
        if all(isinstance(v, str) for v in X.vertices):
            return {"kind": "permutation", "map": {v: g(v) for v in X.vertices}}
        return {"kind": "permutation",
                "map": [[encode_vertex(X, v), encode_vertex(X, g(v))] for v in X.vertices]}
    if isinstance(g, AffineAut):
        return {"kind": "affine", "signs": list(g.signs), "perm": list(g.perm),
                "translate": list(g.translate)}
    F0, F1 = X.factors
    return {"kind": "product", "swap": g.swap,
            "first": serialize_automorphism(F1 if g.swap else F0, g.first),
            "second": serialize_automorphism(F0 if g.swap else F1, g.second)}


def parse_action(X, doc, path="$"):
    _check_keys(doc, path, ("generators",), ("base",))
    gens = doc["generators"]
    if not isinstance(gens, dict):
        raise SchemaError(f"{path}.generators", "expected an object")
    parsed = {}
    for name, g in gens.items():
        where = f"{path}.generators.{name}"
        if not name or any(c in name for c in ", \t"):
            raise SchemaError(where, "generator names may not be empty or contain separators")
        aut = parse_automorphism(X, g, where)
        bad = verify_automorphism(X, aut)
        if bad is not None:
            raise SchemaError(where, f"not an automorphism (violation at {bad!r})")
        parsed[name] = aut
    base = decode_vertex(X, doc["base"], f"{path}.base") if "base" in doc else None
    try:
        return GroupAction(X, parsed, base)
    except InvalidInput as exc:
        raise SchemaError(f"{path}.generators", str(exc)) from None


def serialize_action(A, names=None):
    X = A.complex
    names = A.given if names is None else names
    return {"generators": {n: serialize_automorphism(X, A[n]) for n in names},
            "base": encode_vertex(X, A.base)}


def load_action(X, path):
    with open(path) as fh:
        return parse_action(X, json.load(fh))


def parse_word(text):
    return tuple(t for t in text.replace(",", " ").split() if t)


# -- results ----------------------------------------------------------------

def encode_cube(X, C):
    return {"dim": C.dim, "vertices": [encode_vertex(X, v) for v in C.vertices]}


def encode_certificate(X, cert):
    if isinstance(cert, Elliptic):
        return {"kind": "elliptic", "cube": encode_cube(X, cert.cube)}
    if isinstance(cert, Hyperbolic):
        return {"kind": "hyperbolic", "hyperplane": encode_hyperplane(X, cert.hyperplane),
                "triple": [encode_hyperplane(X, H) for H in cert.triple],
                "power": cert.power, "sides": list(cert.sides)}
    if isinstance(cert, Undecided):
        return {"kind": "undecided", "report": encode_report(X, cert.report)}
    raise TypeError(f"not a certificate: {cert!r}")


def encode_report(X, report):
    out = {}
    for k, val in report.items():
        if isinstance(val, Hyperplane):
            val = encode_hyperplane(X, val)
        elif k == "triple":
            val = [encode_hyperplane(X, H) for H in val]
        elif k == "candidates":
            val = [{"label": lab, "word": list(w), "result": res} for lab, w, res in val]
        elif isinstance(val, tuple):
            val = list(val)
        out[k] = val
    return out


def encode_outcome(X, outcome):
    if isinstance(outcome, FixedPoint):
        return {"outcome": "fixed_point", "cube": encode_cube(X, outcome.cube),
                "report": encode_report(X, outcome.report)}
    if isinstance(outcome, HyperbolicWitness):
        return {"outcome": "hyperbolic_witness", "word": list(outcome.word),
                "label": outcome.label,
                "certificate": encode_certificate(X, outcome.certificate),
                "report": encode_report(X, outcome.report)}
    if isinstance(outcome, Undecided):
        return {"outcome": "undecided", "report": encode_report(X, outcome.report)}
    raise TypeError(f"not an outcome: {outcome!r}")


def encode_orbit(X, result):
    if isinstance(result, Orbit):
        items = sorted(result.words.items(), key=lambda kv: X.key(kv[0]))
        return {"complete": True, "size": len(items),
                "orbit": [{"vertex": encode_vertex(X, v), "word": list(w)} for v, w in items]}
    if isinstance(result, CapExceeded):
        return {"complete": False, "explored": result.explored,
                "farthest": encode_vertex(X, result.farthest), "word": list(result.word)}
    raise TypeError(f"not an orbit result: {result!r}")


def encode_fraction(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2)


# -- DOT --------------------------------------------------------------------

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
           "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _dot_id(X, v):
    return json.dumps(json.dumps(encode_vertex(X, v)) if not isinstance(v, str) else v)


def export_dot(X, hyperplanes=False, cube=None, orbit=None):
    """Deterministic DOT text for a finite complex, with optional overlays."""
    if not isinstance(X, FiniteComplex):
        raise InvalidInput("DOT export needs a finite complex")
    name = getattr(X, "name", None) or "complex"
    lines = [f"graph {json.dumps(name)} {{", "  node [shape=circle];"]
    in_cube = cube.vertex_set if cube is not None else frozenset()
    in_orbit = set(orbit or ())
    for v in X.vertices:
        attrs = []
        if v in in_cube:
            attrs += ['style=filled', 'fillcolor="#ffd700"']
        if v in in_orbit:
            attrs.append("shape=doublecircle")
        lines.append(f"  {_dot_id(X, v)}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    colour = {}
    if hyperplanes:
        from .hyperplanes import hyperplanes as all_hyperplanes
        for i, H in enumerate(all_hyperplanes(X)):
            for e in members(X, H):
                colour[e] = (i, PALETTE[i % len(PALETTE)])
    for a, b in X.edges:
        attr = ""
        if (a, b) in colour:
            i, c = colour[a, b]
            attr = f' [color="{c}", label="H{i}"]'
        lines.append(f"  {_dot_id(X, a)} -- {_dot_id(X, b)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
