"""Simple smooth lattice polytopes and their normal fans.

A polytope carries both descriptions at once: its vertices and its facet
data (primitive outer normal, support value, incident vertex indices).
`validate` checks the two against each other exactly; nothing here
computes convex hulls, and inconsistent input is reported, never
repaired.

Outer-normal convention throughout: the ray attached to a facet is the
primitive vector whose pairing the facet maximizes over the polytope,
and the maximal cone attached to a vertex collects the rays of the
facets through that vertex.  All values are immutable after
construction and every operation is a pure function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import RatMatrix, ZeroVector, dot, primitive


class InvalidPolytope(ValueError):
    """Polytope data failed validation; carries the report."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(p.message for p in report.problems))


class UnknownName(ValueError):
    """No builtin polytope under that name."""


class BadParams(ValueError):
    """Builtin polytope parameters out of range or malformed."""


class DocumentError(ValueError):
    """Polytope document is malformed or internally inconsistent."""


@dataclass(frozen=True)
class Facet:
    outer_normal: tuple[int, ...]
    support_value: Fraction
    vertex_set: frozenset[int]


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: tuple[tuple[int, ...], ...]
    facets: tuple[Facet, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)


@dataclass(frozen=True)
class Edge:
    """Vertex pair sharing exactly dim-1 facets.

    direction is primitive and oriented from the lower-index endpoint to
    the higher-index one.
    """

    endpoints: tuple[int, int]
    direction: tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    """Normal fan: rays indexed like facets, one maximal cone per vertex."""

    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def dim(self) -> int:
        return len(self.rays[0]) if self.rays else 0


@dataclass(frozen=True)
class Problem:
    kind: str  # structure | support | duplicate | simplicity | dimension
    message: str


@dataclass
class ValidationReport:
    problems: list[Problem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def kinds(self) -> set[str]:
        return {p.kind for p in self.problems}


@dataclass(frozen=True)
class SmoothnessResult:
    ok: bool
    witness_vertex: int | None = None
    determinant: Fraction | None = None


def make_polytope(dim: int, vertices: Iterable[Sequence[int]],
                  facets: Iterable[tuple[Sequence[int], object, Iterable[int]]]) -> Polytope:
    """Build a Polytope from plain data.

    facets is an iterable of (normal, support, vertex_indices) triples.
    Construction is permissive; run validate() to check the geometry.
    """
    vs = tuple(tuple(int(x) for x in v) for v in vertices)
    fs = tuple(Facet(tuple(int(x) for x in n), Fraction(s), frozenset(int(i) for i in ix))
               for n, s, ix in facets)
    return Polytope(dim=int(dim), vertices=vs, facets=fs)


def validate(p: Polytope) -> ValidationReport:
    """Check the facet description against the vertex list, exactly.

    Reported problems carry a kind: structural defects and mutually
    inconsistent vertex/facet data ("structure", "support", "duplicate")
    versus geometric hypotheses that well-formed data can still fail
    ("simplicity", "dimension").
    """
    rep = ValidationReport()
    say = lambda kind, msg: rep.problems.append(Problem(kind, msg))

    if p.dim < 1:
        say("structure", f"dimension must be >= 1, got {p.dim}")
        return rep
    for i, v in enumerate(p.vertices):
        if len(v) != p.dim:
            say("structure", f"vertex {i} has {len(v)} coordinates, expected {p.dim}")
    if rep.problems:
        return rep  # pairings below assume vertices of the right shape
    if len(p.vertices) < p.dim + 1:
        say("structure",
            f"need at least {p.dim + 1} vertices for a full-dimensional polytope, "
            f"got {len(p.vertices)}")
    seen: dict[tuple[int, ...], int] = {}
    for i, v in enumerate(p.vertices):
        if v in seen:
            say("duplicate", f"vertex {i} duplicates vertex {seen[v]}: {v}")
        else:
            seen[v] = i

    normals_seen: dict[tuple[int, ...], int] = {}
    for k, f in enumerate(p.facets):
        if len(f.outer_normal) != p.dim:
            say("structure", f"facet {k} normal has wrong length")
            continue
        if all(x == 0 for x in f.outer_normal):
            say("structure", f"facet {k} has zero normal")
            continue
        if primitive(f.outer_normal) != f.outer_normal:
            say("structure", f"facet {k} normal {f.outer_normal} is not primitive")
        if f.outer_normal in normals_seen:
            say("structure",
                f"facet {k} repeats the normal of facet {normals_seen[f.outer_normal]}")
        else:
            normals_seen[f.outer_normal] = k
        bad_index = [i for i in f.vertex_set if not 0 <= i < len(p.vertices)]
        if bad_index:
            say("structure", f"facet {k} lists unknown vertex indices {sorted(bad_index)}")
            continue
        values = [dot(f.outer_normal, v) for v in p.vertices]
        top = max(values, default=Fraction(0))
        if top != f.support_value:
            say("support",
                f"facet {k} (normal {f.outer_normal}): support {f.support_value} "
                f"is not the maximum over vertices, which is {top}")
            continue
        attained = {i for i, val in enumerate(values) if val == f.support_value}
        for i in sorted(f.vertex_set - attained):
            say("support",
                f"facet {k} (normal {f.outer_normal}): listed vertex {i} "
                f"{p.vertices[i]} does not attain support {f.support_value}")
        for i in sorted(attained - f.vertex_set):
            say("support",
                f"facet {k} (normal {f.outer_normal}): support attained at vertex "
                f"{i} {p.vertices[i]} which is missing from the facet's vertex list")

    if not rep.problems:
        counts = [0] * len(p.vertices)
        for f in p.facets:
            for i in f.vertex_set:
                counts[i] += 1
        for i, c in enumerate(counts):
            if c != p.dim:
                say("simplicity",
                    f"vertex {i} {p.vertices[i]} lies on {c} facets, expected "
                    f"{p.dim} (polytope is not simple)")
        v0 = p.vertices[0]
        diffs = RatMatrix([[x - y for x, y in zip(v, v0)] for v in p.vertices[1:]])
        if diffs.rank() != p.dim:
            say("dimension",
                f"vertices span a {diffs.rank()}-dimensional affine subspace, "
                f"expected {p.dim}")
    return rep


def require_valid(p: Polytope) -> None:
    rep = validate(p)
    if not rep.ok:
        raise InvalidPolytope(rep)


def support_value(p: Polytope, xi: Sequence[int]) -> Fraction:
    """Maximum of <xi, .> over the vertices (0 for an empty vertex list)."""
    vals = [dot(xi, v) for v in p.vertices]
    return max(vals) if vals else Fraction(0)


def vertex_facets(p: Polytope) -> tuple[tuple[int, ...], ...]:
    """Facet indices through each vertex, in facet order."""
    out: list[list[int]] = [[] for _ in p.vertices]
    for k, f in enumerate(p.facets):
        for i in f.vertex_set:
            out[i].append(k)
    return tuple(tuple(fs) for fs in out)


def edges(p: Polytope) -> tuple[Edge, ...]:
    """All edges: unordered vertex pairs sharing exactly dim-1 facets."""
    require_valid(p)
    vf = [frozenset(fs) for fs in vertex_facets(p)]
    out = []
    for i, j in itertools.combinations(range(len(p.vertices)), 2):
        if len(vf[i] & vf[j]) == p.dim - 1:
            direction = primitive(tuple(b - a for a, b in zip(p.vertices[i], p.vertices[j])))
            out.append(Edge(endpoints=(i, j), direction=direction))
    per_vertex = [0] * len(p.vertices)
    for e in out:
        per_vertex[e.endpoints[0]] += 1
        per_vertex[e.endpoints[1]] += 1
    assert all(c == p.dim for c in per_vertex), "each vertex must meet exactly dim edges"
    return tuple(out)


def normal_fan(p: Polytope) -> Fan:
    """Rays are the facet normals (same index); one maximal cone per vertex."""
    require_valid(p)
    rays = tuple(f.outer_normal for f in p.facets)
    cones = tuple((i, fs) for i, fs in enumerate(vertex_facets(p)))
    return Fan(rays=rays, max_cones=cones)


def is_smooth(fan: Fan) -> SmoothnessResult:
    """Every maximal cone's ray matrix must have determinant +-1.

    On failure the witness is the first offending cone's vertex index and
    the actual determinant.
    """
    for vidx, ray_ix in fan.max_cones:
        m = RatMatrix([fan.rays[r] for r in ray_ix])
        d = m.det()
        if d not in (1, -1):
            return SmoothnessResult(ok=False, witness_vertex=vidx, determinant=d)
    return SmoothnessResult(ok=True)


# ---------------------------------------------------------------------------
# builtin polytopes

def cp2() -> Polytope:
    return make_polytope(
        2,
        [(1, 1), (-2, 1), (1, -2)],
        [((1, 0), 1, (0, 2)),
         ((0, 1), 1, (0, 1)),
         ((-1, -1), 1, (1, 2))],
    )


def cp1xcp1() -> Polytope:
    return make_polytope(
        2,
        [(1, 1), (-1, 1), (-1, -1), (1, -1)],
        [((1, 0), 1, (0, 3)),
         ((0, 1), 1, (0, 1)),
         ((-1, 0), 1, (1, 2)),
         ((0, -1), 1, (2, 3))],
    )


def segment(a: int, b: int) -> Polytope:
    if a >= b:
        raise BadParams(f"segment needs a < b, got ({a}, {b})")
    return make_polytope(1, [(a,), (b,)], [((1,), b, (1,)), ((-1,), -a, (0,))])


def simplex(d: int, scale: int = 1) -> Polytope:
    """conv{0, scale*e_1, ..., scale*e_d}."""
    if d < 1 or scale < 1:
        raise BadParams(f"simplex needs d >= 1 and scale >= 1, got ({d}, {scale})")
    verts = [(0,) * d] + [tuple(scale * int(i == j) for j in range(d)) for i in range(d)]
    facets = []
    for i in range(d):
        normal = tuple(-int(i == j) for j in range(d))
        members = [0] + [k for k in range(1, d + 1) if k != i + 1]
        facets.append((normal, 0, members))
    facets.append(((1,) * d, scale, range(1, d + 1)))
    return make_polytope(d, verts, facets)


def cube(d: int, scale: int = 1) -> Polytope:
    """[0, scale]^d, vertices in lexicographic order."""
    if d < 1 or scale < 1:
        raise BadParams(f"cube needs d >= 1 and scale >= 1, got ({d}, {scale})")
    verts = list(itertools.product((0, scale), repeat=d))
    index = {v: i for i, v in enumerate(verts)}
    facets = []
    for i in range(d):
        normal = tuple(int(i == j) for j in range(d))
        facets.append((normal, scale, [index[v] for v in verts if v[i] == scale]))
    for i in range(d):
        normal = tuple(-int(i == j) for j in range(d))
        facets.append((normal, 0, [index[v] for v in verts if v[i] == 0]))
    return make_polytope(d, verts, facets)


def hirzebruch(k: int) -> Polytope:
    """conv{(0,0), (k+1,0), (1,1), (0,1)}; k = 0 is the unit square."""
    if k < 0:
        raise BadParams(f"hirzebruch needs k >= 0, got {k}")
    return make_polytope(
        2,
        [(0, 0), (k + 1, 0), (1, 1), (0, 1)],
        [((0, -1), 0, (0, 1)),
         ((-1, 0), 0, (0, 3)),
         ((0, 1), 1, (2, 3)),
         ((1, k), k + 1, (1, 2))],
    )


def product(p: Polytope, q: Polytope) -> Polytope:
    """Cartesian product; p's coordinates and facets come first."""
    nq = q.n_vertices
    verts = [pv + qv for pv in p.vertices for qv in q.vertices]
    zeros_q = (0,) * q.dim
    zeros_p = (0,) * p.dim
    facets = []
    for f in p.facets:
        members = [i * nq + j for i in f.vertex_set for j in range(nq)]
        facets.append((f.outer_normal + zeros_q, f.support_value, members))
    for f in q.facets:
        members = [i * nq + j for i in range(p.n_vertices) for j in f.vertex_set]
        facets.append((zeros_p + f.outer_normal, f.support_value, members))
    return make_polytope(p.dim + q.dim, verts, facets)


_BUILTIN_ARITY = {
    "cp2": (0, 0), "cp1xcp1": (0, 0), "segment": (2, 2),
    "simplex": (1, 2), "cube": (1, 2), "hirzebruch": (1, 1), "product": (2, 2),
}


def builtin(name: str, *args) -> Polytope:
    """Dispatch to a builtin polytope constructor by name."""
    if name not in _BUILTIN_ARITY:
        raise UnknownName(f"unknown builtin polytope {name!r}; known: "
                          + ", ".join(sorted(_BUILTIN_ARITY)))
    lo, hi = _BUILTIN_ARITY[name]
    if not lo <= len(args) <= hi:
        raise BadParams(f"builtin {name!r} takes {lo}..{hi} parameters, got {len(args)}")
    fn = {"cp2": cp2, "cp1xcp1": cp1xcp1, "segment": segment, "simplex": simplex,
          "cube": cube, "hirzebruch": hirzebruch, "product": product}[name]
    return fn(*args)


def builtin_from_uri(uri: str) -> Polytope:
    """Parse a "builtin:<name>[:params]" URI.

    Numeric parameters are comma-separated: builtin:simplex:3,2.  A
    product takes two sub-specs (without the "builtin:" prefix) joined
    by "|": builtin:product:segment:0,1|segment:0,1.  Products nest only
    one level deep in URI form; use the library API for more.
    """
    if not uri.startswith("builtin:"):
        raise UnknownName(f"not a builtin URI: {uri!r}")
    return _builtin_from_spec(uri[len("builtin:"):])


def _builtin_from_spec(spec: str) -> Polytope:
    name, _, params = spec.partition(":")
    if name == "product":
        parts = params.split("|")
        if len(parts) != 2 or not all(parts):
            raise BadParams("product URI needs two sub-specs joined by '|', e.g. "
                            "builtin:product:segment:0,1|segment:0,1")
        return product(_builtin_from_spec(parts[0]), _builtin_from_spec(parts[1]))
    args: list[int] = []
    if params:
        for piece in params.split(","):
            try:
                args.append(int(piece))
            except ValueError:
                raise BadParams(f"non-integer parameter {piece!r} in builtin spec {spec!r}")
    return builtin(name, *args)


# ---------------------------------------------------------------------------
# JSON documents

def polytope_to_doc(p: Polytope) -> dict:
    """Plain-data document; rationals rendered as "p/q" strings."""
    return {
        "dim": p.dim,
        "vertices": [list(v) for v in p.vertices],
        "facets": [
            {"normal": list(f.outer_normal),
             "support": str(f.support_value),
             "vertices": sorted(f.vertex_set)}
            for f in p.facets
        ],
    }


def _as_int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: expected an integer, got {x!r}")
    return x


def _as_rat(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise DocumentError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"{where}: cannot parse rational {x!r}")
    raise DocumentError(f"{where}: expected a rational, got {x!r}")


def polytope_from_doc(doc: object) -> Polytope:
    """Parse and fully check a polytope document.

    Raises DocumentError on malformed structure, non-integer vertices, or
    facet data inconsistent with the vertex list (support not the actual
    maximum, or attained off the listed vertices).  Geometric hypotheses
    that clean data can still fail (simplicity, full dimension) are left
    to validate()/downstream checks.
    """
    if not isinstance(doc, dict):
        raise DocumentError(f"polytope document must be an object, got {type(doc).__name__}")
    for key in ("dim", "vertices", "facets"):
        if key not in doc:
            raise DocumentError(f"polytope document is missing {key!r}")
    dim = _as_int(doc["dim"], "dim")
    if dim < 1:
        raise DocumentError(f"dim: must be >= 1, got {dim}")
    if not isinstance(doc["vertices"], list) or not doc["vertices"]:
        raise DocumentError("vertices: expected a non-empty list")
    vertices = []
    for i, v in enumerate(doc["vertices"]):
        if not isinstance(v, list) or len(v) != dim:
            raise DocumentError(f"vertices[{i}]: expected a list of {dim} integers")
        vertices.append(tuple(_as_int(x, f"vertices[{i}][{j}]") for j, x in enumerate(v)))
    if not isinstance(doc["facets"], list) or not doc["facets"]:
        raise DocumentError("facets: expected a non-empty list")
    facets = []
    for k, f in enumerate(doc["facets"]):
        if not isinstance(f, dict):
            raise DocumentError(f"facets[{k}]: expected an object")
        for key in ("normal", "support", "vertices"):
            if key not in f:
                raise DocumentError(f"facets[{k}] is missing {key!r}")
        normal = f["normal"]
        if not isinstance(normal, list) or len(normal) != dim:
            raise DocumentError(f"facets[{k}].normal: expected a list of {dim} integers")
        normal = tuple(_as_int(x, f"facets[{k}].normal[{j}]") for j, x in enumerate(normal))
        support = _as_rat(f["support"], f"facets[{k}].support")
        members = f["vertices"]
        if not isinstance(members, list):
            raise DocumentError(f"facets[{k}].vertices: expected a list of indices")
        members = [_as_int(x, f"facets[{k}].vertices[{j}]") for j, x in enumerate(members)]
        facets.append((normal, support, members))
    p = make_polytope(dim, vertices, facets)
    rep = validate(p)
    hard = [pr for pr in rep.problems if pr.kind in ("structure", "support", "duplicate")]
    if hard:
        raise DocumentError("inconsistent polytope document: "
                            + "; ".join(pr.message for pr in hard))
    return p
