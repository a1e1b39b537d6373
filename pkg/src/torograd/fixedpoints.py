"""Fixed-point data of a polytope under a generic integer direction.

Vertices of a simple smooth polytope play the role of fixed points.  For
a vertex v on a facet F there is a distinguished edge vector: the vector
along the unique edge at v that leaves F, scaled so it pairs to 1 with
F's outer normal.  Equivalently it is a column of the inverse of the
matrix of facet normals through v; both constructions are computed here
and asserted to agree.

The table evaluates, for every ray and vertex, the pairing of the chosen
direction gamma with that edge vector (zero when the vertex is off the
facet), together with the vertex pairing <gamma, v> itself.  Reading the
table columnwise embeds the fixed points into ray space; Morse indices
are read off the sign pattern of that embedding and cross-checked
against a count over edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import RatMatrix, dot, primitive, vec_scale
from .polytope import Edge, Fan, Polytope, edges, is_smooth, normal_fan, vertex_facets


class NotGeneric(ValueError):
    """Direction pairs to zero with some edge; carries the witness edge."""

    def __init__(self, gamma, edge: Edge):
        self.gamma = tuple(gamma)
        self.edge = edge
        super().__init__(
            f"direction {self.gamma} pairs to zero with edge "
            f"{edge.endpoints} of direction {edge.direction}")


class NotSmooth(ValueError):
    """Some maximal cone's ray matrix has determinant != +-1."""

    def __init__(self, vertex_index: int, determinant: Fraction):
        self.vertex_index = vertex_index
        self.determinant = determinant
        super().__init__(
            f"cone at vertex {vertex_index} has ray determinant {determinant}, "
            f"expected +-1")


class NotIncident(ValueError):
    """The vertex does not lie on the facet."""


@dataclass(frozen=True)
class GenericityResult:
    ok: bool
    witness: Edge | None = None


@dataclass
class FixedPointTable:
    """Everything the downstream ring computations consume.

    f is indexed [ray][vertex]; f_delta[vertex] = <gamma, vertex>;
    u_vectors maps (vertex index, facet index) to the edge vector.
    """

    polytope: Polytope
    fan: Fan
    gamma: tuple[int, ...]
    f: RatMatrix
    f_delta: tuple[Fraction, ...]
    u_vectors: dict[tuple[int, int], tuple[Fraction, ...]]

    @property
    def n_rays(self) -> int:
        return len(self.fan.rays)

    @property
    def n_vertices(self) -> int:
        return self.polytope.n_vertices


def is_generic(p: Polytope, gamma: Sequence[int]) -> GenericityResult:
    """True iff gamma pairs to a nonzero value with every edge direction."""
    g = tuple(int(x) for x in gamma)
    if len(g) != p.dim:
        raise ValueError(f"direction has {len(g)} coordinates, expected {p.dim}")
    for e in edges(p):
        if dot(g, e.direction) == 0:
            return GenericityResult(ok=False, witness=e)
    return GenericityResult(ok=True)


def _shell(dim: int, radius: int):
    """Integer vectors of max-norm exactly `radius`, lexicographic order."""
    for v in itertools.product(range(-radius, radius + 1), repeat=dim):
        if max(abs(x) for x in v) == radius:
            yield v


def sample_generic(p: Polytope, seed: int = 0) -> tuple[int, ...]:
    """Deterministic generic direction: the seed-th hit of a fixed scan.

    Candidates are enumerated in a fixed order, max-norm shells of radius
    1, 2, 3, ... with each shell in lexicographic coordinate order, and
    the ones passing is_generic are kept.  Seed n returns the (n+1)-th
    keeper, so equal (polytope, seed) pairs always give the same answer
    and distinct seeds always give distinct directions.
    """
    if seed < 0:
        raise ValueError(f"seed must be >= 0, got {seed}")
    skip = seed
    for radius in range(1, 1000):
        for cand in _shell(p.dim, radius):
            if not is_generic(p, cand).ok:
                continue
            if skip > 0:
                skip -= 1
                continue
            return cand
    raise RuntimeError("no generic direction found; is the polytope valid?")


def _leaving_edge_u(p: Polytope, edge_list: Sequence[Edge], vertex_index: int,
                    facet_index: int) -> tuple[Fraction, ...]:
    """Edge-based construction of the distinguished vector at (vertex, facet)."""
    facet = p.facets[facet_index]
    leaving = []
    for e in edge_list:
        if vertex_index in e.endpoints:
            other = e.endpoints[1] if e.endpoints[0] == vertex_index else e.endpoints[0]
            if other not in facet.vertex_set:
                leaving.append((e, other))
    assert len(leaving) == 1, "exactly one edge at the vertex must leave the facet"
    _, other = leaving[0]
    w = primitive(tuple(b - a for a, b in
                        zip(p.vertices[vertex_index], p.vertices[other])))
    pairing = dot(facet.outer_normal, w)
    assert pairing != 0, "edge leaving the facet cannot be parallel to it"
    return vec_scale(1 / pairing, w)


def edge_vector(p: Polytope, vertex_index: int, facet_index: int) -> tuple[Fraction, ...]:
    """Distinguished edge vector u at a vertex-facet incidence.

    u runs along the unique edge at the vertex not contained in the
    facet and satisfies <u, outer_normal> = 1.  Raises NotIncident when
    the vertex is off the facet.
    """
    facet = p.facets[facet_index]
    if vertex_index not in facet.vertex_set:
        raise NotIncident(f"vertex {vertex_index} is not on facet {facet_index}")
    u = _leaving_edge_u(p, edges(p), vertex_index, facet_index)
    # independent route: column of the inverse of the cone's normal matrix
    incident = vertex_facets(p)[vertex_index]
    inv = RatMatrix([p.facets[k].outer_normal for k in incident]).inverse()
    u_dual = inv.col(incident.index(facet_index))
    assert u == u_dual, "edge construction and dual-basis column must agree"
    return u


def f_table(p: Polytope, gamma: Sequence[int]) -> FixedPointTable:
    """Build the full ray-by-vertex table for a generic direction.

    Raises NotSmooth / NotGeneric (and propagates validation failures via
    the normal fan).
    """
    fan = normal_fan(p)
    sm = is_smooth(fan)
    if not sm.ok:
        raise NotSmooth(sm.witness_vertex, sm.determinant)
    g = tuple(int(x) for x in gamma)
    gen = is_generic(p, g)
    if not gen.ok:
        raise NotGeneric(g, gen.witness)

    edge_list = edges(p)
    n_rays, n_verts = len(fan.rays), p.n_vertices
    rows = [[Fraction(0)] * n_verts for _ in range(n_rays)]
    u_vectors: dict[tuple[int, int], tuple[Fraction, ...]] = {}
    for vidx, ray_ix in fan.max_cones:
        inv = RatMatrix([fan.rays[k] for k in ray_ix]).inverse()
        for pos, k in enumerate(ray_ix):
            u = inv.col(pos)
            assert u == _leaving_edge_u(p, edge_list, vidx, k), \
                "dual-basis column and edge construction must agree"
            for pos2, k2 in enumerate(ray_ix):
                assert dot(fan.rays[k2], u) == int(pos2 == pos), \
                    "edge vectors must be dual to the cone's normals"
            u_vectors[(vidx, k)] = u
            value = dot(g, u)
            assert value != 0, "generic direction cannot vanish on an edge vector"
            rows[k][vidx] = value
    f_delta = tuple(dot(g, v) for v in p.vertices)
    return FixedPointTable(polytope=p, fan=fan, gamma=g, f=RatMatrix(rows),
                           f_delta=f_delta, u_vectors=u_vectors)


def theta(table: FixedPointTable) -> list[tuple[Fraction, ...]]:
    """Embed fixed points into ray space: one point per vertex, columnwise."""
    pts = [table.f.col(z) for z in range(table.n_vertices)]
    for a, b in itertools.combinations(pts, 2):
        assert a != b, "embedding must separate the fixed points"
    return pts


def morse_indices(table: FixedPointTable) -> list[int]:
    """Twice the number of negative coordinates of each embedded point.

    Cross-checked against an independent count over edges: an edge at v
    counts when gamma strictly increases from v toward the other
    endpoint.
    """
    pts = theta(table)
    out = []
    edge_list = edges(table.polytope)
    for z, pt in enumerate(pts):
        idx = 2 * sum(1 for x in pt if x < 0)
        v = table.polytope.vertices[z]
        uphill = 0
        for e in edge_list:
            if z in e.endpoints:
                other = e.endpoints[1] if e.endpoints[0] == z else e.endpoints[0]
                w = tuple(b - a for a, b in zip(v, table.polytope.vertices[other]))
                if dot(table.gamma, w) > 0:
                    uphill += 1
        assert idx == 2 * uphill, "sign-pattern and edge-count indices must agree"
        out.append(idx)
    return out


def table_to_doc(table: FixedPointTable, gamma_seed: int | None = None) -> dict:
    """Plain-data document; rationals rendered as "p/q" strings."""
    doc: dict = {"gamma": list(table.gamma)}
    if gamma_seed is not None:
        doc["gamma_seed"] = gamma_seed
    doc.update({
        "rays": [list(r) for r in table.fan.rays],
        "vertices": [list(v) for v in table.polytope.vertices],
        "f": [[str(x) for x in row] for row in table.f.rows],
        "f_delta": [str(x) for x in table.f_delta],
        "zeta": [[str(x) for x in pt] for pt in theta(table)],
        "morse": morse_indices(table),
    })
    return doc
