"""Filtration of the function ring on fixed points, and its graded data.

Functions on the fixed-point set are vectors indexed by vertices.  The
degree-i stage of the filtration is spanned by all monomials of total
degree at most i in the ray functions (the rows of the fixed-point
table), so its dimension is an exact matrix rank.  Graded dimensions are
the rank increments.

The same numbers are recomputed three independent ways and cross-checked:
counts of Morse indices, the h-vector of the normal fan's boundary
complex, and the Hilbert function of the Stanley-Reisner ring cut down by
the linear system coming from the ray coordinates.  Monomial enumeration
is capped (default: dimension + 1, overridable via TOROGRAD_MAX_DEGREE);
a filtration that fails to stabilize by the dimension is reported as a
hard inconsistency, never truncated silently.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exactnum import NoSolution, RatMatrix, RowSpan, dot, solve
from .fixedpoints import FixedPointTable, morse_indices
from .polytope import Polytope, require_valid, vertex_facets


class FiltrationError(RuntimeError):
    """Ranks did not stabilize the way a smooth complete fan guarantees."""


def degree_cap(dim: int, max_degree: int | None = None) -> int:
    """Enumeration cap: explicit argument, else TOROGRAD_MAX_DEGREE, else dim+1."""
    if max_degree is not None:
        return int(max_degree)
    env = os.environ.get("TOROGRAD_MAX_DEGREE")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"TOROGRAD_MAX_DEGREE must be an integer, got {env!r}")
    return dim + 1


def monomials_of_degree(nvars: int, degree: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of the given total degree.

    Deterministic order: lexicographic in the sorted index multiset, so
    earlier variables dominate first ((2,0,0), (1,1,0), (1,0,1), ...).
    """
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _eval_monomial(frows: Sequence[Sequence[Fraction]], exp: Sequence[int],
                   n_vertices: int) -> tuple[Fraction, ...]:
    out = [Fraction(1)] * n_vertices
    for ray, e in enumerate(exp):
        if e:
            row = frows[ray]
            for v in range(n_vertices):
                out[v] *= row[v] ** e
    return tuple(out)


@dataclass
class GradedReport:
    ranks: list[int]
    gr_dims: list[int]
    top_degree: int
    betti_morse: list[int] | None = None
    h_vector: list[int] | None = None
    sr_hilbert: list[int] | None = None

    def four_way_agreement(self) -> bool:
        """All four Betti computations agree once trailing zeros are trimmed."""
        if None in (self.betti_morse, self.h_vector, self.sr_hilbert):
            raise ValueError("report is partial; compute all four sequences first")
        seqs = [self.gr_dims, self.betti_morse, self.h_vector, self.sr_hilbert]
        return len({_trim(s) for s in seqs}) == 1


def _trim(seq: Sequence[int]) -> tuple[int, ...]:
    out = list(seq)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _graded_scan(table: FixedPointTable, cap: int):
    """Shared monomial scan: ranks per degree, basis monomials, the span."""
    nv = table.n_vertices
    frows = table.f.rows
    span = RowSpan(nv)
    ranks: list[int] = []
    basis: list[list[tuple[int, ...]]] = []
    for i in range(cap + 1):
        kept: list[tuple[int, ...]] = []
        for exp in monomials_of_degree(table.n_rays, i):
            if span.add(_eval_monomial(frows, exp, nv)):
                kept.append(exp)
        ranks.append(span.rank)
        basis.append(kept)
        if span.rank == nv:
            break
    else:
        raise FiltrationError(
            f"rank reached only {span.rank} of {nv} by degree {cap}; "
            f"the filtration did not stabilize within the cap")
    return ranks, basis, span


def filtration_ranks(table: FixedPointTable, max_degree: int | None = None) -> GradedReport:
    """Exact ranks of the monomial evaluation matrices, degree by degree.

    ranks[i] is the dimension of the span of all monomials of degree <= i
    (the constant 1 included) evaluated on the fixed points; gr_dims are
    the increments and top_degree the first saturating degree.
    """
    cap = degree_cap(table.polytope.dim, max_degree)
    ranks, _, _ = _graded_scan(table, cap)
    top = len(ranks) - 1
    if ranks[0] != 1:
        raise FiltrationError(f"degree-0 rank is {ranks[0]}, expected 1")
    if any(b <= a for a, b in zip(ranks, ranks[1:])):
        raise FiltrationError(f"ranks {ranks} are not strictly increasing")
    if top > table.polytope.dim:
        raise FiltrationError(
            f"filtration stabilized at degree {top} > dimension "
            f"{table.polytope.dim}; input is inconsistent")
    gr = [ranks[0]] + [b - a for a, b in zip(ranks, ranks[1:])]
    return GradedReport(ranks=ranks, gr_dims=gr, top_degree=top)


def betti_from_morse(table: FixedPointTable) -> list[int]:
    """Count fixed points of Morse index 2i for i = 0 .. dim."""
    d = table.polytope.dim
    counts = [0] * (d + 1)
    for idx in morse_indices(table):
        counts[idx // 2] += 1
    return counts


def _fan_face_counts(p: Polytope) -> list[int]:
    """Number of i-element ray sets spanning a cone, i = 0 .. dim.

    Every cone of the normal fan is a subset of the rays through some
    vertex, so enumerating vertexwise subsets covers them all exactly.
    """
    require_valid(p)
    faces: set[frozenset[int]] = set()
    for incident in vertex_facets(p):
        for r in range(len(incident) + 1):
            for sub in itertools.combinations(incident, r):
                faces.add(frozenset(sub))
    counts = [0] * (p.dim + 1)
    for face in faces:
        counts[len(face)] += 1
    return counts


def h_vector(p: Polytope) -> list[int]:
    """h-vector of the normal fan's boundary complex.

    With f_{i-1} the number of i-element ray sets spanning a cone, the
    h-vector reads off sum_i f_{i-1} (t-1)^(d-i) = sum_k h_k t^(d-k).
    """
    d = p.dim
    f = _fan_face_counts(p)
    coeffs = [0] * (d + 1)  # coefficient of t^j
    for i in range(d + 1):
        for j in range(d - i + 1):
            coeffs[j] += f[i] * math.comb(d - i, j) * (-1) ** (d - i - j)
    return [coeffs[d - k] for k in range(d + 1)]


def minimal_nonfaces(p: Polytope) -> list[tuple[int, ...]]:
    """Inclusion-minimal ray sets whose facets share no vertex.

    Searched breadth-first by size in lexicographic order, pruning
    supersets of already-found non-faces; any set of dim+1 rays is a
    non-face, so the search never needs larger candidates.
    """
    require_valid(p)
    n = p.n_facets
    found: list[tuple[int, ...]] = []
    found_sets: list[frozenset[int]] = []
    for size in range(1, min(n, p.dim + 1) + 1):
        for combo in itertools.combinations(range(n), size):
            cs = frozenset(combo)
            if any(nf <= cs for nf in found_sets):
                continue
            common = frozenset.intersection(*(p.facets[k].vertex_set for k in combo))
            if not common:
                found.append(combo)
                found_sets.append(cs)
    return found


@dataclass
class RelationReport:
    minimal_nonfaces: list[tuple[int, ...]]
    nonface_failures: list[tuple[tuple[int, ...], tuple[Fraction, ...]]]
    linear_constants: list[Fraction]
    linear_failures: list[tuple[int, tuple[Fraction, ...]]]
    chern_ok: bool
    chern_lhs: tuple[Fraction, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.nonface_failures and not self.linear_failures and self.chern_ok


def verify_relations(table: FixedPointTable) -> RelationReport:
    """Exact check of the three families of ring relations.

    (a) the entrywise product of the ray functions over any minimal
        non-face vanishes; (b) for each coordinate direction e_j the
        combination sum_rho <ray_rho, e_j> f_rho is the constant
        gamma_j; (c) the support-weighted combination of the ray
        functions equals the vertex pairing function.
    """
    p = table.polytope
    frows = table.f.rows
    nv = table.n_vertices

    nonfaces = minimal_nonfaces(p)
    nonface_failures = []
    for combo in nonfaces:
        prod = [Fraction(1)] * nv
        for k in combo:
            for v in range(nv):
                prod[v] *= frows[k][v]
        if any(prod):
            nonface_failures.append((combo, tuple(prod)))

    linear_constants: list[Fraction] = []
    linear_failures = []
    for j in range(p.dim):
        acc = [Fraction(0)] * nv
        for k, ray in enumerate(table.fan.rays):
            if ray[j]:
                for v in range(nv):
                    acc[v] += ray[j] * frows[k][v]
        expected = Fraction(table.gamma[j])
        linear_constants.append(expected)
        if any(x != expected for x in acc):
            linear_failures.append((j, tuple(acc)))

    chern = [Fraction(0)] * nv
    for k, f in enumerate(p.facets):
        if f.support_value:
            for v in range(nv):
                chern[v] += f.support_value * frows[k][v]
    chern_ok = tuple(chern) == table.f_delta

    return RelationReport(minimal_nonfaces=nonfaces,
                          nonface_failures=nonface_failures,
                          linear_constants=linear_constants,
                          linear_failures=linear_failures,
                          chern_ok=chern_ok, chern_lhs=tuple(chern))


def sr_hilbert(p: Polytope, max_degree: int | None = None) -> list[int]:
    """Hilbert function of the Stanley-Reisner ring cut by the ray coordinates.

    Degree by degree: the quotient dimension is the count of degree-i
    monomials minus the rank of the ideal's degree-i slice, spanned by
    all monomial multiples of the minimal non-face products together
    with multiples of the d linear forms sum_rho ray_rho[j] D_rho.  Stops
    at the first zero (the quotient is generated in degree zero, so once
    a graded piece vanishes all later ones do).
    """
    cap = degree_cap(p.dim, max_degree)
    n = p.n_facets
    rays = [f.outer_normal for f in p.facets]
    nonfaces = minimal_nonfaces(p)
    dims: list[int] = []
    for i in range(cap + 1):
        monos = list(monomials_of_degree(n, i))
        index = {m: c for c, m in enumerate(monos)}
        span = RowSpan(len(monos))
        for combo in nonfaces:
            k = len(combo)
            if k > i:
                continue
            base = [0] * n
            for r in combo:
                base[r] += 1
            for rest in monomials_of_degree(n, i - k):
                col = index[tuple(b + e for b, e in zip(base, rest))]
                row = [Fraction(0)] * len(monos)
                row[col] = Fraction(1)
                span.add(row)
        if i >= 1:
            for j in range(p.dim):
                for rest in monomials_of_degree(n, i - 1):
                    row = [Fraction(0)] * len(monos)
                    for r in range(n):
                        if rays[r][j]:
                            shifted = list(rest)
                            shifted[r] += 1
                            row[index[tuple(shifted)]] += rays[r][j]
                    span.add(row)
        dims.append(len(monos) - span.rank)
        if dims[-1] == 0:
            return dims
    raise FiltrationError(
        f"Stanley-Reisner Hilbert function {dims} did not reach 0 by degree {cap}")


@dataclass(frozen=True)
class GrProduct:
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    degree: int
    coords: tuple[Fraction, ...]


@dataclass
class GrBasis:
    """Deterministic monomial basis of the graded ring, with products.

    basis[i] lists the degree-i monomials (as ray exponent vectors) kept
    by the rank-increasing scan; products expresses every product of two
    positive-degree basis monomials in the basis of the product degree,
    modulo the span of all lower-degree monomials.
    """

    basis: list[list[tuple[int, ...]]]
    products: list[GrProduct]


def gr_structure(table: FixedPointTable, max_degree: int | None = None) -> GrBasis:
    cap = degree_cap(table.polytope.dim, max_degree)
    ranks, basis, span = _graded_scan(table, cap)
    top = len(ranks) - 1
    nv = table.n_vertices
    frows = table.f.rows

    flat = [(deg, exp) for deg in range(1, top + 1) for exp in basis[deg]]
    products: list[GrProduct] = []
    for a in range(len(flat)):
        for b in range(a, len(flat)):
            (da, ea), (db, eb) = flat[a], flat[b]
            k = da + db
            prod_exp = tuple(x + y for x, y in zip(ea, eb))
            pvec = _eval_monomial(frows, prod_exp, nv)
            if k > top:
                # the graded piece is zero; the product must already lie in
                # the saturated span
                assert not any(span.reduce(pvec)), "product escaped the full span"
                coords: tuple[Fraction, ...] = ()
            else:
                prefix = ranks[k - 1]
                target = span.reduce(pvec, upto=prefix)
                cols = [span.reduce(_eval_monomial(frows, e, nv), upto=prefix)
                        for e in basis[k]]
                matrix = RatMatrix([[col[v] for col in cols] for v in range(nv)])
                try:
                    coords = solve(matrix, target)
                except NoSolution as exc:  # impossible for consistent data
                    raise FiltrationError(
                        f"product {ea} * {eb} is not expressible in the "
                        f"degree-{k} basis modulo lower degrees") from exc
            products.append(GrProduct(lhs=ea, rhs=eb, degree=k, coords=coords))
    return GrBasis(basis=basis, products=products)


def graded_report(table: FixedPointTable, max_degree: int | None = None) -> GradedReport:
    """Full report: filtration ranks plus the three independent recounts."""
    rep = filtration_ranks(table, max_degree)
    rep.betti_morse = betti_from_morse(table)
    rep.h_vector = h_vector(table.polytope)
    rep.sr_hilbert = sr_hilbert(table.polytope, max_degree)
    return rep


# ---------------------------------------------------------------------------
# documents

def graded_to_doc(rep: GradedReport) -> dict:
    doc: dict = {
        "ranks": list(rep.ranks),
        "gr_dims": list(rep.gr_dims),
        "top_degree": rep.top_degree,
        "betti_morse": rep.betti_morse,
        "h_vector": rep.h_vector,
        "sr_hilbert": rep.sr_hilbert,
    }
    if None not in (rep.betti_morse, rep.h_vector, rep.sr_hilbert):
        doc["four_way_agreement"] = rep.four_way_agreement()
    return doc


def relations_to_doc(rel: RelationReport) -> dict:
    return {
        "minimal_nonfaces": [list(c) for c in rel.minimal_nonfaces],
        "nonface_products_zero": not rel.nonface_failures,
        "nonface_failures": [
            {"rays": list(c), "product": [str(x) for x in vec]}
            for c, vec in rel.nonface_failures
        ],
        "linear_constants": [str(x) for x in rel.linear_constants],
        "linear_relations_ok": not rel.linear_failures,
        "linear_failures": [
            {"covector": j, "values": [str(x) for x in vec]}
            for j, vec in rel.linear_failures
        ],
        "chern_identity_ok": rel.chern_ok,
        "ok": rel.ok,
    }


def gr_basis_to_doc(gb: GrBasis) -> dict:
    return {
        "basis": [[list(e) for e in degree] for degree in gb.basis],
        "products": [
            {"lhs": list(pr.lhs), "rhs": list(pr.rhs), "degree": pr.degree,
             "coords": [str(x) for x in pr.coords]}
            for pr in gb.products
        ],
    }
