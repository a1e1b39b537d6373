"""Continuous piecewise polynomials on the normal fan.

A piecewise polynomial holds one polynomial per maximal cone, written as
exponent-vector / rational-coefficient terms.  Continuity across each
wall (a pair of maximal cones sharing all but one ray) is verified by
substituting a parametrization of the wall by its shared rays and
checking the difference vanishes identically; it is never assumed.

The generators g_rho are Courant-style: linear on every cone containing
the ray rho, with value 1 on rho and 0 on the cone's other rays, zero on
the remaining cones.  The evaluation map phi takes the n-th directional
derivative along gamma of a degree-n piece, divided by n factorial, and
lands in functions on the fixed points; the normalization makes the map
multiplicative, which is checked rather than assumed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import RatMatrix, RowSpan
from .fixedpoints import f_table
from .graded import filtration_ranks, monomials_of_degree
from .polytope import Fan, Polytope

Poly = dict  # exponent tuple -> Fraction, zero coefficients never stored


class NotHomogeneous(ValueError):
    """phi needs a single total degree across the nonzero cone pieces."""


def poly_norm(terms: dict) -> Poly:
    return {tuple(e): Fraction(c) for e, c in terms.items() if c != 0}


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_scale(c, a: Poly) -> Poly:
    c = Fraction(c)
    if not c:
        return {}
    return {e: c * v for e, v in a.items()}


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, Fraction(0)) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def poly_linear(coeffs: Sequence) -> Poly:
    """The linear form sum_k coeffs[k] * x_k."""
    d = len(coeffs)
    out: Poly = {}
    for k, c in enumerate(coeffs):
        if c:
            out[tuple(int(k2 == k) for k2 in range(d))] = Fraction(c)
    return out


def directional_derivative(p: Poly, gamma: Sequence[int]) -> Poly:
    """sum_k gamma_k * d/dx_k, computed symbolically on exponent vectors."""
    out: Poly = {}
    for e, c in p.items():
        for k, g in enumerate(gamma):
            if g and e[k]:
                e2 = e[:k] + (e[k] - 1,) + e[k + 1:]
                s = out.get(e2, Fraction(0)) + c * e[k] * g
                if s:
                    out[e2] = s
                else:
                    out.pop(e2, None)
    return out


def _substitute_rays(p: Poly, generators: Sequence[Sequence[int]]) -> Poly:
    """Compose p with x = sum_j s_j * generators[j]; result in the s variables."""
    ns = len(generators)
    one = {(0,) * ns: Fraction(1)}
    out: Poly = {}
    for e, c in p.items():
        term = one
        for k, exp in enumerate(e):
            if exp:
                lin = poly_linear([g[k] for g in generators])
                for _ in range(exp):
                    term = poly_mul(term, lin)
                if not term:
                    break
        out = poly_add(out, poly_scale(c, term))
    return out


@dataclass
class PiecewisePoly:
    """One polynomial per maximal cone, aligned with fan.max_cones."""

    fan: Fan
    polys: tuple

    def __post_init__(self):
        if len(self.polys) != len(self.fan.max_cones):
            raise ValueError("need one polynomial per maximal cone")
        self.polys = tuple(poly_norm(p) for p in self.polys)

    def __mul__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        if self.fan is not other.fan and self.fan != other.fan:
            raise ValueError("piecewise polynomials live on different fans")
        return PiecewisePoly(self.fan, tuple(
            poly_mul(a, b) for a, b in zip(self.polys, other.polys)))

    def __add__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        if self.fan is not other.fan and self.fan != other.fan:
            raise ValueError("piecewise polynomials live on different fans")
        return PiecewisePoly(self.fan, tuple(
            poly_add(a, b) for a, b in zip(self.polys, other.polys)))

    def scale(self, c) -> "PiecewisePoly":
        return PiecewisePoly(self.fan, tuple(poly_scale(c, p) for p in self.polys))


def global_piecewise(fan: Fan, p: Poly) -> PiecewisePoly:
    """Restrict one global polynomial to every maximal cone."""
    q = poly_norm(p)
    return PiecewisePoly(fan, tuple(dict(q) for _ in fan.max_cones))


@dataclass(frozen=True)
class Wall:
    cone_a: int
    cone_b: int
    shared_rays: tuple[int, ...]


@dataclass(frozen=True)
class ContinuityResult:
    ok: bool
    witness: Wall | None = None


def walls(fan: Fan) -> list[Wall]:
    """Pairs of maximal cones sharing all but one ray, each pair once."""
    out = []
    sets = [frozenset(rays) for _, rays in fan.max_cones]
    want = fan.dim - 1
    for a, b in itertools.combinations(range(len(sets)), 2):
        shared = sets[a] & sets[b]
        if len(shared) == want:
            out.append(Wall(cone_a=a, cone_b=b, shared_rays=tuple(sorted(shared))))
    return out


def is_continuous(pp: PiecewisePoly) -> ContinuityResult:
    """Check agreement of the two polynomials on the span of every wall.

    The wall spanned by rays xi_1 .. xi_{d-1} is parametrized as
    x = sum_j s_j xi_j; the difference of the two cone polynomials must
    be identically zero as a polynomial in the s variables.
    """
    for wall in walls(pp.fan):
        diff = poly_add(pp.polys[wall.cone_a],
                        poly_scale(-1, pp.polys[wall.cone_b]))
        if not diff:
            continue
        generators = [pp.fan.rays[r] for r in wall.shared_rays]
        if _substitute_rays(diff, generators):
            return ContinuityResult(ok=False, witness=wall)
    return ContinuityResult(ok=True)


def make_g(fan: Fan, ray_index: int) -> PiecewisePoly:
    """Courant-style generator: 1 on its ray, 0 on the others.

    Linear on every maximal cone containing the ray (the unique form
    taking value 1 on the ray and 0 on the cone's other rays), zero
    elsewhere.  The result is verified continuous.
    """
    if not 0 <= ray_index < len(fan.rays):
        raise IndexError(f"no ray {ray_index} in a fan with {len(fan.rays)} rays")
    polys = []
    for _, cone_rays in fan.max_cones:
        if ray_index in cone_rays:
            inv = RatMatrix([fan.rays[r] for r in cone_rays]).inverse()
            polys.append(poly_linear(inv.col(cone_rays.index(ray_index))))
        else:
            polys.append({})
    g = PiecewisePoly(fan, tuple(polys))
    assert is_continuous(g).ok, "generator must be continuous across walls"
    return g


def phi(pp: PiecewisePoly, gamma: Sequence[int]) -> tuple[Fraction, ...]:
    """Normalized evaluation: (1/n!) times the n-th derivative along gamma.

    The piecewise polynomial must be homogeneous: every nonzero cone
    piece of one total degree n (zero pieces are fine).  The derivative
    of a degree-n piece taken n times is a constant on each cone, giving
    one rational per maximal cone, i.e. per fixed point.
    """
    degrees = set()
    for p in pp.polys:
        degrees.update(sum(e) for e in p)
    if len(degrees) > 1:
        raise NotHomogeneous(f"mixed total degrees {sorted(degrees)}")
    n = degrees.pop() if degrees else 0
    const = (0,) * pp.fan.dim
    out = []
    for p in pp.polys:
        q = p
        for _ in range(n):
            q = directional_derivative(q, gamma)
        assert all(e == const for e in q), "n-th derivative must be constant"
        out.append(q.get(const, Fraction(0)) / math.factorial(n))
    return tuple(out)


@dataclass
class BrionReport:
    continuity_ok: bool
    phi_mismatched_rays: list[int]
    linear_form_failures: list[tuple[int, tuple[Fraction, ...]]]
    mult_pairs_checked: int
    mult_failures: list[tuple[tuple[int, ...], tuple[int, ...]]]
    surjectivity_ranks: list[int]
    expected_ranks: list[int]

    @property
    def ok(self) -> bool:
        return (self.continuity_ok and not self.phi_mismatched_rays
                and not self.linear_form_failures and not self.mult_failures
                and self.surjectivity_ranks == self.expected_ranks)


def _monomial_pieces(fan: Fan, gs: Sequence[PiecewisePoly], top: int):
    """Piecewise polynomials of all g-monomials of degree <= top, by exponent."""
    n = len(gs)
    memo: dict[tuple[int, ...], PiecewisePoly] = {
        (0,) * n: global_piecewise(fan, {(0,) * fan.dim: Fraction(1)})}
    for deg in range(1, top + 1):
        for exp in monomials_of_degree(n, deg):
            i = next(k for k, e in enumerate(exp) if e)
            prev = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
            memo[exp] = memo[prev] * gs[i]
    return memo


def verify_brion(fan: Fan, p: Polytope, gamma: Sequence[int],
                 max_degree: int | None = None) -> BrionReport:
    """Cross-check the piecewise model against the fixed-point table.

    (a) phi of every generator equals the matching ray function row;
    (b) phi of each global coordinate form is the constant gamma_j;
    (c) phi is multiplicative on products of g-monomials (all pairs of
        positive degree with total degree <= max(dim, 4));
    (d) the ranks of {phi(m) : m a g-monomial of degree <= i} reproduce
        the filtration ranks for 0 <= i <= dim.
    """
    table = f_table(p, gamma)
    filt = filtration_ranks(table, max_degree)
    d = p.dim
    n = len(fan.rays)

    gs = [make_g(fan, r) for r in range(n)]
    continuity_ok = all(is_continuous(g).ok for g in gs)

    phi_mismatched = [r for r in range(n)
                      if phi(gs[r], table.gamma) != table.f.rows[r]]

    linear_failures = []
    for j in range(d):
        form = poly_linear([int(k == j) for k in range(d)])
        values = phi(global_piecewise(fan, form), table.gamma)
        if any(v != table.gamma[j] for v in values):
            linear_failures.append((j, values))

    pair_total = max(d, 4)
    pieces = _monomial_pieces(fan, gs, pair_total)
    phi_memo = {exp: phi(piece, table.gamma) for exp, piece in pieces.items()}

    mult_failures = []
    pairs_checked = 0
    by_degree = {deg: list(monomials_of_degree(n, deg))
                 for deg in range(1, pair_total)}
    for da in range(1, pair_total // 2 + 1):
        for db in range(da, pair_total - da + 1):
            for ea in by_degree[da]:
                rhs_pool = by_degree[db]
                for eb in rhs_pool:
                    if da == db and eb < ea:
                        continue
                    pairs_checked += 1
                    product = pieces[ea] * pieces[eb]
                    lhs = phi(product, table.gamma)
                    rhs = tuple(x * y for x, y in zip(phi_memo[ea], phi_memo[eb]))
                    if lhs != rhs:
                        mult_failures.append((ea, eb))

    span = RowSpan(table.n_vertices)
    surj_ranks = []
    for deg in range(d + 1):  # pair_total >= d, so every monomial is memoized
        for exp in monomials_of_degree(n, deg):
            span.add(phi_memo[exp])
        surj_ranks.append(span.rank)
    expected = [filt.ranks[min(i, filt.top_degree)] for i in range(d + 1)]

    return BrionReport(continuity_ok=continuity_ok,
                       phi_mismatched_rays=phi_mismatched,
                       linear_form_failures=linear_failures,
                       mult_pairs_checked=pairs_checked,
                       mult_failures=mult_failures,
                       surjectivity_ranks=surj_ranks,
                       expected_ranks=expected)


def piecewise_to_doc(pp: PiecewisePoly) -> dict:
    """Plain-data document: cone ray lists plus sorted term lists."""
    return {
        "cones": [list(rays) for _, rays in pp.fan.max_cones],
        "polys": [
            [{"exp": list(e), "coef": str(c)} for e, c in sorted(p.items())]
            for p in pp.polys
        ],
    }
