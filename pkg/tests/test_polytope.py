"""Polytope validation, edges, normal fans, builtins, documents."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torograd import (BadParams, DocumentError, InvalidPolytope, UnknownName,
                      builtin, builtin_from_uri, edges, is_smooth,
                      make_polytope, normal_fan, polytope_from_doc,
                      polytope_to_doc, require_valid, validate)
from _corpus import corpus

OCTAHEDRON = make_polytope(
    3,
    [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
    [((sx, sy, sz), 1,
      [(0 if sx > 0 else 1), (2 if sy > 0 else 3), (4 if sz > 0 else 5)])
     for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)],
)

# right triangle with legs 1 and 2: simple but the fan is singular
SINGULAR_TRIANGLE = make_polytope(
    2,
    [(0, 0), (1, 0), (0, 2)],
    [((-1, 0), 0, (0, 2)), ((0, -1), 0, (0, 1)), ((2, 1), 2, (1, 2))],
)


# ---------------------------------------------------------------------------
# validation

@pytest.mark.parametrize("label,p", corpus())
def test_corpus_validates(label, p):
    assert validate(p).ok


def test_octahedron_not_simple():
    rep = validate(OCTAHEDRON)
    assert not rep.ok
    assert rep.kinds() == {"simplicity"}
    # every vertex of the octahedron lies on 4 facets, not 3
    assert len(rep.problems) == 6


def test_singular_triangle_is_simple_but_not_smooth():
    assert validate(SINGULAR_TRIANGLE).ok
    res = is_smooth(normal_fan(SINGULAR_TRIANGLE))
    assert not res.ok
    assert res.witness_vertex == 1
    assert abs(res.determinant) == 2


def test_validate_support_not_maximum():
    p = make_polytope(2, [(1, 1), (-2, 1), (1, -2)],
                      [((1, 0), Fraction(1, 2), (0, 2)),
                       ((0, 1), 1, (0, 1)),
                       ((-1, -1), 1, (1, 2))])
    rep = validate(p)
    assert "support" in rep.kinds()
    assert any("1/2" in pr.message for pr in rep.problems)


def test_validate_support_attained_off_list():
    # facet 0 forgets vertex 0, which attains the support value
    p = make_polytope(2, [(1, 1), (-2, 1), (1, -2)],
                      [((1, 0), 1, (2,)),
                       ((0, 1), 1, (0, 1)),
                       ((-1, -1), 1, (1, 2))])
    rep = validate(p)
    assert "support" in rep.kinds()
    assert any("missing from the facet's vertex list" in pr.message
               for pr in rep.problems)


def test_validate_listed_vertex_not_attaining():
    p = make_polytope(2, [(1, 1), (-2, 1), (1, -2)],
                      [((1, 0), 1, (0, 1, 2)),
                       ((0, 1), 1, (0, 1)),
                       ((-1, -1), 1, (1, 2))])
    rep = validate(p)
    assert any("does not attain" in pr.message for pr in rep.problems)


def test_validate_structure_problems():
    p = make_polytope(2, [(0, 0), (2, 0), (1, 1)],
                      [((2, 0), 4, (1,)),
                       ((0, 0), 0, (0, 1)),
                       ((0, 1), 1, (2,)),
                       ((0, 1), 1, (2,))])
    rep = validate(p)
    msgs = " | ".join(pr.message for pr in rep.problems)
    assert "not primitive" in msgs
    assert "zero normal" in msgs
    assert "repeats the normal" in msgs


def test_validate_duplicate_vertex():
    p = make_polytope(1, [(0,), (1,), (0,)],
                      [((1,), 1, (1,)), ((-1,), 0, (0, 2))])
    rep = validate(p)
    assert "duplicate" in rep.kinds()


def test_validate_dimension_deficient():
    p = make_polytope(2, [(0, 0), (2, 0), (4, 0)],
                      [((1, 0), 4, (2,)), ((-1, 0), 0, (0,))])
    rep = validate(p)
    assert "dimension" in rep.kinds()


def test_validate_bad_vertex_shape_short_circuits():
    p = make_polytope(2, [(0,), (1, 0), (0, 1)],
                      [((1, 0), 1, (1,)), ((0, 1), 1, (2,))])
    rep = validate(p)
    assert rep.kinds() == {"structure"}


def test_require_valid_raises_with_report():
    with pytest.raises(InvalidPolytope) as exc:
        require_valid(OCTAHEDRON)
    assert "not simple" in str(exc.value)
    assert exc.value.report.kinds() == {"simplicity"}


# ---------------------------------------------------------------------------
# edges and fans

def test_cp2_edges():
    p = builtin("cp2")
    es = edges(p)
    assert [e.endpoints for e in es] == [(0, 1), (0, 2), (1, 2)]
    assert [e.direction for e in es] == [(-1, 0), (0, -1), (1, -1)]


def test_small_edge_counts():
    assert len(edges(builtin("cp1xcp1"))) == 4
    seg = edges(builtin("segment", 0, 3))
    assert len(seg) == 1
    assert seg[0].direction == (1,)


def test_support_value():
    from torograd.polytope import support_value
    p = builtin("cp2")
    assert support_value(p, (-1, -1)) == 1
    assert support_value(p, (0, 0)) == 0
    assert support_value(builtin("cp1xcp1"), (1, 0)) == 1


@pytest.mark.parametrize("label,p", corpus())
def test_edge_count_invariant(label, p):
    # a simple d-polytope has exactly d edges at each vertex
    es = edges(p)
    assert 2 * len(es) == p.dim * p.n_vertices


def test_normal_fan_cp2():
    fan = normal_fan(builtin("cp2"))
    assert fan.rays == ((1, 0), (0, 1), (-1, -1))
    assert fan.max_cones == ((0, (0, 1)), (1, (1, 2)), (2, (0, 2)))
    assert fan.dim == 2


@pytest.mark.parametrize("label,p", corpus())
def test_corpus_smooth(label, p):
    assert is_smooth(normal_fan(p)).ok


def test_edges_reject_invalid():
    with pytest.raises(InvalidPolytope):
        edges(OCTAHEDRON)


# ---------------------------------------------------------------------------
# builtins

def test_cp2_data():
    p = builtin("cp2")
    assert p.vertices == ((1, 1), (-2, 1), (1, -2))
    assert [f.outer_normal for f in p.facets] == [(1, 0), (0, 1), (-1, -1)]
    assert all(f.support_value == 1 for f in p.facets)


def test_segment_data():
    p = builtin("segment", -2, 5)
    assert p.vertices == ((-2,), (5,))
    assert [(f.outer_normal, f.support_value) for f in p.facets] == \
        [((1,), 5), ((-1,), 2)]
    with pytest.raises(BadParams):
        builtin("segment", 3, 3)


def test_simplex_data():
    p = builtin("simplex", 2, 2)
    assert p.vertices == ((0, 0), (2, 0), (0, 2))
    assert [f.outer_normal for f in p.facets] == [(-1, 0), (0, -1), (1, 1)]
    assert [f.support_value for f in p.facets] == [0, 0, 2]
    with pytest.raises(BadParams):
        builtin("simplex", 0)


def test_cube_data():
    p = builtin("cube", 2)
    assert p.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert [f.outer_normal for f in p.facets] == [(1, 0), (0, 1), (-1, 0), (0, -1)]
    assert validate(p).ok


def test_hirzebruch_data():
    p = builtin("hirzebruch", 2)
    assert p.vertices == ((0, 0), (3, 0), (1, 1), (0, 1))
    assert [f.outer_normal for f in p.facets] == [(0, -1), (-1, 0), (0, 1), (1, 2)]
    with pytest.raises(BadParams):
        builtin("hirzebruch", -1)


def test_hirzebruch_one_vertices():
    assert builtin("hirzebruch", 1).vertices == ((0, 0), (2, 0), (1, 1), (0, 1))


def test_hirzebruch_zero_is_a_square():
    p = builtin("hirzebruch", 0)
    assert set(p.vertices) == {(0, 0), (1, 0), (1, 1), (0, 1)}
    assert validate(p).ok and is_smooth(normal_fan(p)).ok


def test_product_matches_direct_construction():
    prod = builtin("product", builtin("segment", 0, 1), builtin("segment", 0, 1))
    assert validate(prod).ok
    assert set(prod.vertices) == set(builtin("cube", 2).vertices)
    assert {f.outer_normal for f in prod.facets} == \
        {f.outer_normal for f in builtin("cube", 2).facets}


def test_builtin_dispatch_errors():
    with pytest.raises(UnknownName):
        builtin("dodecahedron")
    with pytest.raises(BadParams):
        builtin("cp2", 7)
    with pytest.raises(BadParams):
        builtin("cube")


def test_builtin_from_uri():
    assert builtin_from_uri("builtin:cp2") == builtin("cp2")
    assert builtin_from_uri("builtin:simplex:3,2") == builtin("simplex", 3, 2)
    assert builtin_from_uri("builtin:product:segment:0,1|segment:0,2") == \
        builtin("product", builtin("segment", 0, 1), builtin("segment", 0, 2))
    with pytest.raises(UnknownName):
        builtin_from_uri("cp2")
    with pytest.raises(BadParams):
        builtin_from_uri("builtin:simplex:two")
    with pytest.raises(BadParams):
        builtin_from_uri("builtin:product:segment:0,1")


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3))
def test_simplex_and_cube_families_validate(d, scale):
    for p in (builtin("simplex", d, scale), builtin("cube", d, scale)):
        assert validate(p).ok
        assert is_smooth(normal_fan(p)).ok
        assert 2 * len(edges(p)) == p.dim * p.n_vertices


# ---------------------------------------------------------------------------
# documents

@pytest.mark.parametrize("label,p", corpus())
def test_doc_roundtrip(label, p):
    assert polytope_from_doc(polytope_to_doc(p)) == p


def test_doc_fraction_support_roundtrip():
    # fractional supports are legal in documents as "p/q" strings
    doc = polytope_to_doc(builtin("cp2"))
    doc["facets"][0]["support"] = "1"
    assert polytope_from_doc(doc) == builtin("cp2")


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.pop("dim"), "missing 'dim'"),
    (lambda d: d.update(dim="2"), "expected an integer"),
    (lambda d: d.update(vertices=[]), "non-empty list"),
    (lambda d: d["vertices"][0].append(9), "list of 2 integers"),
    (lambda d: d["facets"][0].pop("support"), "missing 'support'"),
    (lambda d: d["facets"][0].update(support="1/0"), "cannot parse rational"),
    (lambda d: d["facets"][0].update(support=True), "expected a rational"),
    (lambda d: d["facets"][0].update(support="1/2"), "not the maximum"),
    (lambda d: d["facets"][0]["vertices"].append(99), "unknown vertex indices"),
])
def test_doc_errors(mutate, fragment):
    doc = polytope_to_doc(builtin("cp2"))
    mutate(doc)
    with pytest.raises(DocumentError) as exc:
        polytope_from_doc(doc)
    assert fragment in str(exc.value)


def test_doc_parse_keeps_soft_problems():
    # non-simple but internally consistent data parses fine
    doc = polytope_to_doc(OCTAHEDRON)
    p = polytope_from_doc(doc)
    assert not validate(p).ok
    assert validate(p).kinds() == {"simplicity"}
