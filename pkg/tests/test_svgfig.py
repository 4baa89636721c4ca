"""Scene construction and SVG emission.

Geometry is checked against the defining inequalities: embedded roots
must reproduce the bilinear form, alcove corners must satisfy the wall
constraints of their element, and the shaded region must be exactly
where every strip functional is nonnegative.
"""

import math
import xml.dom.minidom

import pytest

from alcove_hecke.jgeom import jcontext
from alcove_hecke.paths import enumerate_paths
from alcove_hecke.rootdata import RootSystem, pairing
from alcove_hecke.svgfig import (
    FigureError,
    _cow_vec,
    _embedding,
    _root_vec,
    build_scene,
    emit_svg,
)
from alcove_hecke.weyl import sigma_group


@pytest.mark.parametrize("fam", ["A", "B", "C", "BC", "G"])
def test_embedding_reproduces_gram(fam):
    rs = RootSystem(fam, 2)
    emb = _embedding(rs)
    for i in (1, 2):
        for j in (1, 2):
            ri = _root_vec(emb, rs.simple_root(i))
            rj = _root_vec(emb, rs.simple_root(j))
            dot = ri[0] * rj[0] + ri[1] * rj[1]
            assert math.isclose(dot, rs.gram[i - 1][j - 1], abs_tol=1e-9)


def test_coweight_embedding_pairs_correctly():
    rs = RootSystem("G", 2)
    emb = _embedding(rs)
    for lam in [(1, 0), (0, 1), (2, -1)]:
        y = _cow_vec(emb, lam)
        for r in rs.positive_roots:
            rv = _root_vec(emb, r)
            assert math.isclose(y[0] * rv[0] + y[1] * rv[1],
                                pairing(lam, r), abs_tol=1e-9)


def test_region_matches_strip_inequalities():
    ctx = jcontext(RootSystem("C", 2), (1,))
    scene = build_scene(ctx, k_bound=2)
    emb = _embedding(ctx.rs)
    assert len(scene.region) >= 3
    cx = sum(p[0] for p in scene.region) / len(scene.region)
    cy = sum(p[1] for p in scene.region) / len(scene.region)
    for vec, c in ctx.wall_functionals:
        rv = _root_vec(emb, vec)
        assert cx * rv[0] + cy * rv[1] + c > 0


def test_empty_J_shades_nothing():
    ctx = jcontext(RootSystem("A", 2), ())
    assert build_scene(ctx).region == ()


def test_scene_rejects_higher_rank():
    with pytest.raises(FigureError):
        build_scene(jcontext(RootSystem("A", 3), (1,)))
    with pytest.raises(ValueError):
        build_scene(jcontext(RootSystem("A", 2), (1,)), k_bound=0)


def test_path_scene_arrow_kinds():
    ctx = jcontext(RootSystem("G", 2), (1,))
    paths = enumerate_paths(ctx, (2, 1, 2, 1, 2, 0))
    p = next(q for q in paths if q.fold_count())
    scene = build_scene(ctx, p)
    kinds = [k for _, k in scene.arrows]
    assert len(kinds) == len(p.steps)
    assert kinds.count("fold") == p.fold_count()
    # every arrow stays inside the declared viewbox
    minx, miny, w, h = scene.viewbox
    for pts, _ in scene.arrows:
        for x, y in pts:
            assert minx <= x <= minx + w and miny <= y <= miny + h
    assert scene.walls


def test_path_from_other_context_rejected():
    ctx1 = jcontext(RootSystem("G", 2), (1,))
    ctx2 = jcontext(RootSystem("G", 2), (2,))
    p = enumerate_paths(ctx1, (2,))[0]
    with pytest.raises(ValueError):
        build_scene(ctx2, p)


def test_bc2_wall_labels_show_both_names():
    ctx = jcontext(RootSystem("BC", 2), (2,))
    scene = build_scene(ctx)
    texts = {t for _, _, t in scene.wall_labels}
    assert "α2, 2α2" in texts
    assert "α1+α2, 2α1+2α2" in texts


def test_boundary_walls_emphasized():
    ctx = jcontext(RootSystem("G", 2), (1,))
    scene = build_scene(ctx)
    assert any(emph for _, emph in scene.walls)
    assert any(not emph for _, emph in scene.walls)


def test_emitted_svg_is_wellformed_and_deterministic():
    ctx = jcontext(RootSystem("BC", 2), (2,))
    paths = enumerate_paths(ctx, (0, 2, 1, 2))
    scene = build_scene(ctx, paths[0])
    text = emit_svg(scene)
    assert text.startswith("<svg ")
    assert 'version="1.1"' in text
    xml.dom.minidom.parseString(text)
    assert text == emit_svg(build_scene(ctx, paths[0]))


def test_relabel_arrow_dashed():
    rs = RootSystem("A", 2)
    ctx = jcontext(rs, (1,))
    sigma = next(s for s in sigma_group(rs) if not s.is_identity())
    paths = enumerate_paths(ctx, (2,), sigma=sigma)
    scene = build_scene(ctx, paths[0])
    assert scene.arrows[-1][1] == "relabel"
    assert "stroke-dasharray" in emit_svg(scene)
