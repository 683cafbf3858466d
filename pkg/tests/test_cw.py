"""Regular CW complexes: validation, face posets, subcomplexes, catalog."""

import pytest

from cwkoszul.bigraded import cellular_cohomology
from cwkoszul.catalog import catalog, catalog_names
from cwkoszul.cw import ComplexError, RegularCWComplex, Subcomplex, complex_from_dict
from cwkoszul.layered import BOTTOM
from cwkoszul.linalg import QQ

from helpers import dangling_square_complex, segment_plus_point, two_disjoint_triangles


def test_catalog_counts():
    assert catalog("example_singular").counts() == (4, 8, 7, 2)
    assert catalog("rp2_six").counts() == (6, 15, 10)
    assert catalog("sphere2").counts() == (4, 6, 4)
    assert catalog("point").counts() == (1,)


def test_catalog_validates_clean():
    for name in catalog_names():
        assert catalog(name).validate() == []


def test_rp2_euler_characteristic():
    assert catalog("rp2_six").euler_characteristic() == 1


def test_unknown_catalog_name():
    with pytest.raises(ComplexError, match="unknown"):
        catalog("torus")
    with pytest.raises(ComplexError, match="unsupported"):
        catalog("simplex7")


def test_validator_flags_dangling_boundary():
    report = dangling_square_complex().validate()
    assert any("boundary of boundary" in v and "'f'" in v for v in report)
    assert any("Euler characteristic" in v for v in report)


def test_validator_rejects_structural_errors_at_init():
    with pytest.raises(ComplexError, match="dimensions"):
        RegularCWComplex("bad", {"v": 0, "f": 2}, {("f", "v"): 1})
    with pytest.raises(ComplexError, match="\\+1 or -1"):
        RegularCWComplex("bad", {"v": 0, "w": 0, "e": 1}, {("e", "v"): 2, ("e", "w"): 1})
    with pytest.raises(ComplexError, match="reserved"):
        RegularCWComplex("bad", {BOTTOM: 0}, {})


def test_face_poset_bar_point():
    g = catalog("point").face_poset_bar()
    assert sorted(g.vertices.items()) == [(BOTTOM, 0), ("p", 1)]


def test_face_poset_bar_hollow_triangle():
    g = catalog("sphere1").face_poset_bar()
    assert g.max_rank == 2
    assert len(g.at_rank(1)) == 3 and len(g.at_rank(2)) == 3


def test_face_poset_bar_singular_solid_layers():
    g = catalog("example_singular").face_poset_bar()
    assert [len(g.at_rank(r)) for r in range(5)] == [1, 4, 8, 7, 2]


def test_face_poset_hat_singular_solid():
    g = catalog("example_singular").face_poset_hat()
    assert g.max_rank == 5
    assert g.lower_covers("1bar") == ("A1", "A2")


def test_face_poset_hat_simplex2_has_rank_four():
    g = catalog("simplex2").face_poset_hat()
    assert g.max_rank == 4
    assert g.lower_covers("1bar") == ("012",)


def test_face_poset_hat_requires_purity():
    with pytest.raises(ComplexError, match="not pure"):
        segment_plus_point().face_poset_hat()


def test_is_pure():
    assert catalog("sphere3").is_pure()
    assert catalog("example_singular").is_pure()
    assert not segment_plus_point().is_pure()


def test_connected_by_codim1():
    assert catalog("example_singular").connected_by_codim1()
    assert catalog("sphere3").connected_by_codim1()
    assert not two_disjoint_triangles().connected_by_codim1()
    with pytest.raises(ComplexError, match="not pure"):
        segment_plus_point().connected_by_codim1()


def test_closed_cell_and_complement_star():
    x = catalog("simplex1")
    assert x.complement_star("0").cells == frozenset({"1"})
    x3 = catalog("simplex3")
    assert x3.closed_cell("0123").cells == frozenset(x3.cells())
    s = catalog("example_singular")
    y = s.complement_star("C4")
    assert y.euler_characteristic() == 0
    assert cellular_cohomology(y.induced(), QQ) == [1, 1, 0]  # circle type


def test_subcomplex_must_be_downward_closed():
    x = catalog("simplex2")
    with pytest.raises(ComplexError, match="downward closed"):
        Subcomplex(x, frozenset({"012"}))


def test_bar_posets_thin_and_spheres_uniform():
    for name in catalog_names():
        g = catalog(name).face_poset_bar()
        assert g.is_thin()[0], name
    for name in ("sphere1", "sphere2", "sphere3"):
        assert catalog(name).face_poset_bar().is_uniform()[0]


def test_pure_connected_gives_uniform_hat():
    for name in ("simplex3", "sphere2", "rp2_six", "example_singular",
                 "three_triangles_shared_edge"):
        x = catalog(name)
        assert x.is_pure() and x.connected_by_codim1()
        assert x.face_poset_hat().is_uniform()[0], name


def test_boundary_euler_characteristics_match_spheres():
    for name in ("simplex3", "rp2_six", "example_singular"):
        x = catalog(name)
        for c in x.cells():
            n = x.cell_dim(c)
            if n >= 1:
                chi = x.closed_cell(c).euler_characteristic() - (-1) ** n
                assert chi == 1 + (-1) ** (n - 1), (name, c)


def test_serialization_round_trip():
    for name in ("point", "sphere2", "example_singular"):
        x = catalog(name)
        assert complex_from_dict(x.to_dict()) == x


def test_complex_from_dict_schema_errors():
    with pytest.raises(ComplexError, match="\\+1 or -1"):
        complex_from_dict({"name": "b", "cells": [
            {"id": "v", "dim": 0, "boundary": {}},
            {"id": "w", "dim": 0, "boundary": {}},
            {"id": "e", "dim": 1, "boundary": {"v": 0, "w": 1}},
        ]})
    with pytest.raises(ComplexError, match="unknown cell"):
        complex_from_dict({"name": "b", "cells": [
            {"id": "e", "dim": 1, "boundary": {"v": 1, "w": -1}},
        ]})
    with pytest.raises(ComplexError, match="duplicate"):
        complex_from_dict({"name": "b", "cells": [
            {"id": "v", "dim": 0}, {"id": "v", "dim": 0},
        ]})
    with pytest.raises(ComplexError, match="expected 1"):
        complex_from_dict({"name": "b", "cells": [
            {"id": "v", "dim": 0, "boundary": {}},
            {"id": "f", "dim": 2, "boundary": {"v": 1}},
        ]})
    with pytest.raises(ComplexError, match="empty boundary"):
        complex_from_dict({"name": "b", "cells": [
            {"id": "v", "dim": 0, "boundary": {"v": 1}},
        ]})


def test_diamond_classes_single_on_cw_intervals():
    for name in ("sphere2", "simplex3", "example_singular"):
        g = catalog(name).face_poset_bar()
        for b in g.vertex_ids():
            for a in sorted(g.strictly_below(b)):
                assert len(g.diamond_classes(b, a)) == 1, (name, b, a)
