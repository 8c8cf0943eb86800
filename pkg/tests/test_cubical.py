import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moorebox.cubical import (CubicalMorphism, CubicalObject, Poset, PrecubicalHomotopy, all_posets,
                              constant_cubical, linearize, monotone_maps, normalized_subgroup, poset_cubical_set,
                              validate_cubical, validate_cubical_morphism, validate_finite_cubical,
                              validate_precubical_homotopy, zero_cubical)
from moorebox.exactalg import FgAbGroup, Hom, IntMatrix, parse_group
from moorebox.norm import normalize
from moorebox.chain import homologies

from oracles import count_monotone_maps

Z = FgAbGroup.free(1)


def test_constant_is_cc():
    assert validate_cubical(constant_cubical(parse_group("Z/2"), 3), "cc").ok


def test_broken_face_is_located():
    x = constant_cubical(parse_group("Z/2"), 3)
    faces = dict(x.faces)
    faces[(2, 1, 0)] = Hom.zero(x.groups[2], x.groups[1])
    bad = CubicalObject(x.groups, faces, x.degeneracies, x.connections, "cc")
    rep = validate_cubical(bad, "cc")
    assert not rep.ok
    assert any("∂" in f["identity"] and f["degree"] in (2, 3) for f in rep.failures)


def test_missing_structure_for_level():
    x = constant_cubical(Z, 2)
    bare = CubicalObject(x.groups, x.faces, None, None, "precubical")
    assert validate_cubical(bare, "precubical").ok
    assert not validate_cubical(bare, "cubical").ok


def test_level_families_are_checked():
    # a broken connection only matters at levels that include connections
    x = constant_cubical(Z, 2)
    cons = {k: Hom.zero(x.groups[1], x.groups[2]) for k in x.connections}
    y = CubicalObject(x.groups, x.faces, x.degeneracies, cons, "cc")
    assert validate_cubical(y, "cubical").ok
    assert not validate_cubical(y, "cc").ok


def test_chain_poset_linearization_is_cc():
    x = linearize(poset_cubical_set(Poset.chain(2), 3), Z)
    assert validate_cubical(x, "cc").ok


def test_identity_morphism_and_degenerate_homotopy():
    for x in (constant_cubical(Z, 3), linearize(poset_cubical_set(Poset.chain(2), 3), Z)):
        f = CubicalMorphism.identity(x)
        assert validate_cubical_morphism(f, "cc").ok
        h = PrecubicalHomotopy(f, f, [x.degen(n + 1, 1) @ f[n] for n in range(x.dim_bound)])
        assert validate_precubical_homotopy(h).ok


def test_wrong_homotopy_fails():
    x = linearize(poset_cubical_set(Poset.chain(2), 2), Z)
    f = CubicalMorphism.identity(x)
    h = PrecubicalHomotopy(f, f, [Hom.zero(x.groups[n], x.groups[n + 1]) for n in range(2)])
    assert not validate_precubical_homotopy(h).ok


def test_constant_examples():
    x = constant_cubical(Z, 2)
    assert validate_cubical(x, "cc").ok
    assert [str(h) for h in homologies(normalize(x, "N").complex)] == ["Z", "0"]
    assert all(g.is_trivial() for g in zero_cubical(3).groups)
    m = normalize(constant_cubical(parse_group("Z/2"), 3), "M").complex
    assert [str(g) for g in m.groups] == ["Z/2", "0", "0", "0"]


def test_poset_cube_counts():
    assert [len(poset_cubical_set(Poset.chain(1), 3).cubes[n]) for n in range(4)] == [1, 1, 1, 1]
    assert [len(poset_cubical_set(Poset.antichain(2), 3).cubes[n]) for n in range(4)] == [2, 2, 2, 2]
    assert [len(poset_cubical_set(Poset.chain(2), 3).cubes[n]) for n in range(4)] == [2, 3, 6, 20]


@pytest.mark.parametrize("p", all_posets(3), ids=lambda p: repr(p.cover_pairs()))
def test_monotone_maps_match_brute_force(p):
    pairs = [(p.elements.index(a), p.elements.index(b)) for a, b in p.cover_pairs()]
    for n in range(4):
        assert len(monotone_maps(p, n)) == count_monotone_maps(len(p), pairs, n)


def test_poset_counts_by_size():
    assert [sum(1 for p in all_posets(k) if len(p) == k) for k in (1, 2, 3, 4)] == [1, 2, 5, 16]


@pytest.mark.parametrize("p", all_posets(4), ids=lambda p: f"{len(p)}:{p.cover_pairs()}")
def test_poset_cubical_sets_satisfy_all_identities(p):
    assert validate_finite_cubical(poset_cubical_set(p, 3), "cc").ok


@pytest.mark.parametrize("p", all_posets(3), ids=lambda p: f"{len(p)}:{p.cover_pairs()}")
def test_linearized_posets_are_cc(p):
    assert validate_cubical(linearize(poset_cubical_set(p, 3), Z), "cc").ok


def test_linearize_examples():
    x = linearize(poset_cubical_set(Poset.chain(1), 2), Z)
    assert all(g.canonical == (1, ()) for g in x.groups)
    y = linearize(poset_cubical_set(Poset.antichain(2), 2), Z)
    assert all(g.canonical == (2, ()) for g in y.groups)
    assert all(f.matrix == IntMatrix.identity(2) for f in y.faces.values())
    w = linearize(poset_cubical_set(Poset.chain(2), 3), Z)
    assert [g.ngens for g in w.groups] == [2, 3, 6, 20]


def test_normalized_subgroup_of_constant_vanishes():
    x = constant_cubical(parse_group("Z/4"), 2)
    assert normalized_subgroup(x, 0)[0].canonical == (0, (4,))
    assert normalized_subgroup(x, 1)[0].is_trivial()


def test_poset_rejects_cycles():
    with pytest.raises(ValueError):
        Poset([0, 1], [(0, 1), (1, 0)])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3))
def test_constant_objects_valid_for_any_dimension(k, d):
    assert validate_cubical(constant_cubical(FgAbGroup.cyclic(k + 1), d), "cc").ok


@pytest.mark.parametrize("p", all_posets(3), ids=lambda p: f"{len(p)}:{p.cover_pairs()}")
def test_linearize_is_faithful(p):
    s = poset_cubical_set(p, 3)
    x = linearize(s, Z)
    for n in range(4):
        assert x.groups[n].ngens == s.count(n)
    # each face sends a basis cube to a single basis cube
    for f in x.faces.values():
        assert all(sorted(col) == [0] * (len(col) - 1) + [1] for col in f.matrix.columns())
