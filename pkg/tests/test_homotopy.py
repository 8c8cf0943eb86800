import itertools

import pytest

from moorebox import corpus
from moorebox.cubical import FiniteCubicalSet, Poset, constant_cubical, poset_cubical_set, validate_finite_cubical
from moorebox.derive import AdditiveFunctor, apply_functor, full_resolution
from moorebox.exactalg import parse_group
from moorebox.homotopy import (FiniteCubicalGroup, KanError, interchange_check, kan_check, moore_group_complex, pi,
                               pi_report, symmetric_group_3, validate_cubical_group, verify_pi_vs_moore)

GROUPS = corpus.finite_groups()


def loop_without_square():
    """One vertex, one non-degenerate loop and only the degenerate squares."""
    faces = {(1, 1, 0): (0, 0), (1, 1, 1): (0, 0)}
    # squares: constant, s_1 x, s_2 x, Γ_1 x
    faces[(2, 1, 0)] = (0, 1, 0, 1)
    faces[(2, 1, 1)] = (0, 1, 0, 0)
    faces[(2, 2, 0)] = (0, 0, 1, 1)
    faces[(2, 2, 1)] = (0, 0, 1, 0)
    degs = {(1, 1): (0,), (2, 1): (0, 1), (2, 2): (0, 2)}
    cons = {(1, 1): (0, 3)}
    cubes = (("v",), ("e", "x"), ("e2", "s1x", "s2x", "Gx"))
    return FiniteCubicalSet(cubes, faces, degs, cons, 0)


def test_point_is_kan_with_trivial_groups():
    x = poset_cubical_set(Poset.chain(1), 3)
    assert kan_check(x, 3).ok
    assert [pi(x, n).order for n in range(3)] == [1, 1, 1]


def test_constant_z2():
    g = FiniteCubicalGroup.from_cubical_object(constant_cubical(parse_group("Z/2"), 3))
    assert validate_cubical_group(g).ok
    assert pi(g, 0).canonical_form() == (0, (2,))
    assert pi(g, 1).order == 1 and pi(g, 2).order == 1


def test_missing_filler_is_reported():
    x = loop_without_square()
    assert validate_finite_cubical(x, "cc").ok
    assert kan_check(x, 1).ok
    rep = kan_check(x, 2)
    assert not rep.ok
    assert all(f["degree"] == 2 for f in rep.failures)
    assert any(f["box"] == {"1,1": "x", "2,0": "x", "2,1": "x"} for f in rep.failures)
    with pytest.raises(KanError):
        pi(x, 1)


def test_chain_poset_is_not_kan():
    assert not kan_check(poset_cubical_set(Poset.chain(2), 2), 2).ok


def test_pi_degree_range():
    g = FiniteCubicalGroup.from_cubical_object(constant_cubical(parse_group("Z/2"), 2))
    with pytest.raises(ValueError):
        pi(g, 2)


def test_moore_complex_of_constant():
    g = FiniteCubicalGroup.from_cubical_object(constant_cubical(parse_group("Z/2"), 3))
    mc, rep = moore_group_complex(g)
    assert rep.ok
    assert len(mc.M[0]) == 2
    assert all(mc.M[n] == (g.unit[n],) for n in (1, 2, 3))
    assert len(mc.homology[0]) == 2


@pytest.mark.parametrize("g", [g for _, g in GROUPS], ids=[n for n, _ in GROUPS])
def test_pi_matches_moore_homology(g):
    for n in range(g.dim_bound):
        assert verify_pi_vs_moore(g, n).ok
        assert pi_report(g, n).ok


def test_s3_is_nonabelian():
    g = symmetric_group_3(3)
    assert validate_cubical_group(g).ok
    p0 = pi(g, 0)
    assert p0.order == 6 and p0.is_group() and not p0.is_abelian()
    assert pi(g, 1).order == 1


def test_tensored_resolution_has_tor_in_pi1():
    # π_1 of P ⊗ Z/2 for a resolution P of Z/2 is Tor_1(Z/2, Z/2)
    z2 = parse_group("Z/2")
    y = apply_functor(AdditiveFunctor.tensor(z2), full_resolution(z2, 2).cubical())
    g = FiniteCubicalGroup.from_cubical_object(y)
    rep = verify_pi_vs_moore(g, 1)
    assert rep.ok and rep.details["pi"] == "Z/2" and rep.details["H_N"] == "Z/2"
    assert pi(g, 1).is_abelian()


def test_interchange_forces_equal_operations():
    z3 = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    assert interchange_check(z3, z3, 0).ok
    # a different unit-preserving table fails
    other = [row[:] for row in z3]
    other[1][1], other[1][2] = 0, 2
    assert not interchange_check(other, z3, 0).ok


def test_pi0_of_bare_set_has_no_product():
    x = poset_cubical_set(Poset.antichain(2), 2)
    res = pi(x, 0, check_kan=False)
    assert res.order == 2 and res.table is None


def test_constant_group_from_tables():
    g = FiniteCubicalGroup.constant(list(itertools.product(range(2), repeat=2)),
                                    lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), 2)
    assert pi(g, 0).canonical_form() == (0, (2, 2))
