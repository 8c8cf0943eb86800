import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moorebox.chain import AugmentedChainComplex, ChainComplex, homologies
from moorebox.cubical import (CubicalMorphism, constant_cubical, validate_cubical, validate_cubical_morphism,
                              validate_precubical_homotopy)
from moorebox.exactalg import FgAbGroup, Hom, IntMatrix, direct_sum, parse_group
from moorebox.derive import (AdditiveFunctor, apply_functor, build_resolution, classical_derived,
                             compare_hom_functor, compare_with_classical, comparison_homotopy, comparison_lift,
                             cubical_kernel, derived_functors, em_exact_check, full_resolution,
                             homotopic_lifts_report, in_projective_class, kernel_pair, lift_covers,
                             resolution_em_report, tor_oracle, validate_resolution)
from moorebox.norm import normalize
from moorebox.suite import random_group

from oracles import cyclic_tensor, cyclic_tor1

Z = FgAbGroup.free(1)
Z4 = parse_group("Z/4")


def strs(groups):
    return [str(g) for g in groups]


# -- kernels ------------------------------------------------------------------


def test_projective_class():
    assert in_projective_class(FgAbGroup.free(3))
    assert in_projective_class(FgAbGroup.trivial())
    assert not in_projective_class(Z4)


def test_kernel_pair_examples():
    k = kernel_pair(Hom(Z, FgAbGroup.cyclic(2), IntMatrix([[1]])))
    assert k.group.canonical == (2, ())
    assert k.inclusion.is_injective()
    d = kernel_pair(Hom.identity(Z))
    assert d.group.canonical == (1, ())
    assert d.projection(1, 0) == d.projection(1, 1)


def test_cubical_kernel_of_identities():
    # with identity faces every projection must agree, leaving the diagonal
    k = cubical_kernel([Hom.identity(Z)], [Hom.identity(Z)])
    assert k.size == 2 and k.inclusion.is_injective()
    assert k.group.free_rank == 1


def test_cubical_kernel_factorization():
    p = build_resolution(Z4, 2)
    k = p.kernels[2]
    fam = {(i, a): k.projection(i, a) for i in (1, 2) for a in (0, 1)}
    assert k.factor(fam) == Hom.identity(k.group)


def test_cubical_kernel_rejects_mismatch():
    with pytest.raises(ValueError):
        cubical_kernel([Hom.identity(Z)], [])
    with pytest.raises(ValueError):
        cubical_kernel([Hom.identity(Z)], [Hom.identity(Z4)])


# -- resolutions --------------------------------------------------------------


def test_resolution_of_z4_low_degrees():
    p = build_resolution(Z4, 2)
    assert p.augmentation.is_surjective()
    assert p.kernels[1].group.canonical == (2, ())
    assert p.groups[1].canonical == (2, ())
    assert validate_resolution(p, "precubical").ok


def test_resolution_of_zero_group():
    p = full_resolution(FgAbGroup.trivial(), 3)
    assert all(g.is_trivial() for g in p.groups)
    assert all(s.is_zero() for s in p.degeneracies.values())
    assert all(c.is_zero() for c in p.connections.values())


def test_resolution_ranks():
    assert [g.ngens for g in build_resolution(Z4, 3).groups] == [1, 2, 4, 8]
    assert [g.ngens for g in build_resolution(Z, 2).groups] == [1, 1, 1]


@pytest.mark.parametrize("a", ["Z", "Z/4", "Z/6", "Z + Z/2"])
def test_full_resolution_is_pcpc(a):
    p = full_resolution(parse_group(a), 3)
    assert p.level == "pcpc"
    assert validate_resolution(p, "pcpc").ok
    assert validate_cubical(p.cubical(), "pcpc").ok
    assert all(in_projective_class(g) for g in p.groups)


def test_degeneracy_and_connection_base_steps():
    p = full_resolution(Z4, 2)
    s1, g1 = p.degeneracies[(1, 1)], p.connections[(1, 1)]
    ident0, ident1 = Hom.identity(p.groups[0]), Hom.identity(p.groups[1])
    assert p.face(1, 1, 0) @ s1 == ident0 == p.face(1, 1, 1) @ s1
    assert p.face(2, 1, 0) @ g1 == ident1 == p.face(2, 2, 0) @ g1
    assert p.face(2, 1, 1) @ g1 == s1 @ p.face(1, 1, 1) == p.face(2, 2, 1) @ g1


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_seeded_resolution_is_valid(seed):
    p = full_resolution(Z4, 3, seed=seed, extra=1)
    assert p.groups[0].ngens == 2
    assert validate_resolution(p, "pcpc").ok
    assert resolution_em_report(p).ok


@pytest.mark.parametrize("a", ["Z", "Z/4", "Z/2 + Z/3", "0"])
def test_resolution_normalizations_resolve(a):
    assert resolution_em_report(full_resolution(parse_group(a), 3)).ok


# -- comparison ---------------------------------------------------------------


def test_identity_lift_of_identity():
    p = full_resolution(Z4, 3)
    f = comparison_lift(Hom.identity(Z4), p, p)
    assert all(c == Hom.identity(c.source) for c in f.components)


def test_zero_lift():
    p, q = full_resolution(Z4, 2), full_resolution(parse_group("Z/2"), 2)
    f = comparison_lift(Hom.zero(Z4, q.target), p, q)
    assert all(c.is_zero() for c in f.components)


def test_lift_of_projection():
    z2 = parse_group("Z/2")
    p, q = full_resolution(Z4, 3), full_resolution(z2, 3)
    proj = Hom(Z4, z2, IntMatrix([[1]]))
    f = comparison_lift(proj, p, q)
    assert validate_cubical_morphism(f, "precubical").ok
    assert lift_covers(f, proj, p, q)
    g = comparison_lift(proj, p, q, seed=5)
    assert validate_cubical_morphism(g, "precubical").ok and lift_covers(g, proj, p, q)
    assert validate_precubical_homotopy(comparison_homotopy(f, g, q)).ok


def test_homotopy_between_equal_lifts():
    p = full_resolution(Z, 2)
    f = comparison_lift(Hom.identity(Z), p, p)
    assert validate_precubical_homotopy(comparison_homotopy(f, f, p)).ok


def test_homotopy_rejects_different_maps():
    p = full_resolution(Z4, 2)
    f = comparison_lift(Hom.identity(Z4), p, p)
    g = comparison_lift(Hom.zero(Z4, Z4), p, p)
    with pytest.raises(ValueError):
        comparison_homotopy(f, g, p)


@pytest.mark.parametrize("a,b", [("Z/4", "Z/6"), ("Z/2 + Z/3", "Z/2"), ("Z", "Z/5")])
def test_homotopic_lifts_report(a, b):
    rep = homotopic_lifts_report(parse_group(a), parse_group(b), 3)
    assert rep.ok and rep.details["distinct_lifts"]


# -- functors -----------------------------------------------------------------


def test_identity_functor_changes_nothing():
    x = full_resolution(Z4, 2).cubical()
    y = apply_functor(AdditiveFunctor.identity(), x)
    assert all(g.same_presentation(h) for g, h in zip(x.groups, y.groups))
    assert all(y.faces[k] == x.faces[k] for k in x.faces)


def test_tensor_of_constant():
    y = apply_functor(AdditiveFunctor.tensor(parse_group("Z/6")), constant_cubical(Z4, 2))
    assert strs(y.groups) == ["Z/2"] * 3
    assert validate_cubical(y, "cc").ok


def test_functor_is_additive():
    a, b = parse_group("Z/4"), parse_group("Z + Z/3")
    for t in (AdditiveFunctor.tensor(parse_group("Z/6")), AdditiveFunctor.hom_from(parse_group("Z/2"))):
        assert t.on_group(direct_sum(a, b)) == direct_sum(t.on_group(a), t.on_group(b))


def test_hom_functor_on_groups():
    t = AdditiveFunctor.hom_from(parse_group("Z/2"))
    assert str(t.on_group(parse_group("Z/4"))) == "Z/2"
    assert t.on_group(Z).is_trivial()


# -- derived functors ---------------------------------------------------------


def test_derived_tensor_of_z4_with_z6():
    t = AdditiveFunctor.tensor(parse_group("Z/6"))
    for v in "NM":
        assert strs(derived_functors(t, Z4, 3, v)) == ["Z/2", "Z/2", "0"]


def test_variant_c_is_not_derived():
    t = AdditiveFunctor.tensor(parse_group("Z/6"))
    assert strs(derived_functors(t, Z, 3, "C")) == ["Z/6"] * 3
    assert strs(derived_functors(t, Z, 3, "N")) == ["Z/6", "0", "0"]
    with pytest.raises(ValueError):
        derived_functors(t, Z, 3, "F")


@pytest.mark.parametrize("seed", [3, 4])
def test_derived_independent_of_resolution(seed):
    t = AdditiveFunctor.tensor(parse_group("Z/6"))
    p = full_resolution(Z4, 3, seed=seed, extra=2)
    assert derived_functors(t, Z4, 3, "N", p) == derived_functors(t, Z4, 3, "N")


def test_higher_derived_vanish_on_free():
    t = AdditiveFunctor.tensor(parse_group("Z/4 + Z/6"))
    hs = derived_functors(t, FgAbGroup.free(2), 3)
    assert all(h.is_trivial() for h in hs[1:])


def test_tor_oracle_examples():
    assert str(tor_oracle(Z4, parse_group("Z/6"), 0)) == "Z/2"
    assert str(tor_oracle(Z4, parse_group("Z/6"), 1)) == "Z/2"
    assert tor_oracle(parse_group("Z/2"), parse_group("Z/3"), 1).is_trivial()
    assert tor_oracle(Z, Z4, 1).is_trivial()
    assert tor_oracle(Z4, Z4, 2).is_trivial()
    with pytest.raises(ValueError):
        tor_oracle(Z, Z, -1)


def test_classical_derived_matches_tor_oracle():
    b = parse_group("Z/6")
    t = AdditiveFunctor.tensor(b)
    for a in ("Z/4", "Z + Z/9", "Z^2"):
        g = parse_group(a)
        assert all(classical_derived(t, g, n) == tor_oracle(g, b, n) for n in range(3))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12))
def test_cyclic_tor_against_gcd(m, k):
    a, b = FgAbGroup.cyclic(m), FgAbGroup.cyclic(k)
    hs = derived_functors(AdditiveFunctor.tensor(b), a, 3)
    assert hs[0].order() == cyclic_tensor(m, k)
    assert hs[1].order() == cyclic_tor1(m, k)
    assert hs[2].is_trivial()
    assert hs[0].canonical == (0, (math.gcd(m, k),) if math.gcd(m, k) > 1 else ())


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_random_pairs_match_classical(seed):
    rng = random.Random(seed)
    a, b = random_group(rng), random_group(rng)
    assert compare_with_classical(b, a, 3).ok


@pytest.mark.parametrize("a,b", [("Z/4", "Z/2"), ("Z + Z/6", "Z/3"), ("Z/9", "Z/6")])
def test_hom_functor_matches_classical(a, b):
    assert compare_hom_functor(parse_group(b), parse_group(a), 3).ok


# -- exactness ----------------------------------------------------------------


def test_em_exact_flags_defect():
    # 0 -> Z --0--> Z -> Z/4: the middle is not exact
    c = ChainComplex([Z, Z], [Hom.zero(Z, Z)])
    aug = AugmentedChainComplex(c, Z4, Hom(Z, Z4, IntMatrix([[1]])))
    rep = em_exact_check(aug)
    assert not rep.ok
    assert rep.failures[0]["degree"] == 0


def test_em_exact_accepts_two_term():
    c = ChainComplex([Z, Z], [Hom(Z, Z, IntMatrix([[4]]))])
    assert em_exact_check(AugmentedChainComplex(c, Z4, Hom(Z, Z4, IntMatrix([[1]]))), require_free=True).ok


def test_resolution_homology_is_target():
    p = full_resolution(Z4, 3)
    hs = homologies(normalize(p.cubical(), "N").complex)
    assert strs(hs) == ["Z/4", "0", "0"]


def test_lift_is_cubical_morphism_type():
    p = full_resolution(Z, 2)
    assert isinstance(comparison_lift(Hom.identity(Z), p, p), CubicalMorphism)


@pytest.mark.parametrize("a", ["Z", "Z/4", "Z/2 + Z/3"])
def test_kernel_factorizations_are_unique(a):
    # an injective inclusion means a compatible family factors in exactly one way
    p = build_resolution(parse_group(a), 3)
    for n in range(1, 4):
        k = p.kernels[n]
        assert k.inclusion.is_injective()
        assert p.covers[n].is_surjective()
        fam = {(i, w): p.face(n, i, w) for i in range(1, n + 1) for w in (0, 1)}
        assert k.factor(fam) == p.covers[n]
