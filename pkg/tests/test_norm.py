import pytest

from moorebox import corpus
from moorebox.chain import homologies, induced_map, validate_chain_map, validate_complex, validate_homotopy
from moorebox.cubical import Poset, constant_cubical, linearize, poset_cubical_set
from moorebox.derive import comparison_lift, comparison_homotopy, full_resolution
from moorebox.exactalg import FgAbGroup, Hom, IntMatrix, parse_group
from moorebox.norm import (inclusion_map, moore_inclusion_equivalence, nbar_identities, normalize, normalize_morphism,
                           precubical_to_chain_homotopy, sigma_tau, sigma_tau_check, splitting_check, validate_moore_equivalence)

Z = FgAbGroup.free(1)
CC = corpus.cc_objects(3)
PCPC = corpus.pcpc_objects(3)


def names(objs):
    return [n for n, _ in objs]


def test_constant_normalizations():
    a = parse_group("Z/4")
    x = constant_cubical(a, 3)
    n, m, c, f = (normalize(x, v).complex for v in "NMCF")
    assert str(n.groups[0]) == str(m.groups[0]) == "Z/4"
    assert all(g.is_trivial() for g in n.groups[1:] + m.groups[1:] + f.groups)
    assert all(str(g) == "Z/4" for g in c.groups)
    assert all(d.is_zero() for d in c.differentials)


@pytest.mark.parametrize("x", [x for _, x in CC], ids=names(CC))
def test_f_vanishes_in_low_degrees(x):
    f = normalize(x, "F").complex
    assert f.groups[0].is_trivial() and f.groups[1].is_trivial()


@pytest.mark.parametrize("x", [x for _, x in PCPC], ids=names(PCPC))
@pytest.mark.parametrize("variant", ["N", "M", "C"])
def test_normalizations_are_complexes(x, variant):
    assert validate_complex(normalize(x, variant).complex).ok


def test_chain_poset_homology():
    x = linearize(poset_cubical_set(Poset.chain(2), 3), Z)
    assert [str(h) for h in homologies(normalize(x, "N").complex)][:2] == ["Z", "0"]


def test_unknown_variant():
    with pytest.raises(ValueError):
        normalize(constant_cubical(Z, 1), "Q")


def test_constant_moore_equivalence():
    e = moore_inclusion_equivalence(constant_cubical(Z, 3))
    assert e.i[0] == Hom.identity(Z) and e.r[0] == Hom.identity(Z)
    assert all(c.source.is_trivial() for c in e.i.components[1:])


@pytest.mark.parametrize("x", [x for _, x in PCPC], ids=names(PCPC))
def test_moore_equivalence_on_corpus(x):
    assert validate_moore_equivalence(moore_inclusion_equivalence(x)).ok


@pytest.mark.parametrize("x", [x for _, x in PCPC], ids=names(PCPC))
def test_nbar_identities_on_corpus(x):
    assert nbar_identities(x).ok


@pytest.mark.parametrize("x", [x for _, x in CC], ids=names(CC))
def test_splitting_on_corpus(x):
    assert splitting_check(x, 3).ok


def test_splitting_ranks_for_chain_poset():
    x = linearize(poset_cubical_set(Poset.chain(2), 3), Z)
    n, m, f = (normalize(x, v).complex.groups[2] for v in "NMF")
    assert n.free_rank == m.free_rank + f.free_rank


def test_antichain_splitting_is_trivial():
    x = linearize(poset_cubical_set(Poset.antichain(2), 3), Z)
    n, m, f = (normalize(x, v).complex for v in "NMF")
    assert all(g.is_trivial() for g in n.groups[1:] + f.groups)
    assert str(n.groups[0]) == str(m.groups[0]) == "Z^2"


def test_sigma_tau_examples():
    x = constant_cubical(Z, 3)
    sigma, tau, nu = sigma_tau(x, 0)
    assert sigma == Hom.identity(Z) and tau == Hom.identity(Z) and nu == Hom.identity(Z)
    for n in (1, 2, 3):
        sigma, tau, _ = sigma_tau(x, n)
        assert sigma.is_zero() and tau.source.ngens == 1 and tau.target.is_trivial()


@pytest.mark.parametrize("x", [x for _, x in PCPC], ids=names(PCPC))
def test_sigma_kills_one_faces(x):
    assert sigma_tau_check(x).ok


def test_n_and_m_agree_on_corpus():
    for _, x in PCPC:
        assert homologies(normalize(x, "N").complex) == homologies(normalize(x, "M").complex)


def two_lifts():
    z4, z2 = parse_group("Z/4"), parse_group("Z/2")
    p, q = full_resolution(z4, 3), full_resolution(z2, 3, seed=2, extra=1)
    proj = Hom(z4, z2, IntMatrix([[1]]))
    return comparison_lift(proj, p, q), comparison_lift(proj, p, q, seed=9), q


def test_normalization_commutes_with_restriction():
    f, _, _ = two_lifts()
    ms, ns = normalize(f.source, "M"), normalize(f.source, "N")
    mt, nt = normalize(f.target, "M"), normalize(f.target, "N")
    nf = normalize_morphism(f, "N", ns, nt)
    mf = normalize_morphism(f, "M", ms, mt)
    assert validate_chain_map(nf).ok and validate_chain_map(mf).ok
    i_s, i_t = inclusion_map(ms, ns), inclusion_map(mt, nt)
    assert all(nf[n] @ i_s[n] == i_t[n] @ mf[n] for n in range(4))


def test_precubical_homotopy_gives_chain_homotopy():
    f, g, q = two_lifts()
    h = comparison_homotopy(f, g, q)
    t = precubical_to_chain_homotopy(h)
    assert validate_homotopy(t).ok


def test_homotopic_maps_agree_on_moore_homology():
    f, g, _ = two_lifts()
    ms, mt = normalize(f.source, "M"), normalize(f.target, "M")
    mf, mg = normalize_morphism(f, "M", ms, mt), normalize_morphism(g, "M", ms, mt)
    assert any(not a == b for a, b in zip(mf.components, mg.components))
    for n in range(3):
        assert induced_map(mf, n) == induced_map(mg, n)
