import pytest

from moorebox.chain import homologies, validate_chain_map, validate_homotopy
from moorebox.cubical import CubicalObject, Poset, all_posets, constant_cubical, linearize, poset_cubical_set, zero_cubical
from moorebox.exactalg import FgAbGroup, Hom, parse_group
from moorebox.norm import complexes_equal, normalize, rebase
from moorebox.simplicial import (SimplicialObject, constant_simplicial, hat_I, hat_I_data, hat_J, moore_I,
                                 moore_I_data, moore_inclusion, nbar, simplicial_moore_equivalence,
                                 unnormalized_J, validate_simplicial)

Z = FgAbGroup.free(1)


def chain_poset(k=2, D=3, coeff=Z):
    return linearize(poset_cubical_set(Poset.chain(k), D), coeff)


def test_constant_simplicial_valid():
    assert validate_simplicial(constant_simplicial(Z, 3), "simplicial").ok


def test_broken_degeneracy_is_located():
    s = constant_simplicial(Z, 2)
    degs = dict(s.degeneracies)
    degs[(1, 0)] = Hom.zero(Z, Z)
    rep = validate_simplicial(SimplicialObject(s.groups, s.faces, degs, "simplicial"), "simplicial")
    assert not rep.ok
    assert all("degree" in f for f in rep.failures)


def test_nbar_of_constant():
    s = nbar(constant_cubical(parse_group("Z/2"), 3))
    assert validate_simplicial(s, "pseudosimplicial").ok
    assert str(s.target) == "Z/2"
    assert all(g.is_trivial() for g in s.object.groups)


def test_nbar_of_zero_object():
    s = nbar(zero_cubical(2))
    assert s.target.is_trivial() and all(g.is_trivial() for g in s.object.groups)


def test_constant_I_and_J():
    s = constant_simplicial(Z, 4)
    i = moore_I(s)
    assert str(i.groups[0]) == "Z" and all(g.is_trivial() for g in i.groups[1:])
    assert str(homologies(i)[0]) == "Z"
    j = unnormalized_J(s)
    # alternating sums of identities: 0, id, 0, id, ...
    assert [j.d(n).is_zero() for n in range(1, 5)] == [True, False, True, False]
    assert [str(h) for h in homologies(j)] == ["Z", "0", "0", "0"]
    i2, incl = moore_I_data(s)
    assert validate_chain_map(moore_inclusion(i2, j, incl)).ok


@pytest.mark.parametrize("x", [constant_cubical(Z, 3), chain_poset(), chain_poset(3)],
                         ids=["constant", "chain2", "chain3"])
def test_hat_functors_recover_normalizations(x):
    s = nbar(x)
    assert validate_simplicial(s, "pseudosimplicial").ok
    n_res, m_res = normalize(x, "N"), normalize(x, "M")
    # Ĵ∘N̄ = N: groups and differentials agree in the cubical embedding
    emb = (Hom.identity(x.groups[0]),) + tuple(s.embeddings)
    assert complexes_equal(rebase(hat_J(s), emb, x.groups).complex, n_res.complex)
    i_hat, incl = hat_I_data(s)
    m_emb = [emb[k] @ incl[k] for k in range(len(incl))]
    assert complexes_equal(rebase(i_hat, m_emb, x.groups).complex, m_res.complex)
    assert [str(g) for g in homologies(hat_I(s))] == [str(g) for g in homologies(m_res.complex)]


def test_zero_object_equivalence_is_zero():
    s = nbar(zero_cubical(2))
    r, h = simplicial_moore_equivalence(s)
    assert all(c.is_zero() for c in r.components)
    assert all(c.is_zero() for c in h.components)


@pytest.mark.parametrize("x", [constant_cubical(Z, 3), chain_poset()] + [
    linearize(poset_cubical_set(p, 3), Z) for p in all_posets(3)], ids=lambda x: str([g.ngens for g in x.groups]))
def test_simplicial_moore_equivalence(x):
    s = nbar(x)
    r, h = simplicial_moore_equivalence(s)
    i_hat, incl = hat_I_data(s)
    iota = moore_inclusion(i_hat, hat_J(s), incl)
    assert validate_chain_map(r).ok
    ri = r.compose(iota)
    assert all(c == Hom.identity(c.source) for c in ri.components)
    assert validate_homotopy(h).ok
    assert homologies(i_hat) == homologies(hat_J(s))


def test_nbar_requires_connections():
    x = constant_cubical(Z, 2)
    with pytest.raises(ValueError):
        nbar(CubicalObject(x.groups, x.faces, x.degeneracies, None, "cubical"))
