"""Cubical normalizations N, M, C, F and the comparisons between them."""

from __future__ import annotations

from dataclasses import dataclass

from .chain import (ChainComplex, ChainHomotopy, ChainMap, homologies, validate_chain_map,
                    validate_complex, validate_homotopy)
from .cubical import CubicalMorphism, CubicalObject, PrecubicalHomotopy, normalized_subgroup
from .exactalg import (Hom, cokernel, factor_through, intersect_kernels,
                       same_subgroup, subgroup_from_vectors, subgroup_intersection, subgroup_sum)
from .report import Report
from .simplicial import hat_I_data, hat_J, nbar, simplicial_moore_equivalence

VARIANTS = ("N", "M", "C", "F")


@dataclass(frozen=True)
class NormalizationResult:
    variant: str
    complex: ChainComplex
    inclusions: tuple  # inclusions[n] : complex_n -> X_n

    @property
    def dim_bound(self) -> int:
        return self.complex.dim_bound


@dataclass(frozen=True)
class MooreEquivalence:
    i: ChainMap  # M -> N
    r: ChainMap  # N -> M
    h: ChainHomotopy  # i∘r ≃ id_N


def n_differential(x: CubicalObject, n: int) -> Hom:
    """``Σ (-1)^{i+1} ∂_i^0 : X_n -> X_{n-1}``."""
    d = Hom.zero(x.groups[n], x.groups[n - 1])
    for i in range(1, n + 1):
        d = d + x.face(n, i, 0) if i % 2 else d - x.face(n, i, 0)
    return d


def _restricted_complex(x: CubicalObject, subs, ambient_d) -> ChainComplex:
    diffs = [factor_through(subs[n - 1][1], ambient_d(n) @ subs[n][1]) for n in range(1, x.dim_bound + 1)]
    return ChainComplex([g for g, _ in subs], diffs)


def _m_subgroup(x: CubicalObject, n: int):
    fs = [x.face(n, i, 1) for i in range(1, n + 1)] + [x.face(n, i, 0) for i in range(1, n)]
    return intersect_kernels(fs, x.groups[n])


def _f_subgroup(x: CubicalObject, n: int, nsubs):
    g = x.groups[n]
    if n < 2:
        return subgroup_from_vectors(g, [])
    vecs = []
    for i in range(1, n):
        conn = x.conn(n - 1, i)
        if conn is None:
            raise ValueError(f"variant F needs the connection Γ_{i} from degree {n - 1}")
        vecs.extend((conn @ nsubs[n - 1][1]).matrix.columns())
    return subgroup_from_vectors(g, vecs)


def normalize(x: CubicalObject, variant: str) -> NormalizationResult:
    """One of the four normalization complexes, with its degreewise embedding into ``X``."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    D = x.dim_bound
    if variant == "C":
        def dc(n):
            d = Hom.zero(x.groups[n], x.groups[n - 1])
            for i in range(1, n + 1):
                term = x.face(n, i, 1) - x.face(n, i, 0)
                d = d + term if i % 2 == 0 else d - term
            return d
        c = ChainComplex(x.groups, [dc(n) for n in range(1, D + 1)])
        return NormalizationResult("C", c, tuple(Hom.identity(g) for g in x.groups))
    nsubs = [normalized_subgroup(x, n) for n in range(D + 1)]
    if variant == "N":
        subs = nsubs
        c = _restricted_complex(x, subs, lambda n: n_differential(x, n))
    elif variant == "M":
        subs = [_m_subgroup(x, n) for n in range(D + 1)]
        c = _restricted_complex(x, subs, lambda n: (-1) ** (n + 1) * x.face(n, n, 0))
    else:
        if x.connections is None:
            raise ValueError("variant F needs connections")
        subs = [_f_subgroup(x, n, nsubs) for n in range(D + 1)]
        c = _restricted_complex(x, subs, lambda n: n_differential(x, n))
    return NormalizationResult(variant, c, tuple(incl for _, incl in subs))


def normalize_morphism(f: CubicalMorphism, variant: str, source: NormalizationResult = None,
                       target: NormalizationResult = None) -> ChainMap:
    """Restriction of a cubical morphism to the chosen normalization."""
    src = source or normalize(f.source, variant)
    tgt = target or normalize(f.target, variant)
    comps = [factor_through(tgt.inclusions[n], f[n] @ src.inclusions[n]) for n in range(f.source.dim_bound + 1)]
    return ChainMap(src.complex, tgt.complex, comps)


def inclusion_map(sub: NormalizationResult, sup: NormalizationResult) -> ChainMap:
    """The degreewise inclusion of one normalization into another (e.g. ``M -> N``)."""
    comps = [factor_through(sup.inclusions[n], sub.inclusions[n]) for n in range(sub.dim_bound + 1)]
    return ChainMap(sub.complex, sup.complex, comps)


def complexes_equal(a: ChainComplex, b: ChainComplex) -> bool:
    """Literal equality: identical presentations and equal differentials."""
    if a.dim_bound != b.dim_bound:
        return False
    if not all(g.same_presentation(h) for g, h in zip(a.groups, b.groups)):
        return False
    return all(da.matrix.shape == db.matrix.shape and da == db
               for da, db in zip(a.differentials, b.differentials))


def rebase(c: ChainComplex, embeddings, ambient) -> NormalizationResult:
    """Re-express a complex of subgroups in the canonical basis of its image in ``ambient``."""
    subs = [subgroup_from_vectors(ambient[n], embeddings[n].matrix.columns()) for n in range(c.dim_bound + 1)]
    to_new = [factor_through(subs[n][1], embeddings[n]) for n in range(c.dim_bound + 1)]
    diffs = []
    for n in range(1, c.dim_bound + 1):
        # d_new ∘ to_new = to_new ∘ d_old and to_new is an isomorphism
        back = factor_through(embeddings[n], subs[n][1])
        diffs.append(to_new[n - 1] @ c.d(n) @ back)
    return NormalizationResult("rebased", ChainComplex([g for g, _ in subs], diffs),
                               tuple(incl for _, incl in subs))


def nbar_identities(x: CubicalObject) -> Report:
    """Check ``Î∘N̄ = M`` and ``Ĵ∘N̄ = N`` as literal complexes after canonical re-basing."""
    rep = Report("nbar_identities")
    s = nbar(x)
    n_res = normalize(x, "N")
    m_res = normalize(x, "M")
    j = hat_J(s)
    rep.expect(complexes_equal(j, n_res.complex), identity="hat_J(nbar X) = N(X)")
    i_c, i_incl = hat_I_data(s)
    emb = [n_res.inclusions[k] @ i_incl[k] for k in range(x.dim_bound + 1)]
    rebased = rebase(i_c, emb, x.groups)
    rep.expect(complexes_equal(rebased.complex, m_res.complex), identity="hat_I(nbar X) = M(X)")
    return rep


def moore_inclusion_equivalence(x: CubicalObject) -> MooreEquivalence:
    """The inclusion ``i : M -> N`` with retraction ``r`` and homotopy ``h : i∘r ≃ id``."""
    if x.connections is None:
        raise ValueError("the Moore equivalence needs pseudoconnections")
    n_res = normalize(x, "N")
    m_res = normalize(x, "M")
    i = inclusion_map(m_res, n_res)
    s = nbar(x)
    r_hat, h_hat = simplicial_moore_equivalence(s)
    _, i_incl = hat_I_data(s)
    N, M = n_res.complex, m_res.complex
    r_comp = []
    for k in range(x.dim_bound + 1):
        onto_n = Hom(r_hat.target.groups[k], N.groups[k], i_incl[k].matrix) @ r_hat[k]
        r_comp.append(factor_through(i[k], Hom(N.groups[k], N.groups[k], onto_n.matrix)))
    r = ChainMap(N, M, r_comp)
    h = ChainHomotopy(i.compose(r), ChainMap.identity(N),
                      [Hom(N.groups[k], N.groups[k + 1], hk.matrix) for k, hk in enumerate(h_hat.components)])
    return MooreEquivalence(i, r, h)


def validate_moore_equivalence(e: MooreEquivalence) -> Report:
    rep = Report("moore_equivalence")
    rep.absorb(validate_chain_map(e.i), part="i")
    rep.absorb(validate_chain_map(e.r), part="r")
    ri = e.r.compose(e.i)
    for n, comp in enumerate(ri.components):
        rep.expect(comp == Hom.identity(e.i.source.groups[n]), degree=n, identity="r i = id")
    rep.absorb(validate_homotopy(e.h), part="h")
    hm = homologies(e.i.source)
    hn = homologies(e.i.target)
    rep.details["homology_M"] = [str(g) for g in hm]
    rep.details["homology_N"] = [str(g) for g in hn]
    for n, (a, b) in enumerate(zip(hm, hn)):
        rep.expect(a == b, degree=n, identity="H(M) = H(N)")
    return rep


def splitting_check(x: CubicalObject, upto: int = None) -> Report:
    """``M_n ∩ F_n = 0`` and ``M_n + F_n = N_n`` degreewise, plus ``M ≅ N/F``."""
    if x.connections is None:
        raise ValueError("splitting needs connections")
    top = x.dim_bound if upto is None else min(upto, x.dim_bound)
    n_res, m_res, f_res = (normalize(x, v) for v in ("N", "M", "F"))
    rep = Report("splitting", details={"degrees": []})
    quotients = []
    for n in range(top + 1):
        nu, mu, fi = n_res.inclusions[n], m_res.inclusions[n], f_res.inclusions[n]
        inter, _ = subgroup_intersection(mu, fi)
        rep.expect(inter.is_trivial(), degree=n, identity="M ∩ F = 0")
        _, sum_incl = subgroup_sum(mu, fi)
        rep.expect(same_subgroup(sum_incl, nu), degree=n, identity="M + F = N")
        f_in_n = factor_through(nu, fi)
        q, _ = cokernel(f_in_n)
        quotients.append(q)
        rep.expect(q == m_res.complex.groups[n], degree=n, identity="M ≅ N/F")
        rep.details["degrees"].append({"degree": n, "N": str(n_res.complex.groups[n]),
                                       "M": str(m_res.complex.groups[n]), "F": str(f_res.complex.groups[n])})
    # the projection N -> N/F induces isomorphisms on homology in certified degrees
    if top == x.dim_bound:
        nf = ChainComplex(quotients, [Hom(quotients[n], quotients[n - 1], n_res.complex.d(n).matrix)
                                      for n in range(1, top + 1)])
        for n, (a, b) in enumerate(zip(homologies(nf), homologies(n_res.complex))):
            rep.expect(a == b, degree=n, identity="H(N/F) = H(N)")
    return rep


def sigma_tau(x: CubicalObject, n: int):
    """``σ_n = (id - s_1∂_1^1)⋯(id - s_n∂_n^1)`` with its factorization ``σ_n = ν_n τ_n``."""
    if n >= 1 and x.degeneracies is None:
        raise ValueError("σ needs pseudodegeneracies")
    g = x.groups[n]
    sigma = Hom.identity(g)
    for i in range(n, 0, -1):
        sigma = (Hom.identity(g) - x.degen(n, i) @ x.face(n, i, 1)) @ sigma
    _, nu = normalized_subgroup(x, n)
    tau = factor_through(nu, sigma)
    return sigma, tau, nu


def sigma_tau_check(x: CubicalObject) -> Report:
    rep = Report("sigma_tau")
    for n in range(x.dim_bound + 1):
        sigma, tau, nu = sigma_tau(x, n)
        for j in range(1, n + 1):
            rep.expect((x.face(n, j, 1) @ sigma).is_zero(), degree=n, identity=f"∂_{j}^1 σ = 0")
        rep.expect(nu @ tau == sigma, degree=n, identity="σ = ν τ")
        rep.expect(tau @ nu == Hom.identity(nu.source), degree=n, identity="τ ν = id")
    return rep


def precubical_to_chain_homotopy(h: PrecubicalHomotopy, source: NormalizationResult = None,
                                 target: NormalizationResult = None) -> ChainHomotopy:
    """``t_n = (h_n - g_{n+1} s_1) ν_n`` from ``N(f)`` to ``N(g)``; the source needs pseudodegeneracies."""
    f, g = h.f, h.g
    x = f.source
    if x.dim_bound >= 1 and x.degeneracies is None:
        raise ValueError("the source needs pseudodegeneracies")
    src = source or normalize(x, "N")
    tgt = target or normalize(f.target, "N")
    nf = normalize_morphism(f, "N", src, tgt)
    ng = normalize_morphism(g, "N", src, tgt)
    comps = []
    for n in range(x.dim_bound):
        t = (h.components[n] - g[n + 1] @ x.degen(n + 1, 1)) @ src.inclusions[n]
        comps.append(factor_through(tgt.inclusions[n + 1], t))
    return ChainHomotopy(nf, ng, comps)


def normalization_report(x: CubicalObject, variant: str) -> Report:
    res = normalize(x, variant)
    rep = validate_complex(res.complex)
    rep.check = f"normalization_{variant}"
    rep.details["groups"] = [str(g) for g in res.complex.groups]
    rep.details["homology"] = [str(g) for g in homologies(res.complex)]
    return rep
