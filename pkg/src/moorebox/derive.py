"""Projective precubical resolutions and cubical derived functors over the integers.

The projective class is the finite-rank free abelian groups, so a map is
epimorphic relative to it exactly when it is surjective, and every lift
below is a canonical integer solve.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from typing import Optional

from .chain import (AugmentedChainComplex, ChainComplex, TruncationWarning, homologies,
                    homology, induced_map, validate_homotopy)
from .cubical import (AugmentedCubicalObject, CubicalMorphism, CubicalObject, PrecubicalHomotopy,
                      normalized_subgroup, validate_cubical_morphism, validate_precubical_homotopy)
from .exactalg import (FgAbGroup, Hom, IntMatrix, cokernel, direct_sum, factor_through,
                       hom_kernel, hstack, lift_through, same_subgroup, stack_homs,
                       tensor_groups, vstack)
from .norm import normalize, precubical_to_chain_homotopy, sigma_tau
from .report import Report


def in_projective_class(g: FgAbGroup) -> bool:
    """Membership in the projective class: finite-rank free."""
    return g.is_free()


# ---------------------------------------------------------------------------
# cubical kernels


@dataclass(frozen=True)
class CubicalKernelResult:
    """``K`` with projections ``k_i^α : K -> A``; slot ``2(i-1)+α`` of ``A^{2m}``."""

    group: FgAbGroup
    inclusion: Hom            # K -> A^{2m}
    ambient: FgAbGroup        # the group A
    size: int                 # m = number of indices i

    def projection(self, i: int, a: int) -> Hom:
        n = self.ambient.ngens
        slot = 2 * (i - 1) + a
        block = self.inclusion.matrix.block(slot * n, (slot + 1) * n, 0, self.group.ngens)
        return Hom(self.group, self.ambient, block)

    def factor(self, family: dict) -> Hom:
        """The unique ``h`` with ``k_i^α h = family[(i, α)]`` (the family must be compatible)."""
        keys = [(i, a) for i in range(1, self.size + 1) for a in (0, 1)]
        stacked = stack_homs([family[k] for k in keys])
        return factor_through(self.inclusion, Hom(stacked.source, self.inclusion.target, stacked.matrix))


def cubical_kernel(f0, f1) -> CubicalKernelResult:
    """Cubical kernel of ``(f_1^0..f_n^0, f_1^1..f_n^1) : A -> B``.

    ``K ⊆ A^{2(n+1)}`` cut out by ``f_i^ω k_j^α = f_{j-1}^α k_i^ω`` for ``i < j``.
    """
    f0, f1 = list(f0), list(f1)
    n = len(f0)
    if n < 1 or len(f1) != n:
        raise ValueError("cubical kernel needs n >= 1 maps of each kind")
    a, b = f0[0].source, f0[0].target
    for f in f0 + f1:
        if not (f.source.same_presentation(a) and f.target.same_presentation(b)):
            raise ValueError("cubical kernel maps must share source and target")
    fam = {0: f0, 1: f1}
    m = n + 1
    na, nb = a.ngens, b.ngens
    rows = []
    for j in range(2, m + 1):
        for i in range(1, j):
            for w in (0, 1):
                for al in (0, 1):
                    # f_i^w on slot (j, al) minus f_{j-1}^al on slot (i, w)
                    blocks = [IntMatrix.zeros(nb, na) for _ in range(2 * m)]
                    blocks[2 * (j - 1) + al] = fam[w][i - 1].matrix
                    blocks[2 * (i - 1) + w] = blocks[2 * (i - 1) + w] - fam[al][j - 2].matrix
                    rows.append(hstack(*blocks))
    power = direct_sum(*([a] * (2 * m)))
    eq_target = direct_sum(*([b] * len(rows)))
    eqs = Hom(power, eq_target, vstack(*rows))
    k, incl = hom_kernel(eqs, check=False)
    return CubicalKernelResult(k, incl, a, m)


def kernel_pair(f: Hom) -> CubicalKernelResult:
    """``{(x, y) : f x = f y}`` with its two projections ``k_1^0, k_1^1``."""
    a = f.source
    power = direct_sum(a, a)
    diff = Hom(power, f.target, hstack(f.matrix, -f.matrix))
    k, incl = hom_kernel(diff, check=False)
    return CubicalKernelResult(k, incl, a, 1)


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class Resolution:
    """Augmented precubical resolution ``P -> A`` with its kernel factorizations."""

    target: FgAbGroup
    groups: list
    augmentation: Hom
    faces: dict
    kernels: list                 # kernels[n] = K_n for n >= 1 (index 0 unused)
    covers: list                  # covers[n] = e_n : P_n -> K_n for n >= 1 (index 0 unused)
    degeneracies: Optional[dict] = None
    connections: Optional[dict] = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim_bound(self) -> int:
        return len(self.groups) - 1

    @property
    def level(self) -> str:
        if self.connections is not None:
            return "pcpc"
        if self.degeneracies is not None:
            return "pseudocubical"
        return "precubical"

    def cubical(self) -> CubicalObject:
        return CubicalObject(self.groups, self.faces, self.degeneracies, self.connections, self.level)

    def augmented(self) -> AugmentedCubicalObject:
        return AugmentedCubicalObject(self.cubical(), self.target, self.augmentation)

    def face(self, n: int, i: int, a: int) -> Hom:
        return self.faces[(n, i, a)]


def _signed_permutation(r: int, rng: random.Random) -> IntMatrix:
    perm = list(range(r))
    rng.shuffle(perm)
    return IntMatrix([[rng.choice((1, -1)) if perm[i] == j else 0 for j in range(r)] for i in range(r)], r, r)


def _cover(k: FgAbGroup, rng: Optional[random.Random]):
    """Free group with a surjection onto ``k`` (``k`` is free here).

    Without ``rng`` the cover is the identity on the canonical basis; with it
    the basis is shuffled and re-signed, which keeps entries small.
    """
    r = k.ngens
    p = FgAbGroup.free(r)
    if rng is None:
        return p, Hom(p, k, IntMatrix.identity(r))
    return p, Hom(p, k, _signed_permutation(r, rng))


def build_resolution(a: FgAbGroup, dim_bound: int, seed: Optional[int] = None, extra: int = 0) -> Resolution:
    """Projective precubical resolution of ``a`` up to degree ``dim_bound``.

    ``P_0`` has one basis element per generator of ``a``; ``K_{n+1}`` is the
    cubical kernel of the faces of ``P_n`` and ``P_{n+1}`` a free cover of it.
    A ``seed`` shuffles every cover and gives ``P_0`` ``extra`` redundant
    generators, so independently seeded resolutions genuinely differ.
    """
    if dim_bound < 0:
        raise ValueError("dim_bound must be >= 0")
    rng = random.Random(seed) if seed is not None else None
    if rng is None:
        p0 = FgAbGroup.free(a.ngens)
        aug = Hom(p0, a, IntMatrix.identity(a.ngens))
    else:
        p0 = FgAbGroup.free(a.ngens + extra)
        u = _signed_permutation(a.ngens, rng)
        cols = u.columns() + [tuple(rng.randint(-2, 2) for _ in range(a.ngens)) for _ in range(extra)]
        aug = Hom(p0, a, IntMatrix.from_columns(cols, a.ngens))
    groups, faces, kernels, covers = [p0], {}, [None], [None]
    for n in range(1, dim_bound + 1):
        if n == 1:
            k = kernel_pair(aug)
        else:
            prev = n - 1
            k = cubical_kernel([faces[(prev, i, 0)] for i in range(1, n)],
                               [faces[(prev, i, 1)] for i in range(1, n)])
        p, e = _cover(k.group, rng)
        groups.append(p)
        kernels.append(k)
        covers.append(e)
        for i in range(1, n + 1):
            for al in (0, 1):
                faces[(n, i, al)] = k.projection(i, al) @ e
    return Resolution(a, groups, aug, faces, kernels, covers)


def validate_resolution(p: Resolution, level: Optional[str] = None) -> Report:
    """Projectivity, exactness (surjective ∂ and e_n), factorizations, and the identities of ``level``."""
    from .cubical import validate_augmented
    rep = Report("resolution", details={"ranks": [g.ngens for g in p.groups]})
    for n, g in enumerate(p.groups):
        rep.expect(in_projective_class(g), degree=n, identity="P_n free")
    rep.expect(p.augmentation.is_surjective(), degree=0, identity="∂ surjective")
    for n in range(1, p.dim_bound + 1):
        e, k = p.covers[n], p.kernels[n]
        rep.expect(e.is_surjective(), degree=n, identity="e_n surjective")
        for i in range(1, n + 1):
            for al in (0, 1):
                rep.expect(p.face(n, i, al) == k.projection(i, al) @ e, degree=n,
                           identity=f"∂_{i}^{al} = k_{i}^{al} e_n")
    rep.absorb(validate_augmented(p.augmented(), level or p.level))
    return rep


# ---------------------------------------------------------------------------
# synthesis of pseudodegeneracies and pseudoconnections


def synth_degeneracies(p: Resolution) -> dict:
    """``s_j : P_{n-1} -> P_n`` by factoring through K_n and lifting through e_n."""
    D = p.dim_bound
    s = {}
    for n in range(1, D + 1):
        k, e = p.kernels[n], p.covers[n]
        src = p.groups[n - 1]
        for j in range(1, n + 1):
            fam = {}
            for i in range(1, n + 1):
                for ep in (0, 1):
                    if i == j:
                        fam[(i, ep)] = Hom.identity(src)
                    elif i < j:
                        fam[(i, ep)] = s[(n - 1, j - 1)] @ p.face(n - 1, i, ep)
                    else:
                        fam[(i, ep)] = s[(n - 1, j)] @ p.face(n - 1, i - 1, ep)
            s[(n, j)] = lift_through(e, k.factor(fam))
    p.degeneracies = s
    return s


def synth_connections(p: Resolution) -> dict:
    """``Γ_j : P_n -> P_{n+1}`` from the λ-families, after pseudodegeneracies exist."""
    if p.degeneracies is None:
        raise ValueError("pseudoconnections need pseudodegeneracies first")
    s = p.degeneracies
    D = p.dim_bound
    g = {}
    for n in range(1, D):
        k, e = p.kernels[n + 1], p.covers[n + 1]
        src = p.groups[n]
        for j in range(1, n + 1):
            fam = {}
            for i in range(1, n + 2):
                for ep in (0, 1):
                    if i < j:
                        fam[(i, ep)] = g[(n - 1, j - 1)] @ p.face(n, i, ep)
                    elif i in (j, j + 1):
                        fam[(i, ep)] = Hom.identity(src) if ep == 0 else s[(n, j)] @ p.face(n, j, 1)
                    else:
                        fam[(i, ep)] = g[(n - 1, j)] @ p.face(n, i - 1, ep)
            g[(n, j)] = lift_through(e, k.factor(fam))
    p.connections = g
    return g


def full_resolution(a: FgAbGroup, dim_bound: int, seed: Optional[int] = None, extra: int = 0) -> Resolution:
    """Build and upgrade to a pseudocubical object with pseudoconnections."""
    p = build_resolution(a, dim_bound, seed, extra)
    synth_degeneracies(p)
    synth_connections(p)
    return p


# ---------------------------------------------------------------------------
# comparison theorem


def comparison_lift(f: Hom, p: Resolution, q: Resolution, seed: Optional[int] = None) -> CubicalMorphism:
    """Extend ``f : A -> A'`` to a precubical morphism ``P -> P'``.

    With a ``seed``, each stage adds a random map into the kernel of the
    relevant surjection, giving another (equally valid) lift.
    """
    if p.dim_bound != q.dim_bound:
        raise ValueError("resolutions must share a dimension bound")
    rng = random.Random(seed) if seed is not None else None

    def lift(e: Hom, phi: Hom) -> Hom:
        out = lift_through(e, phi)
        if rng is not None:
            kern, incl = hom_kernel(e, check=False)
            if kern.ngens:
                rnd = IntMatrix([[rng.randint(-2, 2) for _ in range(phi.source.ngens)]
                                 for _ in range(kern.ngens)], kern.ngens, phi.source.ngens)
                out = out + incl @ Hom(phi.source, kern, rnd)
        return out

    comps = [lift(q.augmentation, f @ p.augmentation)]
    for n in range(1, p.dim_bound + 1):
        fam = {(i, w): comps[n - 1] @ p.face(n, i, w) for i in range(1, n + 1) for w in (0, 1)}
        comps.append(lift(q.covers[n], q.kernels[n].factor(fam)))
    return CubicalMorphism(p.cubical(), q.cubical(), comps)


def lift_covers(fbar: CubicalMorphism, f: Hom, p: Resolution, q: Resolution) -> bool:
    """Whether ``f ∂ = ∂' f_0``."""
    return f @ p.augmentation == q.augmentation @ fbar[0]


def comparison_homotopy(fbar: CubicalMorphism, gbar: CubicalMorphism, q: Resolution) -> PrecubicalHomotopy:
    """Precubical homotopy between two lifts of the same map into the resolution ``q``."""
    if not q.augmentation @ fbar[0] == q.augmentation @ gbar[0]:
        raise ValueError("the two lifts cover different maps")
    x = fbar.source
    D = x.dim_bound
    h = []
    for n in range(D):
        fam = {(1, 0): fbar[n], (1, 1): gbar[n]}
        for i in range(2, n + 2):
            for ep in (0, 1):
                fam[(i, ep)] = h[n - 1] @ x.face(n, i - 1, ep)
        h.append(lift_through(q.covers[n + 1], q.kernels[n + 1].factor(fam)))
    return PrecubicalHomotopy(fbar, gbar, h)


# ---------------------------------------------------------------------------
# additive functors


@dataclass(frozen=True)
class AdditiveFunctor:
    """``Identity``, ``TensorWith(B)`` (``- ⊗ B``) or ``HomFrom(B)`` (``Hom(B, -)``)."""

    kind: str
    b: Optional[FgAbGroup] = None

    def __post_init__(self):
        if self.kind not in ("identity", "tensor", "hom"):
            raise ValueError(f"unknown functor kind {self.kind!r}")
        if self.kind != "identity" and self.b is None:
            raise ValueError(f"functor {self.kind} needs a group")

    @classmethod
    def identity(cls) -> "AdditiveFunctor":
        return cls("identity")

    @classmethod
    def tensor(cls, b: FgAbGroup) -> "AdditiveFunctor":
        return cls("tensor", b)

    @classmethod
    def hom_from(cls, b: FgAbGroup) -> "AdditiveFunctor":
        return cls("hom", b)

    def describe(self) -> str:
        return "identity" if self.kind == "identity" else f"{self.kind}:{self.b}"

    # objects carry an embedding into a plain "ambient" image; homs act on ambients
    def _ambient(self, g: FgAbGroup):
        if self.kind == "identity":
            return g, None
        if self.kind == "tensor":
            return tensor_groups(g, self.b), None
        m = self.b.ngens
        power = direct_sum(*([g] * m))
        rel_b = self.b.relations
        cond = Hom(power, direct_sum(*([g] * rel_b.ncols)), rel_b.transpose().kron(IntMatrix.identity(g.ngens)))
        sub, incl = hom_kernel(cond, check=False)
        return sub, incl

    def on_group(self, g: FgAbGroup) -> FgAbGroup:
        return self._ambient(g)[0]

    def on_hom(self, f: Hom, src=None, tgt=None) -> Hom:
        """``T(f)``; ``src``/``tgt`` may pass precomputed ``_ambient`` data."""
        if self.kind == "identity":
            return f
        if self.kind == "tensor":
            s, t = (src or self._ambient(f.source))[0], (tgt or self._ambient(f.target))[0]
            return Hom(s, t, f.matrix.kron(IntMatrix.identity(self.b.ngens)))
        s, si = src or self._ambient(f.source)
        t, ti = tgt or self._ambient(f.target)
        m = self.b.ngens
        big = Hom(si.target, ti.target, IntMatrix.identity(m).kron(f.matrix))
        return factor_through(ti, big @ si)


def apply_functor(t: AdditiveFunctor, x) -> CubicalObject:
    """Push every group and structure map of a cubical object (or resolution) through ``t``."""
    if isinstance(x, Resolution):
        x = x.cubical()
    amb = [t._ambient(g) for g in x.groups]
    groups = [a[0] for a in amb]

    def push(f: Hom, s: int, d: int) -> Hom:
        return t.on_hom(f, amb[s], amb[d])

    faces = {k: push(f, k[0], k[0] - 1) for k, f in x.faces.items()}
    degs = None if x.degeneracies is None else {k: push(f, k[0] - 1, k[0]) for k, f in x.degeneracies.items()}
    cons = None if x.connections is None else {k: push(f, k[0], k[0] + 1) for k, f in x.connections.items()}
    return CubicalObject(groups, faces, degs, cons, x.level)


def apply_functor_morphism(t: AdditiveFunctor, f: CubicalMorphism, source: CubicalObject,
                           target: CubicalObject) -> CubicalMorphism:
    amb_s = [t._ambient(g) for g in f.source.groups]
    amb_t = [t._ambient(g) for g in f.target.groups]
    return CubicalMorphism(source, target, [t.on_hom(c, amb_s[n], amb_t[n]) for n, c in enumerate(f.components)])


def apply_functor_homotopy(t: AdditiveFunctor, h: PrecubicalHomotopy, tf: CubicalMorphism,
                           tg: CubicalMorphism) -> PrecubicalHomotopy:
    src, tgt = h.f.source, h.f.target
    comps = [t.on_hom(c, t._ambient(src.groups[n]), t._ambient(tgt.groups[n + 1]))
             for n, c in enumerate(h.components)]
    return PrecubicalHomotopy(tf, tg, comps)


def apply_functor_complex(t: AdditiveFunctor, c: ChainComplex) -> ChainComplex:
    amb = [t._ambient(g) for g in c.groups]
    return ChainComplex([a[0] for a in amb],
                        [t.on_hom(d, amb[n], amb[n - 1]) for n, d in enumerate(c.differentials, start=1)])


# ---------------------------------------------------------------------------
# derived functors and oracles


def derived_functors(t: AdditiveFunctor, a: FgAbGroup, dim_bound: int, variant: str = "N",
                     resolution: Optional[Resolution] = None) -> list:
    """``H_n(V(T(P)))`` for ``n < dim_bound`` with ``V`` one of N, M, C."""
    if variant not in ("N", "M", "C"):
        raise ValueError(f"unknown variant {variant!r}")
    p = resolution or full_resolution(a, dim_bound)
    if variant == "M" and p.connections is None:
        if p.degeneracies is None:
            synth_degeneracies(p)
        synth_connections(p)
    tp = apply_functor(t, p)
    return homologies(normalize(tp, variant).complex)


def two_term_resolution(a: FgAbGroup) -> ChainComplex:
    """``0 -> Z^k --diag(d)--> Z^{r+k}`` resolving the canonical form of ``a``."""
    r, tors = a.canonical
    k = len(tors)
    f0, f1 = FgAbGroup.free(r + k), FgAbGroup.free(k)
    m = IntMatrix([[tors[j] if i == r + j else 0 for j in range(k)] for i in range(r + k)], r + k, k)
    return ChainComplex([f0, f1], [Hom(f1, f0, m)])


def tor_oracle(a: FgAbGroup, b: FgAbGroup, n: int) -> FgAbGroup:
    """Classical ``Tor_n(a, b)``: ``B^r ⊕ ⊕ B/dB`` in degree 0, ``⊕ B[d]`` in degree 1, 0 above."""
    if n < 0:
        raise ValueError("negative degree")
    r, tors = a.canonical
    if n >= 2:
        return FgAbGroup.trivial()
    parts = []
    for d in tors:
        times_d = Hom(b, b, IntMatrix.identity(b.ngens).scale(d))
        parts.append(cokernel(times_d)[0] if n == 0 else hom_kernel(times_d)[0])
    if n == 0:
        parts += [b] * r
    return direct_sum(*parts) if parts else FgAbGroup.trivial()


def classical_derived(t: AdditiveFunctor, a: FgAbGroup, n: int) -> FgAbGroup:
    """``L_n T(a)`` from the two-term free resolution (zero for ``n >= 2``)."""
    if n >= 2:
        return FgAbGroup.trivial()
    c = two_term_resolution(a)
    tc = apply_functor_complex(t, c)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return homology(tc, n)


def em_exact_check(x: AugmentedChainComplex, require_free: bool = False) -> Report:
    """Exactness of ``X -> A -> 0`` in certified degrees (and optional freeness of each X_n)."""
    c = x.complex
    rep = Report("em_exact", details={"degrees": []})
    rep.expect(x.augmentation.is_surjective(), degree=-1, identity="augmentation surjective")
    for n in range(c.dim_bound):
        out = x.augmentation if n == 0 else c.d(n)
        k, incl = hom_kernel(out, check=False)
        img = factor_through(incl, c.d(n + 1))
        h = cokernel(img)[0]
        rep.expect(h.is_trivial(), degree=n, identity="ker = im")
        rep.details["degrees"].append({"degree": n, "defect": str(h), "certified": True})
    if require_free:
        for n, g in enumerate(c.groups):
            rep.expect(g.is_free(), degree=n, identity="degree free")
    return rep


def augmented_normalization(p: Resolution, variant: str) -> AugmentedChainComplex:
    res = normalize(p.cubical(), variant)
    return AugmentedChainComplex(res.complex, p.target, p.augmentation @ res.inclusions[0])


def resolution_em_report(p: Resolution) -> Report:
    """M(P) -> A and N(P) -> A exact; each N_n(P) free and a retract of P_n."""
    rep = Report("em_resolution")
    rep.absorb(em_exact_check(augmented_normalization(p, "M")), complex="M")
    rep.absorb(em_exact_check(augmented_normalization(p, "N"), require_free=True), complex="N")
    if p.degeneracies is not None:
        x = p.cubical()
        for n in range(p.dim_bound + 1):
            _, tau, nu = sigma_tau(x, n)
            rep.expect(tau @ nu == Hom.identity(nu.source), degree=n, identity="τ ν = id")
    return rep


def compare_with_classical(b: FgAbGroup, a: FgAbGroup, dim_bound: int,
                           resolution: Optional[Resolution] = None) -> Report:
    """Cubical ``H_n(N(P ⊗ b))`` against classical Tor, plus the isomorphism ``T(N_n P) -> N_n(T P)``."""
    t = AdditiveFunctor.tensor(b)
    p = resolution or full_resolution(a, dim_bound)
    x = p.cubical()
    tx = apply_functor(t, x)
    cub = homologies(normalize(tx, "N").complex)
    rep = Report("compare_with_classical", details={"a": str(a), "b": str(b), "dim_bound": dim_bound,
                                                    "degrees": []})
    for n, h in enumerate(cub):
        tor = tor_oracle(a, b, n)
        rep.expect(h == tor, degree=n, identity="cubical = classical")
        rep.details["degrees"].append({"degree": n, "cubical": str(h), "classical": str(tor), "certified": True})
    for n in range(dim_bound + 1):
        nsub, nu = normalized_subgroup(x, n)
        t_nu = t.on_hom(nu)
        _, nu_t = normalized_subgroup(tx, n)
        rep.expect(t_nu.is_injective(), degree=n, identity="T(ν_n) injective")
        rep.expect(same_subgroup(t_nu, nu_t), degree=n, identity="im T(ν_n) = N_n(T(P))")
    return rep


def compare_hom_functor(b: FgAbGroup, a: FgAbGroup, dim_bound: int,
                        resolution: Optional[Resolution] = None) -> Report:
    """Cubical derived functors of ``Hom(b, -)`` against the two-term classical computation."""
    t = AdditiveFunctor.hom_from(b)
    cub = derived_functors(t, a, dim_bound, "N", resolution)
    rep = Report("compare_hom_functor", details={"a": str(a), "b": str(b), "degrees": []})
    for n, h in enumerate(cub):
        cl = classical_derived(t, a, n)
        rep.expect(h == cl, degree=n, identity="cubical = classical")
        rep.details["degrees"].append({"degree": n, "cubical": str(h), "classical": str(cl)})
    return rep


def homotopic_lifts_report(a: FgAbGroup, b: FgAbGroup, dim_bound: int, seed: int = 1) -> Report:
    """Two lifts of ``id_a`` between independently built resolutions, their homotopy, and equal induced maps."""
    p = full_resolution(a, dim_bound)
    q = full_resolution(a, dim_bound, seed=seed, extra=1)
    ident = Hom.identity(a)
    f = comparison_lift(ident, p, q)
    g = comparison_lift(ident, p, q, seed=seed + 1)
    rep = Report("comparison", details={"distinct_lifts": any(not fc == gc for fc, gc in zip(f.components, g.components))})
    rep.absorb(validate_cubical_morphism(f), lift="f")
    rep.absorb(validate_cubical_morphism(g), lift="g")
    rep.expect(lift_covers(f, ident, p, q) and lift_covers(g, ident, p, q), identity="lifts cover id")
    h = comparison_homotopy(f, g, q)
    rep.absorb(validate_precubical_homotopy(h))
    t = AdditiveFunctor.tensor(b)
    tp, tq = apply_functor(t, p), apply_functor(t, q)
    tf = apply_functor_morphism(t, f, tp, tq)
    tg = apply_functor_morphism(t, g, tp, tq)
    th = apply_functor_homotopy(t, h, tf, tg)
    ns, nt = normalize(tp, "N"), normalize(tq, "N")
    chain_h = precubical_to_chain_homotopy(th, ns, nt)
    rep.absorb(validate_homotopy(chain_h), part="N(T h)")
    nf, ng = chain_h.f, chain_h.g
    for n in range(dim_bound):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            rep.expect(induced_map(nf, n) == induced_map(ng, n), degree=n, identity="H_n(N T f) = H_n(N T g)")
    return rep
