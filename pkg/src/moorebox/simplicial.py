"""Presimplicial and pseudosimplicial objects, their chain functors and the bridge from cubes.

Faces are keyed ``(n, i)`` for ``d_i : S_n -> S_{n-1}`` with ``0 <= i <= n``;
pseudodegeneracies are keyed by target degree, ``(n, j)`` for
``s_j : S_{n-1} -> S_n`` with ``0 <= j <= n-1``.  An augmented object stores
``S_{-1}`` and ``ε : S_0 -> S_{-1}`` separately and numbers ``S`` from 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chain import ChainComplex, ChainHomotopy, ChainMap
from .cubical import CubicalObject, normalized_subgroup
from .exactalg import FgAbGroup, Hom, factor_through, intersect_kernels
from .report import Report

SIMPLICIAL_LEVELS = ("presimplicial", "pseudosimplicial", "simplicial")


@dataclass(frozen=True)
class SimplicialObject:
    groups: tuple
    faces: dict
    degeneracies: Optional[dict] = None
    level: str = "presimplicial"

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        if self.level not in SIMPLICIAL_LEVELS:
            raise ValueError(f"unknown level {self.level!r}")
        for n in range(1, self.dim_bound + 1):
            for i in range(n + 1):
                if (n, i) not in self.faces:
                    raise ValueError(f"missing face d_{i} on degree {n}")
        if self.level != "presimplicial" and self.degeneracies is None:
            raise ValueError(f"level {self.level} needs degeneracies")

    @property
    def dim_bound(self) -> int:
        return len(self.groups) - 1

    def face(self, n: int, i: int) -> Hom:
        return self.faces[(n, i)]

    def degen(self, n: int, j: int) -> Optional[Hom]:
        """s_j : S_{n-1} -> S_n."""
        if self.degeneracies is None:
            return None
        return self.degeneracies.get((n, j))


@dataclass(frozen=True)
class AugmentedPseudoSimplicial:
    """``S -> S_{-1}``; ``embeddings[n]``, when present, embeds S_n in an ambient group."""

    object: SimplicialObject
    target: FgAbGroup
    augmentation: Hom
    embeddings: Optional[tuple] = None

    @property
    def dim_bound(self) -> int:
        return self.object.dim_bound

    def face(self, n: int, i: int) -> Hom:
        """Faces including ``d_0 = ε`` on S_0."""
        if n == 0:
            return self.augmentation
        return self.object.face(n, i)

    def degen(self, n: int, j: int) -> Optional[Hom]:
        return self.object.degen(n, j)

    def group(self, n: int) -> FgAbGroup:
        return self.target if n == -1 else self.object.groups[n]


def constant_simplicial(a: FgAbGroup, dim_bound: int) -> SimplicialObject:
    ident = Hom.identity(a)
    faces = {(n, i): ident for n in range(1, dim_bound + 1) for i in range(n + 1)}
    degs = {(n, j): ident for n in range(1, dim_bound + 1) for j in range(n)}
    return SimplicialObject((a,) * (dim_bound + 1), faces, degs, "simplicial")


def _check(rep: Report, lhs: Optional[Hom], rhs: Optional[Hom], **where) -> None:
    if lhs is not None and rhs is not None:
        rep.expect(lhs == rhs, **where)


def _validate(face, degen, ident, lo: int, top: int, level: str, rep: Report) -> Report:
    """Identity checks for faces on degrees ``lo+1..top`` (``lo = -1`` includes ε)."""
    def F(n, i):
        return face(n, i) if lo < n <= top and 0 <= i <= max(n, 0) else None

    def S(n, j):
        return degen(n, j) if 1 <= n <= top and 0 <= j <= n - 1 else None

    def comp(a, b):
        return None if a is None or b is None else a @ b

    for n in range(max(lo + 2, 1), top + 1):
        for j in range(1, n + 1):
            for i in range(j):
                _check(rep, comp(F(n - 1, i), F(n, j)), comp(F(n - 1, j - 1), F(n, i)),
                       degree=n, identity=f"d_{i}d_{j} = d_{j - 1}d_{i}")
    if level == "presimplicial":
        return rep
    for n in range(1, top + 1):
        for j in range(n):
            if S(n, j) is None:
                rep.fail(degree=n, identity=f"missing pseudodegeneracy s_{j} into degree {n}")
    if not rep.ok:
        return rep
    for n in range(1, top + 1):
        for j in range(n):
            for i in range(n + 1):
                lhs = comp(F(n, i), S(n, j))
                if i < j:
                    rhs, name = comp(S(n - 1, j - 1), F(n - 1, i)), f"d_{i}s_{j} = s_{j - 1}d_{i}"
                elif i in (j, j + 1):
                    rhs, name = ident(n - 1), f"d_{i}s_{j} = id"
                else:
                    rhs, name = comp(S(n - 1, j), F(n - 1, i - 1)), f"d_{i}s_{j} = s_{j}d_{i - 1}"
                _check(rep, lhs, rhs, degree=n, identity=name)
    if level == "simplicial":
        for m in range(1, top):
            for j in range(m):
                for i in range(j + 1):
                    _check(rep, comp(S(m + 1, i), S(m, j)), comp(S(m + 1, j + 1), S(m, i)),
                           degree=m + 1, identity=f"s_{i}s_{j} = s_{j + 1}s_{i}")
    return rep


def validate_simplicial(s, level: Optional[str] = None) -> Report:
    """Check the identities of ``level`` on a plain or augmented object."""
    if isinstance(s, AugmentedPseudoSimplicial):
        level = level or ("pseudosimplicial" if s.object.level == "presimplicial" else s.object.level)
        rep = Report("augmented_simplicial", details={"level": level})
        return _validate(s.face, s.degen, lambda n: Hom.identity(s.group(n)), -1, s.dim_bound, level, rep)
    level = level or s.level
    if level not in SIMPLICIAL_LEVELS:
        raise ValueError(f"unknown level {level!r}")
    rep = Report("simplicial_object", details={"level": level})
    return _validate(s.face, s.degen, lambda n: Hom.identity(s.groups[n]), 0, s.dim_bound, level, rep)


# ---------------------------------------------------------------------------
# chain functors


@dataclass(frozen=True)
class _Levels:
    """Chain-indexed view: level k holds S_{k+lo}; faces[k] are the faces out of level k."""

    groups: list
    faces: list  # faces[k] = list of d_i out of level k (empty at k = 0)


def _levels(s, augmented: bool) -> _Levels:
    if augmented:
        groups = [s.target] + list(s.object.groups)
        faces = [[]] + [[s.face(n, i) for i in range(max(n, 0) + 1)] for n in range(0, s.dim_bound + 1)]
    else:
        groups = list(s.groups)
        faces = [[]] + [[s.face(n, i) for i in range(n + 1)] for n in range(1, s.dim_bound + 1)]
    return _Levels(groups, faces)


def _unnormalized(lv: _Levels) -> ChainComplex:
    diffs = []
    for k in range(1, len(lv.groups)):
        d = Hom.zero(lv.groups[k], lv.groups[k - 1])
        for i, f in enumerate(lv.faces[k]):
            d = d + f if i % 2 == 0 else d - f
        diffs.append(d)
    return ChainComplex(lv.groups, diffs)


def _normalized(lv: _Levels, shifted: bool):
    """Moore subcomplex: kill all but the last face; differential ``±`` the last face."""
    subs = []
    for k, g in enumerate(lv.groups):
        faces = lv.faces[k][:-1] if k else []
        subs.append(intersect_kernels(faces, g))
    diffs = []
    for k in range(1, len(lv.groups)):
        n = k - 1 if shifted else k  # simplicial degree carried by level k
        sign = -1 if n % 2 else 1
        last = lv.faces[k][-1]
        d = factor_through(subs[k - 1][1], sign * (last @ subs[k][1]))
        diffs.append(d)
    c = ChainComplex([sub for sub, _ in subs], diffs)
    return c, tuple(incl for _, incl in subs)


def moore_I(s: SimplicialObject) -> ChainComplex:
    """Normalized complex: ``I_n = ⋂_{i<n} ker d_i`` with differential ``(-1)^n d_n``."""
    return _normalized(_levels(s, False), False)[0]


def moore_I_data(s: SimplicialObject):
    """``(I(s), inclusions into S_n)``."""
    return _normalized(_levels(s, False), False)


def unnormalized_J(s: SimplicialObject) -> ChainComplex:
    """Alternating-sum complex on ``S_n``."""
    return _unnormalized(_levels(s, False))


def hat_I(s: AugmentedPseudoSimplicial) -> ChainComplex:
    """Shifted augmented normalized complex; degree 0 is ``S_{-1}``."""
    return _normalized(_levels(s, True), True)[0]


def hat_I_data(s: AugmentedPseudoSimplicial):
    """``(Î(s), inclusions into Ĵ(s))``."""
    return _normalized(_levels(s, True), True)


def hat_J(s: AugmentedPseudoSimplicial) -> ChainComplex:
    """Shifted augmented unnormalized complex; degree 0 is ``S_{-1}``."""
    return _unnormalized(_levels(s, True))


# ---------------------------------------------------------------------------
# from pseudocubical objects with pseudoconnections


def nbar(x: CubicalObject) -> AugmentedPseudoSimplicial:
    """Augmented pseudosimplicial object of normalized cubes.

    ``S_{-1} = X_0`` and ``S_n = N_{n+1}(X)``; faces are the restricted
    0-faces ``∂_{i+1}^0``, pseudodegeneracies the restricted connections
    ``Γ_{j+1}``.  ``embeddings[n]`` is the inclusion ``S_n -> X_{n+1}``.
    """
    if x.connections is None:
        raise ValueError("nbar needs (pseudo)connections")
    D = x.dim_bound
    nsub = [normalized_subgroup(x, n) for n in range(D + 1)]
    groups = [nsub[n + 1][0] for n in range(D)]
    incl = [nsub[n + 1][1] for n in range(D)]

    def restrict(f: Hom, src: int, tgt: int) -> Hom:
        return factor_through(nsub[tgt][1], f @ nsub[src][1])

    faces = {(n, i): restrict(x.face(n + 1, i + 1, 0), n + 1, n)
             for n in range(1, D) for i in range(n + 1)}
    degs = {}
    for n in range(1, D):
        for j in range(n):
            g = x.conn(n, j + 1)
            if g is None:
                raise ValueError(f"missing connection Γ_{j + 1} from degree {n}")
            degs[(n, j)] = restrict(g, n, n + 1)
    obj = SimplicialObject(groups, faces, degs, "pseudosimplicial")
    if D >= 1:
        eps = x.face(1, 1, 0) @ nsub[1][1]
    else:
        eps = Hom.zero(FgAbGroup.trivial(), x.groups[0])
        obj = SimplicialObject((), {}, {}, "pseudosimplicial")
    return AugmentedPseudoSimplicial(obj, x.groups[0], eps, tuple(incl))


# ---------------------------------------------------------------------------
# Moore equivalence for augmented pseudosimplicial objects


def simplicial_moore_equivalence(s: AugmentedPseudoSimplicial):
    """Retraction ``r : Ĵ(s) -> Î(s)`` and homotopy ``h : ι∘r ≃ id`` on ``Ĵ(s)``.

    ``r`` is the composite of the correctors ``g_t = 1 - s_t d_t`` (identity
    in degrees ``<= t``), applied for ``t = 0, 1, ...`` in turn; each ``g_t``
    is homotopic to the identity through ``(-1)^t s_t``, and the homotopies
    are accumulated as ``h = -Σ_t (-1)^t s_t g_{t-1}⋯g_0``.
    """
    top = s.dim_bound
    if top >= 1 and s.object.degeneracies is None:
        raise ValueError("Moore equivalence needs pseudodegeneracies")
    J = hat_J(s)
    I, incl = hat_I_data(s)

    def group(n):
        return s.group(n)

    def corrector(n: int, t: int) -> Hom:
        ident = Hom.identity(group(n))
        if n <= t:
            return ident
        return ident - s.degen(n, t) @ s.face(n, t)

    r_comp, h_comp = [], []
    for n in range(-1, top + 1):
        R = Hom.identity(group(n))
        H = None
        for t in range(0, n + 1):
            if n + 1 <= top:
                step = (-1) ** t * (s.degen(n + 1, t) @ R)
                H = -step if H is None else H - step
            if t < n:
                R = corrector(n, t) @ R
        k = n + 1
        r_comp.append(factor_through(incl[k], Hom(J.groups[k], incl[k].target, R.matrix)))
        if n + 1 <= top:
            if H is None:
                H = Hom.zero(group(n), group(n + 1))
            h_comp.append(Hom(J.groups[k], J.groups[k + 1], H.matrix))
    r = ChainMap(J, I, r_comp)
    iota = moore_inclusion(I, J, incl)
    h = ChainHomotopy(iota.compose(r), ChainMap.identity(J), h_comp)
    return r, h


def moore_inclusion(I: ChainComplex, J: ChainComplex, incl) -> ChainMap:
    return ChainMap(I, J, [Hom(I.groups[k], J.groups[k], incl[k].matrix) for k in range(len(I.groups))])
