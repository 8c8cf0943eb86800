"""Degree-bounded chain complexes, chain maps, chain homotopies and homology.

Every complex carries an explicit ``dim_bound`` D.  Homology in degree D is
not certified (it would need the degree-(D+1) boundaries) and is returned with
a :class:`TruncationWarning`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

from .exactalg import FgAbGroup, Hom, cokernel, factor_through, hom_kernel
from .report import Report


class TruncationWarning(UserWarning):
    """A result depends on data beyond the dimension bound."""


@dataclass(frozen=True)
class ChainComplex:
    groups: tuple
    differentials: tuple  # differentials[n - 1] is d_n : C_n -> C_{n-1}

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != len(self.groups) - 1:
            raise ValueError("need exactly one differential per positive degree")
        for n, d in enumerate(self.differentials, start=1):
            if d.source.ngens != self.groups[n].ngens or d.target.ngens != self.groups[n - 1].ngens:
                raise ValueError(f"differential d_{n} has the wrong shape")

    @property
    def dim_bound(self) -> int:
        return len(self.groups) - 1

    def d(self, n: int) -> Hom:
        """d_n : C_n -> C_{n-1}; d_0 is the zero map to the trivial group."""
        if n == 0:
            return Hom.zero(self.groups[0], FgAbGroup.trivial())
        return self.differentials[n - 1]

    @classmethod
    def zero(cls, dim_bound: int) -> "ChainComplex":
        z = FgAbGroup.trivial()
        return cls((z,) * (dim_bound + 1), tuple(Hom.zero(z, z) for _ in range(dim_bound)))


@dataclass(frozen=True)
class AugmentedChainComplex:
    complex: ChainComplex
    target: FgAbGroup
    augmentation: Hom  # C_0 -> target

    @property
    def dim_bound(self) -> int:
        return self.complex.dim_bound


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.source.dim_bound != self.target.dim_bound:
            raise ValueError("chain maps need equal dimension bounds")
        if len(self.components) != self.source.dim_bound + 1:
            raise ValueError("one component per degree required")

    def __getitem__(self, n: int) -> Hom:
        return self.components[n]

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other``."""
        return ChainMap(other.source, self.target, [f @ g for f, g in zip(self.components, other.components)])

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, [Hom.identity(g) for g in c.groups])


@dataclass(frozen=True)
class ChainHomotopy:
    """Components h_n : C_n -> C'_{n+1} for n < D; h_D is zero by convention."""

    f: ChainMap
    g: ChainMap
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.f.source.dim_bound:
            raise ValueError("homotopy needs components in degrees 0..D-1")


def validate_complex(c) -> Report:
    """Check d_n d_{n+1} = 0 (and the augmentation identity, if present)."""
    rep = Report("chain_complex")
    aug = None
    if isinstance(c, AugmentedChainComplex):
        aug, c = c, c.complex
    for n in range(1, c.dim_bound):
        rep.expect((c.d(n) @ c.d(n + 1)).is_zero(), degree=n + 1, composite=f"d_{n} d_{n + 1}")
    if aug is not None and c.dim_bound >= 1:
        rep.expect((aug.augmentation @ c.d(1)).is_zero(), degree=1, composite="augmentation d_1")
    return rep


def _cycles(c: ChainComplex, n: int):
    return hom_kernel(c.d(n), check=False)


def homology_data(c: ChainComplex, n: int):
    """``(H_n, cycle inclusion)``; generators of H_n are the canonical cycle generators."""
    if not 0 <= n <= c.dim_bound:
        raise IndexError(f"degree {n} outside 0..{c.dim_bound}")
    k, incl = _cycles(c, n)
    if n == c.dim_bound:
        warnings.warn(f"H_{n} at the dimension bound is only ker d_{n} (uncertified)",
                      TruncationWarning, stacklevel=3)
        return k, incl
    bd = factor_through(incl, c.d(n + 1))
    h, _ = cokernel(bd)
    return h, incl


def homology(c: ChainComplex, n: int) -> FgAbGroup:
    """H_n = ker d_n / im d_{n+1} in canonical presentation."""
    return homology_data(c, n)[0]


def homologies(c: ChainComplex, upto: Optional[int] = None) -> list:
    """Certified homology groups H_0 .. H_{D-1} (or up to ``upto``)."""
    top = c.dim_bound - 1 if upto is None else upto
    return [homology(c, n) for n in range(top + 1)]


def induced_map(f: ChainMap, n: int) -> Hom:
    """H_n(f) on the canonical presentations returned by :func:`homology_data`."""
    hs, incl_s = homology_data(f.source, n)
    ht, incl_t = homology_data(f.target, n)
    m = factor_through(incl_t, f[n] @ incl_s)
    return Hom(hs, ht, m.matrix)


def validate_chain_map(f: ChainMap) -> Report:
    rep = Report("chain_map")
    s, t = f.source, f.target
    for n in range(s.dim_bound + 1):
        rep.expect(f[n].source.ngens == s.groups[n].ngens and f[n].target.ngens == t.groups[n].ngens,
                   degree=n, identity="shape")
    if not rep.ok:
        raise ValueError(f"chain map shape mismatch: {rep.failures}")
    for n in range(1, s.dim_bound + 1):
        rep.expect(f[n - 1] @ s.d(n) == t.d(n) @ f[n], degree=n, identity="f d = d f")
    return rep


def validate_homotopy(h: ChainHomotopy) -> Report:
    """Check d h_n + h_{n-1} d = f_n - g_n for 0 <= n <= D-1."""
    rep = Report("chain_homotopy")
    f, g = h.f, h.g
    src, tgt = f.source, f.target
    for n, hn in enumerate(h.components):
        if hn.source.ngens != src.groups[n].ngens or hn.target.ngens != tgt.groups[n + 1].ngens:
            raise ValueError(f"homotopy component h_{n} has the wrong shape")
    for n in range(src.dim_bound):
        lhs = tgt.d(n + 1) @ h.components[n]
        if n > 0:
            lhs = lhs + h.components[n - 1] @ src.d(n)
        rep.expect(lhs == f[n] - g[n], degree=n, identity="dh + hd = f - g")
    return rep


def shift(x: AugmentedChainComplex) -> ChainComplex:
    """sh(X)_0 = A, sh(X)_n = X_{n-1}, with the augmentation as the new d_1."""
    c = x.complex
    return ChainComplex((x.target,) + c.groups, (x.augmentation,) + c.differentials)
