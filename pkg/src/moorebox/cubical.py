"""Cubical objects in finitely generated abelian groups and finite cubical sets.

Indexing follows the usual cubical conventions:

* faces ``∂_i^α : X_n -> X_{n-1}`` for ``1 <= i <= n``, keyed ``(n, i, α)``;
* degeneracies ``s_i : X_{n-1} -> X_n`` for ``1 <= i <= n``, keyed by the
  *target* degree ``(n, i)``;
* connections ``Γ_i : X_n -> X_{n+1}`` for ``1 <= i <= n``, keyed by the
  *source* degree ``(n, i)``.

Maps that would leave ``0..dim_bound`` are simply absent, and every identity
check only quantifies over instances whose composites stay in range.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactalg import FgAbGroup, Hom, IntMatrix, direct_sum, intersect_kernels
from .report import Report

LEVELS = ("precubical", "pseudocubical", "pcpc", "cubical", "cc")

# which identity families each level asserts
_FAMILIES = {
    "precubical": {"dd"},
    "pseudocubical": {"dd", "ds"},
    "pcpc": {"dd", "ds", "dG"},
    "cubical": {"dd", "ds", "ss"},
    "cc": {"dd", "ds", "ss", "dG", "GG", "Gs"},
}


def level_families(level: str) -> set:
    try:
        return _FAMILIES[level]
    except KeyError:
        raise ValueError(f"unknown level {level!r}; expected one of {LEVELS}") from None


def level_has_degeneracies(level: str) -> bool:
    return "ds" in level_families(level)


def level_has_connections(level: str) -> bool:
    return "dG" in level_families(level)


@dataclass(frozen=True)
class CubicalObject:
    groups: tuple
    faces: dict
    degeneracies: Optional[dict] = None
    connections: Optional[dict] = None
    level: str = "precubical"

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        level_families(self.level)
        D = self.dim_bound
        for n in range(1, D + 1):
            for i in range(1, n + 1):
                for a in (0, 1):
                    if (n, i, a) not in self.faces:
                        raise ValueError(f"missing face ∂_{i}^{a} on degree {n}")
        if level_has_degeneracies(self.level) and self.degeneracies is None:
            raise ValueError(f"level {self.level} needs degeneracies")
        if level_has_connections(self.level) and self.connections is None:
            raise ValueError(f"level {self.level} needs connections")

    @property
    def dim_bound(self) -> int:
        return len(self.groups) - 1

    def face(self, n: int, i: int, a: int) -> Hom:
        return self.faces[(n, i, a)]

    def degen(self, n: int, i: int) -> Optional[Hom]:
        """s_i : X_{n-1} -> X_n."""
        if self.degeneracies is None:
            return None
        return self.degeneracies.get((n, i))

    def conn(self, n: int, i: int) -> Optional[Hom]:
        """Γ_i : X_n -> X_{n+1}."""
        if self.connections is None:
            return None
        return self.connections.get((n, i))

    def with_structure(self, degeneracies=None, connections=None, level=None) -> "CubicalObject":
        return CubicalObject(self.groups, self.faces,
                             self.degeneracies if degeneracies is None else degeneracies,
                             self.connections if connections is None else connections,
                             level or self.level)

    def truncate(self, dim_bound: int) -> "CubicalObject":
        keep = lambda n: n <= dim_bound  # noqa: E731
        faces = {k: v for k, v in self.faces.items() if keep(k[0])}
        degs = None if self.degeneracies is None else {k: v for k, v in self.degeneracies.items() if keep(k[0])}
        cons = None if self.connections is None else {k: v for k, v in self.connections.items() if keep(k[0] + 1)}
        return CubicalObject(self.groups[:dim_bound + 1], faces, degs, cons, self.level)


@dataclass(frozen=True)
class AugmentedCubicalObject:
    object: CubicalObject
    target: FgAbGroup
    augmentation: Hom  # X_0 -> target

    @property
    def dim_bound(self) -> int:
        return self.object.dim_bound


@dataclass(frozen=True)
class CubicalMorphism:
    source: CubicalObject
    target: CubicalObject
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.source.dim_bound + 1 or self.source.dim_bound != self.target.dim_bound:
            raise ValueError("cubical morphism needs one component per degree and equal bounds")

    def __getitem__(self, n: int) -> Hom:
        return self.components[n]

    @classmethod
    def identity(cls, x: CubicalObject) -> "CubicalMorphism":
        return cls(x, x, [Hom.identity(g) for g in x.groups])


@dataclass(frozen=True)
class PrecubicalHomotopy:
    """h_n : X_n -> X'_{n+1} for ``n < D`` from ``f`` (first 0-face) to ``g`` (first 1-face)."""

    f: CubicalMorphism
    g: CubicalMorphism
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.f.source.dim_bound:
            raise ValueError("precubical homotopy needs components in degrees 0..D-1")


# ---------------------------------------------------------------------------
# identity checking, shared by matrices (Homs) and finite tables


class _Ops:
    """Access to structure maps with composition and equality supplied by the caller."""

    def __init__(self, D, face, degen, conn, compose, ident, equal):
        self.D = D
        self.face, self.degen, self.conn = face, degen, conn
        self.compose, self.ident, self.equal = compose, ident, equal

    def chain(self, *maps):
        """Compose right-to-left; ``None`` if any map is missing."""
        if any(m is None for m in maps):
            return None
        out = maps[-1]
        for m in reversed(maps[:-1]):
            out = self.compose(m, out)
        return out


def _check_identities(ops: _Ops, families: set, rep: Report) -> Report:
    D = ops.D
    F, S, G = ops.face, ops.degen, ops.conn

    def check(lhs, rhs, **where):
        if lhs is None or rhs is None:
            return
        rep.expect(ops.equal(lhs, rhs), **where)

    if "dd" in families:
        for n in range(2, D + 1):
            for j in range(2, n + 1):
                for i in range(1, j):
                    for a in (0, 1):
                        for e in (0, 1):
                            check(ops.chain(F(n - 1, i, a), F(n, j, e)),
                                  ops.chain(F(n - 1, j - 1, e), F(n, i, a)),
                                  degree=n, identity=f"∂_{i}^{a}∂_{j}^{e} = ∂_{j - 1}^{e}∂_{i}^{a}")
    if "ds" in families:
        for n in range(1, D + 1):
            for j in range(1, n + 1):
                sj = S(n, j)
                for i in range(1, n + 1):
                    for a in (0, 1):
                        lhs = ops.chain(F(n, i, a), sj)
                        if i < j:
                            rhs = ops.chain(S(n - 1, j - 1), F(n - 1, i, a))
                            name = f"∂_{i}^{a}s_{j} = s_{j - 1}∂_{i}^{a}"
                        elif i == j:
                            rhs = ops.ident(n - 1)
                            name = f"∂_{i}^{a}s_{j} = id"
                        else:
                            rhs = ops.chain(S(n - 1, j), F(n - 1, i - 1, a))
                            name = f"∂_{i}^{a}s_{j} = s_{j}∂_{i - 1}^{a}"
                        check(lhs, rhs, degree=n, identity=name)
    if "ss" in families:
        for m in range(1, D):
            for j in range(1, m + 1):
                for i in range(1, j + 1):
                    check(ops.chain(S(m + 1, i), S(m, j)), ops.chain(S(m + 1, j + 1), S(m, i)),
                          degree=m + 1, identity=f"s_{i}s_{j} = s_{j + 1}s_{i}")
    if "dG" in families:
        for n in range(1, D):
            for j in range(1, n + 1):
                gj = G(n, j)
                for i in range(1, n + 2):
                    for a in (0, 1):
                        lhs = ops.chain(F(n + 1, i, a), gj)
                        if i < j:
                            rhs = ops.chain(G(n - 1, j - 1), F(n, i, a))
                            name = f"∂_{i}^{a}Γ_{j} = Γ_{j - 1}∂_{i}^{a}"
                        elif i in (j, j + 1) and a == 0:
                            rhs = ops.ident(n)
                            name = f"∂_{i}^0Γ_{j} = id"
                        elif i in (j, j + 1):
                            rhs = ops.chain(S(n, j), F(n, j, 1))
                            name = f"∂_{i}^1Γ_{j} = s_{j}∂_{j}^1"
                        else:
                            rhs = ops.chain(G(n - 1, j), F(n, i - 1, a))
                            name = f"∂_{i}^{a}Γ_{j} = Γ_{j}∂_{i - 1}^{a}"
                        check(lhs, rhs, degree=n + 1, identity=name)
    if "GG" in families:
        for n in range(1, D - 1):
            for j in range(1, n + 1):
                for i in range(1, j + 1):
                    check(ops.chain(G(n + 1, i), G(n, j)), ops.chain(G(n + 1, j + 1), G(n, i)),
                          degree=n + 2, identity=f"Γ_{i}Γ_{j} = Γ_{j + 1}Γ_{i}")
    if "Gs" in families:
        for n in range(1, D):
            for j in range(1, n + 1):
                for i in range(1, n + 1):
                    lhs = ops.chain(G(n, i), S(n, j))
                    if i < j:
                        rhs = ops.chain(S(n + 1, j + 1), G(n - 1, i))
                        name = f"Γ_{i}s_{j} = s_{j + 1}Γ_{i}"
                    elif i == j:
                        rhs = ops.chain(S(n + 1, i), S(n, i))
                        name = f"Γ_{i}s_{i} = s_{i}s_{i}"
                    else:
                        rhs = ops.chain(S(n + 1, j), G(n - 1, i - 1))
                        name = f"Γ_{i}s_{j} = s_{j}Γ_{i - 1}"
                    check(lhs, rhs, degree=n + 1, identity=name)
    return rep


def _require_structure(x, level: str, D: int, has_degen, has_conn, rep: Report):
    fam = level_families(level)
    if fam & {"ds", "ss"}:
        for n in range(1, D + 1):
            for i in range(1, n + 1):
                if not has_degen(n, i):
                    rep.fail(degree=n, identity=f"missing degeneracy s_{i} into degree {n}")
    if fam & {"dG", "GG", "Gs"}:
        for n in range(1, D):
            for i in range(1, n + 1):
                if not has_conn(n, i):
                    rep.fail(degree=n + 1, identity=f"missing connection Γ_{i} from degree {n}")


def validate_cubical(x: CubicalObject, level: Optional[str] = None) -> Report:
    """Check every identity instance of ``level`` (default: the declared level) exactly."""
    level = level or x.level
    rep = Report("cubical_object", details={"level": level, "dim_bound": x.dim_bound})
    _require_structure(x, level, x.dim_bound, lambda n, i: x.degen(n, i) is not None,
                       lambda n, i: x.conn(n, i) is not None, rep)
    if not rep.ok:
        return rep
    ops = _Ops(x.dim_bound,
               lambda n, i, a: x.faces.get((n, i, a)) if 1 <= i <= n <= x.dim_bound else None,
               lambda n, i: x.degen(n, i) if 1 <= i <= n <= x.dim_bound else None,
               lambda n, i: x.conn(n, i) if 1 <= i <= n < x.dim_bound else None,
               lambda a, b: a @ b,
               lambda n: Hom.identity(x.groups[n]),
               lambda a, b: a == b)
    return _check_identities(ops, level_families(level), rep)


def validate_augmented(x: AugmentedCubicalObject, level: Optional[str] = None) -> Report:
    rep = validate_cubical(x.object, level)
    if x.dim_bound >= 1:
        rep.expect(x.augmentation @ x.object.face(1, 1, 0) == x.augmentation @ x.object.face(1, 1, 1),
                   degree=1, identity="∂∂_1^0 = ∂∂_1^1")
    return rep


def validate_cubical_morphism(f: CubicalMorphism, level: str = "precubical") -> Report:
    rep = Report("cubical_morphism", details={"level": level})
    x, y = f.source, f.target
    for n in range(x.dim_bound + 1):
        if f[n].source.ngens != x.groups[n].ngens or f[n].target.ngens != y.groups[n].ngens:
            raise ValueError(f"component f_{n} has the wrong shape")
    fam = level_families(level)
    for n in range(1, x.dim_bound + 1):
        for i in range(1, n + 1):
            for a in (0, 1):
                rep.expect(f[n - 1] @ x.face(n, i, a) == y.face(n, i, a) @ f[n],
                           degree=n, identity=f"f ∂_{i}^{a} = ∂_{i}^{a} f")
    if "ds" in fam:
        for n in range(1, x.dim_bound + 1):
            for i in range(1, n + 1):
                rep.expect(f[n] @ x.degen(n, i) == y.degen(n, i) @ f[n - 1],
                           degree=n, identity=f"f s_{i} = s_{i} f")
    if "dG" in fam:
        for n in range(1, x.dim_bound):
            for i in range(1, n + 1):
                rep.expect(f[n + 1] @ x.conn(n, i) == y.conn(n, i) @ f[n],
                           degree=n + 1, identity=f"f Γ_{i} = Γ_{i} f")
    return rep


def validate_precubical_homotopy(h: PrecubicalHomotopy) -> Report:
    rep = Report("precubical_homotopy")
    f, g = h.f, h.g
    x, y = f.source, f.target
    if g.source is not x and g.source.dim_bound != x.dim_bound:
        raise ValueError("homotopy endpoints have different sources")
    for n, hn in enumerate(h.components):
        if hn.source.ngens != x.groups[n].ngens or hn.target.ngens != y.groups[n + 1].ngens:
            raise ValueError(f"homotopy component h_{n} has the wrong shape")
    for n in range(x.dim_bound):
        hn = h.components[n]
        rep.expect(y.face(n + 1, 1, 0) @ hn == f[n], degree=n, identity="∂_1^0 h = f")
        rep.expect(y.face(n + 1, 1, 1) @ hn == g[n], degree=n, identity="∂_1^1 h = g")
        if n >= 1:
            for i in range(2, n + 2):
                for e in (0, 1):
                    rep.expect(y.face(n + 1, i, e) @ hn == h.components[n - 1] @ x.face(n, i - 1, e),
                               degree=n, identity=f"∂_{i}^{e} h_n = h_(n-1) ∂_{i - 1}^{e}")
    return rep


# ---------------------------------------------------------------------------
# generators


def constant_cubical(a: FgAbGroup, dim_bound: int) -> CubicalObject:
    """Every degree ``a``, every structure map the identity (level ``cc``)."""
    ident = Hom.identity(a)
    faces = {(n, i, e): ident for n in range(1, dim_bound + 1) for i in range(1, n + 1) for e in (0, 1)}
    degs = {(n, i): ident for n in range(1, dim_bound + 1) for i in range(1, n + 1)}
    cons = {(n, i): ident for n in range(1, dim_bound) for i in range(1, n + 1)}
    return CubicalObject((a,) * (dim_bound + 1), faces, degs, cons, "cc")


def zero_cubical(dim_bound: int) -> CubicalObject:
    return constant_cubical(FgAbGroup.trivial(), dim_bound)


class Poset:
    """Finite poset on ``elements`` with order given by generating pairs ``a <= b``."""

    def __init__(self, elements: Sequence, leq: Sequence = ()):
        self.elements = list(elements)
        idx = {e: k for k, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        n = len(self.elements)
        rel = [[i == j for j in range(n)] for i in range(n)]
        for a, b in leq:
            rel[idx[a]][idx[b]] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        for i in range(n):
            for j in range(n):
                if i != j and rel[i][j] and rel[j][i]:
                    raise ValueError(f"order is not antisymmetric: {self.elements[i]!r}, {self.elements[j]!r}")
        self._rel = rel

    def __len__(self) -> int:
        return len(self.elements)

    def le(self, i: int, j: int) -> bool:
        """Order on element *indices*."""
        return self._rel[i][j]

    def cover_pairs(self) -> list:
        return [(self.elements[i], self.elements[j]) for i in range(len(self)) for j in range(len(self))
                if i != j and self._rel[i][j]]

    @classmethod
    def chain(cls, k: int) -> "Poset":
        return cls(list(range(k)), [(i, i + 1) for i in range(k - 1)])

    @classmethod
    def antichain(cls, k: int) -> "Poset":
        return cls(list(range(k)))

    def __repr__(self) -> str:
        return f"Poset({self.elements!r}, {self.cover_pairs()!r})"


def all_posets(max_size: int) -> list:
    """One representative of each isomorphism class of posets with 1..max_size elements."""
    out = []
    for n in range(1, max_size + 1):
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        seen = set()
        for mask in range(1 << len(pairs)):
            chosen = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
            rel = {(i, i) for i in range(n)} | set(chosen)
            if any((j, i) in rel for (i, j) in chosen):
                continue
            if any((i, k) not in rel for (i, j) in rel for (j2, k) in rel if j == j2):
                continue
            key = min(tuple(sorted((p[i], p[j]) for (i, j) in chosen))
                      for p in itertools.permutations(range(n)))
            if key in seen:
                continue
            seen.add(key)
            out.append(Poset(list(range(n)), list(key)))
    return out


@dataclass(frozen=True)
class FiniteCubicalSet:
    """Finite cubical set with connections given by lookup tables on cube indices."""

    cubes: tuple                     # cubes[n] = tuple of labels
    faces: dict                      # (n, i, a) -> tuple of indices into cubes[n-1]
    degeneracies: dict               # (n, i) -> tuple of indices into cubes[n]
    connections: dict                # (n, i) -> tuple of indices into cubes[n+1]
    basepoint: Optional[int] = None  # index into cubes[0]

    @property
    def dim_bound(self) -> int:
        return len(self.cubes) - 1

    def count(self, n: int) -> int:
        return len(self.cubes[n])


def _tables_ops(x, D, compose_tables=None):
    def compose(a, b):  # a ∘ b on index tables
        return tuple(a[k] for k in b)

    return _Ops(D,
                lambda n, i, a: x.faces.get((n, i, a)) if 1 <= i <= n <= D else None,
                lambda n, i: x.degeneracies.get((n, i)) if 1 <= i <= n <= D else None,
                lambda n, i: x.connections.get((n, i)) if 1 <= i <= n < D else None,
                compose,
                lambda n: tuple(range(len(x.cubes[n]))),
                lambda a, b: a == b)


def validate_finite_cubical(x: FiniteCubicalSet, level: str = "cc") -> Report:
    rep = Report("finite_cubical_set", details={"level": level,
                                                "counts": [len(c) for c in x.cubes]})
    _require_structure(x, level, x.dim_bound, lambda n, i: (n, i) in x.degeneracies,
                       lambda n, i: (n, i) in x.connections, rep)
    if not rep.ok:
        return rep
    return _check_identities(_tables_ops(x, x.dim_bound), level_families(level), rep)


def _vertex_bits(n: int):
    """Vertices of {0,1}^n in lexicographic order (t_1 most significant)."""
    return list(itertools.product((0, 1), repeat=n))


def monotone_maps(p: Poset, n: int) -> list:
    """All monotone maps {0,1}^n -> p as value tuples over lexicographically ordered vertices."""
    if n == 0:
        return [(k,) for k in range(len(p))]
    prev = monotone_maps(p, n - 1)
    out = []
    for g0 in prev:
        for g1 in prev:
            if all(p.le(a, b) for a, b in zip(g0, g1)):
                out.append(g0 + g1)
    out.sort()
    return out


def poset_cubical_set(p: Poset, dim_bound: int, basepoint: Optional[int] = 0) -> FiniteCubicalSet:
    """Cubical set of monotone maps from Boolean cubes into ``p``, with max-connections."""
    cubes = [monotone_maps(p, n) for n in range(dim_bound + 1)]
    index = [{c: k for k, c in enumerate(cs)} for cs in cubes]
    verts = [_vertex_bits(n) for n in range(dim_bound + 2)]
    pos = [{v: k for k, v in enumerate(vs)} for vs in verts]

    def reindex(n_from, n_to, pull):
        # table for a map of cubes given by a vertex map {0,1}^{n_to} -> {0,1}^{n_from}
        vmap = [pos[n_from][pull(t)] for t in verts[n_to]]
        return tuple(index[n_to][tuple(c[v] for v in vmap)] for c in cubes[n_from])

    faces, degs, cons = {}, {}, {}
    for n in range(1, dim_bound + 1):
        for i in range(1, n + 1):
            for a in (0, 1):
                faces[(n, i, a)] = reindex(n, n - 1, lambda t, i=i, a=a: t[:i - 1] + (a,) + t[i - 1:])
            degs[(n, i)] = reindex(n - 1, n, lambda t, i=i: t[:i - 1] + t[i:])
    for n in range(1, dim_bound):
        for i in range(1, n + 1):
            cons[(n, i)] = reindex(n, n + 1, lambda t, i=i: t[:i - 1] + (max(t[i - 1], t[i]),) + t[i + 1:])
    bp = None
    if basepoint is not None and len(p):
        bp = index[0][(basepoint,)]
    return FiniteCubicalSet(tuple(tuple(c) for c in cubes), faces, degs, cons, bp)


def _selection(table: Sequence[int], nsrc: int, ntgt: int, coeff: FgAbGroup) -> IntMatrix:
    rows = [[0] * nsrc for _ in range(ntgt)]
    for c, img in enumerate(table):
        rows[img][c] = 1
    return IntMatrix(rows, ntgt, nsrc).kron(IntMatrix.identity(coeff.ngens))


def linearize(x: FiniteCubicalSet, coeff: FgAbGroup) -> CubicalObject:
    """Degreewise direct sum of copies of ``coeff`` indexed by cubes, with induced maps (level cc)."""
    groups = [direct_sum(*([coeff] * x.count(n))) if x.count(n) else FgAbGroup.trivial()
              for n in range(x.dim_bound + 1)]
    faces = {k: Hom(groups[k[0]], groups[k[0] - 1], _selection(t, x.count(k[0]), x.count(k[0] - 1), coeff))
             for k, t in x.faces.items()}
    degs = {k: Hom(groups[k[0] - 1], groups[k[0]], _selection(t, x.count(k[0] - 1), x.count(k[0]), coeff))
            for k, t in x.degeneracies.items()}
    cons = {k: Hom(groups[k[0]], groups[k[0] + 1], _selection(t, x.count(k[0]), x.count(k[0] + 1), coeff))
            for k, t in x.connections.items()}
    return CubicalObject(groups, faces, degs, cons, "cc")


def normalized_subgroup(x: CubicalObject, n: int):
    """``(N_n, incl)``: the intersection of the kernels of all 1-faces on X_n (all of X_0 at n = 0)."""
    g = x.groups[n]
    return intersect_kernels([x.face(n, i, 1) for i in range(1, n + 1)], g)
