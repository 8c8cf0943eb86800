"""Kan condition, homotopy groups and Moore complexes of finite cubical sets and groups.

Everything here is exhaustive enumeration over finite tables; it serves as an
independent check on the algebraic modules.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .chain import TruncationWarning, homology
from .cubical import CubicalObject, FiniteCubicalSet, validate_finite_cubical
from .exactalg import AlgebraError, format_group
from .norm import normalize
from .report import Report


class KanError(ValueError):
    """The input fails the Kan condition in a degree the computation needs."""


@dataclass(frozen=True)
class FiniteCubicalGroup:
    """A finite cubical set whose degree-n cubes form a group; structure maps are homomorphisms."""

    cset: FiniteCubicalSet
    mul: tuple    # mul[n][a][b] = index of a*b in degree n
    inv: tuple    # inv[n][a]
    unit: tuple   # unit[n]
    source: Optional[CubicalObject] = None  # abelian object this group was built from, if any

    @property
    def dim_bound(self) -> int:
        return self.cset.dim_bound

    def is_abelian(self) -> bool:
        return all(m[a][b] == m[b][a] for m in self.mul for a in range(len(m)) for b in range(a))

    @classmethod
    def from_cubical_object(cls, x: CubicalObject) -> "FiniteCubicalGroup":
        """Enumerate a cubical object over finite abelian groups into tables."""
        elems, index = [], []
        for g in x.groups:
            if not g.is_finite():
                raise AlgebraError("homotopy tables need finite groups")
            es = g.elements()
            elems.append(es)
            index.append({e: k for k, e in enumerate(es)})

        def table(hom, s, t):
            src, tgt = x.groups[s], x.groups[t]
            return tuple(index[t][tgt.reduce(hom(src.lift_coords(e)))] for e in elems[s])

        faces = {k: table(h, k[0], k[0] - 1) for k, h in x.faces.items()}
        degs = {k: table(h, k[0] - 1, k[0]) for k, h in (x.degeneracies or {}).items()}
        cons = {k: table(h, k[0], k[0] + 1) for k, h in (x.connections or {}).items()}
        mul, inv, unit = [], [], []
        for n, g in enumerate(x.groups):
            lifted = [g.lift_coords(e) for e in elems[n]]
            mul.append(tuple(tuple(index[n][g.reduce([p + q for p, q in zip(a, b)])] for b in lifted)
                             for a in lifted))
            inv.append(tuple(index[n][g.reduce([-p for p in a])] for a in lifted))
            unit.append(index[n][g.reduce([0] * g.ngens)])
        cset = FiniteCubicalSet(tuple(tuple(es) for es in elems), faces, degs, cons, unit[0])
        return cls(cset, tuple(mul), tuple(inv), tuple(unit), x)

    @classmethod
    def constant(cls, elements: Sequence, op: Callable, dim_bound: int) -> "FiniteCubicalGroup":
        """Constant cubical group on a finite group given by ``elements`` and ``op``."""
        elements = list(elements)
        idx = {e: k for k, e in enumerate(elements)}
        m = tuple(tuple(idx[op(a, b)] for b in elements) for a in elements)
        unit = next(k for k in range(len(elements)) if all(m[k][b] == b for b in range(len(elements))))
        inv = tuple(next(b for b in range(len(elements)) if m[a][b] == unit) for a in range(len(elements)))
        ident = tuple(range(len(elements)))
        D = dim_bound
        faces = {(n, i, a): ident for n in range(1, D + 1) for i in range(1, n + 1) for a in (0, 1)}
        degs = {(n, i): ident for n in range(1, D + 1) for i in range(1, n + 1)}
        cons = {(n, i): ident for n in range(1, D) for i in range(1, n + 1)}
        cset = FiniteCubicalSet((tuple(elements),) * (D + 1), faces, degs, cons, unit)
        return cls(cset, (m,) * (D + 1), (inv,) * (D + 1), (unit,) * (D + 1))


def symmetric_group_3(dim_bound: int) -> FiniteCubicalGroup:
    """Constant cubical group on S_3 (permutations of three letters, composed right to left)."""
    perms = sorted(itertools.permutations(range(3)))
    return FiniteCubicalGroup.constant(perms, lambda p, q: tuple(p[q[i]] for i in range(3)), dim_bound)


def validate_cubical_group(g: FiniteCubicalGroup) -> Report:
    rep = validate_finite_cubical(g.cset, "cc" if g.cset.connections else "cubical")
    rep.check = "finite_cubical_group"
    x = g.cset
    for n, m in enumerate(g.mul):
        size = len(m)
        u, inv = g.unit[n], g.inv[n]
        rep.expect(all(m[u][a] == a == m[a][u] for a in range(size)), degree=n, identity="unit")
        rep.expect(all(m[a][inv[a]] == u for a in range(size)), degree=n, identity="inverse")
        rep.expect(all(m[m[a][b]][c] == m[a][m[b][c]] for a in range(size) for b in range(size)
                       for c in range(size)), degree=n, identity="associativity")
    maps = [((k[0], k[0] - 1), t, f"∂_{k[1]}^{k[2]}") for k, t in x.faces.items()]
    maps += [((k[0] - 1, k[0]), t, f"s_{k[1]}") for k, t in x.degeneracies.items()]
    maps += [((k[0], k[0] + 1), t, f"Γ_{k[1]}") for k, t in x.connections.items()]
    for (s, t), tab, name in maps:
        ms, mt = g.mul[s], g.mul[t]
        ok = all(tab[ms[a][b]] == mt[tab[a]][tab[b]] for a in range(len(ms)) for b in range(len(ms)))
        rep.expect(ok, degree=s, identity=f"{name} is a homomorphism")
    return rep


# ---------------------------------------------------------------------------
# Kan condition


def _face_signature(x: FiniteCubicalSet, n: int, c: int) -> tuple:
    return tuple(x.faces[(n, j, e)][c] for j in range(1, n + 1) for e in (0, 1))


def _slot(j: int, e: int) -> int:
    return 2 * (j - 1) + e


def open_boxes(x: FiniteCubicalSet, n: int, omit: tuple):
    """All compatible families of ``2n-1`` faces in ``X_{n-1}`` missing the face ``omit``."""
    slots = [(j, e) for j in range(1, n + 1) for e in (0, 1) if (j, e) != omit]
    prev = range(x.count(n - 1))
    F = x.faces

    def compatible(assign, j, e, c):
        for (k, w), d in assign.items():
            if k < j and F[(n - 1, k, w)][c] != F[(n - 1, j - 1, e)][d]:
                return False
            if j < k and F[(n - 1, j, e)][d] != F[(n - 1, k - 1, w)][c]:
                return False
        return True

    def rec(pos, assign):
        if pos == len(slots):
            yield dict(assign)
            return
        j, e = slots[pos]
        for c in prev:
            if n == 1 or compatible(assign, j, e, c):
                assign[(j, e)] = c
                yield from rec(pos + 1, assign)
                del assign[(j, e)]

    yield from rec(0, {})


def kan_check(x: FiniteCubicalSet, up_to: int) -> Report:
    """Enumerate every open box up to degree ``up_to`` and look for a filler."""
    if up_to > x.dim_bound:
        raise ValueError(f"up_to={up_to} exceeds the dimension bound {x.dim_bound}")
    rep = Report("kan", details={"boxes": {}})
    for n in range(1, up_to + 1):
        sigs = [_face_signature(x, n, c) for c in range(x.count(n))]
        total = 0
        for j in range(1, n + 1):
            for e in (0, 1):
                drop = _slot(j, e)
                fillable = {s[:drop] + s[drop + 1:] for s in sigs}
                for box in open_boxes(x, n, (j, e)):
                    total += 1
                    key = tuple(box[(k, w)] for k in range(1, n + 1) for w in (0, 1) if (k, w) != (j, e))
                    if key not in fillable:
                        rep.fail(degree=n, omitted=[j, e],
                                 box={f"{k},{w}": x.cubes[n - 1][c] for (k, w), c in box.items()})
        rep.details["boxes"][n] = total
    return rep


# ---------------------------------------------------------------------------
# homotopy groups


@dataclass(frozen=True)
class HomotopyGroupResult:
    n: int
    classes: tuple          # each class: sorted tuple of cube indices of Z̃_n
    base_class: int
    table: Optional[tuple]  # table[a][b] = class of [a]•[b] (None for π_0 of a bare set)
    labels: tuple           # printable representative per class

    @property
    def order(self) -> int:
        return len(self.classes)

    def is_group(self) -> bool:
        t = self.table
        if t is None:
            return False
        k, u = len(t), self.base_class
        if any(t[u][a] != a or t[a][u] != a for a in range(k)):
            return False
        if any(all(t[a][b] != u for b in range(k)) for a in range(k)):
            return False
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(k) for b in range(k) for c in range(k))

    def is_abelian(self) -> bool:
        t = self.table
        return t is not None and all(t[a][b] == t[b][a] for a in range(len(t)) for b in range(a))

    def canonical_form(self) -> tuple:
        """Invariant factors of a finite abelian group table."""
        if not (self.is_group() and self.is_abelian()):
            raise AlgebraError("canonical form needs an abelian group table")
        return abelian_table_invariants(self.table, self.base_class)


def abelian_table_invariants(table, unit: int) -> tuple:
    """``(0, invariant factors)`` of a finite abelian group given by its table."""
    k = len(table)

    def power(a, m):
        r = unit
        for _ in range(m):
            r = table[r][a]
        return r

    def count_killed(m):
        return sum(1 for a in range(k) if power(a, m) == unit)

    primes = [p for p in range(2, k + 1) if k % p == 0 and all(p % q for q in range(2, p))]
    # for each prime, exponents of the p-primary part from |G[p^i]|
    per_prime = {}
    for p in primes:
        sizes = [1]
        i = 1
        while True:
            sizes.append(count_killed(p ** i))
            if sizes[-1] == sizes[-2]:
                break
            i += 1
        # number of cyclic factors of order >= p^i is log_p(sizes[i] / sizes[i-1])
        ge = []
        for i in range(1, len(sizes)):
            r, q = 0, sizes[i] // sizes[i - 1]
            while q > 1:
                q //= p
                r += 1
            ge.append(r)
        exps = []
        for i, cnt in enumerate(ge, start=1):
            nxt = ge[i] if i < len(ge) else 0
            exps += [i] * (cnt - nxt)
        per_prime[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for slot in range(width):
        d = 1
        for p, exps in per_prime.items():
            if slot < len(exps):
                d *= p ** exps[slot]
        factors.append(d)
    return 0, tuple(sorted(factors))


def _basepoints(x: FiniteCubicalSet) -> list:
    if x.basepoint is None:
        raise ValueError("homotopy groups need a basepoint")
    psi = [x.basepoint]
    for n in range(1, x.dim_bound + 1):
        psi.append(x.degeneracies[(n, 1)][psi[-1]])
    return psi


def spherical(x: FiniteCubicalSet, n: int) -> list:
    """Z̃_n: cubes all of whose faces are the basepoint (all of X_0 when n = 0)."""
    if n == 0:
        return list(range(x.count(0)))
    psi = _basepoints(x)[n - 1]
    return [c for c in range(x.count(n)) if all(f == psi for f in _face_signature(x, n, c))]


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def homotopy_relation(x: FiniteCubicalSet, n: int, column: int) -> set:
    """Pairs ``(x, y)`` joined by an ``(n+1)``-cube with ``x, y`` in the given column and ψ elsewhere."""
    psi = _basepoints(x)[n]
    m = n + 1
    pairs = set()
    for z in range(x.count(m)):
        ok = all(x.faces[(m, j, e)][z] == psi for j in range(1, m + 1) for e in (0, 1) if j != column)
        if ok:
            pairs.add((x.faces[(m, column, 0)][z], x.faces[(m, column, 1)][z]))
    return pairs


def _partition(items, pairs) -> tuple:
    uf = _UnionFind(items)
    for a, b in pairs:
        if a in uf.parent and b in uf.parent:
            uf.union(a, b)
    groups = {}
    for i in items:
        groups.setdefault(uf.find(i), []).append(i)
    return tuple(sorted(tuple(sorted(v)) for v in groups.values()))


def pi(x, n: int, check_kan: bool = True) -> HomotopyGroupResult:
    """π_n of a pointed finite Kan cubical set (or of a finite cubical group, based at 1)."""
    group = x if isinstance(x, FiniteCubicalGroup) else None
    cs = group.cset if group else x
    if not 0 <= n <= cs.dim_bound - 1:
        raise ValueError(f"π_{n} is certified only for 0 <= n <= {cs.dim_bound - 1}")
    if check_kan:
        rep = kan_check(cs, n + 1)
        if not rep.ok:
            raise KanError(f"Kan condition fails: {rep.failures[0]}")
    items = spherical(cs, n)
    classes = _partition(items, homotopy_relation(cs, n, 1))
    where = {c: k for k, cls in enumerate(classes) for c in cls}
    base = where[_basepoints(cs)[n]]
    table = None
    if n >= 1:
        table = filler_product(cs, n, where, strict=True)
    elif group is not None:
        m = group.mul[0]
        table = tuple(tuple(where[m[a[0]][b[0]]] for b in classes) for a in classes)
    labels = tuple(str(cs.cubes[n][cls[0]]) for cls in classes)
    return HomotopyGroupResult(n, classes, base, table, labels)


def filler_product(x: FiniteCubicalSet, n: int, where: dict, strict: bool = False):
    """Table of ``[x]•[y] = [∂_1^1 z]`` over every filler ``z``; raises if choices disagree."""
    psi = _basepoints(x)[n]
    m = n + 1
    k = len(set(where.values()))
    seen = [[set() for _ in range(k)] for _ in range(k)]
    for z in range(x.count(m)):
        f = x.faces
        if f[(m, 2, 0)][z] != psi:
            continue
        if any(f[(m, j, e)][z] != psi for j in range(3, m + 1) for e in (0, 1)):
            continue
        a, b, c = f[(m, 1, 0)][z], f[(m, 2, 1)][z], f[(m, 1, 1)][z]
        if a in where and b in where:
            seen[where[a]][where[b]].add(where[c])
    table = []
    for i in range(k):
        row = []
        for j in range(k):
            vals = seen[i][j]
            if len(vals) != 1:
                if strict:
                    raise KanError(f"filler product undefined or ambiguous at ({i}, {j}): {sorted(vals)}")
                row.append(None)
            else:
                row.append(next(iter(vals)))
        table.append(tuple(row))
    return tuple(table)


def pi_report(x, n: int) -> Report:
    """π_n with the cross-checks: both forms of ∼ agree, ∼ is already an equivalence, products well defined."""
    cs = x.cset if isinstance(x, FiniteCubicalGroup) else x
    rep = Report("pi", details={"n": n})
    res = pi(x, n)
    items = spherical(cs, n)
    first = homotopy_relation(cs, n, 1)
    last = homotopy_relation(cs, n, n + 1)
    rep.expect(_partition(items, last) == res.classes, identity="first-column and last-column ∼ agree")
    members = set(items)
    rel = {(a, b) for a, b in first if a in members and b in members}
    rep.expect(all((a, a) in rel for a in items), identity="∼ reflexive")
    rep.expect(all((b, a) in rel for a, b in rel), identity="∼ symmetric")
    by_first = {}
    for a, b in rel:
        by_first.setdefault(a, set()).add(b)
    rep.expect(all(c in by_first.get(a, ()) for a, b in rel for c in by_first.get(b, ())),
               identity="∼ transitive")
    if res.table is not None:
        rep.expect(res.is_group(), identity="group axioms")
        if n >= 1:
            rep.expect(res.is_abelian(), identity="abelian for n >= 1")
    rep.details.update({"order": res.order, "classes": list(res.labels)})
    if res.table is not None and res.is_group() and res.is_abelian():
        rep.details["group"] = _fmt(res.canonical_form())
    return rep


def _fmt(canon) -> str:
    return format_group(canon)


# ---------------------------------------------------------------------------
# Moore complex of a cubical group


@dataclass(frozen=True)
class MooreGroupComplex:
    M: tuple          # M[n] = sorted element indices
    boundary: tuple   # boundary[n] = {x: ∂_n^0 x} on M_n for n >= 1 (index 0 unused)
    Z: tuple
    B: tuple          # B[n] = image of M_{n+1} (None at the top degree)
    homology: tuple   # list of cosets of B_n in Z_n (None at the top degree)


def moore_group_complex(g: FiniteCubicalGroup) -> tuple:
    """``(MooreGroupComplex, Report)`` with the three structural claims checked on tables."""
    x = g.cset
    D = g.dim_bound
    rep = Report("moore_group_complex")
    u = g.unit
    M = []
    for n in range(D + 1):
        members = [c for c in range(x.count(n))
                   if all(x.faces[(n, i, 1)][c] == u[n - 1] for i in range(1, n + 1))
                   and all(x.faces[(n, i, 0)][c] == u[n - 1] for i in range(1, n))]
        M.append(members)
    bnd = [None] + [{c: x.faces[(n, n, 0)][c] for c in M[n]} for n in range(1, D + 1)]
    Z = [list(M[0])] + [[c for c in M[n] if bnd[n][c] == u[n - 1]] for n in range(1, D + 1)]
    B = []
    for n in range(D + 1):
        if n == D:
            B.append(None)
            continue
        img = sorted({bnd[n + 1][c] for c in M[n + 1]})
        B.append(img)
        mset = set(M[n])
        rep.expect(set(img) <= mset, degree=n, claim="∂^0_{n+1}(M_{n+1}) ⊆ M_n")
        if n >= 1:
            rep.expect(all(bnd[n][b] == u[n - 1] for b in img), degree=n, claim="composite trivial")
        bset, m, inv = set(img), g.mul[n], g.inv[n]
        rep.expect(all(m[m[z][b]][inv[z]] in bset for z in range(x.count(n)) for b in img),
                   degree=n, claim="image normal in G_n")
        rep.expect(all(m[m[z][b]][inv[z]] in bset for z in M[n] for b in img),
                   degree=n, claim="image normal in M_n")
        # conjugation by a degenerate cube stays in M_{n+1} and lifts conjugation below
        s = x.degeneracies[(n + 1, n + 1)]
        m1, inv1 = g.mul[n + 1], g.inv[n + 1]
        M1 = set(M[n + 1])
        for z in range(x.count(n)):
            sz = s[z]
            for y in M[n + 1]:
                w = m1[m1[sz][y]][inv1[sz]]
                rep.expect(w in M1 and bnd[n + 1][w] == m[m[z][bnd[n + 1][y]]][inv[z]],
                           degree=n + 1, claim="witness s_{n+1}z · y · s_{n+1}z⁻¹")
    H = []
    for n in range(D + 1):
        if B[n] is None:
            H.append(None)
            continue
        m, bset = g.mul[n], set(B[n])
        cosets, seen = [], set()
        for z in Z[n]:
            if z in seen:
                continue
            coset = sorted({m[z][b] for b in bset})
            seen.update(coset)
            cosets.append(tuple(coset))
        H.append(tuple(cosets))
    return MooreGroupComplex(tuple(map(tuple, M)), tuple(bnd), tuple(map(tuple, Z)), tuple(B), tuple(H)), rep


def moore_homology_table(g: FiniteCubicalGroup, mc: MooreGroupComplex, n: int):
    """Multiplication table of ``H_n(M(G))`` on its cosets, with the unit coset index."""
    cosets = mc.homology[n]
    where = {c: k for k, cs in enumerate(cosets) for c in cs}
    m = g.mul[n]
    table = tuple(tuple(where[m[a[0]][b[0]]] for b in cosets) for a in cosets)
    return table, where[g.unit[n]]


def verify_pi_vs_moore(g: FiniteCubicalGroup, n: int) -> Report:
    """π_n(G) against H_n(M(G)): same cycles, same relation, same product, and the same group as H_n(N) when abelian."""
    rep = Report("pi_vs_moore", details={"n": n})
    x = g.cset
    res = pi(g, n)
    mc, mrep = moore_group_complex(g)
    rep.absorb(mrep)
    sph = spherical(x, n)
    rep.expect(sorted(sph) == sorted(mc.Z[n]), identity="Z̃_n = Z_n M(G)")
    where = {c: k for k, cls in enumerate(res.classes) for c in cls}
    bset = set(mc.B[n])
    m, inv = g.mul[n], g.inv[n]
    rep.expect(all((where[a] == where[b]) == (m[a][inv[b]] in bset) for a in sph for b in sph),
               identity="x ∼ y iff x y⁻¹ ∈ B_n")
    star = tuple(tuple(where[m[c1[0]][c2[0]]] for c2 in res.classes) for c1 in res.classes)
    if n >= 1:
        rep.expect(res.table == star, identity="[x]•[y] = [xy]")
        rep.absorb(interchange_check(res.table, star, res.base_class))
    else:
        rep.expect(res.table == star, identity="π_0 product is pointwise")
    rep.expect(res.order == len(mc.homology[n]), identity="|π_n| = |H_n(M)|")
    rep.details["pi_order"] = res.order
    if g.is_abelian():
        canon = res.canonical_form()
        h_table, h_unit = moore_homology_table(g, mc, n)
        rep.expect(canon == abelian_table_invariants(h_table, h_unit), identity="π_n ≅ H_n(M(G))")
        rep.details["pi"] = _fmt(canon)
        if g.source is not None and g.source.connections is not None:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", TruncationWarning)
                hm = homology(normalize(g.source, "M").complex, n)
                hn = homology(normalize(g.source, "N").complex, n)
            rep.expect(hm.canonical == canon, identity="π_n ≅ H_n(M) of the abelian object")
            rep.expect(hn.canonical == canon, identity="π_n ≅ H_n(N) of the abelian object")
            rep.details["H_N"] = str(hn)
    return rep


def interchange_check(bullet, star, unit: int) -> Report:
    """Two operations with a common unit satisfying the interchange law, hence equal and commutative."""
    rep = Report("interchange")
    k = len(bullet)
    rep.expect(all(bullet[unit][a] == a == bullet[a][unit] for a in range(k)), identity="• unit")
    rep.expect(all(star[unit][a] == a == star[a][unit] for a in range(k)), identity="* unit")
    rep.expect(all(star[bullet[a][b]][bullet[c][d]] == bullet[star[a][c]][star[b][d]]
                   for a in range(k) for b in range(k) for c in range(k) for d in range(k)),
               identity="(a•b)*(c•d) = (a*c)•(b*d)")
    rep.expect(bullet == star, identity="• = *")
    return rep
