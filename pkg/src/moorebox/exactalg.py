"""Exact integer linear algebra and finitely generated abelian groups.

Everything here works over Python's arbitrary-precision integers.  A group is
a presentation ``Z^n / R Z^r`` (relations are the *columns* of ``R``) with a
cached Smith normal form; a homomorphism is an integer matrix acting on
generator coordinates.

Subgroups are always handed back with a canonical basis: the Hermite normal
form of their full preimage lattice in ``Z^n``.  Two routes that compute the
same subgroup of the same ambient presentation therefore produce literally
the same generators.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence


class AlgebraError(ValueError):
    """Raised when an operation's algebraic precondition fails."""


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, rows: Iterable[Sequence[int]] = (), nrows: Optional[int] = None,
                 ncols: Optional[int] = None):
        data = tuple(tuple(int(v) for v in r) for r in rows)
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if not data and nrows:
            data = tuple((0,) * ncols for _ in range(nrows))
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise ValueError(f"ragged or mis-sized matrix data for {nrows}x{ncols}")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = data
        self._hash = None

    # constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls((), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        if not cols:
            return cls.zeros(nrows, 0)
        return cls(zip(*cols), nrows, len(cols))

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(((entries[i] if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def flat(cls, nrows: int, ncols: int, entries: Sequence[int]) -> "IntMatrix":
        if len(entries) != nrows * ncols:
            raise ValueError("entry count must equal rows * cols")
        return cls((entries[i * ncols:(i + 1) * ncols] for i in range(nrows)), nrows, ncols)

    # access ------------------------------------------------------------
    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> tuple:
        return tuple(v for r in self._rows for v in r)

    def columns(self) -> list:
        if not self.nrows:
            return [() for _ in range(self.ncols)]
        return [tuple(c) for c in zip(*self._rows)]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def to_lists(self) -> list:
        return [list(r) for r in self._rows]

    # algebra -----------------------------------------------------------
    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if not other.ncols or not self.nrows:
            return IntMatrix.zeros(self.nrows, other.ncols)
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self._rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            if not nz:
                out.append((0,) * other.ncols)
                continue
            out.append(tuple(sum(a * c[k] for k, a in nz) for c in cols))
        return IntMatrix(out, self.nrows, other.ncols)

    def matvec(self, v: Sequence[int]) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v) if a) for r in self._rows)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix((tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
                         self.nrows, self.ncols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix((tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
                         self.nrows, self.ncols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix((tuple(-a for a in r) for r in self._rows), self.nrows, self.ncols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix((tuple(k * a for a in r) for r in self._rows), self.nrows, self.ncols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.columns(), self.ncols, self.nrows)

    T = property(transpose)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        return hstack(self, *others)

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        return vstack(self, *others)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        return IntMatrix((r[c0:c1] for r in self._rows[r0:r1]), r1 - r0, c1 - c0)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix((tuple(r[j] for j in idx) for r in self._rows), self.nrows, len(idx))

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        rows = []
        for r in self._rows:
            for s in other._rows:
                rows.append(tuple(a * b for a in r for b in s))
        return IntMatrix(rows, self.nrows * other.nrows, self.ncols * other.ncols)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()!r}, nrows={self.nrows}, ncols={self.ncols})"


def hstack(*ms: IntMatrix) -> IntMatrix:
    if not ms:
        raise ValueError("nothing to stack")
    n = ms[0].nrows
    if any(m.nrows != n for m in ms):
        raise ValueError("hstack needs equal row counts")
    return IntMatrix((sum((m.rows[i] for m in ms), ()) for i in range(n)), n, sum(m.ncols for m in ms))


def vstack(*ms: IntMatrix) -> IntMatrix:
    if not ms:
        raise ValueError("nothing to stack")
    c = ms[0].ncols
    if any(m.ncols != c for m in ms):
        raise ValueError("vstack needs equal column counts")
    return IntMatrix(sum((m.rows for m in ms), ()), sum(m.nrows for m in ms), c)


def block_diag(*ms: IntMatrix) -> IntMatrix:
    nr = sum(m.nrows for m in ms)
    nc = sum(m.ncols for m in ms)
    rows = []
    c0 = 0
    for m in ms:
        for r in m.rows:
            rows.append((0,) * c0 + r + (0,) * (nc - c0 - m.ncols))
        c0 += m.ncols
    return IntMatrix(rows, nr, nc)


# ---------------------------------------------------------------------------
# Smith normal form


class SNF:
    """Result of :func:`smith_normal_form`: ``u @ m @ v == s``."""

    __slots__ = ("u", "s", "v", "u_inv", "v_inv", "diagonal", "rank")

    def __init__(self, u, s, v, u_inv, v_inv, diagonal):
        self.u, self.s, self.v = u, s, v
        self.u_inv, self.v_inv = u_inv, v_inv
        self.diagonal = diagonal
        self.rank = sum(1 for d in diagonal if d)

    def __iter__(self):
        return iter((self.u, self.s, self.v))


def _identity_lists(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _snf_compute(m: IntMatrix) -> SNF:
    nr, nc = m.shape
    a = m.to_lists()
    u, ui = _identity_lists(nr), _identity_lists(nr)
    v, vi = _identity_lists(nc), _identity_lists(nc)

    def row_add(i, j, q):  # row_i += q * row_j
        ai, aj = a[i], a[j]
        for k in range(nc):
            if aj[k]:
                ai[k] += q * aj[k]
        ui_, uj = u[i], u[j]
        for k in range(nr):
            if uj[k]:
                ui_[k] += q * uj[k]
        for r in ui:  # inverse: col_j -= q * col_i
            if r[i]:
                r[j] -= q * r[i]

    def col_add(i, j, q):  # col_i += q * col_j
        for r in a:
            if r[j]:
                r[i] += q * r[j]
        for r in v:
            if r[j]:
                r[i] += q * r[j]
        vj, vi_ = vi[j], vi[i]  # inverse: row_j -= q * row_i
        for k in range(nc):
            if vi_[k]:
                vj[k] -= q * vi_[k]

    def row_swap(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]
            for r in ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]
            vi[i], vi[j] = vi[j], vi[i]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            row = a[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                cand = [(abs(a[i][t]), 0, i) for i in range(t + 1, nr) if a[i][t]]
                cand += [(abs(a[t][j]), 1, j) for j in range(t + 1, nc) if a[t][j]]
                _, kind, k = min(cand)
                if kind == 0:
                    row_swap(t, k)
                else:
                    col_swap(t, k)
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
            for r in ui:
                r[t] = -r[t]
        t += 1
    diag = tuple(a[i][i] for i in range(min(nr, nc)))
    return SNF(IntMatrix(u, nr, nr), IntMatrix(a, nr, nc), IntMatrix(v, nc, nc),
               IntMatrix(ui, nr, nr), IntMatrix(vi, nc, nc), diag)


@lru_cache(maxsize=8192)
def _snf_cached(m: IntMatrix) -> SNF:
    return _snf_compute(m)


def smith_normal_form(m: IntMatrix) -> SNF:
    """Smith normal form with unimodular transforms.

    Pivoting is deterministic: smallest nonzero magnitude, ties to the lowest
    row then lowest column.  The result unpacks as ``u, s, v`` with
    ``u @ m @ v == s``; ``u_inv`` and ``v_inv`` are also available.
    """
    return _snf_cached(m)


def invariant_factors(m: IntMatrix) -> tuple:
    return tuple(d for d in smith_normal_form(m).diagonal if d)


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant needs a square matrix")
    a = m.to_lists()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# lattices and linear systems


def _xgcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf_basis(vectors: Iterable[Sequence[int]], dim: int) -> list:
    """Canonical basis (row Hermite normal form) of the lattice spanned by ``vectors``.

    Pivots are positive and strictly increasing in position; entries above a
    pivot are reduced into ``[0, pivot)``.
    """
    rows = [list(v) for v in vectors if any(v)]
    for r in rows:
        if len(r) != dim:
            raise ValueError("vector length mismatch")
    r = 0
    for col in range(dim):
        if r >= len(rows):
            break
        for i in range(r, len(rows)):
            if rows[i][col]:
                rows[r], rows[i] = rows[i], rows[r]
                break
        else:
            continue
        for i in range(r + 1, len(rows)):
            b = rows[i][col]
            if not b:
                continue
            a = rows[r][col]
            g, x, y = _xgcd(a, b)
            ra, rb = rows[r], rows[i]
            pa, pb = a // g, b // g
            rows[r] = [x * p + y * q for p, q in zip(ra, rb)]
            rows[i] = [pa * q - pb * p for p, q in zip(ra, rb)]
        if rows[r][col] < 0:
            rows[r] = [-x for x in rows[r]]
        p = rows[r][col]
        for k in range(r):
            q = rows[k][col] // p
            if q:
                rows[k] = [x - q * y for x, y in zip(rows[k], rows[r])]
        r += 1
        rows[r:] = [row for row in rows[r:] if any(row)]
    return [tuple(row) for row in rows[:r]]


def lattice_matrix(vectors: Iterable[Sequence[int]], dim: int) -> IntMatrix:
    """Canonical basis of a lattice, as the columns of a ``dim x k`` matrix."""
    return IntMatrix.from_columns(hnf_basis(vectors, dim), dim)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Canonical basis of ``ker a`` (columns), in Hermite normal form."""
    f = smith_normal_form(a)
    vcols = f.v.columns()
    return lattice_matrix(vcols[f.rank:], a.ncols)


def _solve_columns(a: IntMatrix, b: IntMatrix):
    """Particular solutions of ``a x = b`` for every column of ``b`` (None if some column fails)."""
    f = smith_normal_form(a)
    ub = f.u @ b
    r = f.rank
    d = f.diagonal
    ys = []
    for col in ub.columns():
        y = [0] * a.ncols
        for i in range(len(col)):
            c = col[i]
            if i < r:
                if c % d[i]:
                    return None
                y[i] = c // d[i]
            elif c:
                return None
        ys.append(y)
    return f.v @ IntMatrix.from_columns(ys, a.ncols) if ys else IntMatrix.zeros(a.ncols, 0)


def solve_linear(a: IntMatrix, b: Sequence[int]):
    """Solve ``a x = b`` over the integers.

    Returns ``(x0, kernel)`` where ``x0`` is the SNF back-substitution with all
    free parameters zero and ``kernel`` is a matrix whose columns form a basis
    of ``ker a``; returns ``None`` when there is no integer solution.
    """
    if len(b) != a.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.nrows}")
    x = _solve_columns(a, IntMatrix.from_columns([tuple(b)], a.nrows))
    if x is None:
        return None
    return x.column(0), kernel_basis(a)


def solve_matrix(a: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch")
    return _solve_columns(a, b)


# ---------------------------------------------------------------------------
# groups


class FgAbGroup:
    """Finitely generated abelian group ``Z^n / (column span of relations)``.

    Equality is isomorphism: two groups compare equal when their canonical
    forms agree.  Use :meth:`same_presentation` for literal comparison.
    """

    __slots__ = ("ngens", "relations", "_snf", "_canon")

    def __init__(self, ngens: int, relations: Optional[IntMatrix] = None, *, normalize: bool = True):
        if relations is None:
            relations = IntMatrix.zeros(ngens, 0)
        if relations.nrows != ngens:
            raise ValueError(f"relation matrix has {relations.nrows} rows, expected {ngens}")
        if normalize:
            relations = lattice_matrix(relations.columns(), ngens)
        self.ngens = ngens
        self.relations = relations
        self._snf = None
        self._canon = None

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> "FgAbGroup":
        return cls(1, IntMatrix([[order]]))

    @classmethod
    def from_invariants(cls, free_rank: int, torsion: Sequence[int] = ()) -> "FgAbGroup":
        torsion = [int(d) for d in torsion]
        if any(d < 1 for d in torsion):
            raise ValueError("torsion orders must be positive")
        n = free_rank + len(torsion)
        cols = [tuple(d if k == free_rank + i else 0 for k in range(n)) for i, d in enumerate(torsion)]
        return cls(n, IntMatrix.from_columns(cols, n))

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0)

    @property
    def snf(self) -> SNF:
        if self._snf is None:
            self._snf = smith_normal_form(self.relations)
        return self._snf

    @property
    def canonical(self) -> tuple:
        if self._canon is None:
            f = self.snf
            tors = tuple(d for d in f.diagonal if d > 1)
            self._canon = (self.ngens - f.rank, tors)
        return self._canon

    @property
    def free_rank(self) -> int:
        return self.canonical[0]

    @property
    def torsion(self) -> tuple:
        return self.canonical[1]

    def is_free(self) -> bool:
        return not self.torsion

    def is_trivial(self) -> bool:
        return self.canonical == (0, ())

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise AlgebraError("group is infinite")
        n = 1
        for d in self.torsion:
            n *= d
        return n

    # elements ----------------------------------------------------------
    def reduce(self, vec: Sequence[int]) -> tuple:
        """Canonical coordinates of the coset of ``vec``: one entry per nontrivial cyclic factor."""
        f = self.snf
        y = f.u.matvec(vec)
        out = []
        for i, c in enumerate(y):
            d = f.diagonal[i] if i < len(f.diagonal) else 0
            if d == 1:
                continue
            out.append(c % d if d else c)
        return tuple(out)

    def is_zero(self, vec: Sequence[int]) -> bool:
        f = self.snf
        y = f.u.matvec(vec)
        for i, c in enumerate(y):
            d = f.diagonal[i] if i < len(f.diagonal) else 0
            if d == 0:
                if c:
                    return False
            elif c % d:
                return False
        return True

    def _factor_orders(self) -> list:
        f = self.snf
        return [(f.diagonal[i] if i < len(f.diagonal) else 0) for i in range(self.ngens)]

    def lift_coords(self, coords: Sequence[int]) -> tuple:
        """Generator vector representing the canonical coordinates ``coords``."""
        orders = self._factor_orders()
        y = []
        it = iter(coords)
        for d in orders:
            y.append(0 if d == 1 else next(it))
        return self.snf.u_inv.matvec(y)

    def elements(self) -> list:
        """All canonical coordinate tuples of a finite group, in lexicographic order."""
        orders = [d for d in self._factor_orders() if d != 1]
        if any(d == 0 for d in orders):
            raise AlgebraError("group is infinite")
        out = [()]
        for d in orders:
            out = [e + (k,) for e in out for k in range(d)]
        return out

    def equal_elements(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.is_zero([x - y for x, y in zip(a, b)])

    # comparison ----------------------------------------------------------
    def same_presentation(self, other: "FgAbGroup") -> bool:
        return self.ngens == other.ngens and self.relations == other.relations

    def __eq__(self, other) -> bool:
        return isinstance(other, FgAbGroup) and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __str__(self) -> str:
        return format_group(self.canonical)

    def __repr__(self) -> str:
        return f"FgAbGroup({self.ngens}, relations={self.relations.to_lists()!r})  # {self}"


def format_group(canonical: tuple) -> str:
    r, tors = canonical
    parts = []
    if r == 1:
        parts.append("Z")
    elif r > 1:
        parts.append(f"Z^{r}")
    parts += [f"Z/{d}" for d in tors]
    return " + ".join(parts) if parts else "0"


_TERM = re.compile(r"^\s*(?:(Z)(?:\s*\^\s*(\d+))?|Z\s*/\s*(\d+)|(0))\s*$")


def parse_group(text: str) -> FgAbGroup:
    """Parse shorthand like ``"Z^2 + Z/4 + Z/6"``, ``"Z"`` or ``"0"``."""
    free, tors = 0, []
    for term in text.replace("⊕", "+").split("+"):
        m = _TERM.match(term.replace("ℤ", "Z"))
        if not m:
            raise ValueError(f"cannot parse group term {term.strip()!r} in {text!r}")
        if m.group(3) is not None:
            d = int(m.group(3))
            if d < 1:
                raise ValueError(f"bad cyclic order in {text!r}")
            if d == 1:
                continue
            tors.append(d)
        elif m.group(1):
            free += int(m.group(2) or 1)
    return FgAbGroup.from_invariants(free, tors)


def canonical_form(g: FgAbGroup) -> tuple:
    """``(free_rank, invariant_factors)`` with each factor ``>= 2`` dividing the next."""
    return g.canonical


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    if not groups:
        return FgAbGroup.trivial()
    return FgAbGroup(sum(g.ngens for g in groups), block_diag(*(g.relations for g in groups)))


# ---------------------------------------------------------------------------
# homomorphisms


class Hom:
    """Homomorphism given by an integer matrix (target generators x source generators).

    Equality is matrix equality modulo the target relations.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix, *, check: bool = False):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(f"matrix shape {matrix.shape} does not fit "
                             f"{source.ngens} -> {target.ngens} generators")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_well_defined():
            raise AlgebraError("homomorphism does not respect source relations")

    @classmethod
    def identity(cls, g: FgAbGroup) -> "Hom":
        return cls(g, g, IntMatrix.identity(g.ngens))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "Hom":
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    def is_well_defined(self) -> bool:
        img = self.matrix @ self.source.relations
        return all(self.target.is_zero(c) for c in img.columns())

    def __call__(self, vec: Sequence[int]) -> tuple:
        return self.matrix.matvec(vec)

    def __matmul__(self, other: "Hom") -> "Hom":
        """Composition ``self ∘ other``."""
        if other.target.ngens != self.source.ngens:
            raise ValueError("composition of incompatible homomorphisms")
        return Hom(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "Hom") -> "Hom":
        return Hom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "Hom") -> "Hom":
        return Hom(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "Hom":
        return Hom(self.source, self.target, -self.matrix)

    def __rmul__(self, k: int) -> "Hom":
        return Hom(self.source, self.target, self.matrix.scale(k))

    def is_zero(self) -> bool:
        return all(self.target.is_zero(c) for c in self.matrix.columns())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hom) or self.matrix.shape != other.matrix.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial()

    def is_injective(self) -> bool:
        return hom_kernel(self)[0].is_trivial()

    def __repr__(self) -> str:
        return f"Hom({self.source} -> {self.target}, {self.matrix.to_lists()!r})"


def stack_homs(fs: Sequence[Hom], source: Optional[FgAbGroup] = None) -> Hom:
    """The map ``G -> T1 ⊕ ... ⊕ Tk`` with components ``fs`` (common source)."""
    if not fs:
        if source is None:
            raise ValueError("empty stack needs an explicit source")
        return Hom(source, FgAbGroup.trivial(), IntMatrix.zeros(0, source.ngens))
    src = fs[0].source
    for f in fs:
        if f.source.ngens != src.ngens or (source is not None and f.source.ngens != source.ngens):
            raise ValueError("stacked homomorphisms must share a source")
    return Hom(source or src, direct_sum(*(f.target for f in fs)), vstack(*(f.matrix for f in fs)))


def sum_homs(fs: Sequence[Hom], target: Optional[FgAbGroup] = None) -> Hom:
    """The map ``S1 ⊕ ... ⊕ Sk -> T`` with components ``fs`` (common target)."""
    tgt = target or fs[0].target
    return Hom(direct_sum(*(f.source for f in fs)), tgt, hstack(*(f.matrix for f in fs)))


def subgroup_from_vectors(g: FgAbGroup, vectors: Iterable[Sequence[int]]):
    """Subgroup of ``g`` generated by ``vectors``, with its canonical basis.

    Returns ``(sub, incl)``.  The generators of ``sub`` are the Hermite basis
    of ``span(vectors) + span(relations of g)``.
    """
    vecs = list(vectors) + list(g.relations.columns())
    basis = hnf_basis(vecs, g.ngens)
    b = IntMatrix.from_columns(basis, g.ngens)
    rel = solve_matrix(b, g.relations)
    if rel is None:  # pragma: no cover - relations lie in the lattice by construction
        raise AlgebraError("internal: relations outside subgroup lattice")
    sub = FgAbGroup(len(basis), rel)
    return sub, Hom(sub, g, b)


def hom_kernel(f: Hom, *, check: bool = True):
    """Kernel of ``f`` as ``(k, incl)`` with ``incl`` injective onto ``{x : f(x) = 0}``."""
    if check and not f.is_well_defined():
        raise AlgebraError("kernel of an ill-defined homomorphism")
    big = hstack(f.matrix, -f.target.relations)
    kb = kernel_basis(big)
    n = f.source.ngens
    vecs = [c[:n] for c in kb.columns()]
    return subgroup_from_vectors(f.source, vecs)


def hom_image(f: Hom):
    """Image of ``f`` as an abstract group with its inclusion into the target."""
    return subgroup_from_vectors(f.target, f.matrix.columns())


def cokernel(f: Hom):
    """``(q, proj)`` with ``q = target / image(f)`` on the target's generators."""
    t = f.target
    q = FgAbGroup(t.ngens, hstack(t.relations, f.matrix))
    return q, Hom(t, q, IntMatrix.identity(t.ngens))


def quotient(g: FgAbGroup, sub: Hom):
    """Quotient of ``g`` by the image of an injective ``sub``."""
    if sub.target.ngens != g.ngens:
        raise ValueError("subgroup inclusion does not land in g")
    if not sub.is_well_defined():
        raise AlgebraError("ill-defined subgroup inclusion")
    if not sub.is_injective():
        raise AlgebraError("subgroup map is not injective")
    return cokernel(Hom(sub.source, g, sub.matrix))


def intersect_kernels(fs: Sequence[Hom], source: Optional[FgAbGroup] = None):
    """``⋂ ker f_i`` with its canonical inclusion; the empty list gives the whole group."""
    if not fs and source is None:
        raise ValueError("empty intersection needs an explicit source")
    g = source or fs[0].source
    for f in fs:
        if f.source.ngens != g.ngens or not f.source.same_presentation(g):
            raise ValueError("intersect_kernels needs a common source")
    return hom_kernel(stack_homs(list(fs), g))


def factor_through(mono: Hom, f: Hom) -> Hom:
    """The unique ``g`` with ``mono ∘ g = f``, for ``mono`` injective and ``im f ⊆ im mono``."""
    if mono.target.ngens != f.target.ngens:
        raise ValueError("factor_through: targets differ")
    x = mono.target
    a = hstack(mono.matrix, x.relations)
    sol = solve_matrix(a, f.matrix)
    if sol is None:
        raise AlgebraError("image does not lie in the subgroup")
    k = mono.source.ngens
    return Hom(f.source, mono.source, sol.block(0, k, 0, sol.ncols))


def lift_through(e: Hom, phi: Hom, *, check: bool = True) -> Hom:
    """A map ``psi`` with ``e ∘ psi = phi``, for ``e`` surjective and ``phi.source`` free.

    Each generator's preimage is the canonical particular solution.
    """
    if e.target.ngens != phi.target.ngens:
        raise ValueError("lift_through: targets differ")
    if check:
        if not phi.source.is_free():
            raise AlgebraError("lift_through needs a free source")
        if not e.is_surjective():
            raise AlgebraError("lift_through needs a surjective map")
    src = phi.source
    target = phi.matrix
    basis_change = None
    if src.relations.ncols:
        # free group with a redundant presentation: lift on an honest basis
        f = src.snf
        keep = list(range(f.rank, src.ngens))
        target = phi.matrix @ f.u_inv.select_columns(keep)
        basis_change = IntMatrix([f.u.rows[i] for i in keep], len(keep), src.ngens)
    a = hstack(e.matrix, e.target.relations)
    sol = solve_matrix(a, target)
    if sol is None:
        raise AlgebraError("phi does not land in the image of e")
    k = e.source.ngens
    psi = sol.block(0, k, 0, sol.ncols)
    if basis_change is not None:
        psi = psi @ basis_change
    return Hom(src, e.source, psi)


def same_subgroup(a: Hom, b: Hom) -> bool:
    """Whether two maps into the same group have the same image."""
    la = subgroup_from_vectors(a.target, a.matrix.columns())[1].matrix
    lb = subgroup_from_vectors(b.target, b.matrix.columns())[1].matrix
    return la == lb


def subgroup_intersection(a: Hom, b: Hom):
    """``im a ∩ im b`` inside the common target, as ``(group, incl)``."""
    g = a.target
    pair = Hom(direct_sum(a.source, b.source), g, hstack(a.matrix, -b.matrix))
    k, incl = hom_kernel(pair, check=False)
    proj_a = incl.matrix.block(0, a.source.ngens, 0, incl.matrix.ncols)
    return subgroup_from_vectors(g, (a.matrix @ proj_a).columns())


def subgroup_sum(a: Hom, b: Hom):
    return subgroup_from_vectors(a.target, a.matrix.columns() + b.matrix.columns())


def tensor_groups(g: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """Presentation of ``g ⊗ b`` on generator pairs ``(i, j) -> i * b.ngens + j``."""
    rel = hstack(g.relations.kron(IntMatrix.identity(b.ngens)),
                 IntMatrix.identity(g.ngens).kron(b.relations))
    return FgAbGroup(g.ngens * b.ngens, rel)


def random_unimodular(n: int, rng, steps: int = None, bound: int = 3) -> IntMatrix:
    """Random unimodular matrix from elementary operations (for tests and suites)."""
    a = _identity_lists(n)
    if n < 2:
        return IntMatrix(a, n, n)
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-bound, bound)
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
    return IntMatrix(a, n, n)


def gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
