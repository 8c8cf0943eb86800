"""JSON encoding of every typed object, with integers written as decimal strings.

Decoding accepts plain JSON integers as well.  Every decoding error names the
JSON path where it happened; syntax errors carry a line and column.
"""

from __future__ import annotations

import json
from typing import Any

from .chain import AugmentedChainComplex, ChainComplex
from .cubical import AugmentedCubicalObject, CubicalObject, FiniteCubicalSet, Poset
from .derive import CubicalKernelResult, Resolution
from .exactalg import FgAbGroup, Hom, IntMatrix, direct_sum, parse_group
from .homotopy import FiniteCubicalGroup
from .simplicial import SimplicialObject


class InputError(ValueError):
    """Malformed input; the message starts with the offending location."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


# ---------------------------------------------------------------------------
# primitives


def _int(v: Any, path: str) -> int:
    if isinstance(v, bool):
        raise InputError(path, "expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            pass
    raise InputError(path, f"expected an integer, got {v!r}")


def _get(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise InputError(path, "expected an object")
    if key not in obj:
        raise InputError(path, f"missing key {key!r}")
    return obj[key]


def _list(v: Any, path: str) -> list:
    if not isinstance(v, list):
        raise InputError(path, "expected a list")
    return v


def matrix_to_json(m: IntMatrix) -> list:
    return [[str(v) for v in row] for row in m.rows]


def matrix_from_json(v: Any, path: str, nrows: int, ncols: int) -> IntMatrix:
    rows = _list(v, path)
    if len(rows) != nrows:
        raise InputError(path, f"expected {nrows} rows, got {len(rows)}")
    out = []
    for r, row in enumerate(rows):
        row = _list(row, f"{path}[{r}]")
        if len(row) != ncols:
            raise InputError(f"{path}[{r}]", f"expected {ncols} entries, got {len(row)}")
        out.append([_int(x, f"{path}[{r}][{c}]") for c, x in enumerate(row)])
    return IntMatrix(out, nrows, ncols)


def group_to_json(g: FgAbGroup) -> dict:
    """``relations`` lists relation vectors, each of length ``generators``."""
    return {"generators": str(g.ngens), "relations": [[str(x) for x in col] for col in g.relations.columns()]}


def group_from_json(v: Any, path: str = "$") -> FgAbGroup:
    if isinstance(v, str):
        try:
            return parse_group(v)
        except ValueError as exc:
            raise InputError(path, str(exc)) from None
    if isinstance(v, dict) and "free_rank" in v:
        tors = [_int(d, f"{path}.torsion[{k}]") for k, d in enumerate(_list(v.get("torsion", []), f"{path}.torsion"))]
        if any(d < 1 for d in tors):
            raise InputError(f"{path}.torsion", "torsion orders must be positive")
        rank = _int(v["free_rank"], f"{path}.free_rank")
        if rank < 0:
            raise InputError(f"{path}.free_rank", "free rank must be non-negative")
        return FgAbGroup.from_invariants(rank, [d for d in tors if d > 1])
    n = _int(_get(v, "generators", path), f"{path}.generators")
    if n < 0:
        raise InputError(f"{path}.generators", "generator count must be non-negative")
    rels = _list(v.get("relations", []), f"{path}.relations")
    cols = []
    for k, rel in enumerate(rels):
        rel = _list(rel, f"{path}.relations[{k}]")
        if len(rel) != n:
            raise InputError(f"{path}.relations[{k}]", f"expected {n} entries, got {len(rel)}")
        cols.append([_int(x, f"{path}.relations[{k}][{c}]") for c, x in enumerate(rel)])
    return FgAbGroup(n, IntMatrix.from_columns(cols, n))


def hom_to_json(f: Hom, with_groups: bool = True) -> Any:
    if not with_groups:
        return matrix_to_json(f.matrix)
    return {"source": group_to_json(f.source), "target": group_to_json(f.target), "matrix": matrix_to_json(f.matrix)}


def hom_from_json(v: Any, path: str = "$", source: FgAbGroup = None, target: FgAbGroup = None) -> Hom:
    """Either a full ``{"source", "target", "matrix"}`` object or a bare matrix between known groups."""
    if isinstance(v, dict):
        source = group_from_json(_get(v, "source", path), f"{path}.source")
        target = group_from_json(_get(v, "target", path), f"{path}.target")
        v, path = v.get("matrix"), f"{path}.matrix"
    if source is None or target is None:
        raise InputError(path, "a bare matrix needs known source and target groups")
    f = Hom(source, target, matrix_from_json(v, path, target.ngens, source.ngens))
    if not f.is_well_defined():
        raise InputError(path, "matrix does not respect the relations")
    return f


# ---------------------------------------------------------------------------
# chain complexes


def chain_to_json(c) -> dict:
    aug = None
    if isinstance(c, AugmentedChainComplex):
        c, aug = c.complex, c
    out = {"type": "chain_complex", "dim_bound": str(c.dim_bound),
           "groups": [group_to_json(g) for g in c.groups],
           "differentials": [matrix_to_json(d.matrix) for d in c.differentials]}
    if aug is not None:
        out["augmentation"] = {"target": group_to_json(aug.target), "matrix": matrix_to_json(aug.augmentation.matrix)}
    return out


def _groups(v: Any, path: str, expected: int = None) -> list:
    gs = [group_from_json(g, f"{path}[{k}]") for k, g in enumerate(_list(v, path))]
    if expected is not None and len(gs) != expected:
        raise InputError(path, f"expected {expected} groups for the dimension bound, got {len(gs)}")
    return gs


def chain_from_json(v: Any, path: str = "$"):
    D = _int(_get(v, "dim_bound", path), f"{path}.dim_bound")
    groups = _groups(_get(v, "groups", path), f"{path}.groups", D + 1)
    diffs = _list(_get(v, "differentials", path), f"{path}.differentials")
    if len(diffs) != D:
        raise InputError(f"{path}.differentials", f"expected {D} differentials, got {len(diffs)}")
    ds = [hom_from_json(m, f"{path}.differentials[{k}]", groups[k + 1], groups[k]) for k, m in enumerate(diffs)]
    c = ChainComplex(groups, ds)
    if "augmentation" in v:
        a = v["augmentation"]
        tgt = group_from_json(_get(a, "target", f"{path}.augmentation"), f"{path}.augmentation.target")
        eps = hom_from_json(_get(a, "matrix", f"{path}.augmentation"), f"{path}.augmentation.matrix", groups[0], tgt)
        return AugmentedChainComplex(c, tgt, eps)
    return c


# ---------------------------------------------------------------------------
# cubical and simplicial objects


def cubical_to_json(x) -> dict:
    aug = None
    if isinstance(x, AugmentedCubicalObject):
        x, aug = x.object, x
    D = x.dim_bound
    out = {"type": "cubical", "dim_bound": str(D), "level": x.level,
           "groups": [group_to_json(g) for g in x.groups],
           "faces": {str(n): {str(i): {str(a): matrix_to_json(x.face(n, i, a).matrix) for a in (0, 1)}
                              for i in range(1, n + 1)} for n in range(1, D + 1)}}
    if x.degeneracies is not None:
        out["degeneracies"] = {str(n): {str(i): matrix_to_json(x.degen(n, i).matrix) for i in range(1, n + 1)}
                               for n in range(1, D + 1)}
    if x.connections is not None:
        out["connections"] = {str(n): {str(i): matrix_to_json(x.conn(n, i).matrix) for i in range(1, n + 1)}
                              for n in range(1, D)}
    if aug is not None:
        out["augmentation"] = {"target": group_to_json(aug.target), "matrix": matrix_to_json(aug.augmentation.matrix)}
    return out


def _entry(tab: dict, path: str, *keys) -> Any:
    cur = tab
    for k in keys:
        p = f"{path}.{k}"
        if not isinstance(cur, dict) or str(k) not in cur:
            raise InputError(path, f"missing entry {'.'.join(map(str, keys))}")
        cur, path = cur[str(k)], p
    return cur


def cubical_from_json(v: Any, path: str = "$"):
    D = _int(_get(v, "dim_bound", path), f"{path}.dim_bound")
    level = v.get("level", "precubical")
    groups = _groups(_get(v, "groups", path), f"{path}.groups", D + 1)
    ft = _get(v, "faces", path)
    faces = {}
    for n in range(1, D + 1):
        for i in range(1, n + 1):
            for a in (0, 1):
                p = f"{path}.faces.{n}.{i}.{a}"
                faces[(n, i, a)] = hom_from_json(_entry(ft, f"{path}.faces", n, i, a), p, groups[n], groups[n - 1])
    degs = cons = None
    if "degeneracies" in v:
        degs = {(n, i): hom_from_json(_entry(v["degeneracies"], f"{path}.degeneracies", n, i),
                                      f"{path}.degeneracies.{n}.{i}", groups[n - 1], groups[n])
                for n in range(1, D + 1) for i in range(1, n + 1)}
    if "connections" in v:
        cons = {(n, i): hom_from_json(_entry(v["connections"], f"{path}.connections", n, i),
                                      f"{path}.connections.{n}.{i}", groups[n], groups[n + 1])
                for n in range(1, D) for i in range(1, n + 1)}
    try:
        x = CubicalObject(groups, faces, degs, cons, level)
    except ValueError as exc:
        raise InputError(path, str(exc)) from None
    if "augmentation" in v:
        a = v["augmentation"]
        tgt = group_from_json(_get(a, "target", f"{path}.augmentation"), f"{path}.augmentation.target")
        eps = hom_from_json(_get(a, "matrix", f"{path}.augmentation"), f"{path}.augmentation.matrix", groups[0], tgt)
        return AugmentedCubicalObject(x, tgt, eps)
    return x


def simplicial_to_json(s: SimplicialObject) -> dict:
    D = s.dim_bound
    out = {"type": "simplicial", "dim_bound": str(D), "level": s.level,
           "groups": [group_to_json(g) for g in s.groups],
           "faces": {str(n): {str(i): matrix_to_json(s.faces[(n, i)].matrix) for i in range(n + 1)}
                     for n in range(1, D + 1)}}
    if s.degeneracies is not None:
        out["degeneracies"] = {str(n): {str(j): matrix_to_json(s.degeneracies[(n, j)].matrix) for j in range(n)}
                               for n in range(1, D + 1)}
    return out


def simplicial_from_json(v: Any, path: str = "$") -> SimplicialObject:
    D = _int(_get(v, "dim_bound", path), f"{path}.dim_bound")
    groups = _groups(_get(v, "groups", path), f"{path}.groups", D + 1)
    ft = _get(v, "faces", path)
    faces = {(n, i): hom_from_json(_entry(ft, f"{path}.faces", n, i), f"{path}.faces.{n}.{i}", groups[n], groups[n - 1])
             for n in range(1, D + 1) for i in range(n + 1)}
    degs = None
    if "degeneracies" in v:
        degs = {(n, j): hom_from_json(_entry(v["degeneracies"], f"{path}.degeneracies", n, j),
                                      f"{path}.degeneracies.{n}.{j}", groups[n - 1], groups[n])
                for n in range(1, D + 1) for j in range(n)}
    try:
        return SimplicialObject(groups, faces, degs, v.get("level", "presimplicial"))
    except ValueError as exc:
        raise InputError(path, str(exc)) from None


# ---------------------------------------------------------------------------
# finite cubical sets, groups and posets


def _label_to_json(label: Any) -> Any:
    if isinstance(label, tuple):
        return [_label_to_json(x) for x in label]
    return label


def _label_from_json(v: Any) -> Any:
    if isinstance(v, list):
        return tuple(_label_from_json(x) for x in v)
    return v


def _tables_to_json(tabs: dict) -> dict:
    out: dict = {}
    for key in sorted(tabs):
        cur = out
        for k in key[:-1]:
            cur = cur.setdefault(str(k), {})
        cur[str(key[-1])] = [str(t) for t in tabs[key]]
    return out


def _index_table(v: Any, path: str, size: int, bound: int) -> tuple:
    vals = [_int(t, f"{path}[{k}]") for k, t in enumerate(_list(v, path))]
    if len(vals) != size:
        raise InputError(path, f"expected {size} entries, got {len(vals)}")
    for k, t in enumerate(vals):
        if not 0 <= t < bound:
            raise InputError(f"{path}[{k}]", f"index {t} out of range 0..{bound - 1}")
    return tuple(vals)


def cset_to_json(x: FiniteCubicalSet) -> dict:
    out = {"type": "finite_cubical_set", "dim_bound": str(x.dim_bound),
           "cubes": [[_label_to_json(c) for c in cs] for cs in x.cubes],
           "faces": _tables_to_json(x.faces),
           "degeneracies": _tables_to_json(x.degeneracies),
           "connections": _tables_to_json(x.connections)}
    if x.basepoint is not None:
        out["basepoint"] = str(x.basepoint)
    return out


def cset_from_json(v: Any, path: str = "$") -> FiniteCubicalSet:
    D = _int(_get(v, "dim_bound", path), f"{path}.dim_bound")
    cubes_raw = _list(_get(v, "cubes", path), f"{path}.cubes")
    if len(cubes_raw) != D + 1:
        raise InputError(f"{path}.cubes", f"expected {D + 1} degrees, got {len(cubes_raw)}")
    cubes = tuple(tuple(_label_from_json(c) for c in _list(cs, f"{path}.cubes[{n}]")) for n, cs in enumerate(cubes_raw))
    cnt = [len(c) for c in cubes]
    ft, dt, ct = _get(v, "faces", path), v.get("degeneracies", {}), v.get("connections", {})
    faces = {(n, i, a): _index_table(_entry(ft, f"{path}.faces", n, i, a), f"{path}.faces.{n}.{i}.{a}", cnt[n], cnt[n - 1])
             for n in range(1, D + 1) for i in range(1, n + 1) for a in (0, 1)}
    degs = {(n, i): _index_table(_entry(dt, f"{path}.degeneracies", n, i), f"{path}.degeneracies.{n}.{i}",
                                 cnt[n - 1], cnt[n])
            for n in range(1, D + 1) for i in range(1, n + 1)}
    cons = {(n, i): _index_table(_entry(ct, f"{path}.connections", n, i), f"{path}.connections.{n}.{i}",
                                 cnt[n], cnt[n + 1])
            for n in range(1, D) for i in range(1, n + 1)}
    bp = v.get("basepoint")
    if bp is not None:
        bp = _int(bp, f"{path}.basepoint")
        if not 0 <= bp < max(cnt[0], 1):
            raise InputError(f"{path}.basepoint", "basepoint out of range")
    return FiniteCubicalSet(cubes, faces, degs, cons, bp)


def cgroup_to_json(g: FiniteCubicalGroup) -> dict:
    return {"type": "finite_cubical_group", "set": cset_to_json(g.cset),
            "mul": [[[str(c) for c in row] for row in m] for m in g.mul],
            "inv": [[str(c) for c in inv] for inv in g.inv],
            "unit": [str(u) for u in g.unit]}


def cgroup_from_json(v: Any, path: str = "$") -> FiniteCubicalGroup:
    cs = cset_from_json(_get(v, "set", path), f"{path}.set")
    cnt = [cs.count(n) for n in range(cs.dim_bound + 1)]
    mul_raw = _list(_get(v, "mul", path), f"{path}.mul")
    inv_raw = _list(_get(v, "inv", path), f"{path}.inv")
    unit_raw = _list(_get(v, "unit", path), f"{path}.unit")
    for name, raw in (("mul", mul_raw), ("inv", inv_raw), ("unit", unit_raw)):
        if len(raw) != len(cnt):
            raise InputError(f"{path}.{name}", f"expected {len(cnt)} degrees, got {len(raw)}")
    mul = tuple(tuple(_index_table(row, f"{path}.mul[{n}][{a}]", cnt[n], cnt[n])
                      for a, row in enumerate(_list(m, f"{path}.mul[{n}]")))
                for n, m in enumerate(mul_raw))
    for n, m in enumerate(mul):
        if len(m) != cnt[n]:
            raise InputError(f"{path}.mul[{n}]", f"expected {cnt[n]} rows, got {len(m)}")
    inv = tuple(_index_table(t, f"{path}.inv[{n}]", cnt[n], cnt[n]) for n, t in enumerate(inv_raw))
    unit = tuple(_int(u, f"{path}.unit[{n}]") for n, u in enumerate(unit_raw))
    for n, u in enumerate(unit):
        if not 0 <= u < cnt[n]:
            raise InputError(f"{path}.unit[{n}]", "unit index out of range")
    return FiniteCubicalGroup(cs, mul, inv, unit)


def poset_to_json(p: Poset) -> dict:
    pairs = [[_label_to_json(p.elements[a]), _label_to_json(p.elements[b])] for a, b in p.cover_pairs()]
    return {"type": "poset", "elements": [_label_to_json(e) for e in p.elements], "leq": pairs}


def poset_from_json(v: Any, path: str = "$") -> Poset:
    elems = [_label_from_json(e) for e in _list(_get(v, "elements", path), f"{path}.elements")]
    known = set(elems)
    pairs = []
    for k, pr in enumerate(_list(v.get("leq", []), f"{path}.leq")):
        pr = _list(pr, f"{path}.leq[{k}]")
        if len(pr) != 2:
            raise InputError(f"{path}.leq[{k}]", "expected a pair")
        a, b = _label_from_json(pr[0]), _label_from_json(pr[1])
        if a not in known or b not in known:
            raise InputError(f"{path}.leq[{k}]", "pair mentions an unknown element")
        pairs.append((a, b))
    try:
        return Poset(elems, pairs)
    except ValueError as exc:
        raise InputError(path, str(exc)) from None


# ---------------------------------------------------------------------------
# resolutions


def resolution_to_json(p: Resolution) -> dict:
    out = cubical_to_json(p.augmented())
    out["type"] = "resolution"
    out["kernels"] = [{"size": str(k.size), "group": group_to_json(k.group), "inclusion": matrix_to_json(k.inclusion.matrix)}
                      for k in p.kernels[1:]]
    out["covers"] = [matrix_to_json(e.matrix) for e in p.covers[1:]]
    return out


def resolution_from_json(v: Any, path: str = "$") -> Resolution:
    aug = cubical_from_json(v, path)
    if not isinstance(aug, AugmentedCubicalObject):
        raise InputError(path, "a resolution needs an augmentation")
    x = aug.object
    D = x.dim_bound
    kraw = _list(_get(v, "kernels", path), f"{path}.kernels")
    craw = _list(_get(v, "covers", path), f"{path}.covers")
    if len(kraw) != D or len(craw) != D:
        raise InputError(path, f"expected {D} kernels and covers")
    kernels, covers = [None], [None]
    for n in range(1, D + 1):
        kp = f"{path}.kernels[{n - 1}]"
        size = _int(_get(kraw[n - 1], "size", kp), f"{kp}.size")
        if size != n:
            raise InputError(f"{kp}.size", f"expected {n}")
        amb = x.groups[n - 1]
        kg = group_from_json(_get(kraw[n - 1], "group", kp), f"{kp}.group")
        incl = hom_from_json(_get(kraw[n - 1], "inclusion", kp), f"{kp}.inclusion", kg, direct_sum(*([amb] * (2 * n))))
        kernels.append(CubicalKernelResult(kg, incl, amb, n))
        covers.append(hom_from_json(craw[n - 1], f"{path}.covers[{n - 1}]", x.groups[n], kg))
    return Resolution(aug.target, list(x.groups), aug.augmentation, dict(x.faces), kernels, covers,
                      x.degeneracies, x.connections)


# ---------------------------------------------------------------------------
# dispatch


_DUMP = [
    (Resolution, resolution_to_json),
    (FiniteCubicalGroup, cgroup_to_json),
    (FiniteCubicalSet, cset_to_json),
    (Poset, poset_to_json),
    (SimplicialObject, simplicial_to_json),
    ((CubicalObject, AugmentedCubicalObject), cubical_to_json),
    ((ChainComplex, AugmentedChainComplex), chain_to_json),
]

_LOAD = {
    "group": lambda v, p: group_from_json(v, p),
    "hom": lambda v, p: hom_from_json(v, p),
    "chain_complex": chain_from_json,
    "cubical": cubical_from_json,
    "simplicial": simplicial_from_json,
    "finite_cubical_set": cset_from_json,
    "finite_cubical_group": cgroup_from_json,
    "poset": poset_from_json,
    "resolution": resolution_from_json,
}


def to_json(obj: Any) -> dict:
    """JSON-ready dictionary for any supported object, tagged with ``"type"``."""
    if isinstance(obj, FgAbGroup):
        return {"type": "group", **group_to_json(obj)}
    if isinstance(obj, Hom):
        return {"type": "hom", **hom_to_json(obj)}
    for cls, fn in _DUMP:
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _infer_type(v: dict) -> str:
    if "kernels" in v:
        return "resolution"
    if "mul" in v:
        return "finite_cubical_group"
    if "cubes" in v:
        return "finite_cubical_set"
    if "elements" in v:
        return "poset"
    if "differentials" in v:
        return "chain_complex"
    if "faces" in v:
        return "cubical"
    if "matrix" in v:
        return "hom"
    return "group"


def from_json(v: Any, path: str = "$") -> Any:
    if isinstance(v, str):
        return group_from_json(v, path)
    if not isinstance(v, dict):
        raise InputError(path, "expected an object")
    kind = v.get("type") or _infer_type(v)
    if kind not in _LOAD:
        raise InputError(f"{path}.type", f"unknown object type {kind!r}")
    return _LOAD[kind](v, path)


def dumps(obj: Any) -> str:
    """Deterministic single-line JSON (sorted keys)."""
    payload = obj if isinstance(obj, (dict, list)) else to_json(obj)
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, default=str, separators=(",", ":"))


def loads(text: str, source: str = "<input>") -> Any:
    try:
        v = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return from_json(v)


def load_path(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None
    return loads(text, path)
