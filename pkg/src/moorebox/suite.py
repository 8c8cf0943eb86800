"""The acceptance battery: one report per criterion, deterministic for a fixed seed."""

from __future__ import annotations

import random

from . import corpus
from .chain import homologies
from .cubical import validate_cubical
from .derive import (AdditiveFunctor, compare_with_classical, derived_functors, full_resolution,
                     homotopic_lifts_report, resolution_em_report)
from .exactalg import FgAbGroup, format_group, parse_group
from .homotopy import kan_check, pi, pi_report, verify_pi_vs_moore
from .norm import moore_inclusion_equivalence, normalize, splitting_check, validate_moore_equivalence
from .report import Report


def random_group(rng: random.Random, max_factor: int = 12, max_rank: int = 2, max_torsion: int = 2) -> FgAbGroup:
    tors = [rng.randint(2, max_factor) for _ in range(rng.randint(0, max_torsion))]
    return FgAbGroup.from_invariants(rng.randint(0, max_rank), tors)


def tor_coincidence(seed: int, pairs: int = 20, dim_bound: int = 3) -> Report:
    rep = Report("tor_coincidence", details={"seed": seed, "cases": []})
    a, b = parse_group("Z/4"), parse_group("Z/6")
    main = compare_with_classical(b, a, dim_bound)
    rep.absorb(main, case="Z/4, Z/6")
    got = [d["cubical"] for d in main.details["degrees"]]
    rep.expect(got == ["Z/2", "Z/2", "0"], case="Z/4, Z/6", identity="expected Z/2, Z/2, 0", got=got)
    rep.details["cases"].append({"a": "Z/4", "b": "Z/6", "degrees": got})
    rng = random.Random(seed)
    for _ in range(pairs):
        a, b = random_group(rng), random_group(rng)
        r = compare_with_classical(b, a, dim_bound)
        rep.absorb(r, case=f"{a}, {b}")
        rep.details["cases"].append({"a": str(a), "b": str(b), "degrees": [d["cubical"] for d in r.details["degrees"]]})
    return rep


def resolution_structure(dim_bound: int = 3) -> Report:
    rep = Report("resolution_structure", details={"resolutions": []})
    for name, p in corpus.resolutions(dim_bound):
        r = validate_cubical(p.cubical(), "pcpc")
        rep.absorb(r, object=name)
        rep.details["resolutions"].append({"name": name, "ranks": [g.ngens for g in p.groups],
                                           "violations": len(r.failures)})
    return rep


def comparison(seed: int, dim_bound: int = 3) -> Report:
    rep = homotopic_lifts_report(parse_group("Z/4"), parse_group("Z/6"), dim_bound, seed=seed + 1)
    rep.expect(rep.details["distinct_lifts"], identity="the two lifts differ")
    return rep


def moore_theorem(dim_bound: int = 3) -> Report:
    rep = Report("moore_equivalence", details={"objects": []})
    for name, x in corpus.pcpc_objects(dim_bound):
        r = validate_moore_equivalence(moore_inclusion_equivalence(x))
        rep.absorb(r, object=name)
        rep.details["objects"].append({"name": name, "homology": r.details["homology_M"]})
    return rep


def splitting(dim_bound: int = 3) -> Report:
    rep = Report("splitting", details={"objects": []})
    for name, x in corpus.cc_objects(dim_bound):
        rep.absorb(splitting_check(x, 3), object=name)
        rep.details["objects"].append(name)
    return rep


def dichotomy(dim_bound: int = 3) -> Report:
    t = AdditiveFunctor.tensor(parse_group("Z/6"))
    a = parse_group("Z")
    p = full_resolution(a, dim_bound)
    out = {v: [str(h) for h in derived_functors(t, a, dim_bound, v, p)] for v in ("N", "M", "C")}
    rep = Report("dichotomy", details=out)
    top = ["Z/6"] + ["0"] * (dim_bound - 1)
    rep.expect(out["C"] == ["Z/6"] * dim_bound, variant="C", got=out["C"])
    rep.expect(out["N"] == top, variant="N", got=out["N"])
    rep.expect(out["M"] == top, variant="M", got=out["M"])
    return rep


def homotopy_groups() -> Report:
    name, g = corpus.finite_groups()[0]
    rep = Report("homotopy_groups", details={"object": name, "pi": []})
    moore = [str(h) for h in homologies(normalize(g.source, "M").complex)]
    for n in range(g.dim_bound):
        res = pi(g, n)
        rep.absorb(pi_report(g, n), degree=n)
        rep.absorb(verify_pi_vs_moore(g, n), degree=n)
        got = format_group(res.canonical_form())
        rep.expect(got == moore[n], degree=n, identity="π_n = H_n(M)", got=got)
        rep.details["pi"].append(got)
    rep.expect(rep.details["pi"] == ["Z/2", "0", "0"], identity="expected Z/2, 0, 0", got=rep.details["pi"])
    return rep


def kan_instances(up_to: int = 2) -> Report:
    rep = Report("kan", details={"objects": []})
    for name, g in corpus.finite_groups():
        r = kan_check(g.cset, min(up_to, g.dim_bound))
        rep.absorb(r, object=name)
        rep.details["objects"].append({"name": name, "boxes": r.details.get("boxes")})
    return rep


def em_exactness(dim_bound: int = 3) -> Report:
    rep = Report("em_exactness", details={"resolutions": []})
    for name, p in corpus.resolutions(dim_bound):
        rep.absorb(resolution_em_report(p), object=name)
        rep.details["resolutions"].append(name)
    return rep


CRITERIA = (
    (1, "tor coincidence", lambda seed: tor_coincidence(seed)),
    (2, "resolution structure", lambda seed: resolution_structure()),
    (3, "comparison theorem", lambda seed: comparison(seed)),
    (4, "cubical Moore theorem", lambda seed: moore_theorem()),
    (5, "splitting", lambda seed: splitting()),
    (6, "derived functor dichotomy", lambda seed: dichotomy()),
    (7, "homotopy groups", lambda seed: homotopy_groups()),
    (8, "Kan instances", lambda seed: kan_instances()),
    (9, "resolution exactness", lambda seed: em_exactness()),
)


def run_suite(seed: int = 0, only=None):
    """Yield ``(number, name, report)`` for each criterion, in order."""
    for num, name, fn in CRITERIA:
        if only is None or num in only:
            yield num, name, fn(seed)

