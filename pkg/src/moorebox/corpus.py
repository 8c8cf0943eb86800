"""Named test objects shared by the suite, the command line and the tests."""

from __future__ import annotations

from .cubical import Poset, all_posets, constant_cubical, linearize, poset_cubical_set
from .derive import full_resolution
from .exactalg import FgAbGroup, direct_sum, parse_group
from .homotopy import FiniteCubicalGroup, symmetric_group_3

CONSTANT_GROUPS = ("Z", "Z/2", "Z/4", "Z^2 + Z/6")
RESOLVED_GROUPS = ("Z", "Z/4", "Z/2 + Z/3")


def _presented(text: str) -> FgAbGroup:
    """``"Z/2 + Z/3"`` keeps both generators rather than collapsing to ``Z/6``."""
    gs = [parse_group(t) for t in text.split("+")]
    return direct_sum(*gs)


def constant_objects(dim_bound: int = 3) -> list:
    return [(f"constant {g}", constant_cubical(parse_group(g), dim_bound)) for g in CONSTANT_GROUPS]


def poset_name(p) -> str:
    return f"poset {len(p.elements)}:{sorted(p.cover_pairs())}"


def poset_objects(max_size: int = 3, dim_bound: int = 3, coeff: str = "Z") -> list:
    c = parse_group(coeff)
    return [(poset_name(p), linearize(poset_cubical_set(p, dim_bound), c)) for p in all_posets(max_size)]


def resolutions(dim_bound: int = 3) -> list:
    return [(f"resolution {g}", full_resolution(_presented(g), dim_bound)) for g in RESOLVED_GROUPS]


def cc_objects(dim_bound: int = 3) -> list:
    return constant_objects(dim_bound) + poset_objects(3, dim_bound)


def pcpc_objects(dim_bound: int = 3) -> list:
    return cc_objects(dim_bound) + [(name, p.cubical()) for name, p in resolutions(dim_bound)]


def finite_groups() -> list:
    """Finite cubical groups with connections, kept small enough for exhaustive tables."""
    return [
        ("constant Z/2, D=3", FiniteCubicalGroup.from_cubical_object(constant_cubical(parse_group("Z/2"), 3))),
        ("constant Z/2 + Z/2, D=2", FiniteCubicalGroup.from_cubical_object(constant_cubical(parse_group("Z/2 + Z/2"), 2))),
        ("constant S3, D=3", symmetric_group_3(3)),
        ("chain 2 over Z/2, D=2", FiniteCubicalGroup.from_cubical_object(
            linearize(poset_cubical_set(Poset.chain(2), 2), parse_group("Z/2")))),
        ("antichain 2 over Z/3, D=2", FiniteCubicalGroup.from_cubical_object(
            linearize(poset_cubical_set(Poset.antichain(2), 2), parse_group("Z/3")))),
    ]
