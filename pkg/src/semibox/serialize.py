"""JSON converters for the file formats the CLI speaks.

Points are 1-based on the wire and 0-based in memory; undefined points of a
partial bijection serialize as null.  Table entries are 0-based element
indices.
"""
from __future__ import annotations

import json

from .amalgam import Amalgam
from .flower import FlowerInstance, Partition
from .semigroups import FiniteSemigroup
from .transformations import PartialBijection, Transformation


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def transformation_to_json(t: Transformation) -> dict:
    return {"degree": t.degree, "images": t.one_based()}


def transformation_from_json(data) -> Transformation:
    t = Transformation.from_one_based(data["images"])
    if t.degree != int(data["degree"]):
        raise ValueError("degree field disagrees with the image list")
    return t


def partial_bijection_to_json(p: PartialBijection) -> dict:
    return {"degree": p.degree, "images": p.one_based()}


def partial_bijection_from_json(data) -> PartialBijection:
    p = PartialBijection.from_one_based(data["images"])
    if p.degree != int(data["degree"]):
        raise ValueError("degree field disagrees with the image list")
    return p


def semigroup_to_json(s: FiniteSemigroup) -> dict:
    out = {"size": s.size, "table": [list(row) for row in s.table]}
    inv = s.inverse_map()
    if inv is not None:
        out["inverse"] = list(inv)
    return out


def semigroup_from_json(data) -> FiniteSemigroup:
    table = data["table"]
    if len(table) != int(data["size"]):
        raise ValueError("size field disagrees with the table")
    s = FiniteSemigroup(table, check=True)
    if "inverse" in data and data["inverse"] is not None:
        declared = tuple(int(x) for x in data["inverse"])
        computed = s.inverse_map()
        if computed is None or computed != declared:
            raise ValueError("declared inverse map fails the inverse axioms")
    return s


def amalgam_from_json(data) -> Amalgam:
    return Amalgam(
        base=semigroup_from_json(data["base"]),
        arm1=semigroup_from_json(data["arm1"]),
        arm2=semigroup_from_json(data["arm2"]),
        f1=tuple(int(x) for x in data["f1"]),
        f2=tuple(int(x) for x in data["f2"]),
        inverse_mode=bool(data.get("inverse_mode", False)),
    )


def subset_to_json(subset) -> list:
    return sorted(x + 1 for x in subset)


def subset_from_json(data) -> frozenset:
    return frozenset(int(x) - 1 for x in data)


def flower_instance_from_json(data) -> FlowerInstance:
    return FlowerInstance(
        m=int(data["m"]),
        t=int(data["t"]),
        a_sets=tuple(subset_from_json(a) for a in data["A"]),
        b_sets=tuple(subset_from_json(b) for b in data["B"]),
    )


def flower_instance_to_json(inst: FlowerInstance) -> dict:
    return {
        "m": inst.m,
        "t": inst.t,
        "A": [subset_to_json(a) for a in inst.a_sets],
        "B": [subset_to_json(b) for b in inst.b_sets],
    }


def partition_to_json(p: Partition) -> dict:
    return {
        "m": p.m,
        "parts": p.t,
        "blocks": [[x + 1 for x in block] for block in p.blocks()],
        "label": p.label(),
    }


def partition_from_json(data) -> Partition:
    blocks = [[int(x) - 1 for x in block] for block in data["blocks"]]
    return Partition.from_blocks(blocks, int(data["m"]))
