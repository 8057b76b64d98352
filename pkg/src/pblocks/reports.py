"""Canonical JSON documents for tables, blocks, chains, and check bundles.

Every document is emitted through :func:`canonical_json`, which fixes key
order and layout so that re-running a job yields byte-identical output.
Reports deliberately carry no timestamps; the canonical arithmetic choices
(the splitting prime, its primitive root, the reduction field modulus) are
embedded instead so runs are reproducible.
"""

from __future__ import annotations

import json

from .blockfield import block_field
from .blocks import Block, heights, p_blocks
from .chains import PairSet
from .chartable import CharTable, character_table
from .errors import InputError
from .groups import Group
from .perms import format_cycles

SCHEMA_VERSION = "pblocks/1"


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def group_document(G: Group) -> dict:
    return {
        "degree": G.degree,
        "order": G.order,
        "generators": [format_cycles(g) for g in G.generators],
    }


def table_document(table: CharTable) -> dict:
    """Exact table serialization: classes, degrees, integer value vectors."""
    return {
        "schema": SCHEMA_VERSION + "/table",
        "group": group_document(table.group),
        "conductor": table.conductor,
        "classes": [
            {
                "rep": format_cycles(c.rep),
                "size": c.size,
                "centralizer_order": c.centralizer_order,
            }
            for c in table.classes
        ],
        "degrees": list(table.degrees),
        "values": [
            [[int(x) for x in table.values[i, k]] for k in range(table.r)]
            for i in range(table.r)
        ],
        "lift": {
            "prime": table.lift_meta["prime"],
            "primitive_root": table.lift_meta["primitive_root"],
            "unit_root_power": table.lift_meta["root_power"],
        },
    }


def table_from_document(doc: dict) -> dict:
    """Parse a table document back into plain exact data (round-trip safe)."""
    if doc.get("schema") != SCHEMA_VERSION + "/table":
        raise InputError("not a table document")
    return {
        "conductor": int(doc["conductor"]),
        "degrees": [int(d) for d in doc["degrees"]],
        "values": [
            [[int(x) for x in cell] for cell in row] for row in doc["values"]
        ],
        "classes": [
            (c["rep"], int(c["size"]), int(c["centralizer_order"]))
            for c in doc["classes"]
        ],
        "group": doc["group"],
        "lift": doc["lift"],
    }


def block_document(table: CharTable, p: int) -> dict:
    blocks = p_blocks(table, p)
    field = block_field(p, table.conductor)
    return {
        "schema": SCHEMA_VERSION + "/blocks",
        "group": group_document(table.group),
        "p": p,
        "reduction_field": field.describe(),
        "blocks": [_one_block(b) for b in blocks],
    }


def _one_block(b: Block) -> dict:
    return {
        "index": b.index,
        "members": list(b.members),
        "degrees": [b.table.degrees[i] for i in b.members],
        "defect": b.defect,
        "defect_group_order": b.defect_group.order,
        "defect_group_generators": [
            format_cycles(g) for g in b.defect_group.generators
        ],
        "principal": b.is_principal,
        "heights": [t.height for t in heights(b)],
    }


def chain_document(S: PairSet) -> dict:
    """Chain report: every orbit with per-defect character counts by induced block."""
    from .chartable import char_ref
    from .blocks import block_of, brauer_induce

    orbits = []
    for o in S.orbits:
        stab_group = o.stabilizer.as_group()
        table = character_table(stab_group)
        per_defect: dict = {}
        for i in range(table.r):
            ref = char_ref(table, i, S.p)
            hb = block_of(table, S.p, i)
            target = brauer_induce(hb, S.group)
            key = str(ref.defect)
            bucket = per_defect.setdefault(key, {})
            label = "undefined" if target is None else str(target.index)
            bucket[label] = bucket.get(label, 0) + 1
        orbits.append(
            {
                "terms": [t.order for t in o.chain.terms],
                "term_generators": [
                    [format_cycles(g) for g in t.generators] for t in o.chain.terms
                ],
                "length": o.chain.length,
                "sign": "+" if o.sign > 0 else "-",
                "stabilizer_order": o.stabilizer.order,
                "orbit_size": o.orbit_size,
                "characters_by_defect": per_defect,
            }
        )
    doc = {
        "schema": SCHEMA_VERSION + "/chains",
        "group": group_document(S.group),
        "p": S.p,
        "start_order": S.start.order,
        "orbit_count": len(S.orbits),
        "orbits": orbits,
    }
    if S.block is not None:
        doc["block"] = S.block.index
        doc["d"] = S.d
        doc["pair_counts"] = {"plus": len(S.plus), "minus": len(S.minus)}
    return doc


def environment_document(G: Group, p: int | None) -> dict:
    env = {
        "limits": {
            "max_order": G.limits.max_order,
            "max_p_subgroup_classes": G.limits.max_p_subgroup_classes,
            "max_chain_orbits": G.limits.max_chain_orbits,
        }
    }
    table = character_table(G)
    env["table_lift"] = {
        "prime": table.lift_meta["prime"],
        "primitive_root": table.lift_meta["primitive_root"],
        "unit_root_power": table.lift_meta["root_power"],
    }
    if p is not None:
        env["reduction_field"] = block_field(p, table.conductor).describe()
    return env
