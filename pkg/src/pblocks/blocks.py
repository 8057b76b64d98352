"""p-blocks: the partition of Irr(G), defects, defect groups, and Brauer maps.

Two irreducible characters lie in the same p-block iff their central
characters agree after reduction modulo a fixed prime ideal over p; the
reduction is the canonical one provided by :mod:`pblocks.blockfield`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .blockfield import BlockField, block_field
from .chartable import CharRef, CharTable, char_ref, character_table
from .cyclotomic import Cyclo
from .errors import InputError, InternalError
from .groups import Group, SubgroupHandle

__all__ = [
    "Block",
    "HeightTag",
    "ReducedCentralChar",
    "central_character",
    "p_blocks",
    "block_of",
    "defect_group",
    "heights",
    "irr0",
    "irr_defect",
    "brauer_induce",
    "brauer_correspondent",
    "is_central_defect",
]


@dataclass(frozen=True)
class ReducedCentralChar:
    """omega mod a prime ideal over p: one field element per conjugacy class."""

    p: int
    field: BlockField
    values: tuple

    def __post_init__(self):
        if self.values[0] != self.field.one:
            raise InternalError("reduced central character is not 1 at the identity")


@dataclass
class Block:
    """One p-block of a character table."""

    table: CharTable
    p: int
    index: int
    members: tuple  # row indices
    defect: int
    defect_group: SubgroupHandle
    lam: ReducedCentralChar
    is_principal: bool

    def __eq__(self, other):
        return (
            isinstance(other, Block)
            and self.table is other.table
            and self.p == other.p
            and self.index == other.index
        )

    def __hash__(self):
        return hash((id(self.table), self.p, self.index))

    def __repr__(self) -> str:
        degs = [self.table.degrees[i] for i in self.members]
        return (f"Block(p={self.p}, index={self.index}, degrees={degs}, "
                f"defect={self.defect})")

    @property
    def group(self) -> Group:
        return self.table.group

    def char_refs(self) -> tuple[CharRef, ...]:
        return tuple(char_ref(self.table, i, self.p) for i in self.members)


@dataclass(frozen=True)
class HeightTag:
    char: CharRef
    height: int


def central_character(table: CharTable, index: int) -> tuple:
    """Exact omega values: omega(K) = |K| chi(g_K) / chi(1), per class."""
    vec = omega_int_vectors(table, index)
    return tuple(
        Cyclo(table.conductor, tuple(Fraction(int(c)) for c in vec[k]))
        for k in range(table.r)
    )


def omega_int_vectors(table: CharTable, index: int) -> np.ndarray:
    """omega values as integer coefficient vectors [r, phi].

    Central character values are algebraic integers; if the division by the
    degree is not exact the table is corrupt.
    """
    key = ("omega", index)
    if key in table._cache:
        return table._cache[key]
    deg = table.degrees[index]
    sizes = np.array([c.size for c in table.classes], dtype=np.int64)
    scaled = table.values[index] * sizes[:, None]
    if np.any(scaled % deg):
        raise InternalError("central character is not an algebraic integer")
    out = scaled // deg
    table._cache[key] = out
    return out


def reduced_central_character(table: CharTable, index: int, p: int,
                              field: BlockField | None = None) -> ReducedCentralChar:
    field = field or block_field(p, table.conductor)
    omega = omega_int_vectors(table, index)
    values = tuple(
        field.reduce_int_vector(omega[k], table.conductor) for k in range(table.r)
    )
    return ReducedCentralChar(p, field, values)


def p_blocks(table: CharTable, p: int) -> tuple[Block, ...]:
    """The p-block partition, principal block first; cached on the table."""
    key = ("blocks", p)
    if key in table._cache:
        return table._cache[key]
    field = block_field(p, table.conductor)
    lam_of: dict[tuple, list[int]] = {}
    lams = {}
    for i in range(table.r):
        rc = reduced_central_character(table, i, p, field)
        lams[i] = rc
        lam_of.setdefault(rc.values, []).append(i)

    trivial = table.trivial_index()
    groups = sorted(lam_of.values(), key=lambda ms: (trivial not in ms, min(ms)))
    blocks = []
    for bi, members in enumerate(groups):
        members = tuple(sorted(members))
        d = max(char_ref(table, i, p).defect for i in members)
        dg = _defect_group(table, p, members, lams[members[0]], d)
        blocks.append(
            Block(
                table=table,
                p=p,
                index=bi,
                members=members,
                defect=d,
                defect_group=dg,
                lam=lams[members[0]],
                is_principal=trivial in members,
            )
        )
    if sum(len(b.members) for b in blocks) != table.r:
        raise InternalError("block partition does not cover the table")
    if sum(1 for b in blocks if b.is_principal) != 1:
        raise InternalError("principal block is not unique")
    table._cache[key] = tuple(blocks)
    return table._cache[key]


def _defect_group(table: CharTable, p: int, members, lam: ReducedCentralChar,
                  d: int) -> SubgroupHandle:
    """Sylow p-subgroup of the centralizer of a defect-class element.

    A defect class is a class with lam(K) != 0 whose size has maximal
    p-part; ties are broken by canonical class order.
    """
    G = table.group
    best_nu = -1
    chosen = None
    for k, c in enumerate(table.classes):
        if lam.values[k] == lam.field.zero:
            continue
        nu = _nu(c.size, p)
        if nu > best_nu:
            best_nu = nu
            chosen = k
    if chosen is None:
        raise InternalError("block has no class with nonzero central character")
    cent = G.handle(elements=G.centralizer_set(table.classes[chosen].rep))
    syl = cent.as_group().sylow(p)
    dg = G.handle(elements=syl.elements)
    if dg.order != p**d:
        raise InternalError(
            "defect group from the defect class disagrees with the member defects"
        )
    return dg


def block_of(table: CharTable, p: int, index: int) -> Block:
    for b in p_blocks(table, p):
        if index in b.members:
            return b
    raise InternalError("character belongs to no block")


def defect_group(table: CharTable, block: Block) -> SubgroupHandle:
    if block.table is not table:
        raise InputError("block does not belong to this table")
    return block.defect_group


def heights(block: Block) -> tuple[HeightTag, ...]:
    """Height tags for all members: ht = d(B) - d(chi) >= 0."""
    out = []
    for ref in block.char_refs():
        h = block.defect - ref.defect
        if h < 0:
            raise InternalError("negative height; block defect is wrong")
        out.append(HeightTag(ref, h))
    return tuple(out)


def irr0(block: Block) -> tuple[int, ...]:
    """Members of height zero (equivalently of maximal defect in the block)."""
    return tuple(t.char.index for t in heights(block) if t.height == 0)


def irr_defect(block: Block, d: int) -> tuple[int, ...]:
    """Members of defect exactly d."""
    return tuple(i for i in block.members
                 if char_ref(block.table, i, block.p).defect == d)


def is_central_defect(block: Block) -> bool:
    center = block.group.center()
    return block.defect_group.elements <= center.elements


def brauer_induce(b: Block, G: Group) -> Block | None:
    """b^G: the block of G whose central character matches the induced one.

    Returns None when the induced class function is the central character
    of no block of G (induction undefined).
    """
    H = b.group
    if not H.element_set() <= G.element_set():
        raise InputError("can only induce from a subgroup")
    Gt = character_table(G)
    if Gt.conductor % b.table.conductor:
        raise InternalError("subgroup exponent does not divide the group exponent")
    field = block_field(b.p, Gt.conductor)
    lam_h = reduced_central_character(b.table, b.members[0], b.p, field)
    g_class = G.class_index()
    acc = [field.zero] * Gt.r
    for l, hc in enumerate(b.table.classes):
        k = g_class[hc.rep]
        acc[k] = field.add(acc[k], lam_h.values[l])
    acc = tuple(acc)
    for B in p_blocks(Gt, b.p):
        if B.lam.values == acc:
            return B
    return None


def brauer_correspondent(B: Block, D: SubgroupHandle | None = None) -> Block:
    """The unique block b of N_G(D) with b^G = B and defect group D.

    Uniqueness is a theorem (first main theorem); zero or several candidates
    signal an arithmetic bug and raise.
    """
    G = B.group
    D = D or B.defect_group
    if D.canonical_key != B.defect_group.canonical_key:
        raise InputError("D is not a defect group of this block")
    N = G.normalizer(D).as_group()
    Nt = character_table(N)
    d_elements = D.elements
    candidates = []
    for b in p_blocks(Nt, B.p):
        if b.defect != B.defect:
            continue
        if b.defect_group.elements != d_elements:
            continue
        if brauer_induce(b, G) == B:
            candidates.append(b)
    if len(candidates) != 1:
        raise InternalError(
            f"Brauer correspondence found {len(candidates)} candidates, expected 1"
        )
    return candidates[0]


def _nu(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
