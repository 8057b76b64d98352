"""Normal p-chains up to conjugacy and the signed chain/character pair sets.

A normal p-chain is a strictly increasing sequence of p-subgroups starting
at a designated normal start term, with every term normal in the final term.
Equivalently (and this is what the enumeration uses) every extension term
must normalize all earlier terms, i.e. lie in the chain stabilizer.

Chains are enumerated up to G-conjugacy by depth-first extension: the
extensions of a fixed representative chain sigma, up to conjugacy, are the
G_sigma-classes of p-subgroups of G_sigma strictly containing the final
term.  Distinct nodes of the search tree are never conjugate, so the tree
is an irredundant transversal by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blocks import Block, block_of, brauer_induce, p_blocks
from .chartable import CharTable, character_table, char_ref
from .errors import InputError, InternalError
from .groups import Group, SubgroupHandle
from .perms import conj

__all__ = [
    "PChain",
    "ChainOrbit",
    "PairOrbit",
    "PairSet",
    "enumerate_chain_orbits",
    "pair_set",
    "delete_first_term",
    "append_final_term",
    "second_term_partition",
    "SecondTermSplit",
    "second_term_blocks",
    "local_second_term_sets",
    "intermediate_subgroup_classes",
    "chain_conjugate_into",
]


@dataclass(frozen=True)
class PChain:
    """A normal p-chain; terms are subgroup handles of a fixed ambient group."""

    terms: tuple

    def __post_init__(self):
        for a, b in zip(self.terms, self.terms[1:]):
            if not a.elements < b.elements:
                raise InputError("chain terms must be strictly increasing")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    @property
    def final(self) -> SubgroupHandle:
        return self.terms[-1]

    def __repr__(self) -> str:
        return "PChain(" + " < ".join(str(t.order) for t in self.terms) + ")"


@dataclass(frozen=True)
class ChainOrbit:
    """A G-orbit of normal p-chains: canonical representative plus stabilizer."""

    index: int
    chain: PChain
    stabilizer: SubgroupHandle
    orbit_size: int
    sign: int
    parent: int | None  # orbit of the chain with the final term deleted

    def __repr__(self) -> str:
        return (f"ChainOrbit({self.chain!r}, sign={'+' if self.sign > 0 else '-'}, "
                f"stab={self.stabilizer.order})")


def enumerate_chain_orbits(G: Group, Z: SubgroupHandle, p: int) -> tuple[ChainOrbit, ...]:
    """Transversal of the G-orbits of normal p-chains starting at Z.

    Output order is canonical: by length, then term orders, then the
    conjugacy-canonical keys of the terms.
    """
    if not Z.is_p_group(p):
        raise InputError("chain start must be a p-group")
    if not G.is_normal(Z):
        raise InputError("chain start must be normal in the ambient group")

    nodes = []  # (terms, stabilizer handle, parent node index)

    def visit(terms: tuple, stab: SubgroupHandle, parent: int | None):
        my_index = len(nodes)
        nodes.append((terms, stab, parent))
        if len(nodes) > G.limits.max_chain_orbits:
            raise InputError("chain orbit ceiling exceeded")
        H = stab.as_group()
        final = terms[-1]
        candidates = []
        for cls in H.p_subgroup_classes(p):
            if cls.order <= final.order:
                continue
            for s in cls.class_orbit:
                if final.elements < s:
                    candidates.append(s)
        for s in _fuse_under_group(H, candidates):
            e_handle = G.handle(elements=s)
            n_in_stab = H.normalizer(H.handle(elements=s))
            visit(terms + (e_handle,), G.handle(elements=n_in_stab.elements), my_index)

    visit((Z,), G.full_subgroup(), None)

    def sort_key(i):
        terms = nodes[i][0]
        return (
            len(terms),
            tuple(t.order for t in terms),
            tuple(t.canonical_key for t in terms),
        )

    order = sorted(range(len(nodes)), key=sort_key)
    position = {old: new for new, old in enumerate(order)}
    orbits = []
    for new, old in enumerate(order):
        terms, stab, parent = nodes[old]
        if G.order % stab.order:
            raise InternalError("chain stabilizer order does not divide |G|")
        chain = PChain(terms)
        orbits.append(
            ChainOrbit(
                index=new,
                chain=chain,
                stabilizer=stab,
                orbit_size=G.order // stab.order,
                sign=chain.sign,
                parent=None if parent is None else position[parent],
            )
        )
    return tuple(orbits)


def _fuse_under_group(H: Group, candidate_sets) -> list:
    """Canonical orbit representatives of subgroup sets under H-conjugation.

    The candidate family must be closed under H (true for extensions of a
    chain by construction); a conjugate escaping the family is a bug.
    """
    pending = set(candidate_sets)
    reps = []
    universe = set(candidate_sets)
    while pending:
        s = min(pending, key=lambda fs: tuple(sorted(fs)))
        orbit = {s}
        queue = [s]
        while queue:
            t = queue.pop()
            for g in H.generators:
                u = frozenset(conj(x, g) for x in t)
                if u not in orbit:
                    if u not in universe:
                        raise InternalError("conjugate left the extension family")
                    orbit.add(u)
                    queue.append(u)
        reps.append(s)
        pending -= orbit
    return sorted(reps, key=lambda fs: (len(fs), tuple(sorted(fs))))


# -- chain surgery ----------------------------------------------------------------


def delete_first_term(chain: PChain) -> PChain:
    """Drop the start term; the result starts at the old second term."""
    if chain.length < 1:
        raise InputError("cannot delete the only term of a chain")
    return PChain(chain.terms[1:])


def prepend_first_term(chain: PChain, U: SubgroupHandle) -> PChain:
    """Inverse of delete_first_term."""
    return PChain((U,) + chain.terms)


def append_final_term(chain: PChain, D: SubgroupHandle) -> PChain:
    """Extend by a new final term; every old term must be normal in it."""
    final = chain.final
    if not final.elements < D.elements:
        raise InputError("new final term must strictly contain the old one")
    for t in chain.terms:
        for g in D.generators:
            if any(conj(x, g) not in t.elements for x in t.generators):
                raise InputError("new final term does not normalize every chain term")
    return PChain(chain.terms + (D,))


def delete_final_term(chain: PChain) -> PChain:
    if chain.length < 1:
        raise InputError("cannot delete the only term of a chain")
    return PChain(chain.terms[:-1])


def intermediate_subgroup_classes(G: Group, U: SubgroupHandle, D: SubgroupHandle,
                                  p: int) -> tuple[SubgroupHandle, ...]:
    """G-classes of p-subgroups Q with U < Q^g < D for some g."""
    if not (U.is_p_group(p) and D.is_p_group(p)):
        raise InputError("bounds must be p-subgroups")
    if not U.elements < D.elements:
        raise InputError("need U strictly below D")
    if not G.is_normal(U):
        raise InputError("lower bound must be normal in the ambient group")
    out = []
    for cls in G.p_subgroup_classes(p):
        if not U.order < cls.order < D.order:
            continue
        if any(U.elements < s < D.elements for s in cls.class_orbit):
            out.append(cls)
    return tuple(out)


def chain_conjugate_into(G: Group, chain: PChain, D: SubgroupHandle):
    """Some g with every term of chain^g inside D, or None."""
    for g in G.elements():
        if all(
            frozenset(conj(x, g) for x in t.elements) <= D.elements
            for t in chain.terms
        ):
            return g
    return None


# -- signed pair sets ---------------------------------------------------------------


@dataclass(frozen=True)
class PairOrbit:
    """A G-orbit of (chain, character) pairs.

    Orbits of pairs over a fixed representative chain correspond one to one
    with characters of the stabilizer, because inner conjugation fixes each
    character of the stabilizer.
    """

    chain_index: int
    char_index: int
    defect: int
    induced_block: int | None  # block index in the ambient group, if defined

    def key(self):
        return (self.chain_index, self.char_index)


@dataclass(frozen=True)
class PairSet:
    """The signed pair families for (block, start, defect)."""

    group: Group
    p: int
    block: Block | None  # None = block-free mode
    start: SubgroupHandle
    d: int
    orbits: tuple  # tuple[ChainOrbit]
    plus: tuple  # tuple[PairOrbit]
    minus: tuple

    @property
    def counts(self) -> tuple[int, int]:
        return (len(self.plus), len(self.minus))

    def stabilizer_table(self, chain_index: int) -> CharTable:
        return character_table(self.orbits[chain_index].stabilizer.as_group())


def chain_orbits_cached(G: Group, Z: SubgroupHandle, p: int) -> tuple[ChainOrbit, ...]:
    key = ("chains", Z.elements, p)
    if key not in G._cache:
        G._cache[key] = enumerate_chain_orbits(G, Z, p)
    return G._cache[key]


def _induced_block_map(G: Group, stab: SubgroupHandle, p: int) -> dict:
    """Map block-index-of-stabilizer -> Block of G (or None), cached on G."""
    key = ("induced", stab.elements, p)
    if key not in G._cache:
        table = character_table(stab.as_group())
        out = {}
        for b in p_blocks(table, p):
            out[b.index] = brauer_induce(b, G)
        G._cache[key] = out
    return G._cache[key]


def pair_set(G: Group, block, Z: SubgroupHandle, d: int, p: int | None = None) -> PairSet:
    """Build the signed pair set for a block (or "all" for block-free mode).

    Pairs are (chain orbit, character of the chain stabilizer) with the
    character's defect computed inside the stabilizer equal to d, and, in
    blockwise mode, inducing to the given block.
    """
    if isinstance(block, Block):
        p = block.p
        if block.table.group is not G:
            raise InputError("block does not belong to this group")
    elif block == "all":
        if p is None:
            raise InputError("block-free mode needs an explicit prime")
        block = None
    elif block is not None:
        raise InputError("block must be a Block, 'all', or None")
    if d < 0:
        raise InputError("defect must be non-negative")

    orbits = chain_orbits_cached(G, Z, p)
    plus = []
    minus = []
    for orb in orbits:
        table = character_table(orb.stabilizer.as_group())
        induced = _induced_block_map(G, orb.stabilizer, p)
        for i in range(table.r):
            ref = char_ref(table, i, p)
            if ref.defect != d:
                continue
            hb = block_of(table, p, i)
            target = induced[hb.index]
            if block is not None and target != block:
                continue
            pair = PairOrbit(
                chain_index=orb.index,
                char_index=i,
                defect=d,
                induced_block=None if target is None else target.index,
            )
            (plus if orb.sign > 0 else minus).append(pair)
    return PairSet(
        group=G,
        p=p,
        block=block,
        start=Z,
        d=d,
        orbits=orbits,
        plus=tuple(plus),
        minus=tuple(minus),
    )


@dataclass(frozen=True)
class SecondTermSplit:
    """Pair orbits split by whether the chain's second term is conjugate to Q."""

    q: SubgroupHandle
    matched_plus: tuple
    matched_minus: tuple
    rest_plus: tuple
    rest_minus: tuple


def second_term_partition(S: PairSet, Q: SubgroupHandle) -> SecondTermSplit:
    """Split S by the G-class of the second chain term."""
    if Q.elements <= S.start.elements:
        raise InputError("Q must strictly contain the chain start")
    if not S.start.elements < Q.elements:
        raise InputError("Q must contain the chain start")
    qkey = Q.canonical_key
    matched_p, matched_m, rest_p, rest_m = [], [], [], []
    for pair in S.plus:
        chain = S.orbits[pair.chain_index].chain
        hit = chain.length >= 1 and chain.terms[1].canonical_key == qkey
        (matched_p if hit else rest_p).append(pair)
    for pair in S.minus:
        chain = S.orbits[pair.chain_index].chain
        hit = chain.length >= 1 and chain.terms[1].canonical_key == qkey
        (matched_m if hit else rest_m).append(pair)
    return SecondTermSplit(Q, tuple(matched_p), tuple(matched_m),
                           tuple(rest_p), tuple(rest_m))


def second_term_blocks(G: Group, B: Block, Q: SubgroupHandle, d: int) -> tuple:
    """Blocks b of N_G(Q) with b^G = B and d(b) = d."""
    N = G.normalizer(Q).as_group()
    table = character_table(N)
    return tuple(
        b for b in p_blocks(table, B.p)
        if b.defect == d and brauer_induce(b, G) == B
    )


def local_second_term_sets(G: Group, B: Block, Q: SubgroupHandle, d: int) -> tuple:
    """The pair sets of N_G(Q) over the blocks inducing to B, start Q.

    Together with :func:`second_term_partition` this realizes the sign
    flipping transport: deleting the start term from a chain with second
    term Q yields a chain of N_G(Q) starting at Q, and the pair-orbit counts
    transport with the sign reversed.
    """
    N = G.normalizer(Q).as_group()
    nq = N.handle(elements=Q.elements)
    return tuple(
        pair_set(N, b, nq, d) for b in second_term_blocks(G, B, Q, d)
    )


def _unused_field():  # pragma: no cover
    field
