"""Chain enumeration against brute force, plus the pair-set machinery.

The oracle enumerates every normal p-chain of the group (not orbits) and
checks that orbit sizes account for all of them, sign by sign.
"""

import pytest

from pblocks.blocks import p_blocks
from pblocks.chains import (
    append_final_term,
    chain_orbits_cached,
    delete_first_term,
    enumerate_chain_orbits,
    intermediate_subgroup_classes,
    local_second_term_sets,
    pair_set,
    prepend_first_term,
    second_term_blocks,
    second_term_partition,
)
from pblocks.chartable import character_table
from pblocks.errors import InputError
from pblocks.groups import all_subgroup_chains_brute
from pblocks.perms import conj, parse_cycles


def test_a5_chain_orbits(grp):
    A5 = grp("A5")
    orbits = enumerate_chain_orbits(A5, A5.trivial_subgroup(), 2)
    data = [([t.order for t in o.chain.terms], o.sign, o.stabilizer.order,
             o.orbit_size) for o in orbits]
    assert data == [
        ([1], 1, 60, 1),
        ([1, 2], -1, 4, 15),
        ([1, 4], -1, 12, 5),
        ([1, 2, 4], 1, 4, 15),
    ]
    assert orbits[3].parent == 1
    assert orbits[1].parent == 0 and orbits[2].parent == 0


def test_s3_chain_orbits(grp):
    S3 = grp("S3")
    orbits = enumerate_chain_orbits(S3, S3.trivial_subgroup(), 3)
    assert [([t.order for t in o.chain.terms], o.sign) for o in orbits] == [
        ([1], 1), ([1, 3], -1)]


def test_degenerate_start_is_single_chain(grp):
    C2 = grp("C2")
    z = C2.full_subgroup()
    orbits = enumerate_chain_orbits(C2, z, 2)
    assert len(orbits) == 1 and orbits[0].sign == 1


def test_start_must_be_normal_p_subgroup(grp):
    A5 = grp("A5")
    with pytest.raises(InputError):
        enumerate_chain_orbits(A5, A5.sylow(2), 2)  # not normal
    with pytest.raises(InputError):
        enumerate_chain_orbits(A5, A5.handle(
            generators=[parse_cycles("(0 1 2)", 5)]), 2)  # not normal, not 2-group


@pytest.mark.parametrize("name,p", [
    ("S4", 2), ("A5", 2), ("S3", 3), ("A4", 2), ("D6", 2), ("SL23", 2),
    ("Q8", 2), ("F20", 2), ("C2xC2xC2", 2),
])
def test_orbit_sizes_cover_all_chains(grp, name, p):
    G = grp(name)
    orbits = enumerate_chain_orbits(G, G.trivial_subgroup(), p)
    brute = all_subgroup_chains_brute(G, frozenset([G.identity]), p)
    by_sign = {1: 0, -1: 0}
    for ch in brute:
        by_sign[-1 if (len(ch) - 1) % 2 else 1] += 1
    ours = {1: 0, -1: 0}
    for o in orbits:
        ours[o.sign] += o.orbit_size
    assert ours == by_sign
    # each brute chain is conjugate to exactly one orbit representative
    total = sum(o.orbit_size for o in orbits)
    assert total == len(brute)


def test_stabilizer_contains_final_term_and_centralizer(grp):
    for name, p in [("S4", 2), ("A5", 2), ("SL23", 2)]:
        G = grp(name)
        for o in enumerate_chain_orbits(G, G.trivial_subgroup(), p):
            final = o.chain.final
            assert final.elements <= o.stabilizer.elements
            if final.generators:
                cent = frozenset.intersection(*[
                    frozenset(G.centralizer_set(x)) for x in final.generators
                ])
            else:
                cent = G.element_set()
            assert cent <= o.stabilizer.elements


def test_delete_and_append(grp):
    A5 = grp("A5")
    orbits = enumerate_chain_orbits(A5, A5.trivial_subgroup(), 2)
    full = orbits[3].chain  # 1 < C2 < V4
    dropped = delete_first_term(full)
    assert [t.order for t in dropped.terms] == [2, 4]
    assert prepend_first_term(dropped, full.terms[0]).terms == full.terms
    with pytest.raises(InputError):
        delete_first_term(orbits[0].chain)
    # appending the final term back onto the prefix
    prefix = orbits[1].chain  # 1 < C2
    v4 = full.terms[-1]
    c2 = full.terms[1]
    if prefix.terms[1].elements == c2.elements:
        rebuilt = append_final_term(prefix, v4)
        assert rebuilt.terms == full.terms
    # a new final term must strictly contain the old one
    with pytest.raises(InputError):
        append_final_term(orbits[0].chain, A5.trivial_subgroup())
    # a V4 not containing the chain's C2 cannot extend it
    chain_c2 = orbits[1].chain
    bad_v4 = next(
        A5.handle(elements=s)
        for s in A5.p_subgroup_classes(2)[2].class_orbit
        if not chain_c2.terms[1].elements <= s
    )
    with pytest.raises(InputError):
        append_final_term(chain_c2, bad_v4)


def test_delete_first_term_stabilizer_unchanged(grp):
    # the chain 1 < C2 < V4 and its truncation C2 < V4 have the same
    # stabilizing condition inside A5
    A5 = grp("A5")
    orbits = enumerate_chain_orbits(A5, A5.trivial_subgroup(), 2)
    full = orbits[3]
    short = delete_first_term(full.chain)
    stab = {
        g for g in A5.elements()
        if all(
            frozenset(conj(x, g) for x in t.elements) == t.elements
            for t in short.terms
        )
    }
    assert stab == full.stabilizer.elements


def test_pair_set_a5(grp):
    A5 = grp("A5")
    B0 = p_blocks(character_table(A5), 2)[0]
    Z = A5.trivial_subgroup()
    S = pair_set(A5, B0, Z, 2)
    assert S.counts == (8, 8)
    per_chain = {}
    for pr in S.plus + S.minus:
        per_chain[pr.chain_index] = per_chain.get(pr.chain_index, 0) + 1
    assert per_chain == {0: 4, 1: 4, 2: 4, 3: 4}
    assert pair_set(A5, B0, Z, 1).counts == (0, 0)
    # defect beyond the p-part bound: both sides empty
    assert pair_set(A5, B0, Z, 9).counts == (0, 0)


def test_pair_set_requires_prime_in_all_mode(grp):
    A5 = grp("A5")
    with pytest.raises(InputError):
        pair_set(A5, "all", A5.trivial_subgroup(), 2)


def test_degenerate_sylow_start_pair_set(grp):
    # start at a normal Sylow subgroup: single chain, minus side empty
    Q8 = grp("Q8")
    B = p_blocks(character_table(Q8), 2)[0]
    S = pair_set(Q8, B, Q8.full_subgroup(), 3)
    assert len(S.orbits) == 1
    assert S.counts == (4, 0)  # the four height-zero characters, no chains below


def test_aggregation_identity(grp):
    # blockwise union equals the block-free set on pairs with defined induction
    for name, p in [("A5", 2), ("S4", 2), ("S3", 3), ("SL23", 2), ("F20", 5)]:
        G = grp(name)
        table = character_table(G)
        Z = G.trivial_subgroup()
        dmax = _nu(G.order, p)
        for d in range(dmax + 1):
            free = pair_set(G, "all", Z, d, p=p)
            union_plus = []
            union_minus = []
            for B in p_blocks(table, p):
                S = pair_set(G, B, Z, d)
                union_plus.extend(pr.key() for pr in S.plus)
                union_minus.extend(pr.key() for pr in S.minus)
            assert sorted(union_plus) == sorted(
                pr.key() for pr in free.plus if pr.induced_block is not None)
            assert sorted(union_minus) == sorted(
                pr.key() for pr in free.minus if pr.induced_block is not None)


def test_induced_defect_dominates(grp):
    # every pair's defect is at most the defect of its induced block
    for name, p in [("A5", 2), ("S4", 2), ("S5", 2)]:
        G = grp(name)
        table = character_table(G)
        blocks = p_blocks(table, p)
        Z = G.trivial_subgroup()
        for d in range(_nu(G.order, p) + 1):
            S = pair_set(G, "all", Z, d, p=p)
            for pr in S.plus + S.minus:
                if pr.induced_block is not None:
                    assert d <= blocks[pr.induced_block].defect


def test_second_term_partition_a5(grp):
    A5 = grp("A5")
    B0 = p_blocks(character_table(A5), 2)[0]
    Z = A5.trivial_subgroup()
    S = pair_set(A5, B0, Z, 2)
    c2 = A5.p_subgroup_classes(2)[1]
    split = second_term_partition(S, c2)
    lengths = {S.orbits[pr.chain_index].chain.length
               for pr in split.matched_plus + split.matched_minus}
    assert lengths == {1, 2}
    assert len(split.matched_plus) == 4 and len(split.matched_minus) == 4
    v4 = A5.p_subgroup_classes(2)[2]
    split4 = second_term_partition(S, v4)
    assert len(split4.matched_plus) == 0 and len(split4.matched_minus) == 4
    with pytest.raises(InputError):
        second_term_partition(S, A5.trivial_subgroup())
    # transversal over second-term classes plus length-0 chains recovers S
    matched = [pr.key() for pr in split.matched_plus + split.matched_minus
               + split4.matched_plus + split4.matched_minus]
    zero_len = [pr.key() for pr in S.plus + S.minus
                if S.orbits[pr.chain_index].chain.length == 0]
    assert sorted(matched + zero_len) == sorted(
        pr.key() for pr in S.plus + S.minus)


def test_second_term_transport_counts(grp):
    # |C_Q(B,U)_+/-| as G-orbits equals the local pair counts with signs
    # swapped, summed over the blocks of N_G(Q) inducing to B with defect d
    cases = [("A5", 2), ("S4", 2), ("SL23", 2), ("S5", 2)]
    for name, p in cases:
        G = grp(name)
        table = character_table(G)
        Z = G.p_core(p)
        for B in p_blocks(table, p):
            d = B.defect
            S = pair_set(G, B, G.trivial_subgroup(), d) if Z.order == 1 \
                else pair_set(G, B, Z, d)
            for cls in G.p_subgroup_classes(p):
                if not (S.start.order < cls.order < p**B.defect):
                    continue
                if not any(S.start.elements < s for s in cls.class_orbit):
                    continue
                split = second_term_partition(S, cls)
                locals_ = local_second_term_sets(G, B, cls, d)
                local_plus = sum(len(L.plus) for L in locals_)
                local_minus = sum(len(L.minus) for L in locals_)
                assert len(split.matched_plus) == local_minus
                assert len(split.matched_minus) == local_plus


def test_second_term_blocks_lemma(grp):
    A5 = grp("A5")
    B0 = p_blocks(character_table(A5), 2)[0]
    c2 = A5.p_subgroup_classes(2)[1]
    bq = second_term_blocks(A5, B0, c2, 2)
    assert len(bq) >= 1
    for b in bq:
        assert b.defect == 2


def test_intermediate_subgroup_classes(grp):
    A5 = grp("A5")
    triv = A5.trivial_subgroup()
    v4 = A5.sylow(2)
    between = intermediate_subgroup_classes(A5, triv, v4, 2)
    assert [h.order for h in between] == [2]
    # maximal step: nothing strictly between
    c2 = A5.handle(elements=next(iter(
        s for s in A5.p_subgroup_classes(2)[1].class_orbit if s <= v4.elements)))
    assert intermediate_subgroup_classes(A5, triv, c2, 2) == ()
    S4 = grp("S4")
    o2 = S4.p_core(2)
    syl = S4.sylow(2)
    mids = intermediate_subgroup_classes(S4, o2, syl, 2)
    assert mids == ()  # no class strictly between the Klein core and the Sylow
    with pytest.raises(InputError):
        intermediate_subgroup_classes(A5, v4, triv, 2)


def test_chain_orbit_cache(grp):
    A5 = grp("A5")
    a = chain_orbits_cached(A5, A5.trivial_subgroup(), 2)
    b = chain_orbits_cached(A5, A5.trivial_subgroup(), 2)
    assert a is b


def _nu(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
