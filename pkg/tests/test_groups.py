"""Group arithmetic against brute-force oracles.

The oracles enumerate explicitly: closures for orders, elementwise scans
for classes and normalizers, and level-by-level extension over the whole
group for p-subgroups.  They never touch the stabilizer chain.
"""

import pytest

from pblocks.config import Limits
from pblocks.errors import InputError, ResourceError
from pblocks.groups import Group, closure, group_from_generators
from pblocks.library import library_group, parse_group_file
from pblocks.perms import conj, identity, parse_cycles, perm_order, pmul


def brute_order(degree, gens):
    elems = {identity(degree)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(elems)


@pytest.mark.parametrize(
    "degree,cycles,expected",
    [
        (1, [], 1),
        (5, ["(0 1 2 3 4)", "(0 1 2)"], 60),
        (4, ["(0 1)", "(0 1 2 3)"], 24),
        (3, ["(0 1)", "(0 1 2)"], 6),
        (7, ["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"], 21),
    ],
)
def test_order_against_brute_closure(degree, cycles, expected):
    gens = [parse_cycles(c, degree) for c in cycles]
    G = group_from_generators(degree, gens)
    assert G.order == expected
    assert brute_order(degree, gens) == expected


def test_malformed_generator_rejected():
    with pytest.raises(InputError):
        group_from_generators(3, [(0, 0, 1)])


def test_order_ceiling():
    with pytest.raises(ResourceError):
        library_group("S5", limits=Limits(max_order=100))


def test_chain_certificate(grp):
    for name in ["A5", "S4", "Q8", "SL23", "D6", "C12"]:
        G = grp(name)
        sizes = G.transversal_sizes()
        prod = 1
        for s in sizes:
            prod *= s
        assert prod == G.order
        for g in G.generators:
            assert G.contains(g)
        assert G.base() == sorted(G.base())
        # non-members are rejected
        odd = parse_cycles("(0 1)", G.degree)
        assert (odd in G) == (odd in G.element_set())


def brute_classes(G):
    elems = G.elements()
    seen = set()
    out = []
    for x in elems:
        if x in seen:
            continue
        orb = {conj(x, g) for g in elems}
        seen |= orb
        out.append(len(orb))
    return sorted(out)


@pytest.mark.parametrize(
    "name,sizes",
    [
        ("C1", [1]),
        ("S3", [1, 2, 3]),
        ("A5", [1, 12, 12, 15, 20]),
        ("S4", [1, 3, 6, 6, 8]),
        ("Q8", [1, 1, 2, 2, 2]),
    ],
)
def test_conjugacy_classes(grp, name, sizes):
    G = grp(name)
    classes = G.conjugacy_classes()
    assert sorted(c.size for c in classes) == sizes
    assert brute_classes(G) == sizes
    assert sum(c.size for c in classes) == G.order
    for c in classes:
        assert c.size * c.centralizer_order == G.order
        assert G.order % c.size == 0


def test_class_canonical_order(grp):
    G = grp("S4")
    classes = G.conjugacy_classes()
    keys = [(c.size, c.rep) for c in classes]
    assert keys == sorted(keys)
    assert classes[0].rep == G.identity


def brute_conjugate_count(G, H):
    return len({frozenset(conj(x, g) for x in H.elements) for g in G.elements()})


def test_normalizer_examples(grp):
    A5 = grp("A5")
    assert A5.normalizer(A5.full_subgroup()).order == 60
    h = A5.handle(generators=[parse_cycles("(0 1)(2 3)", 5)])
    n = A5.normalizer(h)
    assert n.order == 4
    v4 = A5.handle(generators=[parse_cycles("(0 1)(2 3)", 5),
                               parse_cycles("(0 2)(1 3)", 5)])
    assert v4.order == 4
    assert A5.normalizer(v4).order == 12


def test_normalizer_index_is_conjugate_count(grp):
    for name in ["S4", "A5", "D6", "Dic3"]:
        G = grp(name)
        for h in G.p_subgroup_classes(2)[:4]:
            n = G.normalizer(h)
            assert h.elements <= n.elements
            assert G.order // n.order == brute_conjugate_count(G, h)


def test_center_and_core(grp):
    C12 = grp("C12")
    z, core = C12.center_and_core(2)
    assert z.order == 12
    assert core.order == 4  # Sylow 2-subgroup of an abelian group
    S4 = grp("S4")
    _, o2 = S4.center_and_core(2)
    assert o2.order == 4
    assert S4.is_normal(o2)
    A5 = grp("A5")
    _, o2 = A5.center_and_core(2)
    assert o2.order == 1
    Q8 = grp("Q8")
    assert Q8.center().order == 2


def test_sylow(grp):
    A5 = grp("A5")
    syl = A5.sylow(2)
    assert syl.order == 4
    assert syl.class_size == 5
    assert A5.sylow(7).order == 1  # p does not divide the order
    S4 = grp("S4")
    syl2 = S4.sylow(2)
    assert syl2.order == 8
    assert syl2.class_size == 3


def brute_p_subgroups(G, p):
    """All p-subgroups of G by exhaustive bottom-up extension over all of G."""
    idp = G.identity
    elems = G.elements()
    found = {frozenset([idp])}
    level = {frozenset([idp])}
    while level:
        nxt = set()
        for q in level:
            for x in elems:
                if x in q or perm_order(x) % p:
                    continue
                xp = x
                for _ in range(p - 1):
                    xp = pmul(xp, x)
                if xp not in q:
                    continue
                if not all(conj(h, x) in q for h in q):
                    continue
                r = closure(G.degree, sorted(q) + [x], seed=q)
                if len(r) == len(q) * p:
                    nxt.add(r)
        nxt -= found
        found |= nxt
        level = nxt
    return found


@pytest.mark.parametrize(
    "name,p,orders",
    [
        ("C3", 3, [1, 3]),
        ("S4", 2, [1, 2, 2, 4, 4, 4, 8]),
        ("A5", 2, [1, 2, 4]),
        ("A5", 5, [1, 5]),
        ("Q8", 2, [1, 2, 4, 4, 4, 8]),
    ],
)
def test_p_subgroup_classes(grp, name, p, orders):
    G = grp(name)
    classes = G.p_subgroup_classes(p)
    assert [h.order for h in classes] == orders
    # fuse the brute-force enumeration and compare the class sets exactly
    brute = brute_p_subgroups(G, p)
    assert brute == {s for h in classes for s in h.class_orbit}
    for h in classes:
        assert h.is_p_group(p)
        assert G.order == h.class_size * G.normalizer(h).order
    assert classes[-1].order == G.order_p_part(p)


def test_subgroup_handle_canonical_key(grp):
    A5 = grp("A5")
    h1 = A5.handle(generators=[parse_cycles("(0 1)(2 3)", 5)])
    h2 = A5.handle(generators=[parse_cycles("(0 2)(1 4)", 5)])
    assert h1.elements != h2.elements
    assert h1.canonical_key == h2.canonical_key  # conjugate in A5
    h3 = A5.handle(generators=[parse_cycles("(0 1 2)", 5)])
    assert h1.canonical_key != h3.canonical_key


def test_group_file_round_trip(tmp_path):
    text = "# alternating on five points\ndegree: 5\ngenerators: (0 1 2 3 4); (0 1 2)\n"
    G = parse_group_file(text)
    assert G.order == 60
    with pytest.raises(InputError):
        parse_group_file("generators: (0 1)\n")
    with pytest.raises(InputError):
        parse_group_file("degree: three\n")
    with pytest.raises(InputError):
        parse_group_file("degree: 3\nnonsense\n")


def test_library_names(grp):
    assert grp("Dic3").order == 12
    assert grp("F20").order == 20
    assert grp("SL23").order == 24
    assert grp("C2xA4").order == 24
    assert grp("C2xC2xC2").order == 8
    with pytest.raises(InputError):
        library_group("nope")
    with pytest.raises(InputError):
        library_group("S9")


def test_dic3_is_dicyclic(grp):
    G = grp("Dic3")
    # nonabelian of order 12 with cyclic Sylow 2-subgroup
    assert any(pmul(a, b) != pmul(b, a) for a in G.generators for b in G.generators)
    syl = G.sylow(2)
    orders = sorted(perm_order(x) for x in syl.elements)
    assert orders == [1, 2, 4, 4]
