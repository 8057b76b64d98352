"""Built-in group catalogue and group-definition files.

Catalogue names (case-insensitive):

* ``C<n>``   cyclic of order n, natural action on n points
* ``D<n>``   dihedral symmetries of the regular n-gon (order 2n, n >= 3)
* ``S<n>``   symmetric group, n <= 7
* ``A<n>``   alternating group, n <= 7
* ``Q8``     quaternion group, regular action on 8 points
* ``SL23``   SL(2,3) acting on the 8 nonzero vectors of F_3^2
* ``F20``    Frobenius group C5:C4 on 5 points
* ``F21``    Frobenius group C7:C3 on 7 points
* ``Dic3``   dicyclic group of order 12 (realized as C3:C4)

Names can be combined with ``x`` for direct products acting on disjoint
points, e.g. ``C2xA4``.  General split metacyclic groups are available
through :func:`semidirect_cyclic`.

Group-definition files are plain text::

    # comment lines start with '#'
    degree: 7
    generators: (0 1 2 3 4 5 6); (1 2 4)(3 6 5)

Generators are written in 0-based disjoint-cycle notation and separated by
``;`` or newlines after the ``generators:`` header.  ``()`` is the identity.
"""

from __future__ import annotations

import re

from .config import DEFAULT_LIMITS, Limits
from .errors import InputError
from .groups import Group
from .perms import Perm, parse_perm_list

__all__ = [
    "library_group",
    "library_names",
    "acceptance_corpus",
    "direct_product",
    "semidirect_cyclic",
    "parse_group_file",
]


def cyclic(n: int, limits: Limits = DEFAULT_LIMITS) -> Group:
    if n < 1:
        raise InputError("cyclic group order must be positive")
    if n == 1:
        return Group(1, [], limits=limits)
    return Group(n, [tuple(range(1, n)) + (0,)], limits=limits)


def dihedral(n: int, limits: Limits = DEFAULT_LIMITS) -> Group:
    """Symmetries of the regular n-gon: order 2n on n points."""
    if n < 3:
        raise InputError("dihedral group needs n >= 3 vertices")
    rot = tuple(range(1, n)) + (0,)
    ref = tuple((n - i) % n for i in range(n))
    return Group(n, [rot, ref], limits=limits)


def symmetric(n: int, limits: Limits = DEFAULT_LIMITS) -> Group:
    if n < 1 or n > 7:
        raise InputError("symmetric groups are provided for degree 1..7")
    if n == 1:
        return Group(1, [], limits=limits)
    gens = [(1, 0) + tuple(range(2, n))]
    if n > 2:
        gens.append(tuple(range(1, n)) + (0,))
    return Group(n, gens, limits=limits)


def alternating(n: int, limits: Limits = DEFAULT_LIMITS) -> Group:
    if n < 1 or n > 7:
        raise InputError("alternating groups are provided for degree 1..7")
    if n <= 2:
        return Group(max(n, 1), [], limits=limits)
    three = (1, 2, 0) + tuple(range(3, n))
    if n == 3:
        return Group(3, [three], limits=limits)
    if n % 2 == 1:
        big = tuple(range(1, n)) + (0,)
    else:
        big = (0,) + tuple(range(2, n)) + (1,)
    return Group(n, [three, big], limits=limits)


def quaternion(limits: Limits = DEFAULT_LIMITS) -> Group:
    """Q8 in its regular action; points are 1,-1,i,-i,j,-j,k,-k."""
    gen_i = (2, 3, 1, 0, 6, 7, 5, 4)
    gen_j = (4, 5, 7, 6, 1, 0, 2, 3)
    return Group(8, [gen_i, gen_j], limits=limits)


def sl23(limits: Limits = DEFAULT_LIMITS) -> Group:
    """SL(2,3) on the 8 nonzero vectors of F_3^2."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}

    def act(mat):
        (a, b), (c, d) = mat
        return tuple(
            index[((a * x + b * y) % 3, (c * x + d * y) % 3)] for (x, y) in vecs
        )

    s = act(((0, 2), (1, 0)))
    t = act(((1, 1), (0, 1)))
    return Group(8, [s, t], limits=limits)


def semidirect_cyclic(m: int, n: int, k: int, limits: Limits = DEFAULT_LIMITS) -> Group:
    """C_m : C_n where the C_n generator acts on C_m by x -> k*x.

    Acts faithfully on m + n points: the natural m-cycle plus an n-cycle on
    fresh points that carries the multiplication action.
    """
    if m < 2 or n < 2:
        raise InputError("semidirect factors must have order >= 2")
    if pow(k, n, m) != 1 or _gcd(k, m) != 1:
        raise InputError(f"k={k} does not define an order-dividing action on C{m}")
    degree = m + n
    a = tuple((i + 1) % m for i in range(m)) + tuple(range(m, degree))
    b_head = tuple((k * i) % m for i in range(m))
    b_tail = tuple(m + ((i - m + 1) % n) for i in range(m, degree))
    g = Group(degree, [a, b_head + b_tail], limits=limits)
    if g.order != m * n:
        raise InputError("semidirect construction did not close at order m*n")
    return g


def frobenius20(limits: Limits = DEFAULT_LIMITS) -> Group:
    return Group(5, [(1, 2, 3, 4, 0), (0, 2, 4, 1, 3)], limits=limits)


def frobenius21(limits: Limits = DEFAULT_LIMITS) -> Group:
    mul2 = tuple((2 * i) % 7 for i in range(7))
    return Group(7, [tuple(range(1, 7)) + (0,), mul2], limits=limits)


def direct_product(*groups: Group, limits: Limits = DEFAULT_LIMITS) -> Group:
    """Direct product acting on the disjoint union of the factors' points."""
    if not groups:
        raise InputError("direct product needs at least one factor")
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        before = tuple(range(offset))
        after = tuple(range(offset + g.degree, degree))
        for p in g.generators:
            gens.append(before + tuple(x + offset for x in p) + after)
        offset += g.degree
    return Group(degree, gens, limits=limits)


_ATOM_RE = re.compile(r"^(C|D|S|A)(\d+)$", re.IGNORECASE)

_FIXED = {
    "Q8": quaternion,
    "SL23": sl23,
    "F20": frobenius20,
    "F21": frobenius21,
    "DIC3": lambda limits=DEFAULT_LIMITS: semidirect_cyclic(3, 4, 2, limits=limits),
}


def _atom(name: str, limits: Limits) -> Group:
    upper = name.upper()
    if upper in _FIXED:
        return _FIXED[upper](limits=limits)
    m = _ATOM_RE.match(name)
    if not m:
        raise InputError(f"unknown library group {name!r}")
    kind, n = m.group(1).upper(), int(m.group(2))
    if kind == "C":
        return cyclic(n, limits=limits)
    if kind == "D":
        return dihedral(n, limits=limits)
    if kind == "S":
        return symmetric(n, limits=limits)
    return alternating(n, limits=limits)


def library_group(name: str, limits: Limits = DEFAULT_LIMITS) -> Group:
    """Resolve a catalogue name, possibly an ``x``-product of atoms."""
    parts = [p for p in re.split(r"x", name.strip()) if p]
    if not parts:
        raise InputError(f"unknown library group {name!r}")
    factors = [_atom(p.strip(), limits) for p in parts]
    if len(factors) == 1:
        return factors[0]
    return direct_product(*factors, limits=limits)


def library_names() -> list[str]:
    """Documented atoms of the catalogue (products are formed with 'x')."""
    return (
        [f"C{n}" for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)]
        + [f"D{n}" for n in range(3, 13)]
        + [f"S{n}" for n in range(2, 8)]
        + [f"A{n}" for n in range(3, 8)]
        + ["Q8", "SL23", "F20", "F21", "Dic3"]
    )


def acceptance_corpus() -> list[str]:
    """The fixed corpus used by the acceptance suite: library names, order <= 200."""
    return [
        "C1", "C2", "C3", "C4", "C5", "C6", "C8", "C9", "C10", "C12",
        "C2xC2", "C2xC4", "C2xC2xC2", "C3xC3",
        "D4", "D5", "D6", "D7", "D8", "D10",
        "S3", "S4", "S5", "A4", "A5",
        "Q8", "SL23", "F20", "F21", "Dic3",
        "C2xA4", "C3xS3", "C2xD4", "C2xQ8",
    ]


def parse_group_file(text: str, limits: Limits = DEFAULT_LIMITS) -> Group:
    """Parse the group-definition file format documented in this module."""
    degree = None
    gen_text: list[str] = []
    in_gens = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("degree"):
            rest = line.split(":", 1)[1] if ":" in line else line[len("degree"):]
            try:
                degree = int(rest.strip())
            except ValueError:
                raise InputError(f"bad degree line {raw!r}") from None
            in_gens = False
        elif low.startswith("generators"):
            rest = line.split(":", 1)[1] if ":" in line else ""
            if rest.strip():
                gen_text.append(rest.strip())
            in_gens = True
        elif in_gens:
            gen_text.append(line)
        else:
            raise InputError(f"unrecognized line in group file: {raw!r}")
    if degree is None:
        raise InputError("group file is missing a 'degree:' line")
    gens: list[Perm] = []
    for chunk in gen_text:
        gens.extend(parse_perm_list(chunk, degree))
    return Group(degree, gens, limits=limits)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
