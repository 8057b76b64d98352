"""Exact ordinary character tables via class-sum diagonalization over F_ell.

The algorithm is the classical one: build the class-multiplication
coefficient tensor, split F_ell^r into common eigenspaces of the class-sum
matrices for a prime ell = 1 (mod exponent) with ell > 2*sqrt(|G|), read off
the central character values, recover degrees from the orthogonality
relation, and lift each value to an exact element of Z[zeta_e] by discrete
Fourier inversion over a fixed e-th root of unity in F_ell.

Every table is validated against both orthogonality relations before it is
returned; a table that fails validation is never handed out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np
from sympy import isprime, primitive_root, sqrt_mod

from .cyclotomic import Cyclo, _power_reductions, euler_phi
from .errors import InputError, InternalError
from .groups import ConjClass, Group
from .modlinalg import charpoly, inv_mod, nullspace, poly_roots, rref
from .perms import format_cycles, perm_order, pinv, pmul

__all__ = [
    "CharTable",
    "CharRef",
    "character_table",
    "defect",
    "p_prime_degree_set",
    "inner_product",
]


@dataclass(frozen=True)
class CharRef:
    """A row of a character table, with its defect at a stated prime."""

    table: "CharTable"
    index: int
    p: int
    defect: int

    def __repr__(self) -> str:
        return f"CharRef(deg={self.table.degrees[self.index]}, p={self.p}, d={self.defect})"


class CharTable:
    """Complete irreducible character table with exact cyclotomic values.

    Rows are in canonical order: ascending degree, ties broken by the
    lexicographic order of the integer coefficient vectors.  Values are
    stored as integer vectors over the power basis of Q(zeta_e), e the group
    exponent; they are always algebraic integers.
    """

    def __init__(self, group: Group, classes, conductor, values, degrees, lift_meta):
        self.group = group
        self.classes: tuple[ConjClass, ...] = classes
        self.conductor = conductor
        self.phi = euler_phi(conductor)
        self.values = values  # np.int64 [r, r, phi]
        self.degrees = degrees
        self.lift_meta = lift_meta  # dict: prime, primitive_root, root_power
        self.r = len(classes)
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"CharTable(order={self.group.order}, degrees={self.degrees})"

    # -- lookups --------------------------------------------------------------

    def class_index(self) -> dict:
        return self.group.class_index()

    def inverse_class(self, k: int) -> int:
        if "inv_map" not in self._cache:
            idx = self.class_index()
            self._cache["inv_map"] = tuple(
                idx[pinv(c.rep)] for c in self.classes
            )
        return self._cache["inv_map"][k]

    def power_map(self) -> np.ndarray:
        """power_map[k, t] = class index of rep_k ** t, 0 <= t < conductor."""
        if "power_map" not in self._cache:
            idx = self.class_index()
            e = self.conductor
            pm = np.zeros((self.r, e), dtype=np.int64)
            for k, c in enumerate(self.classes):
                acc = self.group.identity
                for t in range(e):
                    pm[k, t] = idx[acc]
                    acc = pmul(acc, c.rep)
            self._cache["power_map"] = pm
        return self._cache["power_map"]

    def entry(self, i: int, k: int) -> Cyclo:
        return Cyclo(self.conductor,
                     tuple(Fraction(int(c)) for c in self.values[i, k]))

    def row(self, i: int) -> tuple:
        return tuple(self.entry(i, k) for k in range(self.r))

    def trivial_index(self) -> int:
        if "trivial" not in self._cache:
            one = _one_vector(self.conductor)
            for i in range(self.r):
                if self.degrees[i] == 1 and all(
                    np.array_equal(self.values[i, k], one) for k in range(self.r)
                ):
                    self._cache["trivial"] = i
                    break
            else:
                raise InternalError("table has no trivial character")
        return self._cache["trivial"]

    def row_index_of_values(self, vec: np.ndarray) -> int:
        """Find the row equal to the given [r, phi] value matrix."""
        if "row_lookup" not in self._cache:
            self._cache["row_lookup"] = {
                self.values[i].tobytes(): i for i in range(self.r)
            }
        key = np.ascontiguousarray(vec.astype(np.int64)).tobytes()
        try:
            return self._cache["row_lookup"][key]
        except KeyError:
            raise InternalError("value matrix matches no table row") from None

    # -- class-multiplication coefficients -------------------------------------

    def cmc(self) -> np.ndarray:
        """Tensor a[i, j, k]: K_i K_j = sum_k a[i,j,k] K_k as class sums."""
        if "cmc" not in self._cache:
            idx = self.class_index()
            r = self.r
            a = np.zeros((r, r, r), dtype=np.int32)
            inv = {x: pinv(x) for x in self.group.elements()}
            for k, ck in enumerate(self.classes):
                z = ck.rep
                for x in self.group.elements():
                    a[idx[x], idx[pmul(inv[x], z)], k] += 1
            self._cache["cmc"] = a
        return self._cache["cmc"]


def character_table(G: Group) -> CharTable:
    """The character table of G, cached on the group."""
    if "chartable" not in G._cache:
        G._cache["chartable"] = _dixon_table(G)
    return G._cache["chartable"]


def defect(chi: CharRef | tuple, p: int | None = None) -> int:
    """d(chi) at p: p^d * chi(1)_p = |G|_p."""
    if isinstance(chi, CharRef):
        return chi.defect
    table, index = chi
    return _defect_of(table, index, p)


def char_ref(table: CharTable, index: int, p: int) -> CharRef:
    return CharRef(table, index, p, _defect_of(table, index, p))


def _defect_of(table: CharTable, index: int, p: int) -> int:
    if p < 2 or not isprime(p):
        raise InputError(f"{p} is not a prime")
    return _nu(table.group.order, p) - _nu(table.degrees[index], p)


def _nu(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_prime_degree_set(table: CharTable, p: int) -> tuple[CharRef, ...]:
    """Rows whose degree is coprime to p; these have maximal defect."""
    return tuple(
        char_ref(table, i, p)
        for i in range(table.r)
        if table.degrees[i] % p != 0
    )


def inner_product(table: CharTable, f, g) -> Cyclo:
    """<f, g> = |G|^-1 sum |K| f(K) conj(g(K)), exact."""
    f = list(f)
    g = list(g)
    if len(f) != table.r or len(g) != table.r:
        raise InputError("class function has wrong length")
    total = Cyclo.zero()
    for k, c in enumerate(table.classes):
        fk = f[k] if isinstance(f[k], Cyclo) else Cyclo.from_rational(f[k])
        gk = g[k] if isinstance(g[k], Cyclo) else Cyclo.from_rational(g[k])
        total = total + fk * gk.conjugate() * c.size
    return total / table.group.order


# -- Dixon-Schneider construction ----------------------------------------------


def _dixon_table(G: Group) -> CharTable:
    classes = G.conjugacy_classes()
    r = len(classes)
    if classes[0].rep != G.identity:
        raise InternalError("identity class is not first in canonical order")
    e = G.exponent()
    order = G.order

    if r == 1:
        values = np.ones((1, 1, euler_phi(e)), dtype=np.int64)
        values[0, 0] = _one_vector(e)
        return CharTable(G, classes, e, values, [1],
                         {"prime": 3, "primitive_root": 2, "root_power": 1})

    ell = _dixon_prime(order, e)
    w = int(primitive_root(ell))
    z = pow(w, (ell - 1) // e, ell)

    table = CharTable(G, classes, e, None, None,
                      {"prime": ell, "primitive_root": w, "root_power": z})
    a = table.cmc()

    omegas = _common_eigenvectors(a, ell)  # [r, r]: one row per character
    degrees_mod, degrees = _recover_degrees(table, omegas, ell)
    values_mod = _values_mod_ell(table, omegas, degrees_mod, ell)
    int_values = _lift_values(table, values_mod, degrees, ell, z)

    rows = sorted(
        range(r),
        key=lambda i: (degrees[i], tuple(int(c) for c in int_values[i].reshape(-1))),
    )
    values = np.stack([int_values[i] for i in rows])
    degs = [degrees[i] for i in rows]

    table.values = values
    table.degrees = degs
    _validate_table(table)
    return table


def _dixon_prime(order: int, e: int) -> int:
    bound = 2 * isqrt(order)
    ell = e + 1
    while True:
        if ell > bound and isprime(ell) and ell % e == 1:
            return ell
        ell += e if e > 1 else 1


def _common_eigenvectors(a: np.ndarray, ell: int) -> np.ndarray:
    """Split F_ell^r into the common eigenspaces of the class-sum matrices.

    Each M_i = a[i] satisfies M_i v = omega(K_i) v on the central character
    vector v = (omega(K_k))_k; since ell does not divide |G| the common
    eigenspaces are one-dimensional.
    """
    r = a.shape[0]
    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(s.shape[0] == 1 for s in spaces):
            break
        mt = (a[i].T.astype(np.int64)) % ell
        new_spaces = []
        for basis in spaces:
            if basis.shape[0] == 1:
                new_spaces.append(basis)
                continue
            image = (basis @ mt) % ell
            reduced, pivots = rref(basis, ell)
            if reduced.shape[0] != basis.shape[0]:
                raise InternalError("eigenspace basis lost rank")
            restriction = image[:, pivots] % ell
            if not np.array_equal((restriction @ basis) % ell, image % ell):
                raise InternalError("class-sum matrix does not preserve eigenspace")
            poly = charpoly(restriction, ell)
            roots = poly_roots(poly, ell)
            dim_total = 0
            for lam in roots:
                # coordinates act by right multiplication with the
                # restriction, so eigen-rows come from the left nullspace
                shifted = (restriction - lam * np.eye(basis.shape[0], dtype=np.int64)) % ell
                null = nullspace(shifted.T % ell, ell)
                if null.shape[0] == 0:
                    continue
                sub, _ = rref((null @ basis) % ell, ell)
                dim_total += sub.shape[0]
                new_spaces.append(sub)
            if dim_total != basis.shape[0]:
                raise InternalError("eigenspace refinement lost dimension")
        spaces = new_spaces
    if not all(s.shape[0] == 1 for s in spaces) or len(spaces) != r:
        raise InternalError("class-sum action failed to split into lines")
    out = np.zeros((r, r), dtype=np.int64)
    for i, s in enumerate(spaces):
        v = s[0] % ell
        if v[0] == 0:
            raise InternalError("central character vanishes on the identity class")
        out[i] = (v * inv_mod(v[0], ell)) % ell
    return out


def _recover_degrees(table: CharTable, omegas: np.ndarray, ell: int):
    order = table.group.order
    sizes = [c.size for c in table.classes]
    inv_sizes = np.array([inv_mod(s, ell) for s in sizes], dtype=np.int64)
    inv_map = [table.inverse_class(k) for k in range(table.r)]
    degrees_mod = []
    degrees = []
    for i in range(table.r):
        v = omegas[i]
        den = int(np.sum(v * v[inv_map] % ell * inv_sizes % ell) % ell)
        if den == 0:
            raise InternalError("degree denominator vanished mod ell")
        dsq = (order * inv_mod(den, ell)) % ell
        root = sqrt_mod(dsq, ell)
        if root is None:
            raise InternalError("degree square has no square root mod ell")
        deg = min(int(root), ell - int(root))
        if deg <= 0 or deg * deg > order or (deg * deg) % ell != dsq:
            raise InternalError("recovered degree fails sanity bounds")
        degrees_mod.append(deg % ell)
        degrees.append(deg)
    return degrees_mod, degrees


def _values_mod_ell(table, omegas, degrees_mod, ell):
    sizes = np.array([c.size for c in table.classes], dtype=np.int64)
    inv_sizes = np.array([inv_mod(int(s), ell) for s in sizes], dtype=np.int64)
    vals = np.zeros((table.r, table.r), dtype=np.int64)
    for i in range(table.r):
        vals[i] = (omegas[i] * inv_sizes % ell) * degrees_mod[i] % ell
    return vals


def _lift_values(table, values_mod, degrees, ell, z):
    """Exact values from eigenvalue multiplicities by Fourier inversion.

    chi(g) is a sum of chi(1) many e-th roots of unity; the multiplicity of
    zeta_e^s among them is (1/e) * sum_t chi(g^t) z^{-st} mod ell, a genuine
    integer in [0, chi(1)] and therefore determined by its residue.
    """
    e = table.conductor
    phi = table.phi
    r = table.r
    pm = table.power_map()
    zmat = np.zeros((e, e), dtype=np.int64)
    zinv = inv_mod(z, ell)
    for t in range(e):
        acc = 1
        step = pow(zinv, t, ell)
        for s in range(e):
            zmat[t, s] = acc
            acc = (acc * step) % ell
    inv_e = inv_mod(e, ell)
    basis = np.array(_power_reductions(e)[:e], dtype=np.int64)[:, :phi]

    out = np.zeros((r, r, phi), dtype=np.int64)
    for i in range(r):
        gathered = values_mod[i][pm]  # [r, e]: chi(g_k^t)
        mults = (gathered.astype(np.int64) @ zmat) % ell
        mults = (mults * inv_e) % ell
        if mults.max() > degrees[i]:
            raise InternalError("eigenvalue multiplicity exceeds the degree")
        if not np.all(mults.sum(axis=1) == degrees[i]):
            raise InternalError("eigenvalue multiplicities do not sum to the degree")
        out[i] = mults @ basis
    return out


def _one_vector(e: int) -> np.ndarray:
    v = np.zeros(euler_phi(e), dtype=np.int64)
    v[0] = 1
    return v


def conj_matrix(e: int) -> np.ndarray:
    """phi x phi integer matrix of complex conjugation on the power basis."""
    phi = euler_phi(e)
    rows = _power_reductions(e)
    out = np.zeros((phi, phi), dtype=np.int64)
    for i in range(phi):
        out[i] = np.array(rows[(e - i) % e][:phi], dtype=np.int64)
    return out


def galois_matrix(e: int, k: int) -> np.ndarray:
    """Matrix of zeta -> zeta^k on the power basis (k coprime to e)."""
    phi = euler_phi(e)
    rows = _power_reductions(e)
    out = np.zeros((phi, phi), dtype=np.int64)
    for i in range(phi):
        out[i] = np.array(rows[(i * k) % e][:phi], dtype=np.int64)
    return out


def _pairwise_products(A: np.ndarray, B: np.ndarray, weights: np.ndarray, e: int):
    """C[i, j] = sum_K w_K * (A[i,K] * B[j,K]) as reduced basis vectors.

    A, B: [n, r, phi] integer coefficient tensors; the product is the
    cyclotomic product, computed by convolution then reduction mod Phi_e.
    """
    phi = A.shape[2]
    rows = np.array(_power_reductions(e)[: 2 * phi - 1], dtype=np.int64)[:, :phi]
    wb = B * weights[None, :, None]
    n_a, n_b = A.shape[0], B.shape[0]
    conv = np.zeros((n_a, n_b, 2 * phi - 1), dtype=np.int64)
    for s in range(phi):
        conv[:, :, s : s + phi] += np.tensordot(A[:, :, s], wb, axes=([1], [1]))
    return np.tensordot(conv, rows, axes=([2], [0]))


def _validate_table(table: CharTable) -> None:
    G = table.group
    r = table.r
    if sum(d * d for d in table.degrees) != G.order:
        raise InternalError("sum of squared degrees misses the group order")
    for d in table.degrees:
        if G.order % d:
            raise InternalError("character degree does not divide the group order")
    sizes = np.array([c.size for c in table.classes], dtype=np.int64)
    cm = conj_matrix(table.conductor)
    conj_values = np.tensordot(table.values, cm, axes=([2], [0]))

    row_orth = _pairwise_products(table.values, conj_values, sizes, table.conductor)
    expected = np.zeros_like(row_orth)
    one = _one_vector(table.conductor)
    for i in range(r):
        expected[i, i] = one * G.order
    if not np.array_equal(row_orth, expected):
        raise InternalError("row orthogonality failed; table rejected")

    col = np.swapaxes(table.values, 0, 1)
    col_conj = np.swapaxes(conj_values, 0, 1)
    col_orth = _pairwise_products(col, col_conj, np.ones(r, dtype=np.int64),
                                  table.conductor)
    expected_col = np.zeros_like(col_orth)
    for k in range(r):
        expected_col[k, k] = one * (G.order // sizes[k])
    if not np.array_equal(col_orth, expected_col):
        raise InternalError("column orthogonality failed; table rejected")

    idx = table.trivial_index()
    if table.degrees[idx] != 1:
        raise InternalError("trivial character has wrong degree")
    # identity column must equal the degree list
    for i in range(r):
        if not np.array_equal(table.values[i, 0], one * table.degrees[i]):
            raise InternalError("identity column disagrees with the degrees")


def format_class(c: ConjClass) -> str:
    return format_cycles(c.rep)


def galois_row_permutation(table: CharTable, k: int) -> list[int]:
    """Row permutation induced by zeta -> zeta^k, or raise if rows move out."""
    gm = galois_matrix(table.conductor, k)
    mapped = np.tensordot(table.values, gm, axes=([2], [0]))
    return [table.row_index_of_values(mapped[i]) for i in range(table.r)]


def exponent_of(G: Group) -> int:
    return G.exponent()


def element_order_check(G: Group) -> bool:  # pragma: no cover
    return all(perm_order(c.rep) for c in G.conjugacy_classes())
