"""The finite field used to reduce central characters modulo a prime.

For a prime p and conductor e = p^a * e' with p coprime to e', central
character values live in Z[zeta_e]; reducing modulo a prime ideal over p
amounts to sending zeta_{p^a} to 1 and zeta_{e'} to a root of an irreducible
factor of the e'-th cyclotomic polynomial over F_p.  All factors have the
same degree f (the order of p mod e'); we fix the choice canonically by
taking the lexicographically smallest factor q and realizing the field as
F_p[x]/(q) with zeta_{e'} mapped to x.

Every choice of factor yields the same block partition; fixing one makes
reports reproducible.
"""

from __future__ import annotations

from functools import lru_cache

from sympy import GF, Poly, Symbol

from .cyclotomic import cyclotomic_poly
from .errors import InputError, InternalError

__all__ = ["BlockField", "block_field"]


@lru_cache(maxsize=None)
def block_field(p: int, conductor: int) -> "BlockField":
    return BlockField(p, conductor)


class BlockField:
    """F_p[x]/(q) together with the reduction map from Z[zeta_conductor]."""

    def __init__(self, p: int, conductor: int):
        if p < 2:
            raise InputError("reduction prime must be at least 2")
        self.p = p
        self.conductor = conductor
        a, e1 = 0, conductor
        while e1 % p == 0:
            e1 //= p
            a += 1
        self.e1 = e1
        self.modulus = _canonical_factor(e1, p)
        self.f = len(self.modulus) - 1
        self.zero = (0,) * self.f
        self.one = (1,) + (0,) * (self.f - 1)
        # zeta_conductor maps to x^t with t the inverse of p^a mod e1.
        self.t = pow(p**a % e1, -1, e1) if e1 > 1 else 0
        self.xpow = self._x_powers()

    def __repr__(self) -> str:
        return f"BlockField(p={self.p}, f={self.f}, e'={self.e1})"

    def _x_powers(self):
        powers = [self.one]
        x = ((0, 1) + (0,) * (self.f - 2)) if self.f >= 2 else (1 % self.p,)
        if self.f == 1:
            # q = x - c: x acts as the scalar c.
            c = (-self.modulus[0]) % self.p
            x = (c,)
        for _ in range(1, self.e1):
            powers.append(self.mul(powers[-1], x))
        return powers

    def add(self, u, v):
        return tuple((a + b) % self.p for a, b in zip(u, v))

    def mul(self, u, v):
        conv = [0] * (2 * self.f - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        conv[i + j] += a * b
        # reduce mod the monic modulus
        for i in range(len(conv) - 1, self.f - 1, -1):
            c = conv[i] % self.p
            if c:
                for j in range(self.f + 1):
                    conv[i - self.f + j] -= c * self.modulus[j]
            conv[i] = 0
        return tuple(c % self.p for c in conv[: self.f])

    def scalar(self, n: int):
        return (n % self.p,) + (0,) * (self.f - 1)

    def reduce_int_vector(self, coeffs, src_conductor: int):
        """Reduce sum_i coeffs[i] * zeta_src^i (power basis) into the field."""
        if self.conductor % src_conductor:
            raise InputError("source conductor must divide the field conductor")
        step = self.conductor // src_conductor
        acc = [0] * self.f
        for i, c in enumerate(coeffs):
            c = int(c) % self.p
            if not c:
                continue
            exp = (self.t * i * step) % self.e1 if self.e1 > 1 else 0
            row = self.xpow[exp]
            for j in range(self.f):
                acc[j] += c * row[j]
        return tuple(v % self.p for v in acc)

    def describe(self) -> dict:
        return {
            "p": self.p,
            "degree": self.f,
            "modulus": list(self.modulus),
            "unit_root_order": self.e1,
        }


def _canonical_factor(e1: int, p: int) -> tuple:
    """Lexicographically smallest irreducible factor of Phi_e1 mod p, ascending."""
    if e1 == 1:
        return ((p - 1) % p, 1)  # x - 1
    x = Symbol("x")
    coeffs_desc = list(reversed(cyclotomic_poly(e1)))
    poly = Poly(coeffs_desc, x, domain=GF(p))
    _, factors = poly.factor_list()
    candidates = []
    for fac, _mult in factors:
        asc = [int(c) % p for c in reversed(fac.all_coeffs())]
        if asc[-1] != 1:
            lead_inv = pow(asc[-1], -1, p)
            asc = [(c * lead_inv) % p for c in asc]
        candidates.append(tuple(asc))
    degrees = {len(c) for c in candidates}
    if len(degrees) != 1:
        raise InternalError("cyclotomic factors mod p have mixed degrees")
    return min(candidates)
