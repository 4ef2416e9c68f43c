"""Dihedral groups D_n as pairs (k, delta), delta = +-1 a reflection flag:
(k1, d1)(k2, d2) = (k1 + d1*k2, d1*d2).

Solvability of prod z_i^-1 c_i z_i = 1 over D_n has a closed criterion:
the reflection signs must multiply to 1, and then either all constants are
rotations and some signed sum of the a_i vanishes mod n, or there are at
least two reflections and (n odd, or an even number of odd a_i).
"""

from .core import (GroupSpec, SphericalEquation, Solution,
                   MalformedElementError, normalize, verify)


class DihedralElement:
    __slots__ = ("k", "delta", "n")

    def __init__(self, k, delta, n):
        if delta not in (1, -1):
            raise MalformedElementError("delta must be +-1")
        self.k = k % n
        self.delta = delta
        self.n = n

    def __mul__(self, other):
        if self.n != other.n:
            raise MalformedElementError("mixed moduli")
        return DihedralElement(self.k + self.delta * other.k,
                               self.delta * other.delta, self.n)

    def inverse(self):
        return DihedralElement(-self.delta * self.k, self.delta, self.n)

    def __eq__(self, other):
        return (isinstance(other, DihedralElement)
                and (self.k, self.delta, self.n) == (other.k, other.delta, other.n))

    def __hash__(self):
        return hash((self.k, self.delta, self.n))

    def __repr__(self):
        return f"({self.k},{self.delta})"


class Et2Element:
    """Upper triangular [[e1, b], [0, e2]] over Z_n with diagonal +-1."""

    __slots__ = ("e1", "b", "e2", "n")

    def __init__(self, e1, b, e2, n):
        self.e1 = e1 % n
        self.b = b % n
        self.e2 = e2 % n
        self.n = n
        if self.e1 not in (1 % n, n - 1) or self.e2 not in (1 % n, n - 1):
            raise MalformedElementError("diagonal entries must be +-1 mod n")

    def __mul__(self, other):
        n = self.n
        return Et2Element(self.e1 * other.e1,
                          self.e1 * other.b + self.b * other.e2,
                          self.e2 * other.e2, n)

    def inverse(self):
        return Et2Element(self.e1, -self.e1 * self.b * self.e2, self.e2, self.n)

    def __eq__(self, other):
        return (isinstance(other, Et2Element)
                and (self.e1, self.b, self.e2, self.n)
                == (other.e1, other.b, other.e2, other.n))

    def __hash__(self):
        return hash(("et2", self.e1, self.b, self.e2, self.n))

    def __repr__(self):
        return f"[[{self.e1},{self.b}],[0,{self.e2}]]"


def _prepare(eq: SphericalEquation):
    if eq.group.family != "dihedral":
        raise MalformedElementError("expected a dihedral equation")
    eqn = normalize(eq)
    n = eq.group.n
    for c in eqn.constants:
        if not isinstance(c, DihedralElement) or c.n != n:
            raise MalformedElementError(f"bad constant {c!r}")
    return eqn, n


def _signed_sum_dp(values, n):
    """Back-traced DP for signs e_i with sum e_i * v_i = 0 mod n, or None."""
    parent = {0: None}
    layers = [parent]
    for v in values:
        nxt = {}
        for r in layers[-1]:
            for e in (1, -1):
                r2 = (r + e * v) % n
                if r2 not in nxt:
                    nxt[r2] = (r, e)
        layers.append(nxt)
    if 0 not in layers[-1]:
        return None
    signs = []
    r = 0
    for j in range(len(values), 0, -1):
        r, e = layers[j][r]
        signs.append(e)
    signs.reverse()
    return signs


def decide_dn(eq: SphericalEquation) -> bool:
    eqn, n = _prepare(eq)
    cs = eqn.constants
    if not cs:
        return True
    prod_delta = 1
    for c in cs:
        prod_delta *= c.delta
    if prod_delta != 1:
        return False
    if all(c.delta == 1 for c in cs):
        return _signed_sum_dp([c.k for c in cs], n) is not None
    if n % 2 == 1:
        return True
    return sum(c.k % 2 for c in cs) % 2 == 0


def solve_dn(eq: SphericalEquation):
    """Explicit conjugators for solvable equations.

    All-rotation case: z_i = (0, e_i) from the signed-sum back-trace.
    Reflection case: with z_l = (h_l, g_l) the product's rotation component
    is sum D^(l-1) g_l a_l - sum_{refl} 2 D^(l-1) g_l h_l where D^(l-1) is
    the running product of the constants' deltas; choosing g_l = D^(l-1)
    reduces it to sum a_l - 2h at a single reflection slot, solved for h.
    """
    eqn, n = _prepare(eq)
    cs = eqn.constants
    if not decide_dn(eq):
        return None
    if all(c.delta == 1 for c in cs):
        signs = _signed_sum_dp([c.k for c in cs], n)
        zs = [DihedralElement(0, e, n) for e in signs]
    else:
        total = sum(c.k for c in cs) % n
        # 2h = total mod n: n odd inverts 2; n even has total even here
        if n % 2 == 1:
            h = total * pow(2, -1, n) % n
        else:
            h = total // 2
        # with g_l = D^(l-1) every coefficient D^(l-1) g_l is 1, so the h
        # at the first reflection slot enters the sum as plain -2h
        delta_prefix = 1
        zs = []
        placed = False
        for c in cs:
            hl = 0
            if not placed and c.delta == -1:
                hl = h
                placed = True
            zs.append(DihedralElement(hl, delta_prefix, n))
            delta_prefix *= c.delta
    sol = Solution(zs)
    assert verify(eqn, sol)
    return _reinflate(eq, eqn, sol)


def _reinflate(eq, eqn, sol):
    """Map a solution of the normalized equation back to the original."""
    ident = eq.group.identity()
    it = iter(sol.conjugators)
    full = [next(it) if c != ident else ident for c in eq.constants]
    if eq.rhs is not None and eq.rhs != ident:
        zr = next(it)
        fixed = Solution([z * zr.inverse() for z in full])
        assert verify(eq, fixed)
        return fixed
    out = Solution(full)
    assert verify(eq, out)
    return out


def reduce_partition(a) -> SphericalEquation:
    """Partition instance -> rotation constants (a_i, 1) over D_n with
    n = 1 + sum(a); solvable iff the instance splits into equal halves."""
    a = list(a)
    if not a or any(x < 1 for x in a):
        raise MalformedElementError("need positive integers")
    n = 1 + sum(a)
    spec = GroupSpec("dihedral", n=n)
    return SphericalEquation(spec, [DihedralElement(x, 1, n) for x in a])


def embed_et2(el: DihedralElement) -> Et2Element:
    """The injection D_n -> ET(2,n) sending r to [[1,1],[0,1]] and s to
    [[1,0],[0,-1]]: (k, delta) -> [[1, delta*k], [0, delta]]."""
    if el.delta == 1:
        return Et2Element(1, el.k, 1, el.n)
    return Et2Element(1, -el.k, el.n - 1, el.n)
