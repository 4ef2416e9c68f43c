"""The groups Z_m^k x| C_2 with the sign acting componentwise:

    ((a_1, ..., a_k), x) ((b_1, ..., b_k), y) = ((a_i + x*b_i)_i, xy).

Deciding spherical equations over this family is NP-complete for fixed
m = 3 or m >= 5, shown by a reduction from exact set cover with subsets of
size at most three.  Conjugation can only flip the sign of a vector part,
so for sign-+1 constants an exact decision is a 2^count sign enumeration.
"""

from .core import (GroupSpec, SphericalEquation, Solution, TooLargeError,
                   MalformedElementError, verify)
from .perm import MalformedInstanceError, InvalidCertificateError


class UnsupportedShapeError(ValueError):
    pass


SIGN_CAP = 24


class SemidirectElement:
    __slots__ = ("vec", "sign", "m")

    def __init__(self, vec, sign, m):
        if sign not in (1, -1):
            raise MalformedElementError("sign must be +-1")
        self.vec = tuple(v % m for v in vec)
        self.sign = sign
        self.m = m

    def __mul__(self, other):
        if self.m != other.m or len(self.vec) != len(other.vec):
            raise MalformedElementError("mixed groups")
        return SemidirectElement(
            tuple(a + self.sign * b for a, b in zip(self.vec, other.vec)),
            self.sign * other.sign, self.m)

    def inverse(self):
        return SemidirectElement(tuple(-self.sign * a for a in self.vec),
                                 self.sign, self.m)

    def __eq__(self, other):
        return (isinstance(other, SemidirectElement)
                and (self.vec, self.sign, self.m)
                == (other.vec, other.sign, other.m))

    def __hash__(self):
        return hash(("sd", self.vec, self.sign, self.m))

    def __repr__(self):
        return f"({list(self.vec)},{self.sign})"


def _check_xcover(k, subsets):
    if k < 1:
        raise MalformedInstanceError("ground set must be nonempty")
    occurrences = {j: 0 for j in range(1, k + 1)}
    for s in subsets:
        s = set(s)
        if not s or len(s) > 3 or not s <= set(range(1, k + 1)):
            raise MalformedInstanceError(f"bad subset {sorted(s)}")
        for j in s:
            occurrences[j] += 1
    if any(c > 3 for c in occurrences.values()):
        raise MalformedInstanceError("some element occurs in more than 3 subsets")


def reduce_xcover(k, subsets, m) -> SphericalEquation:
    """Exact-set-cover instance -> equation over Z_m^(k+ell) x| C_2 with
    2*ell sign-+1 constants and rhs ((2,...,2,1,...,1),1); solvable iff
    some subfamily of the subsets partitions 1..k.

    Constant i and constant ell+i both carry the indicator vector of
    subset A_i on the first k coordinates; constant ell+i additionally
    marks its own tally coordinate k+i.
    """
    if m != 3 and m < 5:
        raise MalformedInstanceError("m must be 3 or at least 5")
    subsets = [set(s) for s in subsets]
    _check_xcover(k, subsets)
    ell = len(subsets)
    dim = k + ell
    spec = GroupSpec("semidirect", m=m, k=dim)
    constants = []
    for s in subsets:
        constants.append(SemidirectElement(
            tuple(1 if j in s else 0 for j in range(1, dim + 1)), 1, m))
    for i, s in enumerate(subsets, start=1):
        vec = [1 if j in s else 0 for j in range(1, k + 1)] + [0] * ell
        vec[k + i - 1] = 1
        constants.append(SemidirectElement(vec, 1, m))
    rhs = SemidirectElement((2,) * k + (1,) * ell, 1, m)
    return SphericalEquation(spec, constants, rhs)


def decide_signvector(eq: SphericalEquation) -> bool:
    """Exact decision for equations whose constants all have sign +1.

    A conjugate of (a, 1) is (a, 1) or (-a, 1) and nothing else, so the
    equation holds iff some choice of signs e_i gives sum e_i a_i = target
    componentwise mod m.
    """
    if eq.group.family != "semidirect":
        raise MalformedElementError("expected a semidirect equation")
    if any(c.sign != 1 for c in eq.constants):
        raise UnsupportedShapeError("constants must all have sign +1")
    m = eq.group.m
    dim = eq.group.k
    if eq.rhs is not None and eq.rhs.sign != 1:
        return False
    target = eq.rhs.vec if eq.rhs is not None else (0,) * dim
    count = len(eq.constants)
    if count > SIGN_CAP:
        raise TooLargeError(f"{count} constants exceeds the 2^{SIGN_CAP} cap")
    vecs = [c.vec for c in eq.constants]
    # walk sign vectors in Gray-code order, updating the running sum by one
    # flipped constant per step
    cur = [sum(v[j] for v in vecs) % m for j in range(dim)]
    flipped = [False] * count
    step = 0
    while True:
        if all(cur[j] == target[j] for j in range(dim)):
            return True
        step += 1
        if step >= 1 << count:
            return False
        b = (step & -step).bit_length() - 1
        d = 2 if flipped[b] else -2
        flipped[b] = not flipped[b]
        v = vecs[b]
        for j in range(dim):
            cur[j] = (cur[j] + d * v[j]) % m


def certificate_to_solution(k, subsets, m, cert) -> Solution:
    """Conjugators realizing an exact-cover certificate for the equation
    produced by reduce_xcover.

    z_i = identity for selected subsets and for the whole second block;
    z_i = beta = (0,-1) for unselected i <= ell.  Every conjugate then has
    sign +1, so the conjugates commute and sum to the target directly.
    """
    subsets = [set(s) for s in subsets]
    _check_xcover(k, subsets)
    ell = len(subsets)
    chosen = set(cert)
    if not chosen <= set(range(1, ell + 1)):
        raise InvalidCertificateError("certificate indexes unknown subsets")
    covered = []
    for i in chosen:
        covered.extend(subsets[i - 1])
    if len(covered) != len(set(covered)):
        raise InvalidCertificateError("selected subsets overlap")
    if set(covered) != set(range(1, k + 1)):
        raise InvalidCertificateError("selected subsets do not cover 1..k")
    dim = k + ell
    ident = SemidirectElement((0,) * dim, 1, m)
    beta = SemidirectElement((0,) * dim, -1, m)
    zs = [ident if i in chosen else beta for i in range(1, ell + 1)]
    zs += [ident] * ell
    sol = Solution(zs)
    assert verify(reduce_xcover(k, subsets, m), sol)
    return sol


def embed_dihedral_power(el: SemidirectElement):
    """The injection Z_m^k x| C_2 -> (Z_m x| C_2)^k repeating the sign."""
    from .dihedral import DihedralElement
    return tuple(DihedralElement(a, el.sign, el.m) for a in el.vec)
