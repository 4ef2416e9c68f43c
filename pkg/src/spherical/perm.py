"""Symmetric and alternating groups: cycle machinery, conjugacy, and the
3-Partition reduction with its certificate-to-solution map.

Points are 1-based.  Composition applies the right factor first:
(s * t)(i) = s(t(i)), so x.inverse() * s * x relabels the cycles of s
through x^-1.
"""

from .core import GroupSpec, SphericalEquation, Solution


class DegreeMismatchError(ValueError):
    pass


class NotConjugateError(ValueError):
    pass


class MalformedInstanceError(ValueError):
    pass


class InvalidCertificateError(ValueError):
    pass


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("images must be a bijection on 1..n")
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def from_cycle(cls, points, n):
        images = list(range(1, n + 1))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
        return cls(images)

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def __mul__(self, other):
        if self.n != other.n:
            raise DegreeMismatchError("degrees differ")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self):
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = cycle_decompose(self)
        if not cyc:
            return f"id{self.n}"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def cycle_decompose(s: Permutation):
    """Disjoint cycles of length >= 2, each starting at its minimum, sorted
    by minimum."""
    seen = [False] * s.n
    cycles = []
    for start in range(1, s.n + 1):
        if seen[start - 1] or s(start) == start:
            continue
        cyc = []
        i = start
        while not seen[i - 1]:
            seen[i - 1] = True
            cyc.append(i)
            i = s(i)
        cycles.append(tuple(cyc))
    return cycles


def mov(s: Permutation):
    return {i for i in range(1, s.n + 1) if s(i) != i}


def sign(s: Permutation) -> int:
    even_cycles = sum(1 for c in cycle_decompose(s) if len(c) % 2 == 0)
    return -1 if even_cycles % 2 else 1


def cycle_type(s: Permutation):
    return tuple(sorted(len(c) for c in cycle_decompose(s)))


def conjugate_check(s: Permutation, t: Permutation) -> bool:
    if s.n != t.n:
        raise DegreeMismatchError("degrees differ")
    return cycle_type(s) == cycle_type(t)


def conjugator(s: Permutation, t: Permutation) -> Permutation:
    """x with x^-1 s x = t, by aligning canonical cycle decompositions."""
    if not conjugate_check(s, t):
        raise NotConjugateError(f"{s!r} and {t!r} are not conjugate")
    cs = sorted(cycle_decompose(s), key=len)
    ct = sorted(cycle_decompose(t), key=len)
    images = [0] * s.n
    for a, b in zip(ct, cs):
        for pa, pb in zip(a, b):
            images[pa - 1] = pb
    fixed_t = sorted(set(range(1, s.n + 1)) - {p for c in ct for p in c})
    fixed_s = sorted(set(range(1, s.n + 1)) - {p for c in cs for p in c})
    for pa, pb in zip(fixed_t, fixed_s):
        images[pa - 1] = pb
    return Permutation(images)


def _check_3partition(a):
    if len(a) % 3 != 0 or not a:
        raise MalformedInstanceError("need 3k positive integers")
    k = len(a) // 3
    total = sum(a)
    if total % k != 0:
        raise MalformedInstanceError("sum must be divisible by k")
    ell = total // k
    for x in a:
        if not (4 * x > ell and 4 * x < 2 * ell):
            raise MalformedInstanceError(f"value {x} outside (L/4, L/2) for L={ell}")
    return k, ell


def _blocks_rhs(k, ell, n):
    """Product of k disjoint (L+1)-cycles filling the first k(L+1) points."""
    rhs = Permutation.identity(n)
    for i in range(k):
        off = i * (ell + 1)
        rhs = rhs * Permutation.from_cycle(
            tuple(range(off + 1, off + ell + 2)), n)
    return rhs


def reduce_3partition(a) -> SphericalEquation:
    """Equation over S_n, n = k(L+1): constants are (a_i+1)-cycles on the
    initial segment, rhs is a product of k disjoint (L+1)-cycles; solvable
    iff the 3-Partition instance is positive."""
    a = list(a)
    k, ell = _check_3partition(a)
    n = k * (ell + 1)
    spec = GroupSpec("symmetric", n=n)
    constants = [Permutation.from_cycle(tuple(range(1, x + 2)), n) for x in a]
    return SphericalEquation(spec, constants, _blocks_rhs(k, ell, n))


def reduce_3partition_an(a) -> SphericalEquation:
    """A_n variant: values doubled so all cycles have odd length, with two
    spare fixed points (n = k(L+1) + 2)."""
    a2 = [2 * x for x in a]
    k, ell = _check_3partition(a2)
    n = k * (ell + 1) + 2
    spec = GroupSpec("alternating", n=n)
    constants = [Permutation.from_cycle(tuple(range(1, x + 2)), n) for x in a2]
    return SphericalEquation(spec, constants, _blocks_rhs(k, ell, n))


def certificate_to_solution(a, cert, alternating=False) -> Solution:
    """Conjugators realizing a positive 3-Partition certificate.

    cert is a list of index triples (0-based into a) partitioning 1..3k;
    triple i is sent to the i-th (L+1)-block: its three cycles are conjugated
    onto consecutive overlapping segments so their product telescopes into
    the block cycle.
    """
    a = [2 * x for x in a] if alternating else list(a)
    k, ell = _check_3partition(a)
    n = k * (ell + 1) + (2 if alternating else 0)
    # segments must meet the constants in equation order, so each triple is
    # used in ascending index order (blocks commute across triples)
    triples = [tuple(sorted(t)) for t in cert]
    flat = sorted(i for t in triples for i in t)
    if flat != list(range(3 * k)) or any(len(t) != 3 for t in triples):
        raise InvalidCertificateError("certificate must partition the indices")
    for t in triples:
        if sum(a[i] for i in t) != ell:
            raise InvalidCertificateError(f"triple {t} does not sum to L={ell}")
    zs = [None] * (3 * k)
    for i, t in enumerate(triples):
        off = i * (ell + 1)
        start = off + 1
        for idx in t:
            seg = tuple(range(start, start + a[idx] + 1))
            c = Permutation.from_cycle(tuple(range(1, a[idx] + 2)), n)
            z = conjugator(c, Permutation.from_cycle(seg, n))
            if alternating and sign(z) == -1:
                # the two spare points are fixed by c, so swapping them
                # commutes with c and flips the conjugator's sign
                z = z * Permutation.from_cycle((n - 1, n), n)
            zs[idx] = z
            start += a[idx]
    return Solution(zs)
