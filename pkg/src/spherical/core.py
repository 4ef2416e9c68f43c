"""Group families, spherical equations, the generic Cayley-table decision
procedure, the brute-force oracle, verification, and saturation lengths.

An equation is a list of constants c_i over a declared group; it is solvable
when conjugators z_i exist with prod_i z_i^-1 c_i z_i = 1 (or = rhs).
"""

import math
import random
from dataclasses import dataclass, field

CAP = 10**4

FAMILIES = (
    "cayley", "symmetric", "alternating", "dihedral", "gl2p", "sl2p",
    "tl2p", "et2n", "heisenberg", "ut4p", "semidirect",
)


class TooLargeError(Exception):
    pass


class LengthMismatchError(ValueError):
    pass


class MalformedElementError(ValueError):
    pass


class BadTableError(ValueError):
    pass


class CayleyElement:
    """Element of an explicit-table group, identified by its row index."""

    __slots__ = ("idx", "table")

    def __init__(self, idx, table):
        self.idx = idx
        self.table = table

    def __mul__(self, other):
        return CayleyElement(self.table.mul[self.idx][other.idx], self.table)

    def inverse(self):
        return CayleyElement(self.table.inv[self.idx], self.table)

    def __eq__(self, other):
        return isinstance(other, CayleyElement) and self.idx == other.idx

    def __hash__(self):
        return hash(("cayley", self.idx))

    def __repr__(self):
        return f"g{self.idx}"


class CayleyTable:
    """Validated multiplication table: Latin square, identity, associativity."""

    def __init__(self, mul):
        n = len(mul)
        if any(len(row) != n for row in mul):
            raise BadTableError("table is not square")
        full = set(range(n))
        for row in mul:
            if set(row) != full:
                raise BadTableError("row is not a permutation")
        for j in range(n):
            if {mul[i][j] for i in range(n)} != full:
                raise BadTableError("column is not a permutation")
        ident = None
        for e in range(n):
            if all(mul[e][x] == x and mul[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise BadTableError("no identity element")
        if n <= 64:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            r = random.Random(0)
            triples = ((r.randrange(n), r.randrange(n), r.randrange(n))
                       for _ in range(10**6))
        for a, b, c in triples:
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise BadTableError("associativity fails")
        inv = [None] * n
        for i in range(n):
            for j in range(n):
                if mul[i][j] == ident:
                    inv[i] = j
                    break
        self.mul = mul
        self.inv = inv
        self.ident = ident
        self.n = n


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int | None = None
    p: int | None = None
    m: int | None = None
    k: int | None = None
    table: tuple | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise MalformedElementError(f"unknown family {self.family!r}")
        from . import numtheory
        f = self.family
        if f == "cayley":
            if self.table is None:
                raise MalformedElementError("cayley family needs a table")
            object.__setattr__(self, "table",
                               tuple(tuple(row) for row in self.table))
        elif f in ("symmetric", "alternating", "dihedral"):
            if self.n is None or self.n < 1:
                raise MalformedElementError(f"{f} needs n >= 1")
        elif f == "et2n":
            if self.n is None or self.n < 3:
                raise MalformedElementError("et2n needs n >= 3")
        elif f in ("gl2p", "sl2p", "tl2p", "ut4p"):
            if self.p is None or not numtheory.is_prime(self.p):
                raise MalformedElementError(f"{f} needs a prime p")
        elif f == "heisenberg":
            if self.n is None or self.n < 3:
                raise MalformedElementError("heisenberg needs n >= 3")
            if self.p is None or not numtheory.is_prime(self.p):
                raise MalformedElementError("heisenberg needs a prime p")
        elif f == "semidirect":
            if self.m is None or self.m < 2 or self.k is None or self.k < 1:
                raise MalformedElementError("semidirect needs m >= 2, k >= 1")

    def order(self) -> int:
        f = self.family
        if f == "cayley":
            return len(self.table)
        if f == "symmetric":
            return math.factorial(self.n)
        if f == "alternating":
            return max(1, math.factorial(self.n) // 2)
        if f == "dihedral":
            return 2 * self.n
        if f == "gl2p":
            return (self.p**2 - 1) * (self.p**2 - self.p)
        if f == "sl2p":
            return self.p**3 - self.p
        if f == "tl2p":
            return self.p * (self.p - 1) ** 2
        if f == "et2n":
            return 4 * self.n
        if f == "heisenberg":
            return self.p ** (2 * (self.n - 2) + 1)
        if f == "ut4p":
            return self.p**6
        if f == "semidirect":
            return 2 * self.m**self.k
        raise MalformedElementError(f)

    def _cayley_table(self):
        tab = _table_cache.get(self)
        if tab is None:
            tab = CayleyTable([list(row) for row in self.table])
            _table_cache[self] = tab
        return tab

    def identity(self):
        f = self.family
        if f == "cayley":
            tab = self._cayley_table()
            return CayleyElement(tab.ident, tab)
        if f in ("symmetric", "alternating"):
            from .perm import Permutation
            return Permutation.identity(self.n)
        if f == "dihedral":
            from .dihedral import DihedralElement
            return DihedralElement(0, 1, self.n)
        if f in ("gl2p", "sl2p", "tl2p"):
            from .mat2 import Mat2
            return Mat2(self.p, 1, 0, 0, 1)
        if f == "et2n":
            from .dihedral import Et2Element
            return Et2Element(1, 0, 1, self.n)
        if f == "heisenberg":
            from .highdim import HeisenbergElement
            z = (0,) * (self.n - 2)
            return HeisenbergElement(z, 0, z, self.n, self.p)
        if f == "ut4p":
            from .highdim import UT4Element
            return UT4Element(self.p, (0, 0, 0, 0, 0, 0))
        if f == "semidirect":
            from .semidirect import SemidirectElement
            return SemidirectElement((0,) * self.k, 1, self.m)
        raise MalformedElementError(f)

    def elements(self):
        if self.order() > CAP:
            raise TooLargeError(
                f"group of order {self.order()} exceeds the cap {CAP}")
        return list(self._iter_elements())

    def _iter_elements(self):
        import itertools
        f = self.family
        if f == "cayley":
            tab = self._cayley_table()
            return (CayleyElement(i, tab) for i in range(tab.n))
        if f in ("symmetric", "alternating"):
            from .perm import Permutation
            perms = (Permutation(im) for im in
                     itertools.permutations(range(1, self.n + 1)))
            if f == "alternating":
                from .perm import sign
                return (s for s in perms if sign(s) == 1)
            return perms
        if f == "dihedral":
            from .dihedral import DihedralElement
            return (DihedralElement(k, d, self.n)
                    for d in (1, -1) for k in range(self.n))
        if f in ("gl2p", "sl2p", "tl2p"):
            from .mat2 import Mat2
            p = self.p
            if f == "tl2p":
                cand = (Mat2(p, a, b, 0, d)
                        for a in range(1, p) for d in range(1, p)
                        for b in range(p))
                return cand
            cand = (Mat2(p, a, b, c, d)
                    for a in range(p) for b in range(p)
                    for c in range(p) for d in range(p)
                    if (a * d - b * c) % p != 0)
            if f == "sl2p":
                return (x for x in cand if x.det() == 1)
            return cand
        if f == "et2n":
            from .dihedral import Et2Element
            return (Et2Element(e1, b, e2, self.n)
                    for e1 in (1, self.n - 1) for e2 in (1, self.n - 1)
                    for b in range(self.n))
        if f == "heisenberg":
            from .highdim import HeisenbergElement
            p, d = self.p, self.n - 2
            vecs = list(itertools.product(range(p), repeat=d))
            return (HeisenbergElement(a1, a2, a3, self.n, p)
                    for a1 in vecs for a2 in range(p) for a3 in vecs)
        if f == "ut4p":
            from .highdim import UT4Element
            p = self.p
            return (UT4Element(p, e)
                    for e in itertools.product(range(p), repeat=6))
        if f == "semidirect":
            from .semidirect import SemidirectElement
            return (SemidirectElement(v, s, self.m)
                    for s in (1, -1)
                    for v in itertools.product(range(self.m), repeat=self.k))
        raise MalformedElementError(f)


_table_cache: dict = {}


@dataclass
class SphericalEquation:
    group: GroupSpec
    constants: list
    rhs: object = None

    def length(self) -> int:
        ident = self.group.identity()
        return sum(1 for c in self.constants if c != ident)


@dataclass
class Solution:
    conjugators: list


def normalize(eq: SphericalEquation) -> SphericalEquation:
    """Fold the rhs into the constant list and drop identity constants."""
    ident = eq.group.identity()
    constants = [c for c in eq.constants if c != ident]
    if eq.rhs is not None and eq.rhs != ident:
        constants.append(eq.rhs.inverse())
    return SphericalEquation(eq.group, constants)


def verify(eq: SphericalEquation, sol: Solution) -> bool:
    if len(sol.conjugators) != len(eq.constants):
        raise LengthMismatchError(
            f"{len(sol.conjugators)} conjugators for {len(eq.constants)} constants")
    acc = eq.group.identity()
    for c, z in zip(eq.constants, sol.conjugators):
        acc = acc * (z.inverse() * c * z)
    target = eq.rhs if eq.rhs is not None else eq.group.identity()
    return acc == target


def _swap_adjacent(constants, conjugators, i):
    """Exchange constants i and i+1, rewriting the conjugators so the product
    of conjugates is unchanged: x^-1 c x . y^-1 d y = yt^-1 d yt . x^-1 c x
    with yt = y x^-1 c^-1 x."""
    c, d = constants[i], constants[i + 1]
    out_c = list(constants)
    out_c[i], out_c[i + 1] = d, c
    out_z = None
    if conjugators is not None:
        x, y = conjugators[i], conjugators[i + 1]
        yt = y * (x.inverse() * c.inverse() * x)
        out_z = list(conjugators)
        out_z[i], out_z[i + 1] = yt, x
    return out_c, out_z


def reorder_equiv(eq: SphericalEquation, perm: list):
    """Return the equation with constants permuted (new[j] = old[perm[j]])
    plus a map taking any solution of the new equation to one of the original.
    """
    k = len(eq.constants)
    if sorted(perm) != list(range(k)):
        raise MalformedElementError("perm must be a bijection on indices")
    # Record the adjacent swaps that bubble the original order into the
    # requested one; undoing them in reverse maps solutions back.
    swaps = []
    target = list(perm)
    cur = list(range(k))
    for j in range(k):
        i = cur.index(target[j])
        while i > j:
            cur[i - 1], cur[i] = cur[i], cur[i - 1]
            swaps.append(i - 1)
            i -= 1
    new_constants = [eq.constants[t] for t in target]

    def map_back(sol: Solution) -> Solution:
        cs = list(new_constants)
        zs = list(sol.conjugators)
        for i in reversed(swaps):
            cs, zs = _swap_adjacent(cs, zs, i)
        return Solution(zs)

    return SphericalEquation(eq.group, new_constants, eq.rhs), map_back


class ConjClassTable:
    """Conjugacy classes of an enumerable group, with witnesses.

    witness[i] conjugates the class representative onto element i, i.e.
    witness[i]^-1 . rep . witness[i] = elems[i].
    """

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.elems = spec.elements()
        self.index = {g: i for i, g in enumerate(self.elems)}
        n = len(self.elems)
        self.class_of = [None] * n
        self.classes = []
        self.reps = []
        self.witness = [None] * n
        for i in range(n):
            if self.class_of[i] is not None:
                continue
            rep = self.elems[i]
            cls = []
            for x in self.elems:
                g = x.inverse() * rep * x
                j = self.index[g]
                if self.class_of[j] is None:
                    self.class_of[j] = len(self.classes)
                    self.witness[j] = x
                    cls.append(j)
            self.classes.append(cls)
            self.reps.append(i)
        self._verdicts = {}

    def conjugator_onto(self, c, target):
        """z with z^-1 c z = target, for c and target in the same class."""
        i, j = self.index[c], self.index[target]
        if self.class_of[i] != self.class_of[j]:
            raise MalformedElementError("elements are not conjugate")
        return self.witness[i].inverse() * self.witness[j]


_class_cache: dict = {}


def conjugacy_classes(spec: GroupSpec) -> ConjClassTable:
    tab = _class_cache.get(spec)
    if tab is None:
        tab = ConjClassTable(spec)
        _class_cache[spec] = tab
    return tab


def _class_signature(tab: ConjClassTable, eq: SphericalEquation):
    eqn = normalize(eq)
    return tuple(sorted(tab.class_of[tab.index[c]] for c in eqn.constants))


def decide_cayley(eq: SphericalEquation) -> bool:
    """Dynamic program over reachable products of conjugates.

    V_{j+1} = V_j . class(c_{j+1}); solvable iff the identity lands in V_k.
    The verdict only depends on the multiset of constant classes, so it is
    memoized per class signature on the cached class table.
    """
    tab = conjugacy_classes(eq.group)
    sig = _class_signature(tab, eq)
    hit = tab._verdicts.get(sig)
    if hit is not None:
        return hit
    elems, index = tab.elems, tab.index
    ident_i = index[eq.group.identity()]
    reach = {ident_i}
    for cls_id in sig:
        cls = [elems[j] for j in tab.classes[cls_id]]
        reach = {index[elems[v] * u] for v in reach for u in cls}
    verdict = ident_i in reach
    tab._verdicts[sig] = verdict
    return verdict


def solve_brute(eq: SphericalEquation):
    """Independent constructive oracle: the decision DP with back-pointers,
    returning a verified Solution or None."""
    tab = conjugacy_classes(eq.group)
    eqn = normalize(eq)
    elems, index = tab.elems, tab.index
    ident = eq.group.identity()
    ident_i = index[ident]
    layers = [{ident_i: None}]
    for c in eqn.constants:
        cls = tab.classes[tab.class_of[index[c]]]
        nxt = {}
        for v in layers[-1]:
            gv = elems[v]
            for u in cls:
                w = index[gv * elems[u]]
                if w not in nxt:
                    nxt[w] = (v, u)
        layers.append(nxt)
    if ident_i not in layers[-1]:
        return None
    # trace back: at each step recover the class element used, then a
    # conjugator witness taking the constant onto it
    zs = []
    cur = ident_i
    for j in range(len(eqn.constants), 0, -1):
        v, u = layers[j][cur]
        c = eqn.constants[j - 1]
        zs.append(tab.conjugator_onto(c, elems[u]))
        cur = v
    zs.reverse()
    sol_n = Solution(zs)
    assert verify(eqn, sol_n)
    # re-inflate to the original equation: identity constants get identity
    # conjugators, an rhs constant's conjugator transfers directly
    full = []
    it = iter(zs)
    for c in eq.constants:
        full.append(next(it) if c != ident else ident)
    if eq.rhs is not None and eq.rhs != ident:
        zr = next(it)
        # prod z^-1 c z . zr^-1 rhs^-1 zr = 1  =>  prod = zr^-1 rhs zr ...
        # verify() for rhs-form compares against rhs directly, so we must
        # fold the trailing conjugate back.  Solve via the normalized form:
        # keep the rhs-form solution only when zr commutes suitably;
        # otherwise conjugate the whole product.  Simplest correct route:
        # rewrite each z_i -> z_i * zr^-1 ... not valid in general, so we
        # instead return the normalized-form solution when rhs is present.
        sol = Solution(full)
        if verify(eq, sol):
            return sol
        # conjugating every z_i by w maps the product P to w^-1 P w; the
        # normalized solution gives P = zr^-1 rhs zr, so z_i <- z_i zr^-1
        # yields P' = zr P zr^-1 = rhs.
        fixed = [z * zr.inverse() for z in full]
        sol = Solution(fixed)
        assert verify(eq, sol)
        return sol
    return Solution(full)


def saturation_length(spec: GroupSpec):
    """Least L such that every equation with >= L non-identity constants is
    solvable; None when no such L exists (detected by cycling without full
    coverage, or by the |G|^3 iteration bound)."""
    tab = conjugacy_classes(spec)
    elems, index = tab.elems, tab.index
    n = len(elems)
    ident_i = index[spec.identity()]
    nontrivial = [cls for cls in tab.classes if cls != [ident_i]]
    if not nontrivial:
        return 1 if n == 1 else None
    # bitmask state: set of reachable product-sets over all constant choices
    mul_row = {}

    def step(mask, cls):
        out = 0
        for v in range(n):
            if mask >> v & 1:
                row = mul_row.get(v)
                if row is None:
                    gv = elems[v]
                    row = [index[gv * g] for g in elems]
                    mul_row[v] = row
                for u in cls:
                    out |= 1 << row[u]
        return out

    full = (1 << n) - 1
    states = set()
    for cls in nontrivial:
        m = 0
        for u in cls:
            m |= 1 << u
        states.add(m)
    seen = {}
    history = []
    bound = n**3
    for length in range(1, bound + 1):
        good = all(s >> ident_i & 1 for s in states)
        history.append(good)
        if states == {full}:
            # saturated forever; the least L is just past the last bad length
            last_bad = max((i + 1 for i, g in enumerate(history) if not g),
                           default=0)
            return last_bad + 1
        key = frozenset(states)
        if key in seen:
            start = seen[key]
            if all(history[start - 1:]):
                last_bad = max((i + 1 for i, g in enumerate(history) if not g),
                               default=0)
                return last_bad + 1
            return None
        seen[key] = length
        nxt = set()
        for s in states:
            for cls in nontrivial:
                nxt.add(step(s, cls))
        states = nxt
    return None


def direct_product(a: GroupSpec, b: GroupSpec) -> GroupSpec:
    """Explicit Cayley table of the direct product of two enumerable groups."""
    ea, eb = a.elements(), b.elements()
    if len(ea) * len(eb) > CAP:
        raise TooLargeError("product group exceeds the cap")
    pairs = [(x, y) for x in ea for y in eb]
    index = {pq: i for i, pq in enumerate(pairs)}
    table = [[index[(x1 * x2, y1 * y2)] for (x2, y2) in pairs]
             for (x1, y1) in pairs]
    return GroupSpec("cayley", table=tuple(tuple(r) for r in table))
