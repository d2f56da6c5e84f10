"""Finite permutation groups and their subgroup conjugacy classes.

Groups keep an explicit, canonically ordered element list (no stabilizer
chains); everything downstream relies on the resulting deterministic
element and class indices.  Instances are immutable after construction and
deduplicated through a registry keyed by the element set, so a subgroup
viewed as a group of its own is always the same object no matter which
parent it was carved out of.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .perms import Perm

DEFAULT_MAX_ORDER = 200


class GroupTooLargeError(ValueError):
    """Raised when a closure would exceed the configured order cap."""


# canonical FiniteGroup per element set: (degree, sorted image tuples) -> group
_REGISTRY: dict[tuple, "FiniteGroup"] = {}


class FiniteGroup:
    """Finite permutation group with canonically ordered elements.

    Elements are sorted by their image tuples, which puts the identity at
    index 0.  All group data (multiplication, inverses, conjugacy classes,
    subgroup classes) is expressed in element indices.
    """

    def __init__(self, elements, generators=(), spec=None):
        elements = sorted(set(elements))
        if not elements:
            raise ValueError("a group needs at least the identity")
        self.degree = elements[0].degree
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.index: dict[Perm, int] = {p: i for i, p in enumerate(self.elements)}
        self.generators: tuple[Perm, ...] = tuple(generators)
        n = len(self.elements)
        ident = Perm.identity(self.degree)
        if ident not in self.index or self.index[ident] != 0:
            raise ValueError("element list is not a group (identity missing or misplaced)")
        self.identity = 0
        mul = []
        for p in self.elements:
            row = tuple(self.index[p * q] for q in self.elements)
            mul.append(row)
        self._mul = tuple(mul)
        self._inv = tuple(self.index[p.inverse()] for p in self.elements)
        self._order_of = tuple(p.order() for p in self.elements)
        if spec is None:
            spec = "perm:%d:[%s]" % (self.degree,
                                     ";".join(g.cycle_string() for g in self.minimal_generators()))
        self.spec = spec
        # lazy caches
        self._element_classes = None
        self._subgroup_classes = None
        self._class_of_members: dict[frozenset, int] | None = None
        self._normalizers: dict[tuple, tuple] = {}
        self._scratch: dict = {}

    # -- construction ---------------------------------------------------

    @staticmethod
    def from_elements(elements, generators=(), spec=None) -> FiniteGroup:
        """Canonical group for this element set (registry-deduplicated)."""
        elements = sorted(set(elements))
        key = (elements[0].degree if elements else 0, tuple(p.images for p in elements))
        got = _REGISTRY.get(key)
        if got is None:
            got = FiniteGroup(elements, generators=generators, spec=spec)
            _REGISTRY[key] = got
        return got

    # -- basic structure ------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self._mul[i][j]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def conj(self, i: int, g: int) -> int:
        """g i g^-1."""
        return self._mul[self._mul[g][i]][self._inv[g]]

    def element_order(self, i: int) -> int:
        return self._order_of[i]

    def exponent(self) -> int:
        return math.lcm(*self._order_of)

    def is_abelian(self) -> bool:
        return all(self._mul[i][j] == self._mul[j][i]
                   for i in range(self.order) for j in range(i))

    def minimal_generators(self) -> tuple[Perm, ...]:
        """Greedy generating set in canonical element order (deterministic)."""
        gens: list[int] = []
        have = frozenset([self.identity])
        for i in range(1, self.order):
            if i not in have:
                gens.append(i)
                have = self.closure(gens)
        return tuple(self.elements[i] for i in gens)

    def closure(self, seed) -> frozenset:
        """Subgroup generated by the given element indices."""
        gens = [i for i in seed if i != self.identity]
        members = {self.identity}
        members.update(gens)
        frontier = list(members)
        while frontier:
            new = []
            for x in frontier:
                row = self._mul[x]
                for g in gens:
                    y = row[g]
                    if y not in members:
                        members.add(y)
                        new.append(y)
            frontier = new
        return frozenset(members)

    # -- conjugacy classes of elements -----------------------------------

    def element_classes(self):
        """Conjugacy classes of elements, sorted by (element order, min index).

        Returns (classes, class_of, reps): classes is a tuple of sorted index
        tuples, class_of maps element index -> class id, reps are the minimal
        members.
        """
        if self._element_classes is None:
            seen = [False] * self.order
            raw = []
            for i in range(self.order):
                if seen[i]:
                    continue
                cls = {self.conj(i, g) for g in range(self.order)}
                for x in cls:
                    seen[x] = True
                raw.append(tuple(sorted(cls)))
            raw.sort(key=lambda c: (self._order_of[c[0]], c[0]))
            class_of = [0] * self.order
            for cid, cls in enumerate(raw):
                for x in cls:
                    class_of[x] = cid
            reps = tuple(c[0] for c in raw)
            self._element_classes = (tuple(raw), tuple(class_of), reps)
        return self._element_classes

    # -- subgroups --------------------------------------------------------

    def subgroup(self, members) -> Subgroup:
        return Subgroup(self, tuple(sorted(members)))

    def trivial_subgroup(self) -> Subgroup:
        return self.subgroup([self.identity])

    def full_subgroup(self) -> Subgroup:
        return self.subgroup(range(self.order))

    def conjugate_members(self, members: frozenset, g: int) -> frozenset:
        return frozenset(self.conj(m, g) for m in members)

    def cyclic_subgroups(self) -> list[frozenset]:
        """All cyclic subgroups, as member sets, deduplicated."""
        out = set()
        for i in range(self.order):
            powers = {self.identity}
            x = i
            while x != self.identity:
                powers.add(x)
                x = self._mul[x][i]
            out.add(frozenset(powers))
        return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))

    def subgroup_classes(self) -> tuple[SubgroupClass, ...]:
        """Conjugacy classes of subgroups, sorted by (order, canonical member set).

        Enumeration: all cyclic subgroups, then joins of class representatives
        with cyclic subgroups until a fixpoint.  Every subgroup is a join of
        cyclic ones, and joining conjugates lands in the same class, so the
        fixpoint is exhaustive.
        """
        if self._subgroup_classes is not None:
            return self._subgroup_classes
        cyclics = self.cyclic_subgroups()
        seen: dict[frozenset, int] = {}
        raw_classes: list[tuple[tuple, ...]] = []

        def add_class(members: frozenset) -> bool:
            if members in seen:
                return False
            conjs = {self.conjugate_members(members, g) for g in range(self.order)}
            cid = len(raw_classes)
            for c in conjs:
                seen[c] = cid
            raw_classes.append(tuple(sorted((tuple(sorted(c)) for c in conjs))))
            return True

        work = []
        for c in cyclics:
            if add_class(c):
                work.append(raw_classes[-1][0])
        while work:
            rep = work.pop(0)
            rep_set = frozenset(rep)
            for c in cyclics:
                if c <= rep_set:
                    continue
                join = self.closure(rep_set | c)
                if add_class(join):
                    work.append(raw_classes[-1][0])

        raw_classes.sort(key=lambda cls: (len(cls[0]), cls[0]))
        out = []
        for cid, cls in enumerate(raw_classes):
            rep = self.subgroup(cls[0])
            norm = self.subgroup(self._normalizer_members(frozenset(cls[0])))
            nu = norm.order // rep.order
            out.append(SubgroupClass(
                id=cid,
                representative=rep,
                class_members=tuple(self.subgroup(m) for m in cls),
                normalizer=norm,
                nu=nu,
            ))
        self._subgroup_classes = tuple(out)
        self._class_of_members = {frozenset(s.members): c.id
                                  for c in out for s in c.class_members}
        return self._subgroup_classes

    def class_id_of(self, members) -> int:
        """Conjugacy class id of a subgroup given by its member set."""
        if self._class_of_members is None:
            self.subgroup_classes()
        return self._class_of_members[frozenset(members)]

    def _normalizer_members(self, members: frozenset) -> tuple:
        key = tuple(sorted(members))
        got = self._normalizers.get(key)
        if got is None:
            got = tuple(g for g in range(self.order)
                        if self.conjugate_members(members, g) == members)
            self._normalizers[key] = got
        return got

    def __repr__(self):
        return "FiniteGroup(order=%d, degree=%d, spec=%r)" % (self.order, self.degree, self.spec)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted member indices in the parent group."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        mem = frozenset(self.members)
        G = self.parent
        if G.identity not in mem:
            raise ValueError("subgroup must contain the identity")
        for a in self.members:
            if G.inv(a) not in mem:
                raise ValueError("member set not closed under inverse")
            for b in self.members:
                if G.mul(a, b) not in mem:
                    raise ValueError("member set not closed under product")
        if G.order % len(self.members):
            raise ValueError("Lagrange violation: %d does not divide %d"
                             % (len(self.members), G.order))

    @property
    def order(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def as_group(self) -> FiniteGroup:
        """This subgroup as a standalone group of the same degree."""
        G = self.parent
        return FiniteGroup.from_elements([G.elements[i] for i in self.members])

    def to_parent_index(self, i: int) -> int:
        """Index in the parent of element i of as_group()."""
        return self.parent.index[self.as_group().elements[i]]

    def from_parent_members(self, members) -> tuple[int, ...]:
        """Translate parent element indices (inside self) to as_group() indices."""
        H = self.as_group()
        G = self.parent
        return tuple(sorted(H.index[G.elements[m]] for m in members))

    def to_parent_members(self, sub_members) -> tuple[int, ...]:
        """Translate as_group() element indices to parent indices."""
        H = self.as_group()
        G = self.parent
        return tuple(sorted(G.index[H.elements[m]] for m in sub_members))

    def conjugate(self, g: int) -> Subgroup:
        return self.parent.subgroup(self.parent.conjugate_members(self.member_set(), g))

    def normalizer(self) -> Subgroup:
        return self.parent.subgroup(self.parent._normalizer_members(self.member_set()))

    def contains(self, i: int) -> bool:
        return i in self.member_set()

    def is_cyclic(self) -> bool:
        return any(self.parent.element_order(i) == self.order for i in self.members)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))


@dataclass(frozen=True, eq=False)
class SubgroupClass:
    """A conjugacy class of subgroups with its normalizer data."""

    id: int
    representative: Subgroup
    class_members: tuple[Subgroup, ...]
    normalizer: Subgroup
    nu: int  # |N_G(H)| / |H|

    @property
    def order(self) -> int:
        return self.representative.order


def generate_group(degree: int, generators, max_order: int = DEFAULT_MAX_ORDER,
                   spec: str | None = None) -> FiniteGroup:
    """Close a generator list under composition, refusing past max_order."""
    gens = list(generators)
    for g in gens:
        if g.degree != degree:
            raise ValueError("generator degree %d does not match %d" % (g.degree, degree))
    elements = {Perm.identity(degree)}
    elements.update(gens)
    frontier = list(elements)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elements:
                    elements.add(y)
                    new.append(y)
                    if len(elements) > max_order:
                        raise GroupTooLargeError("group too large")
        frontier = new
    return FiniteGroup.from_elements(elements, generators=gens, spec=spec)


def subgroup_classes(G: FiniteGroup) -> tuple[SubgroupClass, ...]:
    return G.subgroup_classes()


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> tuple[int, ...]:
    """Minimal-element representatives of the double cosets H\\G/K."""
    if H.parent is not G or K.parent is not G:
        raise ValueError("subgroups must live in the given group")
    seen = [False] * G.order
    reps = []
    for g in range(G.order):
        if seen[g]:
            continue
        reps.append(g)
        for h in H.members:
            hg = G.mul(h, g)
            for k in K.members:
                seen[G.mul(hg, k)] = True
    return tuple(reps)


def is_cyclic_coprime(H: Subgroup, p: int) -> bool:
    """True iff H is cyclic and (p == 0 or gcd(|H|, p) == 1)."""
    if p != 0 and not _is_prime(p):
        raise ValueError("invalid characteristic: %d" % p)
    if not H.is_cyclic():
        return False
    return p == 0 or math.gcd(H.order, p) == 1


def is_p_hypoelementary(H: Subgroup, p: int) -> bool:
    """True iff H = P x| C with P a normal p-subgroup and C cyclic coprime to p.

    Decided by: the p-Sylow subgroup is normal and H/P is cyclic.  A normal
    Sylow subgroup is exactly the set of elements of p-power order, so we
    test that set for being a subgroup of full p-part size.
    """
    if not _is_prime(p):
        raise ValueError("invalid characteristic: %d" % p)
    G = H.parent
    n = H.order
    p_part = 1
    while n % p == 0:
        p_part *= p
        n //= p
    torsion = frozenset(m for m in H.members if _is_p_power(G.element_order(m), p))
    if len(torsion) != p_part:
        return False  # Sylow not normal (or not unique)
    if any(G.mul(a, b) not in torsion for a in torsion for b in torsion):
        return False
    # quotient H/P is cyclic iff some single element generates H over P
    mem = H.member_set()
    for h in H.members:
        if G.closure(torsion | {h}) == mem:
            return True
    return False


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# -- named group families ----------------------------------------------------


def cyclic_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise ValueError("C%d is not a group" % n)
    if n == 1:
        return generate_group(1, [], max_order, spec="C1")
    gen = Perm.from_cycles(n, [tuple(range(n))])
    return generate_group(n, [gen], max_order, spec="C%d" % n)


def symmetric_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise ValueError("S%d is not a group" % n)
    if n == 1:
        return generate_group(1, [], max_order, spec="S1")
    gens = [Perm.from_cycles(n, [(0, 1)])]
    if n > 2:
        gens.append(Perm.from_cycles(n, [tuple(range(n))]))
    return generate_group(n, gens, max_order, spec="S%d" % n)


def alternating_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise ValueError("A%d is not a group" % n)
    if n <= 2:
        return generate_group(max(n, 1), [], max_order, spec="A%d" % n)
    gens = [Perm.from_cycles(n, [(0, 1, 2)])]
    if n > 3:
        if n % 2:
            gens.append(Perm.from_cycles(n, [tuple(range(n))]))
        else:
            gens.append(Perm.from_cycles(n, [tuple(range(1, n))]))
    return generate_group(n, gens, max_order, spec="A%d" % n)


def dihedral_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Dihedral group of order 2n (D1 = C2, D2 = C2xC2 on extra points)."""
    if n < 1:
        raise ValueError("D%d is not a group" % n)
    if n == 1:
        return generate_group(2, [Perm.from_cycles(2, [(0, 1)])], max_order, spec="D1")
    if n == 2:
        gens = [Perm.from_cycles(4, [(0, 1)]), Perm.from_cycles(4, [(2, 3)])]
        return generate_group(4, gens, max_order, spec="D2")
    rot = Perm.from_cycles(n, [tuple(range(n))])
    ref = Perm(tuple(n - 1 - i for i in range(n)))
    return generate_group(n, [rot, ref], max_order, spec="D%d" % n)


def quaternion_group(max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    # regular action on {1, -1, i, -i, j, -j, k, -k}
    left_i = Perm((2, 3, 1, 0, 6, 7, 5, 4))
    left_j = Perm((4, 5, 7, 6, 1, 0, 2, 3))
    return generate_group(8, [left_i, left_j], max_order, spec="Q8")


def direct_product(A: FiniteGroup, B: FiniteGroup,
                   max_order: int = DEFAULT_MAX_ORDER, spec: str | None = None) -> FiniteGroup:
    """Direct product acting on the disjoint union of the factors' points."""
    d = A.degree + B.degree
    gens = []
    for g in (A.generators or A.minimal_generators()):
        gens.append(Perm(tuple(g.images) + tuple(A.degree + i for i in range(B.degree))))
    for g in (B.generators or B.minimal_generators()):
        gens.append(Perm(tuple(range(A.degree)) + tuple(A.degree + x for x in g.images)))
    if spec is None:
        spec = "%sx%s" % (A.spec, B.spec)
    return generate_group(d, gens, max_order, spec=spec)


# -- abstract isomorphism ----------------------------------------------------


def group_isomorphic(A: FiniteGroup, B: FiniteGroup) -> bool:
    """Brute-force isomorphism test with invariant pruning."""
    if A is B:
        return True
    if A.order != B.order:
        return False
    if sorted(A._order_of) != sorted(B._order_of):
        return False
    if A.is_abelian() != B.is_abelian():
        return False
    if A.order == 1:
        return True
    gens = [A.index[g] for g in A.minimal_generators()]
    # express every element of A as (earlier element) * (generator), in BFS order
    words: dict[int, tuple[int, int]] = {}
    bfs_order = [A.identity]
    have = {A.identity}
    frontier = [A.identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = A.mul(x, g)
                if y not in have:
                    have.add(y)
                    words[y] = (x, g)
                    bfs_order.append(y)
                    new.append(y)
        frontier = new

    by_order: dict[int, list[int]] = {}
    for i in range(B.order):
        by_order.setdefault(B.element_order(i), []).append(i)

    def extend(k: int, images: dict[int, int]) -> bool:
        if k == len(gens):
            phi = {A.identity: B.identity}
            used = {B.identity}
            for y in bfs_order[1:]:
                x, g = words[y]
                v = B.mul(phi[x], images[g])
                if v in used:
                    return False
                phi[y] = v
                used.add(v)
            return all(phi[A.mul(x, y)] == B.mul(phi[x], phi[y])
                       for x in range(A.order) for y in range(A.order))
        g = gens[k]
        for cand in by_order.get(A.element_order(g), ()):
            if cand in images.values():
                continue
            images[g] = cand
            if extend(k + 1, images):
                return True
            del images[g]
        return False

    return extend(0, {})


def iso_label(H: Subgroup | FiniteGroup) -> str:
    """Human-readable isomorphism-type label for small groups."""
    G = H.as_group() if isinstance(H, Subgroup) else H
    n = G.order
    if n == 1:
        return "1"
    orders = G._order_of
    if max(orders) == n:
        return "C%d" % n
    if G.is_abelian():
        if n == 4:
            return "V4"
        return "x".join("C%d" % d for d in _abelian_invariants(G))
    if n == 6:
        return "S3"
    if n == 8:
        return "Q8" if orders.count(2) == 1 else "D4"
    if n == 10:
        return "D5"
    if n == 12:
        if orders.count(2) == 1:
            return "Dic3"
        return "D6" if max(orders) == 6 else "A4"
    if n == 14:
        return "D7"
    if n == 24 and group_isomorphic(G, symmetric_group(4)):
        return "S4"
    if n % 2 == 0 and group_isomorphic(G, dihedral_group(n // 2, max_order=max(n, DEFAULT_MAX_ORDER))):
        return "D%d" % (n // 2)
    return "G%d" % n


def _abelian_invariants(G: FiniteGroup) -> list[int]:
    """Invariant factor decomposition d1 | d2 | ... of an abelian group.

    For each prime p the partition of the p-component is recovered from the
    counts of elements of order dividing p^k: the increments of log_p(count)
    form the conjugate partition.
    """
    partitions: dict[int, list[int]] = {}
    for p in _prime_factors(G.order):
        conj: list[int] = []
        prev = 0
        k = 1
        while True:
            m = sum(1 for o in G._order_of if (p ** k) % o == 0)
            e = 0
            while p ** e < m:
                e += 1
            inc = e - prev
            if inc == 0:
                break
            conj.append(inc)
            prev = e
            k += 1
        width = conj[0] if conj else 0
        parts = [sum(1 for v in conj if v > i) for i in range(width)]
        partitions[p] = sorted((p ** s for s in parts), reverse=True)
    height = max(len(v) for v in partitions.values())
    factors = []
    for i in range(height):
        d = 1
        for parts in partitions.values():
            if i < len(parts):
                d *= parts[i]
        factors.append(d)
    return sorted(factors)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
