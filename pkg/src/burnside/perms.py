"""Permutations of {0, ..., n-1} with cycle notation helpers."""
from __future__ import annotations

import math


class Perm:
    """A permutation stored as the tuple of images of 0..n-1.

    Composition is left-to-right function application: (p * q)(x) = p(q(x)).
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images do not define a bijection on 0..%d: %r"
                             % (len(images) - 1, images))
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> Perm:
        return Perm(range(degree))

    @staticmethod
    def from_cycles(degree: int, cycles) -> Perm:
        """Build from a list of cycles (applied right to left, as written)."""
        result = Perm.identity(degree)
        for cyc in cycles:
            images = list(range(degree))
            for i, a in enumerate(cyc):
                b = cyc[(i + 1) % len(cyc)]
                if not (0 <= a < degree):
                    raise ValueError("cycle point %d out of range for degree %d" % (a, degree))
                if images[a] != a and images[a] != b:
                    raise ValueError("repeated point %d in cycle %r" % (a, cyc))
                images[a] = b
            result = result * Perm(images)
        return result

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Perm) -> Perm:
        if self.degree != other.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))
        return Perm(tuple(self.images[other.images[x]] for x in range(self.degree)))

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.images))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def cycles(self):
        """Nontrivial cycles, each rotated to start at its minimum, sorted by it."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: Perm):
        return self.images < other.images

    def __repr__(self):
        return "Perm(%r)" % (self.images,)

    def __str__(self):
        return self.cycle_string()


def parse_cycle_string(degree: int, text: str) -> Perm:
    """Parse "(0 1 2)(3 4)" into a Perm; "()" is the identity."""
    cycles = []
    i = 0
    text = text.strip()
    while i < len(text):
        if text[i] != "(":
            raise ValueError("expected '(' at position %d in %r" % (i, text))
        j = text.index(")", i)
        body = text[i + 1:j].strip()
        if body:
            cycles.append(tuple(int(tok) for tok in body.split()))
        i = j + 1
    return Perm.from_cycles(degree, cycles)
