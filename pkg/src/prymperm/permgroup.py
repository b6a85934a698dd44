"""Permutations of the labelled Prym points and subgroups of small
symmetric groups."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotASubgroup


@dataclass(frozen=True, order=True)
class MarkedPermutation:
    """A permutation of {1, ..., n}; ``images[i - 1]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, n: int = 3) -> MarkedPermutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles, n: int = 3) -> MarkedPermutation:
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return cls(tuple(img))

    @classmethod
    def from_mapping(cls, mapping: dict[int, int], n: int = 3) -> MarkedPermutation:
        return cls(tuple(mapping.get(i, i) for i in range(1, n + 1)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: MarkedPermutation) -> MarkedPermutation:
        """Composition: apply ``other`` first."""
        return MarkedPermutation(tuple(self(other(i)) for i in range(1, self.degree + 1)))

    def inverse(self) -> MarkedPermutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return MarkedPermutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.degree + 1))

    def moved(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.degree + 1) if self(i) != i)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(1, self.degree + 1):
            if i in seen or self(i) == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def closure(gens, n: int = 3) -> frozenset[MarkedPermutation]:
    """The subgroup generated by ``gens``."""
    ident = MarkedPermutation.identity(n)
    group = {ident}
    frontier = [ident]
    gens = list(gens)
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in group:
                    group.add(h)
                    new.append(h)
        frontier = new
    return frozenset(group)


@dataclass(frozen=True)
class SubgroupClass:
    tag: str  # trivial, sym2, alt3, sym3
    pair: tuple[int, int] | None = None

    def conjugacy(self) -> str:
        return {"trivial": "Trivial", "sym2": "Sym2", "alt3": "Alt3", "sym3": "Sym3"}[self.tag]

    def __str__(self) -> str:
        if self.tag == "sym2":
            return f"sym2({{{self.pair[0]},{self.pair[1]}}})"
        return self.tag


def _check_subgroup(H) -> None:
    H = set(H)
    if not H:
        raise NotASubgroup("empty set")
    n = next(iter(H)).degree
    if MarkedPermutation.identity(n) not in H:
        raise NotASubgroup("identity missing")
    for a in H:
        for b in H:
            if a * b not in H:
                raise NotASubgroup(f"{a} * {b} escapes the set")


def classify(H) -> SubgroupClass:
    """Conjugacy class of a subgroup of Sym_3, with the moved pair for Sym_2."""
    _check_subgroup(H)
    n = next(iter(H)).degree
    if n != 3:
        raise NotASubgroup("classification is implemented for degree 3")
    order = len(H)
    if order == 1:
        return SubgroupClass("trivial")
    if order == 2:
        g = next(h for h in H if not h.is_identity())
        a, b = sorted(g.moved())
        return SubgroupClass("sym2", (a, b))
    if order == 3:
        return SubgroupClass("alt3")
    return SubgroupClass("sym3")


def subgroup_of_class(c: SubgroupClass) -> frozenset[MarkedPermutation]:
    if c.tag == "trivial":
        return closure([])
    if c.tag == "sym2":
        return closure([MarkedPermutation.from_cycles([c.pair])])
    if c.tag == "alt3":
        return closure([MarkedPermutation.from_cycles([(1, 2, 3)])])
    return closure([MarkedPermutation.from_cycles([(1, 2)]),
                    MarkedPermutation.from_cycles([(1, 3)])])


def stabilizer_of_partition(blocks, n: int = 3) -> frozenset[MarkedPermutation]:
    """Permutations mapping every block of a partition onto a block of the
    same partition (blocks may be permuted among themselves)."""
    from itertools import permutations

    blocks = [frozenset(b) for b in blocks]
    out = set()
    for img in permutations(range(1, n + 1)):
        g = MarkedPermutation(img)
        if all(frozenset(g(i) for i in b) in blocks for b in blocks):
            out.add(g)
    return frozenset(out)


def setwise_stabilizer(points, n: int = 3) -> frozenset[MarkedPermutation]:
    from itertools import permutations

    points = frozenset(points)
    return frozenset(MarkedPermutation(img) for img in permutations(range(1, n + 1))
                     if frozenset(img[i - 1] for i in points) == points)
