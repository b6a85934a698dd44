"""Splitting prototypes, the reduced set S_D, the auxiliary set R_D and
bookkeeping for the components of the eigenform locus."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt

from .errors import ConnectedLocus, EmptyLocus, InadmissibleSpec, NotADiscriminant


class LocusStatus(str, Enum):
    EMPTY = "empty"
    CONNECTED = "connected"
    TWO_COMPONENTS = "two_components"


def check_discriminant(D: int) -> None:
    if D <= 0 or D % 4 not in (0, 1):
        raise NotADiscriminant(f"{D} is not a positive discriminant")


@dataclass(frozen=True)
class Prototype:
    """Integer data (a, b, c, e) with D = e^2 + 8bc."""

    a: int
    b: int
    c: int
    e: int

    def __post_init__(self):
        if self.b <= 0 or self.c <= 0:
            raise InadmissibleSpec(f"b and c must be positive: {self}")
        if not 0 <= self.a < gcd(self.b, self.c):
            raise InadmissibleSpec(f"need 0 <= a < gcd(b, c): {self}")
        if not 2 * self.c + self.e < self.b:
            raise InadmissibleSpec(f"need 2c + e < b: {self}")
        if gcd(self.a, self.b, self.c, self.e) != 1:
            raise InadmissibleSpec(f"gcd(a, b, c, e) must be 1: {self}")

    @property
    def d_param(self) -> int:
        return self.e * self.e + 8 * self.b * self.c

    @classmethod
    def reduced(cls, D: int, e: int) -> Prototype:
        if (D - e * e) % 8:
            raise InadmissibleSpec(f"e={e} does not satisfy e^2 = D mod 8 for D={D}")
        return cls(0, (D - e * e) // 8, 1, e)


def locus_status(D: int) -> LocusStatus:
    check_discriminant(D)
    nonempty = (D >= 17 and (D % 8 == 1 or D % 4 == 0)) or D in (8, 12)
    if not nonempty:
        return LocusStatus.EMPTY
    if D % 8 == 1:
        return LocusStatus.TWO_COMPONENTS
    return LocusStatus.CONNECTED


def admissible(D: int) -> bool:
    return D > 0 and D % 4 in (0, 1) and locus_status(D) is not LocusStatus.EMPTY


def _scan_bound(D: int) -> int:
    return isqrt(D) + 5


def reduced_prototypes(D: int) -> list[int]:
    """The set S_D in ascending order."""
    check_discriminant(D)
    n = _scan_bound(D)
    return [e for e in range(-n, n + 1)
            if (e * e - D) % 8 == 0 and e * e < D and (e + 4) ** 2 < D]


def aux_prototypes(D: int) -> list[int]:
    """The set R_D in ascending order."""
    n = _scan_bound(D)
    return [e for e in range(-n, n + 1)
            if (e - D) % 2 == 0 and e * e < D and (e + 2) ** 2 < D]


def same_component(m1: str, e1: int, m2: str, e2: int, D: int) -> bool:
    """Whether A^{m1}_D(e1) and A^{m2}_D(e2) lie on the same component."""
    if locus_status(D) is not LocusStatus.TWO_COMPONENTS:
        raise ConnectedLocus(f"E_{D}(4) has no pair of components")
    S = reduced_prototypes(D)
    for e in (e1, e2):
        if e not in S:
            raise InadmissibleSpec(f"{e} is not in S_{D}")
    for m in (m1, m2):
        if m not in ("A+", "A-"):
            raise InadmissibleSpec(f"unknown model {m!r}")
    if m1 == m2:
        return (e1 - e2) % 4 == 0
    return (e1 + e2) % 4 == 0


def component_tag(model: str, e: int, D: int) -> str:
    """'plus' for the component of A+_D(min S_D), 'minus' for the other one,
    and 'whole' for connected loci."""
    if locus_status(D) is not LocusStatus.TWO_COMPONENTS:
        return "whole"
    e0 = reduced_prototypes(D)[0]
    return "plus" if same_component(model, e, "A+", e0, D) else "minus"


def components(D: int) -> list[str]:
    status = locus_status(D)
    if status is LocusStatus.EMPTY:
        return []
    if status is LocusStatus.CONNECTED:
        return ["whole"]
    return ["plus", "minus"]


def predicted_group(D: int) -> str:
    if locus_status(D) is LocusStatus.EMPTY:
        raise EmptyLocus(f"E_{D}(4) is empty")
    if D % 2 == 0 and D % 16 in (0, 4):
        return "Sym2"
    return "Sym3"


def admissible_range(dmin: int, dmax: int) -> list[int]:
    return [D for D in range(max(dmin, 1), dmax + 1) if admissible(D)]
