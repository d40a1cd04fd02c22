"""Field descriptors: degree, discriminant, dyadic splitting data.

Every formula in the package consumes only these invariants.  Real quadratic
fields are specialised from a squarefree D >= 2; higher-degree fields enter
as user-supplied descriptors and are never factored here.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DyadicMismatch, NotSquarefree, OutOfRange

SQUAREFREE_SIEVE_BOUND = 10 ** 6


@dataclass(frozen=True)
class DyadicPrime:
    """A prime above 2, carried as (ramification index, inertial degree)."""

    e: int
    f: int

    def __post_init__(self):
        if self.e < 1 or self.f < 1:
            raise DyadicMismatch(f"invalid dyadic data (e={self.e}, f={self.f})")

    @property
    def norm(self) -> int:
        return 2 ** self.f


@dataclass(frozen=True)
class FieldDescriptor:
    degree: int
    discriminant: int
    dyadic: tuple[DyadicPrime, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise OutOfRange(f"degree must be positive, got {self.degree}")
        if self.discriminant < 1:
            raise OutOfRange("discriminant must be positive for totally real fields")
        total = sum(p.e * p.f for p in self.dyadic)
        if total != self.degree:
            raise DyadicMismatch(
                f"sum of e*f over dyadic primes is {total}, degree is {self.degree}")
        if self.degree >= 2:
            # Odlyzko floor 60.1^d * e^-254; far below 1 for small d, so this
            # only ever trips on absurd high-degree inputs.
            floor = _odlyzko_floor_int(self.degree)
            if self.discriminant < floor:
                warnings.warn(
                    f"discriminant {self.discriminant} is below the Odlyzko "
                    f"floor {floor} for degree {self.degree}",
                    stacklevel=3,
                )

    @property
    def is_rationals(self) -> bool:
        return self.degree == 1


def _odlyzko_floor_int(d: int) -> int:
    # ceil(60.1^d * e^-254) computed in integers: 601^d * floor-safe e^-254.
    # e^254 < 10^111, so compare 601^d * 10^-d against e^254 via scaled ints.
    # A crude but sound version: the floor is < 1 unless 60.1^d > e^254,
    # i.e. d > 254/log(60.1) ~ 62.  Below that, return 1.
    if d <= 62:
        return 1
    # integer lower bound of 60.1^d / e^254 using 1e110 < e^254 < 1.34e110
    num = 601 ** d
    den = 10 ** d * 134 * 10 ** 108
    return max(1, num // den)


def make_descriptor(d: int, disc: int, dyadic: Sequence[tuple[int, int]]) -> FieldDescriptor:
    """Validated descriptor from raw (e, f) pairs; enforces sum e*f = d."""
    return FieldDescriptor(d, disc, tuple(DyadicPrime(e, f) for e, f in dyadic))


def rational_field() -> FieldDescriptor:
    return make_descriptor(1, 1, [(1, 1)])


@dataclass(frozen=True)
class RealQuadraticField:
    """Q(sqrt(D)) for squarefree D >= 2, with its dyadic table baked in."""

    D: int
    descriptor: FieldDescriptor
    kronecker_conductor: int

    @property
    def discriminant(self) -> int:
        return self.descriptor.discriminant


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def dyadic_table(D: int) -> list[tuple[int, int]]:
    """Splitting of 2 in Q(sqrt(D)) by congruence class of squarefree D."""
    if D % 8 == 1:
        return [(1, 1), (1, 1)]      # split
    if D % 8 == 5:
        return [(1, 2)]              # inert
    return [(2, 1)]                  # D = 2, 3 mod 4: ramified


def make_quadratic(D: int) -> RealQuadraticField:
    if D < 2:
        raise OutOfRange(f"need D >= 2, got {D}")
    if not is_squarefree(D):
        raise NotSquarefree(D)
    disc = D if D % 4 == 1 else 4 * D
    desc = make_descriptor(2, disc, dyadic_table(D))
    return RealQuadraticField(D=D, descriptor=desc, kronecker_conductor=disc)


def squarefree_range(lo: int, hi: int) -> Iterator[int]:
    """All squarefree D in [lo, hi], ascending, via a sieve of square multiples."""
    if not (2 <= lo <= hi):
        raise OutOfRange(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    # Segmented over blocks so huge ranges stay cheap on memory.
    block = 1 << 20
    q_max = int(hi ** 0.5) + 1
    start = lo
    while start <= hi:
        end = min(start + block - 1, hi)
        flags = bytearray([1]) * (end - start + 1)
        q = 2
        while q <= q_max and q * q <= end:
            step = q * q
            first = ((start + step - 1) // step) * step
            for m in range(first, end + 1, step):
                flags[m - start] = 0
            q += 1
        for i, ok in enumerate(flags):
            if ok:
                yield start + i
        start = end + 1


def classify_dyadic(D: int) -> str:
    """'split', 'inert' or 'ramified' for squarefree D >= 2."""
    if D % 8 == 1:
        return "split"
    if D % 8 == 5:
        return "inert"
    return "ramified"
