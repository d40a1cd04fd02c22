"""Counting bounds for unimodular genera through dyadic norm-group data.

The central quantity is G(a, b) = sum_{x=0}^{a} sum_{y=0}^{floor(x/2)} 2^{yb};
the number of unimodular genera over a field is at most the product of
G(e_p, f_p) over its dyadic primes, itself capped by 5^{d/2} (d even) or
2 * 5^{(d-1)/2} (d odd).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .fields import FieldDescriptor
from .mass import FieldInput, resolve_field


def G(a: int, b: int) -> int:
    if a < 0 or b < 1:
        raise DomainError("need a >= 0 and b >= 1")
    return sum(2 ** (y * b) for x in range(a + 1) for y in range(x // 2 + 1))


def unit_square_classes(e: int, f: int, v: int) -> int:
    """Number of unit square classes modulo p^v at a dyadic prime with
    data (e, f): 2^(floor(v/2) f) for v <= 2e, else the full 2^(ef+1)."""
    if v < 1 or e < 1 or f < 1:
        raise DomainError("need e, f, v >= 1")
    if v <= 2 * e:
        return 2 ** ((v // 2) * f)
    return 2 ** (e * f + 1)


def norm_group_count(e: int, f: int, u=None) -> int:
    """Upper bound for the number of norm groups of unimodular lattices.

    With u given (0 <= u <= e): groups inside p^u with norm ideal exactly
    p^u, the closed form (2^((floor((e-u)/2)+1) f) - 1)/(2^f - 1).
    With u None: all of them, which telescopes to G(e, f).
    """
    if e < 1 or f < 1:
        raise DomainError("need e, f >= 1")
    if u is None:
        return G(e, f)
    if not 0 <= u <= e:
        raise DomainError("need 0 <= u <= e")
    return (2 ** (((e - u) // 2 + 1) * f) - 1) // (2 ** f - 1)


def genus_cap(d: int) -> int:
    if d % 2 == 0:
        return 5 ** (d // 2)
    return 2 * 5 ** ((d - 1) // 2)


@dataclass(frozen=True)
class GeneraBound:
    per_prime: tuple[int, ...]
    product: int
    cap: int


def genera_bound(K: FieldInput) -> GeneraBound:
    """Per-prime norm-group counts, their product, and the degree cap."""
    desc, _ = resolve_field(K)
    per = tuple(G(p.e, p.f) for p in desc.dyadic)
    prod = 1
    for g in per:
        prod *= g
    cap = genus_cap(desc.degree)
    if prod > cap:
        raise AssertionError(
            f"genera product {prod} exceeded its cap {cap} (degree {desc.degree})")
    return GeneraBound(per, prod, cap)


@lru_cache(maxsize=64)
def _partitions(d: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    def rec(left, maxpart, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for part in range(min(left, maxpart), 0, -1):
            rec(left - part, part, acc + [part])
    rec(d, d, [])
    return tuple(out)


def _weighted_splittings(d: int):
    """Multisets of pairs (a, b) with sum over the multiset of a*b = d."""
    pairs = [(a, b) for a in range(1, d + 1) for b in range(1, d + 1)
             if a * b <= d]
    out = []
    def rec(left, start, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(pairs)):
            a, b = pairs[idx]
            if a * b <= left:
                rec(left - a * b, idx, acc + [(a, b)])
    rec(d, 0, [])
    return out


def partition_max_check(d: int) -> bool:
    """Exhaustive verification, for one degree d, that the all-twos partition
    maximises prod G(a_i, 1) and that every weighted splitting respects the
    degree cap."""
    if not 1 <= d <= 14:
        raise DomainError("exhaustive check supported for 1 <= d <= 14")
    cap = genus_cap(d)
    best = max(_partitions(d), key=lambda p: _prodG1(p))
    twos = tuple([2] * (d // 2) + [1] * (d % 2))
    if _prodG1(best) != _prodG1(twos):
        return False
    if _prodG1(twos) != cap:
        return False
    for split in _weighted_splittings(d):
        prod = 1
        for a, b in split:
            prod *= G(a, b)
        if prod > cap:
            return False
    return True


def _prodG1(partition) -> int:
    prod = 1
    for a in partition:
        prod *= G(a, 1)
    return prod


# ---------------------------------------------------------------------------
# brute-force residue-ring oracle for unit square classes, used by the tests
# but shipped here because it is the only concrete realisation of the (e, f)
# data the package ever constructs


def unit_square_classes_bruteforce(e: int, f: int, v: int, D: int = None) -> int:
    """Count unit square classes mod p^v by enumeration in a concrete ring.

    (e, f) = (1, 1): Z_2, realised mod 2^v.
    (e, f) = (1, 2): inert quadratic, Z[w]/2^v with w^2 = w + (D-1)/4.
    (e, f) = (2, 1): ramified quadratic, Z[sqrt(D)] with p-valuations taken
    on exact lifts via v_p(a + b sqrt(D)) = v_2(a^2 - D b^2).
    """
    if (e, f) == (1, 1):
        mod = 2 ** v
        units = [x for x in range(mod) if x % 2 == 1]
        squares = {(x * x) % mod for x in units}
        classes = set()
        for u in units:
            classes.add(frozenset((u * s) % mod for s in squares))
        return len(classes)
    if (e, f) == (1, 2):
        if D is None:
            D = 5
        if D % 8 != 5:
            raise DomainError("inert oracle needs D = 5 mod 8")
        c = (D - 1) // 4
        mod = 2 ** v
        ring = [(a, b) for a in range(mod) for b in range(mod)]
        def mul(x, y):
            (a, b), (p, q) = x, y
            # (a + bw)(p + qw), w^2 = w + c
            return ((a * p + b * q * c) % mod, (a * q + b * p + b * q) % mod)
        def norm_odd(x):
            a, b = x
            return (a * a + a * b - c * b * b) % 2 == 1
        units = [x for x in ring if norm_odd(x)]
        squares = {mul(x, x) for x in units}
        classes = set()
        for u in units:
            classes.add(frozenset(mul(u, s) for s in squares))
        return len(classes)
    if (e, f) == (2, 1):
        if D is None:
            D = 2
        if D % 4 not in (2, 3):
            raise DomainError("ramified oracle needs D = 2, 3 mod 4")
        # representatives of units mod p^v live in O / 2^k with 2k >= v
        k = v // 2 + 1
        mod = 2 ** k
        def vp(a, b):
            from .mass import _v2
            return _v2(a * a - D * b * b)
        units = [(a, b) for a in range(mod) for b in range(mod)
                 if vp(a, b) == 0]
        def equiv(u, w):
            # u ~ w iff u = w x^2 mod p^v for some unit x, checked on lifts
            for x in units:
                xa, xb = x
                sq = (xa * xa + D * xb * xb, 2 * xa * xb)
                wa = w[0] * sq[0] + D * w[1] * sq[1]
                wb = w[0] * sq[1] + w[1] * sq[0]
                if vp(u[0] - wa, u[1] - wb) >= v:
                    return True
            return False
        reps = []
        for u in units:
            if not any(equiv(u, r) for r in reps):
                reps.append(u)
        return len(reps)
    raise DomainError(f"no concrete residue ring is built for (e, f) = {(e, f)}")
