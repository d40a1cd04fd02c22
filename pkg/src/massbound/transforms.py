"""Euler transform machinery on integer sequences, and the rank bounds that
turn indecomposable-lattice counts into minimal-rank estimates.

Sequences are plain lists of nonnegative ints with 1-indexed meaning
(values[0] is a_1).  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .enclosure import RealEnclosure
from .errors import DomainError, NotRealizable

IntSequence = list[int]


def validate_sequence(values: Sequence[int]) -> IntSequence:
    vals = [int(v) for v in values]
    if not vals:
        raise DomainError("sequence must be nonempty")
    if any(v < 0 for v in vals):
        raise DomainError("sequence entries must be nonnegative")
    return vals


def _divisor_weighted(a: Sequence[int], n: int) -> int:
    # c_n = sum_{d | n} d * a_d
    return sum(d * a[d - 1] for d in range(1, n + 1) if n % d == 0)


def euler_transform(a: Sequence[int]) -> IntSequence:
    """b with 1 + sum b_n X^n = prod (1 - X^k)^(-a_k), truncated at len(a).

    Recursion: n b_n = c_n + sum_{k<n} c_k b_{n-k} with c_n = sum_{d|n} d a_d.
    """
    a = validate_sequence(a)
    N = len(a)
    c = [_divisor_weighted(a, n) for n in range(1, N + 1)]
    b: list[int] = []
    for n in range(1, N + 1):
        s = c[n - 1] + sum(c[k - 1] * b[n - k - 1] for k in range(1, n))
        q, r = divmod(s, n)
        if r:
            raise AssertionError("euler transform recursion must divide evenly")
        b.append(q)
    return b


def inverse_euler_transform(b: Sequence[int]) -> IntSequence:
    """The unique preimage under euler_transform, when one exists.

    Raises NotRealizable if any recovered a_n is negative or fractional,
    i.e. b is not the Euler transform of a nonnegative integer sequence.
    """
    b = validate_sequence(b)
    N = len(b)
    c: list[int] = []
    a: list[int] = []
    for n in range(1, N + 1):
        cn = n * b[n - 1] - sum(c[k - 1] * b[n - k - 1] for k in range(1, n))
        c.append(cn)
        rest = sum(d * a[d - 1] for d in range(1, n) if n % d == 0)
        q, r = divmod(cn - rest, n)
        if r or q < 0:
            raise NotRealizable(
                f"a_{n} = {Fraction(cn - rest, n)} is not a nonnegative integer")
        a.append(q)
    return a


def max_term_lower_bound(b: Sequence[int], n: int, prec: int = 128) -> RealEnclosure:
    """Enclosure of (b_n / (n!)^2)^(1/n), a lower bound for max(a_1..a_n)
    whenever b is the Euler transform of the nonnegative sequence a."""
    b = validate_sequence(b)
    if not 1 <= n <= len(b):
        raise DomainError(f"n must be within the sequence, got {n}")
    q = Fraction(b[n - 1], factorial(n) ** 2)
    if q == 0:
        return RealEnclosure.exact(0, prec)
    return RealEnclosure.exact(q, prec).pow_fraction(Fraction(1, n))


def rank_bounds_AB(i_counts: Sequence[int], n: int) -> tuple[int, int]:
    """(A(n), B(n)) bracketing the minimal n-universal rank when i_counts
    are the true indecomposable-unimodular class counts by rank.

    A(n) = sum_{r<=n} floor(n/r) r i_r; B(n) relaxes the packing number
    t_L(n+3) to floor((n+3)/r), so B(n) = sum_{r<=n+3} floor((n+3)/r) r i_r.
    Shorter inputs are zero-padded (the flag in the return is the padding).
    """
    i_counts = validate_sequence(i_counts)
    if n < 1:
        raise DomainError("need n >= 1")
    need = n + 3
    padded = list(i_counts) + [0] * max(0, need - len(i_counts))
    A = sum((n // r) * r * padded[r - 1] for r in range(1, n + 1))
    B = sum(((n + 3) // r) * r * padded[r - 1] for r in range(1, n + 4))
    return A, B


def criterion_lower_bound(i_counts: Sequence[int], n: int) -> int:
    """Minimal size of a testing set: sum of the first n indecomposable counts."""
    i_counts = validate_sequence(i_counts)
    if not 1 <= n <= len(i_counts):
        raise DomainError(f"n must be within the sequence, got {n}")
    return sum(i_counts[:n])
