"""Kronecker symbols and real quadratic Dirichlet characters.

A quadratic character is keyed by its conductor, a fundamental discriminant
m (positive or negative); its values are chi(k) = kronecker(m, k), which is
completely multiplicative, periodic mod |m|, and has chi(-1) = sign(m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a / n) for arbitrary integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    res = 1
    if n < 0:
        n = -n
        if a < 0:
            res = -res
    # factor out twos of n; (a/2) = 0, 1, -1 for a even, a = +-1 mod 8, else
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            res = -res
    a %= n
    # Jacobi loop with reciprocity
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def is_fundamental_discriminant(m: int) -> bool:
    if m == 1:
        return True
    if m % 4 == 1:
        return _squarefree(abs(m))
    if m % 4 == 0:
        q = m // 4
        return q % 4 in (2, 3) and _squarefree(abs(q))
    return False


def _squarefree(n: int) -> bool:
    if n <= 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def fundamental_discriminant(m: int) -> int:
    """Fundamental discriminant of Q(sqrt(m)) for squarefree m != 0, 1-safe."""
    if m == 1:
        return 1
    if not _squarefree(abs(m)):
        raise DomainError(f"{m} is not squarefree")
    return m if m % 4 == 1 else 4 * m


@dataclass(frozen=True)
class QuadraticCharacter:
    """Real primitive character of fundamental discriminant `conductor`."""

    conductor: int
    _values: tuple = field(repr=False, hash=False, compare=False, default=None)

    def __post_init__(self):
        if not is_fundamental_discriminant(self.conductor):
            raise DomainError(
                f"{self.conductor} is not a fundamental discriminant")
        period = max(abs(self.conductor), 1)
        vals = tuple(kronecker(self.conductor, k) for k in range(period))
        object.__setattr__(self, "_values", vals)

    @property
    def modulus(self) -> int:
        return max(abs(self.conductor), 1)

    def __call__(self, k: int) -> int:
        return self._values[k % self.modulus]

    def is_odd(self) -> bool:
        return self.conductor < 0

    def is_trivial(self) -> bool:
        return self.conductor == 1

    def parity_matches(self, k: int) -> bool:
        """chi(-1) == (-1)^k, the condition for a nonzero closed-form L(k, chi)."""
        sign = -1 if self.is_odd() else 1
        return sign == (-1) ** k


@lru_cache(maxsize=256)
def character(conductor: int) -> QuadraticCharacter:
    return QuadraticCharacter(conductor)
