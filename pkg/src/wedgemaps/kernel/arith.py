"""Elementary number theory on positive integers."""

from __future__ import annotations

from functools import lru_cache


def _factorize(m: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return factors


def _check_positive(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"expected a positive integer, got {m!r}")


@lru_cache(maxsize=4096)
def mobius(m: int) -> int:
    """Classical Möbius function mu(m)."""
    _check_positive(m)
    factors = _factorize(m)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=4096)
def divisors(m: int) -> tuple[int, ...]:
    """All positive divisors of ``m`` in ascending order."""
    _check_positive(m)
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=4096)
def totient(m: int) -> int:
    _check_positive(m)
    result = m
    for p in _factorize(m):
        result -= result // p
    return result


def mobius_transform(values, m: int) -> int:
    """Sum over r | m of mu(m/r) * values(r).

    ``values`` is any callable or 1-indexed-by-position sequence giving the
    sequence at r (``values[r - 1]``).
    """
    get = values if callable(values) else (lambda r: values[r - 1])
    return sum(mobius(m // r) * get(r) for r in divisors(m))


def integer_nth_root(x: int, n: int) -> int | None:
    """Exact integer n-th root of ``x``, or None when ``x`` is not a perfect power.

    Negative ``x`` is accepted for odd ``n``.
    """
    if n < 1:
        raise ValueError("root index must be positive")
    if x < 0:
        if n % 2 == 0:
            return None
        r = integer_nth_root(-x, n)
        return None if r is None else -r
    if x < 2:
        return x
    # Newton iteration on integers, starting above the root
    r = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * r + x // r ** (n - 1)) // n
        if y >= r:
            break
        r = y
    return r if r**n == x else None
