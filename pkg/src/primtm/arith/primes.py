"""Zero-indexed prime sequence backed by a growing sieve."""

import bisect
import math
import threading

_lock = threading.RLock()
_primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
_sieved_to = 50

# decode paths refuse to sieve past this; anything larger is malformed input
MAX_SIEVE = 20_000_000


def _extend_to(limit):
    global _sieved_to
    with _lock:
        if limit <= _sieved_to:
            return
        limit = max(limit, 2 * _sieved_to)
        root = math.isqrt(limit)
        if root > _sieved_to:
            _extend_to(root)
            if limit <= _sieved_to:
                return
        lo = _sieved_to + 1
        flags = bytearray([1]) * (limit - lo + 1)
        for p in _primes:
            if p > root:
                break
            start = max(p * p, (lo + p - 1) // p * p)
            flags[start - lo :: p] = bytes(len(range(start, limit + 1, p)))
        _primes.extend(lo + off for off, flag in enumerate(flags) if flag)
        _sieved_to = limit


def prime(i: int) -> int:
    """Return the ``i``-th prime, counting from ``prime(0) == 2``."""
    if i < 0:
        raise ValueError("prime index must be non-negative")
    while i >= len(_primes):
        _extend_to(2 * _sieved_to)
    return _primes[i]


def prime_index(p: int) -> int | None:
    """Index of ``p`` in the prime sequence, or None if ``p`` is not prime."""
    if p < 2:
        return None
    if p > _sieved_to:
        if p > MAX_SIEVE:
            raise OverflowError(f"{p} exceeds the sieve limit")
        _extend_to(p)
    k = bisect.bisect_left(_primes, p)
    if k < len(_primes) and _primes[k] == p:
        return k
    return None


def small_factorization(n: int) -> dict[int, int]:
    """Factor a small positive integer into ``{prime_index: exponent}``."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out = {}
    i = 0
    while n > 1:
        p = prime(i)
        if p * p > n:
            out[prime_index(n)] = out.get(prime_index(n), 0) + 1
            break
        while n % p == 0:
            n //= p
            out[i] = out.get(i, 0) + 1
        i += 1
    return out


def strip_prime(n: int, p: int) -> tuple[int, int]:
    """``(k, n // p**k)`` with ``k`` the multiplicity of ``p`` in ``n > 0``."""
    if p == 2:
        k = (n & -n).bit_length() - 1
        return k, n >> k
    if n % p:
        return 0, n
    # square the divisor while it still divides, then walk back down
    powers = [p]
    while True:
        q, r = divmod(n, powers[-1])
        if r:
            break
        n = q
        powers.append(powers[-1] * powers[-1])
    k = (1 << (len(powers) - 1)) - 1
    for j in range(len(powers) - 2, -1, -1):
        q, r = divmod(n, powers[j])
        if not r:
            n = q
            k += 1 << j
    return k, n
