"""
Helper functions used across the application
"""

import hashlib
import time
from contextlib import contextmanager


def is_prime(n):
    """Check primality by trial division

    Args:
        n (int): Candidate number

    Returns:
        bool: True if n is prime
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    """Distinct prime factors of n in increasing order"""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def prime_power(q):
    """Split a prime power into (p, h) with q = p^h

    Args:
        q (int): Field order, e.g. 9

    Returns:
        tuple: (p, h), e.g. (3, 2), or None if q is not a prime power
    """
    if q < 2:
        return None
    factors = prime_factors(q)
    if len(factors) != 1:
        return None
    p, h = factors[0], 0
    while q > 1:
        q //= p
        h += 1
    return p, h


def derive_seed(master_seed, trial):
    """Derive the seed of one search trial from the master seed

    Args:
        master_seed (int): Seed of the whole search
        trial (int): Trial index

    Returns:
        int: 63-bit seed, identical for identical inputs on every platform
    """
    digest = hashlib.sha256(f"{master_seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def parse_q_list(text):
    """Parse a comma separated list of field orders, e.g. "2,3,5" """
    values = []
    for part in text.split(","):
        part = part.strip()
        if part:
            values.append(int(part))
    return values


def elapsed_ms(start):
    """Milliseconds since a time.perf_counter() reading"""
    return round((time.perf_counter() - start) * 1000.0, 3)


@contextmanager
def stopwatch():
    """Yield a dict whose 'ms' entry is filled in when the block exits"""
    record = {"ms": 0.0}
    start = time.perf_counter()
    try:
        yield record
    finally:
        record["ms"] = elapsed_ms(start)
