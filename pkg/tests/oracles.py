"""Independent reference implementations used by the tests.

Nothing here imports the package: each function is written directly from
its mathematical definition with plain ints.
"""


def trial_division_primes(count):
    found = []
    n = 2
    while len(found) < count:
        if all(n % p for p in found if p * p <= n):
            found.append(n)
        n += 1
    return found


PRIMES = trial_division_primes(2000)


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, n))


def multiplicity(n, p):
    if n == 0:
        return 0
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def pair(x, y):
    return 2**x * (2 * y + 1) - 1


def unpair(z):
    x = 0
    u = z + 1
    while u % 2 == 0:
        u //= 2
        x += 1
    return x, (u - 1) // 2


def _next_prime(p):
    if p == 0:
        return 1
    q = p + 1
    while not is_prime(q):
        q += 1
    return q


def b(v):
    return 1 if v else 0


STDLIB_ORACLES = {
    "add": lambda x, y: x + y,
    "mul": lambda x, y: x * y,
    "pow": lambda x, y: x**y,
    "pred": lambda x: max(x - 1, 0),
    "sub": lambda x, y: max(x - y, 0),
    "sign": lambda x: b(x > 0),
    "nsign": lambda x: b(x == 0),
    "le": lambda x, y: b(x <= y),
    "lt": lambda x, y: b(x < y),
    "eq": lambda x, y: b(x == y),
    "and": lambda x, y: b(x and y),
    "or": lambda x, y: b(x or y),
    "not": lambda x: b(not x),
    "cond": lambda t, x, y: x if t else y,
    "mod": lambda x, y: x % y if y else x,
    "div": lambda x, y: x // y if y else 0,
    "divides": lambda d, n: b(n % d == 0) if d else b(n == 0),
    "dcount": lambda y, k: sum(1 for d in range(1, k + 1) if y % d == 0),
    "isprime": lambda y: b(is_prime(y)),
    "nextprime": _next_prime,
    "prime": lambda i: PRIMES[i],
    "prime_pow": lambda i, e: PRIMES[i] ** e,
    "exponent_of": lambda n, i: multiplicity(n, PRIMES[i]),
    "sigma2": pair,
    "sigma2_x": lambda z: unpair(z)[0],
    "sigma2_y": lambda z: unpair(z)[1],
    "sigma3": lambda x, y, z: pair(pair(x, y), z),
    "sigma3_1": lambda w: unpair(unpair(w)[0])[0],
    "sigma3_2": lambda w: unpair(unpair(w)[0])[1],
    "sigma3_3": lambda w: unpair(w)[1],
}

# Per-entry argument boxes (each side < 30) on which honest unary evaluation
# finishes quickly; entries not listed use the full box [0, 30).
HONEST_BOXES = {
    "pow": (6, 6),
    "div": (16, 16),
    "dcount": (30, 8),
    "isprime": (12,),
    "nextprime": (8,),
    "prime": (4,),
    "prime_pow": (3, 4),
    "exponent_of": (30, 2),
    "sigma2": (4, 30),
    "sigma3": (2, 2, 5),
    "sigma2_x": (24,),
    "sigma2_y": (12,),
    "sigma3_1": (16,),
    "sigma3_2": (16,),
    "sigma3_3": (12,),
}

# Boxes where even the native arithmetic would produce huge numbers.
FAST_BOXES = {
    "prime": (30,),
    "prime_pow": (30, 30),
    "sigma3": (5, 30, 30),
}
