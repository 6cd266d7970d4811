"""Exact naturals that are too large to hold as binary integers.

Gödel numbers of configurations, machines and graphs are built from
``2**x * (2*y + 1) - 1`` with ``x`` itself in the millions or far beyond,
so their binary expansion can never be materialised.  Every such value is
kept in one of two symbolic shapes instead:

``ShiftForm(x, m, d)``
    the number ``(m << x) + d`` where ``m`` is odd (an int or another
    ``ShiftForm``), ``x >= X_MIN`` and ``|d| < 2**(x - 1)``.
``PrimeProduct(cof, exps)``
    the number ``cof * prod(prime(i) ** e for i, e in exps)`` where some
    exponent is itself huge.
``OffsetProduct(base, d)``
    a prime product plus a small nonzero int, which is what pairing a
    prime product produces (``2*y + 1``).

Only the operations the encoders and the accelerated evaluator need are
supported; anything else raises :class:`Unmaterializable` instead of
guessing.  Values small enough to hold (``LAZY_BITS``) are always returned
as plain ints, and hashing agrees with ``int.__hash__`` for equal values.
"""

import decimal
import sys

from ..errors import Unmaterializable
from .primes import prime, small_factorization, strip_prime

# both are read at call time so tests can shrink them and compare with ints
LAZY_BITS = 1 << 16
X_MIN = 64

_HASH_MOD = sys.hash_info.modulus


class LazyNat:
    __slots__ = ("_residue",)

    def __eq__(self, other):
        if not isinstance(other, (int, LazyNat)):
            return NotImplemented
        return nat_eq(self, other)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(nat_mod(self, _HASH_MOD))

    def __lt__(self, other):
        return nat_cmp(self, other) < 0

    def __le__(self, other):
        return nat_cmp(self, other) <= 0

    def __gt__(self, other):
        return nat_cmp(self, other) > 0

    def __ge__(self, other):
        return nat_cmp(self, other) >= 0

    def __add__(self, other):
        return nat_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, LazyNat):
            if nat_eq(self, other):
                return 0
            raise Unmaterializable("difference of two lazy naturals")
        return nat_add(self, -other)

    def __mul__(self, other):
        return nat_mul(self, other)

    __rmul__ = __mul__

    def __mod__(self, other):
        return nat_mod(self, other)

    def __bool__(self):
        return True

    def __repr__(self):
        return format_nat(self)

    def __int__(self):
        raise Unmaterializable(f"{format_nat(self)} has too many digits to materialise")

    __index__ = __int__


class ShiftForm(LazyNat):
    __slots__ = ("x", "m", "d")

    def __init__(self, x, m, d):
        self.x = x
        self.m = m
        self.d = d


class PrimeProduct(LazyNat):
    __slots__ = ("cof", "exps")

    def __init__(self, cof, exps):
        self.cof = cof
        self.exps = exps


class OffsetProduct(LazyNat):
    __slots__ = ("base", "d")

    def __init__(self, base, d):
        self.base = base
        self.d = d


def offset_product(base, d):
    if d == 0:
        return base
    if not isinstance(base, PrimeProduct):
        return nat_add(base, d)
    if d.bit_length() >= LAZY_BITS // 2:
        raise Unmaterializable("offset too wide for a prime product")
    return OffsetProduct(base, d)


def is_lazy(n):
    return isinstance(n, LazyNat)


# -- construction -----------------------------------------------------------


def _val2_int(n):
    return (n & -n).bit_length() - 1


def shift_form(x, m, d=0):
    """Normalise ``(m << x) + d`` into an int or a canonical ShiftForm."""
    if isinstance(x, LazyNat):
        raise Unmaterializable("shift amount is itself lazy")
    while True:
        if isinstance(m, int):
            if m == 0:
                return d
            v = _val2_int(m)
            m >>= v
            x += v
            if x + m.bit_length() <= LAZY_BITS or x < X_MIN:
                return (m << x) + d
        else:
            v = nat_val2(m)
            if v:
                m = nat_shift_right(m, v)
                x += v
                continue
            if x < X_MIN and isinstance(m, OffsetProduct):
                return nat_add(nat_mul(m, 1 << x), d)
            if x < X_MIN:
                # fold the small shift into the inner form
                d = (m.d << x) + d
                x += m.x
                m = m.m
                continue
        if abs(d).bit_length() < x:
            return ShiftForm(x, m, d)
        # only reachable with x small enough for 1 << x to be cheap
        q, r = divmod(d, 1 << x)
        if r >= 1 << (x - 1):
            r -= 1 << x
            q += 1
        m = nat_add(m, q)
        d = r


def prime_product(cof, exps):
    """Build ``cof * prod(prime(i) ** e)`` from a mapping ``{i: e}``."""
    merged = {}
    for i, e in exps.items():
        if isinstance(e, int) and e == 0:
            continue
        merged[i] = e
    if cof > 1 and merged:
        # pull primes up to the largest listed index out of the cofactor, so
        # products built factor by factor keep their exponents explicit
        for i in range(max(merged) + 1):
            k, cof = strip_prime(cof, prime(i))
            if k:
                merged[i] = nat_add(merged[i], k) if i in merged else k
            if cof == 1:
                break
    if all(isinstance(e, int) for e in merged.values()):
        # a lower bound on the width, so every lazy product exceeds 2**LAZY_BITS
        bits = cof.bit_length() - 1 + sum(e * (prime(i).bit_length() - 1) for i, e in merged.items())
        if bits <= LAZY_BITS:
            out = cof
            for i, e in merged.items():
                out *= prime(i) ** e
            return out
    if not merged:
        return cof
    return PrimeProduct(cof, tuple(sorted(merged.items())))


def nat(n):
    """Canonicalise: ints wider than LAZY_BITS become ShiftForms."""
    if isinstance(n, LazyNat):
        return n
    if n < 0:
        raise ValueError("naturals are non-negative")
    if n.bit_length() <= LAZY_BITS:
        return n
    v = _val2_int(n + 1)
    return shift_form(v, (n + 1) >> v, -1)


# -- arithmetic -------------------------------------------------------------


def nat_add(a, k):
    if isinstance(a, int) and isinstance(k, int):
        return nat(a + k)
    if isinstance(k, LazyNat):
        if isinstance(a, LazyNat):
            raise Unmaterializable("sum of two lazy naturals")
        a, k = k, a
    if k == 0:
        return a
    if isinstance(a, ShiftForm):
        return shift_form(a.x, a.m, a.d + k)
    if isinstance(a, OffsetProduct):
        return offset_product(a.base, a.d + k)
    return offset_product(a, k)


def nat_mul(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return nat(a * b)
    if isinstance(a, int):
        a, b = b, a
    if isinstance(b, int):
        if b == 0:
            return 0
        if isinstance(a, PrimeProduct):
            return prime_product(a.cof * b, dict(a.exps))
        if isinstance(a, OffsetProduct):
            return offset_product(nat_mul(a.base, b), a.d * b)
        v = _val2_int(b)
        odd = b >> v
        # (m << x + d) * odd = ((m*odd) << x) + d*odd, then shift by v
        m = a.m * odd if isinstance(a.m, int) else nat_mul(a.m, odd)
        return shift_form(a.x + v, m, a.d * b)
    if isinstance(a, PrimeProduct) and isinstance(b, PrimeProduct):
        exps = dict(a.exps)
        for i, e in b.exps:
            exps[i] = nat_add(exps[i], e) if i in exps else e
        return prime_product(a.cof * b.cof, exps)
    raise Unmaterializable("product involving a shift form and another lazy natural")


def nat_val2(n):
    """Exponent of 2 in ``n`` (``n >= 1``)."""
    if isinstance(n, int):
        return _val2_int(n)
    if isinstance(n, PrimeProduct):
        return nat_exponent(n, 0)
    if isinstance(n, OffsetProduct):
        vb = nat_exponent(n.base, 0)
        vd = _val2_int(abs(n.d))
        c = nat_cmp(vb, vd)
        if c == 0:
            raise Unmaterializable("2-adic valuation of a prime product sum")
        return vd if c > 0 else vb
    if n.d == 0:
        return n.x
    vd = _val2_int(abs(n.d))
    if vd != n.x:
        return min(vd, n.x)
    # both parts carry exactly 2**x; look inside the odd sum
    return n.x + nat_val2(nat_add(n.m, n.d >> n.x))


def nat_shift_right(n, k):
    """Exact ``n >> k`` when ``2**k`` divides ``n``."""
    if k == 0:
        return n
    if isinstance(n, int):
        return n >> k
    if isinstance(n, PrimeProduct):
        e0 = nat_exponent(n, 0)
        if nat_cmp(e0, k) < 0:
            _not_divisible()
        cof = n.cof >> _val2_int(n.cof)
        return prime_product(cof, {**dict(n.exps), 0: nat_add(e0, -k)})
    if isinstance(n, OffsetProduct):
        if not _divisible(n.d, k):
            _not_divisible()
        return offset_product(nat_shift_right(n.base, k), n.d >> k)
    if k <= n.x:
        if not _divisible(n.d, k):
            _not_divisible()
        return shift_form(n.x - k, n.m, n.d >> k)
    if not _divisible(n.d, n.x):
        _not_divisible()
    return nat_shift_right(nat_add(n.m, n.d >> n.x), k - n.x)


def _divisible(d, k):
    return d == 0 or _val2_int(abs(d)) >= k


def _not_divisible():
    raise ValueError("shift would discard set bits")


def _phi(m):
    if m == _HASH_MOD:
        return m - 1
    out = m
    for i in small_factorization(m):
        p = prime(i)
        out = out // p * (p - 1)
    return out


def _pow_mod(base, e, m):
    if isinstance(e, int):
        return pow(base, e, m)
    # e is astronomically large, so the exponent may be reduced modulo phi(m)
    # and padded by phi(m) to stay past every prime-power factor of m
    ph = _phi(m)
    return pow(base, nat_mod(e, ph) + ph, m)


def nat_mod(n, m):
    if m <= 0:
        raise ZeroDivisionError("modulus must be positive")
    if isinstance(n, int):
        return n % m
    if m == _HASH_MOD:
        # values are immutable and this residue backs hashing and equality, so keep it
        try:
            return n._residue
        except AttributeError:
            n._residue = _nat_mod(n, m)
            return n._residue
    return _nat_mod(n, m)


def _nat_mod(n, m):
    if isinstance(n, ShiftForm):
        return (pow(2, n.x, m) * nat_mod(n.m, m) + n.d) % m
    if isinstance(n, OffsetProduct):
        return (nat_mod(n.base, m) + n.d) % m
    out = n.cof % m
    for i, e in n.exps:
        out = out * _pow_mod(prime(i), e, m) % m
    return out


def nat_exponent(n, i):
    """Largest ``e`` with ``prime(i) ** e`` dividing ``n`` (``n >= 1``)."""
    if isinstance(n, int):
        return strip_prime(n, prime(i))[0]
    if isinstance(n, PrimeProduct):
        own = dict(n.exps).get(i, 0)
        return nat_add(own, nat_exponent(n.cof, i))
    if i == 0:
        return nat_val2(n)
    if nat_mod(n, prime(i)):
        return 0
    raise Unmaterializable(f"odd prime {prime(i)} divides a shift form")


# -- comparison -------------------------------------------------------------


def nat_bit_length(n):
    if isinstance(n, int):
        return n.bit_length()
    if isinstance(n, ShiftForm):
        bl = nat_bit_length(n.m)
        if isinstance(n.m, int) and n.m == 1 and n.d < 0:
            return n.x
        return n.x + bl
    raise Unmaterializable("bit length of a prime product")


def nat_eq(a, b):
    if a is b:
        return True
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    if isinstance(a, OffsetProduct) or isinstance(b, OffsetProduct):
        return _eq_offsets(a, b)
    if isinstance(a, PrimeProduct) or isinstance(b, PrimeProduct):
        return _eq_products(a, b)
    if isinstance(a, int):
        a, b = b, a
    if isinstance(b, int):
        # (m << x) + d == b  <=>  b - d has 2-adic part exactly x and odd part m
        rest = b - a.d
        if rest <= 0 or _val2_int(rest) != a.x:
            return False
        return nat_eq(a.m, rest >> a.x)
    if a.x < b.x:
        a, b = b, a
    diff = b.d - a.d
    if diff == 0:
        return a.x == b.x and nat_eq(a.m, b.m)
    if _val2_int(abs(diff)) < b.x:
        return False
    # (m_a << (x_a - x_b)) == m_b + diff >> x_b
    return nat_eq(shift_form(a.x - b.x, a.m, 0), nat_add(b.m, diff >> b.x))


def _eq_offsets(a, b):
    if nat_mod(a, _HASH_MOD) != nat_mod(b, _HASH_MOD):
        return False
    if isinstance(a, OffsetProduct) and isinstance(b, OffsetProduct) and nat_eq(a.base, b.base):
        return a.d == b.d
    other = b if isinstance(a, OffsetProduct) else a
    if isinstance(other, int) and other.bit_length() < LAZY_BITS // 2:
        return False
    raise Unmaterializable("cannot decide equality with an offset prime product")


def _eq_products(a, b):
    if nat_mod(a, _HASH_MOD) != nat_mod(b, _HASH_MOD):
        return False
    if isinstance(a, ShiftForm) or isinstance(b, ShiftForm):
        raise Unmaterializable("cannot compare a prime product with a shift form")
    if isinstance(a, PrimeProduct) and isinstance(b, PrimeProduct) and a.exps == b.exps:
        # the shared prime powers cancel
        return nat_eq(a.cof, b.cof)
    indices = {i for x in (a, b) if isinstance(x, PrimeProduct) for i, _ in x.exps}
    own_a = dict(a.exps) if isinstance(a, PrimeProduct) else {}
    own_b = dict(b.exps) if isinstance(b, PrimeProduct) else {}
    cof_a = a.cof if isinstance(a, PrimeProduct) else a
    cof_b = b.cof if isinstance(b, PrimeProduct) else b
    for i in indices:
        ea = nat_add(own_a.get(i, 0), nat_exponent(cof_a, i))
        eb = nat_add(own_b.get(i, 0), nat_exponent(cof_b, i))
        if not nat_eq(ea, eb):
            return False

    def rest(x):
        cof = x.cof if isinstance(x, PrimeProduct) else x
        for i in indices:
            p = prime(i)
            while cof % p == 0:
                cof //= p
        return cof

    return rest(a) == rest(b)


def nat_cmp(a, b):
    """Three-way comparison returning -1, 0 or 1."""
    if isinstance(a, int) and isinstance(b, int):
        return (a > b) - (a < b)
    if nat_eq(a, b):
        return 0
    if isinstance(a, OffsetProduct) and isinstance(b, OffsetProduct) and nat_eq(a.base, b.base):
        return 1 if a.d > b.d else -1
    if isinstance(a, (PrimeProduct, OffsetProduct)) or isinstance(b, (PrimeProduct, OffsetProduct)):
        other = b if isinstance(a, (PrimeProduct, OffsetProduct)) else a
        if isinstance(other, int) and other.bit_length() < LAZY_BITS // 2:
            return 1 if isinstance(a, (PrimeProduct, OffsetProduct)) else -1
        raise Unmaterializable("ordering of prime products")
    la, lb = nat_bit_length(a), nat_bit_length(b)
    if la != lb:
        return 1 if la > lb else -1
    if isinstance(a, int) or isinstance(b, int):
        # same width as an int already in memory, so materialise the other
        a = a if isinstance(a, int) else (_materialize(a))
        b = b if isinstance(b, int) else (_materialize(b))
        return (a > b) - (a < b)
    flip = 1
    if a.x < b.x:
        a, b, flip = b, a, -1
    if abs(a.d - b.d).bit_length() > b.x:
        raise Unmaterializable("offsets too wide to order shift forms")
    head = nat_cmp(shift_form(a.x - b.x, a.m, 0), b.m)
    if head:
        return flip * head
    return flip * ((a.d > b.d) - (a.d < b.d))


def _materialize(n):
    if isinstance(n, int):
        return n
    if isinstance(n, ShiftForm):
        return (_materialize(n.m) << n.x) + n.d
    if isinstance(n, OffsetProduct):
        return _materialize(n.base) + n.d
    out = n.cof
    for i, e in n.exps:
        out *= prime(i) ** _materialize(e)
    return out


# -- rendering --------------------------------------------------------------


def nat_log10(n, prec=60):
    """``log10(n)`` as a Decimal, for digit counts of lazy values."""
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        if isinstance(n, int):
            if n.bit_length() < 3000:
                return decimal.Decimal(n).log10()
            shift = n.bit_length() - 200
            return decimal.Decimal(n >> shift).log10() + shift * decimal.Decimal(2).log10()
        if isinstance(n, ShiftForm):
            return n.x * decimal.Decimal(2).log10() + nat_log10(n.m, prec)
        if isinstance(n, OffsetProduct):
            # the offset is far below the precision carried here
            return nat_log10(n.base, prec)
        out = decimal.Decimal(n.cof).log10()
        for i, e in n.exps:
            if isinstance(e, LazyNat):
                raise Unmaterializable("digit count of a prime product with lazy exponents")
            out += e * decimal.Decimal(prime(i)).log10()
        return out


def decimal_digits(n):
    if isinstance(n, int):
        if n.bit_length() < 100_000:
            return len(str(n))
    return int(nat_log10(n).to_integral_value(rounding=decimal.ROUND_FLOOR)) + 1


def _int_text(n):
    # beyond a few thousand digits Python refuses decimal conversion
    if n.bit_length() > 12_000:
        return f"{n:#x}" if n >= 0 else f"-{-n:#x}"
    return str(n)


def format_nat(n):
    """Decimal for ints (hex when huge); ``shl(m,x)+d`` / ``pp(cof;i^e,...)`` for lazy values."""
    if isinstance(n, int):
        return _int_text(n)
    if isinstance(n, ShiftForm):
        tail = ("+" if n.d > 0 else "") + _int_text(n.d) if n.d else ""
        return f"shl({format_nat(n.m)},{_int_text(n.x)}){tail}"
    if isinstance(n, OffsetProduct):
        return f"{format_nat(n.base)}{'+' if n.d > 0 else ''}{_int_text(n.d)}"
    parts = ",".join(f"{i}^{format_nat(e)}" for i, e in n.exps)
    return f"pp({_int_text(n.cof)};{parts})"


def parse_nat(text):
    """Inverse of :func:`format_nat`."""
    text = text.strip()
    pos = 0

    def number():
        nonlocal pos
        start = pos
        if pos < len(text) and text[pos] in "+-":
            pos += 1
        digits = pos
        if text.startswith("0x", pos):
            pos += 2
            while pos < len(text) and text[pos] in "0123456789abcdef":
                pos += 1
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if digits == pos:
            raise ValueError(f"expected a number at {pos} in {text!r}")
        return int(text[start:pos], 0)

    def expect(tok):
        nonlocal pos
        if not text.startswith(tok, pos):
            raise ValueError(f"expected {tok!r} at {pos} in {text!r}")
        pos += len(tok)

    def value():
        nonlocal pos
        if text.startswith("shl(", pos):
            pos += 4
            m = value()
            expect(",")
            x = number()
            expect(")")
            d = number() if pos < len(text) and text[pos] in "+-" else 0
            return shift_form(x, m, d)
        if text.startswith("pp(", pos):
            pos += 3
            cof = number()
            expect(";")
            exps = {}
            while True:
                i = number()
                expect("^")
                exps[i] = value()
                if text.startswith(",", pos):
                    pos += 1
                    continue
                break
            expect(")")
            base = prime_product(cof, exps)
            return offset_product(base, number()) if text.startswith(("+", "-"), pos) else base
        return number()

    out = value()
    if pos != len(text):
        raise ValueError(f"trailing text at {pos} in {text!r}")
    if isinstance(out, int) and out < 0:
        raise ValueError("naturals are non-negative")
    return nat(out) if isinstance(out, int) else out
