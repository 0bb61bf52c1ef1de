"""
Finite field data model and arithmetic

Fields are towers: a FieldSpec is a degree-e extension of either the prime
field GF(p) (base None) or another FieldSpec. Elements are canonical integer
indices, the little-endian digits of the coefficient vector over the base.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import NamedTuple, Optional

import numpy as np

from utils.constants import FIELD_ORDER_LIMIT, LOG_TABLE_LIMIT, MATRIX_TABLE_LIMIT
from utils.exceptions import (
    ArgumentOutOfRange,
    ArtifactError,
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NoIrreducibleFound,
    NonPrimeCharacteristic,
    NotAnExtensionOverRequestedBase,
)
from utils.helpers import is_prime, prime_factors, prime_power

logger = logging.getLogger(__name__)


class FieldTables(NamedTuple):
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


def _trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


class PolyRing:
    """Polynomials over GF(p) or over a FieldSpec, coefficient lists constant term first"""

    def __init__(self, p, base=None):
        self.p = p
        self.base = base
        self.order = p if base is None else base.order

    # Coefficient arithmetic
    def add(self, a, b):
        return (a + b) % self.p if self.base is None else self.base.add_int(a, b)

    def sub(self, a, b):
        return (a - b) % self.p if self.base is None else self.base.sub_int(a, b)

    def mul(self, a, b):
        return a * b % self.p if self.base is None else self.base.mul_int(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p) if self.base is None else self.base.inv_int(a)

    # Polynomial arithmetic
    def mul_poly(self, x, y):
        if not x or not y:
            return []
        prod = [0] * (len(x) + len(y) - 1)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj:
                    prod[i + j] = self.add(prod[i + j], self.mul(xi, yj))
        return _trim(prod)

    def sub_poly(self, x, y):
        size = max(len(x), len(y))
        x = list(x) + [0] * (size - len(x))
        y = list(y) + [0] * (size - len(y))
        return _trim(self.sub(a, b) for a, b in zip(x, y))

    def divmod_poly(self, num, den):
        den = _trim(den)
        if not den:
            raise DivisionByZero("polynomial division by zero")
        num = list(num)
        if len(num) < len(den):
            return [], _trim(num)
        lead_inv = self.inv(den[-1])
        quot = [0] * (len(num) - len(den) + 1)
        for shift in range(len(num) - len(den), -1, -1):
            c = self.mul(num[shift + len(den) - 1], lead_inv)
            quot[shift] = c
            if c:
                for i, d in enumerate(den):
                    num[shift + i] = self.sub(num[shift + i], self.mul(c, d))
        return _trim(quot), _trim(num[:len(den) - 1])

    def monic_polys(self, degree):
        for low in product(range(self.order), repeat=degree):
            yield list(low) + [1]

    def is_irreducible(self, poly):
        """Trial division against every monic polynomial of degree at most deg/2"""
        degree = len(poly) - 1
        for d in range(1, degree // 2 + 1):
            for divisor in self.monic_polys(d):
                _, rem = self.divmod_poly(poly, divisor)
                if not rem:
                    return False
        return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(base^e) as GF(base)[x]/(modulus)"""
    p: int
    e: int
    base: Optional["FieldSpec"]
    modulus: tuple

    def __repr__(self):
        if self.base is None:
            return f"GF({self.order})"
        return f"GF({self.order})/GF({self.base.order})"

    @property
    def base_order(self):
        return self.p if self.base is None else self.base.order

    @cached_property
    def order(self):
        return self.base_order ** self.e

    @property
    def prime_degree(self):
        return self.e if self.base is None else self.e * self.base.prime_degree

    @cached_property
    def ring(self):
        return PolyRing(self.p, self.base)

    def tower(self):
        """Extension degrees from the prime field upwards"""
        return ([] if self.base is None else self.base.tower()) + [self.e]

    def moduli(self):
        return ([] if self.base is None else self.base.moduli()) + [list(self.modulus)]

    def to_dict(self):
        return {"p": self.p, "tower": self.tower(), "moduli": self.moduli()}

    def has_subfield(self, other):
        """True if other is this field or a level of its tower"""
        field = self
        while field is not None:
            if field == other:
                return True
            field = field.base
        return False

    # Elements
    def element(self, index):
        return FieldElement(self, int(index))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return [FieldElement(self, i) for i in range(self.order)]

    def to_coeffs(self, index):
        b = self.base_order
        coeffs = []
        for _ in range(self.e):
            coeffs.append(index % b)
            index //= b
        return coeffs

    def from_coeffs(self, coeffs):
        b = self.base_order
        index = 0
        for c in reversed(list(coeffs)):
            index = index * b + c
        return index

    # Integer level arithmetic
    def add_int(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        result, place = 0, 1
        while a or b:
            result += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return result

    def neg_int(self, a):
        if self.p == 2:
            return a
        p = self.p
        result, place = 0, 1
        while a:
            result += ((p - a % p) % p) * place
            a //= p
            place *= p
        return result

    def sub_int(self, a, b):
        return self.add_int(a, self.neg_int(b))

    def mul_int(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.base is None and self.e == 1:
            return a * b % self.p
        logs = self._log_exp
        if logs is not None:
            log, exp = logs
            return int(exp[(log[a] + log[b]) % (self.order - 1)])
        return self._poly_mul(a, b)

    def inv_int(self, a):
        if a == 0:
            raise DivisionByZero(f"zero has no inverse in {self!r}")
        if self.base is None and self.e == 1:
            return pow(a, -1, self.p)
        logs = self._log_exp
        if logs is not None:
            log, exp = logs
            return int(exp[(-log[a]) % (self.order - 1)])
        return self._poly_inverse(a)

    def pow_int(self, a, n):
        if n < 0:
            return self.pow_int(self.inv_int(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        logs = self._log_exp
        if logs is not None:
            log, exp = logs
            return int(exp[(int(log[a]) * n) % (self.order - 1)])
        return self._slow_pow(a, n)

    def _poly_mul(self, a, b):
        prod = self.ring.mul_poly(self.to_coeffs(a), self.to_coeffs(b))
        _, rem = self.ring.divmod_poly(prod, self.modulus)
        return self.from_coeffs(rem)

    def _raw_mul(self, a, b):
        if self.base is None and self.e == 1:
            return a * b % self.p
        return self._poly_mul(a, b)

    def _slow_pow(self, a, n):
        result, square = 1, a
        while n:
            if n & 1:
                result = self._raw_mul(result, square)
            square = self._raw_mul(square, square)
            n >>= 1
        return result

    def _poly_inverse(self, a):
        """Extended Euclid on (modulus, a) over the base"""
        ring = self.ring
        r0, r1 = list(self.modulus), _trim(self.to_coeffs(a))
        s0, s1 = [], [1]
        while r1:
            quot, rem = ring.divmod_poly(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, ring.sub_poly(s0, ring.mul_poly(quot, s1))
        scale = ring.inv(r0[0])
        inverse = [ring.mul(scale, c) for c in s0]
        _, inverse = ring.divmod_poly(inverse, self.modulus)
        return self.from_coeffs(inverse)

    @cached_property
    def primitive_element(self):
        """Smallest index generating the multiplicative group"""
        n = self.order - 1
        factors = prime_factors(n)
        for g in range(1, self.order):
            if all(self._slow_pow(g, n // r) != 1 for r in factors):
                return g
        raise NoIrreducibleFound(f"{self!r} has no primitive element, modulus is reducible")

    @cached_property
    def _log_exp(self):
        if self.order > LOG_TABLE_LIMIT:
            return None
        g = self.primitive_element
        size = self.order
        exp = np.zeros(size, np.int64)
        log = np.full(size, -1, np.int64)
        value = 1
        for i in range(size - 1):
            exp[i] = value
            log[value] = i
            value = self._raw_mul(value, g)
        exp[size - 1] = 1
        logger.debug("Built log tables for %r (generator %d)", self, g)
        return log, exp

    @cached_property
    def tables(self):
        """Full add/mul tables plus neg/inv vectors for the matrix kernels"""
        if self.order > MATRIX_TABLE_LIMIT:
            raise FieldTooLarge(f"{self!r} is too large for matrix tables (limit {MATRIX_TABLE_LIMIT})")
        size, p = self.order, self.p
        idx = np.arange(size, dtype=np.int64)
        add = np.zeros((size, size), np.int64)
        neg = np.zeros(size, np.int64)
        place = 1
        for _ in range(self.prime_degree):
            digit = (idx // place) % p
            add += ((digit[:, None] + digit[None, :]) % p) * place
            neg += ((p - digit) % p) * place
            place *= p
        log, exp = self._log_exp
        mul = np.zeros((size, size), np.int64)
        mul[1:, 1:] = exp[(log[1:, None] + log[None, 1:]) % (size - 1)]
        inv = np.zeros(size, np.int64)
        inv[1:] = exp[(-log[1:]) % (size - 1)]
        return FieldTables(add, mul, neg, inv)

    # Element level operations
    def _check(self, *elements):
        for a in elements:
            if a.field != self:
                raise FieldMismatch(f"element of {a.field!r} used in {self!r}")

    def add(self, a, b):
        self._check(a, b)
        return FieldElement(self, self.add_int(a.index, b.index))

    def mul(self, a, b):
        self._check(a, b)
        return FieldElement(self, self.mul_int(a.index, b.index))

    def neg(self, a):
        self._check(a)
        return FieldElement(self, self.neg_int(a.index))

    def inv(self, a):
        self._check(a)
        return FieldElement(self, self.inv_int(a.index))

    def pow(self, a, n):
        self._check(a)
        if a.index == 0 and n < 0:
            raise DivisionByZero("negative power of zero")
        return FieldElement(self, self.pow_int(a.index, n))


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.field.order:
            raise ArgumentOutOfRange(f"index {self.index} outside {self.field!r}")

    def __repr__(self):
        return f"{self.index}@{self.field!r}"

    def __int__(self):
        return self.index

    def __add__(self, other):
        return self.field.add(self, other)

    def __sub__(self, other):
        return self.field.add(self, self.field.neg(other))

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __truediv__(self, other):
        return self.field.mul(self, self.field.inv(other))

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, n):
        return self.field.pow(self, n)

    def inverse(self):
        return self.field.inv(self)

    def coefficients(self):
        return self.field.to_coeffs(self.index)


@lru_cache(maxsize=None)
def field_new(p, e, base=None):
    """Build GF(base^e) with the lexicographically smallest monic irreducible modulus

    Args:
        p (int): Characteristic
        e (int): Extension degree over the base
        base (FieldSpec): Base field, or None for the prime field

    Returns:
        FieldSpec: Cached, hashable field description
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if base is not None and base.p != p:
        raise FieldMismatch(f"base {base!r} does not have characteristic {p}")
    if e < 1:
        raise ArgumentOutOfRange(f"extension degree must be positive, got {e}")
    ring = PolyRing(p, base)
    if ring.order ** e > FIELD_ORDER_LIMIT:
        raise FieldTooLarge(f"field of order {ring.order}^{e} exceeds {FIELD_ORDER_LIMIT}")
    for poly in ring.monic_polys(e):
        if ring.is_irreducible(poly):
            return FieldSpec(p, e, base, tuple(poly))
    raise NoIrreducibleFound(f"no monic irreducible of degree {e} over GF({ring.order})")


def gf(q):
    """The geometric field GF(q) built directly over its prime field"""
    split = prime_power(q)
    if split is None:
        raise ArgumentOutOfRange(f"{q} is not a prime power")
    p, h = split
    return field_new(p, h)


def extension(base, m):
    """GF(q^m) as an explicit degree-m extension of base"""
    return field_new(base.p, m, base)


def field_from_dict(data):
    """Rebuild a FieldSpec from its tower form, checking the stored moduli"""
    try:
        p = int(data["p"])
        tower = [int(e) for e in data["tower"]]
        moduli = [tuple(int(c) for c in mod) for mod in data["moduli"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ArtifactError(f"malformed field block: {e}") from e
    if len(tower) != len(moduli) or not tower:
        raise ArtifactError("field block needs one modulus per tower level")
    field = None
    for e, mod in zip(tower, moduli):
        field = field_new(p, e, field)
        if field.modulus != mod:
            raise ArtifactError(f"unsupported modulus {list(mod)} for {field!r}")
    return field


def coeffs_over_base(a, base=None):
    """Coefficient vector of a over the base it was built on

    Args:
        a (FieldElement): Element of GF(q^m)
        base (FieldSpec): Requested base; defaults to the element's own base

    Returns:
        tuple: m FieldElements of the base
    """
    field = a.field
    if field.base is None or (base is not None and field.base != base):
        raise NotAnExtensionOverRequestedBase(f"{field!r} is not an extension of {base!r}")
    return tuple(FieldElement(field.base, c) for c in field.to_coeffs(a.index))


def frobenius(a):
    return a.field.pow(a, a.field.p)
