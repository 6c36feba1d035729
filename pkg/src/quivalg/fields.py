"""Exact coefficient fields.

Two kinds: the rationals (backed by fractions.Fraction) and prime fields
GF(p) (backed by plain ints reduced mod p).  Field objects are tiny
stateless-ish singletons; elements are whatever the backing representation
is, so arithmetic goes through the field object rather than operator
overloading on a wrapper class.
"""

from fractions import Fraction

from .errors import QuivalgError


class Rationals:
    name = "q"
    char = 0

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        return Fraction(x)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """GF(p) for prime p.  Elements are ints in range(p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise QuivalgError("not a prime: %r" % (p,))
        self.p = p
        self.name = "f%d" % p
        self.char = p

    def from_int(self, n):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def __repr__(self):
        return "PrimeField(%d)" % self.p


_RATIONALS = Rationals()
_CACHE = {}


def field_by_name(name: str):
    """Look up a field by its short name: "q" for the rationals, "f2",
    "f3", "f5", ... for prime fields."""
    if name == "q":
        return _RATIONALS
    if name.startswith("f") and name[1:].isdigit():
        p = int(name[1:])
        if p not in _CACHE:
            _CACHE[p] = PrimeField(p)
        return _CACHE[p]
    raise QuivalgError("unknown field name: %r (try q, f2, f3, ...)" % (name,))
