"""Prime fields F_p with exact big-integer arithmetic.

A ``PrimeField`` validates its modulus once (Miller-Rabin, 64 rounds) and
hands out immutable ``FieldElement`` values.  Elements of different fields
never mix: every binary operation checks the moduli and raises
``ModulusMismatch`` on disagreement.

Field construction is interned by modulus, so ``PrimeField(101)`` is cheap
to call in a loop and elements can compare their fields by identity first.
"""

from __future__ import annotations

import random

from .errors import CompositeModulus, InversionOfZero, ModulusMismatch

_MR_ROUNDS = 64

# Deterministic witnesses make the test below exact for every n < 3.3 * 10^24;
# the random rounds extend coverage to arbitrary widths.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int, rounds: int = _MR_ROUNDS) -> bool:
    """Miller-Rabin primality test with deterministic + random bases."""
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n == sp:
            return True
        if n % sp == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    rng = random.Random(n)  # reproducible verdict for a given n
    bases = list(_SMALL_PRIMES) + [rng.randrange(2, n - 1) for _ in range(rounds)]
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_FIELD_CACHE: dict[int, "PrimeField"] = {}


class PrimeField:
    """The field F_p for a prime p."""

    __slots__ = ("p",)

    def __new__(cls, p: int):
        cached = _FIELD_CACHE.get(p)
        if cached is not None:
            return cached
        if not is_probable_prime(p):
            raise CompositeModulus(f"{p} is not prime")
        self = object.__new__(cls)
        self.p = p
        _FIELD_CACHE[p] = self
        return self

    def __call__(self, value) -> "FieldElement":
        """Coerce an int (or element of this field) into the field."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ModulusMismatch(f"element of F_{value.field.p} given to F_{self.p}")
            return value
        return FieldElement(self, value % self.p)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def random(self, rng: random.Random) -> "FieldElement":
        return FieldElement(self, rng.randrange(self.p))

    def random_nonzero(self, rng: random.Random) -> "FieldElement":
        return FieldElement(self, rng.randrange(1, self.p))

    def __eq__(self, other):
        return self is other or (isinstance(other, PrimeField) and self.p == other.p)

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class FieldElement:
    """An element of F_p in canonical range [0, p)."""

    __slots__ = ("field", "value")

    def __init__(self, field: PrimeField, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        """Return the raw int of ``other`` after a modulus check."""
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ModulusMismatch(
                    f"cannot combine F_{self.field.p} with F_{other.field.p}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, (self.value + v) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, (self.value - v) % self.field.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, (v - self.value) % self.field.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.value * v % self.field.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, -self.value % self.field.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        if v == 0:
            raise InversionOfZero("division by zero field element")
        return FieldElement(self.field, self.value * pow(v, -1, self.field.p) % self.field.p)

    def __rtruediv__(self, other):
        return self.field(other) / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(self.field, pow(self.value, exponent, self.field.p))

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise InversionOfZero("zero has no multiplicative inverse")
        return FieldElement(self.field, pow(self.value, -1, self.field.p))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __int__(self):
        return self.value

    def to_hex(self) -> str:
        """Lowercase big-endian hex, no prefix; the canonical wire form."""
        return format(self.value, "x")

    @classmethod
    def from_hex(cls, field: PrimeField, text: str) -> "FieldElement":
        return field(int(text, 16))

    def __repr__(self):
        return f"F{self.field.p}({self.value})"


def field_op(kind: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch a named field operation; ``b`` is an element or int exponent."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "neg":
        return -a
    if kind == "inv":
        return a.inverse()
    if kind == "pow":
        return a ** b
    raise ValueError(f"unknown field operation {kind!r}")


# Named moduli accepted by the CLI and the protocol layer.
#
# "toy-pairing" is the subgroup order of the bundled supersingular curve
# (see zkpin.pairing); it is the only preset the curve backend accepts.
# "bn254-scalar" is the scalar-field order of the BN254 curve, a standard
# 254-bit prime for realistic sizes.
FIELD_PRESETS: dict[str, int] = {
    "p101": 101,
    "p10007": 10007,
    "toy-pairing": 1140330959,
    "bn254-scalar": 21888242871839275222246405745257275088548364400416034343698204186575808495617,
}


def field_from_name(name: str) -> PrimeField:
    """Resolve a preset name or explicit hex/decimal prime into a field."""
    if name in FIELD_PRESETS:
        return PrimeField(FIELD_PRESETS[name])
    try:
        p = int(name, 16) if name.startswith("0x") else int(name)
    except ValueError:
        raise CompositeModulus(f"unknown field preset or prime: {name!r}") from None
    return PrimeField(p)
