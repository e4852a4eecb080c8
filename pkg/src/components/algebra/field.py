"""Finite fields GF(p) and GF(2^h) backed by ``galois``.

A :class:`FieldSpec` describes the field (kind, characteristic, degree and, for
binary extensions, the bit-encoded modulus). Elements are canonical integers
``0 <= value < q``; for binary extensions the integer is the polynomial-basis bit
packing, so in GF(4) with modulus x^2 + x + 1 the generator "alpha" is 2 and
"alpha + 1" is 3.
"""

import logging
import re
from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple, Type, Union

import galois

from constants import DEFAULT_BINARY_MODULI, MAX_BINARY_DEGREE, MAX_FIELD_ORDER
from exceptions import FieldDivisionByZeroError, FieldError, FieldMismatchError
from utils import is_power_of_two

logger = logging.getLogger(__name__)

_LITERAL_PATTERN = re.compile(
    r"^gf\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*(0b[01]+|0x[0-9a-f]+|\d+)\s*)?\)$",
    re.IGNORECASE,
)


class FieldKind(str, Enum):
    PRIME = "prime"
    BINARY = "binary"


@lru_cache(maxsize=None)
def _galois_field(characteristic: int, degree: int, modulus: Optional[int]):
    if degree == 1:
        return galois.GF(characteristic)
    return galois.GF(characteristic**degree, irreducible_poly=modulus, verify=False)


def _is_irreducible_binary(modulus: int) -> bool:
    poly = galois.Poly.Int(modulus, field=galois.GF(2))
    return poly.degree >= 1 and poly.is_irreducible()


class FieldSpec:
    def __init__(
        self,
        kind: Union[FieldKind, str],
        characteristic: int,
        degree: int = 1,
        modulus: Optional[int] = None,
    ):
        try:
            kind = FieldKind(kind)
        except ValueError:
            raise FieldError(f"Unknown field kind {kind!r}") from None

        if characteristic < 2 or not galois.is_prime(characteristic):
            raise FieldError(f"Field characteristic {characteristic} is not prime")
        if degree < 1:
            raise FieldError(f"Extension degree must be >= 1, got {degree}")

        if kind is FieldKind.PRIME:
            if degree != 1:
                raise FieldError(
                    "Odd-characteristic and prime-kind extensions are not supported; "
                    "use a binary extension for degree > 1"
                )
            if modulus is not None:
                raise FieldError("Prime fields take no modulus")
        else:
            if characteristic != 2:
                raise FieldError(
                    f"Binary extensions need characteristic 2, got {characteristic}"
                )
            if degree > MAX_BINARY_DEGREE:
                raise FieldError(f"Binary extension degree {degree} exceeds 16")
            if modulus is None:
                modulus = DEFAULT_BINARY_MODULI[degree]
            if modulus.bit_length() - 1 != degree:
                raise FieldError(
                    f"Modulus {bin(modulus)} does not have degree {degree}"
                )
            if not _is_irreducible_binary(modulus):
                raise FieldError(f"Modulus {bin(modulus)} is reducible over GF(2)")

        order = characteristic**degree
        if order > MAX_FIELD_ORDER:
            raise FieldError(f"Field order {order} exceeds the 2^16 cap")

        self._kind = kind
        self._characteristic = characteristic
        self._degree = degree
        self._modulus = modulus
        self._order = order

    @property
    def kind(self) -> FieldKind:
        return self._kind

    @property
    def characteristic(self) -> int:
        return self._characteristic

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def modulus(self) -> Optional[int]:
        return self._modulus

    @property
    def order(self) -> int:
        return self._order

    @property
    def gf(self) -> Type[galois.FieldArray]:
        """The ``galois`` array class for this field."""
        return _galois_field(self._characteristic, self._degree, self._modulus)

    @property
    def literal(self) -> str:
        if self._kind is FieldKind.PRIME:
            return f"gf({self._characteristic})"
        if self._modulus == DEFAULT_BINARY_MODULI[self._degree]:
            return f"gf(2^{self._degree})"
        return f"gf(2^{self._degree};{bin(self._modulus)})"

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def elements(self) -> Tuple["FieldElement", ...]:
        return tuple(FieldElement(value, self) for value in range(self._order))

    def _key(self):
        return self._kind, self._characteristic, self._degree, self._modulus

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldSpec({self.literal})"


class FieldElement:
    """An immutable element of the field described by ``spec``."""

    __slots__ = ("_value", "_spec")

    def __init__(self, value: int, spec: FieldSpec):
        value = int(value)
        if not 0 <= value < spec.order:
            raise FieldError(f"Value {value} is not an element of {spec.literal}")
        object.__setattr__(self, "_value", value)
        object.__setattr__(self, "_spec", spec)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def value(self) -> int:
        return self._value

    @property
    def spec(self) -> FieldSpec:
        return self._spec

    def _scalar(self):
        return self._spec.gf(self._value)

    def _check(self, other: "FieldElement") -> "FieldElement":
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other._spec != self._spec:
            raise FieldMismatchError(
                f"Cannot combine elements of {self._spec.literal} and "
                f"{other._spec.literal}"
            )
        return other

    def _wrap(self, scalar) -> "FieldElement":
        return FieldElement(int(scalar), self._spec)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._wrap(self._scalar() + other._scalar())

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._wrap(self._scalar() - other._scalar())

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._wrap(self._scalar() * other._scalar())

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __neg__(self) -> "FieldElement":
        return self._wrap(-self._scalar())

    def inverse(self) -> "FieldElement":
        if self._value == 0:
            raise FieldDivisionByZeroError(
                f"0 has no multiplicative inverse in {self._spec.literal}"
            )
        return self._wrap(self._scalar() ** -1)

    def is_zero(self) -> bool:
        return self._value == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self._value == other._value
            and self._spec == other._spec
        )

    def __hash__(self) -> int:
        return hash((self._value, self._spec))

    def __int__(self) -> int:
        return self._value

    def __repr__(self) -> str:
        return f"{self._value}@{self._spec.literal}"


def field_make(
    kind: Union[FieldKind, str],
    p: int,
    h: int = 1,
    modulus: Optional[int] = None,
) -> FieldSpec:
    return FieldSpec(kind, p, h, modulus)


def parse_field_literal(text: str) -> FieldSpec:
    """Parse ``gf(7)``, ``gf(2^3)`` or ``gf(2^3;0b1011)``.

    A bare power of two such as ``gf(8)`` is read as ``gf(2^3)``.
    """
    match = _LITERAL_PATTERN.match(text.strip())
    if not match:
        raise FieldError(f"Malformed field literal {text!r}")

    base, exponent, modulus = match.groups()
    base = int(base)
    modulus = int(modulus, 0) if modulus else None

    if exponent is not None:
        if base != 2:
            raise FieldError(f"Only binary extensions are supported, got {text!r}")
        return FieldSpec(FieldKind.BINARY, 2, int(exponent), modulus)

    if galois.is_prime(base):
        if modulus is not None:
            raise FieldError(f"Prime field literal {text!r} takes no modulus")
        return FieldSpec(FieldKind.PRIME, base)
    if is_power_of_two(base) and base > 2:
        return FieldSpec(FieldKind.BINARY, 2, base.bit_length() - 1, modulus)
    raise FieldError(f"{base} is neither prime nor a power of two")


def smallest_field(at_least: int) -> FieldSpec:
    """Smallest supported field (prime or binary extension) with q >= ``at_least``."""
    q = max(2, at_least)
    while q <= MAX_FIELD_ORDER:
        if galois.is_prime(q):
            return FieldSpec(FieldKind.PRIME, q)
        if is_power_of_two(q):
            return FieldSpec(FieldKind.BINARY, 2, q.bit_length() - 1)
        q += 1
    raise FieldError(f"No supported field of order >= {at_least}")


def elements(spec: FieldSpec) -> Tuple[FieldElement, ...]:
    return spec.elements()


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return _binary(a, b, FieldElement.__add__)


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return _binary(a, b, FieldElement.__sub__)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return _binary(a, b, FieldElement.__mul__)


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def _binary(a: FieldElement, b: FieldElement, operation) -> FieldElement:
    if not isinstance(b, FieldElement):
        raise FieldMismatchError(f"Expected a FieldElement, got {type(b).__name__}")
    return operation(a, b)
