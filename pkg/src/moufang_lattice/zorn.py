"""Split octonions over F2 as Zorn vector matrices.

A vector matrix ``[a | alpha | beta | b]`` has scalar diagonal entries ``a``
(top-left) and ``b`` (bottom-right) and vector entries ``alpha`` (top-right)
and ``beta`` (bottom-left).  Multiplication::

    [a|al|be|b] * [c|ga|de|d] = [ac + al.de | a ga + al d - be x de |
                                 be c + b de + al x ga | be.ga + bd]

In characteristic 2 every minus sign is a plus; the code below adds
everywhere and reduces mod 2.  An odd-characteristic port has to restore
the signs in the off-diagonal entries and in ``det``/``inverse``.

Elements are numbered by an 8-bit code read lexicographically on
``(a, alpha1, alpha2, alpha3, beta1, beta2, beta3, b)``.
"""

from __future__ import annotations

import re
from itertools import product
from typing import Iterator, NamedTuple


class ZornDomainError(ValueError):
    """Raised for operations that need a unit-norm (det = 1) element."""


class FVec3(NamedTuple):
    """A vector of F2^3."""

    x1: int
    x2: int
    x3: int

    @classmethod
    def parse(cls, text: str) -> "FVec3":
        if not re.fullmatch(r"[01]{3}", text):
            raise ValueError(f"expected three binary digits, got {text!r}")
        return cls(*(int(c) for c in text))

    @classmethod
    def from_code(cls, code: int) -> "FVec3":
        return cls((code >> 2) & 1, (code >> 1) & 1, code & 1)

    @property
    def code(self) -> int:
        return (self.x1 << 2) | (self.x2 << 1) | self.x3

    @property
    def weight(self) -> int:
        """Number of nonzero coordinates (an integer, not reduced mod 2)."""
        return self.x1 + self.x2 + self.x3

    def __add__(self, other):  # type: ignore[override]
        return FVec3((self.x1 + other.x1) & 1, (self.x2 + other.x2) & 1, (self.x3 + other.x3) & 1)

    def scale(self, c: int) -> "FVec3":
        return self if c & 1 else ZERO3

    def __str__(self) -> str:
        return f"{self.x1}{self.x2}{self.x3}"


ZERO3 = FVec3(0, 0, 0)
ALL_VECTORS: tuple[FVec3, ...] = tuple(FVec3(*v) for v in product((0, 1), repeat=3))


def dot(alpha: FVec3, beta: FVec3) -> int:
    return (alpha.x1 * beta.x1 + alpha.x2 * beta.x2 + alpha.x3 * beta.x3) & 1


def cross(alpha: FVec3, beta: FVec3) -> FVec3:
    return FVec3(
        (alpha.x2 * beta.x3 + alpha.x3 * beta.x2) & 1,
        (alpha.x3 * beta.x1 + alpha.x1 * beta.x3) & 1,
        (alpha.x1 * beta.x2 + alpha.x2 * beta.x1) & 1,
    )


class VMatrix(NamedTuple):
    """Zorn vector matrix over F2."""

    a: int
    alpha: FVec3
    beta: FVec3
    b: int

    @classmethod
    def from_code(cls, code: int) -> "VMatrix":
        if not 0 <= code < 256:
            raise ValueError(f"code out of range: {code}")
        return cls((code >> 7) & 1, FVec3.from_code(code >> 4), FVec3.from_code(code >> 1), code & 1)

    @property
    def code(self) -> int:
        return (self.a << 7) | (self.alpha.code << 4) | (self.beta.code << 1) | self.b

    def __mul__(self, other):  # type: ignore[override]
        return vm_mul(self, other)

    def __str__(self) -> str:
        return format_element(self)


IDENTITY = VMatrix(1, ZERO3, ZERO3, 1)


def vm_mul(x: VMatrix, y: VMatrix) -> VMatrix:
    a, alpha, beta, b = x
    c, gamma, delta, d = y
    return VMatrix(
        (a * c + dot(alpha, delta)) & 1,
        gamma.scale(a) + alpha.scale(d) + cross(beta, delta),
        beta.scale(c) + delta.scale(b) + cross(alpha, gamma),
        (dot(beta, gamma) + b * d) & 1,
    )


def det(x: VMatrix) -> int:
    return (x.a * x.b + dot(x.alpha, x.beta)) & 1


def inverse(x: VMatrix) -> VMatrix:
    """Inverse of a unit-norm element: swap the diagonal, keep the vectors."""
    if det(x) != 1:
        raise ZornDomainError(f"{format_element(x)} has determinant 0")
    return VMatrix(x.b, x.alpha, x.beta, x.a)


def element_order(x: VMatrix) -> int:
    """Order in the norm-1 loop, read off the diagonal."""
    if det(x) != 1:
        raise ZornDomainError(f"{format_element(x)} has determinant 0")
    if x.a != x.b:
        return 3
    return 1 if x == IDENTITY else 2


def unit_elements() -> list[VMatrix]:
    """All 120 elements of norm 1, in code order."""
    return [x for x in map(VMatrix.from_code, range(256)) if det(x) == 1]


def inv(alpha: FVec3 | str, beta: FVec3 | str) -> VMatrix:
    """The involution with off-diagonal vectors ``alpha``, ``beta``.

    The diagonal is forced by det = 1: a = b = 1 + alpha.beta.
    """
    alpha, beta = _vec(alpha), _vec(beta)
    a = (1 + dot(alpha, beta)) & 1
    x = VMatrix(a, alpha, beta, a)
    if x == IDENTITY:
        raise ZornDomainError("inv(000,000) is the identity, not an involution")
    return x


def tri(alpha: FVec3 | str, beta: FVec3 | str, a: int) -> VMatrix:
    """The order-3 element with ``a`` in the top-left entry and ``1 + a`` bottom-right."""
    alpha, beta = _vec(alpha), _vec(beta)
    if dot(alpha, beta) != 1:
        raise ZornDomainError(f"tri({alpha},{beta},{a}) needs alpha.beta = 1")
    return VMatrix(a & 1, alpha, beta, (a + 1) & 1)


def _vec(v: FVec3 | str) -> FVec3:
    return FVec3.parse(v) if isinstance(v, str) else v


_FULL = re.compile(r"\[([01])\|([01]{3})\|([01]{3})\|([01])\]")
_INV = re.compile(r"inv\(([01]{3}),([01]{3})\)")
_TRI = re.compile(r"tri\(([01]{3}),([01]{3}),([01])\)")


def parse_element(text: str) -> VMatrix:
    """Parse ``[a|a1a2a3|b1b2b3|b]``, ``inv(...)`` or ``tri(...)`` notation."""
    s = text.replace(" ", "")
    if m := _FULL.fullmatch(s):
        return VMatrix(int(m[1]), FVec3.parse(m[2]), FVec3.parse(m[3]), int(m[4]))
    if m := _INV.fullmatch(s):
        return inv(m[1], m[2])
    if m := _TRI.fullmatch(s):
        return tri(m[1], m[2], int(m[3]))
    raise ValueError(f"cannot parse element {text!r}")


def format_element(x: VMatrix, short: bool = False) -> str:
    """Full bracket notation, or the inv/tri shorthand when ``short`` and applicable."""
    if short and det(x) == 1 and x != IDENTITY:
        if x.a == x.b:
            return f"inv({x.alpha},{x.beta})"
        return f"tri({x.alpha},{x.beta},{x.a})"
    return f"[{x.a}|{x.alpha}|{x.beta}|{x.b}]"


def iter_powers(x: VMatrix) -> Iterator[VMatrix]:
    """x, x^2, x^3, ... until the identity is produced (inclusive)."""
    p = x
    for _ in range(256):
        yield p
        if p == IDENTITY:
            return
        p = vm_mul(p, x)
    raise ZornDomainError(f"{format_element(x)} has no finite order")
