"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field. ``p == 0`` means the rationals, otherwise GF(p).

    Rational elements are ``Fraction``; GF(p) elements are ints in ``[0, p)``.
    """

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"GF({self.p}): modulus must be prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        if self.p == 0:
            return "q"
        if self.p == 2:
            return "2"
        return f"p:{self.p}"

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce an int, ``Fraction`` or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def normalize(self, x):
        return x if self.p == 0 else x % self.p


Q = FieldSpec(0)
GF2 = FieldSpec(2)


def parse_field(text: str) -> FieldSpec:
    """Parse ``q``, ``2`` or ``p:<prime>``."""
    s = text.strip().lower()
    if s in ("q", "qq", "rationals"):
        return Q
    if s == "2":
        return GF2
    if s.startswith("p:"):
        try:
            p = int(s[2:])
        except ValueError:
            raise ValueError(f"bad field spec {text!r}") from None
        return FieldSpec(p)
    raise ValueError(f"bad field spec {text!r} (expected q, 2 or p:<prime>)")
