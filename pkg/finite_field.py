"""
Finite Field Layer
GF(p^m) specifications and elements backed by galois field arrays.

Elements are carried as canonical integers: the polynomial-basis coordinate
vector read base-p with the low-degree coefficient least significant, which is
also galois' integer representation.
"""

import re
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Optional, Tuple, Type, Union

import numpy as np
import galois

from errors import FieldConstructionError, FieldMismatchError

logger = logging.getLogger(__name__)

# Fixed moduli, coefficients low degree first. Missing (p, m) pairs fall back to
# galois' lexicographically minimal irreducible polynomial.
MODULUS_TABLE: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
    (13, 2): (2, 12, 1),
    (17, 2): (3, 16, 1),
}

_LITERAL_RE = re.compile(
    r"^\s*gf\(\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:;\s*modulus\s*=\s*\[([0-9,\s]*)\])?\s*\)\s*$",
    re.IGNORECASE,
)


@lru_cache(maxsize=None)
def _galois_class(p: int, m: int, modulus: Tuple[int, ...]) -> Type[galois.FieldArray]:
    if m == 1:
        return galois.GF(p)
    poly = galois.Poly(list(modulus), field=galois.GF(p), order="asc")
    return galois.GF(p ** m, irreducible_poly=poly)


def _default_modulus(p: int, m: int) -> Tuple[int, ...]:
    if m == 1:
        return (0, 1)
    if (p, m) in MODULUS_TABLE:
        return MODULUS_TABLE[(p, m)]
    poly = galois.irreducible_poly(p, m, method="min")
    coeffs = tuple(int(c) for c in poly.coeffs[::-1])
    logger.debug(f"No tabled modulus for GF({p}^{m}); using minimal irreducible {poly}")
    return coeffs


@dataclass(frozen=True)
class FieldSpec:
    """A finite field GF(p^m) with a fixed monic irreducible modulus."""
    p: int
    m: int = 1
    modulus: Tuple[int, ...] = ()

    def __post_init__(self):
        if not galois.is_prime(self.p):
            raise FieldConstructionError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldConstructionError(f"extension degree must be >= 1, got {self.m}")

        modulus = tuple(int(c) for c in self.modulus) or _default_modulus(self.p, self.m)
        if len(modulus) != self.m + 1 or modulus[-1] != 1:
            raise FieldConstructionError(
                f"modulus {list(modulus)} is not monic of degree {self.m}"
            )
        if any(c < 0 or c >= self.p for c in modulus):
            raise FieldConstructionError(f"modulus {list(modulus)} has coefficients outside GF({self.p})")
        if self.m > 1:
            poly = galois.Poly(list(modulus), field=galois.GF(self.p), order="asc")
            if not poly.is_irreducible():
                raise FieldConstructionError(f"modulus {poly} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", modulus)

    @classmethod
    def from_literal(cls, text: str) -> "FieldSpec":
        """Parse `gf(p^m)`, `gf(q)` or `gf(p^m; modulus=[c0,...,1])`."""
        match = _LITERAL_RE.match(text)
        if not match:
            raise FieldConstructionError(f"malformed field literal: {text!r}")
        base, exponent, modulus_text = match.groups()
        base = int(base)
        if exponent is not None:
            p, m = base, int(exponent)
        elif galois.is_prime(base):
            p, m = base, 1
        else:
            primes, powers = galois.factors(base)
            if len(primes) != 1:
                raise FieldConstructionError(f"{base} is not a prime power")
            p, m = int(primes[0]), int(powers[0])
        modulus: Tuple[int, ...] = ()
        if modulus_text:
            modulus = tuple(int(c) for c in modulus_text.split(",") if c.strip())
        return cls(p, m, modulus)

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def gf(self) -> Type[galois.FieldArray]:
        """The galois FieldArray class realising this field."""
        return _galois_class(self.p, self.m, self.modulus)

    @property
    def literal(self) -> str:
        if self.m == 1:
            return f"gf({self.p})"
        if self.modulus == _default_modulus(self.p, self.m):
            return f"gf({self.p}^{self.m})"
        coeffs = ",".join(str(c) for c in self.modulus)
        return f"gf({self.p}^{self.m}; modulus=[{coeffs}])"

    def __str__(self) -> str:
        return self.literal

    def element(self, rep: int) -> "FieldElement":
        return FieldElement(self, int(rep))

    def from_int(self, k: int) -> "FieldElement":
        """The image of the integer k under Z -> GF(p^m)."""
        return FieldElement(self, int(k) % self.p)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    rep: int

    def __post_init__(self):
        if not 0 <= self.rep < self.spec.order:
            raise FieldConstructionError(f"rep {self.rep} outside [0, {self.spec.order}) for {self.spec}")

    @property
    def value(self) -> galois.FieldArray:
        return self.spec.gf(self.rep)

    def is_zero(self) -> bool:
        return self.rep == 0

    def _coerce(self, other: Union["FieldElement", int]) -> "FieldElement":
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, np.integer)):
            return self.spec.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        return arith(self, self._coerce(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return arith(self, self._coerce(other), "sub")

    def __mul__(self, other):
        return arith(self, self._coerce(other), "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return arith(self, self._coerce(other), "div")

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, int(-self.value))

    def __pow__(self, exponent: int) -> "FieldElement":
        return FieldElement(self.spec, int(self.value ** int(exponent)))

    def inverse(self) -> "FieldElement":
        return arith(self.spec.one, self, "div")

    def __int__(self) -> int:
        return self.rep

    def __repr__(self) -> str:
        return f"FieldElement({self.rep} in {self.spec.literal})"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply one of add/sub/mul/div to two elements of the same field."""
    if a.spec != b.spec:
        raise FieldMismatchError(f"cannot combine {a.spec} and {b.spec}")
    x, y = a.value, b.value
    if op == "add":
        result = x + y
    elif op == "sub":
        result = x - y
    elif op == "mul":
        result = x * y
    elif op == "div":
        if b.rep == 0:
            raise ZeroDivisionError(f"division by zero in {a.spec}")
        result = x / y
    else:
        raise ValueError(f"unknown field operation {op!r}")
    return FieldElement(a.spec, int(result))


def element_of_order(spec: FieldSpec, n: int) -> FieldElement:
    """Smallest-rep element of multiplicative order exactly n."""
    if n < 1 or (spec.order - 1) % n != 0:
        raise FieldConstructionError(
            f"no element of order {n} in {spec}: q-1 = {spec.order - 1}"
        )
    if n == 1:
        return spec.one

    elements = spec.gf.elements[1:]
    candidates = np.asarray(elements ** n == 1)
    primes, _ = galois.factors(n)
    for prime in primes:
        candidates &= np.asarray(elements ** (n // int(prime)) != 1)
    hits = np.flatnonzero(candidates)
    # n | q-1 guarantees a cyclic subgroup of order n
    omega = spec.element(int(hits[0]) + 1)
    logger.debug(f"element of order {n} in {spec}: rep {omega.rep}")
    return omega


def sqrt_of(spec: FieldSpec, a: FieldElement) -> Optional[FieldElement]:
    """Smallest-rep square root of a, or None when a is a non-square."""
    if a.spec != spec:
        raise FieldMismatchError(f"{a!r} is not in {spec}")
    elements = spec.gf.elements
    hits = np.flatnonzero(np.asarray(elements * elements == a.value))
    if hits.size == 0:
        return None
    return spec.element(int(hits[0]))


def sqrt_minus_one(spec: FieldSpec) -> Optional[FieldElement]:
    return sqrt_of(spec, -spec.one)


@dataclass(frozen=True)
class FieldExtension:
    """A degree-2 extension together with the embedding of its base field."""
    base: FieldSpec
    field: FieldSpec
    generator_image: int

    @cached_property
    def table(self) -> np.ndarray:
        # image of every base rep, indexed by rep
        base, ext = self.base, self.field
        reps = np.arange(base.order)
        digits = (reps[:, None] // base.p ** np.arange(base.m)) % base.p
        beta = ext.gf(self.generator_image)
        powers = ext.gf([int(beta ** k) for k in range(base.m)])
        images = ext.gf(digits) @ powers
        return np.asarray(images, dtype=np.int64)

    def embed(self, element: FieldElement) -> FieldElement:
        if element.spec != self.base:
            raise FieldMismatchError(f"{element!r} is not in {self.base}")
        return self.field.element(int(self.table[element.rep]))

    def embed_reps(self, reps: np.ndarray) -> np.ndarray:
        return self.table[np.asarray(reps, dtype=np.int64)]


def degree_two_extension(spec: FieldSpec) -> FieldExtension:
    """GF(p^{2m}) containing spec, without any precondition on spec."""
    ext = FieldSpec(spec.p, 2 * spec.m)
    base_modulus = galois.Poly(list(spec.modulus), field=ext.gf, order="asc")
    values = base_modulus(ext.gf.elements)
    roots = np.flatnonzero(np.asarray(values == 0))
    extension = FieldExtension(spec, ext, int(roots[0]))
    logger.debug(f"{spec} embeds into {ext} via x -> rep {extension.generator_image}")
    return extension


def quadratic_extension(spec: FieldSpec) -> FieldExtension:
    """Extend a field lacking sqrt(-1) to one that has it."""
    if sqrt_minus_one(spec) is not None:
        raise FieldConstructionError(f"{spec} already contains a square root of -1")
    extension = degree_two_extension(spec)
    logger.info(f"Extended {spec} to {extension.field} for a square root of -1")
    return extension
