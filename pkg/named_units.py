"""
Named Units
Fixed unit schemes behind the classical examples: the Hamming unit completing
L, the Golay reverse circulant, the 4×4 binary orthogonal matrix and a Paley
Hadamard matrix of order 12.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from errors import ConstructionError
from field_matrix import Mat
from finite_field import FieldSpec
from unit_scheme import UnitScheme, make_scaled

logger = logging.getLogger(__name__)

GF2 = FieldSpec(2)

HAMMING_U = [
    [1, 1, 1, 1, 1, 1, 1],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
    [1, 0, 1, 1, 1, 0, 0],
    [0, 1, 0, 0, 1, 1, 1],
    [0, 0, 0, 1, 1, 1, 0],
]

HAMMING_V = [
    [0, 0, 1, 1, 1, 0, 0],
    [1, 1, 0, 1, 1, 1, 1],
    [0, 1, 1, 1, 0, 1, 1],
    [1, 1, 0, 0, 1, 0, 1],
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 1],
]

GOLAY_FIRST_ROW = [0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 0, 0]

X4_ROWS = [
    [0, 1, 1, 1],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 1, 1],
]


@dataclass(frozen=True)
class NamedUnit:
    name: str
    scheme: UnitScheme
    provenance: str

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "provenance": self.provenance, **self.scheme.to_json()}


def hamming_unit() -> NamedUnit:
    """L = rows 0..3 generate [7,4,3]; K = rows 4..6 generate [7,3,3]."""
    scheme = make_scaled(Mat(GF2, HAMMING_U), Mat(GF2, HAMMING_V))
    return NamedUnit("hamming", scheme, "Hamming [7,4,3] generator L completed to a unit")


def reverse_circulant(first_row: List[int]) -> np.ndarray:
    n = len(first_row)
    index = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return np.asarray(first_row, dtype=np.int64)[index]


def golay_x() -> Mat:
    return Mat(GF2, reverse_circulant(GOLAY_FIRST_ROW))


def golay_unit() -> NamedUnit:
    X = golay_x()
    return NamedUnit("golay", make_scaled(X, X), "reverse circulant with X = Xᵀ, X² = I₁₂")


def binary_x4() -> NamedUnit:
    X = Mat(GF2, X4_ROWS)
    return NamedUnit("x4", make_scaled(X, X), "4×4 binary orthogonal X = Xᵀ, X² = I₄")


def extended_hamming_x() -> NamedUnit:
    """Same X as binary_x4; (I₄, X) generates the extended Hamming [8,4,4]."""
    X = Mat(GF2, X4_ROWS)
    return NamedUnit("extended-hamming", make_scaled(X, X), "(I₄, X) extended Hamming generator")


def _quadratic_character(p: int) -> np.ndarray:
    chi = -np.ones(p, dtype=np.int64)
    chi[0] = 0
    chi[(np.arange(1, p) ** 2) % p] = 1
    return chi


def paley_hadamard12() -> np.ndarray:
    """±1 Hadamard matrix of order 12, first row and column all +1."""
    q = 11
    chi = _quadratic_character(q)
    jacobsthal = chi[(np.arange(q)[None, :] - np.arange(q)[:, None]) % q]
    skew = np.zeros((q + 1, q + 1), dtype=np.int64)
    skew[0, 1:] = 1
    skew[1:, 0] = -1
    skew[1:, 1:] = jacobsthal
    H = np.eye(q + 1, dtype=np.int64) + skew
    H[1:] *= -1
    return H


def hadamard_matrix(spec: FieldSpec) -> Mat:
    """H₁₂ reduced into GF(p^m) with −1 ↦ p − 1."""
    if spec.p in (2, 3):
        raise ConstructionError(f"Hadamard codes need characteristic other than 2 or 3, got {spec}")
    H = paley_hadamard12()
    return Mat(spec, np.where(H > 0, 1, spec.p - 1))


def hadamard_unit(spec: Optional[FieldSpec] = None) -> NamedUnit:
    spec = spec or FieldSpec(5)
    H = hadamard_matrix(spec)
    scheme = make_scaled(H, H.T)
    logger.debug(f"H₁₂ over {spec}: α = {scheme.alpha.rep}")
    return NamedUnit("hadamard12", scheme, f"Paley H₁₂ over {spec}, H·Hᵀ = 12·I")


NAMED_UNITS: Dict[str, Callable[..., NamedUnit]] = {
    "hamming": hamming_unit,
    "golay": golay_unit,
    "x4": binary_x4,
    "extended-hamming": extended_hamming_x,
    "hadamard12": hadamard_unit,
}


def named_unit(name: str, spec: Optional[FieldSpec] = None) -> NamedUnit:
    if name not in NAMED_UNITS:
        raise ConstructionError(f"unknown unit {name!r}; choose from {sorted(NAMED_UNITS)}")
    if name == "hadamard12":
        return hadamard_unit(spec)
    if spec is not None and spec != GF2:
        logger.warning(f"{name} is a binary unit; ignoring field {spec}")
    return NAMED_UNITS[name]()
