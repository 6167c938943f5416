"""
Unit Schemes
Pairs U·V = α·I and the unit-derived extraction every code construction
funnels through: rows of U generate, the complementary columns of V check.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from block_codes import BlockCode
from errors import SchemeError, ShapeError
from field_matrix import (
    Mat, delete_cols, embed, inverse, rank, scalar_of_identity, select_cols, select_rows, vstack,
)
from finite_field import FieldElement, FieldExtension, FieldSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnitScheme:
    U: Mat
    V: Mat
    alpha: FieldElement

    def __post_init__(self):
        if self.U.rows != self.U.cols or self.U.shape != self.V.shape:
            raise SchemeError(f"unit scheme needs square matrices of equal size, got {self.U.shape} and {self.V.shape}")
        if self.alpha.is_zero():
            raise SchemeError("scheme scalar must be nonzero")
        if self.U @ self.V != Mat.identity(self.U.spec, self.n).scale(self.alpha):
            raise SchemeError(f"U·V != {self.alpha.rep}·I for {self.U!r}")

    @property
    def n(self) -> int:
        return self.U.rows

    @property
    def spec(self) -> FieldSpec:
        return self.U.spec

    def permuted(self, order: Sequence[int]) -> "UnitScheme":
        """Reorder the rows of U and the columns of V together."""
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise SchemeError(f"{order} is not a permutation of 0..{self.n - 1}")
        return UnitScheme(select_rows(self.U, order), select_cols(self.V, order), self.alpha)

    def embedded(self, extension: FieldExtension) -> "UnitScheme":
        return UnitScheme(embed(self.U, extension), embed(self.V, extension), extension.embed(self.alpha))

    def to_json(self) -> dict:
        return {"U": self.U.to_json(), "V": self.V.to_json(), "alpha": self.alpha.rep}


@dataclass(frozen=True)
class SchemeSplit:
    """An ordered partition of the scheme's indices into row/column blocks."""
    scheme: UnitScheme
    row_partition: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        partition = tuple(tuple(int(i) for i in block) for block in self.row_partition)
        flat = [i for block in partition for i in block]
        if any(len(block) == 0 for block in partition):
            raise SchemeError("split blocks must be nonempty")
        if sorted(flat) != list(range(self.scheme.n)):
            raise SchemeError(f"partition {partition} does not tile 0..{self.scheme.n - 1}")
        object.__setattr__(self, "row_partition", partition)

    @property
    def sizes(self) -> List[int]:
        return [len(block) for block in self.row_partition]

    @property
    def row_blocks(self) -> List[Mat]:
        """Blocks A, B, ... of U."""
        return [select_rows(self.scheme.U, block) for block in self.row_partition]

    @property
    def col_blocks(self) -> List[Mat]:
        """Blocks C, D, ... of V aligned with the row blocks."""
        return [select_cols(self.scheme.V, block) for block in self.row_partition]

    @property
    def alpha(self) -> FieldElement:
        return self.scheme.alpha

    @property
    def spec(self) -> FieldSpec:
        return self.scheme.spec

    def merged(self, groups: Sequence[Sequence[int]]) -> "SchemeSplit":
        """Merge consecutive groups of blocks, e.g. [[0, 1, 2], [3]]."""
        blocks = [tuple(i for b in group for i in self.row_partition[b]) for group in groups]
        return SchemeSplit(self.scheme, tuple(blocks))

    def embedded(self, extension: FieldExtension) -> "SchemeSplit":
        return SchemeSplit(self.scheme.embedded(extension), self.row_partition)

    def verify_block_identities(self) -> bool:
        """A_i·C_j = α·δ_ij·I for every pair of blocks."""
        for i, a in enumerate(self.row_blocks):
            for j, c in enumerate(self.col_blocks):
                product = a @ c
                if i == j:
                    if scalar_of_identity(product) != self.alpha:
                        return False
                elif not product.is_zero():
                    return False
        return True


def make_scheme(U: Mat) -> UnitScheme:
    try:
        V = inverse(U)
    except ShapeError as e:
        raise SchemeError(str(e)) from e
    return UnitScheme(U, V, U.spec.one)


def make_scaled(U: Mat, V: Mat) -> UnitScheme:
    if U.shape != V.shape or U.rows != U.cols:
        raise SchemeError(f"scaled scheme needs square matrices of equal size, got {U.shape} and {V.shape}")
    product = U @ V
    alpha = scalar_of_identity(product)
    if alpha is None:
        raise SchemeError(f"U·V is not a nonzero scalar multiple of I (entry (0,0) = {product.entry(0, 0).rep})")
    return UnitScheme(U, V, alpha)


def consecutive_split(scheme: UnitScheme, sizes: Sequence[int]) -> SchemeSplit:
    """Blocks of consecutive indices with the given sizes."""
    if sum(sizes) != scheme.n or any(s <= 0 for s in sizes):
        raise SchemeError(f"block sizes {list(sizes)} do not add up to {scheme.n}")
    bounds = np.cumsum([0] + list(sizes))
    blocks = tuple(tuple(range(int(lo), int(hi))) for lo, hi in zip(bounds[:-1], bounds[1:]))
    return SchemeSplit(scheme, blocks)


def equal_split(scheme: UnitScheme, parts: int) -> SchemeSplit:
    if scheme.n % parts:
        raise SchemeError(f"{scheme.n} rows cannot be split into {parts} equal blocks")
    return consecutive_split(scheme, [scheme.n // parts] * parts)


def derive_block_code(s: UnitScheme, rows: Sequence[int]) -> BlockCode:
    """Selected rows of U generate; V without those columns is the control."""
    rows = [int(r) for r in rows]
    if not 1 <= len(rows) < s.n:
        raise ShapeError(f"need 1 <= |rows| < {s.n}, got {len(rows)} rows")
    generator = select_rows(s.U, rows)
    control = delete_cols(s.V, rows)
    code = BlockCode(generator, control)
    logger.debug(f"derived [{code.n},{code.r}] code from rows {rows}")
    return code


def complete_to_unit(A: Mat) -> UnitScheme:
    """Extend a full-rank A by standard basis rows, lowest index first."""
    r = rank(A)
    if r != A.rows:
        raise SchemeError(f"generator has rank {r} < {A.rows} rows")
    current = A
    for j in range(A.cols):
        if current.rows == A.cols:
            break
        basis = np.zeros((1, A.cols), dtype=np.int64)
        basis[0, j] = 1
        candidate = vstack([current, Mat(A.spec, basis)])
        if rank(candidate) > current.rows:
            current = candidate
    logger.debug(f"completed {A.rows}x{A.cols} generator to a unit")
    return make_scheme(current)
