"""
Fourier Codes
Fourier unit schemes F_n·V = n·I over GF(p^m), the mds/DC row windows they
give, and the LCD arrangement of their rows.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

import numpy as np

from block_codes import BlockCode
from errors import ConstructionError, FieldConstructionError
from field_matrix import Mat, select_cols, select_rows
from finite_field import FieldElement, FieldSpec, element_of_order
from unit_scheme import SchemeSplit, UnitScheme, consecutive_split, derive_block_code, make_scaled

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FourierScheme:
    n: int
    omega: FieldElement
    scheme: UnitScheme

    @property
    def spec(self) -> FieldSpec:
        return self.scheme.spec

    def row(self, i: int) -> Mat:
        """e_i = (1, ω^i, ..., ω^{(n−1)i})."""
        return select_rows(self.scheme.U, [i % self.n])

    def inverse_column(self, i: int) -> Mat:
        """f_i, column i of F_n⁻¹, equal to (1/n)·e_{n−i}ᵀ."""
        e = self.row((self.n - i) % self.n).T
        return e.scale(self.scheme.alpha.inverse())


def fourier_scheme(n: int, field: FieldSpec) -> FourierScheme:
    if n < 2:
        raise FieldConstructionError(f"Fourier size must be >= 2, got {n}")
    if n % field.p == 0:
        raise FieldConstructionError(f"n = {n} is zero in {field}")
    omega = element_of_order(field, n)

    w = field.gf(omega.rep)
    powers = np.array([int(w ** k) for k in range(n)], dtype=np.int64)
    exponents = np.outer(np.arange(n), np.arange(n)) % n
    U = powers[exponents]
    # columns e_0ᵀ, e_{n−1}ᵀ, ..., e_1ᵀ
    V = U[(-np.arange(n)) % n].T

    scheme = make_scaled(Mat(field, U), Mat(field, V))
    logger.debug(f"F_{n} over {field} with ω = rep {omega.rep}, α = {scheme.alpha.rep}")
    return FourierScheme(n, omega, scheme)


def window_rows(n: int, start: int, r: int, step: int) -> List[int]:
    return [(start + k * step) % n for k in range(r)]


def mds_window_code(fs: FourierScheme, start: int, r: int, step: int = 1) -> BlockCode:
    """Rows e_start, e_{start+step}, ... of F_n."""
    if gcd(step, fs.n) != 1:
        raise ConstructionError(f"step {step} is not coprime to n = {fs.n}")
    if not 1 <= r < fs.n:
        raise ConstructionError(f"need 1 <= r < {fs.n}, got r = {r}")
    return derive_block_code(fs.scheme, window_rows(fs.n, start, r, step))


def lcd_order(n: int, r: int) -> List[int]:
    """e_r..e_{n−1}, e_0..e_{n−r}, then the remaining rows."""
    if not 2 * r >= n + 2 or r >= n:
        raise ConstructionError(f"LCD arrangement needs n/2 + 1 <= r < n, got n = {n}, r = {r}")
    order = list(range(r, n)) + list(range(0, n - r + 1)) + list(range(n - r + 1, r))
    if sorted(order) != list(range(n)):
        raise ConstructionError(f"arrangement {order} does not tile 0..{n - 1}")
    return order


def lcd_arrangement(fs: FourierScheme, r: int) -> Tuple[BlockCode, SchemeSplit]:
    """[n, 2(n−r)+1] LCD mds code and the split it came from."""
    order = lcd_order(fs.n, r)
    head = 2 * (fs.n - r) + 1
    permuted = fs.scheme.permuted(order)
    split = consecutive_split(permuted, [head, fs.n - head])
    code = derive_block_code(permuted, range(head))
    logger.info(f"LCD arrangement of F_{fs.n}: rows {order[:head]}")
    return code, split


def fourier_split(fs: FourierScheme, order: Sequence[int], sizes: Sequence[int]) -> SchemeSplit:
    """Reorder the rows of F_n and cut them into consecutive blocks."""
    return consecutive_split(fs.scheme.permuted(order), sizes)


def true_inverse(fs: FourierScheme) -> Mat:
    """F_n⁻¹ = α⁻¹·V."""
    return fs.scheme.V.scale(fs.scheme.alpha.inverse())


def dual_rows(fs: FourierScheme, rows: Sequence[int]) -> Mat:
    """Rows e_{n−j} for the deleted indices j, which span the dual code."""
    deleted = [j for j in range(fs.n) if j not in set(rows)]
    return select_cols(fs.scheme.V, deleted).T
