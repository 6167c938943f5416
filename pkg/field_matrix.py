"""
Field Matrices
Dense exact matrices over GF(p^m): products, inverses, rank, row/column
surgery and the orthogonality predicates the unit schemes rely on.
"""

import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import galois

from errors import FieldMismatchError, ShapeError, SingularMatrixError
from finite_field import FieldElement, FieldExtension, FieldSpec

logger = logging.getLogger(__name__)


class Mat:
    """Immutable matrix over a FieldSpec; entries are canonical integer reps."""

    __slots__ = ("spec", "array")

    def __init__(self, spec: FieldSpec, data: Any):
        if isinstance(data, galois.FieldArray):
            data = data.view(np.ndarray)
        values = np.array(data, dtype=np.int64)
        if values.ndim != 2:
            raise ShapeError(f"matrix data must be 2-dimensional, got shape {values.shape}")
        if values.size and (values.min() < 0 or values.max() >= spec.order):
            raise ShapeError(f"entries outside [0, {spec.order}) for {spec}")
        self.spec = spec
        self.array = spec.gf(values)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Mat":
        return cls(spec, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "Mat":
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence[int]]) -> "Mat":
        return cls(spec, [list(r) for r in rows])

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def reps(self) -> np.ndarray:
        return self.array.view(np.ndarray).astype(np.int64)

    @property
    def T(self) -> "Mat":
        return Mat(self.spec, self.array.T)

    def entry(self, i: int, j: int) -> FieldElement:
        return self.spec.element(int(self.array[i, j]))

    def tolist(self) -> List[List[int]]:
        return self.reps.tolist()

    def is_zero(self) -> bool:
        return not np.any(self.reps)

    def _check(self, other: "Mat") -> None:
        if not isinstance(other, Mat):
            raise TypeError(f"expected Mat, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError(f"cannot combine {self.spec} and {other.spec} matrices")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return Mat.zeros(self.spec, self.rows, other.cols)
        return Mat(self.spec, self.array @ other.array)

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Mat(self.spec, self.array + other.array)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Mat(self.spec, self.array - other.array)

    def __neg__(self) -> "Mat":
        return Mat(self.spec, -self.array)

    def scale(self, c: FieldElement) -> "Mat":
        if c.spec != self.spec:
            raise FieldMismatchError(f"scalar from {c.spec} applied to {self.spec} matrix")
        return Mat(self.spec, self.array * c.value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.reps, other.reps)

    def __hash__(self) -> int:
        return hash((self.spec, self.shape, self.reps.tobytes()))

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols} over {self.spec.literal})"

    def to_json(self) -> Dict[str, Any]:
        return {"field": self.spec.literal, "rows": self.rows, "cols": self.cols, "data": self.tolist()}

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "Mat":
        spec = FieldSpec.from_literal(payload["field"])
        data = payload["data"]
        mat = cls(spec, np.array(data, dtype=np.int64).reshape(payload["rows"], payload["cols"]))
        return mat


def _check_indices(idx: Sequence[int], bound: int, what: str) -> List[int]:
    idx = [int(i) for i in idx]
    if len(set(idx)) != len(idx):
        raise ShapeError(f"duplicate {what} index in {idx}")
    bad = [i for i in idx if not 0 <= i < bound]
    if bad:
        raise ShapeError(f"{what} indices {bad} out of range [0, {bound})")
    return idx


def select_rows(m: Mat, idx: Sequence[int]) -> Mat:
    idx = _check_indices(idx, m.rows, "row")
    return Mat(m.spec, m.reps[idx, :].reshape(len(idx), m.cols))


def select_cols(m: Mat, idx: Sequence[int]) -> Mat:
    idx = _check_indices(idx, m.cols, "column")
    return Mat(m.spec, m.reps[:, idx].reshape(m.rows, len(idx)))


def delete_cols(m: Mat, idx: Sequence[int]) -> Mat:
    dropped = set(_check_indices(idx, m.cols, "column"))
    return select_cols(m, [j for j in range(m.cols) if j not in dropped])


def vstack(mats: Iterable[Mat]) -> Mat:
    mats = list(mats)
    if not mats:
        raise ShapeError("vstack needs at least one matrix")
    for other in mats[1:]:
        mats[0]._check(other)
        if other.cols != mats[0].cols:
            raise ShapeError(f"vstack column mismatch: {mats[0].cols} vs {other.cols}")
    return Mat(mats[0].spec, np.vstack([m.reps for m in mats]))


def hstack(mats: Iterable[Mat]) -> Mat:
    mats = list(mats)
    if not mats:
        raise ShapeError("hstack needs at least one matrix")
    for other in mats[1:]:
        mats[0]._check(other)
        if other.rows != mats[0].rows:
            raise ShapeError(f"hstack row mismatch: {mats[0].rows} vs {other.rows}")
    return Mat(mats[0].spec, np.hstack([m.reps for m in mats]))


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return int(np.linalg.matrix_rank(m.array))


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise ShapeError(f"inverse of non-square {m.shape} matrix")
    try:
        inv = Mat(m.spec, np.linalg.inv(m.array))
    except np.linalg.LinAlgError as e:
        raise SingularMatrixError(f"{m!r} is singular") from e
    if logger.isEnabledFor(logging.DEBUG):
        if m @ inv != Mat.identity(m.spec, m.rows):
            raise SingularMatrixError(f"inverse check failed for {m!r}")
        logger.debug(f"inverse verified for {m!r}")
    return inv


def null_space(m: Mat) -> Mat:
    """Rows spanning {x : m·xᵀ = 0}."""
    if m.rows == 0:
        return Mat.identity(m.spec, m.cols)
    if rank(m) == m.cols:
        return Mat.zeros(m.spec, 0, m.cols)
    return Mat(m.spec, m.array.null_space())


def solve(a: Mat, b: Mat) -> Optional[Mat]:
    """One X with a·X = b, or None when the system is inconsistent."""
    a._check(b)
    if a.rows != b.rows:
        raise ShapeError(f"solve row mismatch: {a.shape} vs {b.shape}")
    solution = np.zeros((a.cols, b.cols), dtype=np.int64)
    if a.rows == 0 or a.cols == 0:
        return Mat(a.spec, solution) if b.is_zero() else None

    reduced = hstack([a, b]).array.row_reduce(ncols=a.cols).view(np.ndarray)
    for row in reduced:
        left, right = row[:a.cols], row[a.cols:]
        nonzero = np.flatnonzero(left)
        if nonzero.size == 0:
            if np.any(right):
                return None
            continue
        solution[nonzero[0], :] = right
    return Mat(a.spec, solution)


def scalar_of_identity(m: Mat) -> Optional[FieldElement]:
    """α when m = α·I with α ≠ 0, else None."""
    if m.rows != m.cols or m.rows == 0:
        return None
    alpha = m.entry(0, 0)
    if alpha.is_zero():
        return None
    if m != Mat.identity(m.spec, m.rows).scale(alpha):
        return None
    return alpha


def is_orthogonal(m: Mat) -> Optional[FieldElement]:
    """α when m·mᵀ = α·I, else None."""
    if m.rows != m.cols:
        raise ShapeError(f"orthogonality of non-square {m.shape} matrix")
    return scalar_of_identity(m @ m.T)


def is_monomial_orthogonal(m: Mat) -> Optional[Tuple[FieldElement, List[int]]]:
    """(α, π) when m·mᵀ = α·P for the permutation matrix P of π, else None.

    Fourier matrices land here with π(i) = -i mod n.
    """
    if m.rows != m.cols:
        raise ShapeError(f"orthogonality of non-square {m.shape} matrix")
    gram = (m @ m.T).reps
    perm: List[int] = []
    for row in gram:
        nonzero = np.flatnonzero(row)
        if nonzero.size != 1:
            return None
        perm.append(int(nonzero[0]))
    if sorted(perm) != list(range(m.rows)):
        return None
    values = {int(gram[i, j]) for i, j in enumerate(perm)}
    if len(values) != 1:
        return None
    return m.spec.element(values.pop()), perm


def embed(m: Mat, extension: FieldExtension) -> Mat:
    if m.spec != extension.base:
        raise FieldMismatchError(f"{m!r} is not over {extension.base}")
    return Mat(extension.field, extension.embed_reps(m.reps))
