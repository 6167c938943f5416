"""
Polynomial Matrices
Matrices with entries in GF(p^m)[z], stored as a stack of coefficient
matrices (lowest degree first), plus the sliding-block (block-Toeplitz)
expansions the convolutional decision procedures are built on.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import galois

from errors import FieldMismatchError, ShapeError
from field_matrix import Mat, null_space, rank, vstack
from finite_field import FieldElement, FieldSpec

logger = logging.getLogger(__name__)


class PolyMat:
    """Immutable rows×cols matrix over GF(p^m)[z]; coeffs[j] is the z^j matrix."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Any):
        if isinstance(coeffs, galois.FieldArray):
            coeffs = coeffs.view(np.ndarray)
        values = np.array(coeffs, dtype=np.int64)
        if values.ndim != 3:
            raise ShapeError(f"coefficient stack must be 3-dimensional, got shape {values.shape}")
        if values.size and (values.min() < 0 or values.max() >= spec.order):
            raise ShapeError(f"coefficients outside [0, {spec.order}) for {spec}")
        if values.shape[0] == 0:
            values = np.zeros((1,) + values.shape[1:], dtype=np.int64)
        nonzero = [j for j in range(values.shape[0]) if np.any(values[j])]
        top = nonzero[-1] if nonzero else 0
        self.spec = spec
        self.coeffs = spec.gf(values[: top + 1])

    @classmethod
    def from_terms(cls, terms: Sequence[Mat]) -> "PolyMat":
        """Σ terms[j]·z^j."""
        if not terms:
            raise ShapeError("need at least one coefficient matrix")
        spec, shape = terms[0].spec, terms[0].shape
        for term in terms[1:]:
            if term.spec != spec:
                raise FieldMismatchError(f"cannot combine {spec} and {term.spec} coefficients")
            if term.shape != shape:
                raise ShapeError(f"coefficient shape {term.shape} differs from {shape}")
        return cls(spec, np.stack([t.reps for t in terms]))

    @classmethod
    def constant(cls, m: Mat) -> "PolyMat":
        return cls.from_terms([m])

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "PolyMat":
        return cls(spec, np.zeros((1, rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "PolyMat":
        return cls.constant(Mat.identity(spec, n))

    @property
    def rows(self) -> int:
        return self.coeffs.shape[1]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[2]

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def degree(self) -> int:
        """Largest z-power present; 0 for constant or zero matrices."""
        return self.coeffs.shape[0] - 1

    @property
    def reps(self) -> np.ndarray:
        return self.coeffs.view(np.ndarray).astype(np.int64)

    def coefficient(self, j: int) -> Mat:
        if j < 0 or j > self.degree:
            return Mat.zeros(self.spec, self.rows, self.cols)
        return Mat(self.spec, self.coeffs[j])

    def terms(self) -> List[Mat]:
        return [self.coefficient(j) for j in range(self.degree + 1)]

    def is_zero(self) -> bool:
        return not np.any(self.reps)

    def row_degrees(self) -> List[int]:
        """Degree of each row, −1 for a zero row."""
        reps = self.reps
        degrees = []
        for i in range(self.rows):
            present = np.flatnonzero(np.any(reps[:, i, :], axis=1))
            degrees.append(int(present[-1]) if present.size else -1)
        return degrees

    def column_degrees(self) -> List[int]:
        return self.T.row_degrees()

    def leading_row_matrix(self) -> Mat:
        """Row i holds the z^{δ_i} coefficient of row i."""
        reps = self.reps
        lead = np.zeros((self.rows, self.cols), dtype=np.int64)
        for i, d in enumerate(self.row_degrees()):
            if d >= 0:
                lead[i] = reps[d, i]
        return Mat(self.spec, lead)

    def _check(self, other: "PolyMat") -> None:
        if not isinstance(other, PolyMat):
            raise TypeError(f"expected PolyMat, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError(f"cannot combine {self.spec} and {other.spec} polynomial matrices")

    def _padded(self, length: int) -> np.ndarray:
        reps = self.reps
        if reps.shape[0] < length:
            pad = np.zeros((length - reps.shape[0], self.rows, self.cols), dtype=np.int64)
            reps = np.concatenate([reps, pad])
        return reps

    def __add__(self, other: "PolyMat") -> "PolyMat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        length = max(self.degree, other.degree) + 1
        gf = self.spec.gf
        return PolyMat(self.spec, gf(self._padded(length)) + gf(other._padded(length)))

    def __neg__(self) -> "PolyMat":
        return PolyMat(self.spec, -self.coeffs)

    def __sub__(self, other: "PolyMat") -> "PolyMat":
        return self + (-other)

    def __matmul__(self, other: "PolyMat") -> "PolyMat":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        gf = self.spec.gf
        out = gf.Zeros((self.degree + other.degree + 1, self.rows, other.cols))
        if self.cols == 0:
            return PolyMat(self.spec, out)
        for a in range(self.degree + 1):
            if not np.any(self.coeffs[a]):
                continue
            for b in range(other.degree + 1):
                out[a + b] += self.coeffs[a] @ other.coeffs[b]
        return PolyMat(self.spec, out)

    def scale(self, c: FieldElement) -> "PolyMat":
        if c.spec != self.spec:
            raise FieldMismatchError(f"scalar from {c.spec} applied to {self.spec} polynomial matrix")
        return PolyMat(self.spec, self.coeffs * c.value)

    @property
    def T(self) -> "PolyMat":
        return PolyMat(self.spec, np.transpose(self.reps, (0, 2, 1)))

    def shift(self, k: int) -> "PolyMat":
        """z^k·self."""
        if k < 0:
            raise ShapeError(f"negative shift {k}")
        pad = np.zeros((k, self.rows, self.cols), dtype=np.int64)
        return PolyMat(self.spec, np.concatenate([pad, self.reps]))

    def reversed(self, m: Optional[int] = None) -> "PolyMat":
        """z^m·self(z⁻¹), with m defaulting to the degree."""
        m = self.degree if m is None else m
        if m < self.degree:
            raise ShapeError(f"reversal degree {m} below polynomial degree {self.degree}")
        return PolyMat(self.spec, self._padded(m + 1)[::-1])

    def reversed_rows(self) -> "PolyMat":
        """Row i replaced by z^{δ_i}·row_i(z⁻¹)."""
        reps = self.reps
        out = np.zeros_like(reps)
        for i, d in enumerate(self.row_degrees()):
            if d >= 0:
                out[: d + 1, i, :] = reps[d::-1, i, :]
        return PolyMat(self.spec, out)

    def evaluate_rows(self, rows: Sequence[int]) -> "PolyMat":
        return PolyMat(self.spec, self.reps[:, list(rows), :])

    def entry_poly(self, i: int, j: int) -> galois.Poly:
        return galois.Poly(self.coeffs[:, i, j], field=self.spec.gf, order="asc")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMat):
            return NotImplemented
        return self.spec == other.spec and self.reps.shape == other.reps.shape and np.array_equal(self.reps, other.reps)

    def __hash__(self) -> int:
        return hash((self.spec, self.reps.shape, self.reps.tobytes()))

    def __repr__(self) -> str:
        return f"PolyMat({self.rows}x{self.cols}, degree {self.degree} over {self.spec.literal})"

    def to_json(self) -> Dict[str, Any]:
        reps = self.reps
        entries = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                column = reps[:, i, j]
                present = np.flatnonzero(column)
                top = int(present[-1]) if present.size else 0
                row.append(column[: top + 1].tolist())
            entries.append(row)
        return {"field": self.spec.literal, "rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "PolyMat":
        spec = FieldSpec.from_literal(payload["field"])
        rows, cols = payload["rows"], payload["cols"]
        entries = payload["entries"]
        length = max([len(c) for row in entries for c in row] + [1])
        values = np.zeros((length, rows, cols), dtype=np.int64)
        for i, row in enumerate(entries):
            for j, column in enumerate(row):
                values[: len(column), i, j] = column
        return cls(spec, values)


def flatten_rows(p: PolyMat, window: int) -> Mat:
    """Each row as a length n·(window+1) vector, coefficient-major."""
    if p.degree > window:
        raise ShapeError(f"degree {p.degree} exceeds window {window}")
    reps = p._padded(window + 1)
    return Mat(p.spec, np.transpose(reps, (1, 0, 2)).reshape(p.rows, (window + 1) * p.cols))


def sliding_block(g: PolyMat, window: int) -> Mat:
    """All shifts z^t·g_i with t + δ_i <= window, flattened.

    The row space is the part of the module generated by g with degree at
    most `window` whenever g is row-reduced.
    """
    pieces = []
    for i, d in enumerate(g.row_degrees()):
        if d < 0:
            continue
        row = g.evaluate_rows([i])
        for t in range(window - d + 1):
            pieces.append(flatten_rows(row.shift(t), window).reps)
    if not pieces:
        return Mat.zeros(g.spec, 0, g.cols * (window + 1))
    return Mat(g.spec, np.vstack(pieces))


def block_toeplitz(g: PolyMat, window: int) -> Mat:
    """Matrix T with flatten(P·g) = flatten(P)·T for deg P <= window.

    Row block a carries g shifted by a; column blocks run over the
    coefficients 0..window+deg g of the product.
    """
    k, n, mu = g.rows, g.cols, g.degree
    width = window + mu + 1
    out = np.zeros((k * (window + 1), n * width), dtype=np.int64)
    reps = g.reps
    for a in range(window + 1):
        for b in range(mu + 1):
            out[a * k:(a + 1) * k, (a + b) * n:(a + b + 1) * n] = reps[b]
    return Mat(g.spec, out)


def minimal_kernel_basis(g: PolyMat, max_degree: Optional[int] = None) -> PolyMat:
    """Rows x_i(z) with g·x_iᵀ = 0 forming a minimal basis of the right kernel.

    Kernel vectors are searched degree by degree in the block-Toeplitz
    expansion; a vector of degree d is kept when its z^d coefficient is
    independent of the top coefficients already kept. The rows come out
    row-reduced with the minimal indices of the kernel as row degrees.
    """
    k, n = g.rows, g.cols
    wanted = n - k
    bound = max(sum(d for d in g.row_degrees() if d > 0), 0) if max_degree is None else max_degree
    kept: List[np.ndarray] = []
    tops = Mat.zeros(g.spec, 0, n)
    for d in range(bound + 1):
        if len(kept) == wanted:
            break
        for vector in null_space(block_toeplitz(g.T, d).T).reps:
            candidate = vstack([tops, Mat(g.spec, vector[d * n:(d + 1) * n][None, :])])
            if rank(candidate) > tops.rows:
                tops = candidate
                kept.append(vector.reshape(d + 1, n))
                if len(kept) == wanted:
                    break
    if len(kept) != wanted:
        raise ShapeError(f"found {len(kept)} of {wanted} kernel vectors up to degree {bound}; generator is not of full rank")

    length = max(v.shape[0] for v in kept) if kept else 1
    stack = np.zeros((length, wanted, n), dtype=np.int64)
    for i, v in enumerate(kept):
        stack[: v.shape[0], i, :] = v
    basis = PolyMat(g.spec, stack)
    logger.debug(f"minimal kernel basis of {g!r}: row degrees {basis.row_degrees()}")
    return basis
