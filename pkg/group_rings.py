"""
Group Rings
The group ring GF(2)[C_n × C_4], its regular representation as 4n×4n
block-circulant matrices, short-cycle certification of binary check matrices,
and LDPC block/convolutional codes derived from units of the ring.

Group elements h^j·g^i are enumerated j-major: index j·n + i.
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from block_codes import BlockCode
from conv_codes import ConvCode, build_memory1_equal, build_memory1_unequal, build_memory3, control_blocks
from errors import FieldMismatchError, GirthError, NonUnitError, ShapeError, SingularMatrixError
from field_matrix import Mat, inverse, rank, vstack
from finite_field import FieldSpec
from unit_scheme import UnitScheme, consecutive_split, derive_block_code

logger = logging.getLogger(__name__)

GF2 = FieldSpec(2)
H_ORDER = 4

CHECK_ELEMENT = "g^15 + g^9 + g^5 + h*g^21 + h*g^4 + h^2*g^2 + h^3*g^2 + h^3*g^12 @ C24xC4"

_GROUP_RE = re.compile(r"^\s*C(\d+)\s*[x×]\s*C4\s*$", re.IGNORECASE)
_TERM_RE = re.compile(r"^(?:h(?:\^(\d+))?)?\s*\*?\s*(?:g(?:\^(\d+))?)?$")


class GroupRingElem:
    """Element of GF(2)[C_n × C_4]; coeffs[j, i] is the coefficient of h^j·g^i."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Any):
        values = np.array(coeffs, dtype=np.uint8) % 2
        if n < 1 or values.shape != (H_ORDER, n):
            raise ShapeError(f"coefficients must have shape (4, {n}), got {values.shape}")
        values.setflags(write=False)
        self.n = n
        self.coeffs = values

    @classmethod
    def zero(cls, n: int) -> "GroupRingElem":
        return cls(n, np.zeros((H_ORDER, n), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "GroupRingElem":
        return cls.from_terms(n, [(0, 0)])

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Tuple[int, int]]) -> "GroupRingElem":
        """Sum of h^j·g^i over (j, i) pairs; repeated terms cancel."""
        coeffs = np.zeros((H_ORDER, n), dtype=np.uint8)
        for j, i in terms:
            coeffs[j % H_ORDER, i % n] ^= 1
        return cls(n, coeffs)

    @classmethod
    def parse(cls, literal: str, n: Optional[int] = None) -> "GroupRingElem":
        """Read "g^15 + h*g^4 + ... @ C24xC4"."""
        body, _, group = literal.partition("@")
        if group:
            match = _GROUP_RE.match(group)
            if not match:
                raise ShapeError(f"malformed group {group.strip()!r}; expected CnxC4")
            n = int(match.group(1))
        if n is None:
            raise ShapeError(f"element literal {literal!r} names no group")

        terms = []
        for raw in body.split("+"):
            term = raw.strip().replace(" ", "")
            if term == "1":
                terms.append((0, 0))
                continue
            match = _TERM_RE.match(term)
            if not term or not match:
                raise ShapeError(f"malformed group ring term {raw.strip()!r}")
            j = 0 if "h" not in term else int(match.group(1) or 1)
            i = 0 if "g" not in term else int(match.group(2) or 1)
            terms.append((j, i))
        return cls.from_terms(n, terms)

    def terms(self) -> List[Tuple[int, int]]:
        return [(int(j), int(i)) for j, i in zip(*np.nonzero(self.coeffs))]

    def indices(self) -> List[int]:
        return [j * self.n + i for j, i in self.terms()]

    @property
    def support(self) -> int:
        return int(self.coeffs.sum())

    def toggled(self, j: int, i: int) -> "GroupRingElem":
        """Add or remove the term h^j·g^i."""
        coeffs = self.coeffs.copy()
        coeffs[j % H_ORDER, i % self.n] ^= 1
        return GroupRingElem(self.n, coeffs)

    def _check(self, other: "GroupRingElem"):
        if not isinstance(other, GroupRingElem):
            raise TypeError(f"expected GroupRingElem, got {type(other).__name__}")
        if other.n != self.n:
            raise ShapeError(f"cannot combine C{self.n}xC4 and C{other.n}xC4 elements")

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        return GroupRingElem(self.n, self.coeffs ^ other.coeffs)

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        return gr_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs.tobytes()))

    def __str__(self) -> str:
        parts = []
        for j, i in self.terms():
            h = "" if j == 0 else ("h" if j == 1 else f"h^{j}")
            g = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            parts.append("*".join(p for p in (h, g) if p) or "1")
        return f"{' + '.join(parts) or '0'} @ C{self.n}xC4"

    def __repr__(self) -> str:
        return f"GroupRingElem({self})"


def gr_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    a._check(b)
    out = np.zeros((H_ORDER, a.n), dtype=np.uint8)
    for j, i in a.terms():
        out ^= np.roll(np.roll(b.coeffs, j, axis=0), i, axis=1)
    return GroupRingElem(a.n, out)


def gr_to_matrix(a: GroupRingElem) -> Mat:
    """Regular representation M[x][y] = coeff(y − x)."""
    size = H_ORDER * a.n
    idx = np.arange(size)
    j, i = idx // a.n, idx % a.n
    dj = (j[None, :] - j[:, None]) % H_ORDER
    di = (i[None, :] - i[:, None]) % a.n
    return Mat(GF2, a.coeffs[dj, di].astype(np.int64))


def gr_inverse(a: GroupRingElem) -> Optional[GroupRingElem]:
    try:
        inv = inverse(gr_to_matrix(a))
    except SingularMatrixError:
        return None
    # row of the identity element holds coeff(y)
    return GroupRingElem(a.n, inv.reps[0].reshape(H_ORDER, a.n))


def is_unit(a: GroupRingElem) -> bool:
    return rank(gr_to_matrix(a)) == H_ORDER * a.n


def _difference_counts(a: GroupRingElem) -> Dict[Tuple[int, int], int]:
    counts: Dict[Tuple[int, int], int] = {}
    terms = a.terms()
    for j1, i1 in terms:
        for j2, i2 in terms:
            if (j1, i1) != (j2, i2):
                d = ((j1 - j2) % H_ORDER, (i1 - i2) % a.n)
                counts[d] = counts.get(d, 0) + 1
    return counts


def four_cycle_count(a: GroupRingElem) -> int:
    """4-cycles of gr_to_matrix(a) from repeated differences of its support."""
    size = H_ORDER * a.n
    repeats = sum(m * (m - 1) // 2 for m in _difference_counts(a).values())
    return size * repeats // 2


@dataclass
class CycleReport:
    four_cycles: int
    six_cycles: Optional[int] = None
    max_row_weight: int = 0
    max_col_weight: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "four_cycles": self.four_cycles,
            "six_cycles": self.six_cycles,
            "max_row_weight": self.max_row_weight,
            "max_col_weight": self.max_col_weight,
        }


def _six_cycles_through(H: np.ndarray, O: np.ndarray, a: int) -> int:
    triples = (H * H[:, [a]]).T @ H
    oa = O[a]
    terms = oa[:, None] * O * oa[None, :] - triples * (oa[:, None] + O + oa[None, :]) + 2 * triples
    mask = np.ones_like(O, dtype=bool)
    mask[a, :] = False
    mask[:, a] = False
    np.fill_diagonal(mask, False)
    return int(terms[mask].sum())


def short_cycle_census(m: Mat, max_girth_checked: int = 4, threads: int = 1) -> CycleReport:
    """Tanner-graph 4-cycles (and 6-cycles when asked) of a binary matrix."""
    if m.spec.order != 2:
        raise FieldMismatchError(f"cycle census needs a binary matrix, got {m.spec}")
    if max_girth_checked not in (4, 6):
        raise ShapeError(f"max_girth_checked must be 4 or 6, got {max_girth_checked}")

    H = m.reps
    O = H.T @ H
    pairs = O * (O - 1) // 2
    np.fill_diagonal(pairs, 0)
    report = CycleReport(
        four_cycles=int(pairs.sum() // 2),
        max_row_weight=int(H.sum(axis=1).max(initial=0)),
        max_col_weight=int(H.sum(axis=0).max(initial=0)),
    )
    if max_girth_checked == 6:
        columns = range(H.shape[1])
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                total = sum(pool.map(lambda a: _six_cycles_through(H, O, a), columns))
        else:
            total = sum(_six_cycles_through(H, O, a) for a in columns)
        report.six_cycles = total // 6
    logger.debug(f"census of {m!r}: {report.to_dict()}")
    return report


def _check_girth(report: CycleReport, require_girth: Optional[int]):
    if require_girth is None:
        return
    if report.four_cycles:
        raise GirthError(f"control has {report.four_cycles} four-cycles")
    if require_girth >= 6 and report.six_cycles:
        raise GirthError(f"control has {report.six_cycles} six-cycles")


@dataclass
class LdpcDerivation:
    element: GroupRingElem
    scheme: UnitScheme
    keep_rows: Tuple[int, ...]
    code: BlockCode
    cycle_report: CycleReport = field(default_factory=lambda: CycleReport(0))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "element": str(self.element),
            "n": self.code.n,
            "k": self.code.r,
            "keep_rows": list(self.keep_rows),
            "cycles": self.cycle_report.to_dict(),
        }


def unit_scheme_of(v: GroupRingElem) -> UnitScheme:
    """U = matrix of v⁻¹, V = matrix of v."""
    u = gr_inverse(v)
    if u is None:
        raise NonUnitError(f"{v} is not a unit (support {v.support})")
    return UnitScheme(gr_to_matrix(u), gr_to_matrix(v), GF2.one)


def select_rows_for(size: int, rows: int, seed: Optional[int]) -> List[int]:
    """First `rows` indices, or a seeded sorted sample."""
    if not 1 <= rows < size:
        raise ShapeError(f"need 1 <= rows < {size}, got {rows}")
    if seed is None:
        return list(range(rows))
    rng = np.random.default_rng(seed)
    return sorted(int(i) for i in rng.choice(size, size=rows, replace=False))


def ldpc_derive(v: GroupRingElem, keep_rows: Optional[Sequence[int]] = None, require_girth: Optional[int] = None,
                rows: Optional[int] = None, seed: Optional[int] = None) -> LdpcDerivation:
    """Block LDPC code: rows of U = M(v⁻¹) generate, columns of V = M(v) check."""
    if require_girth not in (None, 4, 6):
        raise ShapeError(f"require_girth must be 4 or 6, got {require_girth}")
    scheme = unit_scheme_of(v)
    size = scheme.n
    if keep_rows is None:
        keep_rows = select_rows_for(size, rows or size // 2, seed)
    code = derive_block_code(scheme, keep_rows)
    report = short_cycle_census(code.control, 6 if require_girth == 6 else 4)
    _check_girth(report, require_girth)
    logger.info(f"LDPC [{code.n},{code.r}] from {v}: {report.four_cycles} four-cycles, "
                f"column weight {report.max_col_weight}")
    return LdpcDerivation(v, scheme, tuple(int(r) for r in keep_rows), code, report)


def _census_blocks(code: ConvCode, composite: bool) -> Dict[str, CycleReport]:
    blocks = control_blocks(code)
    reports = {f"z^{t}": short_cycle_census(block) for t, block in enumerate(blocks)}
    if composite:
        reports["composite"] = short_cycle_census(vstack(blocks))
    return reports


def ldpc_conv_memory1(v: GroupRingElem, rows: Optional[int] = None) -> Tuple[ConvCode, Dict[str, CycleReport]]:
    """G(z) = A + Bz (or A + B₁z) from the unit of v, with its control census."""
    scheme = unit_scheme_of(v)
    r = rows or scheme.n // 2
    split = consecutive_split(scheme, [r, scheme.n - r])
    code = build_memory1_equal(split) if 2 * r == scheme.n else build_memory1_unequal(split)
    return code, _census_blocks(code, composite=False)


def ldpc_conv_memory3(v: GroupRingElem) -> Tuple[ConvCode, Dict[str, CycleReport]]:
    """G(z) = A + Bz + Cz² + Dz³ over four equal row blocks of M(v⁻¹)."""
    scheme = unit_scheme_of(v)
    split = consecutive_split(scheme, [scheme.n // 4] * 4)
    code = build_memory3(split)
    return code, _census_blocks(code, composite=True)


def _clean_unit(candidate: GroupRingElem) -> bool:
    return four_cycle_count(candidate) == 0 and is_unit(candidate)


def repair_check_element(v: GroupRingElem) -> Optional[GroupRingElem]:
    """Nearest 4-cycle-free unit: v itself, then single deletions, then single additions.

    Candidates are tried in ascending group-element index.
    """
    if _clean_unit(v):
        return v
    present = set(v.indices())
    for index in sorted(present):
        candidate = v.toggled(index // v.n, index % v.n)
        if _clean_unit(candidate):
            logger.info(f"repaired {v} by deleting term {index}: {candidate}")
            return candidate
    for index in range(H_ORDER * v.n):
        if index in present:
            continue
        candidate = v.toggled(index // v.n, index % v.n)
        if _clean_unit(candidate):
            logger.info(f"repaired {v} by adding term {index}: {candidate}")
            return candidate
    logger.warning(f"no single-term repair of {v} is a 4-cycle-free unit")
    return None


def random_unit_search(n: int, support: int, seed: int = 0, max_trials: int = 1000) -> Optional[GroupRingElem]:
    """Seeded search for a 4-cycle-free unit with the given support."""
    size = H_ORDER * n
    if not 1 <= support <= size:
        raise ShapeError(f"support must lie in [1, {size}], got {support}")
    rng = np.random.default_rng(seed)
    for trial in range(max_trials):
        picks = rng.choice(size, size=support, replace=False)
        candidate = GroupRingElem.from_terms(n, [(int(p) // n, int(p) % n) for p in picks])
        if _clean_unit(candidate):
            logger.info(f"unit found after {trial + 1} trials: {candidate}")
            return candidate
    logger.warning(f"no 4-cycle-free unit of support {support} in C{n}xC4 after {max_trials} trials")
    return None


def to_alist(m: Mat) -> str:
    """alist text for a binary M×N check matrix (1-based, zero padded)."""
    if m.spec.order != 2:
        raise FieldMismatchError(f"alist needs a binary matrix, got {m.spec}")
    H = m.reps
    rows, cols = H.shape
    col_lists = [list(np.flatnonzero(H[:, c]) + 1) for c in range(cols)]
    row_lists = [list(np.flatnonzero(H[r]) + 1) for r in range(rows)]
    max_col = max((len(c) for c in col_lists), default=0)
    max_row = max((len(r) for r in row_lists), default=0)

    def padded(entries: List[int], width: int) -> str:
        return " ".join(str(int(e)) for e in entries + [0] * (width - len(entries)))

    lines = [
        f"{cols} {rows}",
        f"{max_col} {max_row}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    lines += [padded(c, max_col) for c in col_lists]
    lines += [padded(r, max_row) for r in row_lists]
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> Mat:
    lines = [line.split() for line in text.strip().splitlines()]
    cols, rows = int(lines[0][0]), int(lines[0][1])
    H = np.zeros((rows, cols), dtype=np.int64)
    for c in range(cols):
        for entry in lines[4 + c]:
            if int(entry):
                H[int(entry) - 1, c] = 1
    return Mat(GF2, H)
