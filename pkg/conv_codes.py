"""
Convolutional Codes
Memory-1/2/3 builders from unit-scheme splits, catastrophicity, duals and the
LCD / dual-containing / self-dual classification of polynomial generators.

Every builder verifies its construction identities (G·H = 0, G·R = I) when the
ConvCode is created; a failed identity is a construction bug.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Dict, List, Optional, Tuple

import galois
import numpy as np

from block_codes import BlockCode, min_distance
from errors import ClassificationError, ConstructionError, ShapeError
from field_matrix import Mat, hstack, is_monomial_orthogonal, rank, select_cols, select_rows, solve, vstack
from finite_field import FieldElement, FieldSpec, quadratic_extension, sqrt_minus_one
from poly_matrix import PolyMat, block_toeplitz, flatten_rows, minimal_kernel_basis, sliding_block
from unit_scheme import SchemeSplit

logger = logging.getLogger(__name__)

TWISTS = ("plain", "i")
PATTERNS = ("rate34_mem1", "rate34_mem3")
# largest linear system (entries) attempted by the right-inverse search
RIGHT_INVERSE_LIMIT = 1 << 22
# largest number of partial minors expanded by the gcd test
MINOR_LIMIT = 50_000


@dataclass(frozen=True)
class ConvCode:
    generator: PolyMat
    control: Optional[PolyMat] = None
    right_inverse: Optional[PolyMat] = None
    label: str = ""

    def __post_init__(self):
        G = self.generator
        if G.rows < 1 or G.rows >= G.cols:
            raise ShapeError(f"generator must be k×n with 0 < k < n, got {G.shape}")
        if min(G.row_degrees()) < 0:
            raise ConstructionError("generator has a zero row")
        if self.control is not None:
            if self.control.shape != (G.cols, G.cols - G.rows):
                raise ShapeError(f"control must be {G.cols}x{G.cols - G.rows}, got {self.control.shape}")
            if not (G @ self.control).is_zero():
                raise ConstructionError(f"construction identity G(z)·H(z) = 0 failed for {self.label or G!r}")
        if self.right_inverse is not None:
            if not G @ self.right_inverse == PolyMat.identity(G.spec, G.rows):
                raise ConstructionError(f"construction identity G(z)·R(z) = I failed for {self.label or G!r}")
        elif rank(block_toeplitz(G, self.delta)) != G.rows * (self.delta + 1):
            raise ShapeError(f"generator {G!r} is not of full rank over F(z)")

    @property
    def spec(self) -> FieldSpec:
        return self.generator.spec

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def row_degrees(self) -> List[int]:
        return self.generator.row_degrees()

    @property
    def delta(self) -> int:
        return sum(self.row_degrees)

    @property
    def memory(self) -> int:
        return max(self.row_degrees)

    @property
    def parameters(self) -> Tuple[int, int, int, int]:
        """(n, k, δ, μ)."""
        return self.n, self.k, self.delta, self.memory

    def to_json(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "parameters": list(self.parameters),
            "generator": self.generator.to_json(),
            "control": self.control.to_json() if self.control is not None else None,
            "right_inverse": self.right_inverse.to_json() if self.right_inverse is not None else None,
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "ConvCode":
        def optional(key: str) -> Optional[PolyMat]:
            return PolyMat.from_json(payload[key]) if payload.get(key) else None

        return cls(PolyMat.from_json(payload["generator"]), optional("control"),
                   optional("right_inverse"), payload.get("label", ""))


def gsb(n: int, r: int, delta: int) -> int:
    """Generalised Singleton bound (n−r)(⌊δ/r⌋+1) + δ + 1."""
    if not 0 < r < n or delta < 0:
        raise ValueError(f"gsb needs 0 < r < n and δ >= 0, got ({n}, {r}, {delta})")
    return (n - r) * (delta // r + 1) + delta + 1


def _twist_scalar(split: SchemeSplit, twist: str) -> Tuple[SchemeSplit, Optional[FieldElement]]:
    if twist not in TWISTS:
        raise ConstructionError(f"unknown twist {twist!r}; expected one of {TWISTS}")
    if twist == "plain":
        return split, None
    i = sqrt_minus_one(split.spec)
    if i is None:
        extension = quadratic_extension(split.spec)
        split = split.embedded(extension)
        i = sqrt_minus_one(extension.field)
    return split, i


def _right_inverse_of(block: Mat, alpha: FieldElement) -> PolyMat:
    return PolyMat.constant(block.scale(alpha.inverse()))


def build_memory1_equal(split: SchemeSplit, twist: str = "plain") -> ConvCode:
    """G = A + Bz (or A + iBz) with control D − Cz (or iD + Cz)."""
    if len(split.sizes) != 2 or split.sizes[0] != split.sizes[1]:
        raise ConstructionError(f"equal memory-1 build needs two equal blocks, got sizes {split.sizes}")
    split, i = _twist_scalar(split, twist)
    A, B = split.row_blocks
    C, D = split.col_blocks

    if i is None:
        generator = PolyMat.from_terms([A, B])
        control = PolyMat.from_terms([D, -C])
    else:
        generator = PolyMat.from_terms([A, B.scale(i)])
        control = PolyMat.from_terms([D.scale(i), C])
    code = ConvCode(generator, control, _right_inverse_of(C, split.alpha), f"memory1-equal-{twist}")
    logger.info(f"Built {code.parameters} memory-1 code over {code.spec} ({twist})")
    return code


def build_memory1_unequal(split: SchemeSplit, twist: str = "plain") -> ConvCode:
    """G = A + B₁z with B₁ = (0_t; B) and control D − C₁z, C₁ the last n−r columns of C."""
    if len(split.sizes) != 2:
        raise ConstructionError(f"memory-1 build needs two blocks, got sizes {split.sizes}")
    r, n = split.sizes[0], split.scheme.n
    if 2 * r <= n:
        raise ConstructionError(f"unequal memory-1 build needs 2r > n, got r = {r}, n = {n}")
    if twist == "i" and split.spec.p != 2 and is_monomial_orthogonal(split.scheme.U) is None:
        raise ConstructionError("twist 'i' with unequal blocks needs an orthogonal unit")

    split, i = _twist_scalar(split, twist)
    A, B = split.row_blocks
    C, D = split.col_blocks
    t = 2 * r - n
    B1 = vstack([Mat.zeros(split.spec, t, n), B])
    C1 = select_cols(C, range(t, r))

    if i is None:
        generator = PolyMat.from_terms([A, B1])
        control = PolyMat.from_terms([D, -C1])
    else:
        generator = PolyMat.from_terms([A, B1.scale(i)])
        control = PolyMat.from_terms([D.scale(i), C1])
    code = ConvCode(generator, control, _right_inverse_of(C, split.alpha), f"memory1-unequal-{twist}")
    logger.info(f"Built {code.parameters} memory-1 code over {code.spec} ({twist})")
    return code


def build_memory3(split: SchemeSplit, twist: str = "plain") -> ConvCode:
    """G = A + Bz + Cz² + Dz³ from four equal blocks.

    Control (F,G,H) − (E,H,G)z − (H,E,F)z² + (G,F,E)z³ with E..H the matching
    column blocks of V.
    """
    if len(split.sizes) != 4 or len(set(split.sizes)) != 1:
        raise ConstructionError(f"memory-3 build needs four equal blocks, got sizes {split.sizes}")
    if twist not in TWISTS:
        raise ConstructionError(f"unknown twist {twist!r}; expected one of {TWISTS}")
    if twist == "i" and split.spec.p != 2:
        raise ConstructionError("memory-3 build defines twist 'i' only in characteristic 2")

    A, B, C, D = split.row_blocks
    E, F, G, H = split.col_blocks
    generator = PolyMat.from_terms([A, B, C, D])
    control = PolyMat.from_terms([
        hstack([F, G, H]),
        -hstack([E, H, G]),
        -hstack([H, E, F]),
        hstack([G, F, E]),
    ])
    code = ConvCode(generator, control, _right_inverse_of(E, split.alpha), "memory3")
    logger.info(f"Built {code.parameters} memory-3 code over {code.spec}")
    return code


def build_memory2_three_blocks(split: SchemeSplit) -> ConvCode:
    """G = A + Bz + Cz² with control (E,F) − (D,E)z."""
    if len(split.sizes) != 3 or len(set(split.sizes)) != 1:
        raise ConstructionError(f"three-block build needs three equal blocks, got sizes {split.sizes}")
    A, B, C = split.row_blocks
    D, E, F = split.col_blocks
    generator = PolyMat.from_terms([A, B, C])
    control = PolyMat.from_terms([hstack([E, F]), -hstack([D, E])])
    code = ConvCode(generator, control, _right_inverse_of(D, split.alpha), "memory2-three-blocks")
    logger.info(f"Built {code.parameters} three-block code over {code.spec}")
    return code


def mixed_rate_builders(split: SchemeSplit, pattern: str) -> ConvCode:
    """Rate-3/4 patterns on four equal blocks."""
    if pattern not in PATTERNS:
        raise ConstructionError(f"unknown pattern {pattern!r}; expected one of {PATTERNS}")
    if len(split.sizes) != 4 or len(set(split.sizes)) != 1:
        raise ConstructionError(f"{pattern} needs four equal blocks, got sizes {split.sizes}")

    if pattern == "rate34_mem1":
        code = build_memory1_unequal(split.merged([[0, 1, 2], [3]]), twist="i")
        return ConvCode(code.generator, code.control, code.right_inverse, pattern)

    if split.spec.p != 2:
        raise ConstructionError("rate34_mem3 annihilates its control only in characteristic 2")
    E0, E1, E2, E3 = split.row_blocks
    F0, F1, F2, F3 = split.col_blocks
    generator = PolyMat.from_terms([
        vstack([E0, E1, E2]),
        vstack([E1, E0, E3]),
        vstack([E2, E3, E0]),
        vstack([E3, E2, E1]),
    ])
    control = PolyMat.from_terms([F3, F2, F1, F0])
    code = ConvCode(generator, control, None, pattern)
    logger.info(f"Built {code.parameters} {pattern} code over {code.spec}")
    return code


def find_right_inverse(G: PolyMat, max_degree: int) -> Optional[PolyMat]:
    """R(z) with G(z)·R(z) = I and deg R <= max_degree, if one exists."""
    k, n, mu = G.rows, G.cols, G.degree
    rows, cols = k * (mu + max_degree + 1), n * (max_degree + 1)
    if rows * cols > RIGHT_INVERSE_LIMIT:
        logger.debug(f"right-inverse search skipped: {rows}x{cols} system")
        return None

    system = block_toeplitz(G.T, max_degree).T
    target = vstack([Mat.identity(G.spec, k), Mat.zeros(G.spec, rows - k, k)])
    solution = solve(system, target)
    if solution is None:
        return None
    blocks = [select_rows(solution, range(b * n, (b + 1) * n)) for b in range(max_degree + 1)]
    R = PolyMat.from_terms(blocks)
    if not G @ R == PolyMat.identity(G.spec, k):
        raise ConstructionError("right-inverse solution failed verification")
    logger.debug(f"found right inverse of degree {R.degree}")
    return R


def _minor_gcd_is_unit(G: PolyMat) -> Optional[bool]:
    """Whether the k×k minors of G have a constant gcd; None when too large."""
    k, n = G.rows, G.cols
    if sum(comb(n, i) for i in range(1, k + 1)) > MINOR_LIMIT:
        return None
    gf = G.spec.gf
    entries = [[G.entry_poly(i, j) for j in range(n)] for i in range(k)]
    minors: Dict[Tuple[int, ...], galois.Poly] = {(j,): entries[0][j] for j in range(n)}
    for i in range(1, k):
        expanded: Dict[Tuple[int, ...], galois.Poly] = {}
        for cols in combinations(range(n), i + 1):
            det = galois.Poly.Zero(gf)
            for pos, j in enumerate(cols):
                rest = cols[:pos] + cols[pos + 1:]
                term = entries[i][j] * minors[rest]
                det = det - term if (i + pos) % 2 else det + term
            expanded[cols] = det
        minors = expanded

    g: Optional[galois.Poly] = None
    for minor in minors.values():
        if not np.any(minor.coeffs):
            continue
        g = minor if g is None else galois.gcd(g, minor)
        if g.degree == 0:
            return True
    return False


def is_noncatastrophic(c: ConvCode) -> bool:
    if c.right_inverse is not None:
        return True
    if find_right_inverse(c.generator, c.delta) is not None:
        return True
    decided = _minor_gcd_is_unit(c.generator)
    if decided is None:
        logger.warning(f"catastrophicity of {c.parameters} undecided within limits; reporting catastrophic")
        return False
    return decided


def right_inverse(c: ConvCode) -> Optional[PolyMat]:
    if c.right_inverse is not None:
        return c.right_inverse
    return find_right_inverse(c.generator, c.delta)


def dual_generator(c: ConvCode) -> PolyMat:
    """Basic generator of the dual code.

    z^m·H(z⁻¹) with H = controlᵀ and m the control degree, kept when it is
    row-reduced with the degree of a minimal basis of the kernel of G(z).
    Otherwise it spans only a submodule of the dual and the reversed minimal
    kernel basis is returned instead.
    """
    if c.control is None:
        raise ClassificationError(f"{c.label or 'code'} carries no control matrix")
    formula = c.control.T.reversed(c.control.degree)
    basic = minimal_kernel_basis(c.generator).reversed_rows()
    if is_row_reduced(formula) and sum(formula.row_degrees()) == sum(basic.row_degrees()):
        return formula
    logger.info(f"dual encoder from the control of {c.label or c.parameters} has degree "
                f"{sum(formula.row_degrees())}, not {sum(basic.row_degrees())}; using a minimal basis")
    return basic


def dual_code(c: ConvCode) -> ConvCode:
    """The dual as a ConvCode, controlled by z^μ·G(z⁻¹)ᵀ."""
    control = c.generator.T.reversed(c.generator.degree)
    return ConvCode(dual_generator(c), control, None, f"dual of {c.label}" if c.label else "dual")


def is_row_reduced(g: PolyMat) -> bool:
    return rank(g.leading_row_matrix()) == g.rows


def module_contains(outer: PolyMat, inner: PolyMat, outer_inverse: Optional[PolyMat] = None) -> bool:
    """Whether every row of `inner` lies in the module generated by `outer`."""
    if outer_inverse is not None:
        P = inner @ outer_inverse
        return P @ outer == inner
    window = inner.degree
    if not is_row_reduced(outer):
        window += sum(outer.row_degrees())
        logger.warning("containment decided on a sliding window of a non-reduced generator")
    lattice = sliding_block(outer, window)
    stacked = vstack([lattice, flatten_rows(inner, window)])
    return rank(stacked) == rank(lattice)


def intersection_rank(G: PolyMat, G_dual: PolyMat) -> int:
    """Dimension of the intersection of the two sliding lattices at μ(G)+μ(Ĝ)+1."""
    window = G.degree + G_dual.degree + 1
    a, b = sliding_block(G, window), sliding_block(G_dual, window)
    return rank(a) + rank(b) - rank(vstack([a, b]))


def is_self_orthogonal(c: ConvCode) -> bool:
    """G(z)·G(z⁻¹)ᵀ = 0 as a Laurent identity."""
    return (c.generator @ c.generator.T.reversed(c.generator.degree)).is_zero()


def conv_classify(c: ConvCode) -> str:
    """One of self_dual, dc, lcd, none."""
    G_dual = dual_generator(c)
    R = right_inverse(c)
    if R is None:
        logger.warning(f"no polynomial right inverse for {c.label or c.parameters}; using sliding-block containment")

    if module_contains(c.generator, G_dual, R):
        R_dual = find_right_inverse(G_dual, sum(G_dual.row_degrees()))
        if module_contains(G_dual, c.generator, R_dual):
            return "self_dual"
        return "dc"
    if intersection_rank(c.generator, G_dual) == 0:
        return "lcd"
    return "none"


@dataclass
class ConvReport:
    n: int
    k: int
    delta: int
    memory: int
    label: str
    classification: str
    flags: Dict[str, bool] = field(default_factory=dict)
    noncatastrophic: bool = True
    free_distance: Optional[int] = None
    settled: Optional[bool] = None
    proven: Optional[bool] = None
    gsb: int = 0
    css: Optional[Tuple[int, int, int]] = None

    @property
    def mds(self) -> Optional[bool]:
        return None if self.free_distance is None else self.free_distance == self.gsb

    def to_dict(self) -> Dict[str, Any]:
        return {
            "parameters": [self.n, self.k, self.delta, self.memory],
            "label": self.label,
            "class": self.classification,
            "flags": dict(self.flags),
            "noncatastrophic": self.noncatastrophic,
            "free_distance": self.free_distance,
            "settled": self.settled,
            "proven": self.proven,
            "gsb": self.gsb,
            "mds": self.mds,
            "css": list(self.css) if self.css else None,
        }


def conv_report(c: ConvCode, depth: Optional[int] = None, cap: int = 2 ** 26, threads: int = 1,
                compute_distance: bool = True, allow_catastrophic: bool = False,
                progress: bool = False) -> ConvReport:
    from free_distance import free_distance

    classification = conv_classify(c) if c.control is not None else "none"
    noncatastrophic = is_noncatastrophic(c)
    report = ConvReport(
        n=c.n, k=c.k, delta=c.delta, memory=c.memory, label=c.label,
        classification=classification,
        flags={
            "lcd": classification == "lcd",
            "dc": classification in ("dc", "self_dual"),
            "self_dual": classification == "self_dual",
            "self_orthogonal": is_self_orthogonal(c),
        },
        noncatastrophic=noncatastrophic,
        gsb=gsb(c.n, c.k, c.delta),
    )
    if compute_distance and not (noncatastrophic or allow_catastrophic):
        logger.warning(f"{c.label or c.parameters} is catastrophic; free distance skipped")
    elif compute_distance:
        result = free_distance(c, depth=depth, cap=cap, threads=threads,
                               allow_catastrophic=allow_catastrophic, progress=progress)
        report.free_distance, report.settled, report.proven = result.value, result.settled, result.proven
        if report.flags["dc"]:
            report.css = (c.n, 2 * c.k - c.n, result.value)
    logger.info(f"{c.label or 'code'} {c.parameters}: {classification}, d_f = {report.free_distance}")
    return report


def _block_distance(rows: Mat, cap: int) -> int:
    return min_distance(BlockCode.from_generator(rows), cap=cap)


def closed_form_equal(split: SchemeSplit, cap: int = 2 ** 26) -> int:
    """d(A) + d(B), a lower bound on d_f for the equal memory-1 build."""
    A, B = split.row_blocks
    return _block_distance(A, cap) + _block_distance(B, cap)


def closed_form_unequal(split: SchemeSplit, cap: int = 2 ** 26) -> int:
    """min{d(A₁), d(A) + d((A₁; B))} with A₁ the first 2r−n rows of A."""
    A, B = split.row_blocks
    t = 2 * A.rows - split.scheme.n
    if t <= 0:
        return _block_distance(A, cap) + _block_distance(B, cap)
    A1 = select_rows(A, range(t))
    return min(_block_distance(A1, cap), _block_distance(A, cap) + _block_distance(vstack([A1, B]), cap))


def control_blocks(c: ConvCode) -> List[Mat]:
    if c.control is None:
        raise ClassificationError(f"{c.label or 'code'} carries no control matrix")
    return c.control.terms()


def describe(c: ConvCode) -> str:
    n, k, delta, mu = c.parameters
    return f"({n},{k},{delta};{mu})"


def split_sizes(text: str) -> List[int]:
    """Parse "4,3" into block sizes."""
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        raise ConstructionError(f"malformed split {text!r}") from e
    if not sizes:
        raise ConstructionError(f"malformed split {text!r}")
    return sizes
