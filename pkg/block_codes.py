"""
Block Codes
Linear [n, r, d] codes given by a generator and a control matrix, the
exhaustive distance oracle, duals, LCD/DC/self-dual/mds classification and
CSS parameters.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from errors import BudgetExceededError, ConstructionError, ShapeError
from field_matrix import Mat, embed, hstack, is_orthogonal, null_space, rank, vstack
from finite_field import FieldSpec, degree_two_extension, sqrt_of
from progress_notifier import ProgressTracker

logger = logging.getLogger(__name__)

DEFAULT_CAP = 2 ** 26
# messages scanned per vectorised chunk
CHUNK_SIZE = 1 << 15


@dataclass(frozen=True)
class BlockCode:
    """Generator r×n and control n×(n−r) with generator·control = 0."""
    generator: Mat
    control: Mat

    def __post_init__(self):
        G, D = self.generator, self.control
        G._check(D)
        if G.rows < 1 or G.rows > G.cols:
            raise ShapeError(f"generator must have 1..n rows, got {G.shape}")
        if D.rows != G.cols or D.cols != G.cols - G.rows:
            raise ShapeError(f"control must be {G.cols}x{G.cols - G.rows}, got {D.shape}")
        if not (G @ D).is_zero():
            raise ConstructionError("generator·control != 0")
        if rank(G) != G.rows:
            raise ShapeError(f"generator {G!r} is not of full row rank")
        if rank(D) != D.cols:
            raise ShapeError(f"control {D!r} is not of full column rank")

    @classmethod
    def from_generator(cls, generator: Mat) -> "BlockCode":
        """Complete a generator with a control spanning its null space."""
        return cls(generator, null_space(generator).T)

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def r(self) -> int:
        return self.generator.rows

    @property
    def spec(self) -> FieldSpec:
        return self.generator.spec

    @property
    def check_matrix(self) -> Mat:
        """The (n−r)×n view Dᵀ."""
        return self.control.T

    def to_json(self) -> Dict[str, Any]:
        return {"generator": self.generator.to_json(), "control": self.control.to_json()}

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "BlockCode":
        generator = Mat.from_json(payload["generator"])
        if payload.get("control") is None:
            return cls.from_generator(generator)
        return cls(generator, Mat.from_json(payload["control"]))


@dataclass
class CodeReport:
    n: int
    k: int
    d: Optional[int]
    flags: Dict[str, Optional[bool]] = field(default_factory=dict)
    intersection_dim: int = 0
    css: Optional[Tuple[int, int, int]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "flags": dict(self.flags),
            "intersection_dim": self.intersection_dim,
            "css": list(self.css) if self.css else None,
        }


def _message_digits(lo: int, hi: int, q: int, r: int) -> np.ndarray:
    idx = np.arange(lo, hi, dtype=np.int64)
    return (idx[:, None] // (q ** np.arange(r, dtype=np.int64))) % q


def _scan(generator: Mat, lo: int, hi: int) -> int:
    spec = generator.spec
    words = spec.gf(_message_digits(lo, hi, spec.order, generator.rows)) @ generator.array
    return int(np.count_nonzero(words.view(np.ndarray), axis=1).min())


def min_distance(c: BlockCode, cap: int = DEFAULT_CAP, threads: int = 1, progress: bool = False) -> int:
    """Exact minimum weight over all q^r − 1 nonzero messages."""
    q, r = c.spec.order, c.r
    total = q ** r
    if total - 1 > cap:
        raise BudgetExceededError(f"[{c.n},{r}] distance over {c.spec}", total - 1, cap, "raise --cap to override")

    ranges = [(lo, min(lo + CHUNK_SIZE, total)) for lo in range(1, total, CHUNK_SIZE)]
    best = c.n
    with ProgressTracker(len(ranges), f"distance [{c.n},{r}]", enabled=progress) as tracker:
        if threads > 1 and len(ranges) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for weight in pool.map(lambda span: _scan(c.generator, *span), ranges):
                    best = min(best, weight)
                    tracker.update()
        else:
            for lo, hi in ranges:
                best = min(best, _scan(c.generator, lo, hi))
                tracker.update()
                if best == 1:
                    break
    logger.debug(f"[{c.n},{r}] code over {c.spec}: d = {best}")
    return best


def dual(c: BlockCode) -> BlockCode:
    if c.r == c.n:
        raise ShapeError(f"[{c.n},{c.r}] code has a zero dual")
    return BlockCode(c.control.T, c.generator.T)


def intersection_dim(c: BlockCode) -> int:
    """dim(C ∩ C⊥) from the rank of the stacked generators."""
    if c.r == c.n:
        return 0
    return c.r + (c.n - c.r) - rank(vstack([c.generator, c.control.T]))


def classify(c: BlockCode, cap: int = DEFAULT_CAP, threads: int = 1, progress: bool = False) -> CodeReport:
    try:
        d: Optional[int] = min_distance(c, cap=cap, threads=threads, progress=progress)
    except BudgetExceededError as e:
        logger.warning(f"Distance omitted: {e}")
        d = None

    dim = intersection_dim(c)
    dc = dim == c.n - c.r
    flags: Dict[str, Optional[bool]] = {
        "lcd": dim == 0,
        "dc": dc,
        "self_dual": dc and c.n == 2 * c.r,
        "mds": None if d is None else d == c.n - c.r + 1,
    }
    css = (c.n, 2 * c.r - c.n, d) if dc and d is not None else None
    report = CodeReport(n=c.n, k=c.r, d=d, flags=flags, intersection_dim=dim, css=css)
    logger.info(f"[{c.n},{c.r},{d if d is not None else '?'}] over {c.spec}: "
                + ", ".join(name for name, on in flags.items() if on))
    return report


def css_parameters(c: BlockCode, d: Optional[int] = None, cap: int = DEFAULT_CAP) -> Tuple[int, int, int]:
    """[[n, 2r−n, d]] for a dual-containing code."""
    if intersection_dim(c) != c.n - c.r:
        raise ConstructionError(f"[{c.n},{c.r}] code is not dual-containing")
    if d is None:
        d = min_distance(c, cap=cap)
    return c.n, 2 * c.r - c.n, d


def self_dual_from_orthogonal(X: Mat) -> BlockCode:
    """(I, c·X) with c²·α = −1 where X·Xᵀ = α·I.

    c comes from the field when −α⁻¹ is a square there, otherwise from the
    degree-2 extension, into which X is embedded first.
    """
    alpha = is_orthogonal(X)
    if alpha is None:
        raise ConstructionError("X·Xᵀ is not a nonzero scalar multiple of I")

    spec = X.spec
    c = sqrt_of(spec, -alpha.inverse())
    if c is None:
        extension = degree_two_extension(spec)
        X = embed(X, extension)
        spec = extension.field
        c = sqrt_of(spec, -extension.embed(alpha).inverse())
        logger.info(f"No square root of -1/{alpha.rep} in {extension.base}; working in {spec}")

    n = X.rows
    identity = Mat.identity(spec, n)
    generator = hstack([identity, X.scale(c)])
    control = vstack([-X.scale(c), identity])
    logger.debug(f"self-dual generator (I, {c.rep}·X) over {spec}")
    return BlockCode(generator, control)
