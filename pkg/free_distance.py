"""
Free Distance Oracles
Exact minimum weights of convolutional codes by min-sum over the minimal
encoder trellis of a polynomial generator.

The state after time t holds the last δ_i inputs of every row i of G(z)
(q^δ states in total). Weights count nonzero field coefficients across all
coordinate polynomials.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from conv_codes import ConvCode, gsb, is_noncatastrophic
from errors import BudgetExceededError, CatastrophicEncoderError, ShapeError
from progress_notifier import ProgressTracker

logger = logging.getLogger(__name__)

DEFAULT_CAP = 2 ** 26
INF = np.int64(1) << 40
# int64 cells materialised per vectorised block
BLOCK_CELLS = 1 << 22


@dataclass
class FreeDistanceResult:
    value: int
    settled: bool
    proven: bool
    depth: int
    history: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "settled": self.settled,
            "proven": self.proven,
            "depth": self.depth,
            "history": list(self.history),
        }


def _digits(indices: np.ndarray, q: int, width: int) -> np.ndarray:
    """Base-q digits, most significant first."""
    if width == 0:
        return np.zeros((len(indices), 0), dtype=np.int64)
    return (indices[:, None] // (q ** np.arange(width - 1, -1, -1, dtype=np.int64))) % q


class Trellis:
    """Branch weights and next-state map of the row-degree realisation of G(z).

    State digits are ordered with the oldest input of every memory row first
    (the digits that fall out at the next step), so a state index splits as
    (dropped, kept) by a reshape.
    """

    def __init__(self, code: ConvCode, cap: int = DEFAULT_CAP, threads: int = 1):
        self.code = code
        self.threads = threads
        spec = code.spec
        q, n = spec.order, code.n
        degrees = code.row_degrees
        self.q = q

        memory_rows = [i for i, d in enumerate(degrees) if d > 0]
        free_rows = [i for i, d in enumerate(degrees) if d == 0]
        dropped = [(i, degrees[i]) for i in memory_rows]
        kept = [(i, a) for i in memory_rows for a in range(1, degrees[i])]
        axes = dropped + kept
        width = len(axes)

        self.states = q ** width
        self.inputs = q ** code.k
        required = self.states * self.inputs
        if required > cap:
            raise BudgetExceededError(f"trellis of {code.label or code.parameters}", required, cap,
                                      "raise --cap to override")

        self.n_dropped = q ** len(dropped)
        self.n_kept = q ** len(kept)
        self.n_memory_inputs = q ** len(memory_rows)
        self.n_free_inputs = q ** len(free_rows)

        gf = spec.gf
        reps = code.generator.reps
        lag_rows = np.array([reps[a, i] for i, a in axes], dtype=np.int64).reshape(width, n)

        def outputs(digits: np.ndarray, rows: np.ndarray):
            if digits.shape[1] == 0:
                return gf.Zeros((digits.shape[0], n))
            return gf(digits) @ gf(rows)

        memory_digits = _digits(np.arange(self.n_memory_inputs), q, len(memory_rows))
        free_digits = _digits(np.arange(self.n_free_inputs), q, len(free_rows))
        input_words = (outputs(memory_digits, reps[0, memory_rows].reshape(len(memory_rows), n))[:, None, :]
                       + outputs(free_digits, reps[0, free_rows].reshape(len(free_rows), n))[None, :, :])

        weights = np.empty((self.states, self.n_memory_inputs, self.n_free_inputs), dtype=np.uint8)
        chunk = max(1, BLOCK_CELLS // (self.inputs * n))
        for lo in range(0, self.states, chunk):
            hi = min(lo + chunk, self.states)
            contribution = outputs(_digits(np.arange(lo, hi), q, width), lag_rows)
            words = contribution[:, None, None, :] + input_words[None, :, :, :]
            weights[lo:hi] = np.count_nonzero(words.view(np.ndarray), axis=-1)
        self.weights = weights.reshape(self.n_dropped, self.n_kept, self.n_memory_inputs, self.n_free_inputs)

        # next state from (kept digits, memory-row inputs)
        kept_digits = _digits(np.arange(self.n_kept), q, len(kept))
        source = np.zeros((self.n_kept, self.n_memory_inputs, width), dtype=np.int64)
        for p, (i, a) in enumerate(axes):
            if a == 1:
                source[:, :, p] = memory_digits[None, :, memory_rows.index(i)]
            else:
                source[:, :, p] = kept_digits[:, None, kept.index((i, a - 1))]
        place = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
        self.next_state = (source * place).sum(axis=-1) if width else np.zeros((1, 1), dtype=np.int64)

        self.flush = self._flush_cost(code.memory)
        logger.debug(f"trellis for {code.parameters}: {self.states:,} states x {self.inputs:,} inputs")

    def _flush_cost(self, memory: int) -> np.ndarray:
        """Weight emitted while feeding zeros until the state returns to 0."""
        current = np.arange(self.states)
        total = np.zeros(self.states, dtype=np.int64)
        for _ in range(memory):
            d, k = current // self.n_kept, current % self.n_kept
            total += self.weights[d, k, 0, 0]
            current = self.next_state[k, 0]
        return total

    def _block(self, metric: np.ndarray, out: np.ndarray, lo: int, hi: int, skip_zero_input: bool):
        candidates = metric[:, :, None, None] + self.weights[:, :, lo:hi, :]
        if skip_zero_input and lo == 0:
            candidates[:, :, 0, 0] = INF
        out[self.next_state[:, lo:hi]] = candidates.min(axis=(0, 3))

    def step(self, metric: np.ndarray, skip_zero_input: bool = False) -> np.ndarray:
        """One time step of min-sum over every input."""
        shaped = metric.reshape(self.n_dropped, self.n_kept)
        out = np.full(self.states, INF, dtype=np.int64)
        per_input = self.n_dropped * self.n_kept * self.n_free_inputs
        width = max(1, BLOCK_CELLS // per_input)
        spans = [(lo, min(lo + width, self.n_memory_inputs)) for lo in range(0, self.n_memory_inputs, width)]
        if self.threads > 1 and len(spans) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                list(pool.map(lambda span: self._block(shaped, out, *span, skip_zero_input), spans))
        else:
            for lo, hi in spans:
                self._block(shaped, out, lo, hi, skip_zero_input)
        return np.minimum(out, INF)

    def zero_step(self, metric: np.ndarray) -> np.ndarray:
        """One time step with the all-zero input only."""
        shaped = metric.reshape(self.n_dropped, self.n_kept)
        out = np.full(self.states, INF, dtype=np.int64)
        out[self.next_state[:, 0]] = (shaped + self.weights[:, :, 0, 0]).min(axis=0)
        return np.minimum(out, INF)

    def start(self) -> np.ndarray:
        metric = np.full(self.states, INF, dtype=np.int64)
        metric[0] = 0
        return metric


def _check_encoder(code: ConvCode, allow_catastrophic: bool):
    if allow_catastrophic:
        return
    if not is_noncatastrophic(code):
        raise CatastrophicEncoderError(
            f"{code.label or code.parameters} has a catastrophic encoder; pass allow_catastrophic to search anyway"
        )


def _max_depth(code: ConvCode, depth: Optional[int]) -> int:
    if depth is None:
        return 3 * max(code.memory, 1) + 2
    if depth < 0:
        raise ShapeError(f"depth must be >= 0, got {depth}")
    return depth


def free_distance(code: ConvCode, depth: Optional[int] = None, cap: int = DEFAULT_CAP, threads: int = 1,
                  allow_catastrophic: bool = False, progress: bool = False) -> FreeDistanceResult:
    """Minimum weight of P(z)·G(z) over nonzero P with deg P <= depth.

    `proven` is set once no surviving path can undercut the best terminated
    codeword, which makes the value the exact free distance.
    """
    _check_encoder(code, allow_catastrophic)
    max_depth = _max_depth(code, depth)
    trellis = Trellis(code, cap=cap, threads=threads)

    metric = trellis.start()
    best = INF
    history: List[int] = []
    proven = False
    with ProgressTracker(max_depth + 1, f"free distance {code.parameters}", enabled=progress) as tracker:
        for t in range(max_depth + 1):
            metric = trellis.step(metric, skip_zero_input=(t == 0))
            best = min(best, int((metric + trellis.flush).min()))
            # paths back in the zero state are finished codewords
            metric[0] = INF
            history.append(int(best))
            tracker.set_phase(f"depth {t}: {best}", steps=1)
            if metric.min() >= best:
                proven = True
                break

    value = int(best)
    agreed = len(history) >= 2 and history[-1] == history[-2]
    settled = proven or (agreed and value <= gsb(code.n, code.k, code.delta))
    if not proven:
        logger.warning(f"free distance of {code.parameters} not proven exact at depth {len(history) - 1}")
    logger.info(f"d_f{code.parameters} = {value} (settled={settled}, proven={proven}, depth {len(history) - 1})")
    return FreeDistanceResult(value=value, settled=settled, proven=proven, depth=len(history) - 1, history=history)


def support_distance_profile(code: ConvCode, s: int, depth: Optional[int] = None, cap: int = DEFAULT_CAP,
                             allow_catastrophic: bool = False) -> int:
    """Minimum weight of P(z)·G(z) over P with exactly s nonzero coefficient vectors."""
    if s < 1:
        raise ShapeError(f"support size must be >= 1, got {s}")
    _check_encoder(code, allow_catastrophic)
    max_depth = _max_depth(code, depth)
    if max_depth + 1 < s:
        raise ShapeError(f"depth {max_depth} cannot hold {s} nonzero coefficients")
    trellis = Trellis(code, cap=cap)

    # layers[c]: paths that have used c nonzero inputs
    layers = [trellis.start()] + [np.full(trellis.states, INF, dtype=np.int64) for _ in range(s)]
    best = INF
    for t in range(max_depth + 1):
        updated = [np.full(trellis.states, INF, dtype=np.int64)]
        for c in range(1, s + 1):
            updated.append(np.minimum(trellis.step(layers[c - 1], skip_zero_input=True),
                                      trellis.zero_step(layers[c])))
        best = min(best, int((updated[s] + trellis.flush).min()))
        updated[s][0] = INF
        layers = updated
        if min(int(layer.min()) for layer in layers) >= best:
            break

    logger.info(f"support-{s} distance of {code.parameters} = {best}")
    return int(best)
