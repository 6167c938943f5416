"""
Reproduction Catalogue
Named reference constructions with the values they are known for, and the
runner that rebuilds each one and compares.

Each case carries two value sets: `claimed` (the published figure) and
`expected` (the figure the arithmetic supports). A run whose observed values
match `expected` passes; when `expected` departs from `claimed` the outcome is
reported as CORRECTED rather than PASS.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from tabulate import tabulate

from block_codes import BlockCode, DEFAULT_CAP, classify, intersection_dim, min_distance, self_dual_from_orthogonal
from conv_codes import (
    build_memory1_equal, build_memory1_unequal, build_memory2_three_blocks, build_memory3, closed_form_unequal,
    conv_classify, conv_report, dual_code, mixed_rate_builders,
)
from errors import BudgetExceededError, UnitCodeError
from field_matrix import Mat, hstack
from finite_field import FieldSpec
from fourier_codes import fourier_scheme, fourier_split, lcd_arrangement, mds_window_code
from free_distance import support_distance_profile
from group_rings import (
    CHECK_ELEMENT, GroupRingElem, gr_to_matrix, is_unit, ldpc_conv_memory1, ldpc_conv_memory3, ldpc_derive,
    repair_check_element, short_cycle_census,
)
from named_units import binary_x4, extended_hamming_x, golay_unit, golay_x, hadamard_matrix, hadamard_unit, hamming_unit
from progress_notifier import ProgressTracker
from unit_scheme import consecutive_split, derive_block_code, equal_split

logger = logging.getLogger(__name__)

PASS = "PASS"
CORRECTED = "CORRECTED"
FAIL = "FAIL"
BUDGET = "BUDGET"
SKIPPED = "SKIPPED"

# enumeration cap the slow cases are sized for
SLOW_CAP = 2 ** 28

GF2 = FieldSpec(2)
GF5 = FieldSpec(5)
GF8 = FieldSpec(2, 3)


@dataclass
class ReproContext:
    cap: int = DEFAULT_CAP
    depth: Optional[int] = None
    threads: int = 1
    progress: bool = False


@dataclass
class ReproCase:
    case_id: str
    title: str
    claimed: Dict[str, Any]
    expected: Dict[str, Any]
    runner: Callable[[ReproContext], Dict[str, Any]]
    slow: bool = False
    note: str = ""


@dataclass
class ReproOutcome:
    case_id: str
    status: str
    observed: Dict[str, Any] = field(default_factory=dict)
    expected: Dict[str, Any] = field(default_factory=dict)
    claimed: Dict[str, Any] = field(default_factory=dict)
    message: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case_id,
            "status": self.status,
            "observed": self.observed,
            "expected": self.expected,
            "claimed": self.claimed,
            "message": self.message,
        }


def _code_triple(c: BlockCode, ctx: ReproContext) -> List[int]:
    return [c.n, c.r, min_distance(c, cap=ctx.cap, threads=ctx.threads, progress=ctx.progress)]


def _block_summary(c: BlockCode, ctx: ReproContext) -> Dict[str, Any]:
    report = classify(c, cap=ctx.cap, threads=ctx.threads, progress=ctx.progress)
    return {
        "code": [report.n, report.k, report.d],
        "lcd": report.flags["lcd"],
        "dc": report.flags["dc"],
        "self_dual": report.flags["self_dual"],
        "mds": report.flags["mds"],
        "css": list(report.css) if report.css else None,
    }


def _conv_summary(c, ctx: ReproContext, distance: bool = True, allow_catastrophic: bool = False) -> Dict[str, Any]:
    report = conv_report(c, depth=ctx.depth, cap=ctx.cap, threads=ctx.threads, compute_distance=distance,
                         allow_catastrophic=allow_catastrophic, progress=ctx.progress)
    summary = {
        "parameters": [report.n, report.k, report.delta, report.memory],
        "class": report.classification,
        "noncatastrophic": report.noncatastrophic,
        "gsb": report.gsb,
    }
    if distance:
        summary.update({
            "free_distance": report.free_distance,
            "proven": report.proven,
            "settled": report.settled,
            "css": list(report.css) if report.css else None,
        })
    return summary


def _fourier_mds(ctx: ReproContext) -> Dict[str, Any]:
    return _block_summary(mds_window_code(fourier_scheme(7, GF8), 0, 4), ctx)


def _fourier_window5(ctx: ReproContext) -> Dict[str, Any]:
    return _block_summary(mds_window_code(fourier_scheme(7, GF8), 0, 5), ctx)


def _fourier_lcd8(ctx: ReproContext) -> Dict[str, Any]:
    code, _ = lcd_arrangement(fourier_scheme(8, FieldSpec(17)), 6)
    return _block_summary(code, ctx)


def _fourier_lcd7(ctx: ReproContext) -> Dict[str, Any]:
    code, _ = lcd_arrangement(fourier_scheme(7, GF8), 6)
    return _block_summary(code, ctx)


def _fourier_conv_lcd(ctx: ReproContext) -> Dict[str, Any]:
    split = consecutive_split(fourier_scheme(7, GF8).scheme, [4, 3])
    return _conv_summary(build_memory1_unequal(split), ctx)


def _fourier_conv_dc(ctx: ReproContext) -> Dict[str, Any]:
    split = fourier_split(fourier_scheme(7, GF8), [0, 1, 6, 2, 5, 4, 3], [5, 2])
    return _conv_summary(build_memory1_unequal(split, twist="i"), ctx)


def _hamming_block(ctx: ReproContext) -> Dict[str, Any]:
    scheme = hamming_unit().scheme
    return {
        "alpha": scheme.alpha.rep,
        "L": _code_triple(derive_block_code(scheme, range(4)), ctx),
        "K": _code_triple(derive_block_code(scheme, range(4, 7)), ctx),
    }


def _hamming_conv(ctx: ReproContext) -> Dict[str, Any]:
    split = consecutive_split(hamming_unit().scheme, [4, 3])
    summary = _conv_summary(build_memory1_unequal(split), ctx)
    summary["closed_form"] = closed_form_unequal(split, cap=ctx.cap)
    return summary


def _golay_block(ctx: ReproContext) -> Dict[str, Any]:
    X = golay_x()
    summary = _block_summary(BlockCode.from_generator(hstack([Mat.identity(GF2, 12), X])), ctx)
    summary["x_symmetric_involution"] = X == X.T and X @ X == Mat.identity(GF2, 12)
    return summary


def _golay_conv(ctx: ReproContext) -> Dict[str, Any]:
    code = build_memory3(equal_split(golay_unit().scheme, 4))
    summary = _conv_summary(code, ctx)
    dual = dual_code(code)
    summary["dual_parameters"] = list(dual.parameters)
    summary["dual_class"] = conv_classify(dual)
    return summary


def _x4_self_dual(ctx: ReproContext) -> Dict[str, Any]:
    code = build_memory1_equal(consecutive_split(binary_x4().scheme, [2, 2]))
    summary = _conv_summary(code, ctx)
    profile = support_distance_profile(code, 2, depth=ctx.depth, cap=ctx.cap)
    summary["support2_at_least_5"] = profile >= 5
    return summary


def _x4_memory3(ctx: ReproContext) -> Dict[str, Any]:
    return _conv_summary(build_memory3(equal_split(binary_x4().scheme, 4)), ctx)


def _x4_rate34_mem3(ctx: ReproContext) -> Dict[str, Any]:
    code = mixed_rate_builders(equal_split(binary_x4().scheme, 4), "rate34_mem3")
    return _conv_summary(code, ctx, allow_catastrophic=True)


def _x4_rate34_mem1(ctx: ReproContext) -> Dict[str, Any]:
    code = mixed_rate_builders(equal_split(binary_x4().scheme, 4), "rate34_mem1")
    return _conv_summary(code, ctx)


def _extended_hamming(ctx: ReproContext) -> Dict[str, Any]:
    X = extended_hamming_x().scheme.U
    return _block_summary(BlockCode.from_generator(hstack([Mat.identity(GF2, 4), X])), ctx)


def _hadamard_rows(ctx: ReproContext) -> Dict[str, Any]:
    scheme = hadamard_unit(GF5).scheme
    observed: Dict[str, Any] = {}
    for r in (3, 6, 9):
        summary = _block_summary(derive_block_code(scheme, range(r)), ctx)
        observed[f"rows{r}"] = summary["code"]
        observed[f"rows{r}_lcd"] = summary["lcd"]
    return observed


def _hadamard_split(sizes: List[int]):
    return consecutive_split(hadamard_unit(GF5).scheme, sizes)


def _hadamard_conv(ctx: ReproContext) -> Dict[str, Any]:
    code = build_memory1_equal(_hadamard_split([6, 6]), twist="i")
    return _conv_summary(code, ctx, distance=False)


def _hadamard_conv_distance(ctx: ReproContext) -> Dict[str, Any]:
    code = build_memory1_equal(_hadamard_split([6, 6]), twist="i")
    return _conv_summary(code, ctx)


def _hadamard_rate34(ctx: ReproContext) -> Dict[str, Any]:
    code = build_memory1_unequal(_hadamard_split([9, 3]), twist="i")
    summary = _conv_summary(code, ctx, distance=False)
    summary["css_k"] = 2 * code.k - code.n
    return summary


def _hadamard_rate34_distance(ctx: ReproContext) -> Dict[str, Any]:
    return _conv_summary(build_memory1_unequal(_hadamard_split([9, 3]), twist="i"), ctx)


def _identity_2h(spec: FieldSpec) -> BlockCode:
    H = hadamard_matrix(spec)
    return BlockCode.from_generator(hstack([Mat.identity(spec, 12), H.scale(spec.from_int(2))]))


def _hadamard_identity(ctx: ReproContext) -> Dict[str, Any]:
    # distances of both [24,12] codes are far above the default cap
    code = _identity_2h(GF5)
    variant = self_dual_from_orthogonal(hadamard_matrix(GF5))
    return {
        "self_dual": intersection_dim(code) == code.r,
        "lcd": intersection_dim(code) == 0,
        "variant_field_order": variant.spec.order,
        "variant_self_dual": intersection_dim(variant) == variant.r,
    }


def _hadamard_identity_distance(ctx: ReproContext) -> Dict[str, Any]:
    return {"d": min_distance(_identity_2h(GF5), cap=ctx.cap, threads=ctx.threads, progress=ctx.progress)}


def _ldpc_element(ctx: ReproContext) -> Dict[str, Any]:
    v = GroupRingElem.parse(CHECK_ELEMENT)
    census = short_cycle_census(gr_to_matrix(v))
    repaired = repair_check_element(v)
    observed = {
        "support": v.support,
        "row_weight": census.max_row_weight,
        "col_weight": census.max_col_weight,
        "unit": is_unit(v),
        "four_cycles": census.four_cycles,
        "repaired": str(repaired) if repaired else None,
    }
    if repaired is not None:
        observed["repaired_support"] = repaired.support
        observed["repaired_four_cycles"] = short_cycle_census(gr_to_matrix(repaired)).four_cycles
    return observed


def _repaired_element() -> GroupRingElem:
    v = repair_check_element(GroupRingElem.parse(CHECK_ELEMENT))
    if v is None:
        raise UnitCodeError("check element admits no single-term repair")
    return v


def _ldpc_block(ctx: ReproContext) -> Dict[str, Any]:
    derivation = ldpc_derive(_repaired_element(), require_girth=4)
    return {
        "code": [derivation.code.n, derivation.code.r],
        "four_cycles": derivation.cycle_report.four_cycles,
        "max_col_weight": derivation.cycle_report.max_col_weight,
        "annihilates": (derivation.code.generator @ derivation.code.control).is_zero(),
    }


def _ldpc_conv(ctx: ReproContext) -> Dict[str, Any]:
    v = _repaired_element()
    mem1, census1 = ldpc_conv_memory1(v)
    mem3, census3 = ldpc_conv_memory3(v)
    return {
        "memory1": list(mem1.parameters),
        "memory1_four_cycles": max(r.four_cycles for r in census1.values()),
        "memory3": list(mem3.parameters),
        "memory3_block_four_cycles": max(r.four_cycles for k, r in census3.items() if k != "composite"),
        "memory3_composite_four_cycles": census3["composite"].four_cycles,
    }


def _three_block(ctx: ReproContext) -> Dict[str, Any]:
    fs = fourier_scheme(9, FieldSpec(19))
    code = build_memory2_three_blocks(equal_split(fs.scheme, 3))
    return {
        "parameters": list(code.parameters),
        "annihilates": (code.generator @ code.control).is_zero(),
    }


CASES: List[ReproCase] = [
    ReproCase("fourier-mds", "F7 over GF(8), rows e0..e3",
              {"code": [7, 4, 4], "dc": True, "mds": True, "css": [7, 1, 4]},
              {"code": [7, 4, 4], "dc": True, "mds": True, "css": [7, 1, 4]}, _fourier_mds),
    ReproCase("fourier-window5", "F7 over GF(8), rows e0..e4",
              {"code": [7, 5, 3], "dc": True, "mds": True, "css": [7, 3, 3]},
              {"code": [7, 5, 3], "dc": True, "mds": True, "css": [7, 3, 3]}, _fourier_window5),
    ReproCase("fourier-lcd8", "F8 over GF(17), rows e6,e7,e0,e1,e2",
              {"code": [8, 5, 4], "lcd": True, "mds": True},
              {"code": [8, 5, 4], "lcd": True, "mds": True}, _fourier_lcd8),
    ReproCase("fourier-lcd7", "F7 over GF(8), rows e6,e0,e1",
              {"code": [8, 3, 6], "lcd": True, "mds": True},
              {"code": [7, 3, 5], "lcd": True, "mds": True}, _fourier_lcd7,
              note="published label is [8,3,6] for a length-7 construction"),
    ReproCase("fourier-conv-lcd", "F7 memory-1, A = e0..e3, B = e4..e6",
              {"parameters": [7, 4, 3, 1], "free_distance": 7, "class": "lcd"},
              {"parameters": [7, 4, 3, 1], "free_distance": 7, "class": "lcd", "gsb": 7}, _fourier_conv_lcd),
    ReproCase("fourier-conv-dc", "F7 memory-1, A = (e0,e1,e6,e2,e5), B = (e4,e3), twist i",
              {"parameters": [7, 5, 2, 1], "free_distance": 5, "class": "dc"},
              {"parameters": [7, 5, 2, 1], "free_distance": 5, "class": "dc", "gsb": 5}, _fourier_conv_dc),
    ReproCase("hamming-block", "Hamming unit, L and K",
              {"alpha": 1, "L": [7, 4, 3], "K": [7, 3, 3]},
              {"alpha": 1, "L": [7, 4, 3], "K": [7, 3, 3]}, _hamming_block),
    ReproCase("hamming-conv", "Hamming memory-1, A = L, B = K padded",
              {"parameters": [7, 4, 3, 1], "free_distance": 6, "noncatastrophic": True},
              {"parameters": [7, 4, 3, 1], "free_distance": 4, "noncatastrophic": True, "closed_form": 4},
              _hamming_conv,
              note="(1,1,1,0) + (1,0,0,0)z encodes to weight 3 + 1 + 0"),
    ReproCase("golay-block", "(I12, X) with the Golay reverse circulant",
              {"code": [24, 12, 8], "self_dual": True, "x_symmetric_involution": True},
              {"code": [24, 12, 8], "self_dual": True, "x_symmetric_involution": True}, _golay_block),
    ReproCase("golay-conv", "Golay memory-3 and its dual",
              {"parameters": [12, 3, 9, 3], "free_distance": 20, "dual_parameters": [12, 9, 9, 3],
               "dual_class": "dc"},
              {"parameters": [12, 3, 9, 3], "free_distance": 20, "dual_parameters": [12, 9, 9, 1],
               "dual_class": "dc"}, _golay_conv,
              note="a minimal dual encoder has nine rows of degree 1; z^3·H(1/z)ᵀ is not basic"),
    ReproCase("x4-self-dual-conv", "4x4 binary X, memory-1 split 2+2",
              {"parameters": [4, 2, 2, 1], "free_distance": 4, "class": "self_dual", "support2_at_least_5": True},
              {"parameters": [4, 2, 2, 1], "free_distance": 4, "class": "self_dual", "support2_at_least_5": True},
              _x4_self_dual),
    ReproCase("x4-memory3", "4x4 binary X, memory-3 on single rows",
              {"parameters": [4, 1, 1, 3], "free_distance": 12},
              {"parameters": [4, 1, 3, 3], "free_distance": 12}, _x4_memory3,
              note="one row of degree 3 has total degree 3"),
    ReproCase("x4-rate34-mem3", "4x4 binary X, rate-3/4 memory-3 pattern",
              {"parameters": [4, 3, 9, 3], "class": "dc", "free_distance": 4, "css": [4, 2, 4]},
              {"parameters": [4, 3, 9, 3], "class": "dc", "free_distance": 4, "css": [4, 2, 4],
               "noncatastrophic": False}, _x4_rate34_mem3,
              note="catastrophic encoder; distance is the minimum over polynomial inputs"),
    ReproCase("x4-rate34-mem1", "4x4 binary X, rate-3/4 memory-1 pattern",
              {"parameters": [4, 3, 1, 1], "class": "dc", "free_distance": 2},
              {"parameters": [4, 3, 1, 1], "class": "dc", "free_distance": 2}, _x4_rate34_mem1),
    ReproCase("extended-hamming", "(I4, X) extended Hamming",
              {"code": [8, 4, 4], "self_dual": True},
              {"code": [8, 4, 4], "self_dual": True}, _extended_hamming),
    ReproCase("hadamard-rows", "Paley H12 over GF(5), leading rows",
              {"rows3": [12, 3, 6], "rows3_lcd": True, "rows6": [12, 6, 6], "rows6_lcd": True,
               "rows9": [12, 9, 2], "rows9_lcd": True},
              {"rows3": [12, 3, 6], "rows3_lcd": True, "rows6": [12, 6, 6], "rows6_lcd": True,
               "rows9": [12, 9, 2], "rows9_lcd": True}, _hadamard_rows),
    ReproCase("hadamard-conv", "H12 over GF(5), split 6+6, twist i = 2",
              {"parameters": [12, 6, 6, 1], "class": "self_dual"},
              {"parameters": [12, 6, 6, 1], "class": "self_dual", "noncatastrophic": True}, _hadamard_conv),
    ReproCase("hadamard-conv-distance", "H12 self-dual memory-1 free distance",
              {"free_distance": 12, "css": [12, 0, 12]},
              {"free_distance": 12, "css": [12, 0, 12]}, _hadamard_conv_distance, slow=True,
              note=f"needs --cap {SLOW_CAP}"),
    ReproCase("hadamard-rate34", "H12 over GF(5), split 9+3, twist i = 2",
              {"parameters": [12, 9, 3, 1], "class": "dc", "css_k": 6},
              {"parameters": [12, 9, 3, 1], "class": "dc", "css_k": 6}, _hadamard_rate34),
    ReproCase("hadamard-rate34-distance", "H12 rate-3/4 memory-1 free distance",
              {"free_distance": 4}, {"free_distance": 4}, _hadamard_rate34_distance, slow=True,
              note=f"needs --cap {SLOW_CAP}"),
    ReproCase("hadamard-identity", "(I12, 2H) over GF(5) and its self-dual variant",
              {"self_dual": True},
              {"self_dual": False, "lcd": True, "variant_field_order": 25, "variant_self_dual": True},
              _hadamard_identity,
              note="(I,2H)(I,2H)ᵀ = 4I over GF(5); the self-dual variant lives over GF(25)"),
    ReproCase("hadamard-identity-distance", "(I12, 2H) over GF(5) minimum distance",
              {"d": 8}, {"d": 8}, _hadamard_identity_distance, slow=True, note=f"needs --cap {SLOW_CAP}"),
    ReproCase("ldpc-element", "check element of GF(2)[C24 x C4]",
              {"support": 8, "unit": True, "four_cycles": 0},
              {"support": 8, "row_weight": 8, "col_weight": 8, "unit": False, "four_cycles": 288,
               "repaired_support": 7, "repaired_four_cycles": 0}, _ldpc_element,
              note="even support gives augmentation 0; three repeated differences"),
    ReproCase("ldpc-block", "[96,48] LDPC code from the repaired element",
              {"code": [96, 48], "four_cycles": 0, "max_col_weight": 8},
              {"code": [96, 48], "four_cycles": 0, "max_col_weight": 7, "annihilates": True}, _ldpc_block),
    ReproCase("ldpc-conv", "memory-1 and memory-3 convolutional LDPC codes",
              {"memory1": [96, 48, 48, 1], "memory1_four_cycles": 0, "memory3": [96, 24, 72, 1],
               "memory3_block_four_cycles": 0},
              {"memory1": [96, 48, 48, 1], "memory1_four_cycles": 0, "memory3": [96, 24, 72, 3],
               "memory3_block_four_cycles": 0}, _ldpc_conv,
              note="a degree-3 generator has memory 3"),
    ReproCase("three-block-memory2", "F9 over GF(19), three blocks of three rows",
              {"parameters": [9, 3, 6, 2], "annihilates": True},
              {"parameters": [9, 3, 6, 2], "annihilates": True}, _three_block),
]

CASE_INDEX: Dict[str, ReproCase] = {case.case_id: case for case in CASES}


def run_case(case: ReproCase, ctx: ReproContext) -> ReproOutcome:
    outcome = ReproOutcome(case.case_id, PASS, expected=dict(case.expected), claimed=dict(case.claimed))
    try:
        outcome.observed = case.runner(ctx)
    except BudgetExceededError as e:
        outcome.status, outcome.message = BUDGET, str(e)
        logger.warning(f"{case.case_id}: {e}")
        return outcome

    mismatches = [key for key, value in case.expected.items() if outcome.observed.get(key) != value]
    if mismatches:
        outcome.status = FAIL
        outcome.message = "; ".join(
            f"{key}: expected {case.expected[key]}, got {outcome.observed.get(key)}" for key in mismatches
        )
        logger.error(f"{case.case_id} FAILED: {outcome.message}")
        return outcome

    corrected = [key for key, value in case.claimed.items()
                 if key in case.expected and case.expected[key] != value]
    if corrected:
        outcome.status = CORRECTED
        outcome.message = "; ".join(
            f"{key}: published {case.claimed[key]}, verified {case.expected[key]}" for key in corrected
        )
        logger.warning(f"{case.case_id} corrected: {outcome.message}")
    else:
        logger.info(f"✅ {case.case_id} reproduced")
    return outcome


def run_all(ctx: ReproContext, include_slow: bool = False) -> List[ReproOutcome]:
    outcomes = []
    with ProgressTracker(len(CASES), "repro", enabled=ctx.progress) as tracker:
        for case in CASES:
            if case.slow and not include_slow:
                outcomes.append(ReproOutcome(case.case_id, SKIPPED, message=case.note or "slow case"))
            else:
                outcomes.append(run_case(case, ctx))
            tracker.update()
    return outcomes


def exit_status(outcomes: List[ReproOutcome]) -> int:
    """3 on any FAIL, otherwise 2 on any BUDGET, otherwise 0."""
    statuses = {o.status for o in outcomes}
    if FAIL in statuses:
        return 3
    if BUDGET in statuses:
        return 2
    return 0


def format_matrix(outcomes: List[ReproOutcome]) -> str:
    rows = [[o.case_id, o.status, o.message] for o in outcomes]
    return tabulate(rows, headers=["case", "status", "detail"], tablefmt="github")
