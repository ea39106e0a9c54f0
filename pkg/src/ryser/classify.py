"""Type-1 detection and the necessary conditions / bounds on Ryser parameters."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ryser.design import IncidenceStructure, Ryser, verify_design
from ryser.params import RyserProfile, block_signatures, format_fraction, ryser_profile
from ryser.scan import integer_sqrt


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    NOT_APPLICABLE = "n/a"

    def __str__(self):
        return self.value


class Verdict(enum.Enum):
    TYPE1 = "Type-1"
    CONDITION_NOT_MET = "condition-not-met"

    def __str__(self):
        return self.value


def type1_by_sizes(sizes: Iterable[int]) -> Tri:
    """Two distinct block sizes, one of which occurs exactly once."""
    counts = Counter(sizes)
    if len(counts) == 2 and 1 in counts.values():
        return Tri.YES
    return Tri.NO


def type1_by_columns(S: IncidenceStructure) -> Tri:
    if not isinstance(verify_design(S), Ryser):
        return Tri.NOT_APPLICABLE
    return type1_by_sizes(S.sizes)


def type1_by_D(P: RyserProfile) -> bool:
    return P.D in (0, -1)


@dataclass(frozen=True)
class NecessaryCondition:
    v: int
    lam: int
    r: int
    D: int
    sq_value: int
    root: int
    is_square: bool
    v_formula_ok: bool
    special_value: int | None = None
    special_is_square: bool | None = None

    @property
    def ok(self) -> bool:
        ok = self.is_square and self.v_formula_ok
        if self.special_is_square is not None:
            ok = ok and self.special_is_square
        return ok


def _is_square(n: int) -> tuple[int, bool]:
    if n < 0:
        return 0, False
    return integer_sqrt(n)


def necessary_condition(v: int, lam: int, r: int, D: int) -> NecessaryCondition:
    sq = (2 * lam - 1) ** 2 + (r - 1) ** 2 - 4 * D * r - 1
    s, exact = _is_square(sq)
    v_ok = exact and v in (2 * lam - s, 2 * lam + s)
    special = None
    if D == 0:
        special = (2 * lam - 1) ** 2 + r * (r - 2)
    elif D == -1:
        special = (2 * lam - 1) ** 2 + r * (r + 2)
    special_ok = None if special is None else _is_square(special)[1]
    return NecessaryCondition(v, lam, r, D, sq, s, exact, v_ok, special, special_ok)


def necessary_condition_for(P: RyserProfile) -> NecessaryCondition:
    return necessary_condition(P.v, P.lam, P.r, P.D)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    applicable: bool = True
    conjectural: bool = False

    def __str__(self):
        if not self.applicable:
            status = "n/a"
        else:
            status = "pass" if self.ok else "FAIL"
        return f"{self.name}: {status}" + (f" ({self.detail})" if self.detail else "")


def bounds_report(P: RyserProfile, S: IncidenceStructure | None = None) -> list[Check]:
    v, lam, D, rho = P.v, P.lam, P.D, P.rho
    low, high = 4 * lam - 1, lam * lam + lam + 1
    checks = []

    checks.append(Check(
        "D<=-1 implies v>=4lambda-1", D > -1 or v >= low,
        f"D={D}, v={v}, 4lambda-1={low}", applicable=D <= -1,
    ))
    checks.append(Check(
        "D>=0 implies v<=lambda^2+lambda+1", D < 0 or v <= high,
        f"D={D}, v={v}, lambda^2+lambda+1={high}", applicable=D >= 0,
    ))
    left, right = v >= low, P.e2 - P.e1 >= 2 * D + 1
    checks.append(Check(
        "v>=4lambda-1 iff e2-e1>=2D+1", left == right,
        f"v>=4lambda-1 is {left}, e2-e1={P.e2 - P.e1} >= 2D+1={2 * D + 1} is {right}",
    ))
    checks.append(Check(
        "lambda-1 > D > -lambda", lam - 1 > D > -lam,
        f"{lam - 1} > {D} > {-lam}", applicable=lam > 1,
    ))
    if S is not None:
        for sig in block_signatures(S, P):
            if sig.t > 0:
                checks.append(Check(
                    f"large block {sig.block_index}: tau1-1>=D", sig.tau1 - 1 >= D,
                    f"tau1={sig.tau1}, D={D}",
                ))
            elif sig.t < 0:
                checks.append(Check(
                    f"small block {sig.block_index}: D>=-tau2", D >= -sig.tau2,
                    f"tau2={sig.tau2}, D={D}",
                ))
    if lam > 1:
        lo = Fraction(lam, lam - 1)
        in_range = lo <= rho <= lam
        gap = lam - 1 < rho < lam
        checks.append(Check(
            "lambda/(lambda-1)<=rho<=lambda, rho not in (lambda-1,lambda)",
            in_range and not gap,
            f"rho={format_fraction(rho)}, range=[{format_fraction(lo)}, {lam}]",
        ))
    else:
        checks.append(Check(
            "lambda/(lambda-1)<=rho<=lambda, rho not in (lambda-1,lambda)",
            True, "lambda=1", applicable=False,
        ))
    checks.append(Check(
        "conjecture 4lambda-1<=v<=lambda^2+lambda+1", low <= v <= high,
        f"{low} <= {v} <= {high}", conjectural=True,
    ))
    return checks


@dataclass
class UniqueBlockFinding:
    large_qualifying: list[int] = field(default_factory=list)
    small_qualifying: list[int] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    # block -> (literal "2tc+lambda>e1" or "2td+lambda>e2", same inequality against
    # the other class size); only the second is equivalent to 2t > x / 2t > y
    literal_forms: dict[int, tuple[bool, bool]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def unique_block_check(S: IncidenceStructure, P: RyserProfile) -> UniqueBlockFinding:
    """Blocks with ``2t > x`` (large side) or ``-2t > y`` (small side) must be unique.

    Guaranteed only for Type-2 designs; on Type-1 designs a repeat is a warning.
    """
    finding = UniqueBlockFinding()
    for sig in block_signatures(S, P):
        if sig.t > 0 and 2 * sig.t > P.x:
            finding.large_qualifying.append(sig.block_index)
            finding.literal_forms[sig.block_index] = (
                2 * sig.t * P.c + P.lam > P.e1, 2 * sig.t * P.c + P.lam > P.e2,
            )
        elif sig.t < 0 and -2 * sig.t > P.y:
            finding.small_qualifying.append(sig.block_index)
            finding.literal_forms[sig.block_index] = (
                -2 * sig.t * P.d + P.lam > P.e2, -2 * sig.t * P.d + P.lam > P.e1,
            )
    sink = finding.warnings if type1_by_D(P) else finding.violations
    for side, blocks in (("large", finding.large_qualifying), ("small", finding.small_qualifying)):
        if len(blocks) > 1:
            sink.append(f"{len(blocks)} {side} blocks qualify: {blocks}")
    return finding


@dataclass(frozen=True)
class TwoBlockVerdict:
    verdict: Verdict
    k1: int
    k2: int
    t1: int
    t2: int
    by_large: bool
    by_small: bool
    agrees_with_columns: bool | None = None


def two_block_verdict(sizes: Iterable[int], P: RyserProfile) -> TwoBlockVerdict:
    distinct = sorted(set(sizes), reverse=True)
    if len(distinct) != 2:
        raise ValueError(f"expected exactly two block sizes, got {distinct}")
    k1, k2 = distinct
    t1, r1 = divmod(k1 - 2 * P.lam, P.a)
    t2, r2 = divmod(k2 - 2 * P.lam, P.a)
    if r1 or r2:
        raise ValueError("block sizes are not of the form 2 lambda + t a")
    by_large = t1 > 0 and 2 * t1 > P.x
    by_small = t2 < 0 and -2 * t2 > P.y
    verdict = Verdict.TYPE1 if (by_large or by_small) else Verdict.CONDITION_NOT_MET
    return TwoBlockVerdict(verdict, k1, k2, t1, t2, by_large, by_small)


def two_block_classify(S: IncidenceStructure, P: RyserProfile) -> TwoBlockVerdict:
    res = two_block_verdict(S.sizes, P)
    agrees = None
    if res.verdict is Verdict.TYPE1:
        agrees = type1_by_columns(S) is Tri.YES
    return TwoBlockVerdict(**{**res.__dict__, "agrees_with_columns": agrees})


@dataclass
class ClassificationReport:
    profile: RyserProfile
    type1_by_columns: Tri
    type1_by_D: bool
    necessary: NecessaryCondition
    bounds: list[Check]
    unique_block: UniqueBlockFinding | None = None
    two_block: TwoBlockVerdict | None = None

    @property
    def necessary_sq_ok(self) -> bool:
        return self.necessary.is_square

    @property
    def v_formula_ok(self) -> bool:
        return self.necessary.v_formula_ok

    @property
    def ok(self) -> bool:
        agree = (self.type1_by_columns is Tri.YES) == self.type1_by_D
        bounds_ok = all(c.ok for c in self.bounds if c.applicable and not c.conjectural)
        unique_ok = self.unique_block is None or self.unique_block.ok
        return agree and self.necessary.ok and bounds_ok and unique_ok

    def to_record(self) -> dict:
        P, nc = self.profile, self.necessary
        rec = {
            "v": P.v, "lambda": P.lam, "r1": P.r1, "r2": P.r2, "r": P.r,
            "e1": P.e1, "e2": P.e2, "rho": format_fraction(P.rho), "D": P.D, "x": P.x, "y": P.y,
            "type1_by_columns": str(self.type1_by_columns),
            "type1_by_D": self.type1_by_D,
            "sq_value": nc.sq_value,
            "necessary_sq_ok": nc.is_square,
            "v_formula_ok": nc.v_formula_ok,
        }
        if nc.special_value is not None:
            rec["special_value"] = nc.special_value
            rec["special_is_square"] = nc.special_is_square
        rec["bounds"] = {c.name: (str(c.ok).lower() if c.applicable else "n/a") for c in self.bounds}
        if self.unique_block is not None:
            ub = self.unique_block
            rec["unique_block_large"] = ub.large_qualifying
            rec["unique_block_small"] = ub.small_qualifying
            rec["unique_block_violations"] = ub.violations
            rec["unique_block_warnings"] = ub.warnings
        if self.two_block is not None:
            rec["two_block_verdict"] = str(self.two_block.verdict)
        rec["ok"] = self.ok
        return rec

    def to_text(self) -> str:
        lines = []
        for key, value in self.to_record().items():
            if key == "bounds":
                lines.extend(f"bound[{name}]={val}" for name, val in value.items())
            elif isinstance(value, bool):
                lines.append(f"{key}={str(value).lower()}")
            elif isinstance(value, list):
                lines.append(f"{key}=" + (",".join(map(str, value)) if value else "none"))
            else:
                lines.append(f"{key}={value}")
        return "\n".join(lines) + "\n"


def classify(S: IncidenceStructure, P: RyserProfile | None = None) -> ClassificationReport:
    if P is None:
        P = ryser_profile(S)
    two = two_block_classify(S, P) if len(set(S.sizes)) == 2 else None
    return ClassificationReport(
        profile=P,
        type1_by_columns=type1_by_columns(S),
        type1_by_D=type1_by_D(P),
        necessary=necessary_condition_for(P),
        bounds=bounds_report(P, S),
        unique_block=unique_block_check(S, P),
        two_block=two,
    )
