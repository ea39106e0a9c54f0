"""Enumerate (v, lambda, r, D) tuples that pass the known necessary conditions."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence


def integer_sqrt(n: int) -> tuple[int, bool]:
    """``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise ValueError("integer_sqrt of a negative number")
    s = isqrt(n)
    return s, s * s == n


@dataclass(frozen=True)
class ScanCandidate:
    v: int
    lam: int
    r: int
    D: int
    rho: Fraction
    c: int
    d: int
    g: int
    a: int
    e1: int
    e2: int
    x: int
    y: int
    flags: dict = field(compare=False, hash=False)
    conjecture_ok: bool = False

    @property
    def key(self) -> tuple[int, int, int, int]:
        return self.v, self.lam, self.r, self.D

    @property
    def r1(self) -> int:
        return (self.v + 1 + self.r) // 2

    @property
    def r2(self) -> int:
        return (self.v + 1 - self.r) // 2

    def to_json(self) -> str:
        return json.dumps({
            "v": self.v, "lambda": self.lam, "r": self.r, "D": self.D,
            "rho": f"{self.rho.numerator}/{self.rho.denominator}",
            "e1": self.e1, "e2": self.e2, "x": self.x, "y": self.y,
            "conjecture_ok": self.conjecture_ok,
        })


TABLE_HEADER = f"{'v':>5} {'lambda':>6} {'r':>4} {'D':>4} {'rho':>8} {'e1':>5} {'e2':>5} {'x':>4} {'y':>4}  conj"


def table_row(c: ScanCandidate) -> str:
    rho = f"{c.rho.numerator}/{c.rho.denominator}"
    return (f"{c.v:>5} {c.lam:>6} {c.r:>4} {c.D:>4} {rho:>8} {c.e1:>5} {c.e2:>5} "
            f"{c.x:>4} {c.y:>4}  {'yes' if c.conjecture_ok else 'no'}")


def candidate(v: int, lam: int, r: int, D: int) -> ScanCandidate | None:
    """Build the candidate for one tuple, or ``None`` if any condition fails."""
    flags = {}
    flags["v>=4"] = v >= 4
    flags["r1,r2 integral"] = (v + r) % 2 == 1
    flags["v-1-r>0"] = v - 1 - r > 0
    if not all(flags.values()):
        return None
    rho = Fraction(v - 1 + r, v - 1 - r)
    lo = Fraction(lam, lam - 1)
    flags["rho bounds"] = lo <= rho <= lam and not (lam - 1 < rho < lam)
    e1 = lam + (lam + D) / rho
    e2 = lam + (lam - (D + 1)) * rho
    flags["e1,e2 positive integers"] = (
        e1.denominator == 1 and e2.denominator == 1 and e1 > 0 and e2 > 0
    )
    flags["e1+e2=v"] = e1 + e2 == v
    if not all(flags.values()):
        return None
    e1, e2 = int(e1), int(e2)
    c, d = rho.numerator, rho.denominator
    flags["x integral"] = (e2 - lam) % c == 0
    flags["y integral"] = (e1 - lam) % d == 0
    if not all(flags.values()):
        return None
    r1, r2 = (v + 1 + r) // 2, (v + 1 - r) // 2
    return ScanCandidate(
        v=v, lam=lam, r=r, D=D, rho=rho, c=c, d=d, g=gcd(r1 - 1, r2 - 1), a=c - d,
        e1=e1, e2=e2, x=(e2 - lam) // c, y=(e1 - lam) // d, flags=flags,
        conjecture_ok=4 * lam - 1 <= v <= lam * lam + lam + 1,
    )


def _scan_lambda(lam: int, r_max: int, type1_only: bool) -> list[ScanCandidate]:
    out = []
    d_values = (-1, 0) if type1_only else range(-lam + 1, lam - 1)
    for r in range(1, r_max + 1):
        for D in d_values:
            if not -lam < D < lam - 1:
                continue
            sq = (2 * lam - 1) ** 2 + (r - 1) ** 2 - 4 * D * r - 1
            if sq < 0:
                continue
            s, exact = integer_sqrt(sq)
            if not exact:
                continue
            for v in sorted({2 * lam - s, 2 * lam + s}):
                cand = candidate(v, lam, r, D)
                if cand is not None:
                    out.append(cand)
    return out


def _sort_key(c: ScanCandidate):
    return c.lam, c.v, c.r, c.D


def scan_params(lam_max: int, r_max: int, type1_only: bool = False, workers: int = 1) -> list[ScanCandidate]:
    """Surviving candidates for ``2 <= lambda <= lam_max``, ``1 <= r <= r_max``.

    ``D`` runs over ``-lambda < D < lambda - 1`` (only ``{-1, 0}`` when
    ``type1_only``). Output is sorted by ``(lambda, v, r, D)`` regardless of
    ``workers``.
    """
    if lam_max < 2:
        raise ValueError("lam_max must be at least 2")
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    lams = range(2, lam_max + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_lambda, lams, [r_max] * len(lams), [type1_only] * len(lams)))
    else:
        parts = [_scan_lambda(lam, r_max, type1_only) for lam in lams]
    return sorted((c for part in parts for c in part), key=_sort_key)


def audit(candidates: Iterable[ScanCandidate]) -> list[str]:
    """Re-derive every candidate from scratch; returns a list of problems."""
    problems = []
    for c in candidates:
        again = candidate(c.v, c.lam, c.r, c.D)
        if again is None or again != c:
            problems.append(f"{c.key}: does not survive re-check")
            continue
        sq = (2 * c.lam - 1) ** 2 + (c.r - 1) ** 2 - 4 * c.D * c.r - 1
        s, exact = integer_sqrt(max(sq, 0))
        if sq < 0 or not exact or c.v not in (2 * c.lam - s, 2 * c.lam + s):
            problems.append(f"{c.key}: square condition fails")
        if not -c.lam < c.D < c.lam - 1:
            problems.append(f"{c.key}: D outside (-lambda, lambda-1)")
        if c.D <= -1 and c.v < 4 * c.lam - 1:
            problems.append(f"{c.key}: D<=-1 but v<4lambda-1")
    return problems


@dataclass
class CoverageReport:
    realized: list[tuple[int, int, int, int]]
    missing: list[tuple[int, int, int, int]]
    unrealized: list[tuple[int, int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.missing


class ScanSoundnessError(AssertionError):
    pass


def realize_check(candidates: Sequence[ScanCandidate], designs: Iterable, strict: bool = True) -> CoverageReport:
    """Every realized ``(v, lambda, r, D)`` must appear among ``candidates``.

    ``designs`` holds ``(S, P)`` pairs (``P`` a profile) or bare 4-tuples.
    """
    keys = {c.key for c in candidates}
    realized = []
    for item in designs:
        if len(item) == 2:
            P = item[1]
            item = (P.v, P.lam, P.r, P.D)
        realized.append(tuple(item))
    realized = sorted(set(realized))
    missing = [t for t in realized if t not in keys]
    unrealized = sorted(keys - set(realized), key=lambda k: (k[1], k[0], k[2], k[3]))
    report = CoverageReport(realized, missing, unrealized)
    if strict and missing:
        raise ScanSoundnessError(f"realized tuples missing from scan: {missing}")
    return report
