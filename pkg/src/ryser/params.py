"""Ryser parameter system of a concrete design and its exact identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ryser.design import IncidenceStructure, Ryser, verify_design


class InconsistencyError(AssertionError):
    """A relation that must hold for every Ryser design failed."""


@dataclass(frozen=True)
class RyserProfile:
    v: int
    lam: int
    r1: int
    r2: int
    e1: int
    e2: int
    rho: Fraction
    c: int
    d: int
    g: int
    a: int
    D: int
    x: int
    y: int
    E1: tuple[int, ...] = field(default=(), compare=False)
    E2: tuple[int, ...] = field(default=(), compare=False)

    @property
    def r(self) -> int:
        return self.r1 - self.r2

    def lines(self) -> list[str]:
        return [
            f"v={self.v}",
            f"lambda={self.lam}",
            f"r1={self.r1}",
            f"r2={self.r2}",
            f"r={self.r}",
            f"e1={self.e1}",
            f"e2={self.e2}",
            f"rho={format_fraction(self.rho)}",
            f"c={self.c}",
            f"d={self.d}",
            f"g={self.g}",
            f"a={self.a}",
            f"D={self.D}",
            f"x={self.x}",
            f"y={self.y}",
        ]


@dataclass(frozen=True)
class BlockSignature:
    block_index: int
    size: int
    t: int
    tau1: int
    tau2: int

    @property
    def kind(self) -> str:
        if self.t > 0:
            return "large"
        if self.t < 0:
            return "small"
        return "average"


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self):
        status = "pass" if self.ok else "FAIL"
        return f"{self.name}: {format_fraction(self.lhs)} = {format_fraction(self.rhs)} [{status}]"


class IdentityReport(list):
    """List of :class:`Identity`; truthy ``ok`` only when every entry holds."""

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self)

    def failures(self) -> list[Identity]:
        return [i for i in self if not i.ok]


def format_fraction(value) -> str:
    """Exact ``p/q`` rendering; integers print without a denominator."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def replication_profile(S: IncidenceStructure):
    """Return ``(r1, r2, E1, E2)`` from direct point counts."""
    counts = [0] * S.v
    for b in S.blocks:
        for p in b:
            counts[p] += 1
    distinct = sorted(set(counts), reverse=True)
    if len(distinct) != 2:
        raise InconsistencyError(f"expected two replication numbers, found {distinct}")
    r1, r2 = distinct
    if r1 + r2 != S.v + 1:
        raise InconsistencyError(f"r1 + r2 = {r1 + r2}, expected v + 1 = {S.v + 1}")
    E1 = tuple(p for p in range(S.v) if counts[p] == r1)
    E2 = tuple(p for p in range(S.v) if counts[p] == r2)
    return r1, r2, E1, E2


def ryser_profile(S: IncidenceStructure) -> RyserProfile:
    kind = verify_design(S)
    if not isinstance(kind, Ryser):
        raise ValueError(f"not a Ryser design: {kind}")
    lam = kind.lam
    r1, r2, E1, E2 = replication_profile(S)
    e1, e2 = len(E1), len(E2)
    rho = Fraction(r1 - 1, r2 - 1)
    c, d = rho.numerator, rho.denominator
    g = gcd(r1 - 1, r2 - 1)
    a = c - d
    D = e1 - r2
    if (e2 - lam) % c or (e1 - lam) % d:
        raise InconsistencyError("e2 - lambda not divisible by c or e1 - lambda not divisible by d")
    P = RyserProfile(
        v=S.v, lam=lam, r1=r1, r2=r2, e1=e1, e2=e2, rho=rho, c=c, d=d, g=g, a=a,
        D=D, x=(e2 - lam) // c, y=(e1 - lam) // d, E1=E1, E2=E2,
    )
    _check_profile(P)
    return P


def _check_profile(P: RyserProfile) -> None:
    checks = [
        ("r1 + r2 = v + 1", P.r1 + P.r2 == P.v + 1),
        ("r1 - 1 = c g", P.r1 - 1 == P.c * P.g),
        ("r2 - 1 = d g", P.r2 - 1 == P.d * P.g),
        ("v - 1 = (c + d) g", P.v - 1 == (P.c + P.d) * P.g),
        ("gcd(c, d) = 1", gcd(P.c, P.d) == 1),
        ("a >= 1", P.a >= 1),
        ("gcd(c, a) = gcd(d, a) = 1", gcd(P.c, P.a) == 1 and gcd(P.d, P.a) == 1),
        ("e1 + e2 = v", P.e1 + P.e2 == P.v and P.e1 > 0 and P.e2 > 0),
        ("D = r1 - e2 - 1", P.D == P.r1 - P.e2 - 1),
        ("e2 = lambda + x c", P.e2 == P.lam + P.x * P.c),
        ("e1 = lambda + y d", P.e1 == P.lam + P.y * P.d),
        ("r1 = 2 lambda + x a", P.r1 == 2 * P.lam + P.x * P.a),
        ("r2 = 2 lambda - y a", P.r2 == 2 * P.lam - P.y * P.a),
    ]
    bad = [name for name, ok in checks if not ok]
    if bad:
        raise InconsistencyError("profile relations failed: " + ", ".join(bad))


def block_signature(S: IncidenceStructure, P: RyserProfile, block_index: int) -> BlockSignature:
    block = S.blocks[block_index]
    size = len(block)
    t, rem = divmod(size - 2 * P.lam, P.a)
    if rem:
        raise InconsistencyError(f"block {block_index}: |A| - 2 lambda = {size - 2 * P.lam} not divisible by a = {P.a}")
    E1 = set(P.E1)
    tau1 = sum(1 for p in block if p in E1)
    tau2 = size - tau1
    if tau1 != P.lam - t * P.d or tau2 != P.lam + t * P.c:
        raise InconsistencyError(
            f"block {block_index}: tau = ({tau1}, {tau2}), expected "
            f"({P.lam - t * P.d}, {P.lam + t * P.c})"
        )
    return BlockSignature(block_index, size, t, tau1, tau2)


def block_signatures(S: IncidenceStructure, P: RyserProfile) -> list[BlockSignature]:
    return [block_signature(S, P, i) for i in range(S.v)]


def check_identities(S: IncidenceStructure, P: RyserProfile) -> IdentityReport:
    lam, rho, F = P.lam, P.rho, Fraction
    e1, e2, r1, r2 = P.e1, P.e2, P.r1, P.r2
    report = IdentityReport()

    def add(name, lhs, rhs):
        report.append(Identity(name, F(lhs), F(rhs)))

    add("eq1 sum 1/(k-lambda)",
        sum(F(1, k - lam) for k in S.sizes),
        (rho + 1) ** 2 / rho - F(1, lam))
    add("eq2 (rho-1)e1", (rho - 1) * e1, lam * (rho + 1) - r2)
    add("eq3 e1", e1, lam + (lam + P.D) / rho)
    add("eq4 (rho-1)e2", (rho - 1) * e2, rho * r1 - lam * (rho + 1))
    add("eq5 e2", e2, lam + (lam - (P.D + 1)) * rho)
    add("eq6 r1", r1, 2 * lam + F(P.a, P.c) * (e2 - lam))
    add("eq7 r2", r2, 2 * lam - F(P.a, P.d) * (e1 - lam))
    add("eq8 1+rho e1+e2/rho", 1 + rho * e1 + e2 / rho, lam * (rho + 1) ** 2 / rho)
    E1 = set(P.E1)
    for i, block in enumerate(S.blocks):
        tau1 = sum(1 for p in block if p in E1)
        tau2 = len(block) - tau1
        add(f"eq9 block {i}", (r1 - 1) * tau1 + (r2 - 1) * tau2, lam * (P.v - 1))
        add(f"eq10 block {i}", rho * tau1 + tau2, lam * (rho + 1))
    add("eq11 e2", e2, lam + P.x * P.c)
    return report


def complement_params(P: RyserProfile, k: int) -> tuple[int, int]:
    """Predicted ``(lambda, x)`` after complementing at a block of size ``k``."""
    t, rem = divmod(k - 2 * P.lam, P.a)
    if rem:
        raise ValueError(f"k - 2 lambda = {k - 2 * P.lam} is not divisible by a = {P.a}")
    return k - P.lam, P.x - 2 * t
