"""Incidence structures, symmetric/Ryser verification and block complementation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union


class DesignFormatError(ValueError):
    """Raised when a design file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class IncidenceStructure:
    """``v`` points and ``v`` blocks, each block a sorted tuple of 0-based points."""

    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.v < 2:
            raise ValueError("need at least two points")
        blocks = tuple(tuple(sorted(set(b))) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if len(blocks) != self.v:
            raise ValueError(f"block count mismatch: expected {self.v}, got {len(blocks)}")
        for i, b in enumerate(blocks):
            if not b:
                raise ValueError(f"block {i} is empty")
            if len(b) == self.v:
                raise ValueError(f"block {i} is the full point set")
            if b[0] < 0 or b[-1] >= self.v:
                raise ValueError(f"block {i} has a point outside 0..{self.v - 1}")
        if len(set(blocks)) != len(blocks):
            raise ValueError("repeated block")

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def block_sets(self) -> list[frozenset[int]]:
        return [frozenset(b) for b in self.blocks]


@dataclass(frozen=True)
class Symmetric:
    k: int
    lam_prime: int

    def __str__(self):
        return f"Symmetric(k={self.k}, lambda={self.lam_prime})"


@dataclass(frozen=True)
class Ryser:
    lam: int

    def __str__(self):
        return f"Ryser(lambda={self.lam})"


@dataclass(frozen=True)
class Invalid:
    reason: str

    def __str__(self):
        return f"Invalid({self.reason})"


DesignKind = Union[Symmetric, Ryser, Invalid]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    v: int
    base_block: tuple[int, ...]
    expected_k: int
    expected_lam_prime: int

    def build(self) -> IncidenceStructure:
        return from_difference_set(self.v, self.base_block)


def parse_design(text: str) -> IncidenceStructure:
    v = None
    blocks = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if v is None:
            if not line.startswith("v="):
                raise DesignFormatError("expected header 'v=<integer>'", lineno)
            try:
                v = int(line[2:])
            except ValueError:
                raise DesignFormatError(f"malformed header {line!r}", lineno) from None
            if v < 2:
                raise DesignFormatError("v must be at least 2", lineno)
            continue
        try:
            points = [int(tok) for tok in line.split()]
        except ValueError:
            raise DesignFormatError(f"malformed block line {line!r}", lineno) from None
        if len(set(points)) != len(points):
            raise DesignFormatError("duplicate point within a block", lineno)
        for p in points:
            if p < 0 or p >= v:
                raise DesignFormatError(f"point index {p} out of range for v={v}", lineno)
        if len(points) == v:
            raise DesignFormatError("block equals the full point set", lineno)
        key = tuple(sorted(points))
        if key in seen:
            raise DesignFormatError(f"duplicate block (first seen on line {seen[key]})", lineno)
        seen[key] = lineno
        blocks.append(key)
        if len(blocks) > v:
            raise DesignFormatError(f"block count mismatch: more than v={v} blocks", lineno)
    if v is None:
        raise DesignFormatError("missing header 'v=<integer>'", 1)
    if len(blocks) != v:
        raise DesignFormatError(
            f"block count mismatch: expected {v}, got {len(blocks)}",
            len(text.splitlines()),
        )
    return IncidenceStructure(v, tuple(blocks))


def format_design(S: IncidenceStructure) -> str:
    """Canonical text form; ``parse_design(format_design(S)) == S``."""
    lines = [f"v={S.v}"]
    lines.extend(" ".join(map(str, b)) for b in S.blocks)
    return "\n".join(lines) + "\n"


def from_difference_set(v: int, base: Iterable[int]) -> IncidenceStructure:
    """Develop ``base`` modulo ``v``: block i is ``base + i``."""
    base = sorted({b % v for b in base})
    if not base or len(base) == v:
        raise ValueError("base block must be a nonempty proper subset of Z_v")
    blocks = [tuple(sorted((b + i) % v for b in base)) for i in range(v)]
    return IncidenceStructure(v, tuple(blocks))


def verify_design(S: IncidenceStructure) -> DesignKind:
    sets = S.block_sets()
    lam = None
    for i, j in combinations(range(S.v), 2):
        m = len(sets[i] & sets[j])
        if lam is None:
            lam = m
        elif m != lam:
            return Invalid(
                f"blocks {i} and {j} meet in {m} points, blocks 0 and 1 meet in {lam}"
            )
    for i, b in enumerate(S.blocks):
        if len(b) <= lam:
            return Invalid(f"block {i} has size {len(b)} <= intersection number {lam}")
    sizes = set(S.sizes)
    if len(sizes) == 1:
        if lam < 1:
            return Invalid("blocks are pairwise disjoint")
        return Symmetric(sizes.pop(), lam)
    return Ryser(lam)


def complement(S: IncidenceStructure, block_index: int) -> IncidenceStructure:
    """Replace every block other than ``A = blocks[block_index]`` by ``A △ B``."""
    if not 0 <= block_index < S.v:
        raise IndexError(f"block index {block_index} out of range 0..{S.v - 1}")
    sets = S.block_sets()
    A = sets[block_index]
    new = []
    for i, B in enumerate(sets):
        if i == block_index:
            new.append(S.blocks[i])
            continue
        sd = A ^ B
        if not sd:
            raise ValueError(f"block {i} equals the complementing block")
        new.append(tuple(sorted(sd)))
    return IncidenceStructure(S.v, tuple(new))


_QR23 = tuple(sorted({(i * i) % 23 for i in range(1, 23)}))

_CATALOG = (
    CatalogEntry("fano", 7, (1, 2, 4), 3, 1),
    CatalogEntry("biplane11", 11, (1, 3, 4, 5, 9), 5, 2),
    CatalogEntry("pg2_3", 13, (0, 1, 3, 9), 4, 1),
    CatalogEntry("pg3_2", 15, (0, 1, 2, 4, 5, 8, 10), 7, 3),
    CatalogEntry("pg2_4", 21, (3, 6, 7, 12, 14), 5, 1),
    CatalogEntry("paley23", 23, _QR23, 11, 5),
    CatalogEntry("pg2_3_complement", 13, (2, 4, 5, 6, 7, 8, 10, 11, 12), 9, 6),
    CatalogEntry("pg2_4_complement", 21, (0, 1, 2, 4, 5, 8, 9, 10, 11, 13, 15, 16, 17, 18, 19, 20), 16, 12),
)


def catalog() -> list[CatalogEntry]:
    return list(_CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    for e in _CATALOG:
        if e.name == name:
            return e
    raise KeyError(f"unknown catalog design {name!r}")
