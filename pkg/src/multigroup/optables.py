"""Operation tables, axiom reports, and multisets.

An OpTable is a dense |Q| x |Q| grid of result indices over a fixed carrier.
Closure is structural: a table cannot be built with results outside the
carrier. AxiomReports serialize to the stable JSON shape
{axiom, verdict, witness, checked, reason, exhaustive}; the witness is always
the lexicographically first violating tuple in carrier order, so reports are
byte-reproducible regardless of how the scan was parallelized.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .carriers import Carrier
from .errors import CarrierMismatchError, NotClosedError

# Rows per scan chunk are chosen so one chunk holds about this many cells,
# independent of thread count; witnesses and counts never depend on chunking.
CHUNK_CELLS = 1_500_000


def encode_element(element):
    """Carrier element encoding as JSON-ready data (tuples become lists)."""
    if isinstance(element, tuple):
        return [encode_element(v) for v in element]
    if isinstance(element, (int, np.integer)):
        return int(element)
    return element


@dataclass(frozen=True, eq=False)
class OpTable:
    """A binary operation on a carrier, stored as an index grid."""

    carrier: Carrier
    table: np.ndarray
    label: str = "op"

    def __post_init__(self):
        n = len(self.carrier)
        if self.table.shape != (n, n):
            raise CarrierMismatchError(
                f"table shape {self.table.shape} does not match carrier of size {n}"
            )
        self.table.setflags(write=False)

    def __len__(self):
        return len(self.carrier)

    def apply_index(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def apply(self, x, y):
        idx = self.carrier.index
        return self.carrier.elements[self.table[idx[x], idx[y]]]

    def relabel(self, label: str) -> "OpTable":
        return OpTable(self.carrier, self.table, label)


def table_from_array(carrier: Carrier, array, label: str = "op") -> OpTable:
    """Wrap a precomputed index grid; values are validated to be in range."""
    arr = np.ascontiguousarray(np.asarray(array, dtype=np.int64))
    n = len(carrier)
    if arr.shape != (n, n):
        raise CarrierMismatchError(f"array shape {arr.shape} vs carrier size {n}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise NotClosedError(
            carrier.elements[bad[0]], carrier.elements[bad[1]], int(arr[bad[0], bad[1]])
        )
    return OpTable(carrier=carrier, table=arr, label=label)


def build_op_table(carrier: Carrier, rule: Callable, label: str = "op") -> OpTable:
    """Evaluate rule(x, y) over all ordered pairs and index the results.

    Exactly |Q|^2 rule evaluations. A result outside the carrier raises
    NotClosedError naming the first offending pair in row-major order.
    """
    idx = carrier.index
    n = len(carrier)
    grid = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(carrier.elements):
        row = grid[i]
        for j, y in enumerate(carrier.elements):
            out = rule(x, y)
            k = idx.get(out)
            if k is None:
                raise NotClosedError(x, y, out)
            row[j] = k
    return OpTable(carrier=carrier, table=grid, label=label)


def shared_carrier(*ops: OpTable) -> Carrier:
    first = ops[0].carrier
    for op in ops[1:]:
        if op.carrier is not first and not op.carrier.same_as(first):
            raise CarrierMismatchError(
                f"tables {ops[0].label!r} and {op.label!r} live on different carriers"
            )
    return first


@dataclass(frozen=True)
class Multiset:
    """A multiset of carrier indices, stored as sorted (index, multiplicity) pairs."""

    entries: tuple

    @classmethod
    def from_indices(cls, indices: Iterable) -> "Multiset":
        counts: dict = {}
        for i in indices:
            i = int(i)
            counts[i] = counts.get(i, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def from_entries(cls, pairs: Iterable) -> "Multiset":
        counts: dict = {}
        for i, m in pairs:
            if m < 0:
                raise ValueError("multiplicities must be non-negative")
            if m:
                counts[int(i)] = counts.get(int(i), 0) + int(m)
        return cls(tuple(sorted(counts.items())))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def scaled(self, k: int) -> "Multiset":
        return Multiset.from_entries((i, m * k) for i, m in self.entries)

    def union(self, other: "Multiset") -> "Multiset":
        return Multiset.from_entries(list(self.entries) + list(other.entries))


VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
REASON_NO_SOLUTION = "no-solution"
REASON_NOT_UNIQUE = "exists-not-unique"


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one axiom check over a whole table (or a labelled sample)."""

    axiom: str
    verdict: str
    witness: tuple | None
    checked: int
    reason: str | None = None
    exhaustive: bool = True

    @property
    def passed(self) -> bool:
        return self.verdict == VERDICT_PASS

    def to_json_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "witness": None if self.witness is None else [encode_element(w) for w in self.witness],
            "checked": self.checked,
            "reason": self.reason,
            "exhaustive": self.exhaustive,
        }


def passing(axiom: str, checked: int, exhaustive: bool = True) -> AxiomReport:
    return AxiomReport(axiom, VERDICT_PASS, None, checked, None, exhaustive)


def failing(
    axiom: str,
    carrier: Carrier,
    witness_indices,
    checked: int,
    reason: str | None = None,
    exhaustive: bool = True,
) -> AxiomReport:
    witness = tuple(carrier.elements[int(i)] for i in witness_indices)
    return AxiomReport(axiom, VERDICT_FAIL, witness, checked, reason, exhaustive)


@dataclass(frozen=True, eq=False)
class SystemSpec:
    """A carrier plus named operation tables; the unit the DSL compiles to."""

    carrier: Carrier
    ops: dict
    declared_class: str = "unclassified"

    def __post_init__(self):
        for op in self.ops.values():
            if not op.carrier.same_as(self.carrier):
                raise CarrierMismatchError(f"op {op.label!r} is not over the system carrier")


def chunk_ranges(n: int, width: int):
    """Fixed-width row chunks; width never depends on the thread count."""
    step = max(1, width)
    return [(a, min(a + step, n)) for a in range(0, n, step)]


def scan_chunks(worker: Callable, n_rows: int, cells_per_row: int, jobs: int = 1):
    """Run worker(a0, a1) over fixed chunks and merge results deterministically.

    worker returns the lexicographically first violation in its chunk as an
    index tuple (with absolute first coordinate), or None. The merged result is
    the first non-None in chunk order, which is the global lexicographic
    minimum because chunks partition the first axis in order. Workers always
    scan their whole chunk, so nothing observable depends on `jobs`.
    """
    rows = max(1, CHUNK_CELLS // max(1, cells_per_row))
    ranges = chunk_ranges(n_rows, rows)
    if jobs > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda r: worker(*r), ranges))
    else:
        results = [worker(a0, a1) for a0, a1 in ranges]
    for found in results:
        if found is not None:
            return found
    return None
