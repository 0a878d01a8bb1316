"""Exhaustive axiom checks over operation tables.

Every check scans its whole tuple space (no early exit inside an axiom), so
the reported witness is the lexicographically first violation in carrier
order and the `checked` count is a function of the carrier alone. That makes
reports byte-identical across repeated runs and across thread counts.

An opt-in sampled mode exists for carriers above SAMPLING_FLOOR elements; its
reports carry exhaustive=False and `checked` equal to the sample count.
"""

import random

import numpy as np

from .errors import CarrierMismatchError, NotAGroupError, NotAUnitError
from .optables import (
    AxiomReport,
    Multiset,
    OpTable,
    REASON_NO_SOLUTION,
    REASON_NOT_UNIQUE,
    failing,
    passing,
    scan_chunks,
    shared_carrier,
    table_from_array,
)

SAMPLING_FLOOR = 2_000

LEFT = "left"
RIGHT = "right"


def _side(side: str) -> str:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return side


def _sampling_guard(op: OpTable, samples):
    if samples is not None and len(op) <= SAMPLING_FLOOR:
        raise ValueError(
            f"sampled mode is reserved for carriers above {SAMPLING_FLOOR} elements"
        )


def _sampled_triples(n: int, samples: int, seed: int):
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)]


def _triple_scan(axiom, carrier, sides, n, jobs, samples, seed, scalar_bad):
    """Shared driver for triple identities.

    sides(a0, a1) returns (left, right) arrays of shape (a1-a0, n, n);
    scalar_bad(a, b, c) re-evaluates one triple (sampled mode only).
    """
    if samples is not None:
        bad = [t for t in _sampled_triples(n, samples, seed) if scalar_bad(*t)]
        if bad:
            return failing(axiom, carrier, min(bad), samples, exhaustive=False)
        return passing(axiom, samples, exhaustive=False)

    def worker(a0, a1):
        left, right = sides(a0, a1)
        diff = np.argwhere(left != right)
        if diff.size:
            a, b, c = diff[0]
            return (a0 + int(a), int(b), int(c))
        return None

    found = scan_chunks(worker, n, n * n, jobs)
    if found is not None:
        return failing(axiom, carrier, found, n**3)
    return passing(axiom, n**3)


def check_associativity(op: OpTable, jobs: int = 1, samples=None, seed: int = 0) -> AxiomReport:
    """(a*b)*c = a*(b*c) over all triples."""
    _sampling_guard(op, samples)
    t = op.table
    n = len(op)

    def sides(a0, a1):
        sub = t[a0:a1]
        return t[sub, :], sub[:, t]

    def scalar_bad(a, b, c):
        return t[t[a, b], c] != t[a, t[b, c]]

    return _triple_scan("assoc", op.carrier, sides, n, jobs, samples, seed, scalar_bad)


def check_interchange(
    op_i: OpTable, op_j: OpTable, jobs: int = 1, samples=None, seed: int = 0
) -> AxiomReport:
    """(a *_i b) *_j c = a *_i (b *_j c) over all triples."""
    carrier = shared_carrier(op_i, op_j)
    _sampling_guard(op_i, samples)
    ti, tj = op_i.table, op_j.table
    n = len(carrier)

    def sides(a0, a1):
        return tj[ti[a0:a1], :], ti[a0:a1][:, tj]

    def scalar_bad(a, b, c):
        return tj[ti[a, b], c] != ti[a, tj[b, c]]

    return _triple_scan("interchange", carrier, sides, n, jobs, samples, seed, scalar_bad)


def check_idempotency(op: OpTable, samples=None, seed: int = 0) -> AxiomReport:
    """x*x = x for every x."""
    _sampling_guard(op, samples)
    t = op.table
    n = len(op)
    diag = t.diagonal()
    if samples is not None:
        rng = random.Random(seed)
        picks = [rng.randrange(n) for _ in range(samples)]
        bad = [x for x in picks if diag[x] != x]
        if bad:
            return failing("idempotent", op.carrier, (min(bad),), samples, exhaustive=False)
        return passing("idempotent", samples, exhaustive=False)
    off = np.argwhere(diag != np.arange(n))
    if off.size:
        return failing("idempotent", op.carrier, (int(off[0][0]),), n)
    return passing("idempotent", n)


def _solution_counts(op: OpTable, side: str) -> np.ndarray:
    """counts[x, y]: right mode solutions z of x = z*y; left mode solutions u of x*u = y."""
    t = op.table
    n = len(op)
    counts = np.zeros((n, n), dtype=np.int64)
    if side == RIGHT:
        cols = np.broadcast_to(np.arange(n), (n, n))
        np.add.at(counts, (t, cols), 1)
    else:
        rows = np.broadcast_to(np.arange(n)[:, None], (n, n))
        np.add.at(counts, (rows, t), 1)
    return counts


def check_divisibility(
    op: OpTable, side: str, unique: bool = True, samples=None, seed: int = 0
) -> AxiomReport:
    """Solvability of the sided division equation for every pair.

    Right side: for each (x, y), solutions z of x = z*y. Left side: for each
    (a, b), solutions u of a*u = b. With unique=True exactly one solution is
    required; the failure reason distinguishes a missing solution from a
    non-unique one. With unique=False only existence is required.
    """
    _side(side)
    _sampling_guard(op, samples)
    axiom = f"divisibility_{side}"
    n = len(op)
    counts = _solution_counts(op, side)
    if samples is not None:
        rng = random.Random(seed)
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
        bad = [pr for pr in pairs if counts[pr] == 0 or (unique and counts[pr] > 1)]
        if bad:
            w = min(bad)
            reason = REASON_NO_SOLUTION if counts[w] == 0 else REASON_NOT_UNIQUE
            return failing(axiom, op.carrier, w, samples, reason, exhaustive=False)
        return passing(axiom, samples, exhaustive=False)
    bad = np.argwhere((counts == 0) | (counts > 1)) if unique else np.argwhere(counts == 0)
    if bad.size:
        x, y = int(bad[0][0]), int(bad[0][1])
        reason = REASON_NO_SOLUTION if counts[x, y] == 0 else REASON_NOT_UNIQUE
        return failing(axiom, op.carrier, (x, y), n * n, reason)
    return passing(axiom, n * n)


def check_self_distributivity(
    op: OpTable, side: str, jobs: int = 1, samples=None, seed: int = 0
) -> AxiomReport:
    """Right: (x*y)*z = (x*z)*(y*z). Left: x*(y*z) = (x*y)*(x*z)."""
    _side(side)
    _sampling_guard(op, samples)
    t = op.table
    n = len(op)
    axiom = f"distrib_{side}"

    if side == RIGHT:
        def sides(a0, a1):
            sub = t[a0:a1]
            return t[sub, :], t[sub[:, None, :], t[None, :, :]]

        def scalar_bad(x, y, z):
            return t[t[x, y], z] != t[t[x, z], t[y, z]]
    else:
        def sides(a0, a1):
            sub = t[a0:a1]
            return sub[:, t], t[sub[:, :, None], sub[:, None, :]]

        def scalar_bad(x, y, z):
            return t[x, t[y, z]] != t[t[x, y], t[x, z]]

    return _triple_scan(axiom, op.carrier, sides, n, jobs, samples, seed, scalar_bad)


def find_units(op: OpTable) -> list:
    """All two-sided units of the table (a magma has at most one)."""
    t = op.table
    n = len(op)
    eye = np.arange(n)
    units = [
        op.carrier.elements[e]
        for e in range(n)
        if np.array_equal(t[e], eye) and np.array_equal(t[:, e], eye)
    ]
    assert len(units) <= 1, "two distinct two-sided units cannot coexist"
    return units


def find_inverses(op: OpTable, unit) -> tuple:
    """Two-sided inverses relative to a verified unit.

    Returns (report, mapping) where mapping takes each element to its
    lexicographically first two-sided inverse or None. The report fails on the
    first element with no inverse.
    """
    carrier = op.carrier
    e = carrier.index_of(unit)
    t = op.table
    n = len(op)
    eye = np.arange(n)
    if not (np.array_equal(t[e], eye) and np.array_equal(t[:, e], eye)):
        raise NotAUnitError(f"{unit!r} is not a two-sided unit of {op.label!r}")
    mapping = {}
    first_missing = None
    for a in range(n):
        hits = np.nonzero((t[a] == e) & (t[:, a] == e))[0]
        mapping[carrier.elements[a]] = carrier.elements[int(hits[0])] if hits.size else None
        if hits.size == 0 and first_missing is None:
            first_missing = a
    if first_missing is not None:
        return failing("inverses", carrier, (first_missing,), n * n), mapping
    return passing("inverses", n * n), mapping


def check_group(op: OpTable, jobs: int = 1) -> AxiomReport:
    """Associativity, a two-sided unit, and an inverse for every element."""
    assoc = check_associativity(op, jobs=jobs)
    if not assoc.passed:
        return AxiomReport("group", assoc.verdict, assoc.witness, assoc.checked, "assoc")
    units = find_units(op)
    if not units:
        return AxiomReport("group", "fail", (), assoc.checked + len(op), "no-unit")
    inv_report, _ = find_inverses(op, units[0])
    checked = assoc.checked + len(op) + inv_report.checked
    if not inv_report.passed:
        return AxiomReport("group", "fail", inv_report.witness, checked, "inverses")
    return passing("group", checked)


def check_rack_quandle(
    op: OpTable, side: str, require_idempotent: bool, jobs: int = 1
) -> AxiomReport:
    """Sided rack axioms, optionally with idempotency (quandle).

    Sub-checks run in axiom order: idempotency (when required), then unique
    divisibility, then self-distributivity, all on the same side; the first
    failure is reported with its sub-axiom as the reason.
    """
    _side(side)
    name = ("quandle_" if require_idempotent else "rack_") + side
    checked = 0
    stages = []
    if require_idempotent:
        stages.append(("idempotent", lambda: check_idempotency(op)))
    stages.append((f"divisibility_{side}", lambda: check_divisibility(op, side, unique=True)))
    stages.append((f"distrib_{side}", lambda: check_self_distributivity(op, side, jobs=jobs)))
    for label, run in stages:
        report = run()
        checked += report.checked
        if not report.passed:
            reason = label if report.reason is None else f"{label}: {report.reason}"
            return AxiomReport(name, "fail", report.witness, checked, reason)
    return passing(name, checked)


def check_dimonoid(dashv: OpTable, vdash: OpTable, jobs: int = 1) -> AxiomReport:
    """The five two-operation axioms, checked in their standard order 1..5.

    With -| and |- for the two products, the axioms are:
      1: (x -| y) -| z = x -| (y -| z)
      2: (x -| y) -| z = x -| (y |- z)
      3: (x |- y) -| z = x |- (y -| z)
      4: (x -| y) |- z = x |- (y |- z)
      5: (x |- y) |- z = x |- (y |- z)
    The first violated axiom number is reported as the reason.
    """
    carrier = shared_carrier(dashv, vdash)
    d, v = dashv.table, vdash.table
    n = len(carrier)

    def axiom_sides(k):
        if k == 1:
            return lambda a0, a1: (d[d[a0:a1], :], d[a0:a1][:, d])
        if k == 2:
            return lambda a0, a1: (d[d[a0:a1], :], d[a0:a1][:, v])
        if k == 3:
            return lambda a0, a1: (d[v[a0:a1], :], v[a0:a1][:, d])
        if k == 4:
            return lambda a0, a1: (v[d[a0:a1], :], v[a0:a1][:, v])
        return lambda a0, a1: (v[v[a0:a1], :], v[a0:a1][:, v])

    checked = 0
    for k in range(1, 6):
        sides = axiom_sides(k)

        def worker(a0, a1):
            left, right = sides(a0, a1)
            diff = np.argwhere(left != right)
            if diff.size:
                a, b, c = diff[0]
                return (a0 + int(a), int(b), int(c))
            return None

        found = scan_chunks(worker, n, n * n, jobs)
        checked += n**3
        if found is not None:
            return failing("dimonoid", carrier, found, checked, f"axiom-{k}")
    return passing("dimonoid", checked)


def find_bar_units(dashv: OpTable, vdash: OpTable) -> list:
    """Elements e with x -| e = x and e |- x = x for all x."""
    carrier = shared_carrier(dashv, vdash)
    d, v = dashv.table, vdash.table
    n = len(carrier)
    eye = np.arange(n)
    return [
        carrier.elements[e]
        for e in range(n)
        if np.array_equal(d[:, e], eye) and np.array_equal(v[e], eye)
    ]


def check_skew_brace(dot: OpTable, circ: OpTable, jobs: int = 1) -> AxiomReport:
    """Two group structures linked by g1 o (g2 . g3) = (g1 o g2) . g1^-1 . (g1 o g3).

    Both tables must be groups (NotAGroupError otherwise); the inverse in the
    compatibility identity is taken in the dot group.
    """
    carrier = shared_carrier(dot, circ)
    for which, op in (("dot", dot), ("circ", circ)):
        group_report = check_group(op, jobs=jobs)
        if not group_report.passed:
            raise NotAGroupError(which, group_report)
    d, c = dot.table, circ.table
    n = len(carrier)
    unit = find_units(dot)[0]
    _, inv_map = find_inverses(dot, unit)
    inv = np.array([carrier.index_of(inv_map[e]) for e in carrier.elements], dtype=np.int64)

    def worker(a0, a1):
        csub = c[a0:a1]
        left = csub[:, d]
        partial = d[csub, inv[a0:a1, None]]        # (g1 o g2) . g1^-1
        right = d[partial[:, :, None], csub[:, None, :]]
        diff = np.argwhere(left != right)
        if diff.size:
            a, b, cc = diff[0]
            return (a0 + int(a), int(b), int(cc))
        return None

    found = scan_chunks(worker, n, n * n, jobs)
    checked = n**3
    if found is not None:
        return failing("skew_brace", carrier, found, checked, "compatibility")
    return passing("skew_brace", checked)


def check_multiquandle_pair(op_i: OpTable, op_j: OpTable, jobs: int = 1) -> AxiomReport:
    """Both mixed self-distributivity identities for an operation pair.

    First (x *_i y) *_j z = (x *_j z) *_i (y *_j z) over all triples, then the
    same with i and j exchanged; the reason names which identity broke.
    """
    carrier = shared_carrier(op_i, op_j)
    ti, tj = op_i.table, op_j.table
    n = len(carrier)
    checked = 0
    for reason, ta, tb in (("mixed-distrib-ij", ti, tj), ("mixed-distrib-ji", tj, ti)):
        def worker(a0, a1):
            asub, bsub = ta[a0:a1], tb[a0:a1]
            left = tb[asub, :]
            right = ta[bsub[:, None, :], tb[None, :, :]]
            diff = np.argwhere(left != right)
            if diff.size:
                a, b, c = diff[0]
                return (a0 + int(a), int(b), int(c))
            return None

        found = scan_chunks(worker, n, n * n, jobs)
        checked += n**3
        if found is not None:
            return failing("multiquandle", carrier, found, checked, reason)
    return passing("multiquandle", checked)


def op_product(op_i: OpTable, op_j: OpTable, label: str | None = None) -> OpTable:
    """The composite operation p(i,j)q = (p *_i q) *_j q as a table."""
    carrier = shared_carrier(op_i, op_j)
    n = len(carrier)
    grid = op_j.table[op_i.table, np.arange(n)[None, :]]
    return table_from_array(carrier, grid, label or f"product({op_i.label},{op_j.label})")


def _op_stack(ops) -> np.ndarray:
    if not ops:
        raise ValueError("need at least one operation")
    shared_carrier(*ops)
    return np.stack([op.table for op in ops])


def nvalued_product(ops) -> list:
    """For each pair (a, b), the multiset of a *_k b over all operations k.

    Returns a 2D list indexed by carrier position, holding Multiset values.
    """
    stack = _op_stack(ops)
    n = stack.shape[1]
    return [
        [Multiset.from_indices(stack[:, a, b]) for b in range(n)] for a in range(n)
    ]


def check_nvalued_associativity(ops, jobs: int = 1) -> AxiomReport:
    """Multiset associativity of the combined multivalued product.

    (a*b)*c feeds every value of the multiset a*b (with multiplicity) through
    *c and merges; equality with a*(b*c) is multiset equality of the m^2
    results, checked for every triple.
    """
    stack = _op_stack(ops)
    carrier = ops[0].carrier
    m, n = stack.shape[0], stack.shape[1]

    def worker(a0, a1):
        k = a1 - a0
        zs = stack[:, a0:a1, :]                      # (m, k, n): a *_i b
        left = stack[:, zs, :]                       # (j, i, a, b, c)
        left = np.sort(left.reshape(m * m, k, n, n), axis=0)
        asub = stack[:, a0:a1, :]                    # (j, a, w)
        right = asub[:, :, stack]                    # (j, a, i, b, c)
        right = np.sort(right.transpose(0, 2, 1, 3, 4).reshape(m * m, k, n, n), axis=0)
        diff = np.argwhere(np.any(left != right, axis=0))
        if diff.size:
            a, b, c = diff[0]
            return (a0 + int(a), int(b), int(c))
        return None

    found = scan_chunks(worker, n, n * n * m * m, jobs)
    if found is not None:
        return failing("nvalued_assoc", carrier, found, n**3)
    return passing("nvalued_assoc", n**3)
