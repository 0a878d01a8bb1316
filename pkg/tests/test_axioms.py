"""Engine checks against independent brute-force oracles.

Every vectorized check is compared, verdict and witness both, with a plain
triple-loop reimplementation on small carriers, and frozen counterexamples
pin the lexicographic witness order.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multigroup.axioms import (
    LEFT,
    RIGHT,
    check_associativity,
    check_dimonoid,
    check_divisibility,
    check_group,
    check_idempotency,
    check_interchange,
    check_multiquandle_pair,
    check_nvalued_associativity,
    check_rack_quandle,
    check_self_distributivity,
    check_skew_brace,
    find_bar_units,
    find_inverses,
    find_units,
    nvalued_product,
    op_product,
)
from multigroup.carriers import cyclic_group, gl_group, symmetric_group
from multigroup.constructions import (
    brace_ops,
    conj_quandle,
    core_quandle,
    gl_group_op,
    opposite_op,
    pair_dimonoid,
)
from multigroup.errors import NotAGroupError, NotAUnitError
from multigroup.field import PrimeField
from multigroup.matrix import Matrix
from multigroup.optables import build_op_table


def table_of(n, fn, label="op"):
    return build_op_table(cyclic_group(n), lambda a, b: fn(a, b) % n, label=label)


def oracle_triples(n, bad):
    """First violating triple in lex order, or None."""
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if bad(x, y, z):
                    return (x, y, z)
    return None


# --- associativity -------------------------------------------------------------


def test_associativity_failure_frozen():
    sub = table_of(3, lambda a, b: a - b, "minus")
    report = check_associativity(sub)
    assert report.verdict == "fail"
    assert report.witness == (0, 0, 1)
    assert report.checked == 27
    assert report.exhaustive


def test_associativity_against_oracle():
    cases = [
        (4, lambda a, b: a + b),
        (4, lambda a, b: a - b),
        (5, lambda a, b: a * b),
        (5, lambda a, b: a + 2 * b),
        (6, lambda a, b: max(a, b)),
        (6, lambda a, b: a),
    ]
    for n, fn in cases:
        op = table_of(n, fn)
        report = check_associativity(op)
        want = oracle_triples(
            n, lambda x, y, z: fn(fn(x, y) % n, z) % n != fn(x, fn(y, z) % n) % n
        )
        assert (report.witness == want) and (report.passed == (want is None))


# --- interchange ----------------------------------------------------------------


def test_interchange_failure_frozen():
    plus = table_of(4, lambda a, b: a + b, "plus")
    biggest = table_of(4, max, "max")
    report = check_interchange(plus, biggest)
    assert report.verdict == "fail"
    assert report.witness == (1, 0, 1)


def test_interchange_against_oracle():
    n = 4
    ops = {
        "plus": lambda a, b: (a + b) % n,
        "times": lambda a, b: (a * b) % n,
        "max": lambda a, b: max(a, b),
        "left": lambda a, b: a,
    }
    tables = {k: table_of(n, fn, k) for k, fn in ops.items()}
    for ki, kj in itertools.product(ops, repeat=2):
        fi, fj = ops[ki], ops[kj]
        report = check_interchange(tables[ki], tables[kj])
        want = oracle_triples(n, lambda x, y, z: fj(fi(x, y), z) != fi(x, fj(y, z)))
        assert report.witness == want, (ki, kj)


def test_interchange_with_itself_is_associativity():
    plus = table_of(5, lambda a, b: a + b)
    assert check_interchange(plus, plus).passed
    minus = table_of(5, lambda a, b: a - b)
    assert check_interchange(minus, minus).witness == check_associativity(minus).witness


# --- idempotency ----------------------------------------------------------------


def test_idempotency():
    plus = table_of(3, lambda a, b: a + b)
    report = check_idempotency(plus)
    assert report.verdict == "fail"
    assert report.witness == (1,)
    assert report.checked == 3
    assert check_idempotency(table_of(5, max)).passed


# --- divisibility ---------------------------------------------------------------


def test_right_divisibility_unique_for_core():
    core = core_quandle(cyclic_group(3))
    report = check_divisibility(core, RIGHT, unique=True)
    assert report.passed
    assert report.checked == 9


def test_right_divisibility_failures_frozen():
    times = table_of(4, lambda a, b: a * b, "times")
    unique = check_divisibility(times, RIGHT, unique=True)
    assert unique.verdict == "fail"
    assert unique.witness == (0, 0)
    assert unique.reason == "exists-not-unique"
    exists = check_divisibility(times, RIGHT, unique=False)
    assert exists.verdict == "fail"
    assert exists.witness == (1, 0)
    assert exists.reason == "no-solution"


def test_left_divisibility_failures_frozen():
    op = table_of(4, lambda a, b: a + 2 * b, "skew")
    unique = check_divisibility(op, LEFT, unique=True)
    assert unique.witness == (0, 0)
    assert unique.reason == "exists-not-unique"
    exists = check_divisibility(op, LEFT, unique=False)
    assert exists.witness == (0, 1)
    assert exists.reason == "no-solution"


def test_divisibility_against_oracle():
    n = 5
    cases = [lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, lambda a, b: max(a, b)]
    for fn in cases:
        op = table_of(n, fn)
        for side in (LEFT, RIGHT):
            report = check_divisibility(op, side, unique=True)
            bad = None
            for first in range(n):
                for second in range(n):
                    if side == RIGHT:
                        count = sum(1 for z in range(n) if fn(z, second) == first)
                    else:
                        count = sum(1 for u in range(n) if fn(first, u) == second)
                    if count != 1:
                        bad = (first, second)
                        break
                if bad:
                    break
            assert report.witness == bad


def test_divisibility_rejects_bad_side():
    with pytest.raises(ValueError):
        check_divisibility(table_of(3, lambda a, b: a + b), "up")


# --- self-distributivity --------------------------------------------------------


def test_self_distributivity_failures_frozen():
    plus = table_of(4, lambda a, b: a + b)
    right = check_self_distributivity(plus, RIGHT)
    assert right.witness == (0, 0, 1)
    left = check_self_distributivity(plus, LEFT)
    assert left.witness == (1, 0, 0)


def test_self_distributivity_against_oracle():
    n = 4
    cases = [
        lambda a, b: (2 * b - a) % n,
        lambda a, b: (a + b) % n,
        lambda a, b: a,
        lambda a, b: b,
    ]
    for fn in cases:
        op = table_of(n, fn)
        right = check_self_distributivity(op, RIGHT)
        want_r = oracle_triples(
            n, lambda x, y, z: fn(fn(x, y) % n, z) % n != fn(fn(x, z) % n, fn(y, z) % n) % n
        )
        assert right.witness == want_r
        left = check_self_distributivity(op, LEFT)
        want_l = oracle_triples(
            n, lambda x, y, z: fn(x, fn(y, z) % n) % n != fn(fn(x, y) % n, fn(x, z) % n) % n
        )
        assert left.witness == want_l


# --- units, inverses, groups ----------------------------------------------------


def test_units_and_inverses_of_conjugated_product():
    glc = gl_group(2, 2)
    m = Matrix.from_rows(((0, 1), (1, 0)), PrimeField(2))
    op = gl_group_op(m, glc)
    units = find_units(op)
    assert units == [((0, 1), (1, 0))]
    report, mapping = find_inverses(op, units[0])
    assert report.passed
    assert mapping[((1, 1), (0, 1))] == ((1, 0), (1, 1))
    with pytest.raises(NotAUnitError):
        find_inverses(op, ((1, 0), (0, 1)))


def test_find_units_empty():
    assert find_units(core_quandle(cyclic_group(3))) == []


def test_check_group_pass():
    s3 = symmetric_group(3)
    mul = build_op_table(s3, s3.mul, label="mul")
    report = check_group(mul)
    assert report.passed
    assert report.checked == 216 + 6 + 36


def test_check_group_failure_reasons():
    not_assoc = table_of(3, lambda a, b: a - b)
    r1 = check_group(not_assoc)
    assert (r1.reason, r1.witness) == ("assoc", (0, 0, 1))

    no_unit = table_of(3, lambda a, b: a)
    r2 = check_group(no_unit)
    assert (r2.reason, r2.witness) == ("no-unit", ())

    no_inverses = table_of(4, lambda a, b: a * b)
    r3 = check_group(no_inverses)
    assert (r3.reason, r3.witness) == ("inverses", (0,))
    assert r3.checked == 64 + 4 + 16


# --- rack / quandle composites --------------------------------------------------


def test_quandle_right_composite_pass():
    op = conj_quandle(symmetric_group(3))
    report = check_rack_quandle(op, RIGHT, require_idempotent=True)
    assert report.passed
    assert report.checked == 6 + 36 + 216


def test_quandle_subcheck_order_idempotency_first():
    shift = table_of(3, lambda a, b: a + 1, "shift")
    report = check_rack_quandle(shift, LEFT, require_idempotent=True)
    assert report.verdict == "fail"
    assert report.reason == "idempotent"
    assert report.witness == (0,)


def test_quandle_left_divisibility_failure():
    core4 = core_quandle(cyclic_group(4))
    report = check_rack_quandle(core4, LEFT, require_idempotent=True)
    assert report.verdict == "fail"
    assert report.reason == "divisibility_left: exists-not-unique"
    assert report.witness == (0, 0)
    assert report.checked == 4 + 16


def test_rack_skips_idempotency():
    shift = table_of(5, lambda a, b: a + 1, "shift")
    report = check_rack_quandle(shift, RIGHT, require_idempotent=False)
    # z*y = z+1 = x solves uniquely; (x*y)*z = x+2 = (x*z)*(y*z)
    assert report.passed
    assert report.checked == 25 + 125


# --- dimonoid -------------------------------------------------------------------


def test_dimonoid_pass_for_pair_construction():
    dashv, vdash = pair_dimonoid(cyclic_group(4))
    report = check_dimonoid(dashv, vdash)
    assert report.passed
    assert report.checked == 5 * 16**3


def test_dimonoid_axiom2_failure_frozen():
    s3 = symmetric_group(3)
    mul = build_op_table(s3, s3.mul, label="mul")
    report = check_dimonoid(opposite_op(mul), mul)
    assert report.verdict == "fail"
    assert report.reason == "axiom-2"
    assert report.witness == ((0, 1, 2), (0, 2, 1), (1, 0, 2))
    y, z = report.witness[1], report.witness[2]
    assert s3.mul(y, z) != s3.mul(z, y)


def test_dimonoid_against_oracle():
    n = 3
    dashv_fn = lambda a, b: a
    vdash_fn = lambda a, b: b
    dashv = table_of(n, dashv_fn, "take-left")
    vdash = table_of(n, vdash_fn, "take-right")
    report = check_dimonoid(dashv, vdash)
    # axioms 1..5 with the projection pair hold (the bar-unit laws differ)
    axioms_fns = [
        lambda x, y, z: dashv_fn(dashv_fn(x, y), z) != dashv_fn(x, dashv_fn(y, z)),
        lambda x, y, z: dashv_fn(dashv_fn(x, y), z) != dashv_fn(x, vdash_fn(y, z)),
        lambda x, y, z: dashv_fn(vdash_fn(x, y), z) != vdash_fn(x, dashv_fn(y, z)),
        lambda x, y, z: vdash_fn(dashv_fn(x, y), z) != vdash_fn(x, vdash_fn(y, z)),
        lambda x, y, z: vdash_fn(vdash_fn(x, y), z) != vdash_fn(x, vdash_fn(y, z)),
    ]
    assert report.passed == all(
        oracle_triples(n, fn) is None for fn in axioms_fns
    )


def test_bar_units_of_pair_dimonoid():
    dashv, vdash = pair_dimonoid(cyclic_group(4))
    assert find_bar_units(dashv, vdash) == [(0, 0), (1, 3), (2, 2), (3, 1)]


# --- skew braces ----------------------------------------------------------------


def test_skew_brace_pass():
    for group in (symmetric_group(3), cyclic_group(6)):
        for variant in ("trivial", "opposite"):
            dot, circ = brace_ops(group, variant)
            assert check_skew_brace(dot, circ).passed


def test_skew_brace_compatibility_failure_frozen():
    z4 = cyclic_group(4)
    dot = table_of(4, lambda a, b: a + b, "plus")
    circ = table_of(4, lambda a, b: a + b + 1, "shifted")
    report = check_skew_brace(dot, circ)
    assert report.verdict == "fail"
    assert report.reason == "compatibility"
    assert report.witness == (0, 0, 0)


def test_skew_brace_requires_groups():
    dot = table_of(3, lambda a, b: a, "proj")
    circ = table_of(3, lambda a, b: a + b, "plus")
    with pytest.raises(NotAGroupError) as info:
        check_skew_brace(dot, circ)
    assert info.value.which == "dot"
    assert not info.value.report.passed


def test_skew_brace_against_oracle():
    n = 8
    z = cyclic_group(n)
    dot = table_of(n, lambda a, b: a + b, "plus")

    def circ_fn(a, b):
        return (a + b) % n if a % 2 == 0 else (a - b) % n

    circ = table_of(n, circ_fn, "parity")
    report = check_skew_brace(dot, circ)
    want = oracle_triples(
        n,
        lambda g1, g2, g3: circ_fn(g1, (g2 + g3) % n)
        != (circ_fn(g1, g2) - g1 + circ_fn(g1, g3)) % n,
    )
    assert report.witness == want
    assert report.passed == (want is None)


# --- multi-operation checks -----------------------------------------------------


def test_multiquandle_pair_pass():
    s3 = symmetric_group(3)
    conj = conj_quandle(s3)
    proj = build_op_table(s3, lambda a, b: a, label="proj")
    report = check_multiquandle_pair(conj, proj)
    assert report.passed
    assert report.checked == 2 * 216


def test_multiquandle_pair_failure_frozen():
    core = core_quandle(cyclic_group(4))
    plus = table_of(4, lambda a, b: a + b, "plus")
    report = check_multiquandle_pair(core, plus)
    assert report.verdict == "fail"
    assert report.reason == "mixed-distrib-ji"
    assert report.witness == (0, 0, 1)


def test_op_product_values():
    core5 = core_quandle(cyclic_group(5))
    prod = op_product(core5, core5)
    assert all(prod.table[x, y] == x for x in range(5) for y in range(5))
    s3 = symmetric_group(3)
    conj = conj_quandle(s3)
    twice = op_product(conj, conj)
    x, y = s3.index_of((1, 0, 2)), s3.index_of((1, 2, 0))
    assert s3.elements[twice.table[x, y]] == (0, 2, 1)


def test_nvalued_product_multisets():
    plus = table_of(4, lambda a, b: a + b, "plus")
    shifted = table_of(4, lambda a, b: a + b + 2, "shifted")
    grid = nvalued_product([plus, shifted])
    assert grid[1][1].entries == ((0, 1), (2, 1))
    assert grid[0][0].total == 2


def test_nvalued_associativity_pass_frozen():
    plus = table_of(4, lambda a, b: a + b, "plus")
    shifted = table_of(4, lambda a, b: a + b + 2, "shifted")
    report = check_nvalued_associativity([plus, shifted])
    assert report.passed
    assert report.checked == 64


def test_nvalued_associativity_failure_frozen():
    plus = table_of(3, lambda a, b: a + b, "plus")
    proj = table_of(3, lambda a, b: a, "proj")
    report = check_nvalued_associativity([plus, proj])
    assert report.verdict == "fail"
    assert report.witness == (0, 0, 1)


def test_nvalued_associativity_against_oracle():
    n = 3
    fns = [lambda a, b: (a + b) % n, lambda a, b: max(a, b)]
    ops = [table_of(n, fn) for fn in fns]
    report = check_nvalued_associativity(ops)

    def multiset_bad(a, b, c):
        left = sorted(fj(fi(a, b), c) % n for fi in fns for fj in fns)
        right = sorted(fj(a, fi(b, c)) % n for fi in fns for fj in fns)
        return left != right

    want = oracle_triples(n, multiset_bad)
    assert report.witness == want
    assert report.passed == (want is None)


def test_nvalued_single_op_matches_plain_assoc():
    minus = table_of(4, lambda a, b: a - b, "minus")
    combo = check_nvalued_associativity([minus])
    plain = check_associativity(minus)
    assert combo.witness == plain.witness


# --- sampled mode ---------------------------------------------------------------


def big_cyclic_op(n, fn, label):
    from multigroup.optables import table_from_array

    z = cyclic_group(n)
    a = np.arange(n)
    return table_from_array(z, fn(a[:, None], a[None, :]) % n, label)


def test_sampling_reserved_for_big_carriers():
    small = table_of(5, lambda a, b: a + b)
    with pytest.raises(ValueError):
        check_associativity(small, samples=10)


def test_sampled_reports_not_exhaustive():
    op = big_cyclic_op(2100, lambda a, b: a + b, "plus")
    report = check_associativity(op, samples=200, seed=7)
    assert report.passed
    assert not report.exhaustive
    assert report.checked == 200

    bad = big_cyclic_op(2100, lambda a, b: a - b, "minus")
    report = check_associativity(bad, samples=200, seed=7)
    assert report.verdict == "fail"
    assert not report.exhaustive
    x, y, z = report.witness
    assert (x - y - z) % 2100 != (x - (y - z)) % 2100

    div = check_divisibility(bad, RIGHT, unique=True, samples=150, seed=3)
    assert div.passed and not div.exhaustive


# --- determinism ----------------------------------------------------------------


def test_jobs_do_not_change_reports():
    s3 = symmetric_group(3)
    mul = build_op_table(s3, s3.mul, label="mul")
    core = core_quandle(cyclic_group(4))
    pairs = [
        check_group(mul, jobs=1).to_json_dict(),
        check_rack_quandle(core, RIGHT, require_idempotent=True, jobs=1).to_json_dict(),
        check_dimonoid(opposite_op(mul), mul, jobs=1).to_json_dict(),
    ]
    repeats = [
        check_group(mul, jobs=4).to_json_dict(),
        check_rack_quandle(core, RIGHT, require_idempotent=True, jobs=4).to_json_dict(),
        check_dimonoid(opposite_op(mul), mul, jobs=4).to_json_dict(),
    ]
    assert pairs == repeats


# --- hypothesis properties ------------------------------------------------------


@st.composite
def random_tables(draw):
    n = draw(st.integers(2, 6))
    flat = draw(st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))
    z = cyclic_group(n)
    grid = np.array(flat, dtype=np.int64).reshape(n, n)
    from multigroup.optables import table_from_array

    return table_from_array(z, grid, "random")


@given(random_tables())
@settings(max_examples=60, deadline=None)
def test_assoc_witness_is_sound(op):
    report = check_associativity(op)
    t = op.table
    n = len(op)
    if report.passed:
        assert oracle_triples(n, lambda x, y, z: t[t[x, y], z] != t[x, t[y, z]]) is None
    else:
        x, y, z = report.witness
        assert t[t[x, y], z] != t[x, t[y, z]]
        assert report.witness == oracle_triples(
            n, lambda a, b, c: t[t[a, b], c] != t[a, t[b, c]]
        )


@given(random_tables())
@settings(max_examples=40, deadline=None)
def test_divisibility_witness_is_sound(op):
    t = op.table
    n = len(op)
    for side in (LEFT, RIGHT):
        report = check_divisibility(op, side, unique=True)
        if report.passed:
            continue
        first, second = report.witness
        if side == RIGHT:
            count = sum(1 for z in range(n) if t[z, second] == first)
        else:
            count = sum(1 for u in range(n) if t[first, u] == second)
        if report.reason == "no-solution":
            assert count == 0
        else:
            assert count > 1


@given(random_tables(), random_tables())
@settings(max_examples=30, deadline=None)
def test_multiquandle_same_op_degenerates(op, _other):
    report = check_multiquandle_pair(op, op)
    single = check_self_distributivity(op, RIGHT)
    assert report.passed == single.passed
    if not report.passed:
        assert report.witness == single.witness
