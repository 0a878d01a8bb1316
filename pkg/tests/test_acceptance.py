"""Acceptance checks, one test per headline claim of the workbench.

Every test here re-derives its claim from scratch through the public API and
prints a single summary line on success. Wall-clock budgets are asserted so a
regression in the vectorized scans fails here before it annoys anyone at the
command line. All checks are exact: the carriers are finite, so there is no
tolerance to tune.
"""

import json
import os
import random
import time

import numpy as np

from multigroup import (
    LEFT,
    RIGHT,
    Matrix,
    MatrixOpParams,
    PrimeField,
    action_dimonoid,
    alexander_quandle,
    brace_opposite,
    brace_trivial,
    build_op_table,
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
    conj_quandle,
    core_quandle,
    cyclic_group,
    find_bar_units,
    find_inverses,
    find_units,
    gl_group,
    gl_group_op,
    make_automorphism,
    mat_add_scaled,
    mat_det,
    mat_inv,
    mat_mul,
    matrix_op,
    matrix_set,
    matrix_subgroup,
    op_product,
    opposite_op,
    pair_carrier,
    pair_dimonoid,
    symmetric_group,
    vxg_conj_op,
    vxg_phi_op,
    z_parity_brace,
    z_parity_window,
)
from multigroup.cli import main as cli_main
from multigroup.demos import run_demo


def _rand_matrix(rng, n, p, fld):
    return Matrix.from_rows(
        [[rng.randrange(p) for _ in range(n)] for _ in range(n)], fld
    )


def test_criterion_01_twisted_matrix_products_are_associative():
    start = time.perf_counter()
    ops_checked = 0
    for p in (2, 3):
        carrier = matrix_set(2, p)
        fld = PrimeField(p)
        rng = random.Random(900 + p)
        pairs = [(_rand_matrix(rng, 2, p, fld), _rand_matrix(rng, 2, p, fld))
                 for _ in range(20)]
        for m1, m2 in pairs:
            for s in range(p):
                for t in range(p):
                    op = matrix_op(MatrixOpParams(s, t, m1, m2), carrier)
                    report = check_associativity(op)
                    assert report.passed, report.to_json_dict()
                    assert report.exhaustive
                    assert report.checked == len(carrier) ** 3
                    ops_checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"budget blown: {elapsed:.1f}s"
    print(f"criterion 01: PASS - {ops_checked} twisted matrix products "
          f"associative on every triple ({elapsed:.1f}s)")


def test_criterion_02_twisted_family_satisfies_interchange():
    start = time.perf_counter()
    carrier = matrix_set(2, 2)
    fld = PrimeField(2)
    e = Matrix.identity(2, fld)
    x = Matrix.from_rows(((1, 1), (0, 1)), fld)
    y = Matrix.from_rows(((0, 1), (1, 0)), fld)
    params = [
        MatrixOpParams(1, 0, e, e),
        MatrixOpParams(0, 1, e, x),
        MatrixOpParams(1, 1, e, x),
        MatrixOpParams(1, 1, y, e),
        MatrixOpParams(1, 1, x, y),
    ]
    ops = [matrix_op(q, carrier, label=f"star{i}") for i, q in enumerate(params)]
    assert len({op.table.tobytes() for op in ops}) == 5, "tables must be distinct"
    pairs = 0
    for left in ops:
        for right in ops:
            report = check_interchange(left, right)
            assert report.passed, (left.label, right.label, report.to_json_dict())
            assert report.exhaustive
            pairs += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"budget blown: {elapsed:.1f}s"
    print(f"criterion 02: PASS - interchange holds for all {pairs} ordered pairs "
          f"of five distinct twisted products ({elapsed:.1f}s)")


def test_criterion_03_sandwich_products_are_groups_with_known_units():
    start = time.perf_counter()
    cases = []
    gl2 = gl_group(2, 2)
    cases.extend((2, rows) for rows in gl2.elements)
    gl3 = gl_group(2, 3)
    rng = random.Random(903)
    cases.extend((3, rows) for rows in rng.sample(list(gl3.elements), 10))
    assert len(cases) == 16
    for p, m_rows in cases:
        carrier = gl_group(2, p)
        fld = PrimeField(p)
        m = Matrix.from_rows(m_rows, fld)
        op = gl_group_op(m, carrier)
        report = check_group(op)
        assert report.passed, (p, m_rows, report.to_json_dict())
        minv = mat_inv(m)
        assert find_units(op) == [minv.rows]
        inv_report, mapping = find_inverses(op, minv.rows)
        assert inv_report.passed
        for a_rows in carrier.elements:
            a_inv = mat_inv(Matrix.from_rows(a_rows, fld))
            expected = mat_mul(minv, mat_mul(a_inv, minv))
            assert mapping[a_rows] == expected.rows, (p, m_rows, a_rows)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"budget blown: {elapsed:.1f}s"
    print(f"criterion 03: PASS - {len(cases)} sandwich products are groups with "
          f"unit the sandwich inverse and the conjugated inverse map ({elapsed:.1f}s)")


def test_criterion_04_bilinear_collapse_and_refuted_unit_claim():
    for p in (2, 3):
        carrier = matrix_set(2, p)
        fld = PrimeField(p)
        zero = Matrix.zero(2, fld)
        rng = random.Random(904 + p)
        for _ in range(8):
            s, t = rng.randrange(p), rng.randrange(p)
            m1 = _rand_matrix(rng, 2, p, fld)
            m2 = _rand_matrix(rng, 2, p, fld)
            combined = mat_add_scaled(s, m1, t, m2)
            two_term = matrix_op(MatrixOpParams(s, t, m1, m2), carrier)
            one_term = matrix_op(MatrixOpParams(1, 0, combined, zero), carrier)
            assert np.array_equal(two_term.table, one_term.table), (p, s, t)

    result = run_demo("S3-unit")
    assert result["verdict"] == "REFUTED-AS-STATED"
    formula = next(d for d in result["details"] if "formula_confirmed" in d)
    assert formula["formula_confirmed"] is True
    instance = next(d for d in result["details"] if "refuting_instance" in d)
    inst = instance["refuting_instance"]
    assert (inst["s"], inst["t"]) != (1, 0), "refutation must leave the plain case"
    assert inst["unit"], "refuting instance must actually have a unit"
    print("criterion 04: PASS - two-term products collapse to one-term ones and "
          "the units-only-for-plain-multiplication claim is REFUTED-AS-STATED at "
          f"(s,t)=({inst['s']},{inst['t']}) mod {inst['modulus']}")


def test_criterion_05_vector_group_twists_are_left_racks_with_unique_division():
    start = time.perf_counter()
    pairs = pair_carrier(2, 2, gl_group(2, 2))
    assert len(pairs) == 24
    for n in (-1, 0, 1, 2):
        op = vxg_conj_op(pairs, n)
        sd = check_self_distributivity(op, LEFT)
        assert sd.passed, (n, sd.to_json_dict())
        assert sd.exhaustive and sd.checked == 24 ** 3
        div = check_divisibility(op, LEFT, unique=True)
        assert div.passed, (n, div.to_json_dict())
        assert div.exhaustive
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"budget blown: {elapsed:.1f}s"
    print("criterion 05: PASS - conjugation-twisted pair products satisfy left "
          f"self-distributivity and unique left division for n in -1..2 ({elapsed:.1f}s)")


def test_criterion_06_opposites_of_left_racks_are_right_racks():
    pairs = pair_carrier(2, 2, gl_group(2, 2))
    for n in (-1, 0, 1, 2):
        op = opposite_op(vxg_conj_op(pairs, n))
        report = check_rack_quandle(op, RIGHT, require_idempotent=False)
        assert report.passed, (n, report.to_json_dict())
        assert report.exhaustive
        assert report.checked == 24 ** 2 + 24 ** 3
    print("criterion 06: PASS - transposed twisted pair products pass the "
          "right-handed rack check for n in -1..2")


def test_criterion_07_identity_twist_failures_and_trivial_group_contrast():
    pairs = pair_carrier(2, 2, gl_group(2, 2))
    phi = make_automorphism(pairs.group, "identity")
    op = vxg_phi_op(pairs, phi)

    idem = check_idempotency(op)
    assert not idem.passed, idem.to_json_dict()
    vec, mat = idem.witness[0]
    moved = tuple(sum(mat[i][j] * vec[j] for j in range(2)) % 2 for i in range(2))
    assert moved != tuple(vec), "witness matrix must move the witness vector"

    div = check_divisibility(op, RIGHT, unique=True)
    assert not div.passed
    assert div.reason == "exists-not-unique", div.to_json_dict()

    ident = ((1, 0), (0, 1))
    trivial = pair_carrier(2, 2, matrix_subgroup([ident], 2, 2, label="gl-trivial(2,2)"))
    phi0 = make_automorphism(trivial.group, "identity")
    op0 = vxg_phi_op(trivial, phi0)
    idem0 = check_idempotency(op0)
    assert idem0.passed, idem0.to_json_dict()
    div0 = check_divisibility(op0, RIGHT, unique=True)
    assert div0.passed, (
        "unique right division over the one-element group: "f"{div0.to_json_dict()}"
    )
    print("criterion 07: PASS - identity-twist idempotency and unique right "
          "division fail over the full group and both hold over the trivial one")


def test_criterion_08_pair_and_action_dimonoids():
    start = time.perf_counter()
    for carrier in (cyclic_group(4), symmetric_group(3)):
        dashv, vdash = pair_dimonoid(carrier)
        report = check_dimonoid(dashv, vdash)
        assert report.passed, (carrier.label, report.to_json_dict())
        bars = set(find_bar_units(dashv, vdash))
        e = carrier.identity
        assert (e, e) in bars
        for g in carrier.elements:
            assert (g, carrier.inv(g)) in bars, (carrier.label, g)

    pairs = pair_carrier(2, 2, gl_group(2, 2))
    dashv, vdash = action_dimonoid(pairs)
    report = check_dimonoid(dashv, vdash)
    assert report.passed, report.to_json_dict()
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"budget blown: {elapsed:.1f}s"
    print("criterion 08: PASS - doubled-carrier and action dimonoids satisfy all "
          f"five axioms and carry the expected bar-units ({elapsed:.1f}s)")


def test_criterion_09_braces_pass_and_noncommutative_pair_fails_dimonoid():
    s3 = symmetric_group(3)
    for builder in (brace_trivial, brace_opposite):
        dot, circ = builder(s3)
        report = check_skew_brace(dot, circ)
        assert report.passed, (builder.__name__, report.to_json_dict())

    mul = build_op_table(s3, s3.mul, "ab")
    flipped = opposite_op(mul, "ba")
    report = check_dimonoid(flipped, mul)
    assert not report.passed
    assert report.reason == "axiom-2", report.to_json_dict()
    witness = report.witness
    assert any(
        s3.mul(g, h) != s3.mul(h, g)
        for g in witness
        for h in witness
    ), "dimonoid failure witness must contain a non-commuting pair"
    print("criterion 09: PASS - both braces on the 6-element permutation group "
          "check out and the flipped-product pair fails dimonoid axiom 2 on a "
          "non-commuting witness")


def test_criterion_10_parity_operations_on_window_and_mod_16():
    window = z_parity_window(-64, 64)
    assert window.circ(2, 3) == 5
    assert window.circ(3, 2) == 1
    a, b, c = 2, 3, 4
    assert window.dashv(a, window.dashv(b, c)) == 1
    assert window.dashv(a, window.vdash(b, c)) == 9

    plus, circ = z_parity_brace(cyclic_group(16))
    report = check_skew_brace(plus, circ)
    assert report.passed, report.to_json_dict()
    assert report.exhaustive
    print("criterion 10: PASS - parity products reproduce the window values "
          "1 and 9 at (2,3,4) and the modulus-16 tables form a skew brace")


def test_criterion_11_repeated_operation_degeneracies():
    z5 = cyclic_group(5)
    quandles = [
        conj_quandle(symmetric_group(3), 1, label="conj-s3"),
        conj_quandle(symmetric_group(3), 2, label="conj-s3-sq"),
        core_quandle(cyclic_group(5), label="core-z5"),
        core_quandle(cyclic_group(4), label="core-z4"),
        core_quandle(symmetric_group(3), label="core-s3"),
        alexander_quandle(z5, make_automorphism(z5, ("power", 2)), label="alex-z5"),
    ]
    for op in quandles:
        mixed = check_multiquandle_pair(op, op)
        single = check_self_distributivity(op, RIGHT)
        assert mixed.verdict == single.verdict, op.label
        assert mixed.witness == single.witness, op.label

    for n in range(2, 13):
        q = core_quandle(cyclic_group(n))
        prod = op_product(q, q)
        first = build_op_table(cyclic_group(n), lambda x, y: x, "proj1")
        assert np.array_equal(prod.table, first.table), n
    print("criterion 11: PASS - repeated-operation mixed checks degenerate to "
          "one-operation self-distributivity and core products collapse to the "
          "first projection for orders 2..12")


def test_criterion_12_sandwich_family_is_nvalued_associative():
    start = time.perf_counter()
    carrier = gl_group(2, 2)
    fld = PrimeField(2)
    ops = [gl_group_op(Matrix.from_rows(rows, fld), carrier, label=f"m{i}")
           for i, rows in enumerate(carrier.elements)]
    assert len(ops) == 6
    report = check_nvalued_associativity(ops)
    assert report.passed, report.to_json_dict()
    assert report.exhaustive and report.checked == 6 ** 3
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"budget blown: {elapsed:.1f}s"
    print("criterion 12: PASS - the six-member sandwich family is multiset "
          f"associative on all triples ({elapsed:.1f}s)")


def test_criterion_13_demo_reports_are_byte_identical(capsys):
    outputs = []
    jobs_values = ("1", "1", str(max(2, os.cpu_count() or 2)))
    for jobs in jobs_values:
        code = cli_main(["demo", "--format", "json", "--no-timing", "--jobs", jobs])
        assert code == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]
    data = json.loads(outputs[0])
    assert len(data["claims"]) == 13
    with capsys.disabled():
        print("\ncriterion 13: PASS - demo JSON is byte-identical across reruns "
              f"and across --jobs {jobs_values[0]} vs {jobs_values[2]}")
