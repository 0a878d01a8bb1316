#!/usr/bin/env python3
"""Probe products of quandle operations: x -> (x *_i y) *_j y.

The product of an operation with itself collapses to the first projection
exactly when the operation is involutory (core quandles are). This script
tabulates, for pairs of small quandle operations on a common carrier, whether
the product is a projection, idempotent, or self-distributive again.
"""

import argparse

from multigroup import (
    LEFT,
    RIGHT,
    alexander_quandle,
    check_idempotency,
    check_self_distributivity,
    conj_quandle,
    core_quandle,
    cyclic_group,
    make_automorphism,
    op_product,
    symmetric_group,
)


def op_families(max_order):
    for n in range(3, max_order + 1):
        group = cyclic_group(n)
        ops = [core_quandle(group, label=f"core-z{n}")]
        for k in range(2, n):
            try:
                phi = make_automorphism(group, ("power", k))
            except Exception:
                continue
            ops.append(alexander_quandle(group, phi, label=f"alex-z{n}-p{k}"))
        yield group.label, ops
    s3 = symmetric_group(3)
    yield s3.label, [conj_quandle(s3, 1, label="conj-s3"),
                     conj_quandle(s3, 2, label="conj-s3-sq"),
                     core_quandle(s3, label="core-s3")]


def is_projection(op):
    n = len(op)
    return all(op.table[x, y] == x for x in range(n) for y in range(n))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=7,
                        help="largest cyclic carrier to include")
    args = parser.parse_args()

    print(f"{'carrier':14} {'product':28} {'projection':10} {'idempotent':10} {'right-sd':9}")
    for label, ops in op_families(args.max_order):
        for a in ops:
            for b in ops:
                prod = op_product(a, b, label=f"{a.label}*{b.label}")
                proj = is_projection(prod)
                idem = check_idempotency(prod).passed
                sd = check_self_distributivity(prod, RIGHT).passed
                print(f"{label:14} {prod.label:28} {str(proj):10} {str(idem):10} {str(sd):9}")


if __name__ == "__main__":
    main()
