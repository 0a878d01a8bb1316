#!/usr/bin/env python3
"""Probe which small skew braces also satisfy the dimonoid axioms.

For each brace variant on each small group, run the skew brace check and then
feed the same two tables to the dimonoid check in both orientations. Output is
deterministic; rerun after extending the group list.
"""

import argparse

from multigroup import (
    check_dimonoid,
    check_skew_brace,
    cyclic_group,
    brace_ops,
    gl_group,
    symmetric_group,
    z_parity_brace,
)


def candidate_braces():
    groups = [
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        cyclic_group(6),
        cyclic_group(8),
        symmetric_group(3),
        gl_group(2, 2),
    ]
    for group in groups:
        for variant in ("trivial", "opposite"):
            yield f"{variant}({group.label})", brace_ops(group, variant)
    for order in (2, 4, 8, 16):
        yield f"parity(cyclic({order}))", z_parity_brace(cyclic_group(order))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--failures-only", action="store_true",
                        help="only print braces that are not dimonoids")
    args = parser.parse_args()

    print(f"{'brace':34} {'skew_brace':12} {'dim(dot,circ)':14} {'dim(circ,dot)':14}")
    for name, (dot, circ) in candidate_braces():
        brace = check_skew_brace(dot, circ)
        fwd = check_dimonoid(dot, circ)
        rev = check_dimonoid(circ, dot)
        if args.failures_only and fwd.passed and rev.passed:
            continue
        fwd_s = "pass" if fwd.passed else f"fail:{fwd.reason}"
        rev_s = "pass" if rev.passed else f"fail:{rev.reason}"
        print(f"{name:34} {brace.verdict:12} {fwd_s:14} {rev_s:14}")
        if not fwd.passed:
            print(f"{'':34}   first dim(dot,circ) witness: {fwd.witness}")


if __name__ == "__main__":
    main()
