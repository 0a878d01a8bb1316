"""Finite carriers: indexed element sets with a canonical order.

A Carrier fixes the element universe for operation tables. Canonical orders:
matrices are row-major lexicographic, permutations are in one-line-notation
order, pairs are lexicographic with the left component first. Group-flavoured
carriers additionally carry product/inverse callables over raw encodings.

Element encodings are plain hashable Python values: ints for cyclic groups and
integer windows, tuples for permutations and vectors, tuples of row tuples for
matrices, and 2-tuples for products and vector-group pairs.
"""

import itertools
import os
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import (
    ActionMismatchError,
    NotBijectiveError,
    NotClosedError,
    NotHomomorphismError,
    NoUnitError,
    TooLargeError,
    UnsupportedCarrierError,
)
from .field import PrimeField
from .matrix import Matrix, mat_det, mat_inv

DEFAULT_GUARD = 10**6

KINDS = (
    "matrix-set",
    "matrix-group",
    "cyclic-group",
    "symmetric-group",
    "direct-product",
    "vector-group-pairs",
    "integer-window",
)


def carrier_guard() -> int:
    """Current size guard; MULTIGROUP_GUARD overrides the default of 10^6."""
    raw = os.environ.get("MULTIGROUP_GUARD")
    if raw is None:
        return DEFAULT_GUARD
    try:
        return int(raw)
    except ValueError:
        raise UnsupportedCarrierError(f"MULTIGROUP_GUARD={raw!r} is not an integer") from None


def _guard_size(size: int, what: str) -> None:
    guard = carrier_guard()
    if size > guard:
        raise TooLargeError(f"{what} needs {size} candidates, above the guard of {guard}")


@dataclass(frozen=True, eq=False)
class Carrier:
    """An ordered finite element set, optionally with group structure attached."""

    kind: str
    elements: tuple
    label: str
    mul: object = None          # (enc, enc) -> enc, or None
    inv: object = None          # enc -> enc, or None
    identity: object = None
    field: PrimeField | None = None
    dim: int | None = None
    factors: tuple | None = None      # (left, right) carriers for direct products
    group: "Carrier | None" = None    # matrix-group factor of vector-group pairs

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedCarrierError(f"unknown carrier kind {self.kind!r}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def index_of(self, element) -> int:
        return self.index[element]

    @property
    def is_group(self) -> bool:
        return self.mul is not None and self.inv is not None and self.identity is not None

    @property
    def is_monoid(self) -> bool:
        return self.mul is not None and self.identity is not None

    def same_as(self, other: "Carrier") -> bool:
        return self.kind == other.kind and self.elements == other.elements

    @cached_property
    def as_matrix_array(self) -> np.ndarray:
        """Matrix carriers as an (N, n, n) int array; raises for other kinds."""
        if self.kind not in ("matrix-set", "matrix-group"):
            raise UnsupportedCarrierError(f"{self.kind} carrier has no matrix array form")
        return np.array(self.elements, dtype=np.int64)

    @cached_property
    def matrix_rank_index(self) -> np.ndarray:
        """Lookup from row-major base-p rank to carrier index (-1 when absent)."""
        p, n = self.field.p, self.dim
        table = np.full(p ** (n * n), -1, dtype=np.int64)
        weights = p ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        flat = self.as_matrix_array.reshape(len(self), n * n)
        table[flat @ weights] = np.arange(len(self), dtype=np.int64)
        return table


def _verify_group_closure(carrier: Carrier) -> Carrier:
    # Closure of product and inverse over the listed elements; cheap insurance
    # for hand-assembled carriers, exact by construction for the built-ins.
    idx = carrier.index
    if carrier.identity not in idx:
        raise UnsupportedCarrierError(f"{carrier.label}: identity missing from elements")
    for a in carrier.elements:
        if carrier.inv(a) not in idx:
            raise UnsupportedCarrierError(f"{carrier.label}: inverse of {a!r} escapes the carrier")
        for b in carrier.elements:
            if carrier.mul(a, b) not in idx:
                raise UnsupportedCarrierError(f"{carrier.label}: product {a!r}*{b!r} escapes the carrier")
    return carrier


def cyclic_group(n: int) -> Carrier:
    """Z_n under addition; elements 0..n-1."""
    if n < 1:
        raise UnsupportedCarrierError(f"cyclic({n}) needs n >= 1")
    _guard_size(n, f"cyclic({n})")
    return Carrier(
        kind="cyclic-group",
        elements=tuple(range(n)),
        label=f"cyclic({n})",
        mul=lambda a, b: (a + b) % n,
        inv=lambda a: (-a) % n,
        identity=0,
    )


def symmetric_group(n: int) -> Carrier:
    """S_n in one-line notation, composition (p*q)(i) = p[q[i]]."""
    if not 1 <= n <= 5:
        raise UnsupportedCarrierError(f"symmetric({n}) supported for 1 <= n <= 5")
    elements = tuple(sorted(itertools.permutations(range(n))))

    def mul(a, b):
        return tuple(a[b[i]] for i in range(n))

    def inv(a):
        out = [0] * n
        for i, v in enumerate(a):
            out[v] = i
        return tuple(out)

    return Carrier(
        kind="symmetric-group",
        elements=elements,
        label=f"symmetric({n})",
        mul=mul,
        inv=inv,
        identity=tuple(range(n)),
    )


def enumerate_matrices(n: int, p: int, invertible_only: bool = False) -> Carrier:
    """All of M_n(F_p), or GL_n(F_p), in row-major lexicographic order.

    The enumeration space p^(n*n) must stay within the carrier guard.
    """
    if n < 1:
        raise UnsupportedCarrierError(f"matrix dimension {n} must be >= 1")
    fld = PrimeField(p)
    _guard_size(p ** (n * n), f"enumerating {n}x{n} matrices mod {p}")
    elements = []
    for flat in itertools.product(range(p), repeat=n * n):
        rows = tuple(flat[i * n:(i + 1) * n] for i in range(n))
        if invertible_only and mat_det(Matrix(fld, rows)) == 0:
            continue
        elements.append(rows)

    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
            for i in range(n)
        )

    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    if invertible_only:
        inv_cache: dict = {}

        def inv(a):
            got = inv_cache.get(a)
            if got is None:
                got = inv_cache[a] = mat_inv(Matrix(fld, a)).rows
            return got

        return Carrier(
            kind="matrix-group",
            elements=tuple(elements),
            label=f"gl({n},{p})",
            mul=mul,
            inv=inv,
            identity=ident,
            field=fld,
            dim=n,
        )
    # The full matrix set is a monoid under multiplication but not a group.
    return Carrier(
        kind="matrix-set",
        elements=tuple(elements),
        label=f"matrices({n},{p})",
        mul=mul,
        identity=ident,
        field=fld,
        dim=n,
    )


def gl_group(n: int, p: int) -> Carrier:
    return enumerate_matrices(n, p, invertible_only=True)


def matrix_set(n: int, p: int) -> Carrier:
    return enumerate_matrices(n, p, invertible_only=False)


def matrix_subgroup(rows_list, n: int, p: int, label: str | None = None) -> Carrier:
    """A matrix group carrier from explicit elements, verified to be a group.

    Elements are given as row tuples, deduplicated and sorted row-major.
    Raises NotClosedError at the first product outside the set.
    """
    fld = PrimeField(p)
    elements = tuple(sorted({Matrix.from_rows(r, fld).rows for r in rows_list}))
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    if ident not in elements:
        raise NoUnitError(f"matrix subgroup mod {p} must contain the identity")
    member = set(elements)
    inv_cache = {}
    for a in elements:
        inv_cache[a] = mat_inv(Matrix(fld, a)).rows
        if inv_cache[a] not in member:
            raise NotClosedError(a, a, inv_cache[a])

    def mul(a, b):
        out = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
            for i in range(n)
        )
        if out not in member:
            raise NotClosedError(a, b, out)
        return out

    for a in elements:
        for b in elements:
            mul(a, b)
    return Carrier(
        kind="matrix-group",
        elements=elements,
        label=label or f"matrix-subgroup({n},{p},{len(elements)})",
        mul=mul,
        inv=lambda a: inv_cache[a],
        identity=ident,
        field=fld,
        dim=n,
    )


def direct_product(a: Carrier, b: Carrier) -> Carrier:
    """Componentwise product of two monoid-or-group carriers, product order."""
    if not (a.is_monoid and b.is_monoid):
        raise UnsupportedCarrierError("direct product needs factors with product structure")
    _guard_size(len(a) * len(b), f"{a.label} x {b.label}")
    elements = tuple((x, y) for x in a.elements for y in b.elements)
    amul, bmul = a.mul, b.mul
    mul = lambda u, v: (amul(u[0], v[0]), bmul(u[1], v[1]))
    inv = None
    if a.is_group and b.is_group:
        ainv, binv = a.inv, b.inv
        inv = lambda u: (ainv(u[0]), binv(u[1]))
    return Carrier(
        kind="direct-product",
        elements=elements,
        label=f"{a.label} x {b.label}",
        mul=mul,
        inv=inv,
        identity=(a.identity, b.identity),
        factors=(a, b),
    )


def pair_carrier(vdim: int, p: int, group: Carrier) -> Carrier:
    """Pairs (v, A) with v in F_p^vdim and A from a matrix group acting on it.

    Ordered lexicographically, vector first. The matrix dimension and modulus
    must match the vector space, else the standard action is undefined.
    """
    if group.kind != "matrix-group":
        raise ActionMismatchError(f"pair carrier needs a matrix group, got {group.kind}")
    if group.dim != vdim:
        raise ActionMismatchError(
            f"vectors of length {vdim} cannot carry an action of {group.dim}x{group.dim} matrices"
        )
    if group.field.p != p:
        raise ActionMismatchError(f"vector modulus {p} differs from group modulus {group.field.p}")
    _guard_size(p**vdim * len(group), f"vectors({vdim},{p}) x {group.label}")
    vectors = tuple(itertools.product(range(p), repeat=vdim))
    elements = tuple((v, A) for v in vectors for A in group.elements)
    return Carrier(
        kind="vector-group-pairs",
        elements=elements,
        label=f"vectors({vdim},{p}) x {group.label}",
        field=PrimeField(p),
        dim=vdim,
        group=group,
    )


def integer_window(lo: int, hi: int) -> Carrier:
    """Exact integers lo..hi inclusive; no algebraic structure attached."""
    if lo > hi:
        raise UnsupportedCarrierError(f"window({lo},{hi}) is empty")
    _guard_size(hi - lo + 1, f"window({lo},{hi})")
    return Carrier(
        kind="integer-window",
        elements=tuple(range(lo, hi + 1)),
        label=f"window({lo},{hi})",
    )


_ATOM_RE = re.compile(r"^\s*([a-z_]+)\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*$")


def _split_cross(text: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_atom(text: str):
    m = _ATOM_RE.match(text)
    if not m:
        raise UnsupportedCarrierError(f"cannot parse carrier atom {text.strip()!r}")
    name = m.group(1)
    args = [int(v) for v in m.group(2).split(",")]
    return name, args


def build_carrier_atom(name: str, args: list) -> Carrier:
    """One named carrier family; 'vectors' is only valid inside a cross."""
    if name == "cyclic" and len(args) == 1:
        return cyclic_group(args[0])
    if name == "symmetric" and len(args) == 1:
        return symmetric_group(args[0])
    if name == "gl" and len(args) == 2:
        return gl_group(args[0], args[1])
    if name == "matrices" and len(args) == 2:
        return matrix_set(args[0], args[1])
    if name == "window" and len(args) == 2:
        return integer_window(args[0], args[1])
    if name == "vectors":
        raise UnsupportedCarrierError("vectors(n,p) only makes sense crossed with gl(n,p)")
    raise UnsupportedCarrierError(f"unknown carrier {name}({', '.join(map(str, args))})")


def group_carrier(spec: str) -> Carrier:
    """Build a carrier from a textual description.

    Accepts cyclic(n), symmetric(n), gl(n,p), matrices(n,p), window(lo,hi),
    crosses like cyclic(2) x symmetric(3), and vectors(n,p) x gl(n,p).
    """
    parts = [_parse_atom(part) for part in _split_cross(spec)]
    if parts[0][0] == "vectors":
        if len(parts) != 2 or parts[1][0] != "gl":
            raise UnsupportedCarrierError("vectors(n,p) must be crossed with exactly one gl(n,p)")
        (vdim, p), (gn, gp) = parts[0][1], parts[1][1]
        return pair_carrier(vdim, p, gl_group(gn, gp))
    carrier = build_carrier_atom(*parts[0])
    for name, args in parts[1:]:
        carrier = direct_product(carrier, build_carrier_atom(name, args))
    return carrier


def element_order(carrier: Carrier, element) -> int:
    if not carrier.is_group:
        raise UnsupportedCarrierError("element orders need a group carrier")
    k, acc = 1, element
    while acc != carrier.identity:
        acc = carrier.mul(acc, element)
        k += 1
    return k


def group_exponent(carrier: Carrier) -> int:
    """Least common multiple of the element orders."""
    exp = 1
    for e in carrier.elements:
        o = element_order(carrier, e)
        exp = exp * o // gcd(exp, o)
    return exp


def group_power(carrier: Carrier, element, k: int):
    """element^k in the carrier's group, with negative exponents via inverses."""
    if k < 0:
        return group_power(carrier, carrier.inv(element), -k)
    acc = carrier.identity
    base = element
    while k:
        if k & 1:
            acc = carrier.mul(acc, base)
        base = carrier.mul(base, base)
        k >>= 1
    return acc


@dataclass(frozen=True, eq=False)
class GroupAutomorphism:
    """A verified automorphism of a group carrier, stored as an index permutation."""

    carrier: Carrier
    images: tuple          # images[i] = index of the image of elements[i]
    label: str = "phi"

    def apply_index(self, i: int) -> int:
        return self.images[i]

    def apply(self, element):
        return self.carrier.elements[self.images[self.carrier.index_of(element)]]


def make_automorphism(group: Carrier, rule) -> GroupAutomorphism:
    """Build and exhaustively validate an automorphism.

    rule is one of: "identity", ("inner", g), ("power", k), or an explicit
    sequence of image indices. Validation checks bijectivity and the
    homomorphism law over all pairs.
    """
    if not group.is_group:
        raise UnsupportedCarrierError("automorphisms need a group carrier")
    n = len(group)
    if rule == "identity":
        images = tuple(range(n))
        label = "identity"
    elif isinstance(rule, tuple) and len(rule) == 2 and rule[0] == "inner":
        g = rule[1]
        if g not in group.index:
            raise UnsupportedCarrierError(f"inner({g!r}): element not in {group.label}")
        ginv = group.inv(g)
        images = tuple(
            group.index_of(group.mul(group.mul(g, e), ginv)) for e in group.elements
        )
        label = f"inner({group.index_of(g)})"
    elif isinstance(rule, tuple) and len(rule) == 2 and rule[0] == "power":
        k = rule[1] % group_exponent(group)
        images = tuple(group.index_of(group_power(group, e, k)) for e in group.elements)
        label = f"power({rule[1]})"
    else:
        images = tuple(int(i) for i in rule)
        if len(images) != n or any(not 0 <= i < n for i in images):
            raise NotBijectiveError(f"image list must be a permutation of 0..{n - 1}")
        label = "explicit"

    if len(set(images)) != n:
        raise NotBijectiveError(f"{label} is not a bijection on {group.label}")
    elems = group.elements
    idx = group.index
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if images[idx[group.mul(a, b)]] != idx[group.mul(elems[images[i]], elems[images[j]])]:
                raise NotHomomorphismError(
                    f"{label} breaks the homomorphism law at ({a!r}, {b!r})"
                )
    return GroupAutomorphism(carrier=group, images=images, label=label)
