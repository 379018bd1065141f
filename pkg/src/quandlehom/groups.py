"""Finite abelian groups, generic finite groups, and exterior squares.

Abelian groups are direct sums of cyclic groups given by a moduli list;
their elements are reduced coordinate tuples, enumerated lexicographically.
Generic finite groups are validated multiplication tables.  All values are
immutable and safe to share across threads.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    ElementMismatchError,
    InvalidModulusError,
    NotAGroupError,
    NotOddOrderError,
    SpecParseError,
)

# Exhaustive table validation is O(n^3); keep orders small enough for it.
MAX_GROUP_ORDER = 4096

Elem = tuple[int, ...]


@dataclass(frozen=True)
class ExtSquare:
    """Exterior square of a finite abelian group.

    ``components`` lists ``((i, j), d)`` for i < j with
    d = gcd(moduli[i], moduli[j]) > 1; an element is one residue per
    component, as a plain tuple.
    """

    components: tuple[tuple[tuple[int, int], int], ...]

    @property
    def order(self) -> int:
        return prod(d for _, d in self.components)

    def invariant_factors(self) -> tuple[int, ...]:
        """Component moduli merged into a canonical divisibility chain."""
        from .intlinalg import invariant_factor_form

        return tuple(d for d in invariant_factor_form([d for _, d in self.components]) if d > 1)

    def zero(self) -> Elem:
        return (0,) * len(self.components)

    def add(self, u: Elem, v: Elem) -> Elem:
        return tuple((a + b) % d for a, b, (_, d) in zip(u, v, self.components))

    def neg(self, u: Elem) -> Elem:
        return tuple((-a) % d for a, (_, d) in zip(u, self.components))

    def scale(self, u: Elem, k: int) -> Elem:
        return tuple((k * a) % d for a, (_, d) in zip(u, self.components))

    def elements(self) -> Iterator[Elem]:
        if not self.components:
            yield ()
            return
        radices = [d for _, d in self.components]
        for idx in range(self.order):
            out = []
            for d in reversed(radices):
                out.append(idx % d)
                idx //= d
            yield tuple(reversed(out))


@dataclass(frozen=True)
class FinAbGroup:
    """Direct sum of cyclic groups Z_m for the given moduli, in order.

    The moduli list is kept exactly as given (no invariant-factor
    canonicalization), so coordinates mean what the caller wrote down.
    """

    moduli: tuple[int, ...]

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def is_odd(self) -> bool:
        return all(m % 2 == 1 for m in self.moduli)

    # -- enumeration (lexicographic on coordinate tuples) ------------------

    def element(self, index: int) -> Elem:
        if not 0 <= index < self.order:
            raise ElementMismatchError(f"index {index} out of range for order {self.order}")
        out = []
        for m in reversed(self.moduli):
            out.append(index % m)
            index //= m
        return tuple(reversed(out))

    def index(self, a: Elem) -> int:
        a = self.check(a)
        idx = 0
        for c, m in zip(a, self.moduli):
            idx = idx * m + c
        return idx

    def elements(self) -> Iterator[Elem]:
        for i in range(self.order):
            yield self.element(i)

    def check(self, a: Sequence[int]) -> Elem:
        """Validate arity and return the reduced representative."""
        if len(a) != len(self.moduli):
            raise ElementMismatchError(
                f"element {tuple(a)} has {len(a)} coordinates, group needs {len(self.moduli)}"
            )
        return tuple(c % m for c, m in zip(a, self.moduli))

    # -- arithmetic ---------------------------------------------------------

    def zero(self) -> Elem:
        return (0,) * len(self.moduli)

    def add(self, a: Elem, b: Elem) -> Elem:
        a, b = self.check(a), self.check(b)
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Elem) -> Elem:
        a = self.check(a)
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.neg(b))

    def double(self, a: Elem) -> Elem:
        return self.add(a, a)

    def halve(self, a: Elem) -> Elem:
        """The unique b with b + b = a; needs every modulus odd."""
        if not self.is_odd():
            raise NotOddOrderError(f"halving needs odd moduli, got {self.moduli}")
        a = self.check(a)
        # (m+1)//2 is the inverse of 2 mod odd m
        return tuple((x * ((m + 1) // 2)) % m for x, m in zip(a, self.moduli))

    # -- exterior square ----------------------------------------------------

    def exterior_square(self) -> ExtSquare:
        return _exterior_square_of(self.moduli)

    def wedge(self, x: Elem, y: Elem) -> Elem:
        """Image of x ⊗ y in the exterior square, one residue per component."""
        x, y = self.check(x), self.check(y)
        sq = _exterior_square_of(self.moduli)
        return tuple((x[i] * y[j] - x[j] * y[i]) % d for (i, j), d in sq.components)

    # -- conversions ---------------------------------------------------------

    def to_finite_group(self) -> "FiniteGroup":
        """The same group as a validated multiplication table."""
        n = self.order
        elems = np.array([self.element(i) for i in range(n)], dtype=np.int64)
        radix = np.ones(len(self.moduli), dtype=np.int64)
        for k in range(len(self.moduli) - 2, -1, -1):
            radix[k] = radix[k + 1] * self.moduli[k + 1]
        mods = np.array(self.moduli, dtype=np.int64)
        sums = (elems[:, None, :] + elems[None, :, :]) % mods
        table = (sums * radix).sum(axis=2)
        return from_mult_table(table.tolist())

    def to_json(self) -> dict:
        return {"type": "abelian", "moduli": list(self.moduli)}


@lru_cache(maxsize=None)
def _exterior_square_of(moduli: tuple[int, ...]) -> ExtSquare:
    comps = []
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            d = gcd(moduli[i], moduli[j])
            if d > 1:
                comps.append(((i, j), d))
    return ExtSquare(tuple(comps))


def make_group(moduli: Sequence[int], max_order: int = MAX_GROUP_ORDER) -> FinAbGroup:
    """Build the abelian group ⊕ Z_m for the given moduli, kept in order."""
    moduli = tuple(int(m) for m in moduli)
    for m in moduli:
        if m < 2:
            raise InvalidModulusError(f"modulus {m} < 2")
    if prod(moduli) > max_order:
        raise InvalidModulusError(f"group order {prod(moduli)} exceeds cap {max_order}")
    return FinAbGroup(moduli)


# ---------------------------------------------------------------------------
# generic finite groups as multiplication tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a validated Cayley table on indices 0..n-1."""

    n: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    labels: tuple[str, ...] | None = None

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.mult[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[a][b] == m[b][a] for a in range(self.n) for b in range(self.n))

    def to_json(self) -> dict:
        out = {"type": "table", "n": self.n, "mult": [list(r) for r in self.mult]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


def from_mult_table(table, labels=None, max_order: int = MAX_GROUP_ORDER) -> FiniteGroup:
    """Validate a square multiplication table and wrap it as a group.

    Checks that rows and columns are permutations, that a two-sided
    identity and two-sided inverses exist, and associativity exhaustively;
    failures raise NotAGroupError with a witness.
    """
    m = np.asarray(table, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotAGroupError(f"table is not square: shape {m.shape}")
    n = m.shape[0]
    if n == 0:
        raise NotAGroupError("empty table")
    if n > max_order:
        raise NotAGroupError(f"order {n} exceeds cap {max_order}")
    if m.min() < 0 or m.max() >= n:
        bad = np.argwhere((m < 0) | (m >= n))[0]
        raise NotAGroupError(f"entry out of range at {tuple(bad)}", witness=tuple(int(x) for x in bad))
    rng = np.arange(n)
    if not (np.sort(m, axis=1) == rng).all():
        r = int(np.argwhere(~(np.sort(m, axis=1) == rng).all(axis=1))[0][0])
        raise NotAGroupError(f"row {r} is not a permutation", witness=(r,))
    if not (np.sort(m, axis=0) == rng[:, None]).all():
        c = int(np.argwhere(~(np.sort(m, axis=0) == rng[:, None]).all(axis=0))[0][0])
        raise NotAGroupError(f"column {c} is not a permutation", witness=(c,))
    ident = None
    for e in range(n):
        if (m[e] == rng).all() and (m[:, e] == rng).all():
            ident = e
            break
    if ident is None:
        raise NotAGroupError("no two-sided identity")
    # rows are permutations, so b with ab = e exists; check it is two-sided
    inv = np.empty(n, dtype=np.int64)
    for a in range(n):
        b = int(np.argwhere(m[a] == ident)[0][0])
        if m[b][a] != ident:
            raise NotAGroupError(f"inverse of {a} is one-sided", witness=(a, b))
        inv[a] = b
    for a in range(n):
        left = m[m[a], :]          # (b, c) -> (a*b)*c
        right = m[a][m]            # (b, c) -> a*(b*c)
        if not (left == right).all():
            b, c = (int(x) for x in np.argwhere(left != right)[0])
            raise NotAGroupError(
                f"associativity fails at ({a}, {b}, {c})", witness=(a, b, c)
            )
    labels = tuple(labels) if labels is not None else None
    if labels is not None and len(labels) != n:
        raise NotAGroupError(f"{len(labels)} labels for {n} elements")
    return FiniteGroup(
        n=n,
        mult=tuple(tuple(int(x) for x in row) for row in m),
        inv=tuple(int(x) for x in inv),
        identity=ident,
        labels=labels,
    )


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidModulusError(f"cyclic group order {n} < 1")
    return from_mult_table([[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Direct product with pairs (x, y) enumerated as x * |B| + y."""
    na, nb = a.n, b.n
    table = [
        [a.mult[x1][x2] * nb + b.mult[y1][y2] for x2 in range(na) for y2 in range(nb)]
        for x1 in range(na)
        for y1 in range(nb)
    ]
    return from_mult_table(table)


def heisenberg3() -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z_3 (order 27, exponent 3).

    Matrix [[1,a,c],[0,1,b],[0,0,1]] is encoded as (a, b, c) with index
    9a + 3b + c; the product picks up the cross term a * b'.
    """
    def mul(u, v):
        a, b, c = u
        d, e, f = v
        return ((a + d) % 3, (b + e) % 3, (c + f + a * e) % 3)

    elems = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    idx = {t: i for i, t in enumerate(elems)}
    table = [[idx[mul(u, v)] for v in elems] for u in elems]
    labels = tuple(f"({a},{b},{c})" for a, b, c in elems)
    return from_mult_table(table, labels=labels)


def g4_27() -> FiniteGroup:
    """The nonabelian group of order 27 with an order-9 element.

    Elements are (i, j) in Z_9 x Z_3 with
    (i, j) * (k, l) = (i + k * 4^j mod 9, j + l mod 3), i.e. the semidirect
    product where conjugation by the Z_3 factor cubes-and-a-bit the Z_9
    generator s = (1, 0).  Indexed as 3i + j.
    """
    def mul(u, v):
        i, j = u
        k, l = v
        return ((i + k * pow(4, j, 9)) % 9, (j + l) % 3)

    elems = [(i, j) for i in range(9) for j in range(3)]
    idx = {t: i for i, t in enumerate(elems)}
    table = [[idx[mul(u, v)] for v in elems] for u in elems]
    labels = tuple(f"s^{i}t^{j}" for i, j in elems)
    return from_mult_table(table, labels=labels)


# ---------------------------------------------------------------------------
# JSON and spec-string front ends
# ---------------------------------------------------------------------------

_NAMED_GROUPS = ("heisenberg3", "g4_27")
_GROUP_SPEC_FORMS = ("abelian:3,9", "cyclic:27", "heisenberg3", "g4_27")


def group_from_json(obj: dict):
    kind = obj.get("type")
    if kind == "abelian":
        return make_group(obj["moduli"])
    if kind == "table":
        table = obj["mult"]
        if "n" in obj and obj["n"] != len(table):
            raise SpecParseError(f"declared n={obj['n']} but table has {len(table)} rows")
        return from_mult_table(table, labels=obj.get("labels"))
    raise SpecParseError(f"unknown group json type {kind!r}")


def _parse_moduli(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise SpecParseError(f"bad moduli list {text!r}") from None


def parse_group_spec(text: str):
    """Parse a named group spec: abelian:3,9  cyclic:27  heisenberg3  g4_27."""
    text = text.strip()
    if text == "heisenberg3":
        return heisenberg3()
    if text == "g4_27":
        return g4_27()
    if ":" in text:
        head, _, rest = text.partition(":")
        if head == "abelian":
            return make_group(_parse_moduli(rest))
        if head == "cyclic":
            return cyclic(int(rest))
    guesses = difflib.get_close_matches(text, _GROUP_SPEC_FORMS, n=2)
    hint = f"; did you mean {' or '.join(guesses)!s}?" if guesses else ""
    raise SpecParseError(f"unknown group spec {text!r}{hint}")
