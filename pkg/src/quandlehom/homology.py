"""Rack and quandle chain complexes and exact integral homology.

The rack complex in degree n has all n-tuples of quandle elements as its
basis; the quandle complex is the quotient by tuples with an adjacent
repeat, realized here by simply dropping degenerate tuples from bases and
differentials.  The differential removes one coordinate at a time, with
and without acting on the prefix:

    d(x_1, ..., x_n) = sum_{i=2..n} (-1)^i [ (x_1, ..no x_i.., x_n)
                        - (x_1*x_i, ..., x_{i-1}*x_i, x_{i+1}, ..., x_n) ]

so d(a, b) = (a) - (a*b) and
d(a, b, c) = (a, c) + (a*c, b*c) - (a, b) - (a*b, c).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import NotAQuasigroupError, NotOddOrderError, ResourceLimitError
from .groups import FinAbGroup
from .intlinalg import (
    SparseIntMatrix,
    _require_prime,
    _RrefGF,
    nullspace_mod_p,
    smith,
)
from .quandle import FiniteQuandle

DEFAULT_MAX_COLUMNS = 1_000_000

_THEORIES = ("rack", "quandle")


def _check_theory(theory: str):
    if theory not in _THEORIES:
        raise ValueError(f"theory must be one of {_THEORIES}, got {theory!r}")


def _is_degenerate(tup) -> bool:
    return any(tup[i] == tup[i + 1] for i in range(len(tup) - 1))


class Chain:
    """A sparse integer chain: mapping degree-n tuples to coefficients.

    In quandle theory, degenerate tuples are dropped at construction, so
    they never appear as keys.
    """

    __slots__ = ("degree", "theory", "terms")

    def __init__(self, degree: int, terms=None, theory: str = "quandle"):
        _check_theory(theory)
        self.degree = degree
        self.theory = theory
        acc: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for tup, coeff in items:
            tup = tuple(tup)
            if len(tup) != degree:
                raise ValueError(f"tuple {tup} is not degree {degree}")
            if coeff == 0:
                continue
            if theory == "quandle" and _is_degenerate(tup):
                continue
            new = acc.get(tup, 0) + coeff
            if new:
                acc[tup] = new
            else:
                acc.pop(tup, None)
        self.terms = acc

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def scale(self, k: int) -> "Chain":
        return Chain(self.degree, {t: k * c for t, c in self.terms.items()}, self.theory)

    def __add__(self, other: "Chain") -> "Chain":
        if (self.degree, self.theory) != (other.degree, other.theory):
            raise ValueError("chain degree/theory mismatch")
        out = dict(self.terms)
        for t, c in other.terms.items():
            new = out.get(t, 0) + c
            if new:
                out[t] = new
            else:
                out.pop(t, None)
        return Chain(self.degree, out, self.theory)

    def __neg__(self) -> "Chain":
        return self.scale(-1)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.degree == other.degree
            and self.theory == other.theory
            and self.terms == other.terms
        )

    def __repr__(self):
        body = " + ".join(f"{c}*{t}" for t, c in sorted(self.terms.items()))
        return f"Chain(deg={self.degree}, {body or '0'})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {"tuple": list(t), "coeff": c} for t, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, theory: str = "quandle") -> "Chain":
        return cls(
            obj["degree"],
            [(tuple(t["tuple"]), t["coeff"]) for t in obj["terms"]],
            theory=theory,
        )


# ---------------------------------------------------------------------------
# bases
# ---------------------------------------------------------------------------


def basis_size(n: int, degree: int, theory: str) -> int:
    _check_theory(theory)
    if degree == 0:
        return 1
    if theory == "rack":
        return n**degree
    return n * (n - 1) ** (degree - 1)


def _tuples_array(n: int, degree: int, theory: str) -> np.ndarray:
    """All basis tuples of the given degree, lexicographic, as an array."""
    size = basis_size(n, degree, theory)
    out = np.empty((size, degree), dtype=np.int64)
    idx = np.arange(size, dtype=np.int64)
    if theory == "rack":
        for j in range(degree - 1, -1, -1):
            out[:, j] = idx % n
            idx //= n
        return out
    digits = np.empty((size, degree), dtype=np.int64)
    for j in range(degree - 1, 0, -1):
        digits[:, j] = idx % (n - 1)
        idx //= n - 1
    digits[:, 0] = idx
    out[:, 0] = digits[:, 0]
    for j in range(1, degree):
        out[:, j] = digits[:, j] + (digits[:, j] >= out[:, j - 1])
    return out


def _encode(tuples: np.ndarray, n: int, theory: str) -> np.ndarray:
    """Lexicographic rank of each tuple within its basis."""
    size, degree = tuples.shape
    code = np.zeros(size, dtype=np.int64)
    if degree == 0:
        return code
    if theory == "rack":
        for j in range(degree):
            code = code * n + tuples[:, j]
        return code
    code = tuples[:, 0].copy()
    for j in range(1, degree):
        code = code * (n - 1) + (tuples[:, j] - (tuples[:, j] > tuples[:, j - 1]))
    return code


def chain_basis(q: FiniteQuandle, degree: int, theory: str = "quandle"):
    """Ordered list of basis tuples for C_degree."""
    _check_theory(theory)
    if degree == 0:
        return [()]
    arr = _tuples_array(q.n, degree, theory)
    return [tuple(int(x) for x in row) for row in arr]


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------


def boundary(q: FiniteQuandle, n: int, tup, theory: str = "quandle") -> Chain:
    """Differential of a single degree-n tuple, as a degree n-1 chain."""
    _check_theory(theory)
    tup = tuple(tup)
    if len(tup) != n:
        raise ValueError(f"tuple {tup} is not degree {n}")
    if any(not 0 <= x < q.n for x in tup):
        raise ValueError(f"tuple {tup} has entries outside 0..{q.n - 1}")
    if theory == "quandle" and _is_degenerate(tup):
        raise ValueError(f"degenerate tuple {tup} is not a quandle-theory basis element")
    if n <= 1:
        return Chain(max(n - 1, 0), {}, theory)
    table = q.table
    terms: list[tuple[tuple[int, ...], int]] = []
    for i in range(2, n + 1):
        j = i - 1
        s = 1 if i % 2 == 0 else -1
        deleted = tup[:j] + tup[j + 1 :]
        acted = tuple(table[tup[l]][tup[j]] for l in range(j)) + tup[j + 1 :]
        terms.append((deleted, s))
        terms.append((acted, -s))
    return Chain(n - 1, terms, theory)


def boundary_of_chain(q: FiniteQuandle, chain: Chain) -> Chain:
    out = Chain(max(chain.degree - 1, 0), {}, chain.theory)
    for tup, coeff in chain.terms.items():
        out = out + boundary(q, chain.degree, tup, chain.theory).scale(coeff)
    return out


def boundary_matrix(
    q: FiniteQuandle,
    n: int,
    theory: str = "quandle",
    max_columns: int = DEFAULT_MAX_COLUMNS,
) -> SparseIntMatrix:
    """The degree-n differential as a (basis n-1) x (basis n) sparse matrix."""
    _check_theory(theory)
    if n < 1:
        raise ValueError(f"degree {n} < 1")
    rows = basis_size(q.n, n - 1, theory)
    cols = basis_size(q.n, n, theory)
    if max(rows, cols) > max_columns:
        raise ResourceLimitError(
            f"boundary matrix {rows}x{cols} exceeds column budget {max_columns}"
        )
    if n == 1:
        return SparseIntMatrix(rows, cols)
    tuples = _tuples_array(q.n, n, theory)
    table = np.asarray(q.table, dtype=np.int64)
    col_ids = np.arange(cols, dtype=np.int64)
    out_r, out_c, out_v = [], [], []
    for i in range(2, n + 1):
        j = i - 1
        s = 1 if i % 2 == 0 else -1
        keep = [k for k in range(n) if k != j]
        deleted = tuples[:, keep]
        acted = deleted.copy()
        acted[:, :j] = table[tuples[:, :j], tuples[:, j : j + 1]]
        for target, coeff in ((deleted, s), (acted, -s)):
            if theory == "quandle" and n >= 3:
                ok = np.ones(cols, dtype=bool)
                for k in range(n - 2):
                    ok &= target[:, k] != target[:, k + 1]
                out_r.append(_encode(target[ok], q.n, theory))
                out_c.append(col_ids[ok])
                out_v.append(np.full(int(ok.sum()), coeff, dtype=np.int64))
            else:
                out_r.append(_encode(target, q.n, theory))
                out_c.append(col_ids)
                out_v.append(np.full(cols, coeff, dtype=np.int64))
    return SparseIntMatrix.from_coo(
        rows,
        cols,
        np.concatenate(out_r),
        np.concatenate(out_c),
        np.concatenate(out_v),
        combine=True,
    )


# ---------------------------------------------------------------------------
# homology groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    """Free rank plus torsion invariant factors (each > 1, divisibility order)."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        prev = None
        for d in self.torsion:
            if d < 2 or (prev is not None and d % prev):
                raise ValueError(f"bad torsion chain {self.torsion}")
            prev = d

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def homology(
    q: FiniteQuandle,
    n: int,
    theory: str = "quandle",
    max_columns: int = DEFAULT_MAX_COLUMNS,
    max_seconds=None,
) -> HomologyGroup:
    """H_n of the rack or quandle complex, computed from two differentials.

    Because im d_{n+1} lies inside ker d_n, the torsion of H_n is read off
    the invariant factors of d_{n+1} directly and the free rank is
    dim C_n - rank d_n - rank d_{n+1}.
    """
    m_low = boundary_matrix(q, n, theory, max_columns=max_columns)
    m_high = boundary_matrix(q, n + 1, theory, max_columns=max_columns)
    s_low = smith(m_low, max_seconds=max_seconds)
    s_high = smith(m_high, max_seconds=max_seconds)
    free = m_low.cols - s_low.rank - s_high.rank
    return HomologyGroup(free_rank=free, torsion=s_high.torsion)


def h2_presentation_quasigroup(
    q: FiniteQuandle, basepoint: int = 0, max_seconds=None
) -> HomologyGroup:
    """H_2 of a quasigroup quandle from its bracket presentation.

    Generators are all pairs [x, z]; the relations are [x, x] for every x,
    [a0, x] for every x, and, for every triple (x, y, z),
    [x, z] + [z, y] - [x, z'] - [z', y]  with  z' = y leftdiv (x circ z).
    """
    if not q.is_quasigroup():
        raise NotAQuasigroupError("bracket presentation needs a quasigroup quandle")
    if not 0 <= basepoint < q.n:
        raise ValueError(f"basepoint {basepoint} out of range")
    n = q.n
    rows_l: list[int] = []
    cols_l: list[int] = []
    vals_l: list[int] = []
    col = 0
    for x in range(n):
        rows_l.append(x * n + x)
        cols_l.append(col)
        vals_l.append(1)
        col += 1
    for x in range(n):
        rows_l.append(basepoint * n + x)
        cols_l.append(col)
        vals_l.append(1)
        col += 1
    circ_rows = [[q.circ(x, z) for z in range(n)] for x in range(n)]
    ldiv = q._colinv  # ldiv[b][c] = c leftdiv b
    for x in range(n):
        circ_x = circ_rows[x]
        for z in range(n):
            w = circ_x[z]
            ldw = ldiv[w]
            for y in range(n):
                zp = ldw[y]
                rows_l += [x * n + z, z * n + y, x * n + zp, zp * n + y]
                cols_l += [col, col, col, col]
                vals_l += [1, 1, -1, -1]
                col += 1
    m = SparseIntMatrix.from_coo(n * n, col, rows_l, cols_l, vals_l, combine=True)
    s = smith(m, max_seconds=max_seconds)
    return HomologyGroup(free_rank=n * n - s.rank, torsion=s.torsion)


# ---------------------------------------------------------------------------
# the bridge to the exterior square
# ---------------------------------------------------------------------------


def class_in_ext_square(g: FinAbGroup, chain: Chain):
    """Class of a degree-2 chain over the Takasaki quandle of g in g wedge g.

    Sends the basis chain (a, b) to wedge(a, 2b - a) and extends linearly;
    on cycles this realizes the isomorphism H_2 -> g wedge g.
    """
    if not g.is_odd():
        raise NotOddOrderError(f"need odd moduli, got {g.moduli}")
    if chain.degree != 2:
        raise ValueError(f"need a degree-2 chain, got degree {chain.degree}")
    sq = g.exterior_square()
    acc = sq.zero()
    for (ia, ib), coeff in chain.terms.items():
        a = g.element(ia)
        b = g.element(ib)
        acc = sq.add(acc, sq.scale(g.wedge(a, g.sub(g.double(b), a)), coeff))
    return acc


def wedge_to_cycle(g: FinAbGroup, x, y) -> Chain:
    """A 2-cycle over the Takasaki quandle of g whose class is x wedge y.

    The cycle is (x, (x+y)/2) - (0, y/2) + (0, x/2); its boundary vanishes
    and class_in_ext_square maps it back to wedge(x, y).
    """
    if not g.is_odd():
        raise NotOddOrderError(f"need odd moduli, got {g.moduli}")
    x, y = g.check(x), g.check(y)
    zero = g.zero()
    terms = [
        ((g.index(x), g.index(g.halve(g.add(x, y)))), 1),
        ((g.index(zero), g.index(g.halve(y))), -1),
        ((g.index(zero), g.index(g.halve(x))), 1),
    ]
    return Chain(2, terms, theory="quandle")


# ---------------------------------------------------------------------------
# mod-p cohomology in degree 2
# ---------------------------------------------------------------------------


def cohomology2_dim(
    q: FiniteQuandle, p: int, max_columns: int = DEFAULT_MAX_COLUMNS
):
    """Dimension of H^2 with Z_p coefficients, plus representative cocycles.

    Cocycles are functions on non-degenerate pairs (zero on degenerate
    ones) annihilating the degree-3 differential; coboundaries come from
    1-cochains.  Returns (dimension, list of n x n value tables).
    """
    _require_prime(p)
    m3 = boundary_matrix(q, 3, "quandle", max_columns=max_columns)
    m2 = boundary_matrix(q, 2, "quandle", max_columns=max_columns)
    kernel = nullspace_mod_p(m3.transpose(), p)
    npairs = m2.cols
    acc = _RrefGF(npairs, p)
    cob = np.zeros((q.n, npairs), dtype=np.float64)
    for r, c, v in m2.entries():  # m2[r, c]: delta of the indicator of r, at pair c
        cob[r, c] = v % p
    for row in cob:
        acc.insert(row)
    reps = []
    for vec in kernel:
        if acc.insert(np.asarray(vec, dtype=np.float64)):
            reps.append(vec)
    pairs = chain_basis(q, 2, "quandle")
    tables = []
    for vec in reps:
        t = [[0] * q.n for _ in range(q.n)]
        for (a, b), value in zip(pairs, vec):
            t[a][b] = int(value) % p
        tables.append(t)
    return len(reps), tables
