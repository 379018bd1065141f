"""Exact sparse integer linear algebra.

Provides Smith normal form (rank + invariant factors, no transformation
matrices), ranks and nullspaces over prime fields, and a sparse product.
Sized for boundary matrices with a few thousand rows and up to ~500k
columns; all integer arithmetic is arbitrary precision.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import InvalidModulusError, ResourceLimitError

_INT64_SAFE = 2**62


def _to_value_array(vals):
    """int64 array when everything fits, else an object array of exact ints."""
    try:
        arr = np.asarray(list(vals), dtype=np.int64)
        return arr
    except OverflowError:
        return np.asarray([int(v) for v in vals], dtype=object)


class SparseIntMatrix:
    """Immutable sparse integer matrix in column-major coordinate form.

    Entries are kept sorted by (col, row); no zeros are stored and each
    (row, col) slot appears at most once.
    """

    __slots__ = ("rows", "cols", "_row", "_col", "_val")

    def __init__(self, rows: int, cols: int, entries=()):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        rr, cc, vv = [], [], []
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if v == 0:
                continue
            rr.append(r)
            cc.append(c)
            vv.append(v)
        row = np.asarray(rr, dtype=np.int64)
        col = np.asarray(cc, dtype=np.int64)
        val = _to_value_array(vv)
        order = np.lexsort((row, col))
        row, col, val = row[order], col[order], val[order]
        if len(row) > 1:
            dup = (np.diff(col) == 0) & (np.diff(row) == 0)
            if dup.any():
                k = int(np.argwhere(dup)[0][0])
                raise ValueError(f"duplicate entry at ({row[k]}, {col[k]})")
        self._row, self._col, self._val = row, col, val

    @classmethod
    def from_coo(cls, rows, cols, row_idx, col_idx, vals, *, combine=False):
        """Build from parallel arrays; combine=True sums duplicate slots."""
        row = np.asarray(row_idx, dtype=np.int64)
        col = np.asarray(col_idx, dtype=np.int64)
        val = np.asarray(vals, dtype=np.int64)
        if row.size and (row.min() < 0 or row.max() >= rows or col.min() < 0 or col.max() >= cols):
            raise ValueError("index outside matrix")
        order = np.lexsort((row, col))
        row, col, val = row[order], col[order], val[order]
        if combine and row.size:
            key_change = np.empty(row.size, dtype=bool)
            key_change[0] = True
            key_change[1:] = (np.diff(col) != 0) | (np.diff(row) != 0)
            starts = np.flatnonzero(key_change)
            val = np.add.reduceat(val, starts)
            row, col = row[starts], col[starts]
        keep = val != 0
        row, col, val = row[keep], col[keep], val[keep]
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._row, m._col, m._val = row, col, val
        if not combine and row.size > 1:
            dup = (np.diff(col) == 0) & (np.diff(row) == 0)
            if dup.any():
                raise ValueError("duplicate entries; pass combine=True to sum them")
        return m

    @classmethod
    def from_dense(cls, dense):
        dense = [list(r) for r in dense]
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = [
            (r, c, dense[r][c]) for r in range(rows) for c in range(cols) if dense[r][c]
        ]
        return cls(rows, cols, entries)

    @property
    def nnz(self) -> int:
        return len(self._row)

    def entries(self):
        """Iterate (row, col, value) with plain Python ints."""
        for r, c, v in zip(self._row.tolist(), self._col.tolist(), self._val.tolist()):
            yield r, c, int(v)

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix.from_coo(
            self.cols, self.rows, self._col, self._row, self._val
        )

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def max_abs(self) -> int:
        if not len(self._val):
            return 0
        if self._val.dtype == object:
            return max(abs(int(v)) for v in self._val)
        return int(np.abs(self._val).max())

    def dump(self) -> str:
        """Coordinate text: one '<row> <col> <value>' line per entry, 0-based."""
        return "\n".join(f"{r} {c} {v}" for r, c, v in self.entries())

    def __eq__(self, other):
        return (
            isinstance(other, SparseIntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self._row, other._row)
            and np.array_equal(self._col, other._col)
            and all(int(a) == int(b) for a, b in zip(self._val, other._val))
        )

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class SmithResult:
    """Rank plus the invariant factors d_1 | d_2 | ... | d_rank (all >= 1)."""

    rank: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        if len(self.invariant_factors) != self.rank:
            raise ValueError("factor count must equal rank")
        prev = None
        for d in self.invariant_factors:
            if d < 1 or (prev is not None and d % prev):
                raise ValueError(f"not a divisibility chain: {self.invariant_factors}")
            prev = d

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def invariant_factor_form(values):
    """Canonical divisibility chain of a diagonal: gcd/lcm merging.

    diag(a, b) and diag(gcd(a,b), lcm(a,b)) present the same group, so
    repeated merging turns any multiset of nonzero diagonal entries into
    the invariant factors of the module it presents.
    """
    ones = sum(1 for d in values if abs(d) == 1)
    rest = sorted(abs(d) for d in values if abs(d) > 1)
    if any(d == 0 for d in values):
        raise ValueError("diagonal entries must be nonzero")
    changed = True
    while changed:
        changed = False
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                a, b = rest[i], rest[j]
                if b % a:
                    g = gcd(a, b)
                    rest[i], rest[j] = g, a // g * b
                    changed = True
        rest.sort()
    return tuple([1] * ones + rest)


def _merge_invariant_factors(diag):
    return list(invariant_factor_form(diag))


def _xgcd(a: int, b: int):
    """(x, y, g) with x*a + y*b = g = gcd(a, b) > 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _lattice_generators(M: SparseIntMatrix, deadline, max_pivot_bits):
    """Column-echelon generating set for the column lattice of M.

    Columns are streamed through a basis keyed by leading row; redundant
    columns reduce to zero and are dropped, so fill-in never spreads
    across the wide dimension.  All moves are unimodular column
    operations, hence the lattice (and so the invariant factors) is
    preserved exactly.
    """
    import heapq as _hq

    basis: dict[int, dict[int, int]] = {}
    row_idx = M._row.tolist()
    val = [int(v) for v in M._val.tolist()]
    # entries are stored column-major, so consecutive runs share a column
    col_idx = M._col
    starts = np.flatnonzero(np.diff(col_idx, prepend=-1)).tolist() + [len(val)]
    for k in range(len(starts) - 1):
        if deadline is not None and k % 4096 == 0 and time.monotonic() > deadline:
            raise ResourceLimitError("smith exceeded its time budget")
        lo, hi = starts[k], starts[k + 1]
        v = dict(zip(row_idx[lo:hi], val[lo:hi]))
        hv = list(v)
        _hq.heapify(hv)
        while v:
            while hv and hv[0] not in v:
                _hq.heappop(hv)
            if not hv:
                break
            lead = hv[0]
            b = basis.get(lead)
            if b is None:
                if v[lead] < 0:
                    v = {r: -x for r, x in v.items()}
                basis[lead] = v
                break
            bl = b[lead]
            vl = v[lead]
            q, rem = divmod(vl, bl)
            if rem == 0:
                for r, x in b.items():
                    old = v.get(r)
                    if old is None:
                        v[r] = -q * x
                        _hq.heappush(hv, r)
                    else:
                        nv = old - q * x
                        if nv:
                            v[r] = nv
                        else:
                            del v[r]
            else:
                x, y, g = _xgcd(bl, vl)
                bg = bl // g
                vg = vl // g
                new_b: dict[int, int] = {}
                new_v: dict[int, int] = {}
                for r, w in b.items():
                    new_b[r] = x * w
                    new_v[r] = -vg * w
                for r, w in v.items():
                    new_b[r] = new_b.get(r, 0) + y * w
                    nv = new_v.get(r, 0) + bg * w
                    if nv:
                        new_v[r] = nv
                    else:
                        new_v.pop(r, None)
                basis[lead] = {r: w for r, w in new_b.items() if w}
                v = new_v  # its lead entry cancelled exactly
                hv = list(v)
                _hq.heapify(hv)
                if max_pivot_bits is not None and g.bit_length() > max_pivot_bits:
                    raise ResourceLimitError("lattice basis entries exceed bit budget")
    return basis


# columns-to-rows ratio beyond which smith() first shrinks the wide side
_LATTICE_RATIO = 4


def _lattice_generators_fast(M: SparseIntMatrix):
    """JIT-compiled lattice reduction; None when unavailable or bailed out."""
    if M._val.dtype == object or (M.nnz and M.max_abs() >= 1 << 40):
        return None
    try:
        from ._fastlattice import lattice_generators_int64
    except ImportError:  # pragma: no cover - numba should be present
        return None
    col_starts = np.searchsorted(M._col, np.arange(M.cols + 1)).astype(np.int64)
    return lattice_generators_int64(
        M.rows, col_starts, M._row.astype(np.int64), M._val.astype(np.int64)
    )


def smith(M: SparseIntMatrix, *, max_seconds=None, max_pivot_bits=None) -> SmithResult:
    """Invariant factors of an integer matrix by sparse elimination.

    Very wide (or tall) matrices are first compressed to a column-echelon
    generating set of their column lattice, which leaves the invariant
    factors unchanged.  Elimination pivots are then chosen as the nonzero
    entry of minimum absolute value, with approximate minimum fill-in
    (Markowitz cost, scanned over the sparsest candidate columns) as
    tiebreak and (value, col, row) as the final deterministic order.  A
    pivot whose row or column it does not divide is reduced by
    nearest-quotient updates, so pivot magnitudes shrink geometrically;
    the diagonal is merged into a divisibility chain at the end.  Optional
    time and entry-size budgets raise ResourceLimitError.
    """
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    # work with the shorter dimension as the dict-of-rows side
    if M.rows > M.cols:
        M = M.transpose()
    if M.cols > _LATTICE_RATIO * max(M.rows, 1):
        basis = _lattice_generators_fast(M)
        if basis is None:
            basis = _lattice_generators(M, deadline, max_pivot_bits)
        rows: dict[int, dict[int, int]] = {}
        cols: dict[int, set[int]] = {}
        nnz = 0
        for c, vec in enumerate(basis.values()):
            cols[c] = set(vec)
            for r, v in vec.items():
                rd = rows.get(r)
                if rd is None:
                    rd = rows[r] = {}
                rd[c] = v
            nnz += len(vec)
    else:
        rows = {}
        cols = {}
        r_list = M._row.tolist()
        c_list = M._col.tolist()
        v_list = [int(v) for v in M._val.tolist()]
        for r, c, v in zip(r_list, c_list, v_list):
            rd = rows.get(r)
            if rd is None:
                rd = rows[r] = {}
            rd[c] = v
            cs = cols.get(c)
            if cs is None:
                cs = cols[c] = set()
            cs.add(r)
        nnz = len(v_list)
        del r_list, c_list, v_list

    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    heappush, heappop = heapq.heappush, heapq.heappop

    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    diag: list[int] = []
    CAND = 12
    tick = 0

    while nnz:
        tick += 1
        if deadline is not None and tick % 64 == 1 and time.monotonic() > deadline:
            raise ResourceLimitError(f"smith exceeded {max_seconds}s time budget")

        # ---- pivot selection: sparsest columns first, best entry among them
        cand = []
        while heap and len(cand) < CAND:
            k, c = heap[0]
            s = cols.get(c)
            if s is None or not s:
                heappop(heap)
                continue
            kc = len(s)
            if kc != k:
                heappop(heap)
                heappush(heap, (kc, c))
                continue
            heappop(heap)
            cand.append((kc, c))
        if not cand:
            # stale heap; rebuild from live columns
            heap = [(len(s), c) for c, s in cols.items() if s]
            heapq.heapify(heap)
            if not heap:
                break
            continue
        best_key = None
        r0 = c0 = -1
        for kc, c in cand:
            for r in cols[c]:
                v = rows[r][c]
                av = -v if v < 0 else v
                key = (av, (kc - 1) * (len(rows[r]) - 1), v, c, r)
                if best_key is None or key < best_key:
                    best_key = key
                    r0, c0 = r, c
        for kc, c in cand:
            heappush(heap, (kc, c))

        # ---- eliminate at (r0, c0)
        while True:
            prow = rows[r0]
            d = prow[c0]
            if d < 0:
                for c in prow:
                    prow[c] = -prow[c]
                d = -d
            if max_pivot_bits is not None and d.bit_length() > max_pivot_bits:
                raise ResourceLimitError(
                    f"pivot needs {d.bit_length()} bits, budget {max_pivot_bits}"
                )
            half = d >> 1
            col_rows = [r for r in cols[c0] if r != r0]
            if col_rows:
                src = list(prow.items())
                for rt in col_rows:
                    rd = rows[rt]
                    q = (rd[c0] + half) // d
                    if not q:
                        continue
                    rd_get = rd.get
                    for c, v in src:
                        old = rd_get(c)
                        if old is None:
                            rd[c] = -q * v
                            s = cols[c]
                            s.add(rt)
                            nnz += 1
                            if len(s) == 1:
                                heappush(heap, (1, c))
                        else:
                            nv = old - q * v
                            if nv:
                                rd[c] = nv
                            else:
                                del rd[c]
                                s = cols[c]
                                s.discard(rt)
                                nnz -= 1
                                heappush(heap, (len(s), c))
                rem = [r for r in cols[c0] if r != r0]
                if rem:
                    # remainders are strictly smaller than d; swap one in as pivot
                    r0 = min(rem, key=lambda r: (abs(rows[r][c0]), r))
                    continue
            # column is clear; clear the pivot row (column c0 is a singleton,
            # so each column operation only touches this row)
            if len(prow) > 1:
                rem_cols = []
                for c in [c for c in prow if c != c0]:
                    v = prow[c]
                    q = (v + half) // d
                    rv = v - q * d
                    if rv:
                        prow[c] = rv
                        rem_cols.append(c)
                    else:
                        del prow[c]
                        s = cols[c]
                        s.discard(r0)
                        nnz -= 1
                        heappush(heap, (len(s), c))
                if rem_cols:
                    c0 = min(rem_cols, key=lambda c: (abs(prow[c]), c))
                    continue
            break

        diag.append(rows[r0][c0])
        del rows[r0]
        del cols[c0]
        nnz -= 1

    factors = _merge_invariant_factors(diag)
    return SmithResult(rank=len(factors), invariant_factors=tuple(factors))


# ---------------------------------------------------------------------------
# prime fields
# ---------------------------------------------------------------------------


def _require_prime(p: int):
    if p < 2:
        raise InvalidModulusError(f"{p} is not prime")
    k = 2
    while k * k <= p:
        if p % k == 0:
            raise InvalidModulusError(f"{p} is not prime")
        k += 1


class _RrefGF:
    """Incremental reduced row echelon form over GF(p).

    Rows are float64 vectors, exact as long as p^2 * ncols stays below
    2^52; the row basis is kept fully reduced, so folding a new vector in
    is a single matrix-vector product.
    """

    def __init__(self, ncols: int, p: int):
        if p * p * max(ncols, 1) >= 2**52:
            raise ResourceLimitError(f"modulus {p} too large for {ncols} columns")
        self.p = p
        self.ncols = ncols
        self.mat = np.zeros((0, ncols), dtype=np.float64)
        self.pivcols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivcols)

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        vec = np.mod(vec, self.p)
        if self.pivcols:
            coeffs = vec[self.pivcols]
            if coeffs.any():
                vec = np.mod(vec - coeffs @ self.mat, self.p)
        return vec

    def insert(self, vec: np.ndarray) -> bool:
        """Fold a vector into the basis; True if the rank grew."""
        vec = self.reduce(vec)
        nz = np.flatnonzero(vec)
        if not len(nz):
            return False
        lead = int(nz[0])
        vec = np.mod(vec * pow(int(vec[lead]), -1, self.p), self.p)
        if self.pivcols:
            coeffs = self.mat[:, lead].copy()
            if coeffs.any():
                self.mat = np.mod(self.mat - np.outer(coeffs, vec), self.p)
        self.mat = np.vstack([self.mat, vec])
        self.pivcols.append(lead)
        return True

    def sorted_basis(self):
        order = np.argsort(self.pivcols)
        return [self.pivcols[i] for i in order], self.mat[order]


def _iter_rows_dense(M: SparseIntMatrix, p: int):
    """Yield each structurally nonzero row of M as a dense mod-p vector."""
    order = np.lexsort((M._col, M._row))
    rr = M._row[order]
    cc = M._col[order]
    vv = M._val[order]
    if vv.dtype == object:
        vv = np.asarray([int(v) % p for v in vv], dtype=np.int64)
    i = 0
    n = len(rr)
    while i < n:
        j = i
        r = rr[i]
        while j < n and rr[j] == r:
            j += 1
        vec = np.zeros(M.cols, dtype=np.float64)
        vec[cc[i:j]] = np.mod(vv[i:j], p)
        yield vec
        i = j


def rank_mod_p(M: SparseIntMatrix, p: int) -> int:
    """Rank of M over the field with p elements."""
    _require_prime(p)
    if M.cols > M.rows:
        M = M.transpose()
    acc = _RrefGF(M.cols, p)
    for vec in _iter_rows_dense(M, p):
        acc.insert(vec)
        if acc.rank == min(M.rows, M.cols):
            break
    return acc.rank


def nullspace_mod_p(M: SparseIntMatrix, p: int):
    """Basis of {v : Mv = 0 mod p}, each vector scaled to lead with 1."""
    _require_prime(p)
    acc = _RrefGF(M.cols, p)
    for vec in _iter_rows_dense(M, p):
        acc.insert(vec)
    pivcols, mat = acc.sorted_basis()
    pivset = set(pivcols)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = np.zeros(M.cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivcols):
            v[pc] = int(-mat[i, f]) % p
        nz = np.flatnonzero(v)
        v = (v * pow(int(v[nz[0]]), -1, p)) % p
        basis.append(tuple(int(x) for x in v))
    return basis


# ---------------------------------------------------------------------------
# sparse product (used for the boundary-composition checks)
# ---------------------------------------------------------------------------


def matmul(A: SparseIntMatrix, B: SparseIntMatrix) -> SparseIntMatrix:
    """Exact sparse product A @ B."""
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch: {A.cols} vs {B.rows}")
    if A._val.dtype == object or B._val.dtype == object or (
        A.max_abs() and B.max_abs() and A.max_abs() * B.max_abs() * max(A.rows, 1) >= _INT64_SAFE
    ):
        return _matmul_python(A, B)
    colptr = np.searchsorted(A._col, np.arange(A.cols + 1))
    counts = np.diff(colptr)
    lens = counts[B._row]
    if not len(lens) or lens.sum() == 0:
        return SparseIntMatrix(A.rows, B.cols)
    bounds = np.cumsum(lens)
    out_r, out_c, out_v = [], [], []
    start = 0
    budget = 4_000_000
    while start < len(lens):
        base_total = bounds[start - 1] if start else 0
        stop = int(np.searchsorted(bounds, base_total + budget)) + 1
        stop = min(stop, len(lens))
        L = lens[start:stop]
        total = int(L.sum())
        if total:
            starts = colptr[B._row[start:stop]]
            base = np.repeat(starts, L)
            shift = np.repeat(np.cumsum(L) - L, L)
            gather = base + (np.arange(total) - shift)
            out_r.append(A._row[gather])
            out_c.append(np.repeat(B._col[start:stop], L))
            out_v.append(A._val[gather] * np.repeat(B._val[start:stop], L))
        start = stop
    return SparseIntMatrix.from_coo(
        A.rows,
        B.cols,
        np.concatenate(out_r),
        np.concatenate(out_c),
        np.concatenate(out_v),
        combine=True,
    )


def _matmul_python(A, B):
    acols: dict[int, list] = {}
    for r, c, v in A.entries():
        acols.setdefault(c, []).append((r, v))
    out: dict[tuple[int, int], int] = {}
    for i, j, v in B.entries():
        for r, w in acols.get(i, ()):
            key = (r, j)
            out[key] = out.get(key, 0) + v * w
    return SparseIntMatrix(A.rows, B.cols, [(r, c, v) for (r, c), v in out.items()])
