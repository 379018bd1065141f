"""JIT-compiled core of the column-lattice reduction.

Streams sparse columns through a basis keyed by leading row, exactly as
intlinalg._lattice_generators does, but over int64 with numba.  Values and
quotients are guarded against overflow; the caller falls back to the exact
arbitrary-precision path when the kernel reports trouble.
"""

from __future__ import annotations

import numpy as np
from numba import njit

VAL_LIMIT = 1 << 45

_OK = 0
_OVERFLOW = 1
_POOL_FULL = 2
_HEAP_FULL = 3


@njit(cache=True, inline="always")
def _hpush(heap, hn, v):
    i = hn
    heap[i] = v
    while i > 0:
        p = (i - 1) >> 1
        if heap[p] <= heap[i]:
            break
        heap[p], heap[i] = heap[i], heap[p]
        i = p
    return hn + 1


@njit(cache=True, inline="always")
def _hpop(heap, hn):
    top = heap[0]
    hn -= 1
    heap[0] = heap[hn]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= hn:
            break
        if l + 1 < hn and heap[l + 1] < heap[l]:
            l += 1
        if heap[i] <= heap[l]:
            break
        heap[i], heap[l] = heap[l], heap[i]
        i = l
    return top, hn


@njit(cache=True)
def _cascade(col_starts, ent_rows, ent_vals, nrows,
             basis_ptr, pool_off, pool_rows, pool_vals,
             scratch, heap, tmp_rows, tmp_vals,
             tmp2_rows, tmp2_vals, tmp3_rows, tmp3_vals):
    npool = 0
    pool_used = 0
    pool_cap = pool_rows.shape[0]
    heap_cap = heap.shape[0]
    ncols = col_starts.shape[0] - 1
    for k in range(ncols):
        hn = 0
        if col_starts[k + 1] - col_starts[k] >= heap_cap:
            return npool, _HEAP_FULL
        for t in range(col_starts[k], col_starts[k + 1]):
            r = ent_rows[t]
            scratch[r] = ent_vals[t]
            hn = _hpush(heap, hn, r)
        last = np.int64(-1)
        while hn > 0:
            r, hn = _hpop(heap, hn)
            if r == last:
                continue
            last = r
            vl = scratch[r]
            if vl == 0:
                continue
            bi = basis_ptr[r]
            if bi < 0:
                # v becomes a new basis vector; collect its (ascending) support
                m = 0
                tmp_rows[m] = r
                tmp_vals[m] = vl
                m += 1
                scratch[r] = 0
                while hn > 0:
                    rr, hn = _hpop(heap, hn)
                    if rr == tmp_rows[m - 1]:
                        continue
                    w = scratch[rr]
                    if w == 0:
                        continue
                    tmp_rows[m] = rr
                    tmp_vals[m] = w
                    m += 1
                    scratch[rr] = 0
                if pool_used + m > pool_cap or npool + 1 >= pool_off.shape[0]:
                    return npool, _POOL_FULL
                neg = tmp_vals[0] < 0
                for t in range(m):
                    pool_rows[pool_used + t] = tmp_rows[t]
                    pool_vals[pool_used + t] = -tmp_vals[t] if neg else tmp_vals[t]
                pool_used += m
                basis_ptr[r] = npool
                pool_off[npool + 1] = pool_used
                npool += 1
                break
            off0 = pool_off[bi]
            off1 = pool_off[bi + 1]
            bl = pool_vals[off0]
            q = vl // bl
            rem = vl - q * bl
            if rem == 0:
                if q > VAL_LIMIT or q < -VAL_LIMIT:
                    return npool, _OVERFLOW
                scratch[r] = 0
                for t in range(off0 + 1, off1):
                    br = pool_rows[t]
                    old = scratch[br]
                    nv = old - q * pool_vals[t]
                    scratch[br] = nv
                    if nv != 0:
                        if nv > VAL_LIMIT or nv < -VAL_LIMIT:
                            return npool, _OVERFLOW
                        # rows already in the support sit in the heap; only
                        # fresh fill-in needs a push
                        if old == 0:
                            if hn >= heap_cap:
                                return npool, _HEAP_FULL
                            hn = _hpush(heap, hn, br)
            else:
                # gcd combine; rare, so materializing v is fine
                m = 0
                tmp_rows[m] = r
                tmp_vals[m] = vl
                m += 1
                scratch[r] = 0
                while hn > 0:
                    rr, hn = _hpop(heap, hn)
                    if rr == tmp_rows[m - 1]:
                        continue
                    w = scratch[rr]
                    if w == 0:
                        continue
                    tmp_rows[m] = rr
                    tmp_vals[m] = w
                    m += 1
                    scratch[rr] = 0
                # extended euclid on (bl, vl)
                x0, x1 = np.int64(1), np.int64(0)
                y0, y1 = np.int64(0), np.int64(1)
                g, ng = bl, vl
                while ng != 0:
                    qq = g // ng
                    x0, x1 = x1, x0 - qq * x1
                    y0, y1 = y1, y0 - qq * y1
                    g, ng = ng, g - qq * ng
                if g < 0:
                    x0, y0, g = -x0, -y0, -g
                bg = bl // g
                vg = vl // g
                lim = VAL_LIMIT
                if (abs(x0) > lim or abs(y0) > lim or abs(bg) > lim or abs(vg) > lim):
                    return npool, _OVERFLOW
                # merge sorted supports of b (pool slice) and v (tmp arrays)
                ib, iv, mm = off0, 0, 0
                while ib < off1 or iv < m:
                    if iv >= m or (ib < off1 and pool_rows[ib] < tmp_rows[iv]):
                        rr = pool_rows[ib]
                        bv = pool_vals[ib]
                        vv = np.int64(0)
                        ib += 1
                    elif ib >= off1 or tmp_rows[iv] < pool_rows[ib]:
                        rr = tmp_rows[iv]
                        bv = np.int64(0)
                        vv = tmp_vals[iv]
                        iv += 1
                    else:
                        rr = pool_rows[ib]
                        bv = pool_vals[ib]
                        vv = tmp_vals[iv]
                        ib += 1
                        iv += 1
                    nb = x0 * bv + y0 * vv
                    nv = bg * vv - vg * bv
                    if abs(nb) > lim or abs(nv) > lim:
                        return npool, _OVERFLOW
                    tmp2_rows[mm] = rr
                    tmp2_vals[mm] = nb
                    tmp3_rows[mm] = rr
                    tmp3_vals[mm] = nv
                    mm += 1
                # store new basis vector (nonzero entries of new_b)
                cnt = 0
                for t in range(mm):
                    if tmp2_vals[t] != 0:
                        cnt += 1
                if pool_used + cnt > pool_cap or npool + 1 >= pool_off.shape[0]:
                    return npool, _POOL_FULL
                for t in range(mm):
                    if tmp2_vals[t] != 0:
                        pool_rows[pool_used] = tmp2_rows[t]
                        pool_vals[pool_used] = tmp2_vals[t]
                        pool_used += 1
                basis_ptr[r] = npool
                pool_off[npool + 1] = pool_used
                npool += 1
                # push new_v back into the work state (its lead entry is zero)
                for t in range(mm):
                    if tmp3_vals[t] != 0:
                        rr = tmp3_rows[t]
                        scratch[rr] = tmp3_vals[t]
                        if hn >= heap_cap:
                            return npool, _HEAP_FULL
                        hn = _hpush(heap, hn, rr)
                last = np.int64(-1)
    return npool, _OK


def lattice_generators_int64(nrows, col_starts, ent_rows, ent_vals):
    """Run the JIT cascade; returns a dict lead->vector-dict, or None on bail."""
    nnz = len(ent_rows)
    pool_cap = nnz + 64 * nrows + 1024
    vec_cap = nrows + 4096
    heap_cap = 1 << 17
    basis_ptr = np.full(nrows, -1, dtype=np.int64)
    pool_off = np.zeros(vec_cap + 1, dtype=np.int64)
    pool_rows = np.empty(pool_cap, dtype=np.int64)
    pool_vals = np.empty(pool_cap, dtype=np.int64)
    scratch = np.zeros(nrows, dtype=np.int64)
    heap = np.empty(heap_cap, dtype=np.int64)
    tmp_rows = np.empty(heap_cap, dtype=np.int64)
    tmp_vals = np.empty(heap_cap, dtype=np.int64)
    tmp2_rows = np.empty(2 * nrows + 8, dtype=np.int64)
    tmp2_vals = np.empty(2 * nrows + 8, dtype=np.int64)
    tmp3_rows = np.empty(2 * nrows + 8, dtype=np.int64)
    tmp3_vals = np.empty(2 * nrows + 8, dtype=np.int64)
    npool, status = _cascade(
        col_starts, ent_rows, ent_vals, nrows,
        basis_ptr, pool_off, pool_rows, pool_vals,
        scratch, heap, tmp_rows, tmp_vals,
        tmp2_rows, tmp2_vals, tmp3_rows, tmp3_vals,
    )
    if status != _OK:
        return None
    basis = {}
    for lead in np.flatnonzero(basis_ptr >= 0):
        bi = basis_ptr[lead]
        lo, hi = pool_off[bi], pool_off[bi + 1]
        basis[int(lead)] = dict(
            zip(pool_rows[lo:hi].tolist(), pool_vals[lo:hi].tolist())
        )
    return basis
