"""Exact rank kernels: numba-accelerated with numpy/bigint fallbacks.

Both rank routines use column pivoting by fewest nonzeros with ties broken
by column index, so runs are deterministic on every backend.  The int64
Bareiss kernel guards against overflow and reports failure instead of
wrapping; callers then retry with arbitrary-precision Python integers.
"""

from __future__ import annotations

import numpy as np

from ._backend import numba_enabled

_GUARD = 1 << 31  # entries must stay below this for a safe int64 Bareiss round


def _py_rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Gaussian elimination over GF(p) on a list-of-rows copy."""
    a = [[x % p for x in row] for row in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    used = [False] * m
    cols = list(range(n))
    while cols:
        best_c, best_nz = -1, None
        for c in cols:
            nz = sum(1 for i in range(m) if not used[i] and a[i][c])
            if nz and (best_nz is None or nz < best_nz):
                best_c, best_nz = c, nz
        if best_c < 0:
            break
        c = best_c
        cols.remove(c)
        piv = next(i for i in range(m) if not used[i] and a[i][c])
        used[piv] = True
        rank += 1
        inv = pow(a[piv][c], p - 2, p)
        prow = [(x * inv) % p for x in a[piv]]
        for i in range(m):
            if not used[i] and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
    return rank


def _py_rank_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination with Python integers; always exact."""
    a = [list(map(int, row)) for row in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    used = [False] * m
    cols = list(range(n))
    while cols:
        best_c, best_nz = -1, None
        for c in cols:
            nz = sum(1 for i in range(m) if not used[i] and a[i][c])
            if nz and (best_nz is None or nz < best_nz):
                best_c, best_nz = c, nz
        if best_c < 0:
            break
        c = best_c
        cols.remove(c)
        piv = next(i for i in range(m) if not used[i] and a[i][c])
        used[piv] = True
        rank += 1
        pv = a[piv][c]
        for i in range(m):
            if used[i] or not any(a[i]):
                continue
            ai = a[i]
            arow = a[piv]
            f = ai[c]
            for j in range(n):
                ai[j] = (pv * ai[j] - f * arow[j]) // prev
        prev = pv
    return rank


def _np_rank_mod_p(a: np.ndarray, p: int) -> int:
    """Vectorized GF(p) elimination (pure numpy fallback)."""
    a = np.mod(a.astype(np.int64, copy=True), p)
    m, n = a.shape
    rank = 0
    live = np.ones(m, dtype=bool)
    cols = np.ones(n, dtype=bool)
    while True:
        nz = (a[live][:, :] != 0).sum(axis=0)
        nz[~cols] = 0
        if not nz.any():
            return rank
        cand = np.where(nz > 0)[0]
        c = cand[np.argmin(nz[cand])]
        cols[c] = False
        rows_idx = np.where(live & (a[:, c] != 0))[0]
        piv = rows_idx[0]
        live[piv] = False
        rank += 1
        inv = pow(int(a[piv, c]), p - 2, p)
        prow = (a[piv] * inv) % p
        upd = np.where(live & (a[:, c] != 0))[0]
        if upd.size:
            a[upd] = (a[upd] - np.outer(a[upd, c], prow)) % p


def _np_rank_bareiss(a: np.ndarray) -> tuple[int, bool]:
    """Guarded int64 Bareiss (pure numpy fallback); ok=False on overflow risk."""
    a = a.astype(np.int64, copy=True)
    m, n = a.shape
    rank = 0
    prev = np.int64(1)
    live = np.ones(m, dtype=bool)
    cols = np.ones(n, dtype=bool)
    while True:
        if np.abs(a[live]).max(initial=0) >= _GUARD:
            return rank, False
        nz = (a[live] != 0).sum(axis=0)
        nz[~cols] = 0
        if not nz.any():
            return rank, True
        cand = np.where(nz > 0)[0]
        c = cand[np.argmin(nz[cand])]
        cols[c] = False
        rows_idx = np.where(live & (a[:, c] != 0))[0]
        piv = rows_idx[0]
        live[piv] = False
        rank += 1
        pv = a[piv, c]
        upd = np.where(live)[0]
        if upd.size:
            a[upd] = (pv * a[upd] - np.outer(a[upd, c], a[piv])) // prev
        prev = pv


if numba_enabled():
    from numba import njit

    @njit(cache=True)
    def _nb_rank_mod_p(a, p):  # pragma: no cover - exercised via dispatch
        m, n = a.shape
        a = a % p
        rank = 0
        live = np.ones(m, dtype=np.bool_)
        cols = np.ones(n, dtype=np.bool_)
        while True:
            best_c = -1
            best_nz = 1 << 60
            for c in range(n):
                if not cols[c]:
                    continue
                nz = 0
                for i in range(m):
                    if live[i] and a[i, c] != 0:
                        nz += 1
                if 0 < nz < best_nz:
                    best_nz = nz
                    best_c = c
            if best_c < 0:
                return rank
            c = best_c
            cols[c] = False
            piv = -1
            for i in range(m):
                if live[i] and a[i, c] != 0:
                    piv = i
                    break
            live[piv] = False
            rank += 1
            # modular inverse by Fermat
            inv = 1
            base = a[piv, c] % p
            e = p - 2
            while e:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for i in range(m):
                if live[i] and a[i, c] != 0:
                    f = (a[i, c] * inv) % p
                    for j in range(n):
                        a[i, j] = (a[i, j] - f * a[piv, j]) % p

    @njit(cache=True)
    def _nb_rank_bareiss(a):  # pragma: no cover - exercised via dispatch
        m, n = a.shape
        a = a.copy()
        rank = 0
        prev = np.int64(1)
        live = np.ones(m, dtype=np.bool_)
        cols = np.ones(n, dtype=np.bool_)
        guard = np.int64(1) << 31
        while True:
            for i in range(m):
                if live[i]:
                    for j in range(n):
                        if a[i, j] >= guard or a[i, j] <= -guard:
                            return rank, False
            best_c = -1
            best_nz = 1 << 60
            for c in range(n):
                if not cols[c]:
                    continue
                nz = 0
                for i in range(m):
                    if live[i] and a[i, c] != 0:
                        nz += 1
                if 0 < nz < best_nz:
                    best_nz = nz
                    best_c = c
            if best_c < 0:
                return rank, True
            c = best_c
            cols[c] = False
            piv = -1
            for i in range(m):
                if live[i] and a[i, c] != 0:
                    piv = i
                    break
            live[piv] = False
            rank += 1
            pv = a[piv, c]
            for i in range(m):
                if live[i]:
                    f = a[i, c]
                    for j in range(n):
                        a[i, j] = (pv * a[i, j] - f * a[piv, j]) // prev
            prev = pv


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Exact rank over GF(p); ``p`` must be an odd-or-2 prime below 2**31."""
    if matrix.size == 0:
        return 0
    if numba_enabled():
        return int(_nb_rank_mod_p(matrix.astype(np.int64), p))
    return _np_rank_mod_p(matrix, p)


def rank_over_q(matrix: np.ndarray) -> int:
    """Exact rank over the rationals (equivalently over the integers)."""
    if matrix.size == 0:
        return 0
    if numba_enabled():
        r, ok = _nb_rank_bareiss(matrix.astype(np.int64))
        if ok:
            return int(r)
    else:
        r, ok = _np_rank_bareiss(matrix)
        if ok:
            return int(r)
    return _py_rank_bareiss(matrix.tolist())
