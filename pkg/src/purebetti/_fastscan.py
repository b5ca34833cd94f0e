"""Numba kernel for the census scan (labeled antichain DFS + canonical test).

The canonical representative of an isomorphism class is the labeling whose
vertices are sorted by an invariant color (facet-size profile) and whose
facet matrix is minimal among color-consistent relabelings.  Nodes that are
not even color-sorted skip the permutation loop entirely, which is what
makes the n = 6 scan cheap.
"""

from __future__ import annotations

import itertools

import numpy as np

from ._backend import numba_enabled

_MAX_FACETS = 32
_FLAT_CAP = 4_000_000

if numba_enabled():
    from numba import njit
else:  # pragma: no cover - module is only imported when numba is on
    def njit(*a, **k):
        def wrap(f):
            return f

        return wrap if not (len(a) == 1 and callable(a[0])) else a[0]


def _tables(n: int):
    full = (1 << n) - 1
    perms = list(itertools.permutations(range(n)))
    pinv = np.array(perms, dtype=np.int64)  # pinv[p, pos] = old vertex at pos
    nperm = len(perms)
    mask_map = np.zeros((nperm, full + 1), dtype=np.int64)
    for p, perm in enumerate(perms):
        for f in range(full + 1):
            m = 0
            for pos in range(n):
                if f >> perm[pos] & 1:
                    m |= 1 << pos
            mask_map[p, f] = m
    popcnt = np.array([bin(f).count("1") for f in range(full + 1)], dtype=np.int64)
    sort_key = np.zeros(full + 1, dtype=np.int64)
    for f in range(full + 1):
        rev = 0
        for v in range(n):
            if f >> v & 1:
                rev |= 1 << (n - 1 - v)
        sort_key[f] = (popcnt[f] << 6) | (63 - rev)
    # candidate-id bitsets use bit (x - 1) for subset id x, keeping ids
    # 1..63 clear of the int64 sign bit
    comp = np.zeros(full + 1, dtype=np.int64)
    for m in range(1, full + 1):
        bitsets = 0
        for x in range(1, full + 1):
            if x == m or (x & m) == m or (x & m) == x:
                bitsets |= 1 << (x - 1)
        comp[m] = bitsets
    return pinv, mask_map, popcnt, sort_key, comp


@njit(cache=True)
def _scan_kernel(n, pinv, mask_map, popcnt, sort_key, comp, flags, reps_flat):
    require_all, forbid_cone, forbid_twin, exclude_full = flags
    full = (1 << n) - 1
    nperm = pinv.shape[0]

    iter_bits = np.zeros(_MAX_FACETS + 2, dtype=np.int64)
    chosen = np.zeros(_MAX_FACETS + 2, dtype=np.int64)
    colors = np.zeros(n, dtype=np.int64)
    rank = np.zeros(n, dtype=np.int64)
    mem = np.zeros(n, dtype=np.int64)
    idk = np.zeros(_MAX_FACETS, dtype=np.int64)
    arr = np.zeros(_MAX_FACETS, dtype=np.int64)

    labeled = np.int64(0)
    used = 0
    n_reps = 0

    all_ids = np.int64(0)
    for x in range(1, full + 1):
        all_ids |= np.int64(1) << (x - 1)

    ptr = 0
    iter_bits[0] = all_ids
    labeled += 1  # the empty antichain (irrelevant complex)

    # process the empty antichain against the filters
    ok = True
    if require_all and n > 0:
        ok = False
    if ok and forbid_twin and n > 1:
        ok = False  # all vertices are twins (no facets)
    if ok:
        reps_flat[used] = 0
        used += 1
        n_reps += 1

    while ptr >= 0:
        if iter_bits[ptr] == 0:
            ptr -= 1
            continue
        b = iter_bits[ptr] & (-iter_bits[ptr])
        iter_bits[ptr] ^= b
        m = 1  # bit (x - 1) encodes subset id x
        bb = b
        while bb > 1:
            bb >>= 1
            m += 1
        chosen[ptr] = m
        nf = ptr + 1
        labeled += 1

        # descend later; first process this antichain
        passed = True
        union = np.int64(0)
        inter = np.int64(full)
        for t in range(nf):
            union |= chosen[t]
            inter &= chosen[t]
        if require_all and union != full:
            passed = False
        if passed and forbid_cone and inter != 0:
            passed = False
        if passed and exclude_full and nf == 1 and chosen[0] == full:
            passed = False
        if passed and forbid_twin:
            for v in range(n):
                acc = np.int64(0)
                for t in range(nf):
                    if chosen[t] >> v & 1:
                        acc |= np.int64(1) << t
                mem[v] = acc
            for v in range(n):
                for w in range(v + 1, n):
                    if mem[v] == mem[w]:
                        passed = False
                        break
                if not passed:
                    break

        if passed:
            # vertex colors: packed facet-size profile
            for v in range(n):
                c = np.int64(0)
                for t in range(nf):
                    if chosen[t] >> v & 1:
                        c += np.int64(1) << (5 * popcnt[chosen[t]])
                colors[v] = c
            sorted_ok = True
            for v in range(n - 1):
                if colors[v] > colors[v + 1]:
                    sorted_ok = False
                    break
            if sorted_ok:
                for v in range(n):
                    r = 0
                    for w in range(n):
                        if colors[w] < colors[v]:
                            r += 1
                    rank[v] = r
                for t in range(nf):
                    idk[t] = sort_key[chosen[t]]
                for t in range(1, nf):
                    key = idk[t]
                    s = t - 1
                    while s >= 0 and idk[s] > key:
                        idk[s + 1] = idk[s]
                        s -= 1
                    idk[s + 1] = key
                canonical = True
                for p in range(nperm):
                    consistent = True
                    for pos in range(n):
                        if rank[pinv[p, pos]] != rank[pos]:
                            consistent = False
                            break
                    if not consistent:
                        continue
                    for t in range(nf):
                        arr[t] = sort_key[mask_map[p, chosen[t]]]
                    for t in range(1, nf):
                        key = arr[t]
                        s = t - 1
                        while s >= 0 and arr[s] > key:
                            arr[s + 1] = arr[s]
                            s -= 1
                        arr[s + 1] = key
                    smaller = False
                    for t in range(nf):
                        if arr[t] < idk[t]:
                            smaller = True
                            break
                        if arr[t] > idk[t]:
                            break
                    if smaller:
                        canonical = False
                        break
                if canonical:
                    if used + nf + 1 >= reps_flat.shape[0]:
                        return np.int64(-1), used, n_reps
                    reps_flat[used] = nf
                    used += 1
                    for t in range(nf):
                        reps_flat[used] = chosen[t]
                        used += 1
                    n_reps += 1

        # descend: candidates above m and incomparable to it
        child = iter_bits[ptr] & ~comp[m]
        ptr += 1
        iter_bits[ptr] = child

    return labeled, used, n_reps


def scan_numba(n: int, flags) -> tuple[int, list[tuple[int, ...]]]:
    pinv, mask_map, popcnt, sort_key, comp = _tables(n)
    flag_arr = np.array([int(x) for x in flags], dtype=np.int64)
    reps_flat = np.zeros(_FLAT_CAP, dtype=np.int64)
    labeled, used, n_reps = _scan_kernel(
        n, pinv, mask_map, popcnt, sort_key, comp, flag_arr, reps_flat
    )
    if labeled < 0:
        raise MemoryError("census scan output buffer overflow")
    from .complexes import face_key

    reps: list[tuple[int, ...]] = []
    pos = 0
    for _ in range(n_reps):
        nf = int(reps_flat[pos])
        pos += 1
        masks = tuple(sorted((int(x) for x in reps_flat[pos: pos + nf]), key=face_key))
        pos += nf
        reps.append(masks if masks else (0,))
    return int(labeled), reps
