# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: pair-orbit BFS, partition refinement, coherent round.

Each function is output-identical to its NumPy twin in _kernels_py;
tests cross-check the two backends on shared inputs.  The refinement
kernel mirrors the fallback's queue discipline exactly (FIFO, fragment
ids in ascending key order) so colorings agree label-for-label.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "c"


def pair_orbits(gens, n):
    cdef int ng = len(gens)
    cdef long long total = <long long> n * n
    cdef cnp.ndarray[cnp.int32_t, ndim=2] G = np.empty((max(ng, 1), n), dtype=np.int32)
    cdef int gi
    for gi in range(ng):
        G[gi, :] = np.asarray(gens[gi], dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] color = np.full(total, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] queue = np.empty(total, dtype=np.int64)
    cdef cnp.int32_t[:, :] g = G
    cdef cnp.int32_t[:] col = color
    cdef cnp.int64_t[:] q = queue
    cdef long long seed, head, tail, f, img
    cdef int i, j, next_id = 0
    cdef int nn = n
    for seed in range(total):
        if col[seed] != -1:
            continue
        col[seed] = next_id
        head = 0
        tail = 0
        q[tail] = seed
        tail += 1
        while head < tail:
            f = q[head]
            head += 1
            i = <int> (f // nn)
            j = <int> (f % nn)
            for gi in range(ng):
                img = <long long> g[gi, i] * nn + g[gi, j]
                if col[img] == -1:
                    col[img] = next_id
                    q[tail] = img
                    tail += 1
        next_id += 1
    return color, next_id


cdef inline unsigned long long _mix(unsigned long long h, unsigned long long v):
    return (h ^ v) * <unsigned long long> 1099511628211


def refine_partition(E, colors, ncolors, active=None, directed=False):
    cdef cnp.ndarray[cnp.int16_t, ndim=2] EE = np.ascontiguousarray(E, dtype=np.int16)
    cdef int n = EE.shape[0]
    cdef int nE = (int(EE.max()) + 1) if n else 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] col = np.asarray(colors, dtype=np.int32).copy()
    cdef int r = int(ncolors)
    cdef int want_cols = 1 if directed else 0
    if nE <= 1:
        return col, r, 1469598103934665603

    # partition layout: verts grouped by cell, per-cell start/size
    cdef cnp.ndarray[cnp.int32_t, ndim=1] verts = np.argsort(col, kind="stable").astype(np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] vstart = np.zeros(n + 1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] vsize = np.zeros(n + 1, dtype=np.int32)
    cdef cnp.int32_t[:] vt = verts
    cdef cnp.int32_t[:] vs = vstart
    cdef cnp.int32_t[:] vz = vsize
    cdef cnp.int32_t[:] cl = col
    cdef cnp.int16_t[:, :] Ev = EE
    cdef int v, c, idx
    for idx in range(n):
        vz[cl[idx]] += 1
    for c in range(1, r):
        vs[c] = vs[c - 1] + vz[c - 1]

    # FIFO queue of cell ids; capacity covers initial load plus all splits
    cdef int qcap = 4 * n + 16 + (len(active) if active is not None else 0)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue = np.empty(qcap, dtype=np.int32)
    cdef cnp.int32_t[:] qu = queue
    cdef int qhead = 0, qtail = 0
    if active is None:
        for c in range(r):
            qu[qtail] = c
            qtail += 1
    else:
        for c in active:
            qu[qtail] = c
            qtail += 1

    cdef int K = (nE - 1) * (1 + want_cols)
    if K <= 0:
        K = 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] Sbuf = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] keys = np.zeros(n * K, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ord1 = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ord2 = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cnt = np.empty(n + 2, dtype=np.int32)
    cdef cnp.int32_t[:] Sb = Sbuf
    cdef cnp.int32_t[:] ky = keys
    cdef cnp.int32_t[:] o1 = ord1
    cdef cnp.int32_t[:] o2 = ord2
    cdef cnp.int32_t[:] ct = cnt
    cdef cnp.int32_t[:] tmp

    cdef int s, ssize, r0, cid, xsize, xstart, k, t, col_k, val
    cdef int frag_begin, frag_id, i2, any_big, differs
    cdef unsigned long long trace = <unsigned long long> 1469598103934665603

    while qhead < qtail:
        s = qu[qhead]
        qhead += 1
        ssize = vz[s]
        if ssize == 0:
            continue
        for k in range(ssize):
            Sb[k] = vt[vs[s] + k]
        any_big = 0
        r0 = r
        for cid in range(r0):
            if vz[cid] > 1:
                any_big = 1
                break
        if not any_big:
            break
        for cid in range(r0):
            xsize = vz[cid]
            if xsize <= 1:
                continue
            xstart = vs[cid]
            for k in range(xsize * K):
                ky[k] = 0
            for k in range(xsize):
                v = vt[xstart + k]
                for t in range(ssize):
                    c = Ev[v, Sb[t]]
                    if c > 0:
                        ky[k * K + c - 1] += 1
                    if want_cols:
                        c = Ev[Sb[t], v]
                        if c > 0:
                            ky[k * K + nE - 1 + c - 1] += 1
            # LSD radix over key columns (counts bounded by |S|)
            for k in range(xsize):
                o1[k] = k
            for col_k in range(K - 1, -1, -1):
                for t in range(ssize + 2):
                    ct[t] = 0
                for k in range(xsize):
                    ct[ky[o1[k] * K + col_k]] += 1
                for t in range(1, ssize + 2):
                    ct[t] += ct[t - 1]
                for k in range(xsize - 1, -1, -1):
                    val = ky[o1[k] * K + col_k]
                    ct[val] -= 1
                    o2[ct[val]] = o1[k]
                tmp = o1
                o1 = o2
                o2 = tmp
            differs = 0
            for k in range(1, xsize):
                for t in range(K):
                    if ky[o1[k] * K + t] != ky[o1[k - 1] * K + t]:
                        differs = 1
                        break
                if differs:
                    break
            if not differs:
                continue
            trace = _mix(_mix(trace, <unsigned long long> s),
                         <unsigned long long> cid)
            # rewrite the slice in sorted order; stable radix kept members
            # ascending within equal keys
            for k in range(xsize):
                o2[k] = vt[xstart + o1[k]]
            for k in range(xsize):
                vt[xstart + k] = o2[k]
            # assign fragment ids: first fragment keeps cid, rest are fresh
            frag_begin = 0
            for k in range(1, xsize + 1):
                differs = 1
                if k < xsize:
                    differs = 0
                    for t in range(K):
                        if ky[o1[k] * K + t] != ky[o1[k - 1] * K + t]:
                            differs = 1
                            break
                if differs:
                    trace = _mix(trace, <unsigned long long> (k - frag_begin))
                    for t in range(K):
                        trace = _mix(trace, <unsigned long long> ky[o1[frag_begin] * K + t])
                    if frag_begin == 0:
                        frag_id = cid
                    else:
                        frag_id = r
                        r += 1
                        vs[frag_id] = xstart + frag_begin
                    vz[frag_id] = k - frag_begin
                    for i2 in range(frag_begin, k):
                        cl[vt[xstart + i2]] = frag_id
                    qu[qtail] = frag_id
                    qtail += 1
                    frag_begin = k
    return col, r, int(trace)


def wl2_round(C, ncolors):
    from ._kernels_py import canonical_relabel, wl2_round as py_round

    cdef cnp.ndarray[cnp.int32_t, ndim=2] CC = np.ascontiguousarray(C, dtype=np.int32)
    cdef int n = CC.shape[0]
    cdef int r = int(ncolors)
    if <long long> r * r > (1 << 24):
        return py_round(C, ncolors)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] scratch = np.zeros(r * r, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] touched = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] out = np.empty((n, n), dtype=np.int32)
    cdef cnp.int32_t[:, :] Cv = CC
    cdef cnp.int32_t[:, :] ov = out
    cdef cnp.int32_t[:] sc = scratch
    cdef cnp.int32_t[:] tc = touched
    cdef int i, j, k, ntouch, code, t, val
    cdef dict sig_ids = {}
    cdef int next_id = 0
    for i in range(n):
        for j in range(n):
            ntouch = 0
            for k in range(n):
                code = Cv[i, k] * r + Cv[k, j]
                if sc[code] == 0:
                    tc[ntouch] = code
                    ntouch += 1
                sc[code] += 1
            tsort = sorted([tc[t] for t in range(ntouch)])
            sig = (Cv[i, j], tuple((cd, sc[cd]) for cd in tsort))
            for t in range(ntouch):
                sc[tc[t]] = 0
            val = sig_ids.get(sig, -1)
            if val == -1:
                val = next_id
                sig_ids[sig] = next_id
                next_id += 1
            ov[i, j] = val
    return canonical_relabel(out)
