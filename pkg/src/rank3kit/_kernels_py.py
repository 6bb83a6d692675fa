"""Pure NumPy implementations of the three hot kernels.

These are the fallback used when the compiled extension is not built
(see kernels.py).  Each function must return results identical to its
compiled counterpart: colorings agree label-for-label, not just as
partitions, because search code relies on deterministic ids.

Conventions shared with the compiled kernels:

* pair_orbits scans flat pair indices i*n+j in ascending order and
  grows each orbit breadth-first; orbit ids number the orbits in order
  of their least flat index.
* refine_partition splits every fragment group in ascending order of
  its count-vector key, keeps the old id on the first fragment and
  appends fresh ids for the rest; the work queue is FIFO.  It also
  returns a 64-bit hash of the split-event stream (splitter id, cell
  id, fragment keys and sizes) -- all label-invariant data, so two
  states reached by matching individualization sequences refine with
  equal traces whenever an automorphism maps one to the other.  Trace
  inequality therefore soundly prunes search branches; equality
  asserts nothing.
* wl2_round refines by exact multiset of (color[i,k], color[k,j]) over
  k and relabels classes by first occurrence in row-major order.
"""

from __future__ import annotations

from collections import deque

import numpy as np

BACKEND = "python"


def pair_orbits(gens, n):
    """Orbits of the generated group on ordered pairs.

    Returns (color, count): a flat int32 array of length n*n with
    color[i*n+j] the orbit id of the pair (i, j).
    """
    gens64 = [np.asarray(g, dtype=np.int64) for g in gens]
    color = np.full(n * n, -1, dtype=np.int32)
    next_id = 0
    start = 0
    total = n * n
    while start < total:
        if color[start] != -1:
            start += 1
            continue
        seed = start
        color[seed] = next_id
        frontier = np.array([seed], dtype=np.int64)
        while frontier.size:
            i, j = np.divmod(frontier, n)
            parts = []
            for g in gens64:
                imgs = g[i] * n + g[j]
                fresh = imgs[color[imgs] == -1]
                if fresh.size:
                    fresh = np.unique(fresh)
                    color[fresh] = next_id
                    parts.append(fresh)
            frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
        next_id += 1
    return color, next_id


def _cells_from_colors(colors, ncolors):
    order = np.argsort(colors, kind="stable")
    bounds = np.searchsorted(colors[order], np.arange(ncolors + 1))
    return {c: order[bounds[c]:bounds[c + 1]]
            for c in range(ncolors) if bounds[c + 1] > bounds[c]}


_FNV_OFFSET = 1469598103934665603
_FNV_PRIME = 1099511628211
_MASK64 = (1 << 64) - 1


def _mix(h, v):
    return ((h ^ (int(v) & _MASK64)) * _FNV_PRIME) & _MASK64


def refine_partition(E, colors, ncolors, active=None, directed=False):
    """Equitable refinement of a vertex partition against pair colors.

    E is an (n, n) int matrix of pair colors with a small alphabet;
    colors is a dense int32 coloring of the vertices.  New ids are
    appended after ncolors.  Returns (colors, ncolors, trace).
    """
    nE = int(E.max()) + 1 if E.size else 1
    colors = colors.astype(np.int32).copy()
    trace = _FNV_OFFSET
    if nE <= 1:
        return colors, ncolors, trace
    cells = _cells_from_colors(colors, ncolors)
    queue = deque(sorted(cells) if active is None else list(active))
    while queue:
        s = queue.popleft()
        S = cells.get(s)
        if S is None or S.size == 0:
            continue
        S = S.copy()
        targets = [c for c in sorted(cells) if cells[c].size > 1]
        if not targets:
            break
        for cid in targets:
            X = cells[cid]
            if X.size <= 1:
                continue
            keys = []
            sub = E[np.ix_(X, S)]
            for c in range(1, nE):
                keys.append((sub == c).sum(axis=1))
            if directed:
                subt = E[np.ix_(S, X)]
                for c in range(1, nE):
                    keys.append((subt == c).sum(axis=0))
            key_mat = np.stack(keys, axis=1)
            order = np.lexsort(key_mat.T[::-1])
            sorted_keys = key_mat[order]
            split = np.flatnonzero((sorted_keys[1:] != sorted_keys[:-1]).any(axis=1)) + 1
            if split.size == 0:
                continue
            trace = _mix(_mix(trace, s), cid)
            groups = np.split(X[order], split)
            bounds = [0, *split.tolist(), len(X)]
            for gi in range(len(groups)):
                trace = _mix(trace, bounds[gi + 1] - bounds[gi])
                for v in sorted_keys[bounds[gi]]:
                    trace = _mix(trace, v)
            cells[cid] = np.sort(groups[0])
            queue.append(cid)
            for grp in groups[1:]:
                grp = np.sort(grp)
                colors[grp] = ncolors
                cells[ncolors] = grp
                queue.append(ncolors)
                ncolors += 1
    return colors, ncolors, trace


def wl2_round(C, ncolors):
    """One coherent-refinement round on an (n, n) pair coloring.

    Returns the refined coloring relabelled by first occurrence in
    row-major order, together with the class count.
    """
    n = C.shape[0]
    h = C.astype(np.int64)
    onehots = [np.ascontiguousarray(C == a, dtype=np.float32)
               for a in range(ncolors)]
    for a in range(ncolors):
        left = onehots[a]
        for b in range(ncolors):
            counts = (left @ onehots[b]).astype(np.int64)
            code = h * (n + 1) + counts
            _, h = np.unique(code, return_inverse=True)
            h = h.reshape(C.shape)
    return canonical_relabel(h)


def canonical_relabel(mat):
    """Relabel classes by first occurrence in row-major order."""
    flat = np.asarray(mat).ravel()
    vals, first, inv = np.unique(flat, return_index=True, return_inverse=True)
    rank = np.empty(len(vals), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(vals))
    out = rank[inv].reshape(np.asarray(mat).shape).astype(np.int32)
    return out, len(vals)
