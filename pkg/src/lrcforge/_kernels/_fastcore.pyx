# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled search kernels.

Same semantics as `_pycore` (which is the reference; see its docstrings):
status 0 = completed without a find, 1 = found, 2 = budget exhausted.
Field arithmetic is table-based: doubled antilog table for products, a full
q*q addition table, and a negation table.
"""

import numpy as np

ctypedef unsigned short u16
ctypedef long long i64


def enum_min_weight(const u16[:, ::1] gen,
                    const u16[::1] exp2,
                    const i64[::1] logt,
                    const u16[:, ::1] addt,
                    int q, int known_lower, i64 budget):
    cdef int k = gen.shape[0]
    cdef int n = gen.shape[1]
    if k == 0:
        return (0, None, None, None, 0)

    partial_np = np.zeros((k + 1, n), dtype=np.uint16)
    cdef u16[:, ::1] P = partial_np
    val_np = np.full(k, -1, dtype=np.int64)
    cdef i64[::1] val = val_np

    cdef i64 ops = 0
    cdef int best_w = -1
    cdef int depth = 0
    cdef int first_nz = -1   # depth of the first nonzero digit, -1 while all zero
    cdef int j, w, v, limit
    cdef u16 c
    cdef i64 logc
    best_msg = None
    best_cw = None

    while depth >= 0:
        if best_w != -1 and best_w <= known_lower:
            break
        # digits before the first nonzero one are confined to {0, 1}
        limit = q - 1 if (first_nz != -1 and first_nz < depth) else 1
        if first_nz == depth:
            first_nz = -1  # this digit is about to change
        v = <int> val[depth] + 1
        if v > limit:
            val[depth] = -1
            depth -= 1
            continue
        val[depth] = v
        if v > 0 and first_nz == -1:
            first_nz = depth
        # partial[depth+1] = partial[depth] + v * G[depth]
        ops += n
        if ops > budget:
            return (2, best_w if best_w != -1 else None, best_msg, best_cw, ops)
        if v == 0:
            for j in range(n):
                P[depth + 1, j] = P[depth, j]
        else:
            logc = logt[v]
            for j in range(n):
                c = gen[depth, j]
                if c != 0:
                    c = exp2[logc + logt[c]]
                P[depth + 1, j] = addt[P[depth, j], c]
        if depth + 1 == k:
            if first_nz != -1:
                w = 0
                for j in range(n):
                    if P[k, j] != 0:
                        w += 1
                if best_w == -1 or w < best_w:
                    best_w = w
                    best_msg = tuple(int(val[j]) for j in range(k))
                    best_cw = tuple(int(P[k, j]) for j in range(n))
            # stay at this depth; the next loop iteration advances the digit
        else:
            depth += 1
    if best_w == -1:
        return (0, None, None, None, ops)
    return (1, best_w, best_msg, best_cw, ops)


def dependent_dfs(const u16[:, ::1] cols_t, int w,
                  const u16[::1] exp2,
                  const i64[::1] logt,
                  const u16[::1] negt,
                  const u16[:, ::1] addt,
                  int q,
                  class_ids_obj, band_masks_obj, band_mins_obj,
                  bint require_all, i64 budget):
    cdef int n = cols_t.shape[0]
    cdef int rho = cols_t.shape[1]
    if w < 1 or w > n:
        return (0, None, 0)
    cdef i64 qm1 = q - 1

    cdef int nclasses = 0
    cdef int nbands = 0
    cdef i64[::1] cid
    cdef i64[:, ::1] av
    cdef i64[::1] bm
    cdef i64[::1] bmin
    cdef int i_, kcl
    cdef bint have_classes = class_ids_obj is not None
    if have_classes:
        cid = class_ids_obj
        for i_ in range(n):
            if cid[i_] + 1 > nclasses:
                nclasses = <int> cid[i_] + 1
        avail_np = np.zeros((nclasses, n + 1), dtype=np.int64)
        av = avail_np
        for kcl in range(nclasses):
            for i_ in range(n - 1, -1, -1):
                av[kcl, i_] = av[kcl, i_ + 1] + (1 if cid[i_] == kcl else 0)
        bm = band_masks_obj
        bmin = band_mins_obj
        nbands = bm.shape[0]

    # per-level residual buffers and bookkeeping
    resid_np = np.zeros((w, n, rho), dtype=np.uint16)
    cdef u16[:, :, ::1] R = resid_np
    flags_np = np.zeros((w, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] F = flags_np
    chosen_np = np.zeros(w, dtype=np.int64)
    cdef i64[::1] chosen = chosen_np
    ptr_np = np.zeros(w, dtype=np.int64)
    cdef i64[::1] ptr = ptr_np
    cnt_np = np.zeros(nclasses if nclasses else 1, dtype=np.int64)
    cdef i64[::1] cnt = cnt_np

    cdef int c, j, depth, piv, y
    cdef u16 pv, invpv, coef, x
    cdef i64 ops = 0
    cdef bint nz, ok
    cdef i64 s, a, total, nonband, lo, hi, need
    cdef int b_

    # level 0: residuals are the raw columns
    for c in range(n):
        nz = False
        for j in range(rho):
            x = cols_t[c, j]
            R[0, c, j] = x
            if x != 0:
                nz = True
        F[0, c] = 1 if nz else 0

    depth = 0
    ptr[0] = 0
    while depth >= 0:
        c = <int> ptr[depth]
        if c > n - (w - depth):
            depth -= 1
            if depth >= 0:
                if have_classes:
                    cnt[cid[chosen[depth]]] -= 1
                ptr[depth] = chosen[depth] + 1
            continue
        ptr[depth] = c + 1
        if F[depth, c] == 0:
            witness = [int(chosen[j]) for j in range(depth)] + [c]
            return (1, witness, ops)
        if depth + 1 == w:
            continue
        # window feasibility after tentatively taking c
        if have_classes:
            cnt[cid[c]] += 1
            need = w - depth - 1
            total = 0
            for kcl in range(nclasses):
                total += av[kcl, c + 1]
            ok = total >= need
            if ok and require_all:
                for kcl in range(nclasses):
                    if cnt[kcl] == 0 and av[kcl, c + 1] == 0:
                        ok = False
                        break
            if ok:
                for b_ in range(nbands):
                    s = 0
                    a = 0
                    for kcl in range(nclasses):
                        if (bm[b_] >> kcl) & 1:
                            s += cnt[kcl]
                            a += av[kcl, c + 1]
                    nonband = total - a
                    if s >= 1:
                        hi = a if a < need else need
                        if s + hi < bmin[b_]:
                            ok = False
                            break
                    else:
                        if need <= nonband:
                            continue
                        lo = bmin[b_]
                        if need - nonband > lo:
                            lo = need - nonband
                        hi = a if a < need else need
                        if lo > hi:
                            ok = False
                            break
            if not ok:
                cnt[cid[c]] -= 1
                continue
        # normalize the pivot vector in place at this level
        piv = -1
        for j in range(rho):
            if R[depth, c, j] != 0:
                piv = j
                break
        pv = R[depth, c, piv]
        if pv != 1:
            invpv = exp2[qm1 - logt[pv]]
            for j in range(piv, rho):
                x = R[depth, c, j]
                if x != 0:
                    R[depth, c, j] = exp2[logt[invpv] + logt[x]]
        # build the next level's residuals for columns > c
        ops += (<i64> (n - c - 1)) * rho
        if ops > budget:
            return (2, None, ops)
        for y in range(c + 1, n):
            coef = R[depth, y, piv]
            nz = False
            if coef == 0:
                for j in range(rho):
                    x = R[depth, y, j]
                    R[depth + 1, y, j] = x
                    if x != 0:
                        nz = True
            else:
                for j in range(rho):
                    x = R[depth, c, j]
                    if x != 0:
                        x = exp2[logt[coef] + logt[x]]
                        x = negt[x]
                    x = addt[R[depth, y, j], x]
                    R[depth + 1, y, j] = x
                    if x != 0:
                        nz = True
            F[depth + 1, y] = 1 if nz else 0
        chosen[depth] = c
        depth += 1
        ptr[depth] = c + 1
    return (0, None, ops)
