"""Pure-Python/numpy reference implementation of the search kernels.

Semantics are identical to the compiled backend (`_fastcore`); this module
is the fallback selected at import when the extension is unavailable, and
the correctness oracle the compiled kernels are tested against.

Status codes shared by both backends:
    0  search completed, nothing found
    1  dependent set / codeword found
    2  operation budget exhausted
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def enum_min_weight(gen, field, known_lower=1, budget=None):
    """Minimum weight over all nonzero codewords of the row space of ``gen``.

    Enumerates one representative per projective message class (first
    nonzero message digit equal to 1) in message-lex order; the witness is
    therefore the lexicographically first minimiser.  Returns
    (status, weight, message, codeword, ops).
    """
    k, n = gen.shape
    q = field.q
    if k == 0:
        return (0, None, None, None, 0)
    budget = budget if budget is not None else (1 << 62)
    state = {"ops": 0, "best_w": None, "best_msg": None, "best_cw": None}
    gen = gen.astype(np.uint16)
    msg = [0] * k

    def rec(i, partial, started):
        if state["best_w"] is not None and state["best_w"] <= known_lower:
            return 1
        state["ops"] += n
        if state["ops"] > budget:
            return 2
        if i == k:
            if started:
                w = int(np.count_nonzero(partial))
                if state["best_w"] is None or w < state["best_w"]:
                    state["best_w"] = w
                    state["best_msg"] = tuple(msg)
                    state["best_cw"] = tuple(int(x) for x in partial)
            return 0
        values = (0, 1) if not started else range(q)
        for val in values:
            msg[i] = val
            if val == 0:
                rc = rec(i + 1, partial, started)
            else:
                rc = rec(i + 1, field.addv(partial, field.scalev(val, gen[i])), True)
            if rc:
                msg[i] = 0
                return rc
        msg[i] = 0
        return 0

    rc = rec(0, np.zeros(n, dtype=np.uint16), False)
    if rc == 2:
        return (2, state["best_w"], state["best_msg"], state["best_cw"], state["ops"])
    status = 1 if state["best_w"] is not None else 0
    return (status, state["best_w"], state["best_msg"], state["best_cw"], state["ops"])


def dependent_dfs(
    cols_t,
    w,
    field,
    class_ids=None,
    band_masks=None,
    band_mins=None,
    require_all=False,
    budget=None,
):
    """Search for a dependent subset of exactly ``w`` columns, lex order.

    ``cols_t`` has one column of the parity matrix per row (shape (n, rho)).
    With ``class_ids``/bands the search is restricted (by pruning only) to
    subsets that can still reach a terminal satisfying every band's
    "count is 0 or >= minimum" condition and, if ``require_all``, touching
    every class; any genuinely dependent subset discovered along the way is
    reported regardless of the window.  Returns (status, witness, ops) with
    the witness as 0-based column indices.
    """
    n, rho = cols_t.shape
    if w < 1 or w > n:
        return (0, None, 0)
    budget = budget if budget is not None else (1 << 62)
    nclasses = 0
    if class_ids is not None:
        class_ids = np.asarray(class_ids, dtype=np.int64)
        nclasses = int(class_ids.max()) + 1 if n else 0
        avail = np.zeros((nclasses, n + 1), dtype=np.int64)
        for i in range(n - 1, -1, -1):
            avail[:, i] = avail[:, i + 1]
            avail[class_ids[i], i] += 1
        band_masks = [int(x) for x in band_masks] if band_masks is not None else []
        band_mins = [int(x) for x in band_mins] if band_mins is not None else []
    cnt = [0] * nclasses
    state = {"ops": 0}

    def feasible(next_idx, need):
        if not nclasses:
            return True
        total_avail = int(avail[:, next_idx].sum())
        if total_avail < need:
            return False
        if require_all:
            for kcl in range(nclasses):
                if cnt[kcl] == 0 and avail[kcl, next_idx] == 0:
                    return False
        for mask, mmin in zip(band_masks, band_mins):
            s = 0
            a = 0
            for kcl in range(nclasses):
                if (mask >> kcl) & 1:
                    s += cnt[kcl]
                    a += int(avail[kcl, next_idx])
            nonband = total_avail - a
            if s >= 1:
                if s + min(a, need) < mmin:
                    return False
            else:
                stay = need <= nonband
                lo = max(mmin, need - nonband)
                jump = lo <= min(a, need)
                if not (stay or jump):
                    return False
        return True

    chosen: list[int] = []

    def rec(start, depth, resid):
        # resid maps absolute column index -> vector reduced against the
        # current basis; only indices >= start are consulted.
        for c in range(start, n - (w - depth) + 1):
            v = resid[c]
            if not v.any():
                return (1, chosen + [c])
            if depth + 1 == w:
                continue
            if nclasses:
                cnt[class_ids[c]] += 1
            if not feasible(c + 1, w - depth - 1):
                if nclasses:
                    cnt[class_ids[c]] -= 1
                continue
            piv = int(np.nonzero(v)[0][0])
            pv = int(v[piv])
            bvec = field.scalev(field.inv(pv), v) if pv != 1 else v
            newresid = resid.copy()
            tail = np.arange(c + 1, n)
            if tail.size:
                coeffs = resid[tail, piv].astype(np.uint16)
                nz = np.nonzero(coeffs)[0]
                if nz.size:
                    rows = tail[nz]
                    prod = field.mulv(coeffs[nz][:, None], bvec[None, :])
                    newresid[rows] = field.addv(resid[rows], field.negv(prod))
            state["ops"] += (n - c - 1) * rho
            if state["ops"] > budget:
                if nclasses:
                    cnt[class_ids[c]] -= 1
                return (2, None)
            chosen.append(c)
            rc = rec(c + 1, depth + 1, newresid)
            chosen.pop()
            if nclasses:
                cnt[class_ids[c]] -= 1
            if rc[0]:
                return rc
        return (0, None)

    if not feasible(0, w):
        return (0, None, 0)
    status, witness = rec(0, 0, cols_t.astype(np.uint16).copy())
    return (status, witness, state["ops"])
