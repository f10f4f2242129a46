"""Hot loops: module arithmetic over ``W_s(F_q) = Z[x]/(p^s, f)``.

Scalars are int64 arrays of length ``r``; a matrix of ``k`` row vectors in
``W_s^d`` is an int64 array of shape ``(k, d, r)``. All entries are kept in
``[0, p^s)``. ``p^s`` must stay below 2**31 so that products fit in int64.

Canonical forms are Howell forms: echelon rows with pivots exactly ``p^v``,
entries above a pivot reduced coefficientwise mod ``p^v``, and the Howell
property (``p^(s-v)`` times a pivot row lies in the span of the rows below),
which makes the form unique and makes sub-coordinate intersections readable
off the rows.
"""
import numpy as np

from ._backend import jit


@jit
def emul(a, b, f, pn):
    r = a.shape[0]
    if r == 1:
        out = np.empty(1, np.int64)
        out[0] = (a[0] * b[0]) % pn
        return out
    prod = np.zeros(2 * r - 1, np.int64)
    for i in range(r):
        if a[i] != 0:
            for j in range(r):
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % pn
    for k in range(2 * r - 2, r - 1, -1):
        c = prod[k]
        if c != 0:
            for i in range(r):
                prod[k - r + i] = (prod[k - r + i] - c * f[i]) % pn
    return prod[:r].copy()


@jit
def epow(a, e, f, pn):
    r = a.shape[0]
    result = np.zeros(r, np.int64)
    result[0] = 1 % pn
    base = a.copy()
    while e > 0:
        if e & 1:
            result = emul(result, base, f, pn)
        base = emul(base, base, f, pn)
        e >>= 1
    return result


@jit
def eval_(a, p, s):
    """Valuation of a scalar; ``s`` for zero."""
    best = s
    for c in a:
        if c != 0:
            v = 0
            while c % p == 0:
                c //= p
                v += 1
            if v < best:
                best = v
    return best


@jit
def unit_inv(a, f, p, s):
    """Inverse of a unit of ``W_s``: invert mod p, then Newton-lift."""
    r = a.shape[0]
    pn = p ** s
    q = p ** r
    y = epow(a % p, q - 2, f, p)
    prec = 1
    while prec < s:
        ay = emul(a, y, f, pn)
        two_minus = (-ay) % pn
        two_minus[0] = (two_minus[0] + 2) % pn
        y = emul(y, two_minus, f, pn)
        prec *= 2
    return y % pn


@jit
def scale_row(row, c, f, pn):
    d = row.shape[0]
    out = np.empty_like(row)
    for j in range(d):
        out[j] = emul(row[j], c, f, pn)
    return out


@jit
def _is_zero_row(row):
    for x in row.ravel():
        if x != 0:
            return False
    return True


@jit
def howell(A, p, s, f):
    """Howell form of the row span of ``A`` over ``W_s``.

    Returns ``(H, pivot_cols, pivot_vals)``.
    """
    k, d, r = A.shape
    pn = p ** s
    H = np.zeros((d, d, r), np.int64)
    pc = np.zeros(d, np.int64)
    pv = np.zeros(d, np.int64)
    if s == 0:
        return H[:0].copy(), pc[:0].copy(), pv[:0].copy()
    cap = k + d
    W = np.zeros((cap, d, r), np.int64)
    active = np.zeros(cap, np.bool_)
    nw = 0
    for i in range(k):
        row = A[i] % pn
        if not _is_zero_row(row):
            W[nw] = row
            active[nw] = True
            nw += 1
    nh = 0
    for c in range(d):
        best = -1
        bv = s
        for i in range(nw):
            if active[i]:
                v = eval_(W[i, c], p, s)
                if v < bv:
                    bv = v
                    best = i
        if best < 0:
            continue
        pbv = p ** bv
        P = W[best].copy()
        active[best] = False
        u = P[c] // pbv
        P = scale_row(P, unit_inv(u, f, p, s), f, pn)
        P[c, :] = 0
        P[c, 0] = pbv % pn
        for i in range(nw):
            if active[i]:
                t = W[i, c] // pbv
                nz = False
                for x in t:
                    if x != 0:
                        nz = True
                if nz:
                    W[i] = (W[i] - scale_row(P, t, f, pn)) % pn
                    if _is_zero_row(W[i]):
                        active[i] = False
        if bv > 0:
            extra = (P * (p ** (s - bv))) % pn
            if not _is_zero_row(extra):
                W[nw] = extra
                active[nw] = True
                nw += 1
        H[nh] = P
        pc[nh] = c
        pv[nh] = bv
        nh += 1
    for i in range(nh):
        c = pc[i]
        pvi = p ** pv[i]
        for j in range(i):
            t = H[j, c] // pvi
            nz = False
            for x in t:
                if x != 0:
                    nz = True
            if nz:
                H[j] = (H[j] - scale_row(H[i], t, f, pn)) % pn
    return H[:nh].copy(), pc[:nh].copy(), pv[:nh].copy()


@jit
def reduce_vec(H, pc, pv, vec, p, s, f):
    """Canonical representative of ``vec`` modulo the span of Howell rows."""
    pn = p ** s
    v = vec % pn
    for i in range(H.shape[0]):
        c = pc[i]
        t = v[c] // (p ** pv[i])
        nz = False
        for x in t:
            if x != 0:
                nz = True
        if nz:
            v = (v - scale_row(H[i], t, f, pn)) % pn
    return v


@jit
def contains_all(H, pc, pv, rows, p, s, f):
    for i in range(rows.shape[0]):
        if not _is_zero_row(reduce_vec(H, pc, pv, rows[i], p, s, f)):
            return False
    return True


@jit
def kernel(A, p, s, f):
    """Howell basis of ``{y in W_s^d : sum_j A[i, j] y_j = 0 for all i}``."""
    k, d, r = A.shape
    B = np.zeros((d, k + d, r), np.int64)
    for j in range(d):
        for i in range(k):
            B[j, i] = A[i, j]
        B[j, k + j, 0] = 1
    H, pc, pv = howell(B, p, s, f)
    cnt = 0
    for i in range(H.shape[0]):
        if pc[i] >= k:
            cnt += 1
    K = np.zeros((cnt, d, r), np.int64)
    t = 0
    for i in range(H.shape[0]):
        if pc[i] >= k:
            K[t] = H[i, k:]
            t += 1
    return howell(K, p, s, f)


@jit
def int_matvec_rows(rows, M, pn):
    """Apply an integer ``d' x d`` matrix to every row vector."""
    k, d, r = rows.shape
    dd = M.shape[0]
    out = np.zeros((k, dd, r), np.int64)
    for t in range(k):
        for i in range(dd):
            for j in range(d):
                if M[i, j] != 0:
                    out[t, i] = (out[t, i] + M[i, j] * rows[t, j]) % pn
    return out


@jit
def sigma_rows(rows, sig, pn):
    """Apply the (Z_p-linear) Frobenius matrix to every scalar entry."""
    k, d, r = rows.shape
    if r == 1:
        return rows.copy()
    out = np.zeros_like(rows)
    for t in range(k):
        for j in range(d):
            for a in range(r):
                acc = 0
                for b in range(r):
                    acc = (acc + sig[a, b] * rows[t, j, b]) % pn
                out[t, j, a] = acc
    return out


@jit
def semilinear(rows, M, sig, pn):
    """``x -> M sigma(x)`` on every row."""
    return int_matvec_rows(sigma_rows(rows, sig, pn), M, pn)


@jit
def same_form(H1, H2):
    if H1.shape != H2.shape:
        return False
    return np.all(H1 == H2)


@jit
def closure(G, Fm, Vm, sig, siginv, p, s, f):
    """Least F- and V-stable submodule containing the rows of ``G``."""
    pn = p ** s
    H, pc, pv = howell(G, p, s, f)
    while True:
        fi = semilinear(H, Fm, sig, pn)
        vi = semilinear(H, Vm, siginv, pn)
        if contains_all(H, pc, pv, fi, p, s, f) and contains_all(H, pc, pv, vi, p, s, f):
            return H, pc, pv
        stack = np.concatenate((H, fi, vi))
        H, pc, pv = howell(stack, p, s, f)


@jit
def is_stable(H, pc, pv, Fm, Vm, sig, siginv, p, s, f):
    pn = p ** s
    fi = semilinear(H, Fm, sig, pn)
    if not contains_all(H, pc, pv, fi, p, s, f):
        return False
    vi = semilinear(H, Vm, siginv, pn)
    return contains_all(H, pc, pv, vi, p, s, f)


@jit
def module_length(pv, s):
    total = 0
    for v in pv:
        total += s - v
    return total


@jit
def colon_p(H, p, s, f):
    """``{v : p v in M}`` as ``(p M^perp)^perp`` for the standard dot product."""
    pn = p ** s
    k, d, r = H.shape
    Kp, _, _ = kernel(H, p, s, f)
    Kp = (Kp * p) % pn
    return kernel(Kp, p, s, f)
