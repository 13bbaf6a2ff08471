"""Compiled inner loops: covariance-update coordinate sweeps and the polar step.

The fast solver path never touches the n-row data inside a sweep. It works on
Gram quantities (x'x, x'y, column sums) and maintains

    t[:, j] = x'x @ b[:, j]          (per-component products)
    q       = x'x @ (b @ gamma)      (composite product)

incrementally, so visiting a coordinate costs O(1) and changing one costs
O(p). Work therefore scales with the active set; the returned multiply-add
counters instrument exactly those incremental updates and the active-set dot
products.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def gram_schmidt_fill(basis, count):
    """First `count` canonical basis vectors orthonormalized against `basis`.

    `basis` must have orthonormal columns. Candidates e_0, e_1, ... are
    projected out twice (for stability) and accepted while the residual norm
    stays above 1e-8; the selection is deterministic.
    """
    dim, r = basis.shape
    out = np.zeros((dim, count))
    found = 0
    for cand in range(dim):
        if found == count:
            break
        v = np.zeros(dim)
        v[cand] = 1.0
        for _ in range(2):
            for c in range(r):
                dot = 0.0
                for i in range(dim):
                    dot += basis[i, c] * v[i]
                for i in range(dim):
                    v[i] -= dot * basis[i, c]
            for c in range(found):
                dot = 0.0
                for i in range(dim):
                    dot += out[i, c] * v[i]
                for i in range(dim):
                    v[i] -= dot * out[i, c]
        nrm = np.sqrt(np.dot(v, v))
        if nrm > 1e-8:
            for i in range(dim):
                out[i, found] = v[i] / nrm
            found += 1
    if found < count:
        raise ValueError("could not complete an orthonormal basis")
    return out


@njit(cache=True, nogil=True)
def polar_orthonormal(m):
    """Column-orthonormal polar factor of the p x k matrix m (p >= k).

    Maximizes trace(a' m) over a with orthonormal columns. Singular values
    below 1e-12 of the largest are treated as zero; the corresponding null
    directions are completed by Gram-Schmidt against canonical basis vectors,
    so degenerate inputs (including m == 0) give a reproducible result.
    """
    p, k = m.shape
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    r = 0
    if s.shape[0] > 0 and s[0] > 0.0:
        thr = 1e-12 * s[0]
        for i in range(s.shape[0]):
            if s[i] > thr:
                r += 1
    if r == k:
        return np.ascontiguousarray(u @ vt)
    ug = np.ascontiguousarray(u[:, :r])
    vg = np.ascontiguousarray(vt[:r, :].T)  # k x r
    ufill = gram_schmidt_fill(ug, k - r)
    vfill = gram_schmidt_fill(vg, k - r)
    out = ufill @ vfill.T
    if r > 0:
        out = out + ug @ vg.T
    return np.ascontiguousarray(out)


@njit(cache=True, nogil=True)
def beta_step(gram, xty, cs, ga, b, gamma, gamma0, q, t, weights,
              w, zeta, lam_beta, l, j):
    """One loading-coordinate update at (l, j); returns (delta, madds, skipped).

    Uses the covariance identities: the inner products of column l with the
    regression and reconstruction residuals are read off q and t instead of
    being recomputed over samples. Infinite weights keep the coordinate at
    zero without evaluating the numerator; delta == 0 leaves every cache
    untouched.
    """
    wlj = weights[l, j]
    if wlj == np.inf:
        return 0.0, 0, 0
    bcur = b[l, j]
    gll = gram[l, l]
    gj = gamma[j]
    den = ((1.0 - w) * gj * gj + w) * gll + lam_beta * zeta
    if den <= 0.0:
        return 0.0, 0, 1
    dot_reg = xty[l] - gamma0 * cs[l] - q[l] + gj * bcur * gll
    dot_rec = ga[l, j] - t[l, j] + bcur * gll
    num = (1.0 - w) * gj * dot_reg + w * dot_rec
    thr = 0.5 * lam_beta * wlj * (1.0 - zeta)
    if num > thr:
        bnew = (num - thr) / den
    elif num < -thr:
        bnew = (num + thr) / den
    else:
        bnew = 0.0
    delta = bnew - bcur
    if delta == 0.0:
        return 0.0, 0, 0
    b[l, j] = bnew
    p = b.shape[0]
    madds = p
    for i in range(p):
        t[i, j] += delta * gram[i, l]
    if gj != 0.0:
        gd = gj * delta
        for i in range(p):
            q[i] += gd * gram[i, l]
        madds += p
    return delta, madds, 0


@njit(cache=True, nogil=True)
def gamma_step(gram, xty, cs, b, gamma, gamma0, q, t, w, lam_gamma, j):
    """One component-coefficient update at j; returns (delta, madds).

    Score inner products come from active-set dots against t (x'x b), never
    from the samples. A dead component (zero score vector) gets coefficient
    exactly zero without any division.
    """
    p, k = b.shape
    madds = 0
    sq = 0.0
    ydot = 0.0
    csdot = 0.0
    for l in range(p):
        blj = b[l, j]
        if blj != 0.0:
            sq += blj * t[l, j]
            ydot += blj * xty[l]
            csdot += blj * cs[l]
            madds += 3
    gcur = gamma[j]
    if sq <= 0.0:
        if gcur != 0.0:
            gamma[j] = 0.0
            for i in range(p):
                q[i] -= gcur * t[i, j]
            madds += p
            return -gcur, madds
        return 0.0, madds
    sdot = ydot - gamma0 * csdot
    for jj in range(k):
        gjj = gamma[jj]
        if gjj != 0.0:
            acc = 0.0
            for l in range(p):
                bl = b[l, jj]
                if bl != 0.0:
                    acc += bl * t[l, j]
                    madds += 1
            sdot -= gjj * acc
    num = (1.0 - w) * (sdot + gcur * sq)
    thr = 0.5 * lam_gamma
    if num > thr:
        gnew = (num - thr) / ((1.0 - w) * sq)
    elif num < -thr:
        gnew = (num + thr) / ((1.0 - w) * sq)
    else:
        gnew = 0.0
    delta = gnew - gcur
    if delta == 0.0:
        return 0.0, madds
    gamma[j] = gnew
    for i in range(p):
        q[i] += delta * t[i, j]
    madds += p
    return delta, madds


@njit(cache=True, nogil=True)
def objective_gram(gram, xty, cs, ysum, ysq, nobs, b, gamma, gamma0, a, t, q,
                   weights, w, zeta, lam_beta, lam_gamma):
    """Objective value from Gram quantities; t and q must be current."""
    p, k = b.shape
    xi = b @ gamma
    rss = ysq - 2.0 * gamma0 * ysum + nobs * gamma0 * gamma0
    for l in range(p):
        rss += xi[l] * (q[l] - 2.0 * xty[l] + 2.0 * gamma0 * cs[l])
    trg = 0.0
    for l in range(p):
        trg += gram[l, l]
    tr_at = 0.0
    tr_bt = 0.0
    l1 = 0.0
    l2 = 0.0
    g1 = 0.0
    for j in range(k):
        for l in range(p):
            tr_at += a[l, j] * t[l, j]
            blj = b[l, j]
            tr_bt += blj * t[l, j]
            if blj != 0.0:
                l1 += weights[l, j] * abs(blj)
            l2 += blj * blj
        g1 += abs(gamma[j])
    recon = trg - 2.0 * tr_at + tr_bt
    return ((1.0 - w) * rss + w * recon
            + lam_beta * (1.0 - zeta) * l1 + lam_beta * zeta * l2
            + lam_gamma * g1)


@njit(cache=True, nogil=True)
def fit_loop(gram, xty, cs, ysum, ysq, nobs, b, gamma, a, gamma0, weights,
             w, zeta, lam_beta, lam_gamma, max_sweeps, tol, trace):
    """Full blockwise descent; mutates b, gamma, a in place.

    Sweep order: all loading coordinates (column-major), all coefficients,
    polar step for a, intercept. Returns (sweeps_used, converged, madds,
    skips, bad, gamma0) where bad encodes a non-finite block (0 = none,
    1 = loading, 2 = coefficient, 3 = objective).
    """
    p, k = b.shape
    t = gram @ b
    q = t @ gamma
    ga = gram @ a
    madds = 0
    skips = 0
    trace[0] = objective_gram(gram, xty, cs, ysum, ysq, nobs, b, gamma,
                              gamma0, a, t, q, weights, w, zeta,
                              lam_beta, lam_gamma)
    sweeps = 0
    converged = False
    for sweep in range(1, max_sweeps + 1):
        sweeps = sweep
        for j in range(k):
            for l in range(p):
                _d, m_, s_ = beta_step(gram, xty, cs, ga, b, gamma, gamma0,
                                       q, t, weights, w, zeta, lam_beta, l, j)
                madds += m_
                skips += s_
                if not np.isfinite(b[l, j]):
                    return sweeps, converged, madds, skips, 1, gamma0
        for j in range(k):
            _d, m_ = gamma_step(gram, xty, cs, b, gamma, gamma0, q, t,
                                w, lam_gamma, j)
            madds += m_
            if not np.isfinite(gamma[j]):
                return sweeps, converged, madds, skips, 2, gamma0
        a[:, :] = polar_orthonormal(gram @ b)
        ga = gram @ a
        xi_cs = 0.0
        for l in range(p):
            acc = 0.0
            for j in range(k):
                acc += b[l, j] * gamma[j]
            xi_cs += cs[l] * acc
        gamma0 = (ysum - xi_cs) / nobs
        # refresh from scratch each sweep so incremental drift cannot build up
        t = gram @ b
        q = t @ gamma
        obj = objective_gram(gram, xty, cs, ysum, ysq, nobs, b, gamma,
                             gamma0, a, t, q, weights, w, zeta,
                             lam_beta, lam_gamma)
        if not np.isfinite(obj):
            return sweeps, converged, madds, skips, 3, gamma0
        trace[sweep] = obj
        prev = trace[sweep - 1]
        if abs(obj - prev) <= tol * (1.0 + abs(prev)):
            converged = True
            break
    return sweeps, converged, madds, skips, 0, gamma0
