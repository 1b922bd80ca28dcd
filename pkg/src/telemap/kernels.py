"""Hot numeric kernels for finger chains: FK, Jacobians, and damped
least-squares IK.

Kernels are JIT-compiled with numba when available. Set the environment
variable ``TELEMAP_NO_NUMBA=1`` to force the pure-numpy fallback (same
functions, undecorated); ``benchmarks/bench_kernels.py`` compares the two.

Chain convention (all in the finger's local frame):
    - local x is the straight-finger direction, local z the palm normal
    - optional adduction joint rotates about local z
    - flexion joints rotate about local y; positive flexion curls toward -z
A chain state vector ``q`` is ordered ``[adduction?, flex_0, ..., flex_k]``.
"""

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("TELEMAP_NO_NUMBA", "0").lower() not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        USE_NUMBA = False


def _jit(fn):
    if USE_NUMBA:
        return njit(cache=True)(fn)
    return fn


def _chain_tip(q, lengths, has_add):
    """Fingertip position of a chain state, local frame."""
    nflex = lengths.shape[0]
    off = 1 if has_add else 0
    x = 0.0
    z = 0.0
    phi = 0.0
    for k in range(nflex):
        phi += q[off + k]
        x += lengths[k] * math.cos(phi)
        z -= lengths[k] * math.sin(phi)
    out = np.empty(3)
    if has_add:
        ca = math.cos(q[0])
        sa = math.sin(q[0])
        out[0] = ca * x
        out[1] = sa * x
        out[2] = z
    else:
        out[0] = x
        out[1] = 0.0
        out[2] = z
    return out


def _chain_jacobian(q, lengths, has_add):
    """3 x m position Jacobian, columns ordered like the chain state."""
    nflex = lengths.shape[0]
    off = 1 if has_add else 0
    m = off + nflex
    J = np.zeros((3, m))

    # planar chain partials: dx/dflex_j = -sum_{k>=j} l_k sin(phi_k), etc.
    phi = 0.0
    xs = np.empty(nflex)  # cumulative angle per link
    for k in range(nflex):
        phi += q[off + k]
        xs[k] = phi
    x_planar = 0.0
    for k in range(nflex):
        x_planar += lengths[k] * math.cos(xs[k])

    if has_add:
        ca = math.cos(q[0])
        sa = math.sin(q[0])
    else:
        ca = 1.0
        sa = 0.0

    for j in range(nflex):
        dx = 0.0
        dz = 0.0
        for k in range(j, nflex):
            dx -= lengths[k] * math.sin(xs[k])
            dz -= lengths[k] * math.cos(xs[k])
        J[0, off + j] = ca * dx
        J[1, off + j] = sa * dx
        J[2, off + j] = dz

    if has_add:
        J[0, 0] = -sa * x_planar
        J[1, 0] = ca * x_planar
        # J[2, 0] = 0: adduction never moves the tip along z
    return J


chain_tip = _jit(_chain_tip)
chain_jacobian = _jit(_chain_jacobian)


def _dls_solve(target, q0, lengths, has_add, qmin, qmax, damping, max_iter, tol, step_limit):
    """Damped least-squares IK for one chain, local frame.

    Error is non-increasing across accepted steps: a step that raises the
    error is rejected and retried with larger damping. Returns
    ``(q, iterations, final_error, converged)``.
    """
    m = q0.shape[0]
    q = q0.copy()
    tip = chain_tip(q, lengths, has_add)
    err = math.sqrt(
        (target[0] - tip[0]) ** 2 + (target[1] - tip[1]) ** 2 + (target[2] - tip[2]) ** 2
    )
    iters = 0
    if err <= tol:
        return q, iters, err, True

    # damping adapts across iterations: shrink while steps are accepted so
    # near-singular (straight-finger) targets still converge, grow on
    # rejected steps
    lam = damping
    for _ in range(max_iter):
        e = target - tip
        J = chain_jacobian(q, lengths, has_add)
        accepted = False
        for _retry in range(8):
            JJt = J @ J.T
            for d in range(3):
                JJt[d, d] += lam * lam
            dq = J.T @ np.linalg.solve(JJt, e)
            for j in range(m):
                if dq[j] > step_limit:
                    dq[j] = step_limit
                elif dq[j] < -step_limit:
                    dq[j] = -step_limit
            q_new = q + dq
            for j in range(m):
                if q_new[j] < qmin[j]:
                    q_new[j] = qmin[j]
                elif q_new[j] > qmax[j]:
                    q_new[j] = qmax[j]
            tip_new = chain_tip(q_new, lengths, has_add)
            err_new = math.sqrt(
                (target[0] - tip_new[0]) ** 2
                + (target[1] - tip_new[1]) ** 2
                + (target[2] - tip_new[2]) ** 2
            )
            if err_new < err:
                q = q_new
                tip = tip_new
                err = err_new
                accepted = True
                lam *= 0.5
                if lam < 1e-9:
                    lam = 1e-9
                break
            lam *= 10.0
        iters += 1
        if not accepted:
            break  # stuck (limits or singular): best effort
        if err <= tol:
            return q, iters, err, True

    return q, iters, err, err <= tol


dls_solve = _jit(_dls_solve)

# undecorated fallbacks, kept importable for equivalence tests
chain_tip_py = _chain_tip
chain_jacobian_py = _chain_jacobian
dls_solve_py = _dls_solve


def warmup():
    """Trigger JIT compilation so timed paths see steady-state latency."""
    lengths = np.array([0.05, 0.04])
    q = np.array([0.1, 0.3, 0.2])
    chain_tip(q, lengths, True)
    chain_jacobian(q, lengths, True)
    dls_solve(
        np.array([0.05, 0.0, -0.02]),
        q,
        lengths,
        True,
        np.full(3, -1.6),
        np.full(3, 1.6),
        0.01,
        50,
        1e-6,
        0.2,
    )
