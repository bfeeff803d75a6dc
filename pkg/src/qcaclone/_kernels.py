"""Jitted inner loops for the optimizer.

The objective below is the same arithmetic as the reference path in
evaluate.run_circuit, lowered onto a dense amplitude array so a single
fidelity evaluation costs a few microseconds.  On top of it sits a plain
Nelder-Mead simplex (scipy's coefficient scheme) and a sequential multistart
driver.  Everything here is deterministic given its inputs; the random start
points are drawn by the caller.

compile_foliation in evaluate.py produces the (left, parity, clone) arrays.
`parity` selects which of the two gates acts at each site: 1 takes the first
four parameters, 0 the last four.  For a four-parameter search both branches
read the same gate.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Simplex coefficients and initial step sizes, matching scipy's Nelder-Mead.
RHO = 1.0      # reflection
CHI = 2.0      # expansion
PSI = 0.5      # contraction
SIGMA = 0.5    # shrink
NONZDELT = 0.05
ZDELT = 0.00025


@njit(cache=True)
def gate_entries(theta, a, b, d):
    ct = np.cos(theta)
    st = np.sin(theta)
    ph = np.exp(1j * d)
    v11 = ph * np.exp(1j * a) * ct
    v12 = ph * np.exp(1j * b) * st
    v21 = -ph * np.exp(-1j * b) * st
    v22 = ph * np.exp(-1j * a) * ct
    return v11, v12, v21, v22


@njit(cache=True)
def sector_fidelity(params, left, parity, clone, num_wires, input_index):
    """Average clone fidelity of the compiled circuit at the given angles."""
    v11, v12, v21, v22 = gate_entries(params[0], params[1], params[2], params[3])
    if params.shape[0] >= 8:
        w11, w12, w21, w22 = gate_entries(params[4], params[5], params[6], params[7])
    else:
        w11, w12, w21, w22 = v11, v12, v21, v22
    amps = np.zeros(num_wires, dtype=np.complex128)
    amps[input_index] = 1.0 + 0j
    for g in range(left.shape[0]):
        i = left[g]
        a0 = amps[i]
        a1 = amps[i + 1]
        if parity[g] == 1:
            amps[i] = v22 * a0 + v21 * a1
            amps[i + 1] = v12 * a0 + v11 * a1
        else:
            amps[i] = w22 * a0 + w21 * a1
            amps[i + 1] = w12 * a0 + w11 * a1
    acc = 0.0
    for t in range(clone.shape[0]):
        acc += amps[clone[t]].real
    return 0.5 + 0.5 * acc / clone.shape[0]


@njit(cache=True)
def _neg_fidelity(x, left, parity, clone, num_wires, input_index):
    return -sector_fidelity(x, left, parity, clone, num_wires, input_index)


@njit(cache=True)
def nelder_mead(left, parity, clone, num_wires, input_index, x0, max_iterations, fatol, xatol):
    """Minimize the negated fidelity from one start point.

    Returns (best_x, best_fidelity, evaluations, converged).  Convergence is
    the usual twin test: simplex function spread <= fatol and vertex spread
    <= xatol.
    """
    n = x0.shape[0]
    sim = np.empty((n + 1, n))
    fx = np.empty(n + 1)
    sim[0] = x0
    for i in range(n):
        sim[i + 1] = x0
        if x0[i] != 0.0:
            sim[i + 1, i] = x0[i] * (1.0 + NONZDELT)
        else:
            sim[i + 1, i] = ZDELT
    for i in range(n + 1):
        fx[i] = _neg_fidelity(sim[i], left, parity, clone, num_wires, input_index)
    evals = n + 1

    converged = False
    for _ in range(max_iterations):
        order = np.argsort(fx)
        sim = sim[order]
        fx = fx[order]

        fspread = fx[n] - fx[0]
        xspread = 0.0
        for k in range(1, n + 1):
            for i in range(n):
                diff = abs(sim[k, i] - sim[0, i])
                if diff > xspread:
                    xspread = diff
        if fspread <= fatol and xspread <= xatol:
            converged = True
            break

        centroid = np.zeros(n)
        for k in range(n):
            for i in range(n):
                centroid[i] += sim[k, i]
        centroid /= n

        xr = centroid + RHO * (centroid - sim[n])
        fr = _neg_fidelity(xr, left, parity, clone, num_wires, input_index)
        evals += 1

        shrink = False
        if fr < fx[0]:
            xe = centroid + RHO * CHI * (centroid - sim[n])
            fe = _neg_fidelity(xe, left, parity, clone, num_wires, input_index)
            evals += 1
            if fe < fr:
                sim[n] = xe
                fx[n] = fe
            else:
                sim[n] = xr
                fx[n] = fr
        elif fr < fx[n - 1]:
            sim[n] = xr
            fx[n] = fr
        elif fr < fx[n]:
            xc = centroid + PSI * RHO * (centroid - sim[n])
            fc = _neg_fidelity(xc, left, parity, clone, num_wires, input_index)
            evals += 1
            if fc <= fr:
                sim[n] = xc
                fx[n] = fc
            else:
                shrink = True
        else:
            xcc = centroid - PSI * (centroid - sim[n])
            fcc = _neg_fidelity(xcc, left, parity, clone, num_wires, input_index)
            evals += 1
            if fcc < fx[n]:
                sim[n] = xcc
                fx[n] = fcc
            else:
                shrink = True

        if shrink:
            for k in range(1, n + 1):
                sim[k] = sim[0] + SIGMA * (sim[k] - sim[0])
                fx[k] = _neg_fidelity(sim[k], left, parity, clone, num_wires, input_index)
            evals += n

    order = np.argsort(fx)
    best = sim[order[0]].copy()
    return best, -fx[order[0]], evals, converged


@njit(cache=True)
def multistart_maximize(left, parity, clone, num_wires, input_index, starts, max_iterations, fatol, xatol):
    """Best restart wins; ties keep the earliest start (the deterministic one).

    Returns (best_x, best_fidelity, total_evaluations, best_converged).
    """
    best_x = starts[0].copy()
    best_f = -1.0
    best_conv = False
    total = 0
    for r in range(starts.shape[0]):
        x, f, ev, conv = nelder_mead(
            left, parity, clone, num_wires, input_index,
            starts[r], max_iterations, fatol, xatol,
        )
        total += ev
        if f > best_f:
            best_f = f
            best_x = x
            best_conv = conv
    return best_x, best_f, total, best_conv
