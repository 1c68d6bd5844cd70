"""Pure-Python propagation kernels.

Fallback twin of the compiled ``_kernels`` extension: same signatures, same
summation order, bit-identical results (the extension is compiled with
FP contraction off). Used when the extension is not built, and by the
benchmark as the comparison baseline.

All kernels are synchronous: they read ``rho_in`` and write ``rho_out``
without aliasing, so per-node results do not depend on sweep order.
"""

BACKEND_NAME = "python"


def forward_sweep(indptr, indices, weights, gamma, reward, rho_in, rho_out):
    """rho_out[s] = sum over out-edges (s,t) of w * (reward[t] + gamma*rho_in[t])."""
    for s in range(len(rho_out)):
        acc = 0.0
        for e in range(indptr[s], indptr[s + 1]):
            t = indices[e]
            acc = acc + weights[e] * (reward[t] + gamma * rho_in[t])
        rho_out[s] = acc


def reverse_sweep(in_indptr, in_indices, in_weights, gamma, reward, rho_in, rho_out):
    """rho_out[s] = reward[s] + gamma * sum over in-edges (t,s) of w * rho_in[t]."""
    for s in range(len(rho_out)):
        acc = 0.0
        for e in range(in_indptr[s], in_indptr[s + 1]):
            acc = acc + in_weights[e] * rho_in[in_indices[e]]
        rho_out[s] = reward[s] + gamma * acc


def invest_round(
    out_indptr,
    out_indices,
    out_weights,
    in_indptr,
    in_indices,
    in_weights,
    rho_in,
    credits,
    rho_out,
):
    """One invest/collect round.

    Phase 1 gathers credits over in-edges, phase 2 pays them back over
    out-edges; both phases read the pre-round ``rho_in`` snapshot only.
    """
    n = len(rho_out)
    for s in range(n):
        acc = 0.0
        for e in range(in_indptr[s], in_indptr[s + 1]):
            acc = acc + in_weights[e] * rho_in[in_indices[e]]
        credits[s] = acc
    for s in range(n):
        acc = rho_in[s]
        for e in range(out_indptr[s], out_indptr[s + 1]):
            acc = acc + out_weights[e] * credits[out_indices[e]]
        rho_out[s] = acc


def sup_diff(a, b):
    """max_i |a[i] - b[i]|"""
    best = 0.0
    for i in range(len(a)):
        d = a[i] - b[i]
        if d < 0.0:
            d = -d
        if d > best:
            best = d
    return best


def sup_abs(a):
    """max_i |a[i]|"""
    best = 0.0
    for i in range(len(a)):
        d = a[i]
        if d < 0.0:
            d = -d
        if d > best:
            best = d
    return best
