# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled propagation kernels over CSR arrays.

Must stay line-for-line equivalent to ``_kernels_py`` (same accumulation
order) so the two backends agree bit-for-bit; the build disables FP
contraction for the same reason.
"""

BACKEND_NAME = "compiled"


def forward_sweep(const long long[::1] indptr, const long long[::1] indices,
                  const double[::1] weights, double gamma,
                  const double[::1] reward, const double[::1] rho_in,
                  double[::1] rho_out):
    """rho_out[s] = sum over out-edges (s,t) of w * (reward[t] + gamma*rho_in[t])."""
    cdef Py_ssize_t s, e, t
    cdef double acc
    with nogil:
        for s in range(rho_out.shape[0]):
            acc = 0.0
            for e in range(indptr[s], indptr[s + 1]):
                t = indices[e]
                acc = acc + weights[e] * (reward[t] + gamma * rho_in[t])
            rho_out[s] = acc


def reverse_sweep(const long long[::1] in_indptr, const long long[::1] in_indices,
                  const double[::1] in_weights, double gamma,
                  const double[::1] reward, const double[::1] rho_in,
                  double[::1] rho_out):
    """rho_out[s] = reward[s] + gamma * sum over in-edges (t,s) of w * rho_in[t]."""
    cdef Py_ssize_t s, e
    cdef double acc
    with nogil:
        for s in range(rho_out.shape[0]):
            acc = 0.0
            for e in range(in_indptr[s], in_indptr[s + 1]):
                acc = acc + in_weights[e] * rho_in[in_indices[e]]
            rho_out[s] = reward[s] + gamma * acc


def invest_round(const long long[::1] out_indptr, const long long[::1] out_indices,
                 const double[::1] out_weights,
                 const long long[::1] in_indptr, const long long[::1] in_indices,
                 const double[::1] in_weights,
                 const double[::1] rho_in, double[::1] credits,
                 double[::1] rho_out):
    """One invest/collect round; both phases read the pre-round snapshot only."""
    cdef Py_ssize_t s, e, n = rho_out.shape[0]
    cdef double acc
    with nogil:
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


def sup_diff(const double[::1] a, const double[::1] b):
    """max_i |a[i] - b[i]|"""
    cdef Py_ssize_t i
    cdef double d, best = 0.0
    with nogil:
        for i in range(a.shape[0]):
            d = a[i] - b[i]
            if d < 0.0:
                d = -d
            if d > best:
                best = d
    return best


def sup_abs(const double[::1] a):
    """max_i |a[i]|"""
    cdef Py_ssize_t i
    cdef double d, best = 0.0
    with nogil:
        for i in range(a.shape[0]):
            d = a[i]
            if d < 0.0:
                d = -d
            if d > best:
                best = d
    return best
