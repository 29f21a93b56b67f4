# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled elementwise kernels.

Fused single-pass loops over flat float64 buffers: each call avoids the
chain of temporaries the numpy fallback allocates. Semantics must match
belnet._kernels_np exactly (same expressions, same evaluation order).
"""

from libc.math cimport sqrt, tanh

import numpy as np


cdef void _tanh_fwd(const double[::1] x, double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = x.shape[0]
    for i in range(n):
        out[i] = tanh(x[i])


cdef void _tanh_bwd(const double[::1] y, const double[::1] g,
                    double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = y.shape[0]
    for i in range(n):
        out[i] = g[i] * (1.0 - y[i] * y[i])


cdef void _relu_fwd(const double[::1] x, double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = x.shape[0]
    for i in range(n):
        out[i] = x[i] if x[i] > 0.0 else 0.0


cdef void _relu_bwd(const double[::1] x, const double[::1] g,
                    double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = x.shape[0]
    for i in range(n):
        out[i] = g[i] if x[i] > 0.0 else 0.0


cdef void _adam(double[::1] p, const double[::1] g, double[::1] m,
                double[::1] v, double c1, double c2, double d1,
                double d2, double lr, double beta1, double beta2,
                double eps) noexcept nogil:
    # divisions by d1/d2 (not reciprocal multiplies) keep results bitwise
    # identical to the numpy fallback
    cdef Py_ssize_t i, n = p.shape[0]
    cdef double m_hat, v_hat
    for i in range(n):
        m[i] = beta1 * m[i] + c1 * g[i]
        v[i] = beta2 * v[i] + c2 * (g[i] * g[i])
        m_hat = m[i] / d1
        v_hat = v[i] / d2
        p[i] -= lr * m_hat / (sqrt(v_hat) + eps)


def _flat(a):
    return np.ascontiguousarray(a, dtype=np.float64).reshape(-1)


def tanh_fwd(x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(x)
    _tanh_fwd(x.reshape(-1), out.reshape(-1))
    return out


def tanh_bwd(y, g):
    y = np.ascontiguousarray(y, dtype=np.float64)
    out = np.empty_like(y)
    _tanh_bwd(y.reshape(-1), _flat(g), out.reshape(-1))
    return out


def relu_fwd(x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(x)
    _relu_fwd(x.reshape(-1), out.reshape(-1))
    return out


def relu_bwd(x, g):
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(x)
    _relu_bwd(x.reshape(-1), _flat(g), out.reshape(-1))
    return out


def adam_update(p, g, m, v, t, lr, beta1, beta2, eps):
    """One bias-corrected Adam step, updating p, m, v in place."""
    _adam(p.reshape(-1), _flat(g), m.reshape(-1), v.reshape(-1),
          1.0 - beta1, 1.0 - beta2,
          1.0 - beta1**t, 1.0 - beta2**t,
          lr, beta1, beta2, eps)
