"""Numpy reference implementations of the hot elementwise kernels.

These are the fallback used when the compiled extension is unavailable;
they also serve as the behavioural oracle for the Cython versions.
"""

import numpy as np


def tanh_fwd(x):
    return np.tanh(x)


def tanh_bwd(y, g):
    # y is the cached forward output tanh(x)
    return g * (1.0 - y * y)


def relu_fwd(x):
    return np.maximum(x, 0.0)


def relu_bwd(x, g):
    # subgradient at 0 is 0: strict inequality
    return np.where(x > 0.0, g, 0.0)


def adam_update(p, g, m, v, t, lr, beta1, beta2, eps):
    """One bias-corrected Adam step, updating p, m, v in place."""
    m *= beta1
    m += (1.0 - beta1) * g
    v *= beta2
    v += (1.0 - beta2) * (g * g)
    m_hat = m / (1.0 - beta1**t)
    v_hat = v / (1.0 - beta2**t)
    p -= lr * m_hat / (np.sqrt(v_hat) + eps)
