"""Reverse-mode automatic differentiation over dense float64 arrays.

Define-by-run: a :class:`Tape` is rebuilt for every forward pass. Each
tracked operation appends one node (op kind, parent node ids, cached value,
vjp closure); :func:`backward` replays the nodes in strict reverse creation
order, so gradients are deterministic and bitwise reproducible. Operations
where no input is tracked evaluate eagerly and record nothing.

Shapes are kept simple on purpose: matmul and transpose require 2-D
operands, elementwise ops require identical shapes, and the only broadcast
allowed is the bias add (matrix plus a one-row or one-column matrix).
"""

from __future__ import annotations

import numpy as np

from . import kernels as _k
from .errors import ContractError, DimensionError


def _as_array(value) -> np.ndarray:
    return np.asarray(value, dtype=np.float64)


class _Node:
    __slots__ = ("op", "value", "parents", "vjp")

    def __init__(self, op, value, parents, vjp):
        self.op = op
        self.value = value
        self.parents = parents  # node ids, None for untracked operands
        self.vjp = vjp  # None marks a leaf


class Tape:
    """Append-only record of one forward pass."""

    def __init__(self):
        self.nodes: list[_Node] = []

    def leaf(self, value) -> "Tensor":
        """Register a tracked leaf (a trainable parameter)."""
        arr = _as_array(value)
        return Tensor(arr, self, self._push("leaf", arr, (), None))

    def _push(self, op, value, parents, vjp) -> int:
        self.nodes.append(_Node(op, value, parents, vjp))
        return len(self.nodes) - 1


class Tensor:
    """Dense float64 array, optionally tracked on a tape."""

    __slots__ = ("value", "tape", "node")

    def __init__(self, value, tape: Tape | None = None, node: int | None = None):
        self.value = _as_array(value)
        self.tape = tape
        self.node = node

    @property
    def tracked(self) -> bool:
        return self.tape is not None

    @property
    def shape(self):
        return self.value.shape

    def __repr__(self):
        tag = f", node={self.node}" if self.tracked else ""
        return f"Tensor(shape={self.value.shape}{tag})"

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self):
        return scale(self, -1.0)

    def T(self):
        return transpose(self)


def _lift(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


def _record(op, value, inputs, vjp) -> Tensor:
    tapes = {t.tape for t in inputs if t.tracked}
    if not tapes:
        return Tensor(value)
    if len(tapes) > 1:
        raise ContractError(f"{op}: operands live on different tapes")
    tape = tapes.pop()
    parents = tuple(t.node if t.tape is tape else None for t in inputs)
    return Tensor(value, tape, tape._push(op, value, parents, vjp))


def matmul(a, b) -> Tensor:
    a, b = _lift(a), _lift(b)
    av, bv = a.value, b.value
    if av.ndim != 2 or bv.ndim != 2 or av.shape[1] != bv.shape[0]:
        raise DimensionError(f"matmul: shapes {av.shape} and {bv.shape} do not align")

    def vjp(g):
        return g @ bv.T, av.T @ g

    return _record("matmul", av @ bv, (a, b), vjp)


def add(a, b) -> Tensor:
    a, b = _lift(a), _lift(b)
    av, bv = a.value, b.value
    if av.shape == bv.shape:

        def vjp(g):
            return g, g

    elif _is_bias_pair(av, bv):
        axis = 0 if bv.shape[0] == 1 else 1

        def vjp(g):
            return g, g.sum(axis=axis, keepdims=True)

    elif _is_bias_pair(bv, av):
        axis = 0 if av.shape[0] == 1 else 1

        def vjp(g):
            return g.sum(axis=axis, keepdims=True), g

    else:
        raise DimensionError(f"add: shapes {av.shape} and {bv.shape} do not match")
    return _record("add", av + bv, (a, b), vjp)


def _is_bias_pair(mat, bias) -> bool:
    # the one permitted broadcast: matrix + one-row or one-column matrix
    if mat.ndim != 2 or bias.ndim != 2:
        return False
    return (bias.shape == (1, mat.shape[1]) and mat.shape[0] != 1) or (
        bias.shape == (mat.shape[0], 1) and mat.shape[1] != 1
    )


def sub(a, b) -> Tensor:
    a, b = _lift(a), _lift(b)
    av, bv = a.value, b.value
    if av.shape != bv.shape:
        raise DimensionError(f"sub: shapes {av.shape} and {bv.shape} do not match")

    def vjp(g):
        return g, -g

    return _record("sub", av - bv, (a, b), vjp)


def mul(a, b) -> Tensor:
    a, b = _lift(a), _lift(b)
    av, bv = a.value, b.value
    if av.shape != bv.shape:
        raise DimensionError(f"mul: shapes {av.shape} and {bv.shape} do not match")

    def vjp(g):
        return g * bv, g * av

    return _record("mul", av * bv, (a, b), vjp)


def scale(a, c: float) -> Tensor:
    a = _lift(a)
    c = float(c)

    def vjp(g):
        return (c * g,)

    return _record("scale", c * a.value, (a,), vjp)


def tanh(a) -> Tensor:
    a = _lift(a)
    y = _k.tanh_fwd(a.value)

    def vjp(g):
        return (_k.tanh_bwd(y, g),)

    return _record("tanh", y, (a,), vjp)


def relu(a) -> Tensor:
    a = _lift(a)
    av = a.value

    def vjp(g):
        return (_k.relu_bwd(av, g),)

    return _record("relu", _k.relu_fwd(av), (a,), vjp)


def tsum(a, axis: int | None = None) -> Tensor:
    """Sum to a scalar (shape (1, 1)) or along one axis (keepdims)."""
    a = _lift(a)
    av = a.value
    if axis is None:
        out = av.sum().reshape(1, 1)

        def vjp(g):
            return (np.full(av.shape, g.reshape(-1)[0]),)

    else:
        if av.ndim != 2 or axis not in (0, 1):
            raise DimensionError(f"tsum: axis {axis} invalid for shape {av.shape}")
        out = av.sum(axis=axis, keepdims=True)

        def vjp(g):
            return (np.broadcast_to(g, av.shape).copy(),)

    return _record("sum", out, (a,), vjp)


def concat(parts, axis: int = 1) -> Tensor:
    parts = [_lift(p) for p in parts]
    if not parts:
        raise ContractError("concat: empty input")
    if axis not in (0, 1) or any(p.value.ndim != 2 for p in parts):
        raise DimensionError("concat: needs 2-D parts and axis 0 or 1")
    sizes = [p.value.shape[axis] for p in parts]
    offsets = np.cumsum([0] + sizes)

    def vjp(g):
        if axis == 1:
            return tuple(g[:, offsets[i] : offsets[i + 1]] for i in range(len(sizes)))
        return tuple(g[offsets[i] : offsets[i + 1], :] for i in range(len(sizes)))

    return _record("concat", np.concatenate([p.value for p in parts], axis=axis), tuple(parts), vjp)


def transpose(a) -> Tensor:
    a = _lift(a)
    if a.value.ndim != 2:
        raise DimensionError(f"transpose: needs a 2-D operand, got {a.value.shape}")

    def vjp(g):
        return (g.T,)

    return _record("transpose", a.value.T, (a,), vjp)


def backward(tape: Tape, loss: Tensor) -> dict[int, np.ndarray]:
    """Gradients of a scalar loss with respect to every node on the tape.

    Returns a map {node id -> adjoint array}. Tracked leaves that the loss
    never touches get exact-zero gradients.
    """
    if not isinstance(loss, Tensor) or loss.tape is not tape or loss.node is None:
        raise ContractError("backward: loss is not tracked on this tape")
    if loss.value.size != 1:
        raise ContractError(f"backward: loss must be scalar, got shape {loss.value.shape}")

    grads: list[np.ndarray | None] = [None] * len(tape.nodes)
    grads[loss.node] = np.ones_like(loss.value)
    for nid in range(loss.node, -1, -1):
        g = grads[nid]
        node = tape.nodes[nid]
        if g is None or node.vjp is None:
            continue
        for pid, pg in zip(node.parents, node.vjp(g)):
            if pid is None:
                continue
            grads[pid] = pg if grads[pid] is None else grads[pid] + pg

    out: dict[int, np.ndarray] = {}
    for nid, node in enumerate(tape.nodes):
        if node.vjp is None:
            out[nid] = grads[nid] if grads[nid] is not None else np.zeros_like(node.value)
        elif grads[nid] is not None:
            out[nid] = grads[nid]
    return out
