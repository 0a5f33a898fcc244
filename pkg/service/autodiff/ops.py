""" 등록된 미분 연산

각 연산은 forward 값을 계산하고, 출력 기울기로부터 부모 기울기를 돌려주는 backward 클로저를 남긴다.
브로드캐스팅되는 이항 연산은 _unbroadcast 로 부모 shape 에 맞춰 기울기를 줄인다.
"""

import numpy as np
from scipy import sparse

from service.autodiff.tensor import Tensor, lift, make_result


def _unbroadcast(grad, shape):
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _swap(array):
    return np.swapaxes(array, -1, -2)


# ----------------------------------------------------------------------------------------------------------------------
# 원소별 연산
# ----------------------------------------------------------------------------------------------------------------------
def add(a, b):
    a, b = lift(a), lift(b)

    def backward(grad):
        return _unbroadcast(grad, a.shape), _unbroadcast(grad, b.shape)
    return make_result(a.data + b.data, (a, b), backward)


def subtract(a, b):
    a, b = lift(a), lift(b)

    def backward(grad):
        return _unbroadcast(grad, a.shape), -_unbroadcast(grad, b.shape)
    return make_result(a.data - b.data, (a, b), backward)


def multiply(a, b):
    a, b = lift(a), lift(b)

    def backward(grad):
        return _unbroadcast(grad * b.data, a.shape), _unbroadcast(grad * a.data, b.shape)
    return make_result(a.data * b.data, (a, b), backward)


def scale(a, factor):
    a = lift(a)
    factor = float(factor)

    def backward(grad):
        return (grad * factor,)
    return make_result(a.data * factor, (a,), backward)


def negate(a):
    return scale(a, -1.0)


def relu(a):
    a = lift(a)
    mask = a.data > 0

    def backward(grad):
        return (grad * mask,)
    return make_result(a.data * mask, (a,), backward)


def exp(a):
    a = lift(a)
    out = np.exp(a.data)

    def backward(grad):
        return (grad * out,)
    return make_result(out, (a,), backward)


def log(a):
    a = lift(a)

    def backward(grad):
        return (grad / a.data,)
    return make_result(np.log(a.data), (a,), backward)


def softplus(a):
    a = lift(a)
    out = np.logaddexp(0.0, a.data)

    def backward(grad):
        # softplus' = sigmoid
        return (grad * np.exp(a.data - out),)
    return make_result(out, (a,), backward)


# ----------------------------------------------------------------------------------------------------------------------
# 선형대수
# ----------------------------------------------------------------------------------------------------------------------
def matmul(a, b):
    """ 2차원 또는 배치(..., m, n) 행렬곱 """
    a, b = lift(a), lift(b)

    def backward(grad):
        grad_a = _unbroadcast(grad @ _swap(b.data), a.shape)
        grad_b = _unbroadcast(_swap(a.data) @ grad, b.shape)
        return grad_a, grad_b
    return make_result(a.data @ b.data, (a, b), backward)


def sparse_matmul(matrix, x):
    """ 상수 희소 행렬 S 와 dense 텐서의 곱 S @ x """
    x = lift(x)
    matrix = sparse.csr_matrix(matrix)
    transposed = matrix.T.tocsr()

    def backward(grad):
        return (np.asarray(transposed @ grad),)
    return make_result(np.asarray(matrix @ x.data), (x,), backward)


def transpose(a):
    """ 마지막 두 축 전치 (배치 3×3 포함) """
    a = lift(a)

    def backward(grad):
        return (_swap(grad),)
    return make_result(_swap(a.data), (a,), backward)


def frobenius_sq(a):
    a = lift(a)

    def backward(grad):
        return (2.0 * grad * a.data,)
    return make_result(np.sum(a.data * a.data), (a,), backward)


# ----------------------------------------------------------------------------------------------------------------------
# 축소 연산
# ----------------------------------------------------------------------------------------------------------------------
def reduce_sum(a, axis=None, keepdims=False):
    a = lift(a)

    def backward(grad):
        if axis is not None and not keepdims:
            grad = np.expand_dims(grad, axis)
        return (np.broadcast_to(grad, a.shape).copy(),)
    return make_result(np.sum(a.data, axis=axis, keepdims=keepdims), (a,), backward)


def mean(a, axis=None, keepdims=False):
    a = lift(a)
    count = a.size if axis is None else a.shape[axis]
    return scale(reduce_sum(a, axis=axis, keepdims=keepdims), 1.0 / count)


def reduce_max(a, axis=0):
    """ 축 방향 최대값. 동률이면 가장 낮은 인덱스로 기울기를 보낸다. """
    a = lift(a)
    argmax = np.expand_dims(np.argmax(a.data, axis=axis), axis)
    out = np.take_along_axis(a.data, argmax, axis=axis)

    def backward(grad):
        full = np.zeros_like(a.data)
        np.put_along_axis(full, argmax, np.expand_dims(grad, axis), axis=axis)
        return (full,)
    return make_result(np.squeeze(out, axis=axis), (a,), backward)


def softmax_rows(a, temperature=1.0):
    """ 마지막 축 softmax(a / temperature) """
    a = lift(a)
    logits = a.data / temperature
    logits = logits - logits.max(axis=-1, keepdims=True)
    weights = np.exp(logits)
    out = weights / weights.sum(axis=-1, keepdims=True)

    def backward(grad):
        inner = np.sum(grad * out, axis=-1, keepdims=True)
        return (out * (grad - inner) / temperature,)
    return make_result(out, (a,), backward)


def normalize_rows(a, eps=1e-12):
    """ 마지막 축 L2 정규화 a / max(‖a‖, eps) """
    a = lift(a)
    norms = np.maximum(np.linalg.norm(a.data, axis=-1, keepdims=True), eps)
    out = a.data / norms

    def backward(grad):
        inner = np.sum(grad * out, axis=-1, keepdims=True)
        return ((grad - out * inner) / norms,)
    return make_result(out, (a,), backward)


# ----------------------------------------------------------------------------------------------------------------------
# 형태 / 인덱싱
# ----------------------------------------------------------------------------------------------------------------------
def concatenate(tensors, axis=-1):
    tensors = [lift(t) for t in tensors]
    sizes = [t.shape[axis] for t in tensors]
    splits = np.cumsum(sizes)[:-1]

    def backward(grad):
        return tuple(np.split(grad, splits, axis=axis))
    return make_result(np.concatenate([t.data for t in tensors], axis=axis), tuple(tensors), backward)


def reshape(a, shape):
    a = lift(a)

    def backward(grad):
        return (grad.reshape(a.shape),)
    return make_result(a.data.reshape(shape), (a,), backward)


def broadcast_to(a, shape):
    a = lift(a)

    def backward(grad):
        return (_unbroadcast(grad, a.shape),)
    return make_result(np.broadcast_to(a.data, shape).copy(), (a,), backward)


def getitem(a, index):
    a = lift(a)

    def backward(grad):
        full = np.zeros_like(a.data)
        np.add.at(full, index, grad)
        return (full,)
    return make_result(a.data[index], (a,), backward)


def gather_rows(a, indices):
    """ a[indices]. indices 는 임의 shape 의 정수 배열 (예: faces (f, 3) → (f, 3, c)) """
    a = lift(a)
    indices = np.asarray(indices)

    def backward(grad):
        full = np.zeros_like(a.data)
        np.add.at(full, indices, grad)
        return (full,)
    return make_result(a.data[indices], (a,), backward)


def segment_matrix(segments, n_columns):
    """ 행 i 가 segments[i] 인덱스들의 평균이 되도록 하는 (len(segments), n_columns) 희소 행렬 """
    rows = np.concatenate([np.full(len(segment), row) for row, segment in enumerate(segments)])
    cols = np.concatenate([np.asarray(segment, dtype=np.int64) for segment in segments])
    weights = np.concatenate([np.full(len(segment), 1.0 / max(len(segment), 1)) for segment in segments])
    return sparse.csr_matrix((weights, (rows, cols)), shape=(len(segments), n_columns))


def segment_mean(a, segments):
    """ 인덱스 목록별 행 평균 """
    a = lift(a)
    return sparse_matmul(segment_matrix(segments, a.shape[0]), a)


# ----------------------------------------------------------------------------------------------------------------------
# 연산자 오버로딩
# ----------------------------------------------------------------------------------------------------------------------
Tensor.__add__ = lambda self, other: add(self, other)
Tensor.__radd__ = lambda self, other: add(other, self)
Tensor.__sub__ = lambda self, other: subtract(self, other)
Tensor.__rsub__ = lambda self, other: subtract(other, self)
Tensor.__mul__ = lambda self, other: multiply(self, other)
Tensor.__rmul__ = lambda self, other: multiply(other, self)
Tensor.__neg__ = lambda self: negate(self)
Tensor.__matmul__ = lambda self, other: matmul(self, other)
Tensor.__rmatmul__ = lambda self, other: matmul(other, self)
Tensor.__getitem__ = lambda self, index: getitem(self, index)
Tensor.T = property(lambda self: transpose(self))
