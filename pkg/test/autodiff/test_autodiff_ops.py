from unittest import TestCase

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

import numpy as np
from scipy import sparse

from service.autodiff import (
    Tape,
    Tensor,
    backward,
    add,
    subtract,
    multiply,
    scale,
    relu,
    exp,
    log,
    softplus,
    matmul,
    sparse_matmul,
    transpose,
    frobenius_sq,
    reduce_sum,
    mean,
    reduce_max,
    softmax_rows,
    normalize_rows,
    concatenate,
    reshape,
    broadcast_to,
    getitem,
    gather_rows,
    segment_mean
)
from service.autodiff.gradcheck import max_relative_error
from utils.custom_exceptions import UntrackedTensor

TOLERANCE = 1e-4


def _weighted(tensor, seed=0):
    """ 무작위 가중합으로 스칼라 손실을 만든다 """
    weights = np.random.default_rng(seed + 100).normal(size=tensor.shape)
    return reduce_sum(multiply(tensor, weights))


class TestBackward(TestCase):
    """ Test

        Target: service/autodiff/tensor, service/autodiff/ops

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
    """

    def test_sum_gives_ones(self):
        x = Tensor(np.random.default_rng(0).normal(size=(5, 7)), requires_grad=True)
        with Tape():
            loss = reduce_sum(x)
        backward(loss)
        np.testing.assert_array_equal(x.grad, np.ones((5, 7)))

    def test_least_squares_gradient(self):
        rng = np.random.default_rng(1)
        a = Tensor(rng.normal(size=(4, 3)), requires_grad=True)
        x, b = rng.normal(size=(3, 2)), rng.normal(size=(4, 2))
        with Tape():
            loss = frobenius_sq(matmul(a, x) - b)
        backward(loss)
        np.testing.assert_allclose(a.grad, 2.0 * (a.data @ x - b) @ x.T, atol=1e-12)

    def test_gradients_accumulate_across_uses(self):
        x = Tensor(np.array([1.0, 2.0]), requires_grad=True)
        with Tape():
            loss = reduce_sum(x * x) + reduce_sum(scale(x, 3.0))
        backward(loss)
        np.testing.assert_allclose(x.grad, 2.0 * x.data + 3.0)

    def test_untracked_tensor(self):
        with self.assertRaises(UntrackedTensor):
            backward(reduce_sum(Tensor(np.ones(3), requires_grad=True)))

        x = Tensor(np.ones(3), requires_grad=True)
        with Tape():
            vector = x * 2.0
        with self.assertRaises(UntrackedTensor):
            backward(vector)

    def test_constants_are_not_recorded(self):
        with Tape() as tape:
            reduce_sum(Tensor(np.ones(3)) * 2.0)
        self.assertEqual(len(tape), 0)


class TestGradientCheck(TestCase):
    """ 모든 연산의 중앙 차분 기울기 검사 (5×7 무작위 입력) """

    def setUp(self):
        rng = np.random.default_rng(7)
        self.a = rng.normal(size=(5, 7))
        self.b = rng.normal(size=(5, 7))
        self.positive = rng.uniform(0.5, 2.0, size=(5, 7))

    def check(self, build_loss, *arrays):
        self.assertLess(max_relative_error(build_loss, list(arrays)), TOLERANCE)

    def test_elementwise(self):
        self.check(lambda x, y: _weighted(add(x, y)), self.a, self.b)
        self.check(lambda x, y: _weighted(subtract(x, y)), self.a, self.b)
        self.check(lambda x, y: _weighted(multiply(x, y)), self.a, self.b)
        self.check(lambda x: _weighted(scale(x, -2.5)), self.a)
        self.check(lambda x: _weighted(exp(x)), self.a)
        self.check(lambda x: _weighted(log(x)), self.positive)
        self.check(lambda x: _weighted(softplus(x)), self.a)

    def test_relu_away_from_kink(self):
        shifted = np.where(np.abs(self.a) < 0.05, 0.5, self.a)
        self.check(lambda x: _weighted(relu(x)), shifted)

    def test_broadcasting(self):
        row = np.random.default_rng(8).normal(size=(7,))
        self.check(lambda x, r: _weighted(add(x, r)), self.a, row)
        self.check(lambda x, r: _weighted(multiply(x, r)), self.a, row)

    def test_linear_algebra(self):
        right = np.random.default_rng(9).normal(size=(7, 4))
        self.check(lambda x, y: _weighted(matmul(x, y)), self.a, right)
        self.check(lambda x: _weighted(transpose(x)), self.a)
        self.check(lambda x: frobenius_sq(x), self.a)

        batch = np.random.default_rng(10).normal(size=(6, 3, 3))
        self.check(lambda x, y: _weighted(matmul(x, transpose(y))), batch, batch[::-1].copy())

        matrix = sparse.random(4, 5, density=0.5, random_state=0)
        self.check(lambda x: _weighted(sparse_matmul(matrix, x)), self.a)

    def test_reductions(self):
        self.check(lambda x: reduce_sum(x), self.a)
        self.check(lambda x: _weighted(reduce_sum(x, axis=0)), self.a)
        self.check(lambda x: _weighted(reduce_sum(x, axis=1, keepdims=True)), self.a)
        self.check(lambda x: _weighted(mean(x, axis=1)), self.a)
        self.check(lambda x: _weighted(reduce_max(x, axis=0)), self.a)
        self.check(lambda x: _weighted(softmax_rows(x, 0.3)), self.a)
        self.check(lambda x: _weighted(normalize_rows(x)), self.a)

    def test_shapes_and_indexing(self):
        self.check(lambda x, y: _weighted(concatenate([x, y], axis=-1)), self.a, self.b)
        self.check(lambda x: _weighted(reshape(x, (7, 5))), self.a)
        self.check(lambda x: _weighted(broadcast_to(x, (3, 5, 7))), self.a)
        self.check(lambda x: _weighted(getitem(x, (slice(None), slice(2, 5)))), self.a)
        self.check(lambda x: _weighted(gather_rows(x, np.array([[0, 1, 1], [4, 2, 0]]))), self.a)
        self.check(lambda x: _weighted(segment_mean(x, [[0, 1], [2, 3, 4], [1]])), self.a)

    def test_chain_rule_composition(self):
        def composite(x, y):
            hidden = softplus(matmul(x, transpose(y)))
            return frobenius_sq(softmax_rows(hidden, 0.5)) + reduce_sum(exp(scale(hidden, -0.1)))
        self.check(composite, self.a, self.b)


class TestOpSemantics(TestCase):
    def test_softmax_rows(self):
        x = Tensor(np.random.default_rng(2).normal(size=(5, 7)), requires_grad=True)
        with Tape():
            out = softmax_rows(x, 0.07)
            loss = reduce_sum(getitem(out, (slice(None), 0)))
        np.testing.assert_allclose(out.data.sum(axis=1), 1.0, atol=1e-9)
        backward(loss)
        np.testing.assert_allclose(x.grad.sum(axis=1), 0.0, atol=1e-9)

    def test_normalize_rows(self):
        x = Tensor(np.array([[3.0, 4.0], [0.0, 0.0], [-2.0, 0.0]]), requires_grad=True)
        with Tape():
            out = normalize_rows(x)
            loss = reduce_sum(out)
        np.testing.assert_allclose(out.data, [[0.6, 0.8], [0.0, 0.0], [-1.0, 0.0]])
        backward(loss)
        # 단위 벡터 방향으로는 기울기가 없다
        np.testing.assert_allclose((x.grad * out.data).sum(axis=1), 0.0, atol=1e-12)

    def test_max_ties_route_to_lowest_index(self):
        x = Tensor(np.array([[1.0, 2.0], [3.0, 2.0], [3.0, 0.0]]), requires_grad=True)
        with Tape():
            loss = reduce_sum(reduce_max(x, axis=0))
        backward(loss)
        np.testing.assert_array_equal(x.grad, [[0.0, 1.0], [1.0, 0.0], [0.0, 0.0]])

    def test_operator_overloads(self):
        x = Tensor(np.array([[1.0, 2.0], [3.0, 4.0]]), requires_grad=True)
        with Tape():
            y = (2.0 - x) * x + x @ x.T - (-x)
            loss = reduce_sum(y[0])
        np.testing.assert_allclose(y.data, (2.0 - x.data) * x.data + x.data @ x.data.T + x.data)
        backward(loss)
        self.assertEqual(x.grad.shape, (2, 2))

    def test_segment_mean(self):
        x = Tensor(np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]))
        out = segment_mean(x, [[0, 1, 2], [2]])
        np.testing.assert_allclose(out.data, [[2.0, 2.0], [3.0, 3.0]])
