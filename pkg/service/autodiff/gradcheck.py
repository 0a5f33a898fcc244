""" 중앙 유한 차분 기울기 검사 """

import numpy as np

from service.autodiff.tensor import Tape, Tensor, backward

EPSILON = 1e-5
SCALE_FLOOR = 1e-6


def analytic_gradients(build_loss, arrays):
    params = [Tensor(np.array(array, dtype=np.float64), requires_grad=True) for array in arrays]
    with Tape():
        loss = build_loss(*params)
    backward(loss)
    return [param.grad if param.grad is not None else np.zeros_like(param.data) for param in params]


def numeric_gradients(build_loss, arrays, eps=EPSILON):
    """ 테이프 없이 build_loss 를 반복 평가해서 중앙 차분을 계산한다 """
    arrays = [np.array(array, dtype=np.float64) for array in arrays]
    gradients = []
    for array in arrays:
        gradient = np.zeros_like(array)
        for index in np.ndindex(array.shape):
            original = array[index]
            array[index] = original + eps
            upper = build_loss(*[Tensor(item) for item in arrays]).item()
            array[index] = original - eps
            lower = build_loss(*[Tensor(item) for item in arrays]).item()
            array[index] = original
            gradient[index] = (upper - lower) / (2.0 * eps)
        gradients.append(gradient)
    return gradients


def relative_error(analytic, numeric):
    scale = max(np.max(np.abs(analytic)), np.max(np.abs(numeric)), SCALE_FLOOR)
    return float(np.max(np.abs(analytic - numeric)) / scale)


def max_relative_error(build_loss, arrays, eps=EPSILON):
    """ 모든 입력에 대한 최대 상대 오차

    Args:
        build_loss: Tensor 들을 받아 스칼라 Tensor 를 돌려주는 함수
        arrays    : 입력 배열 목록

    Returns:
        float
    """
    analytic = analytic_gradients(build_loss, arrays)
    numeric = numeric_gradients(build_loss, arrays, eps)
    return max(relative_error(a, n) for a, n in zip(analytic, numeric))
