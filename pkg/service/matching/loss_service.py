""" 학습 손실 항

L = λ_mse L_mse + λ_fmap L_fmap + λ_cycle L_cycle + λ_primo E_primo
"""

import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from service.autodiff import frobenius_sq, matmul, scale, transpose
from utils.custom_exceptions import InvalidConfig, NanLoss

LOSS_TERMS = ('mse', 'fmap', 'cycle', 'primo')


@dataclass(frozen=True)
class LossWeights:
    mse: float = 1.0
    fmap: float = 1.0
    cycle: float = 1.0
    primo: float = 1.0

    def __post_init__(self):
        for name in LOSS_TERMS:
            if not getattr(self, name) >= 0:
                raise InvalidConfig('손실 가중치 {} 는 0 이상이어야 합니다.'.format(name))

    @classmethod
    def from_config(cls, config):
        return cls(config.w_mse, config.w_fmap, config.w_cycle, config.w_primo)


def loss_mse(p21, s1, s3):
    """ ‖Π̂21 S1 - S3‖² """
    return frobenius_sq(matmul(p21, s1) - s3)


def loss_fmap(c12, c21):
    """ 양방향 전단사 항 + 양쪽 직교 항 """
    identity = np.eye(c12.shape[0])
    return (frobenius_sq(matmul(c12, c21) - identity)
            + frobenius_sq(matmul(c21, c12) - identity)
            + frobenius_sq(matmul(transpose(c12), c12) - identity)
            + frobenius_sq(matmul(transpose(c21), c21) - identity))


def loss_cycle(p12, p21, s1):
    """ ‖Π̂12 Π̂21 S1 - S1‖² """
    return frobenius_sq(matmul(p12, matmul(p21, s1)) - s1)


def total_loss(terms, weights):
    """ 가중합

    Args:
        terms  : {이름: 스칼라 Tensor}
        weights: LossWeights

    Returns:
        (total Tensor, {이름: float, ..., 'total': float})

    Raises:
        500, {'message': 'nan_loss', 'error_message': '<term> ...'}
    """
    values = OrderedDict()
    total = None
    for name, term in terms.items():
        value = term.item()
        if not math.isfinite(value):
            raise NanLoss('손실 항 {} 가 유한하지 않습니다. ({})'.format(name, value))
        values[name] = value

        weighted = scale(term, getattr(weights, name))
        total = weighted if total is None else total + weighted

    values['total'] = total.item()
    if not math.isfinite(values['total']):
        raise NanLoss('손실 항 total 이 유한하지 않습니다. ({})'.format(values['total']))
    return total, values
