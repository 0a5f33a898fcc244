from unittest import TestCase

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

import numpy as np

from service.autodiff import Tensor
from service.matching.loss_service import LossWeights, loss_cycle, loss_fmap, loss_mse, total_loss
from utils.custom_exceptions import InvalidConfig, NanLoss


class TestLosses(TestCase):
    """ Test

        Target: service/matching/loss_service

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
    """

    def setUp(self):
        self.s1 = np.random.default_rng(0).normal(size=(6, 3))

    def test_mse(self):
        identity = Tensor(np.eye(6))
        self.assertAlmostEqual(loss_mse(identity, self.s1, Tensor(self.s1)).item(), 0.0)

        offset = np.array([0.1, -0.2, 0.3])
        shifted = Tensor(self.s1 + offset)
        self.assertAlmostEqual(loss_mse(identity, self.s1, shifted).item(), 6 * float(offset @ offset), places=12)

    def test_fmap(self):
        identity = Tensor(np.eye(4))
        self.assertAlmostEqual(loss_fmap(identity, identity).item(), 0.0)

        # CC' - I = I (4), C'C - I = I (4), CᵀC - I = 3I (36), C'ᵀC' - I = 0
        self.assertAlmostEqual(loss_fmap(Tensor(2.0 * np.eye(4)), identity).item(), 44.0, places=12)

    def test_cycle(self):
        permutation = np.eye(6)[np.random.default_rng(1).permutation(6)]
        self.assertAlmostEqual(loss_cycle(Tensor(permutation), Tensor(permutation.T), self.s1).item(), 0.0, places=12)

        uniform = Tensor(np.full((6, 6), 1.0 / 6.0))
        expected = float(((self.s1 - self.s1.mean(axis=0)) ** 2).sum())
        self.assertAlmostEqual(loss_cycle(uniform, uniform, self.s1).item(), expected, places=10)

    def test_total_loss(self):
        terms = {'mse': Tensor(2.0), 'fmap': Tensor(3.0), 'cycle': Tensor(5.0), 'primo': Tensor(7.0)}
        total, values = total_loss(terms, LossWeights(mse=1.0, fmap=0.5, cycle=0.0, primo=2.0))
        self.assertAlmostEqual(total.item(), 2.0 + 1.5 + 14.0)
        self.assertEqual(list(values), ['mse', 'fmap', 'cycle', 'primo', 'total'])
        self.assertEqual(values['cycle'], 5.0)

    def test_non_finite_term(self):
        terms = {'mse': Tensor(1.0), 'primo': Tensor(np.inf)}
        with self.assertRaises(NanLoss) as context:
            total_loss(terms, LossWeights())
        self.assertIn('primo', context.exception.error_message)

    def test_negative_weight(self):
        with self.assertRaises(InvalidConfig):
            LossWeights(primo=-1.0)
