from unittest import TestCase

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

import numpy as np

from mesh_fixtures import icosphere, asymmetric_blob
from model.spectral.spectral_basis import SpectralBasis
from service.autodiff import Tensor, multiply, reduce_sum
from service.autodiff.gradcheck import max_relative_error
from service.geometry.spectral_service import compute_basis
from service.network.diffusion_net import (
    Backbone,
    BackboneConfig,
    DiffusionBlock,
    TIME_INIT_FRACTION,
    backbone_forward,
    diffuse,
    hks_features,
    inverse_softplus,
    spectral_time_scale
)
from service.network.layers import ParameterSet
from utils.custom_exceptions import InvalidConfig


def _permuted(basis, permutation):
    return SpectralBasis(basis.phi[permutation].copy(), basis.evals.copy(), basis.mass[permutation].copy())


class TestDiffuse(TestCase):
    """ Test

        Target: service/network/diffusion_net.diffuse

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
    """

    @classmethod
    def setUpClass(cls):
        cls.mesh = asymmetric_blob(1)
        cls.basis = compute_basis(cls.mesh, 12)
        cls.x = np.random.default_rng(0).normal(size=(cls.mesh.n_vertices, 3))

    def test_zero_time_is_projection(self):
        out = diffuse(self.basis, Tensor(self.x), Tensor(np.zeros(3))).data
        np.testing.assert_allclose(out, self.basis.phi @ (self.basis.pinv @ self.x), atol=1e-10)

    def test_long_time_is_mass_weighted_mean(self):
        evals = self.basis.evals.copy()
        evals[0] = 0.0
        basis = SpectralBasis(self.basis.phi.copy(), evals, self.basis.mass.copy())

        out = diffuse(basis, Tensor(self.x), Tensor(np.full(3, 1e4))).data
        weighted_mean = (basis.mass[:, None] * self.x).sum(axis=0) / basis.mass.sum()
        np.testing.assert_allclose(out, np.broadcast_to(weighted_mean, out.shape), atol=1e-6)

    def test_mass_weighted_sum_is_conserved(self):
        out = diffuse(self.basis, Tensor(self.x), Tensor(np.array([0.01, 0.1, 1.0]))).data
        before = (self.basis.mass[:, None] * self.x).sum(axis=0)
        after = (self.basis.mass[:, None] * out).sum(axis=0)
        np.testing.assert_allclose(after, before, rtol=1e-5, atol=1e-8)

    def test_gradient_wrt_input_and_times(self):
        x = self.x[:, :2]
        weights = np.random.default_rng(1).normal(size=x.shape)

        def build_loss(values, times):
            return reduce_sum(multiply(diffuse(self.basis, values, times), weights))
        self.assertLess(max_relative_error(build_loss, [x, np.array([0.05, 0.4])]), 1e-4)


class TestBackbone(TestCase):
    """ Test

        Target: service/network/diffusion_net.Backbone

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
            2026-10-17(홍길동): backbone_forward 테스트 추가
    """

    @classmethod
    def setUpClass(cls):
        cls.mesh = asymmetric_blob(1)
        cls.basis = compute_basis(cls.mesh, 10)

    def _backbone(self, seed=0):
        params = ParameterSet(np.random.default_rng(seed))
        return Backbone(params, 'backbone', BackboneConfig(3, 5, width=8, n_blocks=2)), params

    def test_output_shape_and_finiteness(self):
        backbone, params = self._backbone()
        out = backbone(self.basis, Tensor(self.mesh.vertices)).data
        self.assertEqual(out.shape, (self.mesh.n_vertices, 5))
        self.assertTrue(np.all(np.isfinite(out)))
        # lift + 2 × (time, 2 linear) + output
        self.assertEqual(len(params), 2 + 2 * 5 + 2)

    def test_permutation_equivariance(self):
        backbone, _ = self._backbone()
        permutation = np.random.default_rng(2).permutation(self.mesh.n_vertices)

        out = backbone(self.basis, Tensor(self.mesh.vertices)).data
        permuted = backbone(_permuted(self.basis, permutation), Tensor(self.mesh.vertices[permutation])).data
        np.testing.assert_allclose(permuted, out[permutation], atol=1e-10)

    def test_siamese_application_shares_parameters(self):
        backbone, params = self._backbone()
        other = asymmetric_blob(2)
        other_basis = compute_basis(other, 10)

        first = backbone_forward(backbone, self.basis, Tensor(self.mesh.vertices))
        second = backbone_forward(backbone, other_basis, Tensor(other.vertices))
        self.assertEqual(first.shape, (self.mesh.n_vertices, 5))
        self.assertEqual(second.shape, (other.n_vertices, 5))
        self.assertEqual(len(params), 2 + 2 * 5 + 2)
        np.testing.assert_array_equal(first.data, backbone(self.basis, Tensor(self.mesh.vertices)).data)

    def test_seed_determinism(self):
        first, _ = self._backbone(seed=5)
        second, _ = self._backbone(seed=5)
        np.testing.assert_array_equal(first(self.basis, Tensor(self.mesh.vertices)).data,
                                      second(self.basis, Tensor(self.mesh.vertices)).data)

    def test_initial_diffusion_time(self):
        params = ParameterSet(np.random.default_rng(0))
        block = DiffusionBlock(params, 'block', 4, time_scale=spectral_time_scale(self.basis))
        expected = TIME_INIT_FRACTION / self.basis.evals[1]
        np.testing.assert_allclose(block.effective_times().data, expected, rtol=1e-9)
        self.assertAlmostEqual(float(np.log1p(np.exp(inverse_softplus(0.3)))), 0.3, places=12)

    def test_invalid_config(self):
        with self.assertRaises(InvalidConfig):
            BackboneConfig(3, 5, width=0)
        with self.assertRaises(InvalidConfig):
            BackboneConfig(3, 5, n_blocks=1.5)
        with self.assertRaises(InvalidConfig):
            BackboneConfig(True, 5)


class TestHeatKernelSignature(TestCase):
    def test_positive_and_normalized(self):
        basis = compute_basis(asymmetric_blob(1), 12)
        features = hks_features(basis, 4)
        self.assertEqual(features.shape, (basis.n_vertices, 4))
        self.assertTrue(np.all(features > 0))
        np.testing.assert_allclose((basis.mass[:, None] * features ** 2).sum(axis=0), 1.0, rtol=1e-9)

    def test_nearly_constant_on_sphere(self):
        basis = compute_basis(icosphere(3), 16)
        features = hks_features(basis, 3)
        variation = features.std(axis=0) / features.mean(axis=0)
        self.assertLess(variation.max(), 0.05)
