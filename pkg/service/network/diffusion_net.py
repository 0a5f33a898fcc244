""" 열 확산 기반 특징 추출 백본

블록 구성: diffuse → 점별 2층 MLP(relu) → residual.
공간 기울기(gradient) 특징은 쓰지 않는다. 입력은 정점 xyz 좌표이다.
"""

from dataclasses import dataclass

import numpy as np

from service.autodiff import exp, matmul, multiply, relu, reshape, scale, softplus
from service.network.layers import Linear
from utils.custom_exceptions import InvalidConfig

TIME_INIT_FRACTION = 1e-2


@dataclass(frozen=True)
class BackboneConfig:
    in_dim: int
    out_dim: int
    width: int = 128
    n_blocks: int = 4

    def __post_init__(self):
        for name in ('in_dim', 'out_dim', 'width', 'n_blocks'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise InvalidConfig('BackboneConfig.{} 는 양의 정수여야 합니다. ({})'.format(name, value))


def inverse_softplus(value):
    return np.log(np.expm1(value))


def spectral_time_scale(*bases):
    """ 1/λ_1 의 평균. λ_1 이 없거나 0 이면 1 """
    scales = [1.0 / basis.evals[1] for basis in bases if basis.k > 1 and basis.evals[1] > 0]
    return float(np.mean(scales)) if scales else 1.0


def diffuse(basis, x, times):
    """ 채널별 스펙트럼 열 확산

    열 j = Φ diag(exp(-λ t_j)) Φᵀ M x_j

    Args:
        basis: SpectralBasis
        x    : (n, c) Tensor
        times: (c,) 양수 Tensor

    Returns:
        (n, c) Tensor
    """
    coefficients = matmul(basis.pinv, x)
    decay = exp(scale(multiply(basis.evals[:, None], reshape(times, (1, -1))), -1.0))
    return matmul(basis.phi, multiply(coefficients, decay))


class DiffusionBlock:
    """ 학습 확산 시간(softplus) + 점별 MLP + residual """

    def __init__(self, params, name, width, time_scale=1.0):
        initial = inverse_softplus(TIME_INIT_FRACTION * time_scale)
        self.times = params.add(name + '.diffusion_time', np.full(width, initial))
        self.first = Linear(params, name + '.mlp.0', width, width)
        self.second = Linear(params, name + '.mlp.1', width, width)

    def effective_times(self):
        return softplus(self.times)

    def __call__(self, basis, x):
        diffused = diffuse(basis, x, self.effective_times())
        return x + self.second(relu(self.first(diffused)))


class Backbone:
    """ 입력 선형 lift → n_blocks × DiffusionBlock → 출력 선형 층

    Attributes:
        config: BackboneConfig
    """

    def __init__(self, params, name, config, time_scale=1.0):
        self.config = config
        self.lift = Linear(params, name + '.lift', config.in_dim, config.width)
        self.blocks = [DiffusionBlock(params, '{}.block{}'.format(name, index), config.width, time_scale)
                       for index in range(config.n_blocks)]
        self.output = Linear(params, name + '.output', config.width, config.out_dim)

    def forward(self, basis, x):
        h = self.lift(x)
        for block in self.blocks:
            h = block(basis, h)
        return self.output(h)

    __call__ = forward


def backbone_forward(backbone, basis, x):
    """ 두 형상에 같은 파라미터를 쓰는 Siamese 적용 """
    return backbone.forward(basis, x)


def hks_times(basis, n_times):
    """ [4 ln10 / λ_max, 4 ln10 / λ_1] 구간의 로그 간격 시간 """
    positive = basis.evals[basis.evals > 1e-12]
    if len(positive) == 0:
        return np.ones(n_times)
    upper = 4.0 * np.log(10.0) / positive[0]
    lower = 4.0 * np.log(10.0) / positive[-1]
    if n_times == 1:
        return np.array([np.sqrt(lower * upper)])
    return np.geomspace(lower, upper, n_times)


def hks_features(basis, n_times):
    """ 열 커널 시그니처 h(v, t) = Σ_j exp(-λ_j t) φ_j(v)², 열마다 M-노름 1 로 정규화

    Returns:
        (n, n_times) np.ndarray
    """
    times = hks_times(basis, n_times)
    signature = (basis.phi ** 2) @ np.exp(-np.outer(basis.evals, times))
    norms = np.sqrt((basis.mass[:, None] * signature ** 2).sum(axis=0))
    return signature / norms[None, :]
