""" 형상 인코더와 프리즘 디코더

인코더: target xyz → 백본 → 정점 방향 max-pooling → 잠재 코드 l
디코더: source xyz ⊕ l → 백본 → 면 평균 pooling → MLP → 면별 (t, R)
복원  : 면의 세 정점을 면 중심 기준으로 강체 이동한 뒤 정점별로 인접 면 평균
"""

import numpy as np
from scipy import sparse

from service.autodiff import (
    broadcast_to,
    concatenate,
    gather_rows,
    getitem,
    matmul,
    mean,
    orthogonalize,
    reduce_max,
    reshape,
    sparse_matmul,
    transpose
)
from service.network.diffusion_net import Backbone, BackboneConfig
from service.network.layers import MLP

HEAD_WIDTHS = (512, 256, 64, 12)
HEAD_INIT_SCALE = 1e-3
IDENTITY_HEAD_BIAS = np.array([0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0])


class ShapeEncoder:
    def __init__(self, params, latent_dim, width, n_blocks, time_scale=1.0):
        self.backbone = Backbone(params, 'encoder', BackboneConfig(3, latent_dim, width, n_blocks), time_scale)

    def encode(self, basis, xyz):
        """ Returns: (latent_dim,) Tensor 잠재 코드 """
        return reduce_max(self.backbone(basis, xyz), axis=0)


class PrismDecoder:
    """ 면별 강체 변환 예측

    마지막 층은 t = 0, R0 = I 근처에서 시작하도록 작은 가중치와 항등 bias 로 초기화한다.
    """

    def __init__(self, params, latent_dim, decoder_dim, width, n_blocks, time_scale=1.0):
        self.latent_dim = latent_dim
        self.backbone = Backbone(params, 'decoder',
                                 BackboneConfig(3 + latent_dim, decoder_dim, width, n_blocks), time_scale)

        self.head = MLP(params, 'decoder.head', (decoder_dim,) + HEAD_WIDTHS)
        self.head.last.weight.data = self.head.last.weight.data * HEAD_INIT_SCALE
        self.head.last.bias.data = IDENTITY_HEAD_BIAS.copy()

    def vertex_features(self, basis, xyz, latent):
        n = xyz.shape[0]
        duplicated = broadcast_to(reshape(latent, (1, self.latent_dim)), (n, self.latent_dim))
        return self.backbone(basis, concatenate([xyz, duplicated], axis=-1))

    def decode_face_transforms(self, basis, xyz, latent, faces):
        """ Returns: (translations (f, 3) Tensor, rotations (f, 3, 3) Tensor) """
        features = self.vertex_features(basis, xyz, latent)
        pooled = mean(gather_rows(features, faces), axis=1)
        raw = self.head(pooled)
        return split_transform(raw)


def split_transform(raw):
    """ (f, 12) → t (앞 3), R = orthogonalize(R0 (뒤 9, 3×3)) """
    translations = getitem(raw, (slice(None), slice(0, 3)))
    r0 = reshape(getitem(raw, (slice(None), slice(3, 12))), (-1, 3, 3))
    return translations, orthogonalize(r0)


def corner_average_matrix(mesh):
    """ (n, 3f) 희소 행렬: 정점 v 의 행은 v 가 속한 면 코너들의 평균 """
    flat = mesh.faces.reshape(-1)
    counts = np.bincount(flat, minlength=mesh.n_vertices).astype(np.float64)
    weights = 1.0 / counts[flat]
    return sparse.csr_matrix((weights, (flat, np.arange(len(flat)))), shape=(mesh.n_vertices, len(flat)))


def rigid_move(points, centers, translations, rotations):
    """ p' = R (p - c) + c + t

    Args:
        points      : (f, m, 3) 상수 배열
        centers     : (f, 3) 상수 배열
        translations: (f, 3) Tensor
        rotations   : (f, 3, 3) Tensor

    Returns:
        (f, m, 3) Tensor
    """
    relative = points - centers[:, None, :]
    rotated = matmul(relative, transpose(rotations))
    shifted = rotated + centers[:, None, :]
    return shifted + reshape(translations, (-1, 1, 3))


def reconstruct_vertices(mesh, translations, rotations, averaging=None):
    """ 면별 강체 이동 후 정점마다 인접 면 이미지를 평균한다

    Returns:
        (n, 3) Tensor S3
    """
    if averaging is None:
        averaging = corner_average_matrix(mesh)
    moved = rigid_move(mesh.vertices[mesh.faces], mesh.face_centroids, translations, rotations)
    return sparse_matmul(averaging, reshape(moved, (-1, 3)))
