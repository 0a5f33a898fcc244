""" 프리즘 돌출과 탄성 결합 에너지

인접한 두 프리즘이 공유 간선에서 마주보는 두 쌍선형 패치 사이의 간격 제곱을
닫힌 형태의 적분으로 계산한다. 변형 전 상태와 전역 강체 운동에서 에너지는 0 이다.
"""

import numpy as np

from model.prism.prism_layer import CORNER_UV, PrismLayer
from service.autodiff import gather_rows, matmul, multiply, reduce_sum, subtract
from service.network.prism_decoder import rigid_move


def _bilinear_kernel():
    du = np.abs(CORNER_UV[:, None, 0] - CORNER_UV[None, :, 0])
    dv = np.abs(CORNER_UV[:, None, 1] - CORNER_UV[None, :, 1])
    return (2.0 ** -(du + dv)) / 9.0


# K[p, q] = (1/9) 2^{-|i_p - i_q| - |j_p - j_q|}
BILINEAR_KERNEL = _bilinear_kernel()


def build_prisms(mesh, h, extrusion='symmetric'):
    """ 정점 법선 방향으로 면마다 프리즘을 돌출한다

    Args:
        mesh     : TriMesh
        h        : 프리즘 높이 (>= 0)
        extrusion: symmetric (v ± h n) | one_sided (v, v + h n)

    Returns:
        PrismLayer
    """
    normals = mesh.vertex_normals
    if extrusion == 'one_sided':
        bottom = mesh.vertices.copy()
    else:
        bottom = mesh.vertices - h * normals
    top = mesh.vertices + h * normals

    a, b = mesh.interior_edges[:, 0], mesh.interior_edges[:, 1]
    patch_corners = np.stack([bottom[a], bottom[b], top[a], top[b]], axis=1)

    faces = mesh.interior_faces
    weights = mesh.edge_sq_lengths / (mesh.face_areas[faces[:, 0]] + mesh.face_areas[faces[:, 1]])

    return PrismLayer(
        bottom=bottom,
        top=top,
        face_centroids=np.array(mesh.face_centroids),
        edge_vertices=np.array(mesh.interior_edges),
        edge_faces=np.array(faces),
        patch_corners=patch_corners,
        weights=weights,
        height=float(h),
        extrusion=extrusion
    )


def bilinear_inner(a, b):
    """ 단위 정사각형 위 두 쌍선형 패치의 L2 내적

    Args:
        a, b: (4, d) 코너 값, 순서 00, 10, 01, 11

    Returns:
        float
    """
    a = np.asarray(a, dtype=np.float64).reshape(4, -1)
    b = np.asarray(b, dtype=np.float64).reshape(4, -1)
    return float(np.einsum('pd,pq,qd->', a, BILINEAR_KERNEL, b))


def deformed_patches(layer, translations, rotations, side):
    """ 간선 패치 코너를 side(0 → 면 i, 1 → 면 j) 프리즘의 강체 변환으로 옮긴다 """
    faces = layer.edge_faces[:, side]
    return rigid_move(
        layer.patch_corners,
        layer.face_centroids[faces],
        gather_rows(translations, faces),
        gather_rows(rotations, faces)
    )


def primo_energy(layer, translations, rotations):
    """ E = Σ_ij w_ij ⟨d, d⟩, d = f^{i→j} - f^{j→i}

    Args:
        layer       : PrismLayer
        translations: (f, 3) Tensor
        rotations   : (f, 3, 3) Tensor

    Returns:
        스칼라 Tensor
    """
    difference = subtract(deformed_patches(layer, translations, rotations, 0),
                          deformed_patches(layer, translations, rotations, 1))
    mixed = matmul(BILINEAR_KERNEL, difference)
    return reduce_sum(multiply(difference, mixed) * layer.weights[:, None, None])
