""" 특징 → 함수 맵 → 소프트 대응

fmap_forward 는 학습 루프 안에서 ZoomOut 두 번과 같은 역할을 한다.
소프트 대응 Π̂ji 는 (n_j, n_i) 행 확률 행렬이며 메모리는 8·n_i·n_j 바이트이다.
"""

from dataclasses import dataclass

import numpy as np

from model.correspondence.point_map import FunctionalMap, SoftP2P
from service.autodiff import matmul, normalize_rows, softmax_rows, solve_fmap_rows


def solve_fmap(a1, a2, evals1, evals2, lambda_commut):
    """ min_C ‖C A1 - A2‖² + λ‖C Δ1 - Δ2 C‖²

    Returns:
        FunctionalMap (direction '12')
    """
    return FunctionalMap(solve_fmap_rows(a1, a2, evals1, evals2, lambda_commut), '12')


def spectral_similarity(c_ij, basis_i, basis_j, similarity='cosine'):
    """ 행 v, 열 w = ⟨(Φ_j C_ij)_v, (Φ_i)_w⟩. cosine 이면 양쪽 행을 단위 길이로 맞춘 뒤 내적한다 (값은 [-1, 1]). """
    embedding = matmul(basis_j.phi, c_ij)
    targets = basis_i.phi
    if similarity == 'cosine':
        embedding = normalize_rows(embedding)
        targets = targets / np.maximum(np.linalg.norm(targets, axis=1, keepdims=True), 1e-12)
    return matmul(embedding, targets.T)


def soft_p2p(c_ij, basis_i, basis_j, tau, direction='21', similarity='cosine'):
    """ Π̂ji 의 행 v = softmax_w similarity((Φ_j C_ij)_v, (Φ_i)_w) / τ

    Args:
        c_ij      : (k, k) Tensor 함수 맵
        tau       : 온도 (> 0)
        similarity: 'cosine' (행 정규화 후 내적) 또는 'dot'

    Returns:
        SoftP2P, P shape (n_j, n_i)
    """
    scores = spectral_similarity(c_ij, basis_i, basis_j, similarity)
    return SoftP2P(softmax_rows(scores, tau), tau, direction)


def fmap_from_p2p(p_ji, basis_i, basis_j, direction='12'):
    """ C_ij = Φ_j† Π̂_ji Φ_i """
    return FunctionalMap(matmul(matmul(basis_j.pinv, p_ji), basis_i.phi), direction)


@dataclass(frozen=True, eq=False)
class FmapOutput:
    c12: FunctionalMap
    c21: FunctionalMap
    p12: SoftP2P
    p21: SoftP2P
    initial_c12: FunctionalMap
    initial_c21: FunctionalMap


def fmap_forward(feat1, feat2, basis1, basis2, lambda_commut, tau, similarity='cosine'):
    """ 특징 투영 → C0 양방향 → Π̂0 → C12, C21 → 최종 Π̂12, Π̂21

    Args:
        feat1: (n1, d) target(S1) 특징 Tensor
        feat2: (n2, d) source(S2) 특징 Tensor

    Returns:
        FmapOutput
    """
    a1 = matmul(basis1.pinv, feat1)
    a2 = matmul(basis2.pinv, feat2)

    initial_c12 = solve_fmap(a1, a2, basis1.evals, basis2.evals, lambda_commut)
    initial_c21 = FunctionalMap(solve_fmap_rows(a2, a1, basis2.evals, basis1.evals, lambda_commut), '21')

    initial_p21 = soft_p2p(initial_c12.C, basis1, basis2, tau, '21', similarity)
    initial_p12 = soft_p2p(initial_c21.C, basis2, basis1, tau, '12', similarity)

    c12 = fmap_from_p2p(initial_p21.P, basis1, basis2, '12')
    c21 = fmap_from_p2p(initial_p12.P, basis2, basis1, '21')

    return FmapOutput(
        c12=c12,
        c21=c21,
        p12=soft_p2p(c21.C, basis2, basis1, tau, '12', similarity),
        p21=soft_p2p(c12.C, basis1, basis2, tau, '21', similarity),
        initial_c12=initial_c12,
        initial_c21=initial_c21
    )
