""" 선형 시스템 풀이와 직교화 연산

solve_fmap_rows: 라플라시안 교환 정규화가 들어간 함수 맵 최소제곱 문제를 행 단위로 푼다.
orthogonalize  : 3×3 행렬(배치)을 가장 가까운 회전 행렬로 사영한다.
"""

import logging

import numpy as np

from service.autodiff.tensor import lift, make_result
from utils.custom_exceptions import DegenerateRotation

logger = logging.getLogger(__name__)

RIDGE = 1e-9
CONDITION_LIMIT = 1e14
SINGULAR_VALUE_FLOOR = 1e-8
DENOMINATOR_FLOOR = 1e-6


def commutativity_penalty(evals1, evals2):
    """ D[i, j] = (evals1[j] - evals2[i])² """
    evals1 = np.asarray(evals1, dtype=np.float64)
    evals2 = np.asarray(evals2, dtype=np.float64)
    return (evals1[None, :] - evals2[:, None]) ** 2


def _row_systems(a1, evals1, evals2, lambda_commut):
    gram = a1 @ a1.T
    penalty = commutativity_penalty(evals1, evals2)
    systems = gram[None, :, :] + lambda_commut * np.einsum('ij,jk->ijk', penalty, np.eye(len(gram)))

    try:
        condition = np.linalg.cond(systems)
        singular = not np.all(np.isfinite(condition)) or np.any(condition > CONDITION_LIMIT)
    except np.linalg.LinAlgError:
        singular = True

    if singular:
        logger.warning('functional map row system is ill-conditioned, solving with %.0e ridge', RIDGE)
        systems = systems + RIDGE * np.eye(len(gram))[None, :, :]
    return systems


def solve_fmap_rows(a1, a2, evals1, evals2, lambda_commut):
    """ min_C ‖C A1 − A2‖² + λ‖C Δ1 − Δ2 C‖²

    Δ 가 대각이므로 C 의 행 i 는 (A1A1ᵀ + λ diag_j (evals1_j − evals2_i)²) c_i = A1 a2_iᵀ 로 독립적으로 풀린다.
    backward 는 같은 시스템으로 한 번 더 풀어 음함수 미분 규칙을 적용한다.

    Args:
        a1, a2       : (k, d) 스펙트럼 계수 Tensor
        evals1, evals2: (k,) 고유값
        lambda_commut: 교환 정규화 가중치 (≥ 0)

    Returns:
        C: (k, k) Tensor
    """
    a1, a2 = lift(a1), lift(a2)
    systems = _row_systems(a1.data, evals1, evals2, lambda_commut)
    rhs = a2.data @ a1.data.T
    solution = np.linalg.solve(systems, rhs[..., None])[..., 0]

    def backward(grad):
        grad_rhs = np.linalg.solve(systems, grad[..., None])[..., 0]
        grad_gram = -grad_rhs.T @ solution
        grad_a1 = (grad_gram + grad_gram.T) @ a1.data + grad_rhs.T @ a2.data
        grad_a2 = grad_rhs @ a1.data
        return grad_a1, grad_a2
    return make_result(solution, (a1, a2), backward)


def nearest_rotation(matrices):
    """ 부호 보정된 SVD 분해

    Returns:
        (rotations, u, signed_sigma, vt): rotations = u @ vt, det = +1
    """
    u, sigma, vt = np.linalg.svd(matrices)
    if np.any(sigma[..., -1] < SINGULAR_VALUE_FLOOR):
        raise DegenerateRotation('최소 특이값 {:.3e} 가 {:.0e} 보다 작습니다.'.format(
            float(np.min(sigma[..., -1])), SINGULAR_VALUE_FLOOR))

    flip = np.sign(np.linalg.det(u) * np.linalg.det(vt))
    flip[flip == 0] = 1.0
    u = u.copy()
    u[..., :, -1] *= flip[..., None]
    sigma = sigma.copy()
    sigma[..., -1] *= flip
    return u @ vt, u, sigma, vt


def orthogonalize(r0):
    """ 가장 가까운 회전 행렬 (Frobenius)

    R0 = U Σ Vᵀ 일 때 R = U diag(1, 1, det(U)det(V)) Vᵀ.

    Args:
        r0: (..., 3, 3) Tensor

    Returns:
        (..., 3, 3) Tensor, det = +1

    Raises:
        500, {'message': 'degenerate_rotation_estimate', 'error_message': '...'}
    """
    r0 = lift(r0)
    rotations, u, sigma, vt = nearest_rotation(r0.data)

    denominator = sigma[..., :, None] + sigma[..., None, :]
    denominator = np.where(np.abs(denominator) < DENOMINATOR_FLOOR,
                           np.where(denominator < 0, -DENOMINATOR_FLOOR, DENOMINATOR_FLOOR),
                           denominator)
    factor = 1.0 / denominator
    diagonal = np.arange(sigma.shape[-1])
    factor[..., diagonal, diagonal] = 0.0

    def backward(grad):
        inner = np.swapaxes(u, -1, -2) @ grad @ np.swapaxes(vt, -1, -2)
        skew = factor * (inner - np.swapaxes(inner, -1, -2))
        return (u @ skew @ vt,)
    return make_result(rotations, (r0,), backward)
