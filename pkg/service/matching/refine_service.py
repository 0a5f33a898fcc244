""" ZoomOut 정제

p2p → C (k×k) → p2p 를 번갈아 반복하며 스펙트럼 크기를 k_start 에서 k_end 까지 늘린다.
"""

import logging

import numpy as np
from scipy.spatial import cKDTree

from model.correspondence.point_map import PointMap
from utils.custom_exceptions import BasisTooSmall, InvalidConfig
from utils.decorator import timed_stage

logger = logging.getLogger(__name__)


def nearest_neighbors(queries, points):
    """ queries 의 각 행에 대해 가장 가까운 points 행 인덱스 (정확 탐색) """
    _, indices = cKDTree(points).query(queries, k=1)
    return np.asarray(indices, dtype=np.int64)


def fmap_from_assignments(assignments, basis1, basis2, k):
    """ C12 = Φ2ᵀ M2 Φ1[T21], 앞쪽 k 개 기저로 제한 """
    return basis2.pinv[:k] @ basis1.phi[assignments, :k]


def assignments_from_fmap(c12, basis1, basis2):
    k = c12.shape[0]
    return nearest_neighbors(basis2.phi[:, :k] @ c12, basis1.phi[:, :k])


def zoomout_schedule(k_start, k_end, step):
    """ [k_start, k_start + step, ..., k_end] """
    if step < 1:
        raise InvalidConfig('refine_step 은 1 이상이어야 합니다. ({})'.format(step))
    if k_start > k_end:
        raise InvalidConfig('k_start({}) 가 k_end({}) 보다 큽니다.'.format(k_start, k_end))

    schedule = [int(k_start)]
    while schedule[-1] < k_end:
        schedule.append(min(schedule[-1] + step, int(k_end)))
    return schedule


@timed_stage('refine')
def refine_zoomout(t21, basis1, basis2, k_start, k_end, step):
    """ ZoomOut

    Args:
        t21    : PointMap (S2 정점 → S1 인덱스)
        basis1 : target(S1) SpectralBasis
        basis2 : source(S2) SpectralBasis
        k_start, k_end, step: 스펙트럼 크기 스케줄

    Returns:
        PointMap

    Raises:
        400, {'message': 'basis_too_small', 'error_message': '...'}: k_end > 계산된 고유쌍 개수
    """
    available = min(basis1.k, basis2.k)
    if k_end > available:
        raise BasisTooSmall(
            'ZoomOut k_end={} 에 고유쌍이 {} 개뿐입니다. 더 큰 고유분해(k >= {})로 다시 실행하세요.'.format(
                k_end, available, k_end)
        )

    assignments = np.asarray(t21.assignments, dtype=np.int64)
    for k in zoomout_schedule(k_start, k_end, step):
        c12 = fmap_from_assignments(assignments, basis1, basis2, k)
        updated = assignments_from_fmap(c12, basis1, basis2)
        logger.debug('zoomout k=%d changed %d assignments', k, int((updated != assignments).sum()))
        assignments = updated

    return PointMap(assignments, t21.direction)
