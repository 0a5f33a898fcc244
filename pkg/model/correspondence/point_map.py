""" 대응 관계 도메인 타입

방향 태그 '12' 는 S1 → S2, '21' 은 S2 → S1 을 뜻한다.
FunctionalMap 과 SoftP2P 는 미분 가능한 Tensor 를 그대로 들고 다닌다.
"""

from dataclasses import dataclass, field

import numpy as np

from utils.custom_exceptions import MapIndexOutOfRange


@dataclass(frozen=True, eq=False)
class PointMap:
    """ 하드 대응 관계

    Attributes:
        assignments: 질의 정점마다 대상 정점 인덱스 하나
        direction  : '21' 이면 S2(source) 정점 → S1(target) 인덱스
    """
    assignments: np.ndarray
    direction: str = '21'

    def validate(self, n_targets):
        bad = np.flatnonzero((self.assignments < 0) | (self.assignments >= n_targets))
        if len(bad):
            raise MapIndexOutOfRange(
                '인덱스 {} (line {}) 가 [0, {}) 범위를 벗어났습니다.'.format(
                    int(self.assignments[bad[0]]), int(bad[0]) + 1, n_targets
                )
            )
        return self

    def __len__(self):
        return len(self.assignments)


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """ source 쪽 정점마다 정답 target 정점 인덱스 """
    indices: np.ndarray

    def __len__(self):
        return len(self.indices)


@dataclass(frozen=True, eq=False)
class ErrorReport:
    """ 프린스턴 프로토콜 측지 오차 리포트

    Attributes:
        errors        : 정점별 정규화된 측지 오차 (도달 불가 정점은 inf)
        mean_error    : 유한한 오차의 평균
        excluded_count: 평균에서 제외된 inf 개수
        thresholds    : 곡선 샘플 임계값
        curve         : 임계값별 오차 <= 임계값 인 정점 비율
    """
    errors: np.ndarray
    mean_error: float
    excluded_count: int
    thresholds: np.ndarray = field(default_factory=lambda: np.empty(0))
    curve: np.ndarray = field(default_factory=lambda: np.empty(0))


@dataclass(frozen=True, eq=False)
class FunctionalMap:
    """ k×k 함수 맵 (Tensor) """
    C: object
    direction: str


@dataclass(frozen=True, eq=False)
class SoftP2P:
    """ 행 확률 소프트 대응 (Tensor). direction '21' 이면 (n2, n1) """
    P: object
    tau: float
    direction: str
