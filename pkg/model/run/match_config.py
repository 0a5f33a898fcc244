""" 매칭 설정과 실행 기록 도메인 타입

MatchConfig 의 필드 하나가 설정 파일 키 하나, CLI 플래그 하나에 대응한다.
필드 metadata 의 rules 는 utils/rules.py 의 규칙으로 값을 검증한다.
"""

from dataclasses import dataclass, field, fields, asdict
from typing import Optional

from utils.rules import (
    PositiveNumberRule,
    NonNegativeNumberRule,
    PositiveIntegerRule,
    NonNegativeIntegerRule,
    ChoiceRule,
    ExistingFileRule
)

FEATURE_MODES = ('learned', 'hks', 'free')
SIMILARITY_MODES = ('cosine', 'dot')
EXTRUSION_MODES = ('symmetric', 'one_sided')


def option(default, help_text, rules=()):
    return field(default=default, metadata={'help': help_text, 'rules': tuple(rules)})


@dataclass(frozen=True)
class MatchConfig:
    # 함수 맵
    k: int = option(30, '함수 맵 스펙트럼 크기', [PositiveIntegerRule()])
    lambda_commut: float = option(1e-3, '라플라시안 교환 정규화 가중치', [NonNegativeNumberRule()])
    tau: float = option(0.07, '소프트 대응 온도', [PositiveNumberRule()])
    similarity: str = option('cosine', '소프트 대응 유사도 (cosine: 행 정규화 후 내적, dot: 내적)',
                             [ChoiceRule(SIMILARITY_MODES)])

    # PriMo
    h: float = option(0.02, '프리즘 높이', [NonNegativeNumberRule()])
    extrusion: str = option('symmetric', '프리즘 돌출 방식', [ChoiceRule(EXTRUSION_MODES)])

    # 손실 가중치
    w_mse: float = option(1.0, 'L_mse 가중치', [NonNegativeNumberRule()])
    w_fmap: float = option(1.0, 'L_fmap 가중치', [NonNegativeNumberRule()])
    w_cycle: float = option(1.0, 'L_cycle 가중치', [NonNegativeNumberRule()])
    w_primo: float = option(1.0, 'L_primo 가중치', [NonNegativeNumberRule()])

    # 최적화
    lr: float = option(1e-3, 'Adam 학습률', [PositiveNumberRule()])
    max_iters: int = option(1000, '최대 반복 횟수', [NonNegativeIntegerRule()])
    patience: int = option(100, '개선 없는 반복 허용 횟수', [PositiveIntegerRule()])
    seed: int = option(0, '난수 시드', [NonNegativeIntegerRule()])
    normalize: bool = option(True, '중심 이동 + 단위 넓이 정규화')

    # 특징
    features: str = option('learned', '특징 추출 방식', [ChoiceRule(FEATURE_MODES)])
    hks_times: int = option(16, 'HKS 시간 샘플 수', [PositiveIntegerRule()])
    landmarks: Optional[str] = option(None, '랜드마크 파일 (source target 쌍)', [ExistingFileRule()])
    landmark_sigma: float = option(0.1, '랜드마크 채널 폭', [PositiveNumberRule()])

    # 네트워크
    width: int = option(128, 'DiffusionNet 블록 너비', [PositiveIntegerRule()])
    n_blocks: int = option(4, 'DiffusionNet 블록 수', [PositiveIntegerRule()])
    feature_dim: int = option(128, '함수 맵 특징 차원', [PositiveIntegerRule()])
    latent_dim: int = option(512, '잠재 코드 차원 d1', [PositiveIntegerRule()])
    decoder_dim: int = option(512, '디코더 정점 특징 차원 d2', [PositiveIntegerRule()])

    # ZoomOut 정제
    refine: bool = option(True, 'ZoomOut 정제 수행')
    refine_k_end: int = option(100, 'ZoomOut 최종 스펙트럼 크기', [PositiveIntegerRule()])
    refine_step: int = option(10, 'ZoomOut 스펙트럼 증가량', [PositiveIntegerRule()])

    # 결과물
    dump_fmaps: bool = option(False, 'C12/C21 텍스트 덤프')
    export_every: int = option(0, 'N 반복마다 S3 OFF 저장 (0 이면 끔)', [NonNegativeIntegerRule()])
    save_parameters: bool = option(False, '최적 파라미터 체크포인트 저장')
    init_parameters: Optional[str] = option(None, '이어서 학습할 파라미터 파일', [ExistingFileRule()])

    @classmethod
    def field_types(cls):
        return {item.name: item for item in fields(cls)}

    @property
    def n_eigenpairs(self):
        """ 미리 계산해야 할 고유쌍 개수 """
        if self.refine:
            return max(self.k, self.refine_k_end)
        return self.k

    def as_dict(self):
        return asdict(self)


@dataclass
class RunManifest:
    """ 실행 기록

    입력 경로, 설정 스냅샷, 시드, 단계별 소요 시간, 결과물 경로.
    설정 스냅샷과 입력만으로 실행을 재현할 수 있어야 한다.
    """
    source: str
    target: str
    config: dict
    seed: int
    timings: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
