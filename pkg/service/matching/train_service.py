""" 쌍별 zero-shot 최적화

한 쌍의 메쉬마다 특징 추출기, 함수 맵, 프리즘 디코더를 처음부터 함께 학습한다.
S1 은 target, S2 는 source 이며 최종 결과는 T21 (S2 정점 → S1 인덱스) 이다.
"""

import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from tqdm import tqdm

from model.correspondence.point_map import PointMap
from service.autodiff import Adam, Tape, Tensor, backward, concatenate
from service.geometry.mesh_service import geodesic_distance_rows, identity_normalization, normalize_mesh
from service.matching.fmap_service import fmap_forward
from service.matching.loss_service import LossWeights, loss_cycle, loss_fmap, loss_mse, total_loss
from service.matching.primo_service import build_prisms, primo_energy
from service.matching.refine_service import nearest_neighbors, refine_zoomout
from service.network.diffusion_net import (
    Backbone,
    BackboneConfig,
    backbone_forward,
    hks_features,
    spectral_time_scale
)
from service.network.layers import ParameterSet
from service.network.prism_decoder import PrismDecoder, ShapeEncoder, corner_average_matrix, reconstruct_vertices
from utils.decorator import timed_stage

logger = logging.getLogger(__name__)

FREE_FEATURE_STD = 0.1
PROGRESS_LOG_EVERY = 50


def landmark_channels(mesh, vertices, sigma):
    """ 랜드마크 정점까지의 측지 거리 d 에 대해 exp(-(d/σ)²) 채널 (n, m) """
    distances = geodesic_distance_rows(mesh, vertices).T
    channels = np.exp(-(distances / sigma) ** 2)
    channels[~np.isfinite(distances)] = 0.0
    return channels


@dataclass
class TrainState:
    """ 학습 진행 상태

    best_loss 는 엄격하게 감소할 때만 갱신되므로 동률이면 앞선 반복이 남는다.
    """
    iteration: int = 0
    best_loss: float = math.inf
    best_iteration: int = 0
    patience_counter: int = 0
    best_snapshot: dict = field(default_factory=dict)
    history: list = field(default_factory=list)
    stopped_early: bool = False

    def observe(self, iteration, values):
        """ 반복 결과 기록. Returns: 최고 기록 갱신 여부 """
        self.iteration = iteration
        improved = values['total'] < self.best_loss
        if improved:
            self.best_loss = values['total']
            self.best_iteration = iteration
            self.patience_counter = 0
        else:
            self.patience_counter += 1

        entry = {'iteration': iteration}
        entry.update(values)
        entry['best_total'] = self.best_loss
        self.history.append(entry)
        return improved

    def exhausted(self, patience):
        return self.patience_counter >= patience


class MatchModel:
    """ 한 쌍에 대한 학습 그래프

    Attributes:
        params : ParameterSet (생성 순서가 고정되어 있어 시드가 같으면 초기값도 같다)
        mesh1, mesh2  : 정규화된 target / source 메쉬
        basis1, basis2: k 개로 자른 스펙트럼 기저
    """

    def __init__(self, config, mesh1, mesh2, basis1, basis2, landmarks=None):
        self.config = config
        self.mesh1, self.mesh2 = mesh1, mesh2
        self.basis1, self.basis2 = basis1, basis2
        self.params = ParameterSet(np.random.default_rng(config.seed))
        self.weights = LossWeights.from_config(config)

        time_scale = spectral_time_scale(basis1, basis2)
        if config.features == 'learned':
            self.feature_net = Backbone(self.params, 'features',
                                        BackboneConfig(3, config.feature_dim, config.width, config.n_blocks),
                                        time_scale)
        elif config.features == 'free':
            self.free1 = self.params.normal('features.free1', (mesh1.n_vertices, config.feature_dim),
                                            FREE_FEATURE_STD)
            self.free2 = self.params.normal('features.free2', (mesh2.n_vertices, config.feature_dim),
                                            FREE_FEATURE_STD)
        else:
            self.hks1 = hks_features(basis1, config.hks_times)
            self.hks2 = hks_features(basis2, config.hks_times)

        self.encoder = ShapeEncoder(self.params, config.latent_dim, config.width, config.n_blocks, time_scale)
        self.decoder = PrismDecoder(self.params, config.latent_dim, config.decoder_dim, config.width,
                                    config.n_blocks, time_scale)

        self.landmarks1 = self.landmarks2 = None
        if landmarks is not None and len(landmarks):
            self.landmarks2 = landmark_channels(mesh2, landmarks[:, 0], config.landmark_sigma)
            self.landmarks1 = landmark_channels(mesh1, landmarks[:, 1], config.landmark_sigma)

        self.prisms = build_prisms(mesh2, config.h, config.extrusion)
        self.averaging = corner_average_matrix(mesh2)

    def features(self):
        if self.config.features == 'learned':
            feat1 = backbone_forward(self.feature_net, self.basis1, self.mesh1.vertices)
            feat2 = backbone_forward(self.feature_net, self.basis2, self.mesh2.vertices)
        elif self.config.features == 'free':
            feat1, feat2 = self.free1, self.free2
        else:
            feat1, feat2 = Tensor(self.hks1), Tensor(self.hks2)

        if self.landmarks1 is not None:
            feat1 = concatenate([feat1, self.landmarks1], axis=-1)
            feat2 = concatenate([feat2, self.landmarks2], axis=-1)
        return feat1, feat2

    def forward(self):
        """ 한 번의 forward

        Returns:
            (total Tensor, 손실 값 dict, FmapOutput, S3 Tensor)
        """
        feat1, feat2 = self.features()
        fmaps = fmap_forward(feat1, feat2, self.basis1, self.basis2, self.config.lambda_commut, self.config.tau,
                             self.config.similarity)

        latent = self.encoder.encode(self.basis1, self.mesh1.vertices)
        translations, rotations = self.decoder.decode_face_transforms(
            self.basis2, self.mesh2.vertices, latent, self.mesh2.faces)
        s3 = reconstruct_vertices(self.mesh2, translations, rotations, self.averaging)

        s1 = self.mesh1.vertices
        terms = {
            'mse': loss_mse(fmaps.p21.P, s1, s3),
            'fmap': loss_fmap(fmaps.c12.C, fmaps.c21.C),
            'cycle': loss_cycle(fmaps.p12.P, fmaps.p21.P, s1),
            'primo': primo_energy(self.prisms, translations, rotations)
        }
        total, values = total_loss(terms, self.weights)
        return total, values, fmaps, s3


@dataclass
class FitResult:
    """ fit_pair 결과. s3 는 target 원래 좌표계로 되돌린 값이다. """
    t21: PointMap
    t21_initial: PointMap
    s3: np.ndarray
    history: list
    state: TrainState
    c12: Optional[np.ndarray] = None
    c21: Optional[np.ndarray] = None
    parameters: dict = field(default_factory=dict)


def _progress(iterable, total):
    return tqdm(iterable, total=total, desc='fit_pair', leave=False, disable=not sys.stderr.isatty())


@timed_stage('train')
def _optimize(model, config, init_parameters=None, on_iteration=None):
    state = TrainState()
    if init_parameters is not None:
        model.params.load(init_parameters)
    optimizer = Adam(model.params.values(), config.lr)

    for iteration in _progress(range(1, config.max_iters + 1), config.max_iters):
        with Tape():
            total, values, fmaps, s3 = model.forward()

        if state.observe(iteration, values):
            state.best_snapshot = {
                's3': s3.data.copy(),
                'c12': fmaps.c12.C.data.copy(),
                'c21': fmaps.c21.C.data.copy(),
                'parameters': model.params.named_arrays()
            }

        logger.debug('iteration %d %s', iteration, values)
        if iteration % PROGRESS_LOG_EVERY == 0:
            logger.info('iteration %d total %.6g best %.6g (iteration %d)',
                        iteration, values['total'], state.best_loss, state.best_iteration)

        if total.tape is not None:
            backward(total)
        optimizer.step()

        if on_iteration is not None:
            on_iteration(iteration, values, s3.data)

        if state.exhausted(config.patience):
            state.stopped_early = True
            logger.info('early stop at iteration %d: no improvement for %d iterations', iteration, config.patience)
            break

    return state


def fit_pair(mesh1, mesh2, config, basis_provider, landmarks=None, init_parameters=None, on_iteration=None):
    """ 한 쌍 zero-shot 매칭

    Args:
        mesh1          : target S1 TriMesh
        mesh2          : source S2 TriMesh
        config         : MatchConfig
        basis_provider : (mesh1, mesh2, k) → (basis1, basis2)
        landmarks      : (m, 2) [source 인덱스, target 인덱스] 또는 None
        init_parameters: 이어서 학습할 {이름: 배열} 또는 None
        on_iteration   : (iteration, 손실 dict, target 좌표계 S3) 콜백

    Returns:
        FitResult

    Raises:
        500, {'message': 'nan_loss', 'error_message': '<term> ...'}
        500, {'message': 'nan_gradient', 'error_message': '<parameter> ...'}
    """
    if config.normalize:
        normalized1, frame1 = normalize_mesh(mesh1)
        normalized2, _ = normalize_mesh(mesh2)
    else:
        normalized1, frame1 = mesh1, identity_normalization()
        normalized2 = mesh2

    full1, full2 = basis_provider(normalized1, normalized2, config.n_eigenpairs)
    basis1, basis2 = full1.truncate(config.k), full2.truncate(config.k)

    model = MatchModel(config, normalized1, normalized2, basis1, basis2, landmarks)
    logger.info('matching %r → %r with %d parameter tensors, features=%s',
                mesh2, mesh1, len(model.params), config.features)

    callback = None
    if on_iteration is not None:
        def callback(iteration, values, s3):
            on_iteration(iteration, values, frame1.undo(s3))

    state = _optimize(model, config, init_parameters, callback)

    snapshot = state.best_snapshot
    s3 = snapshot.get('s3', normalized2.vertices)
    t21_initial = PointMap(nearest_neighbors(s3, normalized1.vertices), '21')

    t21 = t21_initial
    if config.refine:
        t21 = refine_zoomout(t21_initial, full1, full2, config.k, config.refine_k_end, config.refine_step)

    return FitResult(
        t21=t21,
        t21_initial=t21_initial,
        s3=frame1.undo(s3),
        history=state.history,
        state=state,
        c12=snapshot.get('c12'),
        c21=snapshot.get('c21'),
        parameters=snapshot.get('parameters', model.params.named_arrays())
    )
