import logging
import os

from model.run.match_config import RunManifest
from service.matching.train_service import fit_pair
from utils.decorator import get_stage_timings, reset_stage_timings, timed_stage
from utils.file_path import GenerateFilePath

logger = logging.getLogger(__name__)


class MatchService:
    """ Business Layer: 메쉬 한 쌍 매칭 실행과 결과물 저장

    Attributes:
        mesh_service      : MeshService
        spectral_service  : SpectralService
        correspondence_dao: CorrespondenceDao
        run_dao           : RunDao

    Author: 홍길동

    History:
        2026-10-02(홍길동): 초기 생성
    """

    def __init__(self, mesh_service, spectral_service, correspondence_dao, run_dao):
        self.mesh_service = mesh_service
        self.spectral_service = spectral_service
        self.correspondence_dao = correspondence_dao
        self.run_dao = run_dao

    def match_meshes(self, source, target, config, landmarks=None, init_parameters=None, on_iteration=None):
        """ 이미 로드된 메쉬 한 쌍 매칭

        Args:
            source: S2 TriMesh (대응 관계의 정의역)
            target: S1 TriMesh

        Returns:
            FitResult
        """
        return fit_pair(target, source, config, self.spectral_service.get_basis_pair,
                        landmarks, init_parameters, on_iteration)

    def run_match(self, source_path, target_path, out_dir, config):
        """ 매칭 실행 후 결과물 저장

        1. 메쉬, 랜드마크, 체크포인트 로드
        2. fit_pair (스펙트럼 → 학습 → 최근접 이웃 → ZoomOut)
        3. T21, S3, 손실 히스토리, (선택) C 행렬 / 파라미터, RunManifest 저장

        Args:
            source_path: source(S2) 메쉬 경로
            target_path: target(S1) 메쉬 경로
            out_dir    : 결과 디렉토리
            config     : MatchConfig

        Returns:
            RunManifest

        Raises:
            MatchingError: 단계 이름이 붙은 입력 / 수치 오류
        """
        reset_stage_timings()
        paths = GenerateFilePath(out_dir).prepare()

        source, target = self.mesh_service.load_mesh_pair(source_path, target_path)
        landmarks = self._load_landmarks(config, source, target)
        init_parameters = self._load_parameters(config)

        def export_snapshot(iteration, values, s3):
            if config.export_every and iteration % config.export_every == 0:
                self.mesh_service.save_mesh(paths.generate_file_path(5, iteration=iteration), (s3, source.faces))

        result = self.match_meshes(source, target, config, landmarks, init_parameters, export_snapshot)

        outputs = self._save_outputs(paths, source, config, result)
        summary = {
            'iterations': result.state.iteration,
            'best_iteration': result.state.best_iteration,
            'best_loss': result.state.best_loss if result.history else None,
            'stopped_early': result.state.stopped_early,
            'source_vertices': source.n_vertices,
            'target_vertices': target.n_vertices
        }

        manifest = RunManifest(
            source=os.path.abspath(source_path),
            target=os.path.abspath(target_path),
            config=config.as_dict(),
            seed=config.seed,
            timings=dict(get_stage_timings()),
            outputs=outputs,
            summary=summary
        )
        manifest.outputs['manifest'] = paths.generate_file_path(4)
        self.run_dao.save_manifest(manifest.outputs['manifest'], manifest)
        logger.info('match finished: %s', summary)
        return manifest

    @timed_stage('load')
    def _load_landmarks(self, config, source, target):
        if not config.landmarks:
            return None
        return self.correspondence_dao.load_landmarks(config.landmarks, source.n_vertices, target.n_vertices)

    @timed_stage('load')
    def _load_parameters(self, config):
        if not config.init_parameters:
            return None
        return self.run_dao.load_parameters(config.init_parameters)

    @timed_stage('export')
    def _save_outputs(self, paths, source, config, result):
        outputs = {
            'correspondence': self.correspondence_dao.save_point_map(paths.generate_file_path(1), result.t21),
            'reconstruction': self.mesh_service.save_mesh(paths.generate_file_path(2), (result.s3, source.faces)),
            'loss_history': self.run_dao.save_loss_history(paths.generate_file_path(3), result.history)
        }

        if config.refine:
            outputs['correspondence_initial'] = self.correspondence_dao.save_point_map(
                paths.generate_file_path(8), result.t21_initial)

        if config.dump_fmaps and result.c12 is not None:
            for direction, matrix in (('12', result.c12), ('21', result.c21)):
                outputs['fmap_c' + direction] = self.correspondence_dao.save_matrix(
                    paths.generate_file_path(6, direction=direction), matrix, 'C{} ({}x{})'.format(
                        direction, *matrix.shape))

        if config.save_parameters:
            outputs['parameters'] = self.run_dao.save_parameters(paths.generate_file_path(7), result.parameters)
        return outputs
