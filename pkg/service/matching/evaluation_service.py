import logging

import numpy as np

from model.correspondence.point_map import ErrorReport
from service.geometry.mesh_service import geodesic_distance_rows, total_surface_area
from utils.custom_exceptions import MapSizeMismatch
from utils.decorator import timed_stage

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLDS = np.linspace(0.0, 0.25, 101)


def accuracy_curve(errors, thresholds=DEFAULT_THRESHOLDS):
    """ 임계값마다 오차 <= 임계값 인 정점 비율. inf 오차는 실패로 센다. """
    errors = np.asarray(getattr(errors, 'errors', errors), dtype=np.float64)
    thresholds = np.asarray(thresholds, dtype=np.float64)
    if len(errors) == 0:
        return np.ones_like(thresholds)
    return (errors[None, :] <= thresholds[:, None]).mean(axis=1)


def geodesic_error(pred, gt, target_mesh, thresholds=DEFAULT_THRESHOLDS):
    """ 프린스턴 프로토콜 측지 오차

    error(v) = d(pred(v), gt(v)) / sqrt(target 전체 넓이)

    Args:
        pred       : PointMap
        gt         : GroundTruth
        target_mesh: TriMesh

    Returns:
        ErrorReport

    Raises:
        400, {'message': 'map_size_mismatch', 'error_message': '...'}
    """
    if len(pred) != len(gt):
        raise MapSizeMismatch('예측 대응 {} 줄, 정답 대응 {} 줄로 크기가 다릅니다.'.format(len(pred), len(gt)))

    pred_indices = np.asarray(pred.assignments, dtype=np.int64)
    gt_indices = np.asarray(gt.indices, dtype=np.int64)

    sources, inverse = np.unique(gt_indices, return_inverse=True)
    distances = geodesic_distance_rows(target_mesh, sources)
    errors = distances[inverse.reshape(-1), pred_indices] / np.sqrt(total_surface_area(target_mesh))

    finite = np.isfinite(errors)
    excluded = int((~finite).sum())
    if excluded:
        logger.warning('%d unreachable vertex pairs excluded from the mean error', excluded)
    mean_error = float(errors[finite].mean()) if finite.any() else float('inf')

    thresholds = np.asarray(thresholds, dtype=np.float64)
    return ErrorReport(errors, mean_error, excluded, thresholds, accuracy_curve(errors, thresholds))


class EvaluationService:
    """ Business Layer: 대응 관계 파일 평가

    Attributes:
        mesh_dao          : MeshDao
        correspondence_dao: CorrespondenceDao

    Author: 홍길동

    History:
        2026-10-02(홍길동): 초기 생성
    """

    def __init__(self, mesh_dao, correspondence_dao):
        self.mesh_dao = mesh_dao
        self.correspondence_dao = correspondence_dao

    @timed_stage('eval')
    def evaluate_files(self, pred_path, gt_path, target_path, report_path=None):
        """ 예측/정답 대응 파일과 target 메쉬로 리포트 계산

        Returns:
            (ErrorReport, 저장된 경로 dict)
        """
        target = self.mesh_dao.load_mesh(target_path)
        pred = self.correspondence_dao.load_point_map(pred_path, target.n_vertices)
        gt = self.correspondence_dao.load_ground_truth(gt_path, target.n_vertices)

        report = geodesic_error(pred, gt, target)
        logger.info('mean normalized geodesic error %.6g (%d excluded)', report.mean_error, report.excluded_count)

        outputs = {}
        if report_path:
            outputs['errors'], outputs['curve'] = self.correspondence_dao.save_error_report(report_path, report)
        return report, outputs
