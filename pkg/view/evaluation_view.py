import math
import os

from flask import jsonify
from flask.views import MethodView
from flask_request_validator import (
    validate_params,
    Param,
    JSON
)

from utils.rules import ExistingFileRule, MeshFileRule


class EvaluationView(MethodView):
    """ Presentation Layer

        Attributes:
            service: EvaluationService 클래스

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
            2026-10-17(홍길동): report 생략 시 기본 경로 사용
    """

    def __init__(self, service):
        self.service = service

    @validate_params(
        Param('pred', JSON, str, rules=[ExistingFileRule()]),
        Param('gt', JSON, str, rules=[ExistingFileRule()]),
        Param('target_mesh', JSON, str, rules=[MeshFileRule()]),
        Param('report', JSON, str, required=False)
    )
    def post(self, *args):
        """ POST 메소드: 정규화 측지 오차 평가

        Args:
            args:
                'pred'       : 예측 대응 파일
                'gt'         : 정답 대응 파일
                'target_mesh': 대응 인덱스가 가리키는 메쉬
                'report'     : 정점별 오차 테이블 경로, 생략하면 <pred>_errors.tsv (곡선은 <report>_curve.tsv)

        Author: 홍길동

        Returns:
            200, {'message': 'success', 'result': {'mean_error', 'excluded_count', 'curve', 'outputs'}}
            모든 정점이 도달 불가면 mean_error 는 null

        Raises:
            400, {'message': 'map_size_mismatch', 'error_message': '...', 'stage': 'eval'}
            400, {'message': 'map_index_out_of_range', 'error_message': '... line N', 'stage': 'eval'}
        """
        pred, gt, target_mesh, report_path = args[0], args[1], args[2], args[3]
        if report_path is None:
            report_path = os.path.splitext(pred)[0] + '_errors.tsv'

        report, outputs = self.service.evaluate_files(pred, gt, target_mesh, report_path)

        mean_error = report.mean_error if math.isfinite(report.mean_error) else None
        result = {
            'mean_error': mean_error,
            'excluded_count': report.excluded_count,
            'curve': [[float(threshold), float(fraction)]
                      for threshold, fraction in zip(report.thresholds, report.curve)],
            'outputs': outputs
        }
        return jsonify({'message': 'success', 'result': result}), 200
