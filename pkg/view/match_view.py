from dataclasses import asdict

from flask import jsonify, request
from flask.views import MethodView
from flask_request_validator import (
    validate_params,
    Param,
    JSON
)

from utils.rules import MeshFileRule, WritableDirectoryRule
from utils.custom_exceptions import InvalidConfig


class MatchView(MethodView):
    """ Presentation Layer

        Attributes:
            service       : MatchService 클래스
            config_service: ConfigService 클래스

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
    """

    def __init__(self, service, config_service):
        self.service = service
        self.config_service = config_service

    @validate_params(
        Param('source', JSON, str, rules=[MeshFileRule()]),
        Param('target', JSON, str, rules=[MeshFileRule()]),
        Param('out_dir', JSON, str, rules=[WritableDirectoryRule()])
    )
    def post(self, *args):
        """ POST 메소드: 메쉬 한 쌍 zero-shot 매칭

        source 정점마다 target 정점 인덱스를 찾아 결과 디렉토리에 저장한다.
        요청이 끝날 때까지 학습이 동기적으로 실행된다.

        Args:
            args:
                'source'  : source(S2) 메쉬 경로
                'target'  : target(S1) 메쉬 경로
                'out_dir' : 결과 디렉토리

            request.json:
                'config_file': key = value 설정 파일 경로 (선택)
                'config'     : {설정 키: 값} 덮어쓰기 (선택)

        Author: 홍길동

        Returns:
            200, {'message': 'success', 'result': RunManifest}

        Raises:
            400, {'message': 'invalid_parameter', 'error_message': '[데이터]가(이) 유효하지 않습니다.'}
            400, {'message': 'invalid_config', 'error_message': '...'}
            400, {'message': 'mesh_parse_error', 'error_message': '... line N', 'stage': 'load'}
            500, {'message': 'eigendecomposition_failed', 'error_message': '...', 'stage': 'spectral'}
            500, {'message': 'nan_loss', 'error_message': '...', 'stage': 'train'}
        """
        body = request.get_json(silent=True) or {}
        overrides = body.get('config') or {}
        if not isinstance(overrides, dict):
            raise InvalidConfig('config 는 {키: 값} 객체여야 합니다.')

        config = self.config_service.build_config(body.get('config_file'), overrides)
        manifest = self.service.run_match(args[0], args[1], args[2], config)

        return jsonify({'message': 'success', 'result': asdict(manifest)}), 200
