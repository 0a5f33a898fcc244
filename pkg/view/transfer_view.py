from flask import jsonify
from flask.views import MethodView
from flask_request_validator import (
    validate_params,
    Param,
    JSON
)

from utils.rules import ExistingFileRule, MeshFileRule


class TransferView(MethodView):
    """ Presentation Layer

        Attributes:
            service: TransferService 클래스

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
    """

    def __init__(self, service):
        self.service = service

    @validate_params(
        Param('source', JSON, str, rules=[MeshFileRule()]),
        Param('target', JSON, str, rules=[MeshFileRule()]),
        Param('map', JSON, str, rules=[ExistingFileRule()]),
        Param('out', JSON, str)
    )
    def post(self, *args):
        """ POST 메소드: target 좌표색을 대응 관계로 source 에 전사한 COFF 저장

        Author: 홍길동

        Returns:
            200, {'message': 'success', 'result': {'out': 경로, 'vertex_count': N}}

        Raises:
            400, {'message': 'map_size_mismatch', 'error_message': '...', 'stage': 'transfer'}
            400, {'message': 'output_not_writable', 'error_message': '...', 'stage': 'transfer'}
        """
        result = self.service.transfer(args[0], args[1], args[2], args[3])
        return jsonify({'message': 'success', 'result': result}), 200
