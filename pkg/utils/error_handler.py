""" 예외 처리 통합 관리

모든 레이어에서 raise 되는 예외처리는 이곳에서 처리된다.
HTTP 요청은 error_handle() 에 등록된 핸들러가, CLI 는 exit_code_for() 가 종료 코드를 결정한다.

자주 사용되는 에러 목록:
    1. MatchingError 하위 클래스, 입력 파일/설정 오류(4xx) 와 수치 계산 실패(5xx).
    2. KeyError, 요청 본문에 필요한 키가 없는 경우.
    3. InvalidRequest, flask_request_validator 규칙 위반.

기본적인 사용 예시:
    @app.errorhandler(Exception)
    def handle_error(e):
        return jsonify({'message': 'type your error message here', 'error_message': format(e)}), 500
"""

import logging

import click
from flask import jsonify
from flask_request_validator.exceptions import InvalidRequest

from utils.custom_exceptions import MatchingError

USAGE_EXIT_CODE = 1

logger = logging.getLogger(__name__)


# start error handling
def error_handle(app):

    @app.errorhandler(Exception)
    def handle_internal_server_error(e):
        logger.exception('unhandled error')
        return jsonify({'message': 'internal_server_error', 'error_message': format(e)}), 500

    @app.errorhandler(KeyError)
    def handle_key_error(e):
        return jsonify({'message': 'key_error', 'error_message': format(e)}), 400

    # pram customized exception
    @app.errorhandler(InvalidRequest)
    def handle_user_custom_rule(e):
        errors = getattr(e, 'errors', None) or {}
        return jsonify({'message': 'invalid_parameter',
                        'error_message': ", ".join(str(key) for key in errors) + '가(이) 유효하지 않습니다.'}), 400

    # customized exception
    @app.errorhandler(MatchingError)
    def handle_error(e):
        return jsonify({'message': e.message, 'error_message': e.error_message, 'stage': e.stage}), e.status_code


def exit_code_for(error):
    """ CLI 종료 코드 결정

    Args:
        error: CLI 실행 중 발생한 예외

    Returns:
        1: click 사용법 오류
        2: 입력 오류
        3: 수치 계산 실패 및 알 수 없는 에러
    """
    if isinstance(error, (click.ClickException, click.Abort)):
        return USAGE_EXIT_CODE
    if isinstance(error, MatchingError):
        return error.exit_code
    if isinstance(error, (FileNotFoundError, PermissionError, IsADirectoryError)):
        return 2
    return 3
