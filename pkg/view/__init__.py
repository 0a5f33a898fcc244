""" 엔드 포인트의 시작 및 URL 관리

create_endpoints 함수가 정의되어 있는 곳. 함수 안에 사용할 url endpoint 를 정의한다.
파일 끝에 error_handle()함수를 호출 한다.

기본적인 사용 예시:
    app.add_url_rule('/matches', view_func=MatchView.as_view('match_view', match_service, config_service))

"""

from .match_view      import MatchView
from .evaluation_view import EvaluationView
from .transfer_view   import TransferView

from utils.error_handler import error_handle


def create_endpoints(app, services):

    """ 앤드 포인트 시작

            Args:
                app     : Flask 앱
                services: Services 클래스:Service 클래스들을 담고 있는 클래스이다.

            Returns: None

            Raises: None
    """

    config_service     = services.config_service
    match_service      = services.match_service
    evaluation_service = services.evaluation_service
    transfer_service   = services.transfer_service

    app.add_url_rule('/matches',
                     view_func=MatchView.as_view(
                         'match_view',
                         match_service,
                         config_service
                     ))

    app.add_url_rule('/evaluations',
                     view_func=EvaluationView.as_view(
                         'evaluation_view',
                         evaluation_service
                     ))

    app.add_url_rule('/transfers',
                     view_func=TransferView.as_view(
                         'transfer_view',
                         transfer_service
                     ))

    # error handler
    error_handle(app)
