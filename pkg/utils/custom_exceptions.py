"""사용자 제작 예외 처리
매칭 엔진 관련 사용자 제작 예외처리는 모두 이곳에 MatchingError 클래스를 상속받아 작성한다.
작성한 사용자 제작 예외 처리는 error_handler.py(HTTP) 와 manage.py(CLI) 에서 사용된다.

종료 코드:
    1: 사용법 오류 (click)
    2: 입력 오류 (status_code 4xx)
    3: 수치 계산 실패

기본적인 사용 예시:
class IamException(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'your_message_goes_here'
        super().__init__(status_code, message, error_message)
"""

INPUT_ERROR_EXIT_CODE = 2
NUMERICAL_ERROR_EXIT_CODE = 3


class MatchingError(Exception):
    def __init__(self, status_code, message, error_message, exit_code=None):
        self.status_code = status_code
        self.message = message
        self.error_message = error_message
        self.stage = None
        if exit_code is None:
            exit_code = INPUT_ERROR_EXIT_CODE if status_code < 500 else NUMERICAL_ERROR_EXIT_CODE
        self.exit_code = exit_code
        super().__init__(status_code, message, error_message)

    def __str__(self):
        text = '{}: {}'.format(self.message, self.error_message)
        if self.stage:
            return '[{}] {}'.format(self.stage, text)
        return text


# ----------------------------------------------------------------------------------------------------------------------
# 입력 파일
# ----------------------------------------------------------------------------------------------------------------------
class MeshParseError(MatchingError):
    """ 메쉬 파일 파싱 실패

    error_message 에 파일 경로와 라인 번호를 담는다.
    """
    def __init__(self, error_message):
        status_code = 400
        message = 'mesh_parse_error'
        super().__init__(status_code, message, error_message)


class NonTriangularFace(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'non_triangular_face'
        super().__init__(status_code, message, error_message)


class EmptyMesh(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'empty_mesh'
        super().__init__(status_code, message, error_message)


class InvalidMesh(MatchingError):
    """ 유한하지 않은 좌표, 면 인덱스 범위 초과, 중복 정점을 가진 면, 넓이 0 인 면 """
    def __init__(self, error_message):
        status_code = 400
        message = 'invalid_mesh'
        super().__init__(status_code, message, error_message)


class IsolatedVertex(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'isolated_vertex'
        super().__init__(status_code, message, error_message)


class UnsupportedFormat(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'unsupported_format'
        super().__init__(status_code, message, error_message)


class InvalidConfig(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'invalid_config'
        super().__init__(status_code, message, error_message)


class InvalidLandmarks(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'invalid_landmarks'
        super().__init__(status_code, message, error_message)


class MapIndexOutOfRange(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'map_index_out_of_range'
        super().__init__(status_code, message, error_message)


class MapSizeMismatch(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'map_size_mismatch'
        super().__init__(status_code, message, error_message)


class MapParseError(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'map_parse_error'
        super().__init__(status_code, message, error_message)


class BasisTooSmall(MatchingError):
    """ 요청한 스펙트럼 크기가 계산된 기저보다 큰 경우 """
    def __init__(self, error_message):
        status_code = 400
        message = 'basis_too_small'
        super().__init__(status_code, message, error_message)


class OutputNotWritable(MatchingError):
    def __init__(self, error_message):
        status_code = 400
        message = 'output_not_writable'
        super().__init__(status_code, message, error_message)


# ----------------------------------------------------------------------------------------------------------------------
# 수치 계산
# ----------------------------------------------------------------------------------------------------------------------
class EigenDecompositionFailed(MatchingError):
    def __init__(self, error_message):
        status_code = 500
        message = 'eigen_decomposition_failed'
        super().__init__(status_code, message, error_message)


class DegenerateRotation(MatchingError):
    def __init__(self, error_message):
        status_code = 500
        message = 'degenerate_rotation_estimate'
        super().__init__(status_code, message, error_message)


class UntrackedTensor(MatchingError):
    """ 테이프에 기록되지 않은 텐서로 backward 를 호출한 경우 """
    def __init__(self, error_message):
        status_code = 500
        message = 'untracked_tensor'
        super().__init__(status_code, message, error_message)


class NanGradient(MatchingError):
    def __init__(self, error_message):
        status_code = 500
        message = 'nan_gradient'
        super().__init__(status_code, message, error_message)


class NanLoss(MatchingError):
    def __init__(self, error_message):
        status_code = 500
        message = 'nan_loss'
        super().__init__(status_code, message, error_message)
