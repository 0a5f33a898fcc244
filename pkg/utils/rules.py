"""사용자 제작 규칙을 정의한다.
request 를 통해 받은 Parameter 값과 설정 파일의 값을 이곳에 정의된 규칙과 비교해 에러 메세지를 처리해준다.
기본적인 사용 예시:
class CustomRule(AbstractRule):
    def validate(self, value:str) -> Tuple[str, list[str]]:
        ...
        return value, errors
"""

import math
import os

from flask_request_validator import AbstractRule


class PositiveNumberRule(AbstractRule):
    def validate(self, value):
        errors = []
        if value is None or not math.isfinite(float(value)) or float(value) <= 0:
            errors.append('accept only positive numbers')
        return value, errors


class NonNegativeNumberRule(AbstractRule):
    def validate(self, value):
        errors = []
        if value is None or not math.isfinite(float(value)) or float(value) < 0:
            errors.append('accept only non-negative numbers')
        return value, errors


class PositiveIntegerRule(AbstractRule):
    def validate(self, value):
        errors = []
        if isinstance(value, bool) or int(value) != value or int(value) < 1:
            errors.append('accept only integers >= 1')
        return value, errors


class NonNegativeIntegerRule(AbstractRule):
    def validate(self, value):
        errors = []
        if isinstance(value, bool) or int(value) != value or int(value) < 0:
            errors.append('accept only integers >= 0')
        return value, errors


class ChoiceRule(AbstractRule):
    """ 허용된 값 목록 규칙

    features 모드(learned, hks, free), extrusion 모드(symmetric, one_sided) 확인에 사용한다.
    """

    def __init__(self, choices):
        super().__init__()
        self.choices = tuple(choices)

    def validate(self, value):
        errors = []
        if value not in self.choices:
            errors.append('accept only ' + ', '.join(self.choices))
        return value, errors


class ExistingFileRule(AbstractRule):
    def validate(self, value):
        errors = []
        if not value or not os.path.isfile(value):
            errors.append('file does not exist')
        return value, errors


class MeshFileRule(AbstractRule):
    extensions = ('.off', '.obj', '.ply')

    def validate(self, value):
        errors = []
        if not value or not os.path.isfile(value):
            errors.append('file does not exist')
        elif os.path.splitext(value)[1].lower() not in self.extensions:
            errors.append('accept only off, obj, ply meshes')
        return value, errors


class WritableDirectoryRule(AbstractRule):
    def validate(self, value):
        errors = []
        parent = os.path.abspath(value or '')
        while not os.path.exists(parent):
            parent = os.path.dirname(parent)
        if not value or not os.access(parent, os.W_OK):
            errors.append('directory is not writable')
        return value, errors
