""" 매칭 설정 조립

우선순위: MATCH_DEFAULTS < 설정 파일 < 명시적으로 전달된 CLI 플래그 / JSON 필드
"""

import os
import typing
from dataclasses import replace

from model.run.match_config import MatchConfig
from utils.custom_exceptions import InvalidConfig

TRUE_VALUES = ('true', '1', 'yes', 'on')
FALSE_VALUES = ('false', '0', 'no', 'off')
PATH_KEYS = ('landmarks', 'init_parameters')


def _value_type(item):
    if typing.get_origin(item.type) is typing.Union:
        return next(arg for arg in typing.get_args(item.type) if arg is not type(None)), True
    return item.type, False


def option_value_type(item):
    """ Optional 을 벗긴 필드 타입 """
    return _value_type(item)[0]


def convert_value(item, raw):
    """ 문자열 또는 JSON 값을 필드 타입으로 변환

    Raises:
        ValueError: 변환 실패
    """
    value_type, optional = _value_type(item)
    if raw is None or (optional and isinstance(raw, str) and raw.strip().lower() in ('', 'none', 'null')):
        if optional:
            return None
        raise ValueError('값이 비어 있습니다.')

    if value_type is bool:
        if isinstance(raw, bool):
            return raw
        text = str(raw).strip().lower()
        if text in TRUE_VALUES:
            return True
        if text in FALSE_VALUES:
            return False
        raise ValueError('true/false 값이 아닙니다.')

    if value_type is int:
        if isinstance(raw, bool):
            raise ValueError('정수가 아닙니다.')
        number = float(raw)
        if not number.is_integer():
            raise ValueError('정수가 아닙니다.')
        return int(number)

    if value_type is float:
        if isinstance(raw, bool):
            raise ValueError('실수가 아닙니다.')
        return float(raw)

    return str(raw).strip()


def validate_value(item, value):
    """ 필드 metadata 의 규칙 검사. Returns: 에러 메세지 리스트 """
    if value is None:
        return []
    errors = []
    for rule in item.metadata.get('rules', ()):
        try:
            _, rule_errors = rule.validate(value)
        except (TypeError, ValueError) as e:
            rule_errors = [str(e)]
        errors.extend(rule_errors)
    return errors


class ConfigService:
    """ Business Layer: MatchConfig 생성

    Attributes:
        run_dao : RunDao (설정 파일 읽기)
        defaults: app.config['MATCH_DEFAULTS']

    Author: 홍길동

    History:
        2026-10-02(홍길동): 초기 생성
    """

    def __init__(self, run_dao, defaults=None):
        self.run_dao = run_dao
        self.defaults = dict(defaults or {})
        self.field_types = MatchConfig.field_types()

    def _assign(self, values, key, raw, where):
        if key not in self.field_types:
            raise InvalidConfig('알 수 없는 설정 키 "{}" ({})'.format(key, where))

        item = self.field_types[key]
        try:
            value = convert_value(item, raw)
        except (TypeError, ValueError) as e:
            raise InvalidConfig('{} = {!r}: {} ({})'.format(key, raw, e, where))

        errors = validate_value(item, value)
        if errors:
            raise InvalidConfig('{} = {!r}: {} ({})'.format(key, raw, ', '.join(errors), where))
        values[key] = value

    def build_config(self, config_path=None, overrides=None):
        """ 설정 조립

        Args:
            config_path: key = value 설정 파일 경로 (없으면 None)
            overrides  : {키: 값}, None 인 값은 '전달되지 않음' 으로 본다

        Returns:
            MatchConfig

        Raises:
            400, {'message': 'invalid_config', 'error_message': '... line N'}
        """
        values = {}
        for key, raw in self.defaults.items():
            self._assign(values, key, raw, 'MATCH_DEFAULTS')

        if config_path:
            base_dir = os.path.dirname(os.path.abspath(config_path))
            for line, key, raw in self.run_dao.read_config_file(config_path):
                if key in PATH_KEYS and raw and not os.path.isabs(raw) and raw.lower() not in ('none', 'null'):
                    raw = os.path.join(base_dir, raw)
                self._assign(values, key, raw, '{} line {}'.format(config_path, line))

        for key, raw in (overrides or {}).items():
            if raw is not None:
                self._assign(values, key, raw, 'flag --{}'.format(key.replace('_', '-')))

        config = replace(MatchConfig(), **values)
        if config.refine and config.refine_k_end < config.k:
            raise InvalidConfig('refine_k_end({}) 는 k({}) 이상이어야 합니다.'.format(config.refine_k_end, config.k))
        return config
