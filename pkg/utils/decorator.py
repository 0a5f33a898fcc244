import logging
import time
from collections import OrderedDict
from functools import wraps

from flask import g, has_app_context

from utils.custom_exceptions import MatchingError

logger = logging.getLogger(__name__)

_fallback_timings = OrderedDict()


def get_stage_timings():
    """ 현재 실행 단위의 단계별 소요 시간

    앱 컨텍스트 안에서는 g 객체에, 밖에서는 모듈 전역 딕셔너리에 누적된다.

    Returns:
        OrderedDict: {단계 이름: 누적 초}
    """
    if has_app_context():
        if 'stage_timings' not in g:
            g.stage_timings = OrderedDict()
        return g.stage_timings
    return _fallback_timings


def reset_stage_timings():
    get_stage_timings().clear()


def timed_stage(stage):
    """ 단계 타이머 데코레이터

        Args:
            stage: 단계 이름 (load, spectral, train, refine, export, eval, transfer ...)

        Returns:
            func(*args, **kwargs) : 소요 시간은 get_stage_timings() 에 누적된다.

        Raises:
            MatchingError: 발생한 에러에 단계 이름을 붙여서 다시 raise 한다.
                           이미 단계가 붙어있으면 안쪽 단계를 유지한다.
    """

    def real_decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            started = time.perf_counter()
            try:
                return func(*args, **kwargs)

            except MatchingError as e:
                if e.stage is None:
                    e.stage = stage
                raise e

            finally:
                elapsed = time.perf_counter() - started
                timings = get_stage_timings()
                timings[stage] = timings.get(stage, 0.0) + elapsed
                logger.info('stage %s finished in %.3fs', stage, elapsed)
        return wrapper
    return real_decorator
