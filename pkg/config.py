""" 애플리케이션 설정

app.config.from_pyfile('config.py') 로 로드된다. 대문자 이름만 app.config 에 들어간다.
MATCH_DEFAULTS 는 설정 파일 / CLI 플래그보다 우선순위가 낮은 기본값이다.
"""

import os

from model.run.match_config import MatchConfig

MATCH_DEFAULTS = MatchConfig().as_dict()

# None 이면 스펙트럼 캐시를 쓰지 않는다
SPECTRAL_CACHE_DIR = os.environ.get('SPECTRAL_CACHE_DIR', os.path.join(os.path.expanduser('~'), '.cache', 'snk-match'))

LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')

MAX_CONTENT_LENGTH = 16 * 1024 * 1024

test_config = {
    'TESTING': True,
    'LOG_LEVEL': 'WARNING',
    'SPECTRAL_CACHE_DIR': None,
    'MAX_CONTENT_LENGTH': MAX_CONTENT_LENGTH,
    'MATCH_DEFAULTS': dict(
        MATCH_DEFAULTS,
        k=6,
        width=8,
        n_blocks=1,
        feature_dim=8,
        latent_dim=8,
        decoder_dim=8,
        max_iters=2,
        patience=5,
        refine_k_end=10,
        refine_step=2
    )
}
