import hashlib
import logging
import os

import numpy as np

from model.spectral.spectral_basis import SpectralBasis

logger = logging.getLogger(__name__)


def hash_mesh_arrays(vertices, faces):
    running_hash = hashlib.sha1()
    for array in (vertices, faces):
        running_hash.update(np.ascontiguousarray(array).tobytes())
    return running_hash.hexdigest()


class SpectralCacheDao:
    """ Persistence Layer: SpectralBasis 바이너리 캐시

    메쉬 내용 해시로 파일을 찾고, 저장된 고유쌍 개수가 요청보다 크거나 같으면 재사용한다.
    cache_dir 가 None 이면 아무것도 하지 않는다.
    """

    def __init__(self, cache_dir=None):
        self.cache_dir = cache_dir

    def _path(self, key):
        return os.path.join(self.cache_dir, key + '.npz')

    def get_basis(self, key, k):
        """ 캐시된 기저 조회

        Args:
            key: hash_mesh_arrays() 결과
            k  : 필요한 고유쌍 개수

        Returns:
            SpectralBasis 또는 None
        """
        if not self.cache_dir:
            return None

        path = self._path(key)
        if not os.path.isfile(path):
            return None

        try:
            with np.load(path) as npzfile:
                cached_k = int(npzfile['k'])
                if cached_k < k:
                    return None
                basis = SpectralBasis(npzfile['phi'].copy(), npzfile['evals'].copy(), npzfile['mass'].copy())

        except (OSError, KeyError, ValueError) as e:
            logger.warning('ignoring unreadable spectral cache %s (%s)', path, e)
            return None

        logger.info('spectral cache hit %s (k=%d)', key[:12], cached_k)
        return basis.truncate(k)

    def save_basis(self, key, basis):
        if not self.cache_dir:
            return None

        os.makedirs(self.cache_dir, exist_ok=True)
        path = self._path(key)
        np.savez(path, k=basis.k, phi=basis.phi, evals=basis.evals, mass=basis.mass)
        return path
