from dataclasses import dataclass
from functools import cached_property

import numpy as np

from utils.custom_exceptions import BasisTooSmall


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """ 라플라스-벨트라미 축소 기저

    Attributes:
        phi  : (n, k) 고유함수, M-정규직교
        evals: (k,) 오름차순 고유값
        mass : (n,) 집중 질량 (정점 넓이)
    """
    phi: np.ndarray
    evals: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        for array in (self.phi, self.evals, self.mass):
            array.setflags(write=False)

    @property
    def k(self):
        return self.phi.shape[1]

    @property
    def n_vertices(self):
        return self.phi.shape[0]

    @cached_property
    def pinv(self):
        """ Φ† = Φᵀ M, (k, n) """
        pinv = self.phi.T * self.mass[None, :]
        pinv.setflags(write=False)
        return pinv

    def truncate(self, k):
        """ 앞쪽 k 개 고유쌍만 가진 기저

        Raises:
            400, {'message': 'basis_too_small', 'error_message': '...'}
        """
        if k > self.k:
            raise BasisTooSmall(
                '{} 개의 고유쌍이 필요하지만 {} 개만 계산되었습니다. 더 큰 고유분해(k)를 요청하세요.'.format(k, self.k)
            )
        if k == self.k:
            return self
        return SpectralBasis(self.phi[:, :k].copy(), self.evals[:k].copy(), self.mass.copy())
