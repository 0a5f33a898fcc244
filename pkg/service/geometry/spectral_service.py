""" 라플라스-벨트라미 스펙트럼 기저

cotan 라플라시안은 양의 준정부호(음의 cotan 행렬) 규약을 따른다.
일반화 고유문제 L φ = λ M φ 는 대각 질량으로 M^{-1/2} L M^{-1/2} 대칭 문제로 바꿔 푼다.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import sparse
from scipy.linalg import eigh
from scipy.sparse.linalg import eigsh, ArpackError

from model.spectral.spectral_basis import SpectralBasis
from model.spectral.spectral_cache_dao import hash_mesh_arrays
from utils.custom_exceptions import BasisTooSmall, EigenDecompositionFailed, IsolatedVertex
from utils.decorator import timed_stage

logger = logging.getLogger(__name__)

SINE_FLOOR = 1e-6
COTANGENT_LIMIT = 1e6
DENSE_LIMIT = 1000
RESIDUAL_LIMIT = 1e-6


def cotan_laplacian(mesh):
    """ 양의 준정부호 cotan 라플라시안

    비대각 w_uv = -(cot α + cot β) / 2, 대각 = -Σ 비대각. 행 합은 0 이다.
    거의 퇴화한 삼각형의 각은 sin 을 1e-6 이상으로, cot 를 ±1e6 이내로 제한한다.

    Returns:
        (n, n) scipy.sparse.csr_matrix
    """
    n = mesh.n_vertices
    corners = mesh.vertices[mesh.faces]
    rows, cols, weights = [], [], []
    clamped = 0

    for corner in range(3):
        nxt, prv = (corner + 1) % 3, (corner + 2) % 3
        a = corners[:, nxt] - corners[:, corner]
        b = corners[:, prv] - corners[:, corner]
        dot = (a * b).sum(axis=1)
        lengths = np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1)
        cross = np.linalg.norm(np.cross(a, b), axis=1)

        floor = SINE_FLOOR * lengths
        clamped += int((cross < floor).sum())
        cot = dot / np.maximum(cross, floor)
        clamped += int((np.abs(cot) > COTANGENT_LIMIT).sum())
        cot = np.clip(cot, -COTANGENT_LIMIT, COTANGENT_LIMIT)

        # 꼭짓점 corner 의 각은 맞은편 간선 (nxt, prv) 의 가중치가 된다
        rows.append(mesh.faces[:, nxt])
        cols.append(mesh.faces[:, prv])
        weights.append(-0.5 * cot)

    if clamped:
        logger.warning('clamped %d cotangents on near-degenerate triangles', clamped)

    rows, cols, weights = np.concatenate(rows), np.concatenate(cols), np.concatenate(weights)
    off_diagonal = sparse.csr_matrix((weights, (rows, cols)), shape=(n, n))
    off_diagonal = off_diagonal + off_diagonal.T
    diagonal = -np.asarray(off_diagonal.sum(axis=1)).reshape(-1)
    return (off_diagonal + sparse.diags(diagonal)).tocsr()


def lumped_mass(mesh):
    """ mass[v] = (1/3) Σ 인접 면 넓이

    Raises:
        400, {'message': 'isolated_vertex', 'error_message': '...'}
    """
    mass = np.zeros(mesh.n_vertices)
    for corner in range(3):
        mass += np.bincount(mesh.faces[:, corner], weights=mesh.face_areas, minlength=mesh.n_vertices)
    mass /= 3.0

    isolated = np.flatnonzero(mass <= 0)
    if len(isolated):
        raise IsolatedVertex('어떤 면에도 속하지 않는 정점이 {} 개 있습니다. (vertex {})'.format(
            len(isolated), int(isolated[0])))
    return mass


def _fix_signs(phi):
    largest = np.argmax(np.abs(phi), axis=0)
    signs = np.sign(phi[largest, np.arange(phi.shape[1])])
    signs[signs == 0] = 1.0
    return phi * signs[None, :]


def eigendecompose(laplacian, mass, k):
    """ 가장 작은 k 개의 일반화 고유쌍

    Args:
        laplacian: (n, n) 대칭 양의 준정부호 희소 행렬
        mass     : (n,) 양수 집중 질량
        k        : 고유쌍 개수

    Returns:
        SpectralBasis (M-정규직교, 고유값 오름차순)

    Raises:
        400, {'message': 'basis_too_small', ...}: k > n
        500, {'message': 'eigendecomposition_failed', 'error_message': '... residual ...'}
    """
    laplacian = sparse.csr_matrix(laplacian)
    mass = np.asarray(mass, dtype=np.float64)
    n = len(mass)
    if k > n:
        raise BasisTooSmall('고유쌍 {} 개를 요청했지만 정점은 {} 개뿐입니다.'.format(k, n))

    inv_sqrt = 1.0 / np.sqrt(mass)
    reduced = sparse.diags(inv_sqrt) @ laplacian @ sparse.diags(inv_sqrt)

    try:
        if n <= DENSE_LIMIT or k >= n - 1:
            dense = reduced.toarray()
            evals, vectors = eigh(0.5 * (dense + dense.T), subset_by_index=[0, k - 1])
        else:
            sigma = -1e-8 * float(np.abs(reduced.diagonal()).max())
            evals, vectors = eigsh(reduced.tocsc(), k=k, sigma=sigma, which='LM')

    except (ArpackError, np.linalg.LinAlgError) as e:
        raise EigenDecompositionFailed('고유값 계산이 수렴하지 않았습니다. ({})'.format(e))

    order = np.argsort(evals)
    evals = np.clip(evals[order], 0.0, None)
    phi = _fix_signs(inv_sqrt[:, None] * vectors[:, order])

    residual = laplacian @ phi - (mass[:, None] * phi) * evals[None, :]
    residual = np.linalg.norm(residual, axis=0) / np.linalg.norm(phi, axis=0)
    limit = RESIDUAL_LIMIT * max(1.0, float(np.abs(laplacian.diagonal()).max()))
    if not np.all(np.isfinite(residual)) or residual.max() > limit:
        raise EigenDecompositionFailed('고유쌍 잔차 {:.3e} 가 허용치 {:.1e} 를 넘었습니다.'.format(
            float(np.nanmax(residual)), limit))

    return SpectralBasis(np.ascontiguousarray(phi), evals, mass.copy())


def project(basis, values):
    """ Φ† f = Φᵀ M f """
    return basis.pinv @ np.asarray(values, dtype=np.float64)


def reconstruct(basis, coefficients):
    return basis.phi @ coefficients


def compute_basis(mesh, k):
    return eigendecompose(cotan_laplacian(mesh), lumped_mass(mesh), k)


class SpectralService:
    """ Business Layer: 스펙트럼 기저 계산 + 캐시

    Attributes:
        spectral_cache_dao: SpectralCacheDao

    Author: 홍길동

    History:
        2026-10-02(홍길동): 초기 생성
    """

    def __init__(self, spectral_cache_dao):
        self.spectral_cache_dao = spectral_cache_dao

    def get_basis(self, mesh, k):
        key = hash_mesh_arrays(mesh.vertices, mesh.faces)
        basis = self.spectral_cache_dao.get_basis(key, k)
        if basis is not None:
            return basis

        basis = compute_basis(mesh, k)
        self.spectral_cache_dao.save_basis(key, basis)
        logger.info('eigendecomposition n=%d k=%d, lambda_1=%.4g', mesh.n_vertices, k,
                    basis.evals[1] if k > 1 else 0.0)
        return basis

    @timed_stage('spectral')
    def get_basis_pair(self, mesh1, mesh2, k):
        """ 두 메쉬의 기저를 동시에 계산한다

        Returns:
            (basis1, basis2)
        """
        with ThreadPoolExecutor(max_workers=2) as executor:
            first = executor.submit(self.get_basis, mesh1, k)
            second = executor.submit(self.get_basis, mesh2, k)
            return first.result(), second.result()
