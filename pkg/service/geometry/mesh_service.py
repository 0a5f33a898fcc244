import logging
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import dijkstra

from model.mesh.tri_mesh import TriMesh
from utils.decorator import timed_stage

logger = logging.getLogger(__name__)

GEODESIC_CHUNK = 256


def total_surface_area(mesh):
    return float(mesh.face_areas.sum())


def geodesic_distance_rows(mesh, sources):
    """ 간선 그래프 위 다익스트라 최단 거리

    Args:
        mesh   : TriMesh
        sources: 출발 정점 인덱스 배열

    Returns:
        (len(sources), n) 거리 행렬. 도달할 수 없는 정점은 +inf
    """
    sources = np.atleast_1d(np.asarray(sources, dtype=np.int64))
    graph = mesh.edge_graph.matrix
    rows = []
    for start in range(0, len(sources), GEODESIC_CHUNK):
        rows.append(dijkstra(graph, directed=False, indices=sources[start:start + GEODESIC_CHUNK]))
    distances = np.vstack(rows) if rows else np.zeros((0, mesh.n_vertices))

    unreachable = np.isinf(distances).any(axis=1)
    if unreachable.any():
        logger.warning('%d geodesic sources cannot reach every vertex (disconnected mesh)', int(unreachable.sum()))
    return distances


def geodesic_distances(mesh, source):
    """ 정점 하나에서 모든 정점까지의 측지 거리 (n,) """
    return geodesic_distance_rows(mesh, [source])[0]


@dataclass(frozen=True)
class Normalization:
    """ 넓이 가중 중심을 원점으로, 전체 넓이를 1 로 옮기는 변환

    normalized = (original - center) * scale
    """
    center: np.ndarray
    scale: float

    def apply(self, points):
        return (np.asarray(points) - self.center) * self.scale

    def undo(self, points):
        return np.asarray(points) / self.scale + self.center


def area_weighted_centroid(mesh):
    weights = mesh.face_areas / mesh.face_areas.sum()
    return (mesh.face_centroids * weights[:, None]).sum(axis=0)


def normalize_mesh(mesh):
    """ 중심 이동 + 단위 넓이 정규화

    Returns:
        (정규화된 TriMesh, Normalization)
    """
    normalization = Normalization(area_weighted_centroid(mesh), 1.0 / np.sqrt(total_surface_area(mesh)))
    return mesh.with_vertices(normalization.apply(mesh.vertices)), normalization


def identity_normalization():
    return Normalization(np.zeros(3), 1.0)


class MeshService:
    """ Business Layer: 메쉬 로드 / 저장

    Attributes:
        mesh_dao: MeshDao

    Author: 홍길동

    History:
        2026-10-02(홍길동): 초기 생성
    """

    def __init__(self, mesh_dao):
        self.mesh_dao = mesh_dao

    @timed_stage('load')
    def load_mesh(self, path, mesh_format=None):
        mesh = self.mesh_dao.load_mesh(path, mesh_format)
        logger.info('loaded %s: %r', path, mesh)
        return mesh

    def load_mesh_pair(self, source_path, target_path):
        """ Returns: (source S2, target S1) """
        return self.load_mesh(source_path), self.load_mesh(target_path)

    def save_mesh(self, path, mesh, colors=None):
        if isinstance(mesh, TriMesh):
            return self.mesh_dao.save_off(path, mesh.vertices, mesh.faces, colors)
        vertices, faces = mesh
        return self.mesh_dao.save_off(path, vertices, faces, colors)
