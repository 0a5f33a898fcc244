""" 삼각형 메쉬 도메인 타입

정점/면 배열과 파생 기하량(면 법선, 정점 법선, 면 넓이, 내부 간선, 정점별 인접 면)을 가진다.
생성 이후에는 변경되지 않으므로 여러 스레드에서 공유해도 안전하다.
"""

import logging
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix

from utils.custom_exceptions import EmptyMesh, InvalidMesh

logger = logging.getLogger(__name__)


def _frozen(array):
    array.setflags(write=False)
    return array


def _unit_rows(vectors):
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    return vectors / np.where(norms > 0, norms, 1.0)


class EdgeGraph:
    """ 정점 인접 그래프

    Attributes:
        matrix: n×n 대칭 희소 행렬, 값은 간선의 유클리드 길이
    """

    def __init__(self, n_vertices, edges, lengths):
        rows = np.concatenate([edges[:, 0], edges[:, 1]])
        cols = np.concatenate([edges[:, 1], edges[:, 0]])
        data = np.concatenate([lengths, lengths])
        self.matrix = csr_matrix((data, (rows, cols)), shape=(n_vertices, n_vertices))


class TriMesh:
    """ 삼각형 메쉬

    Attributes:
        vertices        : (n, 3) float64
        faces           : (f, 3) int64
        face_normals    : (f, 3) 단위 면 법선
        face_areas      : (f,) 면 넓이 |F_i|
        vertex_normals  : (n, 3) 면 넓이 가중 평균 정점 법선
        edges           : (e, 2) 모든 간선, 작은 인덱스가 먼저
        interior_edges  : (m, 2) 정확히 두 면이 공유하는 간선
        interior_faces  : (m, 2) 내부 간선을 공유하는 두 면
        edge_sq_lengths : (m,) 내부 간선 길이 제곱 ||e_ij||^2

    Raises:
        EmptyMesh  : 정점 또는 면이 없는 경우
        InvalidMesh: 유한하지 않은 좌표, 인덱스 범위 초과, 중복 정점을 가진 면, 넓이 0 인 면
    """

    def __init__(self, vertices, faces):
        vertices = np.array(vertices, dtype=np.float64, copy=True).reshape(-1, 3)
        faces = np.array(faces, dtype=np.int64, copy=True).reshape(-1, 3)

        if len(vertices) == 0 or len(faces) == 0:
            raise EmptyMesh('정점 또는 면이 존재하지 않습니다.')

        if not np.isfinite(vertices).all():
            bad = int(np.flatnonzero(~np.isfinite(vertices).all(axis=1))[0])
            raise InvalidMesh('유한하지 않은 정점 좌표가 있습니다. (vertex {})'.format(bad))

        if faces.min() < 0 or faces.max() >= len(vertices):
            raise InvalidMesh('면 인덱스가 [0, {}) 범위를 벗어났습니다.'.format(len(vertices)))

        repeated = (faces[:, 0] == faces[:, 1]) | (faces[:, 1] == faces[:, 2]) | (faces[:, 0] == faces[:, 2])
        if repeated.any():
            raise InvalidMesh('중복된 정점을 가진 면이 있습니다. (face {})'.format(int(np.flatnonzero(repeated)[0])))

        self.vertices = _frozen(vertices)
        self.faces = _frozen(faces)

        corners = vertices[faces]
        cross = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
        double_areas = np.linalg.norm(cross, axis=1)
        degenerate = ~(double_areas > 0)
        if degenerate.any():
            raise InvalidMesh('넓이가 0 인 면이 있습니다. (face {})'.format(int(np.flatnonzero(degenerate)[0])))

        self.face_areas = _frozen(0.5 * double_areas)
        self.face_normals = _frozen(cross / double_areas[:, None])

        # 면 넓이 가중: cross 의 크기가 이미 2|F| 이다
        accumulated = np.zeros_like(vertices)
        for corner in range(3):
            np.add.at(accumulated, faces[:, corner], cross)
        isolated = np.linalg.norm(accumulated, axis=1) == 0
        accumulated[isolated] = (0.0, 0.0, 1.0)
        self.vertex_normals = _frozen(_unit_rows(accumulated))

        self._build_edges()

    def _build_edges(self):
        half_edges = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        half_edges.sort(axis=1)
        owner = np.tile(np.arange(len(self.faces)), 3)

        edges, inverse, counts = np.unique(half_edges, axis=0, return_inverse=True, return_counts=True)
        inverse = inverse.reshape(-1)
        self.edges = _frozen(edges)

        order = np.argsort(inverse, kind='stable')
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])

        interior = np.flatnonzero(counts == 2)
        non_manifold = int((counts > 2).sum())
        if non_manifold:
            logger.warning('%d non-manifold edges excluded from the interior edge list', non_manifold)

        first = owner[order[starts[interior]]]
        second = owner[order[starts[interior] + 1]]
        self.interior_edges = _frozen(edges[interior])
        self.interior_faces = _frozen(np.stack([first, second], axis=1))

        delta = self.vertices[self.interior_edges[:, 0]] - self.vertices[self.interior_edges[:, 1]]
        self.edge_sq_lengths = _frozen((delta ** 2).sum(axis=1))
        self.boundary_edge_count = int((counts == 1).sum())

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_faces(self):
        return len(self.faces)

    @cached_property
    def vertex_faces(self):
        """ 정점별 인접 면 인덱스 리스트 """
        flat_faces = self.faces.reshape(-1)
        order = np.argsort(flat_faces, kind='stable')
        counts = np.bincount(flat_faces, minlength=self.n_vertices)
        return tuple(np.split(order // 3, np.cumsum(counts)[:-1]))

    @cached_property
    def incidence_counts(self):
        return np.bincount(self.faces.reshape(-1), minlength=self.n_vertices)

    @cached_property
    def edge_graph(self):
        lengths = np.linalg.norm(self.vertices[self.edges[:, 0]] - self.vertices[self.edges[:, 1]], axis=1)
        return EdgeGraph(self.n_vertices, self.edges, lengths)

    @cached_property
    def face_centroids(self):
        return _frozen(self.vertices[self.faces].mean(axis=1))

    def with_vertices(self, vertices):
        """ 같은 삼각분할에 새 정점 좌표를 갖는 메쉬 """
        return TriMesh(vertices, self.faces)

    def __repr__(self):
        return 'TriMesh(n={}, f={})'.format(self.n_vertices, self.n_faces)
