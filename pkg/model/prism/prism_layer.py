from dataclasses import dataclass

import numpy as np

# 패치 코너 순서 (u, v): 00, 10, 01, 11
# u 는 간선 방향(작은 인덱스 → 큰 인덱스), v 는 높이 방향(bottom → top)
CORNER_UV = np.array([(0, 0), (1, 0), (0, 1), (1, 1)])


@dataclass(frozen=True, eq=False)
class PrismLayer:
    """ 면마다 돌출한 프리즘과 내부 간선 패치

    Attributes:
        bottom, top    : (n, 3) 정점별 프리즘 코너 높이
        face_centroids : (f, 3) 강체 변환 회전 중심 (변형 전 면 중심)
        edge_vertices  : (m, 2) 내부 간선 (a < b)
        edge_faces     : (m, 2) 간선을 공유하는 면 i, j
        patch_corners  : (m, 4, 3) 변형 전 패치 코너 [a bottom, b bottom, a top, b top]
                         변형 전에는 f^{i→j} 와 f^{j→i} 가 같다
        weights        : (m,) w_ij = ‖e_ij‖² / (|F_i| + |F_j|)
        height         : h
        extrusion      : symmetric | one_sided
    """
    bottom: np.ndarray
    top: np.ndarray
    face_centroids: np.ndarray
    edge_vertices: np.ndarray
    edge_faces: np.ndarray
    patch_corners: np.ndarray
    weights: np.ndarray
    height: float
    extrusion: str

    @property
    def n_edges(self):
        return len(self.edge_vertices)
