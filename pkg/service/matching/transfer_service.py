import numpy as np

from utils.custom_exceptions import MapSizeMismatch
from utils.decorator import timed_stage


def coordinate_colors(vertices):
    """ 바운딩 박스로 정규화한 좌표를 RGB(0~1) 로 사용한다 """
    vertices = np.asarray(vertices, dtype=np.float64)
    low = vertices.min(axis=0)
    extent = vertices.max(axis=0) - low
    return (vertices - low) / np.where(extent > 0, extent, 1.0)


def transfer_colors(target_colors, t21):
    """ source 정점 v 의 색 = target 정점 T21(v) 의 색 """
    return np.asarray(target_colors)[np.asarray(t21.assignments, dtype=np.int64)]


class TransferService:
    """ Business Layer: 대응 관계를 따라 target 좌표색을 source 메쉬로 옮긴다

    Attributes:
        mesh_dao          : MeshDao
        correspondence_dao: CorrespondenceDao

    Author: 홍길동

    History:
        2026-10-02(홍길동): 초기 생성
    """

    def __init__(self, mesh_dao, correspondence_dao):
        self.mesh_dao = mesh_dao
        self.correspondence_dao = correspondence_dao

    @timed_stage('transfer')
    def transfer(self, source_path, target_path, map_path, out_path):
        """ 색 전사 COFF 저장

        Returns:
            {'out': out_path, 'vertex_count': source 정점 수}

        Raises:
            400, {'message': 'map_index_out_of_range', 'error_message': '... line N'}
            400, {'message': 'map_size_mismatch', 'error_message': '...'}
        """
        source = self.mesh_dao.load_mesh(source_path)
        target = self.mesh_dao.load_mesh(target_path)
        t21 = self.correspondence_dao.load_point_map(map_path, target.n_vertices)

        if len(t21) != source.n_vertices:
            raise MapSizeMismatch('대응 파일 {} 줄, source 정점 {} 개로 크기가 다릅니다.'.format(
                len(t21), source.n_vertices))

        colors = transfer_colors(coordinate_colors(target.vertices), t21)
        self.mesh_dao.save_off(out_path, source.vertices, source.faces, colors)
        return {'out': out_path, 'vertex_count': source.n_vertices}
