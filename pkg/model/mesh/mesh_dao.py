import os

import numpy as np

from model.mesh.tri_mesh import TriMesh
from utils.custom_exceptions import (
    EmptyMesh,
    MeshParseError,
    NonTriangularFace,
    UnsupportedFormat,
    OutputNotWritable
)


def _content_lines(path):
    """ (라인 번호, 토큰 리스트) 를 주석과 빈 줄을 제외하고 돌려준다. """
    with open(path, 'r') as handle:
        for number, line in enumerate(handle, start=1):
            line = line.split('#', 1)[0].strip()
            if line:
                yield number, line.split()


class MeshDao:
    """ Persistence Layer: 메쉬 파일 입출력

    OFF, OBJ(v/f 레코드만), ASCII PLY 를 읽고 OFF/COFF 를 쓴다.
    모든 좌표는 64-bit 실수로 파싱하며 파일의 정점 순서를 유지한다.
    """

    formats = {'.off': 'off', '.obj': 'obj', '.ply': 'ply'}

    def load_mesh(self, path, mesh_format=None):
        """ 메쉬 로드

        Args:
            path       : 메쉬 파일 경로
            mesh_format: off, obj, ply 중 하나. None 이면 확장자로 판단한다.

        Returns:
            TriMesh

        Raises:
            400, {'message': 'mesh_parse_error', 'error_message': '... line N'}
            400, {'message': 'non_triangular_face', 'error_message': '... line N'}
            400, {'message': 'empty_mesh', 'error_message': '...'}
            400, {'message': 'unsupported_format', 'error_message': '...'}
        """
        if mesh_format is None:
            extension = os.path.splitext(path)[1].lower()
            if extension not in self.formats:
                raise UnsupportedFormat('{}: off, obj, ply 파일만 지원합니다.'.format(path))
            mesh_format = self.formats[extension]

        readers = {'off': self.read_off, 'obj': self.read_obj, 'ply': self.read_ply}
        if mesh_format not in readers:
            raise UnsupportedFormat('{}: 지원하지 않는 포맷 {} 입니다.'.format(path, mesh_format))

        vertices, faces = readers[mesh_format](path)
        if len(vertices) == 0 or len(faces) == 0:
            raise EmptyMesh('{}: 정점 또는 면이 존재하지 않습니다.'.format(path))
        return TriMesh(vertices, faces)

    def read_off(self, path):
        lines = _content_lines(path)
        try:
            number, tokens = next(lines)
        except StopIteration:
            raise EmptyMesh('{}: 빈 파일입니다.'.format(path))

        if not tokens[0].upper().endswith('OFF'):
            raise MeshParseError('{}: OFF 헤더가 없습니다. line {}'.format(path, number))

        # 'OFF n f e' 처럼 헤더와 개수가 같은 줄에 있는 경우
        counts = tokens[1:]
        if not counts:
            try:
                number, counts = next(lines)
            except StopIteration:
                raise EmptyMesh('{}: 정점/면 개수가 없습니다.'.format(path))

        try:
            n_vertices, n_faces = int(counts[0]), int(counts[1])
        except (ValueError, IndexError):
            raise MeshParseError('{}: 정점/면 개수를 읽을 수 없습니다. line {}'.format(path, number))

        vertices = np.empty((n_vertices, 3), dtype=np.float64)
        for index in range(n_vertices):
            number, tokens = self._next_record(lines, path, 'vertex')
            try:
                vertices[index] = [float(value) for value in tokens[:3]]
            except ValueError:
                raise MeshParseError('{}: 정점 좌표를 읽을 수 없습니다. line {}'.format(path, number))

        faces = np.empty((n_faces, 3), dtype=np.int64)
        for index in range(n_faces):
            number, tokens = self._next_record(lines, path, 'face')
            try:
                size = int(tokens[0])
                if size != 3:
                    raise NonTriangularFace('{}: non-triangular face ({} vertices). line {}'.format(path, size, number))
                faces[index] = [int(value) for value in tokens[1:4]]
            except (ValueError, IndexError):
                raise MeshParseError('{}: 면을 읽을 수 없습니다. line {}'.format(path, number))

        return vertices, faces

    def read_obj(self, path):
        vertices = []
        faces = []
        for number, tokens in _content_lines(path):
            if tokens[0] == 'v':
                try:
                    vertices.append([float(value) for value in tokens[1:4]])
                except ValueError:
                    raise MeshParseError('{}: 정점 좌표를 읽을 수 없습니다. line {}'.format(path, number))

            elif tokens[0] == 'f':
                corners = tokens[1:]
                if len(corners) != 3:
                    raise NonTriangularFace(
                        '{}: non-triangular face ({} vertices). line {}'.format(path, len(corners), number)
                    )
                try:
                    indices = [int(corner.split('/')[0]) for corner in corners]
                except ValueError:
                    raise MeshParseError('{}: 면을 읽을 수 없습니다. line {}'.format(path, number))
                # OBJ 는 1 부터 시작, 음수는 끝에서부터의 상대 인덱스
                faces.append([index - 1 if index > 0 else len(vertices) + index for index in indices])

        return np.array(vertices, dtype=np.float64).reshape(-1, 3), np.array(faces, dtype=np.int64).reshape(-1, 3)

    def read_ply(self, path):
        lines = _content_lines(path)
        number, tokens = next(lines, (0, ['']))
        if tokens[0] != 'ply':
            raise MeshParseError('{}: PLY 헤더가 없습니다. line {}'.format(path, number))

        elements = []
        for number, tokens in lines:
            if tokens[0] == 'format' and tokens[1] != 'ascii':
                raise UnsupportedFormat('{}: ASCII PLY 만 지원합니다. line {}'.format(path, number))
            if tokens[0] == 'element':
                elements.append({'name': tokens[1], 'count': int(tokens[2]), 'properties': []})
            elif tokens[0] == 'property':
                elements[-1]['properties'].append(tokens[-1])
            elif tokens[0] == 'end_header':
                break

        vertices = np.empty((0, 3))
        faces = np.empty((0, 3), dtype=np.int64)
        for element in elements:
            records = [self._next_record(lines, path, element['name']) for _ in range(element['count'])]

            if element['name'] == 'vertex':
                columns = [element['properties'].index(axis) for axis in ('x', 'y', 'z')]
                try:
                    vertices = np.array([[float(tokens[c]) for c in columns] for _, tokens in records])
                except (ValueError, IndexError):
                    raise MeshParseError('{}: 정점 좌표를 읽을 수 없습니다.'.format(path))

            elif element['name'] == 'face':
                rows = []
                for number, tokens in records:
                    try:
                        size = int(tokens[0])
                        corners = [int(value) for value in tokens[1:4]]
                    except ValueError:
                        raise MeshParseError('{}: 면을 읽을 수 없습니다. line {}'.format(path, number))
                    if size != 3:
                        raise NonTriangularFace(
                            '{}: non-triangular face ({} vertices). line {}'.format(path, size, number)
                        )
                    if len(corners) != 3:
                        raise MeshParseError('{}: 면 인덱스가 부족합니다. line {}'.format(path, number))
                    rows.append(corners)
                faces = np.array(rows, dtype=np.int64).reshape(-1, 3)

        return vertices.reshape(-1, 3), faces

    @staticmethod
    def _next_record(lines, path, kind):
        try:
            return next(lines)
        except StopIteration:
            raise MeshParseError('{}: {} 레코드가 부족합니다. (파일 끝)'.format(path, kind))

    def save_off(self, path, vertices, faces, colors=None):
        """ OFF / COFF 저장

        Args:
            path    : 저장 경로
            vertices: (n, 3) 좌표
            faces   : (f, 3) 인덱스
            colors  : (n, 3) 0~1 RGB, 있으면 COFF 로 저장한다.

        Returns: path
        """
        vertices = np.asarray(vertices, dtype=np.float64)
        faces = np.asarray(faces, dtype=np.int64)
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)

            with open(path, 'w') as handle:
                handle.write('COFF\n' if colors is not None else 'OFF\n')
                handle.write('{} {} 0\n'.format(len(vertices), len(faces)))

                if colors is None:
                    for x, y, z in vertices:
                        handle.write('%.17g %.17g %.17g\n' % (x, y, z))
                else:
                    rgb = np.clip(np.rint(np.asarray(colors) * 255), 0, 255).astype(int)
                    for (x, y, z), (r, g, b) in zip(vertices, rgb):
                        handle.write('%.17g %.17g %.17g %d %d %d 255\n' % (x, y, z, r, g, b))

                for a, b, c in faces:
                    handle.write('3 {} {} {}\n'.format(a, b, c))

        except OSError as e:
            raise OutputNotWritable('{} 에 쓸 수 없습니다. ({})'.format(path, e))
        return path

    def read_off_colors(self, path):
        """ COFF 파일의 정점 색 (0~1 RGB). 색이 없으면 None """
        lines = _content_lines(path)
        _, tokens = next(lines)
        if tokens[0].upper() != 'COFF':
            return None
        counts = tokens[1:] or next(lines)[1]
        n_vertices = int(counts[0])
        colors = np.empty((n_vertices, 3))
        for index in range(n_vertices):
            _, values = next(lines)
            colors[index] = [int(value) / 255.0 for value in values[3:6]]
        return colors
