from unittest import TestCase

import os
import sys
import tempfile
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

import numpy as np

from mesh_fixtures import tetrahedron, flat_strip, grid, icosphere, asymmetric_blob, write_off
from model.mesh.mesh_dao import MeshDao
from model.mesh.tri_mesh import TriMesh
from service.geometry.mesh_service import (
    MeshService,
    geodesic_distances,
    geodesic_distance_rows,
    normalize_mesh,
    total_surface_area
)
from utils.custom_exceptions import (
    EmptyMesh,
    InvalidMesh,
    MeshParseError,
    NonTriangularFace,
    UnsupportedFormat
)


def _random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))[None, :]
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


class TestTriMesh(TestCase):
    """ Test

        Target: model/mesh/tri_mesh, service/geometry/mesh_service

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
            2026-10-17(홍길동): 유한하지 않은 좌표 테스트 추가
    """

    def test_tetrahedron_area(self):
        """ 모서리 1 인 정사면체 넓이는 √3, 2 배 스케일이면 4 배 """
        self.assertAlmostEqual(total_surface_area(tetrahedron()), np.sqrt(3.0), places=12)
        self.assertAlmostEqual(total_surface_area(tetrahedron(2.0)), 4.0 * np.sqrt(3.0), places=12)

    def test_icosphere_counts_and_area(self):
        sphere = icosphere(3)
        self.assertEqual(sphere.n_vertices, 642)
        self.assertEqual(sphere.n_faces, 1280)
        self.assertLess(abs(total_surface_area(sphere) - 4.0 * np.pi) / (4.0 * np.pi), 0.02)

    def test_derived_quantities(self):
        mesh = asymmetric_blob(1)
        np.testing.assert_allclose(np.linalg.norm(mesh.face_normals, axis=1), 1.0, atol=1e-9)
        np.testing.assert_allclose(np.linalg.norm(mesh.vertex_normals, axis=1), 1.0, atol=1e-9)
        self.assertTrue(np.all(mesh.face_areas > 0))
        self.assertEqual(int(mesh.incidence_counts.sum()), 3 * mesh.n_faces)
        self.assertEqual(sum(len(faces) for faces in mesh.vertex_faces), 3 * mesh.n_faces)

        # 닫힌 메쉬: 모든 간선이 내부 간선
        self.assertEqual(mesh.boundary_edge_count, 0)
        self.assertEqual(len(mesh.interior_edges), 3 * mesh.n_faces // 2)
        for (a, b), (i, j) in zip(mesh.interior_edges, mesh.interior_faces):
            self.assertIn(a, mesh.faces[i])
            self.assertIn(b, mesh.faces[j])

    def test_boundary_edges_are_not_interior(self):
        strip = flat_strip()
        self.assertEqual(strip.boundary_edge_count, 4)
        np.testing.assert_array_equal(strip.interior_edges, [[0, 2]])
        np.testing.assert_allclose(strip.edge_sq_lengths, [2.0])

    def test_rigid_motion_invariance(self):
        mesh = asymmetric_blob(1)
        rotation = _random_rotation(np.random.default_rng(3))
        moved = mesh.with_vertices(mesh.vertices @ rotation.T + np.array([0.3, -2.0, 5.0]))

        np.testing.assert_allclose(moved.face_areas, mesh.face_areas, rtol=1e-9)
        np.testing.assert_allclose(moved.edge_sq_lengths, mesh.edge_sq_lengths, rtol=1e-9)
        self.assertAlmostEqual(total_surface_area(moved), total_surface_area(mesh), places=9)

    def test_invalid_meshes(self):
        with self.assertRaises(InvalidMesh):
            TriMesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 3)])
        with self.assertRaises(InvalidMesh):
            TriMesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 1)])
        with self.assertRaises(InvalidMesh):
            TriMesh([(0, 0, 0), (1, 0, 0), (2, 0, 0)], [(0, 1, 2)])
        with self.assertRaises(EmptyMesh):
            TriMesh(np.zeros((0, 3)), np.zeros((0, 3)))

    def test_non_finite_coordinates(self):
        for bad in (np.nan, np.inf, -np.inf):
            with self.assertRaises(InvalidMesh) as context:
                TriMesh([(0, 0, 0), (1, 0, 0), (bad, 1, 0)], [(0, 1, 2)])
            self.assertIn('vertex 2', context.exception.error_message)

    def test_normalize_mesh(self):
        mesh = asymmetric_blob(1).with_vertices(asymmetric_blob(1).vertices * 3.0 + 1.0)
        normalized, frame = normalize_mesh(mesh)

        self.assertAlmostEqual(total_surface_area(normalized), 1.0, places=9)
        weights = normalized.face_areas / normalized.face_areas.sum()
        np.testing.assert_allclose((normalized.face_centroids * weights[:, None]).sum(axis=0), 0.0, atol=1e-12)
        np.testing.assert_allclose(frame.undo(normalized.vertices), mesh.vertices, atol=1e-12)


class TestGeodesic(TestCase):
    def test_source_to_itself_is_zero(self):
        mesh = grid()
        self.assertEqual(geodesic_distances(mesh, 7)[7], 0.0)

    def test_single_edge(self):
        strip = flat_strip()
        self.assertAlmostEqual(geodesic_distances(strip, 0)[1], 1.0)
        self.assertAlmostEqual(geodesic_distances(strip, 0)[2], np.sqrt(2.0))

    def test_triangle_inequality(self):
        mesh = asymmetric_blob(1)
        distances = geodesic_distance_rows(mesh, np.arange(mesh.n_vertices))
        np.testing.assert_allclose(distances, distances.T, atol=1e-12)
        a, b, c = 0, 10, 30
        self.assertLessEqual(distances[a, c], distances[a, b] + distances[b, c] + 1e-12)

    def test_icosphere_antipodal(self):
        sphere = icosphere(2)
        antipode = int(np.argmin(sphere.vertices @ sphere.vertices[0]))
        distance = geodesic_distances(sphere, 0)[antipode]
        self.assertLess(abs(distance - np.pi) / np.pi, 0.08)

    def test_disconnected_is_infinite(self):
        vertices = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (5, 0, 0), (6, 0, 0), (5, 1, 0)]
        mesh = TriMesh(vertices, [(0, 1, 2), (3, 4, 5)])
        distances = geodesic_distances(mesh, 0)
        self.assertTrue(np.isinf(distances[4]))
        self.assertTrue(np.isfinite(distances[2]))


class TestMeshDao(TestCase):
    """ Test

        Target: model/mesh/mesh_dao

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
            2026-10-17(홍길동): PLY 면 파싱 에러 테스트 추가
    """

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.dao = MeshDao()

    def tearDown(self):
        self.directory.cleanup()

    def _write(self, name, text):
        path = os.path.join(self.directory.name, name)
        with open(path, 'w') as handle:
            handle.write(text)
        return path

    def test_load_off(self):
        path = write_off(self.directory.name, 'tetra.off', tetrahedron())
        mesh = MeshService(self.dao).load_mesh(path)
        self.assertEqual((mesh.n_vertices, mesh.n_faces), (4, 4))
        self.assertAlmostEqual(total_surface_area(mesh), np.sqrt(3.0), places=12)

    def test_round_trip_is_bit_identical(self):
        mesh = asymmetric_blob(1)
        path = self.dao.save_off(os.path.join(self.directory.name, 'nested', 'blob.off'), mesh.vertices, mesh.faces)
        loaded = self.dao.load_mesh(path)
        np.testing.assert_array_equal(loaded.vertices, mesh.vertices)
        np.testing.assert_array_equal(loaded.faces, mesh.faces)

    def test_quad_face(self):
        path = self._write('quad.off', 'OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n')
        with self.assertRaises(NonTriangularFace) as context:
            self.dao.load_mesh(path)
        self.assertIn('line 7', context.exception.error_message)

    def test_parse_error_reports_line(self):
        path = self._write('broken.off', 'OFF\n3 1 0\n0 0 0\n1 zero 0\n0 1 0\n3 0 1 2\n')
        with self.assertRaises(MeshParseError) as context:
            self.dao.load_mesh(path)
        self.assertIn('line 4', context.exception.error_message)

    def test_non_finite_off_coordinate(self):
        path = self._write('nan.off', 'OFF\n3 1 0\n0 0 0\n1 0 0\nnan 1 0\n3 0 1 2\n')
        with self.assertRaises(InvalidMesh) as context:
            self.dao.load_mesh(path)
        self.assertEqual(context.exception.status_code, 400)
        self.assertEqual(context.exception.exit_code, 2)

    def test_ply_face_parse_error_reports_line(self):
        header = ['ply', 'format ascii 1.0', 'element vertex 3', 'property float x', 'property float y',
                  'property float z', 'element face 1', 'property list uchar int vertex_indices', 'end_header',
                  '0 0 0', '1 0 0', '0 1 0']
        for face in ('three 0 1 2', '3 0 one 2'):
            path = self._write('broken.ply', '\n'.join(header + [face, '']))
            with self.assertRaises(MeshParseError) as context:
                self.dao.load_mesh(path)
            self.assertIn('line 13', context.exception.error_message)

    def test_empty_mesh(self):
        path = self._write('empty.off', 'OFF\n0 0 0\n')
        with self.assertRaises(EmptyMesh):
            self.dao.load_mesh(path)

    def test_obj_and_ply(self):
        obj = self._write('tri.obj', 'v 0 0 0\nv 1 0 0\nv 0 1 0\nvt 0 0\nf 1/1 2/1 3/1\n')
        mesh = self.dao.load_mesh(obj)
        np.testing.assert_array_equal(mesh.faces, [[0, 1, 2]])

        ply = self._write('tri.ply', '\n'.join([
            'ply', 'format ascii 1.0', 'element vertex 3', 'property float x', 'property float y',
            'property float z', 'element face 1', 'property list uchar int vertex_indices', 'end_header',
            '0 0 0', '1 0 0', '0 1 0', '3 0 1 2', ''
        ]))
        mesh = self.dao.load_mesh(ply)
        self.assertAlmostEqual(total_surface_area(mesh), 0.5)

    def test_unsupported_extension(self):
        path = self._write('mesh.stl', 'solid')
        with self.assertRaises(UnsupportedFormat):
            self.dao.load_mesh(path)

    def test_colored_off(self):
        mesh = flat_strip()
        colors = np.array([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], dtype=np.float64)
        path = self.dao.save_off(os.path.join(self.directory.name, 'colored.off'), mesh.vertices, mesh.faces, colors)

        np.testing.assert_allclose(self.dao.read_off_colors(path), colors)
        self.assertEqual(self.dao.load_mesh(path).n_vertices, 4)
