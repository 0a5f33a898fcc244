""" 테스트용 합성 메쉬

정사면체, 평면 띠, 격자, 아이코스피어, 비대칭 덩어리(blob), 토러스, 휘어진 복사본을 만든다.
"""

import os

import numpy as np

from model.mesh.tri_mesh import TriMesh

ICOSAHEDRON_FACES = [
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)
]


def tetrahedron(edge=1.0):
    """ 모서리 길이 edge 인 정사면체, 면은 바깥쪽을 향한다 """
    vertices = np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=np.float64)
    vertices *= edge / (2.0 * np.sqrt(2.0))
    return TriMesh(vertices, [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)])


def flat_strip():
    """ 단위 정사각형을 두 삼각형으로 나눈 평면 띠 (법선 +z) """
    vertices = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]
    return TriMesh(vertices, [(0, 1, 2), (0, 2, 3)])


def grid(nx=6, ny=5, spacing=1.0):
    """ xy 평면 위 nx × ny 정점 격자 """
    xs, ys = np.meshgrid(np.arange(nx) * spacing, np.arange(ny) * spacing, indexing='xy')
    vertices = np.stack([xs.reshape(-1), ys.reshape(-1), np.zeros(nx * ny)], axis=1)
    faces = []
    for row in range(ny - 1):
        for col in range(nx - 1):
            a = row * nx + col
            b, c, d = a + 1, a + nx, a + nx + 1
            faces.append((a, b, d))
            faces.append((a, d, c))
    return TriMesh(vertices, faces)


def icosphere(subdivisions=2, radius=1.0):
    """ 단위 구 근사. 정점 수 10·4^s + 2 """
    t = (1.0 + np.sqrt(5.0)) / 2.0
    vertices = [(-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
                (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
                (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1)]
    vertices = [np.array(vertex, dtype=np.float64) / np.linalg.norm(vertex) for vertex in vertices]
    faces = list(ICOSAHEDRON_FACES)

    for _ in range(subdivisions):
        cache = {}

        def midpoint(a, b):
            key = (min(a, b), max(a, b))
            if key not in cache:
                point = vertices[a] + vertices[b]
                vertices.append(point / np.linalg.norm(point))
                cache[key] = len(vertices) - 1
            return cache[key]

        refined = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            refined.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
        faces = refined

    return TriMesh(np.array(vertices) * radius, faces)


def asymmetric_blob(subdivisions=2):
    """ 축마다 다른 스케일과 두 개의 혹을 가진, 대칭이 없는 닫힌 메쉬 """
    sphere = icosphere(subdivisions)
    unit = sphere.vertices
    first = np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0)
    second = np.array([-1.0, 0.3, 0.5]) / np.linalg.norm([-1.0, 0.3, 0.5])

    radial = (1.0
              + 0.35 * np.exp(-((unit - first) ** 2).sum(axis=1) / 0.2)
              + 0.2 * np.exp(-((unit - second) ** 2).sum(axis=1) / 0.3))
    return sphere.with_vertices(unit * radial[:, None] * np.array([1.3, 1.0, 0.8]))


def bumpy_torus(n_major=40, n_minor=25, major=1.0, minor=0.35):
    """ 관 반지름이 둘레를 따라 변하는 비대칭 토러스. 정점 수 n_major · n_minor """
    u = np.arange(n_major) * 2.0 * np.pi / n_major
    v = np.arange(n_minor) * 2.0 * np.pi / n_minor
    uu, vv = np.meshgrid(u, v, indexing='ij')
    tube = minor * (1.0 + 0.3 * np.cos(uu) + 0.15 * np.sin(2.0 * uu + 0.5))
    ring = major + tube * np.cos(vv)
    vertices = np.stack([ring * np.cos(uu), ring * np.sin(uu), tube * np.sin(vv)], axis=-1).reshape(-1, 3)

    faces = []
    for i in range(n_major):
        for j in range(n_minor):
            a = i * n_minor + j
            b = ((i + 1) % n_major) * n_minor + j
            c = ((i + 1) % n_major) * n_minor + (j + 1) % n_minor
            d = i * n_minor + (j + 1) % n_minor
            faces.append((a, b, c))
            faces.append((a, c, d))
    return TriMesh(vertices, faces)


def bent_copy(mesh, curvature=0.6):
    """ x 축을 따라 원호로 휘어 놓은 거의 등거리(near-isometric) 복사본. 정점 순서는 그대로다. """
    radius = 1.0 / curvature
    x, y, z = mesh.vertices.T
    angle = x / radius
    bent = np.stack([(radius - z) * np.sin(angle), y, radius - (radius - z) * np.cos(angle)], axis=1)
    return mesh.with_vertices(bent)


def write_off(directory, name, mesh):
    path = os.path.join(directory, name)
    with open(path, 'w') as handle:
        handle.write('OFF\n{} {} 0\n'.format(mesh.n_vertices, mesh.n_faces))
        for x, y, z in mesh.vertices:
            handle.write('%.17g %.17g %.17g\n' % (x, y, z))
        for a, b, c in mesh.faces:
            handle.write('3 {} {} {}\n'.format(a, b, c))
    return path


def write_indices(directory, name, indices, header=None):
    path = os.path.join(directory, name)
    with open(path, 'w') as handle:
        if header:
            handle.write('# {}\n'.format(header))
        for index in indices:
            handle.write('{}\n'.format(int(index)))
    return path
