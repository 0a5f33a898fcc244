import os

import numpy as np
import pandas as pd

from model.correspondence.point_map import PointMap, GroundTruth
from utils.custom_exceptions import (
    MapParseError,
    MapIndexOutOfRange,
    InvalidLandmarks,
    OutputNotWritable
)


def _ensure_parent(path):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


class CorrespondenceDao:
    """ Persistence Layer: 대응 관계 / 정답 / 랜드마크 / 평가 리포트 파일

    대응 관계 파일은 주석 헤더 한 줄과 정점마다 0-based 인덱스 한 줄로 이루어진다.
    """

    def _read_indices(self, path, n_targets=None):
        """ 한 줄에 인덱스 하나인 파일 읽기

        Returns:
            (indices, line_numbers)

        Raises:
            400, {'message': 'map_parse_error', 'error_message': '... line N'}
            400, {'message': 'map_index_out_of_range', 'error_message': '... line N'}
        """
        indices = []
        line_numbers = []
        with open(path, 'r') as handle:
            for number, line in enumerate(handle, start=1):
                line = line.strip()
                if not line or line.startswith('#'):
                    continue
                try:
                    index = int(line.split()[0])
                except ValueError:
                    raise MapParseError('{}: 정수 인덱스가 아닙니다. line {}'.format(path, number))

                if index < 0 or (n_targets is not None and index >= n_targets):
                    raise MapIndexOutOfRange(
                        '{}: 인덱스 {} 가 [0, {}) 범위를 벗어났습니다. line {}'.format(path, index, n_targets, number)
                    )
                indices.append(index)
                line_numbers.append(number)

        return np.array(indices, dtype=np.int64), line_numbers

    def load_point_map(self, path, n_targets=None, direction='21'):
        indices, _ = self._read_indices(path, n_targets)
        return PointMap(indices, direction)

    def save_point_map(self, path, point_map):
        header = '# T{}: line i = source vertex i, value = 0-based target vertex index'.format(point_map.direction)
        try:
            _ensure_parent(path)
            with open(path, 'w') as handle:
                handle.write(header + '\n')
                handle.write(''.join('{}\n'.format(int(index)) for index in point_map.assignments))
        except OSError as e:
            raise OutputNotWritable('{} 에 쓸 수 없습니다. ({})'.format(path, e))
        return path

    def load_ground_truth(self, path, n_targets=None):
        indices, _ = self._read_indices(path, n_targets)
        return GroundTruth(indices)

    def load_landmarks(self, path, n_source, n_target):
        """ 랜드마크 파일 읽기

        한 줄에 'source_index target_index'.

        Returns:
            (m, 2) int 배열, 열 0 은 source(S2), 열 1 은 target(S1)
        """
        pairs = []
        with open(path, 'r') as handle:
            for number, line in enumerate(handle, start=1):
                line = line.split('#', 1)[0].strip()
                if not line:
                    continue
                try:
                    source_index, target_index = (int(value) for value in line.split()[:2])
                except ValueError:
                    raise InvalidLandmarks('{}: "source target" 형식이 아닙니다. line {}'.format(path, number))

                if not (0 <= source_index < n_source and 0 <= target_index < n_target):
                    raise InvalidLandmarks('{}: 범위를 벗어난 랜드마크입니다. line {}'.format(path, number))
                pairs.append((source_index, target_index))

        if not pairs:
            raise InvalidLandmarks('{}: 랜드마크가 없습니다.'.format(path))
        return np.array(pairs, dtype=np.int64)

    def save_matrix(self, path, matrix, comment=''):
        """ 함수 맵 디버그 덤프 (plain-text 행렬) """
        _ensure_parent(path)
        np.savetxt(path, np.asarray(matrix), fmt='%.10e', header=comment)
        return path

    def save_error_report(self, path, report):
        """ 정점별 오차 테이블과 곡선 샘플 저장

        Returns:
            (오차 테이블 경로, 곡선 경로)
        """
        _ensure_parent(path)
        stem = os.path.splitext(path)[0]
        curve_path = stem + '_curve.tsv'

        errors = pd.DataFrame({'vertex': np.arange(len(report.errors)), 'normalized_error': report.errors})
        errors.to_csv(path, sep='\t', index=False, float_format='%.10g')

        curve = pd.DataFrame({'threshold': report.thresholds, 'fraction': report.curve})
        curve.to_csv(curve_path, sep='\t', index=False, float_format='%.10g')
        return path, curve_path
