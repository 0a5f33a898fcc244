import json
import os
from dataclasses import asdict

import numpy as np
import pandas as pd

from utils.custom_exceptions import InvalidConfig, OutputNotWritable

LOSS_HISTORY_COLUMNS = ('iteration', 'mse', 'fmap', 'cycle', 'primo', 'total', 'best_total')


def _ensure_parent(path):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


class RunDao:
    """ Persistence Layer: 설정 파일, 손실 히스토리, RunManifest, 파라미터 체크포인트 """

    def read_config_file(self, path):
        """ key = value 설정 파일 읽기

        Args:
            path: 설정 파일 경로

        Returns:
            [(line_number, key, raw_value), ...]

        Raises:
            400, {'message': 'invalid_config', 'error_message': '... line N'}
        """
        entries = []
        try:
            with open(path, 'r') as handle:
                for number, line in enumerate(handle, start=1):
                    line = line.split('#', 1)[0].strip()
                    if not line:
                        continue
                    if '=' not in line:
                        raise InvalidConfig('{}: "key = value" 형식이 아닙니다. line {}'.format(path, number))
                    key, value = (part.strip() for part in line.split('=', 1))
                    entries.append((number, key, value))

        except OSError as e:
            raise InvalidConfig('{}: 설정 파일을 읽을 수 없습니다. ({})'.format(path, e))
        return entries

    def save_loss_history(self, path, history):
        """ 반복별 손실 테이블 (tab-separated) """
        _ensure_parent(path)
        table = pd.DataFrame(history, columns=LOSS_HISTORY_COLUMNS)
        table.to_csv(path, sep='\t', index=False, float_format='%.17g')
        return path

    def save_manifest(self, path, manifest):
        try:
            _ensure_parent(path)
            with open(path, 'w') as handle:
                json.dump(asdict(manifest), handle, indent=2, sort_keys=False, default=str)
        except OSError as e:
            raise OutputNotWritable('{} 에 쓸 수 없습니다. ({})'.format(path, e))
        return path

    def save_parameters(self, path, named_arrays):
        """ 이름 붙은 텐서들을 하나의 npz 로 저장 """
        _ensure_parent(path)
        np.savez(path, **named_arrays)
        return path

    def load_parameters(self, path):
        with np.load(path) as npzfile:
            return {name: npzfile[name].copy() for name in npzfile.files}
