from unittest import TestCase

import os
import sys
import tempfile
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from model.run.match_config import MatchConfig
from model.run.run_dao import RunDao
from service.config_service import ConfigService
from utils.custom_exceptions import InvalidConfig


class TestConfigService(TestCase):
    """ Test

        Target: service/config_service

        Author: 홍길동

        History:
            2026-10-02(홍길동): 초기 생성
    """

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.service = ConfigService(RunDao(), {'k': 20, 'max_iters': 50})

    def tearDown(self):
        self.directory.cleanup()

    def _write(self, name, text):
        path = os.path.join(self.directory.name, name)
        with open(path, 'w') as handle:
            handle.write(text)
        return path

    def test_defaults(self):
        config = ConfigService(RunDao()).build_config()
        self.assertEqual(config, MatchConfig())
        self.assertEqual(config.n_eigenpairs, 100)

        config = self.service.build_config()
        self.assertEqual((config.k, config.max_iters, config.tau), (20, 50, 0.07))
        self.assertEqual(config.similarity, 'cosine')
        self.assertEqual(self.service.build_config(overrides={'similarity': 'dot'}).similarity, 'dot')

    def test_precedence(self):
        path = self._write('run.cfg', '# run settings\nk = 24\nlr = 5e-4\nrefine = no\n')
        config = self.service.build_config(path, {'lr': '0.01', 'tau': None})

        self.assertEqual(config.k, 24)
        self.assertEqual(config.lr, 0.01)
        self.assertEqual(config.tau, 0.07)
        self.assertFalse(config.refine)
        self.assertEqual(config.n_eigenpairs, 24)

    def test_bad_value_reports_line(self):
        path = self._write('run.cfg', 'k = 24\n\nk = many\n')
        with self.assertRaises(InvalidConfig) as context:
            self.service.build_config(path)
        self.assertIn('line 3', context.exception.error_message)

    def test_rule_violation(self):
        path = self._write('run.cfg', 'tau = 0\n')
        with self.assertRaises(InvalidConfig):
            self.service.build_config(path)
        with self.assertRaises(InvalidConfig):
            self.service.build_config(overrides={'features': 'sift'})
        with self.assertRaises(InvalidConfig):
            self.service.build_config(overrides={'similarity': 'euclidean'})
        with self.assertRaises(InvalidConfig):
            self.service.build_config(overrides={'k': 2.5})

    def test_malformed_lines(self):
        with self.assertRaises(InvalidConfig) as context:
            self.service.build_config(self._write('run.cfg', 'k 24\n'))
        self.assertIn('line 1', context.exception.error_message)

        with self.assertRaises(InvalidConfig):
            self.service.build_config(self._write('other.cfg', 'learning_rate = 1\n'))

        with self.assertRaises(InvalidConfig):
            self.service.build_config(os.path.join(self.directory.name, 'missing.cfg'))

    def test_relative_paths_resolve_against_config_file(self):
        self._write('landmarks.txt', '0 0\n')
        path = self._write('run.cfg', 'landmarks = landmarks.txt\n')
        config = self.service.build_config(path)
        self.assertEqual(config.landmarks, os.path.join(self.directory.name, 'landmarks.txt'))

    def test_refine_size_must_cover_k(self):
        with self.assertRaises(InvalidConfig):
            self.service.build_config(overrides={'k': 40, 'refine_k_end': 30})
        config = self.service.build_config(overrides={'k': 40, 'refine_k_end': 30, 'refine': False})
        self.assertEqual(config.n_eigenpairs, 40)
