import os

from utils.custom_exceptions import OutputNotWritable


class GenerateFilePath:
    """ 결과물 저장 경로 생성

        Args:
            'path_type' :
                1: 대응 관계(T21) 파일
                2: 복원된 형상 S3 OFF 파일
                3: 손실 히스토리 테이블
                4: RunManifest
                5: 학습 중간 S3 OFF 파일 (iteration 필요)
                6: 함수 맵 C 행렬 덤프 (direction 필요: 12 / 21)
                7: 네트워크 파라미터 체크포인트
                8: 정제 전 최근접 이웃 대응 관계 파일

            '**kwargs' : 저장 경로 생성에 이용될 iteration 혹은 direction

        Returns: 결과물 파일 경로
    """
    def __init__(self, out_dir):
        self.out_dir = out_dir

    def prepare(self):
        try:
            os.makedirs(self.out_dir, exist_ok=True)
        except OSError as e:
            raise OutputNotWritable('{} 디렉토리를 만들 수 없습니다. ({})'.format(self.out_dir, e))

        if not os.access(self.out_dir, os.W_OK):
            raise OutputNotWritable('{} 디렉토리에 쓸 수 없습니다.'.format(self.out_dir))
        return self

    def generate_file_path(self, path_type, **kwargs):
        if path_type == 1:
            return os.path.join(self.out_dir, 'correspondence_t21.txt')

        if path_type == 2:
            return os.path.join(self.out_dir, 'reconstruction_s3.off')

        if path_type == 3:
            return os.path.join(self.out_dir, 'loss_history.tsv')

        if path_type == 4:
            return os.path.join(self.out_dir, 'run_manifest.json')

        if path_type == 5:
            return os.path.join(self.out_dir, 'snapshots', 's3_iter{:05d}.off'.format(kwargs['iteration']))

        if path_type == 6:
            return os.path.join(self.out_dir, 'fmap_c{}.txt'.format(kwargs['direction']))

        if path_type == 7:
            return os.path.join(self.out_dir, 'parameters.npz')

        if path_type == 8:
            return os.path.join(self.out_dir, 'correspondence_t21_initial.txt')

        raise ValueError('unknown path_type {}'.format(path_type))
