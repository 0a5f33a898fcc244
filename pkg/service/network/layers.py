""" 학습 파라미터 묶음과 점별(pointwise) 선형 층 """

from collections import OrderedDict

import numpy as np

from service.autodiff import Tensor, matmul, relu
from utils.custom_exceptions import InvalidConfig


class ParameterSet:
    """ 이름 붙은 학습 파라미터

    체크포인트 저장/로드와 Adam 에 넘길 목록을 관리한다.

    Attributes:
        rng    : np.random.Generator (시드 고정)
        tensors: {이름: Tensor}
    """

    def __init__(self, rng):
        self.rng = rng
        self.tensors = OrderedDict()

    def add(self, name, array):
        if name in self.tensors:
            raise ValueError('duplicate parameter {}'.format(name))
        tensor = Tensor(np.array(array, dtype=np.float64), requires_grad=True, name=name)
        self.tensors[name] = tensor
        return tensor

    def uniform(self, name, shape, bound):
        return self.add(name, self.rng.uniform(-bound, bound, size=shape))

    def normal(self, name, shape, std):
        return self.add(name, self.rng.normal(0.0, std, size=shape))

    def values(self):
        return list(self.tensors.values())

    def __len__(self):
        return len(self.tensors)

    def __getitem__(self, name):
        return self.tensors[name]

    def named_arrays(self):
        return {name: tensor.data.copy() for name, tensor in self.tensors.items()}

    def load(self, named_arrays):
        """ 체크포인트 값으로 덮어쓴다

        Raises:
            400, {'message': 'invalid_config', 'error_message': '... parameter ...'}
        """
        missing = [name for name in self.tensors if name not in named_arrays]
        if missing:
            raise InvalidConfig('파라미터 파일에 {} 가 없습니다.'.format(missing[0]))

        for name, tensor in self.tensors.items():
            array = np.asarray(named_arrays[name], dtype=np.float64)
            if array.shape != tensor.shape:
                raise InvalidConfig('파라미터 {} 의 shape {} 가 {} 와 다릅니다.'.format(name, array.shape, tensor.shape))
            tensor.data = array.copy()
            tensor.adam_m = None
            tensor.adam_v = None
        return self


class Linear:
    """ x @ W + b, W 와 b 는 uniform(±1/√fan_in) 초기화 """

    def __init__(self, params, name, fan_in, fan_out):
        bound = 1.0 / np.sqrt(fan_in)
        self.weight = params.uniform(name + '.weight', (fan_in, fan_out), bound)
        self.bias = params.uniform(name + '.bias', (fan_out,), bound)

    def __call__(self, x):
        return matmul(x, self.weight) + self.bias


class MLP:
    """ 선형 층 사이에 relu, 마지막 층 뒤에는 활성화 없음 """

    def __init__(self, params, name, widths):
        self.layers = [Linear(params, '{}.{}'.format(name, index), fan_in, fan_out)
                       for index, (fan_in, fan_out) in enumerate(zip(widths[:-1], widths[1:]))]

    @property
    def last(self):
        return self.layers[-1]

    def __call__(self, x):
        for index, layer in enumerate(self.layers):
            x = layer(x)
            if index < len(self.layers) - 1:
                x = relu(x)
        return x
