""" 역방향 자동 미분의 기본 단위

Tensor 는 numpy float64 배열을 감싸고, 활성화된 Tape 가 있을 때 연산 기록을 남긴다.
Tape 의 노드 순서가 곧 위상 순서이며 backward 는 이를 역순으로 순회한다.

기본적인 사용 예시:
    w = Tensor(np.ones((3, 2)), requires_grad=True, name='w')
    with Tape():
        loss = frobenius_sq(x @ w)
    backward(loss)
    w.grad
"""

import threading

import numpy as np

from utils.custom_exceptions import UntrackedTensor

_local = threading.local()


def _tape_stack():
    if not hasattr(_local, 'stack'):
        _local.stack = []
    return _local.stack


def active_tape():
    stack = _tape_stack()
    return stack[-1] if stack else None


class _Node:
    __slots__ = ('output', 'parents', 'backward')

    def __init__(self, output, parents, backward):
        self.output = output
        self.parents = parents
        self.backward = backward


class Tape:
    """ 연산 기록

    Attributes:
        nodes: 기록 순서대로의 (출력, 부모들, backward 클로저)
    """

    def __init__(self):
        self.nodes = []

    def __enter__(self):
        _tape_stack().append(self)
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        _tape_stack().remove(self)
        return False

    def record(self, output, parents, backward):
        output.tape = self
        output.node_id = len(self.nodes)
        self.nodes.append(_Node(output, parents, backward))

    def __len__(self):
        return len(self.nodes)


class Tensor:
    """ 미분 가능한 dense 실수 배열

    Attributes:
        data         : np.ndarray (float64)
        requires_grad: True 이면 잎(leaf) 파라미터로 grad 를 받는다
        grad         : backward 이후 누적된 기울기
        name         : 에러 메세지 및 체크포인트 저장용 이름
        tape, node_id: 기록된 테이프와 노드 번호
    """

    __array_priority__ = 100
    __array_ufunc__ = None

    def __init__(self, data, requires_grad=False, name=None):
        self.data = np.asarray(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self.name = name
        self.grad = None
        self.tape = None
        self.node_id = None

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def size(self):
        return self.data.size

    def is_tracked_on(self, tape):
        return self.requires_grad or (self.tape is tape and self.node_id is not None)

    def numpy(self):
        return self.data

    def zero_grad(self):
        self.grad = np.zeros_like(self.data)

    def item(self):
        return float(self.data.reshape(-1)[0])

    def __len__(self):
        return self.data.shape[0]

    def __repr__(self):
        label = ' name={}'.format(self.name) if self.name else ''
        return 'Tensor(shape={}{})'.format(self.shape, label)


def lift(value):
    """ 상수를 추적되지 않는 Tensor 로 감싼다 """
    if isinstance(value, Tensor):
        return value
    return Tensor(value)


def make_result(data, parents, backward):
    """ 연산 결과 생성. 추적되는 부모가 있고 테이프가 활성화되어 있으면 기록한다. """
    out = Tensor(data)
    tape = active_tape()
    if tape is not None and any(parent.is_tracked_on(tape) for parent in parents):
        tape.record(out, parents, backward)
    return out


def backward(loss):
    """ 역전파

    Args:
        loss: 테이프에 기록된 스칼라 Tensor

    Returns: None. 추적된 잎 텐서들의 grad 에 기울기가 더해진다.

    Raises:
        500, {'message': 'untracked_tensor', 'error_message': '...'}
    """
    if not isinstance(loss, Tensor) or loss.tape is None or loss.node_id is None:
        raise UntrackedTensor('테이프에 기록되지 않은 텐서로 backward 를 호출했습니다.')
    if loss.size != 1:
        raise UntrackedTensor('backward 는 스칼라 손실에만 호출할 수 있습니다. shape={}'.format(loss.shape))

    tape = loss.tape
    grads = {loss.node_id: np.ones_like(loss.data)}

    for node_id in range(loss.node_id, -1, -1):
        grad = grads.pop(node_id, None)
        if grad is None:
            continue

        node = tape.nodes[node_id]
        parent_grads = node.backward(grad)

        for parent, parent_grad in zip(node.parents, parent_grads):
            if parent_grad is None:
                continue

            if parent.tape is tape and parent.node_id is not None:
                if parent.node_id in grads:
                    grads[parent.node_id] = grads[parent.node_id] + parent_grad
                else:
                    grads[parent.node_id] = parent_grad

            elif parent.requires_grad:
                if parent.grad is None:
                    parent.grad = np.array(parent_grad, dtype=np.float64)
                else:
                    parent.grad = parent.grad + parent_grad
