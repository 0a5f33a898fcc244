""" 역방향 자동 미분

연산 모듈(ops)을 임포트하면 Tensor 에 연산자 오버로딩이 붙는다.
"""

from .tensor   import Tensor, Tape, backward, lift, active_tape
from .ops      import (
    add,
    subtract,
    multiply,
    scale,
    negate,
    relu,
    exp,
    log,
    softplus,
    matmul,
    sparse_matmul,
    transpose,
    frobenius_sq,
    reduce_sum,
    mean,
    reduce_max,
    softmax_rows,
    normalize_rows,
    concatenate,
    reshape,
    broadcast_to,
    getitem,
    gather_rows,
    segment_matrix,
    segment_mean
)
from .linalg   import solve_fmap_rows, orthogonalize, nearest_rotation
from .optim    import adam_step, Adam
