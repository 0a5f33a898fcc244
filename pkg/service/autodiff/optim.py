import numpy as np

from utils.custom_exceptions import NanGradient

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


def adam_step(params, lr, beta1=BETA1, beta2=BETA2, eps=EPSILON, t=1):
    """ Adam 한 스텝 (bias correction 포함)

    모멘트는 각 Tensor 의 adam_m, adam_v 속성에 보관된다. 갱신 후 grad 는 0 으로 초기화된다.

    Args:
        params: requires_grad Tensor 목록
        lr    : 학습률
        t     : 1 부터 시작하는 스텝 번호

    Raises:
        500, {'message': 'nan_gradient', 'error_message': '<parameter name> ...'}
    """
    grads = []
    for index, param in enumerate(params):
        grad = param.grad if param.grad is not None else np.zeros_like(param.data)
        if not np.all(np.isfinite(grad)):
            raise NanGradient('{} 의 기울기에 NaN/Inf 가 있습니다.'.format(param.name or 'param[{}]'.format(index)))
        grads.append(grad)

    for param, grad in zip(params, grads):
        if getattr(param, 'adam_m', None) is None:
            param.adam_m = np.zeros_like(param.data)
            param.adam_v = np.zeros_like(param.data)

        param.adam_m = beta1 * param.adam_m + (1.0 - beta1) * grad
        param.adam_v = beta2 * param.adam_v + (1.0 - beta2) * grad * grad
        m_hat = param.adam_m / (1.0 - beta1 ** t)
        v_hat = param.adam_v / (1.0 - beta2 ** t)

        param.data = param.data - lr * m_hat / (np.sqrt(v_hat) + eps)
        param.zero_grad()


class Adam:
    """ 스텝 번호를 관리하는 adam_step 래퍼 """

    def __init__(self, params, lr, beta1=BETA1, beta2=BETA2, eps=EPSILON):
        self.params = list(params)
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0

    def zero_grad(self):
        for param in self.params:
            param.zero_grad()

    def step(self):
        self.t += 1
        adam_step(self.params, self.lr, self.beta1, self.beta2, self.eps, self.t)
