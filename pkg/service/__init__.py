""" 간편한 클래스 임포트

외부 모듈에서 해당 모듈내에 정의된 클래스들을 쉽게 임포트할 수 있도록 클래스들을 임포트해준다.

"""


from .config_service                import ConfigService

from .geometry.mesh_service         import MeshService
from .geometry.spectral_service     import SpectralService

from .matching.match_service        import MatchService
from .matching.evaluation_service   import EvaluationService
from .matching.transfer_service     import TransferService
