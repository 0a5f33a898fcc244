""" 간편한 클래스 임포트

외부 모듈에서 해당 모듈내에 정의된 클래스들을 쉽게 임포트할 수 있도록 클래스들을 임포트해준다.

"""


from .mesh.tri_mesh                      import TriMesh, EdgeGraph
from .mesh.mesh_dao                      import MeshDao

from .spectral.spectral_basis            import SpectralBasis
from .spectral.spectral_cache_dao        import SpectralCacheDao

from .correspondence.point_map           import PointMap, GroundTruth, ErrorReport, FunctionalMap, SoftP2P
from .correspondence.correspondence_dao  import CorrespondenceDao

from .prism.prism_layer                  import PrismLayer

from .run.match_config                   import MatchConfig, RunManifest
from .run.run_dao                        import RunDao
