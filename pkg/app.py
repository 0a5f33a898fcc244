import logging

import numpy as np
from flask                  import Flask
from flask.json.provider    import DefaultJSONProvider
from flask_cors             import CORS

from view import create_endpoints

from model import (
    MeshDao,
    SpectralCacheDao,
    CorrespondenceDao,
    RunDao
)

from service import (
    ConfigService,
    MeshService,
    SpectralService,
    MatchService,
    EvaluationService,
    TransferService
)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


class CustomJSONProvider(DefaultJSONProvider):
    """ numpy 스칼라 / 배열도 직렬화한다 """

    @staticmethod
    def default(obj):
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        return DefaultJSONProvider.default(obj)


# for getting multiple service classes

class Services:
    pass


def create_app(test_config=None):
    app = Flask(__name__)
    app.json = CustomJSONProvider(app)
    CORS(app, resources={r'*': {'origins': '*'}})

    if test_config is None:
        app.config.from_pyfile("config.py")
    else:
        app.config.update(test_config)

    logging.basicConfig(level=app.config.get('LOG_LEVEL', 'INFO'), format=LOG_FORMAT)

    # persistence Layer
    mesh_dao           = MeshDao()
    spectral_cache_dao = SpectralCacheDao(app.config.get('SPECTRAL_CACHE_DIR'))
    correspondence_dao = CorrespondenceDao()
    run_dao            = RunDao()

    # business Layer
    services = Services()
    services.config_service     = ConfigService(run_dao, app.config.get('MATCH_DEFAULTS'))
    services.mesh_service       = MeshService(mesh_dao)
    services.spectral_service   = SpectralService(spectral_cache_dao)
    services.match_service      = MatchService(services.mesh_service, services.spectral_service,
                                               correspondence_dao, run_dao)
    services.evaluation_service = EvaluationService(mesh_dao, correspondence_dao)
    services.transfer_service   = TransferService(mesh_dao, correspondence_dao)
    app.services = services

    # presentation Layer
    create_endpoints(app, services)

    return app
