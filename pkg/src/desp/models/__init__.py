from desp.errors import ConfigurationError
from desp.models.base import Model, resolve_params
from desp.models.flowshop import FlowShop, flowshop_model
from desp.models.minioodb import MiniOODB, minioodb_model
from desp.models.mm1 import MM1, mm1_model, mm1_response_time, mm1_wait_time
from desp.models.philosophers import Philosophers, philosophers_model

MODELS = {
    "flowshop": FlowShop,
    "philosophers": Philosophers,
    "mm1": MM1,
    "minioodb": MiniOODB,
}


def make_model(name, params=None):
    try:
        cls = MODELS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown model {name!r}; known models: {', '.join(sorted(MODELS))}") from None
    return cls(params or {})


__all__ = [
    "MODELS", "make_model", "Model", "resolve_params",
    "FlowShop", "flowshop_model", "Philosophers", "philosophers_model",
    "MM1", "mm1_model", "mm1_response_time", "mm1_wait_time",
    "MiniOODB", "minioodb_model",
]
