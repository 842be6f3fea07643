"""Exception hierarchy shared by the engine, the models and the CLI."""


class DespError(Exception):
    """Base class for every error raised by the package."""


class ConfigurationError(DespError, ValueError):
    """Invalid seed, run configuration, distribution argument or model parameter."""


class ModelError(DespError):
    """A model asked the engine for something it cannot do."""


class UnknownEventError(ModelError):
    def __init__(self, code, tnow):
        self.code = code
        self.tnow = tnow
        super().__init__(f"unknown event {code} at time {tnow:f}")


class InvariantError(DespError):
    """An internal consistency check failed; always a bug in a model or the engine."""


class SchedulingError(InvariantError):
    pass


class ResourceError(InvariantError):
    pass


class LifecycleError(InvariantError):
    pass


class AggregationError(DespError, ValueError):
    pass
