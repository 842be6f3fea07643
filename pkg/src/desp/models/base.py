"""Event-dispatch contract shared by all models."""

from desp.errors import ConfigurationError, UnknownEventError
from desp.resource import Resource
from desp.stats import StatsCollector

__all__ = ["Model", "resolve_params"]


def _coerce(key, default, value):
    if not isinstance(value, str):
        return value
    try:
        if isinstance(default, bool):
            lowered = value.strip().lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
    except ValueError:
        raise ConfigurationError(f"bad value for parameter {key!r}: {value!r}") from None
    return value


def resolve_params(defaults, overrides):
    """Merge ``overrides`` into ``defaults``; string values are parsed by the default's type."""
    unknown = sorted(set(overrides) - set(defaults))
    if unknown:
        raise ConfigurationError(
            f"unknown parameter(s) {', '.join(unknown)}; known: {', '.join(sorted(defaults))}")
    params = dict(defaults)
    for key, value in overrides.items():
        params[key] = _coerce(key, defaults[key], value)
    return params


class Model:
    """Resource registry plus a table of event handlers keyed by integer code.

    Subclasses declare ``defaults``, check parameters in ``validate`` and
    create resources and handlers in ``build``. Event code 0 is the initial
    event and must always be handled.
    """

    name = "model"
    defaults: dict = {}

    def __init__(self, params=None, **kwargs):
        merged = dict(params or {})
        merged.update(kwargs)
        self.params = resolve_params(self.defaults, merged)
        self.validate(self.params)
        self.sim = None
        self.resources = []
        self.handlers = {}
        self.build()
        if 0 not in self.handlers:
            raise ConfigurationError(f"model {self.name!r} has no handler for event 0")
        self._stats = StatsCollector(self.resources)

    def validate(self, params):
        pass

    def build(self):
        raise NotImplementedError

    def add_resource(self, name, capacity=1, active=False):
        if any(r.name == name for r in self.resources):
            raise ConfigurationError(f"duplicate resource name {name!r}")
        res = Resource(name, capacity, active=active)
        self.resources.append(res)
        return res

    def resource(self, name):
        for r in self.resources:
            if r.name == name:
                return r
        raise KeyError(name)

    def attach(self, sim):
        self.sim = sim
        for r in self.resources:
            r.sim = sim

    def execute(self, code, client):
        try:
            handler = self.handlers[code]
        except KeyError:
            raise UnknownEventError(code, self.sim.tnow) from None
        handler(client)

    # statistics lifecycle, driven by the kernel

    def init(self):
        self._stats.init()

    def init_replication(self):
        self._stats.init_replication()

    def end_replication(self, end_time=float("nan"), drained=False):
        self._stats.end_replication(end_time, drained)

    def finalize(self):
        return self._stats.finalize()


def require_positive(params, *keys):
    for key in keys:
        value = params[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
            raise ConfigurationError(f"parameter {key!r} must be > 0, got {value!r}")
