"""
Lewis-Payne generalized feedback shift register (GFSR) generator.

Output word n is ``x[n-98] XOR x[n-27]`` over 32-bit words. The register is
seeded from a Lehmer LCG (multiplier 16807, modulus 2**31 - 1), two 16-bit
halves per word, and the first 1000 outputs are thrown away.

Internally the generator keeps the last 98 words as a window into a buffer
that is refilled a block at a time, which is what makes single draws cheap
in pure Python. The classical circular-register view (``register`` and
``index``) is reconstructed on demand and matches the textbook formulation
exactly.
"""

import csv
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from desp.errors import ConfigurationError

__all__ = ["GFSR", "GfsrState", "seed", "load_fixtures", "check_fixtures"]

P = 98
Q = 27
LCG_MULTIPLIER = 16807
LCG_MODULUS = 2**31 - 1
WARMUP = 1000
SEED_MIN = 1
SEED_MAX = 2**31 - 2

_TAP = P - Q
_BLOCK = 4096
_INV_2_32 = 1.0 / 4294967296.0


@dataclass(frozen=True)
class GfsrState:
    """Immutable snapshot of a generator, in circular-register form."""

    register: tuple
    index: int
    draws_emitted: int


def _seed_register(seed):
    v = seed
    register = []
    for _ in range(P):
        v = (LCG_MULTIPLIER * v) % LCG_MODULUS
        a = v
        v = (LCG_MULTIPLIER * v) % LCG_MODULUS
        b = v
        register.append(((a & 0xFFFF) << 16) | (b & 0xFFFF))
    return register


def _extend(window, n):
    """``window`` (98 words, oldest first) followed by the next ``n`` outputs.

    Over GF(2) the recurrence also holds with both lags doubled, so once
    enough history exists each xor produces 27 * 2**k words at a time.
    """
    x = np.empty(P + n, dtype=np.uint32)
    x[:P] = window
    lp, lq = P, Q
    filled, end = P, P + n
    while filled < end:
        while filled >= 2 * lp:
            lp, lq = 2 * lp, 2 * lq
        m = min(lq, end - filled)
        np.bitwise_xor(x[filled - lp:filled - lp + m], x[filled - lq:filled - lq + m],
                       out=x[filled:filled + m])
        filled += m
    return x


class GFSR:
    """A seeded GFSR stream plus the distribution laws used by the models.

    Each simulation owns one instance; it is not thread-safe and is never
    reseeded between replications.
    """

    def __init__(self, seed):
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
            raise ConfigurationError(f"seed must be an integer, got {seed!r}")
        seed = int(seed)
        if not SEED_MIN <= seed <= SEED_MAX:
            raise ConfigurationError(
                f"seed must lie in [{SEED_MIN}, {SEED_MAX}], got {seed}")
        self.seed = seed
        # _buf[_pos:_pos + 98] holds x[n-98] .. x[n-1]; anything beyond is
        # precomputed future output.
        self._buf = _seed_register(seed)
        self._pos = 0
        self._steps = 0
        self.skip(WARMUP)
        self._steps = 0
        self._warm_index = WARMUP % P

    # -- circular-register view ------------------------------------------

    @property
    def index(self):
        return (self._warm_index + self._steps) % P

    @property
    def register(self):
        idx = self.index
        window = self._buf[self._pos:self._pos + P]
        reg = [0] * P
        for j, word in enumerate(window):
            reg[(idx + j) % P] = word
        return reg

    @property
    def draws_emitted(self):
        return self._steps

    def snapshot(self):
        return GfsrState(tuple(self.register), self.index, self._steps)

    # -- raw output ----------------------------------------------------------

    def _refill(self):
        self._buf = _extend(self._buf[self._pos:self._pos + P], _BLOCK).tolist()
        self._pos = 0

    def next_u32(self):
        pos = self._pos
        if pos + P >= len(self._buf):
            self._refill()
            pos = 0
        self._pos = pos + 1
        self._steps += 1
        return self._buf[pos + P]

    def skip(self, n):
        """Discard ``n`` outputs."""
        while n > 0:
            avail = len(self._buf) - P - self._pos
            if avail <= 0:
                self._refill()
                continue
            step = min(avail, n)
            self._pos += step
            self._steps += step
            n -= step

    def u32_array(self, n):
        """The next ``n`` outputs as a ``uint32`` array."""
        n = int(n)
        start = self._pos + P
        take = min(n, len(self._buf) - start)
        head = np.array(self._buf[start:start + take], dtype=np.uint32)
        self._pos += take
        self._steps += take
        if take == n:
            return head
        x = _extend(self._buf[self._pos:self._pos + P], n - take)
        self._buf = x[-P:].tolist()
        self._pos = 0
        self._steps += n - take
        return np.concatenate((head, x[P:]))

    # -- distributions -----------------------------------------------------

    def uniform01(self):
        """Uniform real in [0, 1): next_u32 / 2**32."""
        return self.next_u32() * _INV_2_32

    def uniform01_array(self, n):
        return self.u32_array(n).astype(np.float64) * _INV_2_32

    def uniform(self, a, b):
        if a > b:
            raise ConfigurationError(f"uniform needs a <= b, got a={a}, b={b}")
        return a + (b - a) * self.uniform01()

    def exponential(self, mean):
        if not mean > 0:
            raise ConfigurationError(f"exponential mean must be > 0, got {mean}")
        # 1 - u is never 0 because u < 1
        return -mean * math.log(1.0 - self.uniform01())


def seed(value):
    """Return a warmed-up generator for ``value``."""
    return GFSR(value)


def load_fixtures():
    """Golden ``(seed, draw, expected_u32)`` triples; ``draw`` is 1-based."""
    text = resources.files("desp.data").joinpath("rng-fixtures.csv").read_text()
    rows = csv.DictReader(text.splitlines())
    return [(int(r["seed"]), int(r["draw"]), int(r["expected_u32"])) for r in rows]


def check_fixtures(fixtures=None):
    """Return a list of mismatch descriptions (empty when all fixtures match)."""
    if fixtures is None:
        fixtures = load_fixtures()
    by_seed = {}
    for s, draw, expected in fixtures:
        by_seed.setdefault(s, []).append((draw, expected))
    problems = []
    for s, wanted in sorted(by_seed.items()):
        g = GFSR(s)
        last = max(d for d, _ in wanted)
        stream = g.u32_array(last)
        for draw, expected in wanted:
            got = int(stream[draw - 1])
            if got != expected:
                problems.append(f"seed {s} draw {draw}: expected {expected}, got {got}")
    return problems
