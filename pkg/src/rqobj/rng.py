"""Seedable pseudo-random sources and the distribution transforms built on them.

Every random draw in the package flows through a :class:`RandomSource`.  Two
generators are available, selected by the option strings ``"mt"`` and
``"gnu"``:

``mt``
    MT19937, the 32-bit Mersenne Twister.  Seeds below ``2**32`` use the
    reference ``init_genrand`` routine, so ``seed_source("mt", 5489)``
    reproduces the textbook output stream.  Larger seeds are split into two
    32-bit words and fed to ``init_by_array``.

``gnu``
    The four-word KISS combination generator used by older gfortran runtimes
    for ``random_number``::

        a <- 69069 * a + 1327217885              (mod 2**32, congruential)
        b <- b ^ b << 13; b ^= b >> 17; b ^= b << 5   (xorshift)
        c <- 18000 * (c & 0xffff) + (c >> 16)    (multiply-with-carry)
        e <- 30903 * (e & 0xffff) + (e >> 16)    (multiply-with-carry)
        out = a + b + (c << 16) + e              (mod 2**32)

    The 64-bit seed is expanded into the four state words by two rounds of
    splitmix64 (low word first).  A zero xorshift word is replaced by
    ``0x9e3779b9``; each carry word is reduced modulo ``mult * 2**16 - 1`` and
    bumped to 1 if it lands on 0, which keeps it off both absorbing states.

Both generators form a double in ``[0, 1)`` from two consecutive 32-bit words
as ``((w0 >> 5) * 2**26 + (w1 >> 6)) / 2**53`` (53 bits of resolution).

The Petersen lagged-Fibonacci generator (``"netlib"``) is recognized but not
provided.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, UnsupportedAlgorithmError

__all__ = [
    "ALGORITHMS",
    "RandomSource",
    "seed_source",
    "derive_seed",
    "next_u01",
    "sample_uniform",
    "sample_gaussian",
    "sample_exponential",
    "random_permutation",
    "box_muller",
    "exponential_from_u01",
]

ALGORITHMS = ("mt", "gnu")

_MASK32 = 0xFFFFFFFF
_MASK64 = 0xFFFFFFFFFFFFFFFF
_TWO53 = 9007199254740992.0


def _splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; return ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    """Derive an independent 64-bit sub-stream seed from a master seed.

    Each key is folded in as ``s <- splitmix64_output(s ^ splitmix64_output(key))``,
    so ``derive_seed(s, i, j)`` differs from ``derive_seed(s, j, i)``.
    """
    s = _check_seed(seed)
    for key in keys:
        _, k = _splitmix64(int(key) & _MASK64)
        _, s = _splitmix64(s ^ k)
    return s


class _MT19937:
    n = 624
    m = 397
    upper = 0x80000000
    lower = 0x7FFFFFFF
    matrix_a = 0x9908B0DF

    def __init__(self, seed: int):
        if seed <= _MASK32:
            self.mt = self._init_genrand(seed)
        else:
            self.mt = self._init_by_array([seed & _MASK32, seed >> 32])

    @classmethod
    def _init_genrand(cls, s: int) -> np.ndarray:
        mt = [0] * cls.n
        mt[0] = s & _MASK32
        for i in range(1, cls.n):
            prev = mt[i - 1]
            mt[i] = (1812433253 * (prev ^ (prev >> 30)) + i) & _MASK32
        return np.array(mt, dtype=np.uint32)

    @classmethod
    def _init_by_array(cls, key: list[int]) -> np.ndarray:
        n = cls.n
        mt = [int(x) for x in cls._init_genrand(19650218)]
        i, j = 1, 0
        for _ in range(max(n, len(key))):
            prev = mt[i - 1]
            mt[i] = ((mt[i] ^ ((prev ^ (prev >> 30)) * 1664525)) + key[j] + j) & _MASK32
            i += 1
            j += 1
            if i >= n:
                mt[0] = mt[n - 1]
                i = 1
            if j >= len(key):
                j = 0
        for _ in range(n - 1):
            prev = mt[i - 1]
            mt[i] = ((mt[i] ^ ((prev ^ (prev >> 30)) * 1566083941)) - i) & _MASK32
            i += 1
            if i >= n:
                mt[0] = mt[n - 1]
                i = 1
        mt[0] = 0x80000000
        return np.array(mt, dtype=np.uint32)

    def _twist(self) -> None:
        mt, n, m = self.mt, self.n, self.m
        # Slices are ordered so that every word read as "already twisted"
        # (index i + m wrapping past n) was written by an earlier slice.
        for lo, hi in ((0, n - m), (n - m, 2 * (n - m)), (2 * (n - m), n - 1)):
            y = (mt[lo:hi] & self.upper) | (mt[lo + 1:hi + 1] & self.lower)
            src = (lo + m) % n
            mt[lo:hi] = mt[src:src + hi - lo] ^ (y >> 1) ^ ((y & 1) * self.matrix_a)
        y = (int(mt[n - 1]) & self.upper) | (int(mt[0]) & self.lower)
        mt[n - 1] = int(mt[m - 1]) ^ (y >> 1) ^ (self.matrix_a if y & 1 else 0)

    def block(self) -> np.ndarray:
        self._twist()
        y = self.mt.copy()
        y ^= y >> 11
        y ^= (y << 7) & 0x9D2C5680
        y ^= (y << 15) & 0xEFC60000
        y ^= y >> 18
        return y


class _Kiss:
    block_size = 2048

    def __init__(self, seed: int):
        state, o1 = _splitmix64(seed)
        _, o2 = _splitmix64(state)
        a, b = o1 & _MASK32, o1 >> 32
        c, e = o2 & _MASK32, o2 >> 32
        if b == 0:
            b = 0x9E3779B9
        c %= 18000 * 65536 - 1
        e %= 30903 * 65536 - 1
        self.state = (a, b, c or 1, e or 1)

    def block(self) -> np.ndarray:
        a, b, c, e = self.state
        out = [0] * self.block_size
        for i in range(self.block_size):
            a = (69069 * a + 1327217885) & _MASK32
            b ^= (b << 13) & _MASK32
            b ^= b >> 17
            b ^= (b << 5) & _MASK32
            c = 18000 * (c & 0xFFFF) + (c >> 16)
            e = 30903 * (e & 0xFFFF) + (e >> 16)
            out[i] = (a + b + ((c << 16) & _MASK32) + e) & _MASK32
        self.state = (a, b, c, e)
        return np.array(out, dtype=np.uint32)


_ENGINES = {"mt": _MT19937, "gnu": _Kiss}


def _check_algorithm(algorithm: str) -> str:
    if algorithm == "netlib":
        raise UnsupportedAlgorithmError(
            "rng 'netlib' (Petersen lagged Fibonacci) is out of scope for this "
            f"package; supported: {', '.join(ALGORITHMS)}"
        )
    if algorithm not in _ENGINES:
        raise UnsupportedAlgorithmError(
            f"unknown rng {algorithm!r}; supported: {', '.join(ALGORITHMS)}"
        )
    return algorithm


def _check_seed(seed: int) -> int:
    if isinstance(seed, (bool, float)) or not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= _MASK64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


class RandomSource:
    """A deterministic stream of 32-bit words and derived uniform doubles.

    Not safe for concurrent use; give each worker its own source (see
    :func:`derive_seed`).
    """

    def __init__(self, algorithm: str = "mt", seed: int = 5489):
        self.algorithm = _check_algorithm(algorithm)
        self.reseed(seed)

    def reseed(self, seed: int) -> None:
        """Reset the stream completely, as if freshly constructed."""
        self.seed = _check_seed(seed)
        self._engine = _ENGINES[self.algorithm](self.seed)
        self._buf = np.empty(0, dtype=np.uint32)
        self._pos = 0

    def __repr__(self) -> str:
        return f"RandomSource({self.algorithm!r}, seed={self.seed})"

    def u32(self, n: int) -> np.ndarray:
        """Return the next ``n`` raw 32-bit words."""
        avail = self._buf.size - self._pos
        if n <= avail:
            out = self._buf[self._pos:self._pos + n]
            self._pos += n
            return out.copy()
        parts = [self._buf[self._pos:]]
        need = n - avail
        while True:
            blk = self._engine.block()
            if need <= blk.size:
                parts.append(blk[:need])
                self._buf, self._pos = blk, need
                break
            parts.append(blk)
            need -= blk.size
        return np.concatenate(parts)

    def next_u32(self) -> int:
        return int(self.u32(1)[0])

    def u01(self, n: int) -> np.ndarray:
        """Return ``n`` doubles uniform on ``[0, 1)``, two words each."""
        w = self.u32(2 * n)
        hi = (w[0::2] >> 5).astype(np.float64)
        lo = (w[1::2] >> 6).astype(np.float64)
        return (hi * 67108864.0 + lo) / _TWO53

    def next_u01(self) -> float:
        return float(self.u01(1)[0])


def seed_source(algorithm: str, seed: int) -> RandomSource:
    """Create a fresh source for ``algorithm`` (``"mt"`` or ``"gnu"``)."""
    return RandomSource(algorithm, seed)


def next_u01(source: RandomSource) -> float:
    return source.next_u01()


def sample_uniform(source: RandomSource, d: int, a: float = 0.0, b: float = 1.0) -> np.ndarray:
    """``d`` independent draws uniform on ``[a, b]``."""
    if a > b:
        raise DomainError(f"invalid interval [{a}, {b}]")
    return a + (b - a) * source.u01(d)


def box_muller(u1, u2):
    """Map uniform pairs to a pair of independent standard normals.

    ``u1`` must lie in ``(0, 1]``.
    """
    r = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * np.asarray(u2)
    return r * np.cos(angle), r * np.sin(angle)


def sample_gaussian(source: RandomSource, d: int) -> np.ndarray:
    """``d`` i.i.d. standard normals by Box-Muller.

    Pair ``k`` consumes draws ``u[2k], u[2k+1]`` and yields components ``2k``
    (cosine) and ``2k + 1`` (sine).  The radial draw is taken as ``1 - u`` so
    it never reaches zero.  For odd ``d`` the last sine value is discarded;
    nothing is carried over to the next call.
    """
    pairs = (d + 1) // 2
    u = source.u01(2 * pairs)
    z = np.empty(2 * pairs)
    z[0::2], z[1::2] = box_muller(1.0 - u[0::2], u[1::2])
    return z[:d]


def exponential_from_u01(u):
    """Inverse-CDF transform ``-ln(1 - u)`` for the unit-rate exponential."""
    return -np.log1p(-np.asarray(u, dtype=float))


def sample_exponential(source: RandomSource, d: int) -> np.ndarray:
    """``d`` i.i.d. unit-rate exponential draws."""
    return exponential_from_u01(source.u01(d))


def random_permutation(source: RandomSource, d: int) -> np.ndarray:
    """Uniform random permutation of ``1..d`` (Fisher-Yates).

    Values are 1-based; subtract one before using the result as an index.
    """
    perm = np.arange(1, d + 1)
    if d < 2:
        return perm
    u = source.u01(d - 1)
    for k, i in enumerate(range(d - 1, 0, -1)):
        j = min(int(u[k] * (i + 1)), i)
        perm[i], perm[j] = perm[j], perm[i]
    return perm
