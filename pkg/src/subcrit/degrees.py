"""Degree sequences, degree distributions and their summary statistics.

A degree sequence ``d_1, ..., d_n`` has average degree

    mu = (1/n) sum_i d_i

and offspring mean

    nu = sum_i d_i (d_i - 1) / (n mu),

the mean number of new half-edges found when a uniformly random half-edge
is followed.  Both are computed from exact integer sums.
"""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path

import numpy as np

from ._io import atomic_open
from ._zeta import hurwitz_zeta, zeta
from .errors import (
    ConditioningError,
    DistributionError,
    SequenceFormatError,
    ZeroMeanDegreeError,
)

__all__ = [
    "DegreeSequence",
    "DegreeDistribution",
    "SizeBiasedPmf",
    "zeta_distribution",
    "finite_distribution",
    "parse_distribution",
    "mu",
    "nu",
    "top_degrees",
    "top_vertices",
    "tail_constant",
    "size_biased",
    "sample_iid_sequence",
    "load_sequence",
    "save_sequence",
]

MAX_PARITY_ATTEMPTS = 10**6
PMF_TOLERANCE = 1e-12


def _power_sums(degrees):
    """Exact ``(sum d, sum d(d-1))`` as Python ints."""
    if degrees.size == 0:
        return 0, 0
    dmax = int(degrees.max())
    if dmax < 2**31 and degrees.size * dmax * dmax < 2**62:
        s1 = int(degrees.sum(dtype=np.int64))
        s2 = int((degrees * (degrees - 1)).sum(dtype=np.int64))
        return s1, s2
    values, counts = np.unique(degrees, return_counts=True)
    s1 = sum(int(v) * int(c) for v, c in zip(values, counts))
    s2 = sum(int(v) * (int(v) - 1) * int(c) for v, c in zip(values, counts))
    return s1, s2


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """An immutable list of nonnegative vertex degrees.

    Parameters
    ----------
    degrees : array_like of int
        One entry per vertex; at least one vertex.
    """

    degrees: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.degrees, dtype=np.int64, copy=True).reshape(-1)
        if arr.size == 0:
            raise ValueError("a degree sequence needs at least one vertex")
        if (arr < 0).any():
            i = int(np.flatnonzero(arr < 0)[0])
            raise ValueError(f"negative degree {arr[i]} at vertex {i}")
        arr.setflags(write=False)
        object.__setattr__(self, "degrees", arr)

    def __len__(self):
        return self.degrees.size

    def __eq__(self, other):
        if not isinstance(other, DegreeSequence):
            return NotImplemented
        return np.array_equal(self.degrees, other.degrees)

    def __hash__(self):
        return hash(self.degrees.tobytes())

    def __repr__(self):
        return f"DegreeSequence(n={self.n}, total={self.total}, max={self.max_degree})"

    @property
    def n(self):
        return self.degrees.size

    @cached_property
    def _sums(self):
        return _power_sums(self.degrees)

    @property
    def total(self):
        """Number of half-edges."""
        return self._sums[0]

    @property
    def is_even(self):
        """Whether the half-edges can be perfectly matched."""
        return self.total % 2 == 0

    @cached_property
    def max_degree(self):
        return int(self.degrees.max())

    def counts(self):
        """``{k: n_k}`` for every degree value present."""
        values, counts = np.unique(self.degrees, return_counts=True)
        return {int(k): int(c) for k, c in zip(values, counts)}


def mu(seq):
    """Average degree, from the exact integer sum."""
    return seq.total / seq.n


def nu(seq):
    """Offspring mean ``sum d(d-1) / sum d``.

    Raises
    ------
    ZeroMeanDegreeError
        If every degree is zero.
    """
    s1, s2 = seq._sums
    if s1 == 0:
        raise ZeroMeanDegreeError("nu is undefined when every degree is zero")
    return s2 / s1


def top_vertices(seq, j):
    """Indices of the ``j`` largest degrees; ties go to the lower index."""
    if not 1 <= j <= seq.n:
        raise ValueError(f"j must lie in [1, {seq.n}], got {j}")
    order = np.argsort(-seq.degrees, kind="stable")
    return order[:j]


def top_degrees(seq, j):
    """The ``j`` largest degrees in non-increasing order."""
    return [int(d) for d in seq.degrees[top_vertices(seq, j)]]


def tail_constant(seq, gamma):
    """``sup_k k^(gamma-1) |{i : d_i >= k}| / n`` over ``1 <= k <= max degree``.

    Between consecutive distinct degree values the count is constant and
    ``k^(gamma-1)`` increases, so only the distinct positive degrees need to
    be visited.
    """
    positive = seq.degrees[seq.degrees > 0]
    if positive.size == 0:
        return 0.0
    values, counts = np.unique(positive, return_counts=True)
    at_least = np.cumsum(counts[::-1])[::-1]
    terms = values.astype(float) ** (gamma - 1.0) * at_least / seq.n
    return float(terms.max())


@dataclass(frozen=True)
class SizeBiasedPmf:
    """Degree law seen from a uniformly random half-edge."""

    pmf: dict
    nu: float

    def total_mass(self):
        return float(sum(self.pmf.values()))


def size_biased(seq):
    """``p*_k = k n_k / (n mu)`` for each degree ``k >= 1`` present in ``seq``."""
    if seq.total == 0:
        raise ZeroMeanDegreeError("the size-biased law needs a positive mean degree")
    pmf = {k: k * c / seq.total for k, c in seq.counts().items() if k > 0}
    return SizeBiasedPmf(pmf=pmf, nu=float(sum((k - 1) * p for k, p in pmf.items())))


# -- degree distributions ---------------------------------------------------

_ZETA_TABLE_SIZE = 2**16


@lru_cache(maxsize=16)
def _zeta_survival_table(gamma):
    """``P(D >= k)`` for ``k = 1 .. K+1`` under the zeta law, read-only."""
    k = np.arange(1, _ZETA_TABLE_SIZE + 1, dtype=float)
    tail = hurwitz_zeta(gamma, _ZETA_TABLE_SIZE + 1.0)
    partial = np.cumsum((k ** (-gamma))[::-1])[::-1]
    sv = np.append(partial + tail, tail) / zeta(gamma)
    sv[0] = 1.0
    sv.setflags(write=False)
    return sv


def _zeta_tail_inverse(gamma, u):
    """Largest ``k`` with ``P(D >= k) >= u``, for ``u`` below the table."""
    z = zeta(gamma)

    def survival(k):
        return hurwitz_zeta(gamma, float(k)) / z

    lo = _ZETA_TABLE_SIZE + 1  # survival(lo) >= u
    hi = 2 * lo
    while survival(hi) >= u:
        lo, hi = hi, 2 * hi
        if hi > 2**62:
            return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if survival(mid) >= u:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True, eq=False)
class DegreeDistribution:
    """A law on the nonnegative integers.

    Either the zeta family ``p_k = k^-gamma / zeta(gamma)`` for ``k >= 1``
    (``kind == "zeta"``) or a finite table ``probs[k]`` (``kind == "pmf"``).
    Build one with :func:`zeta_distribution`, :func:`finite_distribution` or
    :func:`parse_distribution`.
    """

    kind: str
    gamma: float = None
    probs: np.ndarray = field(default=None, repr=False)

    @property
    def tail_constant(self):
        """``a1`` with ``P(D >= k) ~ a1 k^(1-gamma)``; None for finite tables."""
        if self.kind != "zeta":
            return None
        return 1.0 / ((self.gamma - 1.0) * zeta(self.gamma))

    def pmf(self, k):
        k = np.asarray(k)
        if self.kind == "zeta":
            kf = np.maximum(k, 1).astype(float)
            return np.where(k >= 1, kf ** (-self.gamma) / zeta(self.gamma), 0.0)
        inside = (k >= 0) & (k < self.probs.size)
        return np.where(inside, self.probs[np.clip(k, 0, self.probs.size - 1)], 0.0)

    def survival(self, k):
        """``P(D >= k)``."""
        k = np.asarray(k)
        if self.kind == "zeta":
            kf = np.maximum(k, 1).astype(float)
            return hurwitz_zeta(self.gamma, kf) / zeta(self.gamma)
        tail = np.append(np.cumsum(self.probs[::-1])[::-1], 0.0)
        return tail[np.clip(k, 0, self.probs.size)]

    def mean(self):
        if self.kind == "zeta":
            return zeta(self.gamma - 1.0) / zeta(self.gamma) if self.gamma > 2 else np.inf
        return float(np.dot(np.arange(self.probs.size), self.probs))

    def offspring_mean(self):
        """``E D(D-1) / E D``; infinite for zeta with ``gamma <= 3``."""
        if self.kind == "zeta":
            if self.gamma <= 3:
                return np.inf
            z1 = zeta(self.gamma - 1.0)
            return (zeta(self.gamma - 2.0) - z1) / z1
        k = np.arange(self.probs.size)
        m = self.mean()
        if m == 0:
            raise ZeroMeanDegreeError("offspring mean undefined for a zero-mean law")
        return float(np.dot(k * (k - 1), self.probs) / m)

    def fixed_parity(self):
        """0 or 1 if every atom has that parity, else None."""
        if self.kind == "zeta":
            return None
        support = np.flatnonzero(self.probs > 0)
        parities = set((support % 2).tolist())
        return parities.pop() if len(parities) == 1 else None

    def sample(self, size, rng):
        """``size`` i.i.d. draws by inverse CDF."""
        if self.kind == "zeta":
            sv = _zeta_survival_table(self.gamma)
            u = 1.0 - rng.random(size)  # in (0, 1]
            # D = max{k : P(D >= k) >= u}
            out = sv.size - np.searchsorted(sv[::-1], u, side="left")
            out = out.astype(np.int64)
            for i in np.flatnonzero(out > _ZETA_TABLE_SIZE):
                out[i] = _zeta_tail_inverse(self.gamma, u[i])
            return out
        cdf = np.cumsum(self.probs)
        cdf[-1] = 1.0
        return np.searchsorted(cdf, rng.random(size), side="right").astype(np.int64)

    def spec(self):
        """Canonical spec string understood by :func:`parse_distribution`."""
        if self.kind == "zeta":
            return f"zeta:gamma={self.gamma!r}"
        parts = [f"{k}={float(p)!r}" for k, p in enumerate(self.probs) if p > 0]
        return "pmf:" + ",".join(parts)

    def __eq__(self, other):
        if not isinstance(other, DegreeDistribution):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "zeta":
            return self.gamma == other.gamma
        return np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash((self.kind, self.gamma if self.kind == "zeta" else self.probs.tobytes()))


def zeta_distribution(gamma):
    gamma = float(gamma)
    if not gamma > 2:
        raise DistributionError(f"zeta law needs gamma > 2 for a finite mean, got {gamma}")
    return DegreeDistribution(kind="zeta", gamma=gamma)


def finite_distribution(probs):
    """Finite law from ``{k: p_k}`` or a sequence indexed by ``k``."""
    if isinstance(probs, dict):
        if not probs:
            raise DistributionError("empty pmf")
        if any(int(k) < 0 for k in probs):
            raise DistributionError("pmf support must be nonnegative")
        table = np.zeros(max(int(k) for k in probs) + 1)
        for k, p in probs.items():
            table[int(k)] += float(p)
    else:
        table = np.array(probs, dtype=float)
    if table.size == 0 or (table < 0).any() or not np.isfinite(table).all():
        raise DistributionError("pmf entries must be finite and nonnegative")
    if abs(table.sum() - 1.0) > PMF_TOLERANCE:
        raise DistributionError(f"pmf sums to {table.sum()!r}, not 1")
    table.setflags(write=False)
    return DegreeDistribution(kind="pmf", probs=table)


def _parse_params(text):
    params = {}
    for item in filter(None, text.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise DistributionError(f"expected key=value, got {item!r}")
        params[key.strip()] = value.strip()
    return params


def parse_distribution(spec):
    """Parse ``"zeta:gamma=4.0"`` or ``"pmf:0=0.5,1=0.3,2=0.2"``."""
    kind, _, rest = spec.strip().partition(":")
    params = _parse_params(rest)
    try:
        if kind == "zeta":
            if set(params) != {"gamma"}:
                raise DistributionError(f"zeta takes exactly gamma=..., got {spec!r}")
            return zeta_distribution(float(params["gamma"]))
        if kind == "pmf":
            return finite_distribution({int(k): float(p) for k, p in params.items()})
    except ValueError as exc:
        if isinstance(exc, DistributionError):
            raise
        raise DistributionError(f"bad distribution spec {spec!r}: {exc}") from exc
    raise DistributionError(f"unknown distribution kind {kind!r} in {spec!r}")


def sample_iid_sequence(dist, n, parity="require_even", rng=None):
    """Draw ``n`` i.i.d. degrees from ``dist``.

    Parameters
    ----------
    dist : DegreeDistribution
    n : int
    parity : {"require_even", "allow_any"}
        With ``"require_even"`` whole sequences are redrawn until the degree
        sum is even, which is exact conditioning on that event.
    rng : numpy.random.Generator or int, optional

    Raises
    ------
    ConditioningError
        If an even sum is impossible or was not hit in ``MAX_PARITY_ATTEMPTS``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if parity not in ("require_even", "allow_any"):
        raise ValueError(f"unknown parity mode {parity!r}")
    rng = np.random.default_rng(rng)
    if parity == "allow_any":
        return DegreeSequence(dist.sample(n, rng))
    if dist.fixed_parity() == 1 and n % 2 == 1:
        raise ConditioningError(
            f"every atom is odd and n={n} is odd, so the degree sum is never even"
        )
    for _ in range(MAX_PARITY_ATTEMPTS):
        draw = dist.sample(n, rng)
        if int(draw.sum(dtype=np.int64)) % 2 == 0:
            return DegreeSequence(draw)
    raise ConditioningError(f"no even-sum sequence after {MAX_PARITY_ATTEMPTS} attempts")


def load_sequence(path):
    """Read one nonnegative decimal integer per line."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    values = []
    for lineno, line in enumerate(lines, start=1):
        token = line.strip()
        if not token.lstrip("-").isdigit():
            raise SequenceFormatError(f"not an integer: {line!r}", lineno, path)
        value = int(token)
        if value < 0:
            raise SequenceFormatError(f"negative degree {value}", lineno, path)
        values.append(value)
    if not values:
        raise SequenceFormatError("no degrees in file", None, path)
    return DegreeSequence(values)


def save_sequence(seq, path):
    with atomic_open(path, newline="\n") as fh:
        fh.write("\n".join(str(int(d)) for d in seq.degrees))
        fh.write("\n")
