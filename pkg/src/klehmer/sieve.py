"""Bulk classification by segmented sieving.

Reproduces the counting table C_k(10^j) = #{n <= 10^j : phi(n) | (n-1)^k},
enumerates L_k composites and Carmichael numbers, and searches/verifies
the alpha sequence (smallest Carmichael number outside L_k).

The bulk route never factors anything: a segmented totient sieve supplies
phi(n), and the Lehmer index of every n in a segment is found by iterated
modular multiplication acc <- acc * (n-1) mod phi(n), stopping at the
first zero or after bitlength(phi) - 1 steps (every prime exponent in
phi(n) is below that, so no finite index can hide past it).  Segments are
independent work units; with a worker pool they are merged in ascending
order, so results are identical for any worker count or segment size.
"""

from __future__ import annotations

import math
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .arith import _as_natural, factorize
from .lehmer import K_CAP, NOT_IN_LINF, LehmerIndex, lehmer_index

__all__ = [
    "DEFAULT_MAX_LIMIT",
    "LARGE_MAX_LIMIT",
    "MEMORY_ENV_VAR",
    "SieveSegment",
    "CountTable",
    "AlphaRecord",
    "AlphaNotFound",
    "LimitExceededError",
    "MemoryBudgetError",
    "VerificationFailure",
    "NotCarmichaelError",
    "LehmerMembershipError",
    "base_primes",
    "write_prime_cache",
    "read_prime_cache",
    "totient_sieve",
    "classify_range",
    "count_table",
    "enumerate_Lk_composites",
    "enumerate_carmichael",
    "alpha_search",
    "verify_alpha_entry",
]

# Desk-scale default; the 10^8 ceiling is opt-in (CLI --allow-large) and
# needs a few hundred MB of segment headroom.
DEFAULT_MAX_LIMIT = 10**7
LARGE_MAX_LIMIT = 10**8

MEMORY_ENV_VAR = "KLEHMER_MEMORY_MIB"
_DEFAULT_MEMORY_MIB = 512

_DEFAULT_SEGMENT = 1_000_000

# acc * (n-1) must stay inside int64: hi^2 < 2^63 caps hi at ~3.03e9.
_INT64_SAFE_HI = 3_000_000_000

_SIEVE_BYTES_PER_ELEM = 24
_CLASSIFY_BYTES_PER_ELEM = 48

_CACHE_MAGIC = b"KLPC"
_CACHE_VERSION = 1


class LimitExceededError(Exception):
    """Requested bound is above the configured maximum."""


class MemoryBudgetError(LimitExceededError):
    """Segment would not fit the memory budget; carries a workable size."""

    def __init__(self, requested: int, budget_mib: int, suggested: int):
        self.requested = requested
        self.budget_mib = budget_mib
        self.suggested = suggested
        super().__init__(
            f"segment of {requested} values exceeds the {budget_mib} MiB "
            f"budget ({MEMORY_ENV_VAR}); use segments of at most {suggested}"
        )


class VerificationFailure(Exception):
    """A claimed alpha-table property did not hold."""


class NotCarmichaelError(VerificationFailure):
    """The value under verification is not a Carmichael number."""


class LehmerMembershipError(VerificationFailure):
    """The value under verification lies in L_k although it must not."""


@dataclass
class SieveSegment:
    """Totients (and optionally smallest prime factors) for [lo, hi)."""

    lo: int
    hi: int
    phi: np.ndarray
    spf: np.ndarray | None = None

    def phi_of(self, n: int) -> int:
        if not self.lo <= n < self.hi:
            raise IndexError(f"{n} outside [{self.lo}, {self.hi})")
        return int(self.phi[n - self.lo])


@dataclass(frozen=True)
class CountTable:
    """Counts C_k(10^j) for each requested k (the inf row is always kept)."""

    limit: int
    ks: tuple
    powers: tuple[int, ...]
    counts: dict

    def count(self, k, power: int) -> int:
        return self.counts[k][self.powers.index(power)]


@dataclass(frozen=True)
class AlphaRecord:
    """A Carmichael number outside L_k: alpha(k) when found by search.

    ``bound`` is the exhaustive search limit, or 0 when the value was
    checked directly (direct checks do not establish minimality).
    """

    k: int
    n: int
    omega: int
    in_next: bool
    bound: int


@dataclass(frozen=True)
class AlphaNotFound:
    """Search outcome: no Carmichael number outside L_k up to ``bound``."""

    k: int
    bound: int


def _memory_budget_mib() -> int:
    raw = os.environ.get(MEMORY_ENV_VAR)
    if raw is None:
        return _DEFAULT_MEMORY_MIB
    try:
        mib = int(raw)
    except ValueError:
        raise ValueError(f"{MEMORY_ENV_VAR} must be an integer, got {raw!r}")
    if mib < 1:
        raise ValueError(f"{MEMORY_ENV_VAR} must be positive, got {mib}")
    return mib


def _budget_segment_cap(bytes_per_elem: int) -> int:
    return max(1024, _memory_budget_mib() * (1 << 20) // bytes_per_elem)


def _prime_sieve_array(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


@lru_cache(maxsize=8)
def _cached_base_primes(limit: int) -> np.ndarray:
    return _prime_sieve_array(limit)


def write_prime_cache(path: str, primes: np.ndarray, limit: int) -> None:
    """Persist base primes: magic, u32 version, u64 limit, u64 count, u64 LE values."""
    arr = np.ascontiguousarray(np.asarray(primes, dtype="<u8"))
    header = _CACHE_MAGIC + struct.pack("<IQQ", _CACHE_VERSION, limit, arr.size)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(arr.tobytes())


def read_prime_cache(path: str) -> tuple[int, np.ndarray]:
    """Load a base-prime cache, returning (covered limit, primes)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    head = len(_CACHE_MAGIC) + struct.calcsize("<IQQ")
    if len(blob) < head or blob[: len(_CACHE_MAGIC)] != _CACHE_MAGIC:
        raise ValueError(f"{path} is not a prime cache file")
    version, limit, count = struct.unpack("<IQQ", blob[len(_CACHE_MAGIC) : head])
    if version != _CACHE_VERSION:
        raise ValueError(f"unsupported prime cache version {version}")
    data = blob[head:]
    if len(data) != 8 * count:
        raise ValueError(f"{path} is truncated")
    primes = np.frombuffer(data, dtype="<u8").astype(np.int64)
    return int(limit), primes


def base_primes(limit: int, cache_path: str | None = None) -> np.ndarray:
    """All primes <= limit, optionally round-tripped through a cache file."""
    limit = _as_natural(limit, name="limit")
    if cache_path and os.path.exists(cache_path):
        covered, primes = read_prime_cache(cache_path)
        if covered >= limit:
            return primes[primes <= limit]
    primes = _prime_sieve_array(limit)
    if cache_path:
        write_prime_cache(cache_path, primes, limit)
    return primes


def _segment_base_primes(hi: int, primes: np.ndarray | None) -> np.ndarray:
    need = math.isqrt(hi - 1)
    if primes is not None and primes.size and int(primes[-1]) >= need:
        return primes[primes <= need]
    return _cached_base_primes(max(need, 2))


def totient_sieve(
    lo: int,
    hi: int,
    with_spf: bool = False,
    base: np.ndarray | None = None,
) -> SieveSegment:
    """Exact totients for [lo, hi) by a segmented sieve.

    For every prime power p^e below hi the multiples of p^e pick up one
    factor of p (of p-1 at the first level); whatever remains after all
    base primes is a single prime above sqrt(hi), contributing rem - 1.
    Raises MemoryBudgetError when the segment cannot fit the configured
    budget, with a workable segment size in the message.
    """
    lo = _as_natural(lo, minimum=1, name="lo")
    hi = _as_natural(hi, minimum=lo + 1, name="hi")
    if hi > _INT64_SAFE_HI:
        raise LimitExceededError(f"hi must stay below {_INT64_SAFE_HI}")
    length = hi - lo
    bytes_per = _SIEVE_BYTES_PER_ELEM + (8 if with_spf else 0)
    cap = _budget_segment_cap(bytes_per)
    if length > cap:
        raise MemoryBudgetError(length, _memory_budget_mib(), cap)

    phi = np.ones(length, dtype=np.int64)
    rem = np.arange(lo, hi, dtype=np.int64)
    spf = np.zeros(length, dtype=np.int64) if with_spf else None

    for p in _segment_base_primes(hi, base).tolist():
        start = -(-lo // p) * p
        if start < hi:
            s = slice(start - lo, length, p)
            phi[s] *= p - 1
            rem[s] //= p
            if spf is not None:
                view = spf[s]
                view[view == 0] = p
        pe = p * p
        while pe < hi:
            start = -(-lo // pe) * pe
            if start < hi:
                s = slice(start - lo, length, pe)
                phi[s] *= p
                rem[s] //= p
            pe *= p

    big = rem > 1
    phi[big] *= rem[big] - 1
    if spf is not None:
        missing = (spf == 0) & big
        spf[missing] = rem[missing]
    return SieveSegment(lo, hi, phi, spf)


def _classify_arrays(
    lo: int, hi: int, kmax: int = K_CAP, base: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Per-n totients and Lehmer indexes for [lo, hi); index 0 = not in L_inf.

    Even n above 2 are settled immediately (phi even, n-1 odd); odd n run
    the modular iteration against their per-n cutoff bitlength(phi) - 1.
    """
    phi = totient_sieve(lo, hi, base=base).phi
    length = hi - lo
    index = np.zeros(length, dtype=np.uint8)
    for v in (1, 2):
        if lo <= v < hi:
            index[v - lo] = 1

    start_odd = max(lo, 3)
    if start_odd % 2 == 0:
        start_odd += 1
    pos = np.arange(start_odd - lo, length, 2, dtype=np.int64)
    if pos.size == 0:
        return phi, index

    ph = phi[pos]
    base_val = (pos + (lo - 1)) % ph
    cut = np.frexp(ph.astype(np.float64))[1].astype(np.int64) - 1
    np.minimum(cut, kmax, out=cut)

    acc = base_val.copy()
    k = 1
    zero = acc == 0
    index[pos[zero]] = 1
    alive = ~zero & (cut > 1)
    while True:
        pos = pos[alive]
        if pos.size == 0:
            break
        acc = acc[alive]
        base_val = base_val[alive]
        ph = ph[alive]
        cut = cut[alive]
        k += 1
        acc *= base_val
        acc %= ph
        zero = acc == 0
        index[pos[zero]] = k
        alive = ~zero & (cut > k)
    return phi, index


def _segment_bounds(
    lo: int, hi: int, size: int, cuts: tuple[int, ...] = ()
) -> list[tuple[int, int]]:
    """Split [lo, hi) into chunks of at most ``size``, aligned on ``cuts``."""
    marks = sorted({c for c in cuts if lo < c < hi})
    bounds = []
    start = lo
    while start < hi:
        end = min(start + size, hi)
        for c in marks:
            if start < c < end:
                end = c
                break
        bounds.append((start, end))
        start = end
    return bounds


def _auto_segment_size(segment_size: int | None) -> int:
    cap = _budget_segment_cap(_CLASSIFY_BYTES_PER_ELEM)
    if segment_size is None:
        return min(_DEFAULT_SEGMENT, cap)
    segment_size = _as_natural(segment_size, minimum=1, name="segment_size")
    return min(segment_size, cap)


def _map_segments(func, args_list, workers: int):
    if workers <= 1:
        return [func(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, args_list))


def _check_limit(limit, max_limit: int | None) -> int:
    limit = _as_natural(limit, minimum=1, name="limit")
    ceiling = DEFAULT_MAX_LIMIT if max_limit is None else max_limit
    if limit > ceiling:
        raise LimitExceededError(
            f"limit {limit} exceeds the configured maximum {ceiling}"
        )
    if limit >= _INT64_SAFE_HI:
        raise LimitExceededError(f"limit must stay below {_INT64_SAFE_HI}")
    return limit


def classify_range(
    lo: int,
    hi: int,
    kmax: int = K_CAP,
    *,
    segment_size: int | None = None,
) -> Iterator[tuple[int, LehmerIndex]]:
    """Yield (n, LehmerIndex) for every n in [lo, hi), factorization-free.

    Agrees with lehmer_index everywhere as long as kmax (default 127, the
    global cap) is not pushed below a value's natural cutoff; indexes past
    kmax are reported as NOT_IN_LINF.
    """
    lo = _as_natural(lo, minimum=1, name="lo")
    hi = _as_natural(hi, minimum=lo + 1, name="hi")
    kmax = _as_natural(kmax, minimum=1, name="kmax")
    if kmax > K_CAP:
        raise ValueError(f"kmax must be at most {K_CAP}")
    if hi > _INT64_SAFE_HI:
        raise LimitExceededError(f"hi must stay below {_INT64_SAFE_HI}")
    size = _auto_segment_size(segment_size)
    for a, b in _segment_bounds(lo, hi, size):
        _, index = _classify_arrays(a, b, kmax)
        for i, ix in enumerate(index.tolist()):
            yield a + i, (LehmerIndex(ix) if ix else NOT_IN_LINF)


def _segment_histogram(bounds: tuple[int, int]) -> np.ndarray:
    lo, hi = bounds
    _, index = _classify_arrays(lo, hi)
    return np.bincount(index, minlength=K_CAP + 1).astype(np.int64)


def _normalize_ks(ks) -> tuple:
    seen = []
    for k in ks:
        if k == math.inf:
            key = math.inf
        else:
            key = _as_natural(k, minimum=1, name="k")
        if key not in seen:
            seen.append(key)
    if not seen:
        raise ValueError("at least one k is required")
    return tuple(sorted(seen, key=lambda v: (v == math.inf, v)))


def count_table(
    limit,
    ks=(2, 3, 4, 5, math.inf),
    *,
    segment_size: int | None = None,
    workers: int = 1,
    max_limit: int | None = None,
    prime_cache: str | None = None,
) -> CountTable:
    """Exact counts C_k(10^j) for every power of ten up to ``limit``.

    ``limit`` must itself be a power of ten.  The inf row (membership in
    L_inf) is always computed alongside the requested ks; requested k
    beyond 127 count as inf.  Deterministic for any worker count and
    segment size.
    """
    limit = _check_limit(limit, max_limit)
    j = round(math.log10(limit))
    if 10**j != limit or j < 1:
        raise ValueError(f"limit must be a power of 10 >= 10, got {limit}")
    requested = _normalize_ks(ks)
    powers = tuple(10**i for i in range(1, j + 1))

    if prime_cache:
        base_primes(math.isqrt(limit) + 1, prime_cache)

    size = _auto_segment_size(segment_size)
    bounds = _segment_bounds(1, limit + 1, size, cuts=tuple(p + 1 for p in powers))
    hists = _map_segments(_segment_histogram, bounds, workers)

    running = np.zeros(K_CAP + 1, dtype=np.int64)
    snapshots = {}
    want = {p + 1 for p in powers}
    for (lo, hi), hist in zip(bounds, hists):
        running += hist
        if hi in want:
            snapshots[hi - 1] = running.copy()

    counts: dict = {}
    for k in requested + ((math.inf,) if math.inf not in requested else ()):
        row = []
        for p in powers:
            snap = snapshots[p]
            if k == math.inf:
                row.append(int(snap[1:].sum()))
            else:
                row.append(int(snap[1 : min(k, K_CAP) + 1].sum()))
        counts[k] = tuple(row)
    return CountTable(limit=limit, ks=requested, powers=powers, counts=counts)


def _segment_lk_members(args: tuple[int, int, int]) -> np.ndarray:
    lo, hi, k = args
    phi, index = _classify_arrays(lo, hi)
    n = np.arange(lo, hi, dtype=np.int64)
    composite = (n > 1) & (phi != n - 1)
    member = (index >= 1) & (index <= min(k, K_CAP))
    return n[composite & member]


def enumerate_Lk_composites(
    limit,
    k: int,
    *,
    segment_size: int | None = None,
    workers: int = 1,
    max_limit: int | None = None,
) -> list[int]:
    """All composite n <= limit with phi(n) | (n-1)^k, ascending."""
    limit = _check_limit(limit, max_limit)
    k = _as_natural(k, minimum=1, name="k")
    size = _auto_segment_size(segment_size)
    bounds = _segment_bounds(1, limit + 1, size)
    chunks = _map_segments(_segment_lk_members, [(a, b, k) for a, b in bounds], workers)
    out: list[int] = []
    for chunk in chunks:
        out.extend(chunk.tolist())
    return out


def _segment_carmichael(bounds: tuple[int, int]) -> np.ndarray:
    """Carmichael numbers in [lo, hi) by sieve-driven Korselt checks.

    Every base prime p marks its multiples with the p-1 | n-1 condition
    and its square kills non-squarefree n; the cofactor left after all
    base primes is either 1 or a single prime above sqrt(hi).
    """
    lo, hi = bounds
    length = hi - lo
    n = np.arange(lo, hi, dtype=np.int64)
    nm1 = n - 1
    ok = np.ones(length, dtype=bool)
    rem = n.copy()
    omega = np.zeros(length, dtype=np.uint8)

    for p in _segment_base_primes(hi, None).tolist():
        start = -(-lo // p) * p
        if start < hi:
            s = slice(start - lo, length, p)
            if p > 2:
                ok[s] &= nm1[s] % (p - 1) == 0
            omega[s] += 1
            rem[s] //= p
        p2 = p * p
        if p2 < hi:
            start = -(-lo // p2) * p2
            if start < hi:
                ok[slice(start - lo, length, p2)] = False

    big = rem > 1
    ok[big] &= nm1[big] % (rem[big] - 1) == 0
    ok &= (omega + big) >= 2
    return n[ok]


def enumerate_carmichael(
    limit,
    *,
    segment_size: int | None = None,
    workers: int = 1,
    max_limit: int | None = None,
) -> list[int]:
    """All Carmichael numbers <= limit, ascending."""
    limit = _check_limit(limit, max_limit)
    if limit < 4:
        return []
    size = _auto_segment_size(segment_size)
    bounds = _segment_bounds(2, limit + 1, size)
    chunks = _map_segments(_segment_carmichael, bounds, workers)
    out: list[int] = []
    for chunk in chunks:
        out.extend(chunk.tolist())
    return out


def alpha_search(
    k: int,
    limit,
    *,
    segment_size: int | None = None,
    workers: int = 1,
    max_limit: int | None = None,
) -> AlphaRecord | AlphaNotFound:
    """Smallest Carmichael number <= limit outside L_k, if any.

    Scans Carmichael numbers in ascending order and checks membership by
    the factorization route, so a returned record is minimal below the
    bound by construction.
    """
    k = _as_natural(k, minimum=1, name="k")
    limit = _check_limit(limit, max_limit)
    size = _auto_segment_size(segment_size)
    bounds = _segment_bounds(2, limit + 1, size) if limit >= 4 else []
    for lo, hi in bounds:
        for n in _segment_carmichael((lo, hi)).tolist():
            idx = lehmer_index(n)
            if not idx <= k:
                return AlphaRecord(
                    k=k,
                    n=n,
                    omega=factorize(n).omega(),
                    in_next=idx <= k + 1,
                    bound=limit,
                )
    return AlphaNotFound(k=k, bound=limit)


def verify_alpha_entry(k: int, n) -> AlphaRecord:
    """Check a claimed alpha(k) value directly, with no search.

    Confirms (by full factorization) that n is a Carmichael number and
    not in L_k, and reports its distinct-prime count and whether it lands
    in L_{k+1}.  Minimality is NOT established; ``bound`` is 0 to say so.
    Failures raise NotCarmichaelError / LehmerMembershipError.
    """
    k = _as_natural(k, minimum=1, name="k")
    n = _as_natural(n, minimum=1, name="n")
    f = factorize(n)
    if not (f.is_composite and f.is_squarefree):
        raise NotCarmichaelError(f"{n} is not squarefree composite")
    if any((n - 1) % (p - 1) != 0 for p in f.primes()):
        raise NotCarmichaelError(f"{n} fails the Korselt divisibility check")
    idx = lehmer_index(n)
    if idx <= k:
        raise LehmerMembershipError(f"{n} lies in L_{k}")
    return AlphaRecord(k=k, n=n, omega=f.omega(), in_next=idx <= k + 1, bound=0)
