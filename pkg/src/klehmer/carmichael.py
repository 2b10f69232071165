"""Carmichael-number tests and constructions.

Three equivalent characterizations of Carmichael numbers are exposed
side by side: Korselt's squarefree divisibility criterion, the
lambda-divides test, and the radical variant that trades the explicit
squarefree condition for rad(phi(n)) | n-1.  On composite input they
agree everywhere (the suite checks this exhaustively); primes and 1
are never Carmichael and return False from all three.

Also here: the Chernick product construction with its Lehmer-index
classification, and the explicit Fermat-pseudoprime base that every
composite member of L_inf admits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import (
    MAX_NATURAL,
    _as_natural,
    carmichael_lambda,
    euler_phi,
    factorize,
    is_prime,
    mod_pow,
    radical,
)
from .lehmer import LehmerIndex, lehmer_index

__all__ = [
    "ChernickCandidate",
    "CarmichaelVerdict",
    "korselt_test",
    "lambda_test",
    "radical_korselt_test",
    "carmichael_verdict",
    "chernick",
    "chernick_factors",
    "pseudoprime_base",
    "fermat_test",
]


@dataclass(frozen=True)
class CarmichaelVerdict:
    """The three characterizations evaluated on one n."""

    n: int
    korselt: bool
    lambda_divides: bool
    radical_korselt: bool

    @property
    def unanimous(self) -> bool:
        return self.korselt == self.lambda_divides == self.radical_korselt


@dataclass(frozen=True)
class ChernickCandidate:
    """U_k(m) = (6m+1)(12m+1) * prod_{i=1..k-2} (9*2^i*m + 1), classified.

    ``guaranteed_index_k`` marks the cases (all factors prime, 2^(k-4) | m,
    m not a power of two) where the construction is guaranteed to land in
    L_k but not L_{k-1}; ``observed_index`` is only computed when every
    factor is prime.
    """

    k: int
    m: int
    factors: tuple[int, ...]
    value: int
    all_prime: bool
    divisibility_ok: bool
    is_carmichael: bool
    guaranteed_index_k: bool
    observed_index: LehmerIndex | None


def korselt_test(n) -> bool:
    """Korselt's criterion: n composite, squarefree, p-1 | n-1 for p | n."""
    n = _as_natural(n, minimum=1)
    f = factorize(n)
    if not f.is_composite or not f.is_squarefree:
        return False
    return all((n - 1) % (p - 1) == 0 for p in f.primes())


def lambda_test(n) -> bool:
    """Carmichael's criterion: n composite and lambda(n) | n-1."""
    n = _as_natural(n, minimum=1)
    f = factorize(n)
    return f.is_composite and (n - 1) % carmichael_lambda(f) == 0


def radical_korselt_test(n) -> bool:
    """n composite, rad(phi(n)) | n-1 and p-1 | n-1 for every p | n.

    No explicit squarefree check: rad(phi(n)) | n-1 already forces
    gcd(n, phi(n)) = 1 and with it squarefreeness.
    """
    n = _as_natural(n, minimum=1)
    f = factorize(n)
    if not f.is_composite:
        return False
    if (n - 1) % radical(factorize(euler_phi(f))) != 0:
        return False
    return all((n - 1) % (p - 1) == 0 for p in f.primes())


def carmichael_verdict(n) -> CarmichaelVerdict:
    n = _as_natural(n, minimum=1)
    return CarmichaelVerdict(
        n, korselt_test(n), lambda_test(n), radical_korselt_test(n)
    )


def chernick_factors(k: int, m: int) -> tuple[int, ...]:
    """The factor list (6m+1, 12m+1, 9*2*m+1, ..., 9*2^(k-2)*m+1)."""
    k = _as_natural(k, minimum=3, name="k")
    m = _as_natural(m, minimum=1, name="m")
    coeffs = [6, 12] + [9 << i for i in range(1, k - 1)]
    return tuple(c * m + 1 for c in coeffs)


def chernick(k: int, m: int) -> ChernickCandidate:
    """Build and classify the Chernick candidate U_k(m).

    Raises OverflowError when the product leaves the 127-bit domain.
    """
    factors = chernick_factors(k, m)
    value = 1
    for f in factors:
        value *= f
        if value > MAX_NATURAL:
            raise OverflowError(f"U_{k}({m}) exceeds 2**127 - 1")
    all_prime = all(is_prime(f) for f in factors)
    divisibility_ok = k <= 4 or m % (1 << (k - 4)) == 0
    power_of_two = m & (m - 1) == 0
    return ChernickCandidate(
        k=k,
        m=m,
        factors=factors,
        value=value,
        all_prime=all_prime,
        divisibility_ok=divisibility_ok,
        is_carmichael=korselt_test(value),
        guaranteed_index_k=all_prime and divisibility_ok and not power_of_two,
        observed_index=lehmer_index(value) if all_prime else None,
    )


def pseudoprime_base(n) -> int:
    """The base b = 2^(phi(n)/rad(phi(n))) mod n for composite n in L_inf.

    Fermat's congruence b^(n-1) = 1 (mod n) is guaranteed for this b.  For
    some n the construction degenerates to b = 1 (e.g. n = 15); the value
    is returned verbatim, callers may flag b in {1, n-1} themselves.
    """
    n = _as_natural(n, minimum=1)
    f = factorize(n)
    if not f.is_composite:
        raise ValueError(f"n = {n} must be composite")
    phi = euler_phi(f)
    r = radical(factorize(phi))
    if (n - 1) % r != 0:
        raise ValueError(f"n = {n} is not in L_inf")
    return mod_pow(2, phi // r, n)


def fermat_test(n, b) -> bool:
    """True iff b^(n-1) = 1 (mod n)."""
    n = _as_natural(n, minimum=2)
    b = _as_natural(b, name="b")
    return pow(b, n - 1, n) == 1
