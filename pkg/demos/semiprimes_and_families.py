#!/usr/bin/env python3
"""The semiprime membership criterion and the 3*2^r + 1 product family.

Writing p = 2^a*d*alpha + 1 and q = 2^b*d*beta + 1 (d, alpha, beta odd,
gcd(alpha, beta) = 1, a <= b), the product pq lies in L_k exactly when
a + b <= k*a and alpha*beta | d^(k-2).  Immediate consequence: no product
of two distinct odd primes lies in L_2.
"""

from klehmer import (
    fermat_family_pair,
    in_Lk,
    is_prime,
    lehmer_index,
    semiprime_decompose,
    semiprime_in_Lk,
)

if __name__ == "__main__":
    print("decompositions of a few semiprimes:")
    for p, q in ((3, 5), (7, 13), (5, 13), (13, 97)):
        d = semiprime_decompose(p, q)
        idx = lehmer_index(p * q)
        print(f"  {p}*{q} = {p*q}: a={d.a} b={d.b} d={d.d} "
              f"alpha={d.alpha} beta={d.beta}  ->  {idx}")

    print("\ncriterion vs direct membership for 15 = 3*5:")
    dec = semiprime_decompose(3, 5)
    for k in range(2, 6):
        crit = semiprime_in_Lk(dec, k)
        direct = in_Lk(15, k)
        assert crit == direct
        print(f"  k={k}: criterion {crit}, direct {direct}")

    print("\nno semiprime in L_2 (distinct odd primes below 100):")
    primes = [p for p in range(3, 100) if is_prime(p)]
    count = sum(
        1
        for i, p in enumerate(primes)
        for q in primes[i + 1 :]
        if not in_Lk(p * q, 2)
    )
    total = len(primes) * (len(primes) - 1) // 2
    print(f"  {count}/{total} pairs confirmed outside L_2")

    print("\nproducts of primes 3*2^r + 1 land at a predictable index:")
    exponents = [r for r in range(1, 19) if is_prime(3 * 2**r + 1)]
    print(f"  prime family exponents below 10^6: {exponents}")
    for N, M in ((1, 2), (2, 5), (5, 12), (1, 18)):
        res = fermat_family_pair(N, M)
        print(f"  ({N:2},{M:2}): {res.pN} * {res.pM} = {res.n}  ->  L_{res.K}"
              f"  (K = 1 + ceil(M/N))")
