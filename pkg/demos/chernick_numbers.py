#!/usr/bin/env python3
"""Scan Chernick products U_k(m) = (6m+1)(12m+1) * prod (9*2^i*m + 1).

When every factor is prime and 2^(k-4) | m, the product is a Carmichael
number; when additionally m is not a power of two, its Lehmer index is
exactly k, which makes the construction a supply of Carmichael numbers
in L_k but not L_{k-1}.
"""

from klehmer import chernick

if __name__ == "__main__":
    for k in (3, 4, 5):
        print(f"U_{k}(m) with all factors prime, m <= 200:")
        for m in range(1, 201):
            cand = chernick(k, m)
            if not cand.all_prime:
                continue
            flags = []
            if cand.is_carmichael:
                flags.append("carmichael")
            if cand.guaranteed_index_k:
                flags.append(f"index exactly {k}")
            elif m & (m - 1) == 0:
                flags.append("m is a power of two, index may drop")
            print(f"  m={m:3}: {cand.value} = "
                  + " * ".join(str(f) for f in cand.factors)
                  + f"  ->  {cand.observed_index}  [{', '.join(flags)}]")
        print()

    # the first Carmichael number of the family with five prime factors
    # needs m = 380 (divisible by 2^(5-4) and out of the scan above)
    big = chernick(5, 380)
    print(f"U_5(380) = {big.value}")
    print(f"  all prime: {big.all_prime}, carmichael: {big.is_carmichael}, "
          f"index: {big.observed_index}")
