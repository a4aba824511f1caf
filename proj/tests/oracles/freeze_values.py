"""Independent oracles used to freeze expected values in the C++ tests.

Run with: python3 tests/oracles/freeze_values.py
Each value is computed by brute force, enumeration or high-precision
arithmetic and never through the library code paths it checks.
"""
import math

import mpmath as mp

mp.mp.dps = 40


def grid_sup(f, lo, hi, step):
    best = -math.inf
    k = 0
    y = lo
    while y <= hi:
        best = max(best, f(y))
        k += 1
        y = lo + k * step
    return best


def bisect(f, target, lo, hi, iters=200):
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


print("legendre quartic u=1 :", grid_sup(lambda y: y - y**4 / 4, 0.0, 10.0, 1e-6))
print("legendre truncated   :", grid_sup(lambda y: 2 * y - y * y / 2, 0.0, 1.0, 1e-6))
print("gls psi_2 y=e        :", math.exp(-grid_sup(lambda p: p - 0.5 * p * math.log(p), 1.0, 20.0, 1e-6)))
print("Gamma(b+1)^(1/b) b=3 :", mp.gamma(4) ** (mp.mpf(1) / 3))
print("q2 sqrt(2 ln 2)      :", mp.sqrt(2 * mp.log(2)))
print("q2 bisection         :", bisect(lambda q: -2 * math.exp(-q * q / 2), -1.0, 0.0, 5.0))

n = int(round(math.exp(16)))
q = mp.sqrt(2 * mp.log(n))
w = 1 / q
for u in (1, 2, 3, 4):
    t = q + u * w
    pbar = mp.exp(-t * t / 2)
    exact = 1 - (1 - pbar) ** n
    lower = mp.exp(-mp.mpf(1) / 4) * mp.exp(-u) - mp.exp(-2 * u)
    print("sandwich u=%d        :" % u, mp.nstr(lower, 17), mp.nstr(exact, 17), mp.nstr(mp.exp(-u), 17))

print("U_n a=2 L=ln(eU) n=100:", bisect(lambda U: U * U / (1 + math.log(U)), 100.0, 1.0, 1000.0))
print("norming_d            :", math.e * 3**1.1)
for nn in (10, 100, 1000):
    print("majorant psi_2 n=%d  :" % nn,
          math.exp(min(math.log(nn) * y - 0.5 * math.log(y) for y in [k * 1e-6 for k in range(1, 1000000)])),
          math.sqrt(2 * math.e * math.log(nn)))
for z in (1.0, 1.5, 2.0, 3.0):
    s = mp.zeta(2 * z) - 1 - mp.zeta(2 * z, 10**7 + 1)
    print("zeta partial z=%.1f   :" % z, mp.nstr(s, 17), 2 ** (1 - 2 * z))
print("z_o(0.05)            :", mp.nstr(1 - mp.log(0.05, 2) / 2, 17))
print("ln cosh 1            :", math.log(math.cosh(1)))
print("dkw N=1e4 a=0.01     :", math.sqrt(math.log(200) / 20000))
print("gls exp(-e/2)        :", math.exp(-math.e / 2))
print("mc radius            :", 6 / math.e)
print("P_bar                :", math.exp(-4) / (1 - 1 / math.e))
print("rho_lower g=.5 u=1,4 :", math.exp(-1.25) - math.exp(-2), math.exp(-4.25) - math.exp(-8))
