#!/usr/bin/env python3
"""Corner limit values by direct evaluation at |z| = 1e-200 (mpmath, 300 digits so that 1 - z keeps z).

The slowest correction, |z|^{1-2α} for Mz1 at α = 0.4, is 1e-40 there.
Values are pasted into tests/test_limits.cpp.
"""
import mpmath as mp

from metric_oracle import consts, lam

mp.mp.dps = 300


def phi_derivs(k, z, n):
    a, b, c = k["a"], k["b"], k["c"]
    c3 = a + b - c + 1
    rf = mp.rf
    d1 = rf(a, n) * rf(b, n) / rf(c, n) * mp.hyp2f1(a + n, b + n, c + n, z)
    d2 = (-1) ** n * rf(a, n) * rf(b, n) / rf(c3, n) * mp.hyp2f1(a + n, b + n, c3 + n, 1 - z)
    return d1, d2


def m_mixed(k, z, m, n):
    p1m, p2m = phi_derivs(k, z, m)
    p1n, p2n = phi_derivs(k, z, n)
    cj = mp.conj
    return k["K1"] * cj(p1m) * p1n + cj(p2m) * p1n + cj(p1m) * p2n + k["K2"] * cj(p2m) * p2n


def show(name, v):
    v = mp.mpc(v)
    print(f"{name} = {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 5)}")


if __name__ == "__main__":
    r = mp.mpf(10) ** -200
    z = r * mp.expjpi(mp.mpf(1) / 4)
    for o in [(0.7, 0.9, 0.8), (0.4, 0.9, 0.9)]:
        al = mp.mpf(o[0])
        k = consts(*o)
        s = r ** (2 * al - 2)
        print("orders", o)
        show("  L0", r ** al * lam(k, al, mp.mpf(o[1]), z))
        if o[0] < 0.5:
            show("  Mz1", m_mixed(k, z, 0, 1))
        else:
            show("  Mz3(1)", z * s * m_mixed(k, z, 0, 1))
        show("  Mz3(2)", z ** 2 * s * m_mixed(k, z, 0, 2))
        show("  Mz4(1,1)", mp.conj(z) * z * s * m_mixed(k, z, 1, 1))
        show("  Mz4(2,1)", mp.conj(z) ** 2 * z * s * m_mixed(k, z, 2, 1))
