#!/usr/bin/env python3
"""Reference derivatives for tests/test_derivs.cpp (mpmath, 40 digits).

phi2 derivatives come from the closed hypergeometric form; M and u derivatives
from mpmath's numerical differentiation in x and y at high precision.
"""
import mpmath as mp

from metric_oracle import consts

mp.mp.dps = 40


def poch(x, n):
    return mp.rf(x, n)


def phi2_deriv(k, z, n):
    a, b, c = k["a"], k["b"], k["c"]
    c3 = a + b if c == 1 else a + b - c + 1
    return (-1) ** n * poch(a, n) * poch(b, n) / poch(c3, n) * mp.hyp2f1(a + n, b + n, c3 + n, 1 - mp.mpc(z))


def M_xy(k, x, y):
    z = mp.mpc(x, y)
    a, b, c = k["a"], k["b"], k["c"]
    p1 = mp.hyp2f1(a, b, c, z)
    c3 = a + b if c == 1 else a + b - c + 1
    p2 = mp.hyp2f1(a, b, c3, 1 - z)
    return k["K1"] * abs(p1) ** 2 + k["K2"] * abs(p2) ** 2 + 2 * mp.re(p1 * mp.conj(p2))


def u_xy(k, al, be, x, y):
    z = mp.mpc(x, y)
    return mp.log(k["K3"]) - al * mp.log(abs(z)) - be * mp.log(abs(1 - z)) - mp.log(M_xy(k, x, y))


def wirt(f, x, y, m, n):
    # dbar^m d^n = 2^{-(m+n)} (dx + i dy)^m (dx - i dy)^n
    tot = mp.mpc(0)
    for p in range(m + 1):
        for q in range(n + 1):
            coef = mp.binomial(m, p) * mp.binomial(n, q) * (1j) ** p * (-1j) ** q
            px, py = m + n - p - q, p + q
            tot += coef * mp.diff(f, (x, y), (px, py))
    return tot / 2 ** (m + n)


def show(name, v):
    v = mp.mpc(v)
    print(f"{name} = {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")


if __name__ == "__main__":
    k = consts(0.9, 0.9, 0.9)
    show("phi2' o999 z=0.9", phi2_deriv(k, "0.9", 1))
    show("phi2''' o999 z=0.05+0.02i", phi2_deriv(k, mp.mpc("0.05", "0.02"), 3))
    kc = consts(1, 0.9, 0.9)
    show("phi2' cusp z=0.01", phi2_deriv(kc, "0.01", 1))
    show("phi2'' cusp z=0.05-0.03i", phi2_deriv(kc, mp.mpc("0.05", "-0.03"), 2))
    x, y = mp.mpf("0.3"), mp.mpf("0.2")
    f = lambda X, Y: M_xy(k, X, Y)
    show("M (0,1) o999 0.3+0.2i", wirt(f, x, y, 0, 1))
    show("M (1,2) o999 0.3+0.2i", wirt(f, x, y, 1, 2))
    g = lambda X, Y: u_xy(k, 0.9, 0.9, X, Y)
    show("u (0,1) o999 0.3+0.2i", wirt(g, x, y, 0, 1))
    show("u (0,3) o999 0.3+0.2i", wirt(g, x, y, 0, 3))
    show("u (1,2) o999 0.3+0.2i", wirt(g, x, y, 1, 2))
    gc = lambda X, Y: u_xy(kc, 1, 0.9, X, Y)
    show("u (0,2) cusp 0.3+0.2i", wirt(gc, x, y, 0, 2))
