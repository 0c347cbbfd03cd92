#!/usr/bin/env python3
"""Reference values for the metric-module unit tests (mpmath, 50 digits).

Prints the constants block and a few densities; the numbers are pasted into
tests/test_metric.cpp.
"""
import mpmath as mp

mp.mp.dps = 50


def consts(al, be, ga):
    al, be, ga = mp.mpf(al), mp.mpf(be), mp.mpf(ga)
    a, b, c = (al + be - ga) / 2, (al + be + ga - 2) / 2, al
    G = mp.gamma
    out = dict(a=a, b=b, c=c, B=mp.beta(a, b), R=2 * mp.digamma(1) - mp.digamma(a) - mp.digamma(b))
    if al == 1:
        S = mp.pi * mp.sin(mp.pi * (a + b)) / (mp.sin(mp.pi * a) * mp.sin(mp.pi * b))
        out.update(K1=-S / out["B"], K2=mp.mpf(0), K3=1 / out["B"], S=S)
        return out
    out["K1"] = -G(c - a) * G(c - b) / (G(c) * G(c - a - b))
    out["K2"] = -G(a + 1 - c) * G(b + 1 - c) / (G(1 - c) * G(a + b + 1 - c))
    out["K3"] = mp.sqrt(mp.sin(mp.pi * a) * mp.sin(mp.pi * b) / (mp.sin(mp.pi * (c - a)) * mp.sin(mp.pi * (c - b)))) \
        * G(a + b + 1 - c) * G(c) / (G(a) * G(b))
    out["delta"] = G(c) / G(2 - c) * mp.sqrt(G(1 - a) * G(1 - b) * G(a + 1 - c) * G(b + 1 - c)
                                             / (G(a) * G(b) * G(c - a) * G(c - b)))
    return out


def phis(k, z):
    a, b, c = k["a"], k["b"], k["c"]
    z = mp.mpc(z)
    p1 = mp.hyp2f1(a, b, c, z)
    c3 = a + b if c == 1 else a + b - c + 1
    p2 = mp.hyp2f1(a, b, c3, 1 - z)
    p3 = None if c == 1 else mp.hyp2f1(a - c + 1, b - c + 1, 2 - c, z)
    return p1, p2, p3


def M(k, z):
    p1, p2, _ = phis(k, z)
    return k["K1"] * abs(p1) ** 2 + k["K2"] * abs(p2) ** 2 + 2 * mp.re(p1 * mp.conj(p2))


def lam(k, al, be, z):
    z = mp.mpc(z)
    return k["K3"] / (abs(z) ** al * abs(1 - z) ** be * M(k, z))


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


if __name__ == "__main__":
    for o in [(0.9, 0.9, 0.9), (0.7, 0.9, 0.8), (0.4, 0.9, 0.9)]:
        k = consts(*o)
        print("orders", o)
        for key in ["a", "b", "c", "K1", "K2", "K3", "delta", "B", "R"]:
            show("  " + key, k[key])
        for z in ["0.5", "0.3+0.4j", "-0.5", "-0.7+0.1j", "1.5+0.7j"]:
            zz = mp.mpc(complex(z))
            show(f"  lambda({z})", lam(k, mp.mpf(o[0]), mp.mpf(o[1]), zz))
        p1, p2, p3 = phis(k, mp.mpf(0.5))
        show("  phi1(0.5)", p1)
        show("  phi2(0.5)", p2)
        show("  phi3(0.3)", phis(k, mp.mpf(0.3))[2])
        show("  M(0.2+0.3j)", M(k, mp.mpc(0.2, 0.3)))
    for o in [(1, 0.9, 0.9), (1, 0.8, 0.95)]:
        k = consts(*o)
        print("orders", o)
        for key in ["a", "b", "c", "K1", "K3", "B", "R", "S"]:
            show("  " + key, k[key])
        for z in ["0.1", "0.01", "0.3+0.4j", "-0.7+0.1j"]:
            zz = mp.mpc(complex(z))
            show(f"  lambda({z})", lam(k, 1, mp.mpf(o[1]), zz))
        show("  phi2(0.01)", phis(k, mp.mpf(0.01))[1])
        show("  M(0.01)", M(k, mp.mpf(0.01)))
