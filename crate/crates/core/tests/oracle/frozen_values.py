"""Independent high-precision transcription used to freeze regression constants.

Run with: python3 frozen_values.py
Requires mpmath. Nothing here shares code with the Rust implementation.
"""
import mpmath as mp

mp.mp.dps = 40

c = mp.mpf("2.99792458e10")        # cm/s
hbar = mp.mpf("1.054571817e-27")   # erg s
kB = mp.mpf("1.380649e-16")        # erg/K
amu = mp.mpf("1.66053906660e-24")  # g

gamma = 3 * mp.pi * mp.mpf(10) ** 6
T1 = 1 / (2 * gamma)
T2 = 2 * T1
lam = mp.mpf("780.24e-7")
w1g = 2 * mp.pi * c / lam
N = mp.mpf("2e11")
d2 = 3 * hbar * c**3 / (4 * w1g**3 * T1)
C = N * d2 / hbar
D = mp.sqrt(kB * 300 * w1g**2 / (87 * amu * c**2))
G = mp.mpf("0.4") * gamma
I = mp.mpc(0, 1)


def chi(Dl, dl, G):
    pre = -C * (1 + Dl**2 * T2**2) / ((1 + Dl**2 * T2**2 + 4 * G**2 * T1 * T2) * (Dl + dl + I / T2))
    num = 2 * G**2 * (1 / (Dl - I / T2)) * (dl + 2 * I / T2) * (dl - Dl + I / T2)
    den = (dl + I / T1) * (dl + Dl + I / T2) * (dl - Dl + I / T2) - 4 * G**2 * (dl + 2 * I / T2)
    return pre * (1 - num / den)


def weight(x):
    return mp.exp(-x * x / (2 * D * D)) / mp.sqrt(2 * mp.pi * D * D)


def average(f, Delta, delta):
    W = 6 * D
    loci = [-Delta, Delta + delta, (delta - Delta) / 3, delta / 2]
    pts = set([-W, W])
    for x0 in loci:
        for m in [0, 1, 10, 100, 1000, 10000]:
            for s in (-1, 1):
                x = x0 + s * m / T2
                if -W < x < W:
                    pts.add(x)
    pts = sorted(pts)
    return mp.quad(lambda x: f(x) * weight(x), pts)


def S(delta, G, Delta=0):
    return average(lambda x: chi(Delta + x, delta - 2 * x, G), Delta, delta)


def dS(delta, G, Delta=0):
    return average(lambda x: mp.diff(lambda d: chi(Delta + x, d - 2 * x, G), delta), Delta, delta)


print("C         =", mp.nstr(C, 20))
print("D         =", mp.nstr(D, 20))
print("omega_1g  =", mp.nstr(w1g, 20))
print("chi(0,0)  =", mp.nstr(chi(0, 0, G), 20))
print("dchi(0,0) =", mp.nstr(mp.diff(lambda d: chi(0, d, G), 0), 20))
mp.mp.dps = 20
print("S(0)      =", mp.nstr(S(0, G), 15))
print("dS(0)     =", mp.nstr(dS(0, G), 15))
print("S(3g,D=g) =", mp.nstr(S(3 * gamma, G, gamma), 15))
