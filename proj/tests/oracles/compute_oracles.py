"""Independent high-precision evaluation of the expected values frozen into the unit tests.

Run with: python3 tests/oracles/compute_oracles.py
"""
import itertools

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def vand(L, nodes):
    return mp.matrix([[mp.mpc(z) ** i for z in nodes] for i in range(L)])


def svals(M):
    return sorted(mp.svd_c(M, compute_uv=False), reverse=True)


def esprit_bound(nodes, alphas, N, L, e):
    K = len(nodes)
    amin = min(abs(mp.mpc(a)) for a in alphas)
    sL = svals(vand(L, nodes))
    sLm1 = svals(vand(L - 1, nodes))
    sR = svals(vand(N - L + 1, nodes))
    gamma = mp.sqrt(min(L, N - L + 1)) * e / (amin * sL[-1] * sR[-1])
    beta = sL[0] / sLm1[-1]
    kap = sL[0] / sL[-1]
    gate = 1 / (1 + mp.sqrt(2) * beta)
    bound = (2 * K - 1) * mp.sqrt(2) * beta * gamma / (1 - (1 + mp.sqrt(2) * beta) * gamma) * (1 + kap) * kap
    return gamma, beta, gate, bound


def pencil_bound(nodes, alphas, N, L, e):
    K = len(nodes)
    amin = min(abs(mp.mpc(a)) for a in alphas)
    amax = max(abs(mp.mpc(a)) for a in alphas)
    Amin = min(abs(mp.mpc(z)) for z in nodes)
    sL = svals(vand(L, nodes))
    sR = svals(vand(N - L, nodes))
    gamma = mp.sqrt(min(L, N - L)) * e / (amin * sL[-1] * sR[-1])
    k1 = sL[0] / sL[-1]
    k2 = sR[0] / sR[-1]
    d = (2 * K - 1) * gamma / mp.sqrt(1 + Amin ** 2) * (
        2 * mp.sqrt(2) / (1 - gamma) * (amax / amin) * k1 * k2 + (1 + mp.sqrt(2) * gamma / (1 - gamma)))
    return gamma, d


def eta(d, z):
    d = mp.mpf(d)
    a = abs(mp.mpc(z))
    q = 1 - d ** 2 * (1 + a ** 2)
    return d * mp.sqrt(1 - d ** 2) * (1 + a ** 2) / q + (1 - 1 / q) * a


print("synth K=2 (0.9,-0.9) N=4:", [complex(0.9 ** n + (-0.9) ** n) for n in range(4)])
x = np.array([2, 1, 0.5, 0.25])
print("snr x=(2,1,.5,.25), |e|=0.5:", (x @ x) / 0.25)
fr = [0.1, 0.4, 0.9]
print("delta:", min(abs(a - b + n) for a, b in itertools.permutations(fr, 2) for n in (-1, 0, 1)))
A = np.array([[1, 2, 3], [2, 3, 4]], dtype=float)
print("hankel svals:", [mp.nstr(s, 20) for s in svals(mp.matrix(A.tolist()))])
print("esprit K=1 z=1 N=4 L=2 e=0.01:", [mp.nstr(v, 20) for v in esprit_bound([1], [1], 4, 2, mp.mpf("0.01"))])
print("pencil K=1 z=0.9 N=8 L=4 e=0.01:", [mp.nstr(v, 20) for v in pencil_bound([mp.mpf("0.9")], [1], 8, 4, mp.mpf("0.01"))])
print("eta d=0.1 z=1:", mp.nstr(eta("0.1", 1), 20))
c = 84 / mp.pi / mp.mpf("0.5")
print("thm2 N=101 delta=0.5: lower", mp.nstr(100 - c, 20), "upper", mp.nstr(100 + c, 20),
      "kappa", mp.nstr(mp.sqrt((100 + c) / (100 - c)), 20), "gate", mp.nstr(84 / (mp.pi * 100), 20))
truth = [0.5, 0.9]
est = [0.91, 0.52]
print("match:", min(max(abs(truth[k] - est[p[k]]) for k in range(2)) for p in itertools.permutations(range(2))))

z2 = [mp.mpf("0.95") * mp.expjpi(2 * mp.mpf("0.1")), mp.expjpi(2 * mp.mpf("0.35"))]
a2 = [1, mp.mpc(0, "0.5")]
print("esprit K=2 N=16 L=8 e=1e-3:", [mp.nstr(v, 20) for v in esprit_bound(z2, a2, 16, 8, mp.mpf("0.001"))])
g2, d2 = pencil_bound(z2, a2, 16, 8, mp.mpf("0.001"))
print("pencil K=2 N=16 L=8 e=1e-3:", mp.nstr(g2, 20), mp.nstr(d2, 20),
      "eta:", [mp.nstr(eta(d2, z), 20) for z in z2])
print("vandermonde K=2 N=16 svals:", [mp.nstr(s, 20) for s in svals(vand(16, z2))])
zc, wc = mp.mpf("0.5"), mp.mpc(0, "0.5")
print("chordal(0.5, 0.5i):", mp.nstr(abs(zc - wc) / mp.sqrt((1 + abs(zc) ** 2) * (1 + abs(wc) ** 2)), 20))
