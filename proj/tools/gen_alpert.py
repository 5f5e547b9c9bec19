#!/usr/bin/env python3
"""Generate hybrid Gauss-trapezoidal correction nodes for log-singular periodic integrands.

Usage: gen_alpert.py J A   (J nodes per side, A excluded trapezoid points)

Solves the 2J moment conditions
    sum_k w_k x_k^p          = -zeta(-p, A)
    sum_k w_k x_k^p log x_k  =  zeta'(-p, A)      p = 0..J-1
by Newton continuation from the moments of a trivial starting rule.
Known solutions: (J, A) = (1, 1), (5, 3), (9, 6), (15, 10).
"""
import sys

import mpmath as mp

mp.mp.dps = 50


def target(j, a):
    cof = [mp.taylor(lambda x: mp.legendre(p, 2 * x / a - 1), 0, p) for p in range(j)]
    A = [-mp.zeta(-q, a) for q in range(j)]
    B = [mp.zeta(-q, a, 1) for q in range(j)]
    RA = [mp.fsum(cof[p][q] * A[q] for q in range(p + 1)) for p in range(j)]
    RB = [mp.fsum(cof[p][q] * B[q] for q in range(p + 1)) for p in range(j)]
    return RA + RB


def legendre_and_derivative(p, y):
    if p == 0:
        return mp.mpf(1), mp.mpf(0)
    p0, p1 = mp.mpf(1), y
    for k in range(2, p + 1):
        p0, p1 = p1, ((2 * k - 1) * y * p1 - (k - 1) * p0) / k
    if abs(y * y - 1) > mp.mpf(10) ** -30:
        d = p * (y * p1 - p0) / (y * y - 1)
    else:
        d = mp.mpf(p * (p + 1)) / 2 * (1 if y > 0 else (-1) ** (p + 1))
    return p1, d


def moments(v, j, a):
    x = v[:j]
    w = v[j:]
    f = [mp.mpf(0)] * (2 * j)
    J = mp.matrix(2 * j, 2 * j)
    for k in range(j):
        y = 2 * x[k] / a - 1
        lx = mp.log(x[k])
        for p in range(j):
            P, dP = legendre_and_derivative(p, y)
            dP *= 2 / mp.mpf(a)
            f[p] += w[k] * P
            f[j + p] += w[k] * P * lx
            J[p, k] = w[k] * dP
            J[p, j + k] = P
            J[j + p, k] = w[k] * (dP * lx + P / x[k])
            J[j + p, j + k] = P * lx
    return f, J


def solve(j, a, x0):
    v = list(x0) + [mp.mpf(1)] * j
    f0, _ = moments(v, j, a)
    T = target(j, a)
    t = mp.mpf(0)
    dt = mp.mpf(1) / 50
    while t < 1:
        tn = min(t + dt, mp.mpf(1))
        R = [(1 - tn) * f0[i] + tn * T[i] for i in range(2 * j)]
        vv = list(v)
        ok = False
        for _ in range(30):
            f, J = moments(vv, j, a)
            r = mp.matrix([f[i] - R[i] for i in range(2 * j)])
            d = mp.lu_solve(J, r)
            vv = [vv[i] - d[i] for i in range(2 * j)]
            if min(vv[:j]) <= 0 or max(vv[:j]) >= a:
                break
            if mp.norm(d) < mp.mpf(10) ** -24:
                ok = True
                break
        if ok:
            v = vv
            t = tn
            dt = min(dt * 1.5, mp.mpf(1) / 5)
        else:
            dt /= 2
            if dt < mp.mpf(10) ** -8:
                raise SystemExit("continuation stalled at t=%s" % t)
    return v


if __name__ == "__main__":
    j = int(sys.argv[1])
    a = int(sys.argv[2])
    x0 = [mp.mpf(a) * ((k + mp.mpf(1) / 2) / j) ** 2 for k in range(j)]
    v = solve(j, a, x0)
    for k in range(j):
        print(mp.nstr(v[k], 22), mp.nstr(v[j + k], 22))
