"""Two-region matching oracle for a step potential V = V0 on [r0, R], b = 0.

Inside, u'' = ((l^2 - 1/4)/r^2 - k^2) u with k^2 = 1 - V0, solved by
sqrt(r) H^(1,2)_l(k r). Outside, F+ is the free Jost solution. Matching
value and derivative at R gives F+(r0) and from it alpha, beta, sigma and
delta. Evaluated with 40 digits via mpmath; output is pasted into
`tests/step_oracle.rs`.
"""
from mpmath import mp, mpf, sqrt, pi, exp, besselj, bessely, diff, arg, conj, mpc

mp.dps = 40
R0, R, V0 = mpf("0.5"), mpf(2), mpf("0.3")
K = sqrt(1 - V0)
I = mpc(0, 1)


def h1(l, x):
    return besselj(l, x) + I * bessely(l, x)


def h2(l, x):
    return besselj(l, x) - I * bessely(l, x)


def f0_plus(l, r):
    return exp(I * (l + mpf(1) / 2) * pi / 2) * sqrt(pi * r / 2) * h1(l, r)


def jost_at_r0(l):
    g1 = lambda r: sqrt(r) * h1(l, K * r)
    g2 = lambda r: sqrt(r) * h2(l, K * r)
    f, df = f0_plus(l, R), diff(lambda r: f0_plus(l, r), R)
    a11, a12 = g1(R), g2(R)
    a21, a22 = diff(g1, R), diff(g2, R)
    det = a11 * a22 - a12 * a21
    a = (f * a22 - a12 * df) / det
    b = (a11 * df - a21 * f) / det
    return a * g1(R0) + b * g2(R0)


for l in range(11):
    fp = jost_at_r0(l)
    alpha = I * conj(fp)
    beta = -I * fp
    sigma = exp(I * pi * (l + mpf(1) / 2)) * alpha / beta
    delta = arg(sigma) / 2
    print(f"({l}, {mp.nstr(beta.real, 20)}, {mp.nstr(beta.imag, 20)}, {mp.nstr(delta, 20)}),")
