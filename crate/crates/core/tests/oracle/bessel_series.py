"""Extended-precision reference values for the Bessel tests.

Sums the defining power series directly with 50 significant digits and
K = 1000 terms; no library Bessel routine is used. Output is pasted into
`tests/specfun_oracle.rs`.
"""
from mpmath import mp, mpf, mpc, gamma, pi, log, sin, cos, exp, euler, harmonic, factorial

mp.dps = 50
K = 1000


def bessel_j(nu, r):
    nu = mpc(nu)
    half = mpf(r) / 2
    total = mpc(0)
    for k in range(K):
        arg = k + nu + 1
        if arg.imag == 0 and arg.real <= 0 and arg.real == int(arg.real):
            continue  # 1/Gamma vanishes at the poles
        total += (-1) ** k * half ** (nu + 2 * k) / (factorial(k) * gamma(arg))
    return total


def bessel_y_int(n, r):
    half = mpf(r) / 2
    s1 = sum(factorial(n - k - 1) / factorial(k) * (half**2) ** k for k in range(n))
    psi = lambda m: -euler + harmonic(m - 1)
    s2 = sum(
        (psi(k + 1) + psi(n + k + 1)) * (-(half**2)) ** k / (factorial(k) * factorial(n + k))
        for k in range(K)
    )
    return -(half ** (-n)) / pi * s1 + 2 / pi * log(half) * bessel_j(n, r) - half**n / pi * s2


def hankel1(nu, r):
    nu = mpc(nu)
    return (bessel_j(-nu, r) - exp(-1j * pi * nu) * bessel_j(nu, r)) / (1j * sin(nu * pi))


def show(name, z):
    z = mpc(z)
    print(f"{name}: ({mp.nstr(z.real, 20)}, {mp.nstr(z.imag, 20)})")


show("J_{3+2i}(2)", bessel_j(mpc(3, 2), 2))
show("J_0(1)", bessel_j(0, 1))
show("Y_0(1)", bessel_y_int(0, 1))
show("Y_2(1.3)", bessel_y_int(2, mpf("1.3")))
show("J_{-2.5+i}(0.7)", bessel_j(mpc(-2.5, 1), mpf("0.7")))
show("H1_{5.3}(0.5)", hankel1(mpf("5.3"), mpf("0.5")))
show("H1_{0.7+0.3i}(1.5)", hankel1(mpc("0.7", "0.3"), mpf("1.5")))
show("H1_{20i}(1)", hankel1(mpc(0, 20), 1))
show("H1_{30.3}(2)", hankel1(mpf("30.3"), 2))
show("Gamma(4+2i)", gamma(mpc(4, 2)))
show("Gamma(-3.3+0.2i)", gamma(mpc("-3.3", "0.2")))
