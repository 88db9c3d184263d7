"""Regenerates the frozen reference values used by the unit tests.

Run with: python3 tests/oracles/freeze_values.py
Values are computed at 40 significant digits with mpmath / sympy, on code
paths unrelated to the C++ implementation.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 40


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: re={mp.nstr(v.real, 20)} im={mp.nstr(v.imag, 20)}")


# Complex Gamma, arbitrary precision.
for z in [mp.mpc(2, 3), mp.mpc(-3.7, 0.4), mp.mpc(0.25, -7.5), mp.mpc(30, 12),
          mp.mpc(-12.5, 0.0), mp.mpc(0.001, 0.002)]:
    show(f"gamma({z})", mp.gamma(z))

# Legendre P_40(0.3) from Laplace's integral, evaluated by mpmath quadrature.
x = mp.mpf("0.3")
lap = mp.quad(lambda p: (x + 1j * mp.sqrt(1 - x * x) * mp.cos(p)) ** 40, [0, mp.pi]) / mp.pi
show("P_40(0.3) laplace", lap)

# Associated Legendre P_6^3(0.4) via Rodrigues, no Condon-Shortley phase.
X = sp.symbols("x")
l, m = 6, 3
rod = (1 - X**2) ** sp.Rational(m, 2) * sp.diff((X**2 - 1) ** l, X, l + m) / (2**l * sp.factorial(l))
print("P_6^3(0.4) rodrigues:", sp.N(rod.subs(X, sp.Rational(2, 5)), 25))
# Negative order from the same Rodrigues expression.
rodn = (1 - X**2) ** sp.Rational(-2, 2) * sp.diff((X**2 - 1) ** 5, X, 5 - 2) / (2**5 * sp.factorial(5))
print("P_5^-2(0.7) rodrigues:", sp.N(rodn.subs(X, sp.Rational(7, 10)), 25))

# Kernel modes G_m(nu; theta) = (1/2pi) \oint e^{i m psi} (cos + i sin cos psi)^nu dpsi
# straight on the real circle: at 40 digits the cancellation that forces the
# deformed contour in double precision is harmless.
def G(m, nu, theta):
    c, s = mp.cos(theta), mp.sin(theta)
    f = lambda p: mp.cos(m * p) * mp.power(c + 1j * s * mp.cos(p), nu)
    return mp.quad(f, [0, mp.pi / 2, mp.pi]) / mp.pi


for (m, nu, th) in [(0, mp.mpc(0.3, 0.2), 0.5), (1, mp.mpc(0.3, 0.2), 0.5),
                    (2, mp.mpc(-2.3, 0.4), 0.7), (1, mp.mpc(-4.5, -1.2), 1.1),
                    (3, mp.mpc(7.25, 3.0), 0.3)]:
    show(f"G_{m}({nu}; {th})", G(m, nu, mp.mpf(th)))

# b_m(t) = G_m(t - 1/2) / G_m(-t - 1/2) at one probe.
for (m, t) in [(1, mp.mpc(0.3, 0.7)), (2, mp.mpc(-1.1, 0.4))]:
    th = mp.mpf("0.5")
    show(f"b_{m}({t})", G(m, t - 0.5, th) / G(m, -t - 0.5, th))
