#!/usr/bin/env python3
"""Oracle for the classifier's emitted solution families.

Every closed form the classifier emits is substituted into its equation with
free symbols and the residual is reduced to zero symbolically (Weierstrass
terms are handled by chain-rule differentiation plus reduction modulo
Pp^2 = 4 P^3 - g2 P - g3).  Numeric sections freeze reference values for the
C++ tests using the same Laurent-series evaluator the bb oracle validated.
"""

import mpmath as mp
import sympy as sp

z = sp.Symbol("z")
PASS = []


def ok(name, cond):
    if not cond:
        raise SystemExit(f"FAIL: {name}")
    PASS.append(name)
    print(f"ok  {name}")


# ---------------------------------------------------------------------------
# Weierstrass helper: expressions in (z, P, Pp) where P = wp(u(z)), g3 or g2
# fixed to zero as each family requires.

P, Pp = sp.symbols("P Pp")


def wp_diff(expr, u, g2, g3):
    du = sp.diff(u, z)
    return (sp.diff(expr, z) + sp.diff(expr, P) * Pp * du
            + sp.diff(expr, Pp) * (6 * P**2 - g2 / 2) * du)


def wp_reduce(expr, g2, g3):
    num, den = sp.fraction(sp.together(sp.expand(expr)))
    num = sp.expand(num)
    rel = Pp**2 - (4 * P**3 - g2 * P - g3)
    num = sp.rem(sp.Poly(num, Pp), sp.Poly(rel, Pp)).as_expr()
    return sp.simplify(num)


# ---------------------------------------------------------------------------
# Type1: w w'' - w'^2 + P(w) = 0.

def type1_residual(w, Pw):
    return sp.simplify(w * sp.diff(w, z, 2) - sp.diff(w, z) ** 2 + Pw)


a0, a1, a2 = sp.symbols("a0 a1 a2")
c1, c2, A, B, C, k = sp.symbols("c1 c2 A B C k")

w = c1 * sp.exp(-a2 / 2 * z**2 + c2 * z)
ok("type1 k=2 exp family", type1_residual(w, a2 * w**2) == 0)

w = a1 / 2 * z**2 + c2 * z + (c2**2 - a0) / (2 * a1)
ok("type1 k=1 quadratic family", type1_residual(w, a1 * w + a0) == 0)

Bv = -a1 / k**2
w = A * sp.exp(k * z) + Bv + (Bv**2 - a0 / k**2) / (4 * A) * sp.exp(-k * z)
ok("type1 k=1 two-exponential family", type1_residual(w, a1 * w + a0) == 0)

w = sp.sqrt(a0) * z + c1
ok("type1 k=0 linear family", type1_residual(w, a0) == 0)

w = A * sp.exp(k * z) - a0 / (4 * k**2 * A) * sp.exp(-k * z)
ok("type1 k=0 two-exponential family", type1_residual(w, a0) == 0)

w = c1 * sp.exp(c2 * z)
ok("type1 P=0 exp family", type1_residual(w, sp.Integer(0)) == 0)

# ---------------------------------------------------------------------------
# Type2, c = 0: w'' + P(w) = 0 entire branches.

def type2c0_residual(w, Pw):
    return sp.simplify(sp.diff(w, z, 2) + Pw)


w = c1 * sp.sin(sp.sqrt(a1) * z) + c2 * sp.cos(sp.sqrt(a1) * z) - a0 / a1
ok("type2 c=0 k=1 trig family", type2c0_residual(w, a1 * w + a0) == 0)

w = c1 + c2 * z - a0 / 2 * z**2
ok("type2 c=0 k=0 quadratic family", type2c0_residual(w, a0) == 0)

# ---------------------------------------------------------------------------
# Type3 linear cases: w'' + c w' + a1 w + a0 = 0 and the degree-0 forms.

c = sp.Symbol("c")
r1, r2 = sp.symbols("r1 r2")


def type3_residual(w, Pw):
    return sp.simplify(sp.diff(w, z, 2) + c * sp.diff(w, z) + Pw)


w = c1 * sp.exp(r1 * z) + c2 * sp.exp(r2 * z) - a0 / a1
res = type3_residual(w, a1 * w + a0)
res = res.subs(a1, r1 * r2).subs(c, -(r1 + r2))
ok("type3 k=1 distinct characteristic roots", sp.simplify(res) == 0)

w = (c1 + c2 * z) * sp.exp(r1 * z) - a0 / a1
res = type3_residual(w, a1 * w + a0)
res = res.subs(a1, r1**2).subs(c, -2 * r1)
ok("type3 k=1 double characteristic root", sp.simplify(res) == 0)

w = -a0 / c * z + c1 + c2 * sp.exp(-c * z)
ok("type3 k=0 damped family", type3_residual(w, a0) == 0)

w = c1 + c2 * z - a0 / 2 * z**2
ok("type3 k=0 undamped family", sp.simplify(sp.diff(w, z, 2) + a0) == 0)

# ---------------------------------------------------------------------------
# w2: degree-2 damped equation w'' + c w' - (6/lam)(w-e1)(w-e2) = 0 under
# c^2 lam = 25 (ei - ej), solution (ei-ej) e^{-2cz/5} wp(e^{-cz/5} - zeta0; 0, g3) + ej.

ei, ej, g3, zeta0 = sp.symbols("ei ej g3 zeta0")
lam = 25 * (ei - ej) / c**2
u = sp.exp(-c * z / 5) - zeta0
w2 = (ei - ej) * sp.exp(-2 * c * z / 5) * P + ej
dw2 = wp_diff(w2, u, 0, g3)
ddw2 = wp_diff(dw2, u, 0, g3)
res = ddw2 + c * dw2 - 6 / lam * (w2 - ei) * (w2 - ej)
ok("w2 family solves the degree-2 equation", wp_reduce(res, 0, g3) == 0)

w2r = (ei - ej) * sp.exp(-2 * c * z / 5) * u**-2 + ej
res = sp.diff(w2r, z, 2) + c * sp.diff(w2r, z) - 6 / lam * (w2r - ei) * (w2r - ej)
ok("w2 degenerate g3=0 rational form", sp.simplify(res) == 0)

# ---------------------------------------------------------------------------
# w6: degree-3 damped equation w'' + c w' - (2/lam^2) prod(w - q) = 0 with
# qk = (qi+qj)/2 and c = 3(qi-qk)/lam; solution via the wp'/wp ratio.

qi, qk, g2, lam3 = sp.symbols("qi qk g2 lam3")
qj = 2 * qk - qi
cc = 3 * (qi - qk) / lam3
E = sp.exp(-(qi - qk) / lam3 * z)
u = E - zeta0
w6 = qk - (qi - qk) / 2 * E * Pp / P
dw6 = wp_diff(w6, u, g2, 0)
ddw6 = wp_diff(dw6, u, g2, 0)
res = ddw6 + cc * dw6 - 2 / lam3**2 * (w6 - qi) * (w6 - qj) * (w6 - qk)
ok("w6 family solves the degree-3 equation", wp_reduce(res, g2, 0) == 0)

w6r = qk + (qi - qk) * E / (E - zeta0)
res = (sp.diff(w6r, z, 2) + cc * sp.diff(w6r, z)
       - 2 / lam3**2 * (w6r - qi) * (w6r - qj) * (w6r - qk))
ok("w6 degenerate g2=0 rational form", sp.simplify(res) == 0)

# ---------------------------------------------------------------------------
# w7 / w8: two-exponential ratio and its simple-pole degeneration, for
# c = (2 qi - qj - qk)/lt with lt = +/- lam.

qja, qka, z0, lt = sp.symbols("qja qka z0 lt")
qia = sp.Symbol("qia")
cc = (2 * qia - qja - qka) / lt
Ej = sp.exp(qja * (z - z0) / lt)
Ek = sp.exp(qka * (z - z0) / lt)
w7 = (qja * Ej - qka * Ek) / (Ej - Ek)
res = (sp.diff(w7, z, 2) + cc * sp.diff(w7, z)
       - 2 / lt**2 * (w7 - qia) * (w7 - qja) * (w7 - qka))
ok("w7 family solves the degree-3 equation", sp.simplify(res) == 0)

cc8 = (2 * qia - 2 * qja) / lt
w8 = lt / (z - z0) + qja
res = (sp.diff(w8, z, 2) + cc8 * sp.diff(w8, z)
       - 2 / lt**2 * (w8 - qia) * (w8 - qja) ** 2)
ok("w8 family solves the degenerate degree-3 equation", sp.simplify(res) == 0)

# ---------------------------------------------------------------------------
# Numeric freeze: Laurent-series wp (self-validated), reference points for
# the C++ tests, and central-difference residual spot checks.

mp.mp.dps = 40


def wp_coeffs(g2v, g3v, terms):
    cs = [mp.mpc(0)] * (terms + 1)
    cs[2] = g2v / 20
    cs[3] = g3v / 28
    for kk in range(4, terms + 1):
        s = sum(cs[m] * cs[kk - m] for m in range(2, kk - 1))
        cs[kk] = 3 * s / ((2 * kk + 1) * (kk - 3))
    return cs


def wp_series(u, g2v, g3v, terms=30):
    cs = wp_coeffs(g2v, g3v, terms)
    return 1 / u**2 + sum(cs[kk] * u ** (2 * kk - 2) for kk in range(2, terms + 1))


def wp_prime_series(u, g2v, g3v, terms=30):
    cs = wp_coeffs(g2v, g3v, terms)
    return -2 / u**3 + sum((2 * kk - 2) * cs[kk] * u ** (2 * kk - 3)
                           for kk in range(2, terms + 1))


ws = wp_series(mp.mpc("0.3", "0.2"), mp.mpc(2, -1), mp.mpc(0), 36)
wps = wp_prime_series(mp.mpc("0.3", "0.2"), mp.mpc(2, -1), mp.mpc(0), 36)
ident = wps**2 - (4 * ws**3 - mp.mpc(2, -1) * ws)
ok("series wp satisfies its differential identity", abs(ident) < mp.mpf("1e-30"))


def w2_num(zv, e1v, e2v, cv, g3v, zeta0v):
    uu = mp.e ** (-cv * zv / 5) - zeta0v
    return (e1v - e2v) * mp.e ** (-2 * cv * zv / 5) * wp_series(uu, 0, g3v, 36) + e2v


e1v, e2v, cv = mp.mpf(1), mp.mpf(0), mp.mpf(5)
g3v, zeta0v = mp.mpc(2, -1), mp.mpc("0.31", "0.17")
lamv = 25 * (e1v - e2v) / cv**2
h = mp.mpf("1e-8")
zv = mp.mpc("0.2")
f = lambda t: w2_num(t, e1v, e2v, cv, g3v, zeta0v)
d1 = (f(zv + h) - f(zv - h)) / (2 * h)
d2 = (f(zv + h) - 2 * f(zv) + f(zv - h)) / h**2
res = d2 + cv * d1 - 6 / lamv * (f(zv) - e1v) * (f(zv) - e2v)
ok("w2 numeric residual (central difference)", abs(res) < mp.mpf("1e-12"))
print(f"FROZEN w2(0.2) [e=(1,0), c=5, g3=2-i, zeta0=0.31+0.17i] = {mp.nstr(f(zv), 20)}")


def w6_num(zv, qiv, qkv, lamv, g2v, zeta0v):
    Ev = mp.e ** (-(qiv - qkv) / lamv * zv)
    uu = Ev - zeta0v
    return qkv - (qiv - qkv) / 2 * Ev * (wp_prime_series(uu, g2v, 0, 36)
                                         / wp_series(uu, g2v, 0, 36))


qiv, qkv, lam3v = mp.mpf(1), mp.mpf(0), mp.mpf(1)
qjv = 2 * qkv - qiv
g2v, zeta6 = mp.mpc("1.3", "-0.4"), mp.mpc("1.1", "0.3")
cv6 = 3 * (qiv - qkv) / lam3v
f = lambda t: w6_num(t, qiv, qkv, lam3v, g2v, zeta6)
zv = mp.mpc("0.15")
d1 = (f(zv + h) - f(zv - h)) / (2 * h)
d2 = (f(zv + h) - 2 * f(zv) + f(zv - h)) / h**2
res = d2 + cv6 * d1 - 2 / lam3v**2 * (f(zv) - qiv) * (f(zv) - qjv) * (f(zv) - qkv)
ok("w6 numeric residual (central difference)", abs(res) < mp.mpf("1e-12"))
print(f"FROZEN w6(0.15) [q=(1,-1,0) roles i=1 k=0, lam=1, g2=1.3-0.4i, zeta0=1.1+0.3i]"
      f" = {mp.nstr(f(zv), 20)}")

cond = 1 * (1 + 25 * 1 - 25 * 0) * (1 - 25 * 1 + 25 * 0)
print(f"FROZEN lemma-condition value [lam=1, e=(1,0), c=1] = {cond}")

print(f"ALL OK ({len(PASS)} checks)")
