#!/usr/bin/env python3
"""Independent Laurent-recursion oracle.

Expands w = sum_m w_m tau^(p+m) symbolically with sympy, substitutes into the
family ODE, and solves the coefficient equations one order at a time. Where
the linear coefficient of w_n vanishes (a resonance) the leftover equation
value is recorded as the obstruction. Everything is exact rational arithmetic.

Usage: python3 laurent_oracle.py
Prints frozen values for the C++ unit tests.
"""

import sympy as sp

TAU = sp.symbols("tau")


def residual(family, c, P, w):
    w1 = sp.diff(w, TAU)
    w2 = sp.diff(w1, TAU)
    pw = sum(a * w**m for m, a in enumerate(P))
    if family == 1:
        return w * w2 - w1**2 + pw
    if family == 2:
        return w2 + c * w1**2 + pw
    if family == 3:
        return w2 + c * w1 + pw
    raise ValueError(family)


def expand(family, c, P, p, w0, order):
    """Returns (resonances, obstructions, coefficients)."""
    c = sp.nsimplify(c)
    P = [sp.nsimplify(a) for a in P]
    w0 = sp.nsimplify(w0)

    syms = [sp.Symbol(f"w{m}") for m in range(1, order + 1)]
    w = w0 * TAU**p + sum(s * TAU ** (p + m) for m, s in zip(range(1, order + 1), syms))

    # structural minimum exponent of the residual
    k = len(P) - 1
    if family == 1:
        mu = min(2 * p - 2, k * p)
    elif family == 2:
        mu = min(p - 2, 2 * p - 2, k * p) if c != 0 else min(p - 2, k * p)
    else:
        mu = min(p - 2, k * p)

    shifted = sp.expand(residual(family, c, P, w) * TAU ** (-mu))
    poly = sp.Poly(shifted, TAU)

    known = {}
    resonances = []
    obstructions = []
    coeffs = [w0]
    for n in range(1, order + 1):
        eq = sp.expand(poly.coeff_monomial(TAU**n).subs(known))
        lin = sp.simplify(eq.coeff(syms[n - 1]))
        rest = sp.simplify(eq.subs(syms[n - 1], 0))
        if lin == 0:
            resonances.append(n)
            obstructions.append((n, sp.nsimplify(rest)))
            known[syms[n - 1]] = sp.Integer(0)
            coeffs.append(sp.Integer(0))
        else:
            val = sp.simplify(-rest / lin)
            known[syms[n - 1]] = val
            coeffs.append(val)
    return resonances, obstructions, coeffs


def type3_cubic(lam, q1, q2, q3, c):
    lam, q1, q2, q3 = map(sp.nsimplify, (lam, q1, q2, q3))
    x = sp.symbols("x")
    pw = sp.expand(-(sp.Rational(2) / lam**2) * (x - q1) * (x - q2) * (x - q3))
    return [pw.coeff(x, m) for m in range(4)]


def type3_quadratic(lam, e1, e2):
    lam, e1, e2 = map(sp.nsimplify, (lam, e1, e2))
    x = sp.symbols("x")
    pw = sp.expand(-(sp.Rational(6) / lam) * (x - e1) * (x - e2))
    return [pw.coeff(x, m) for m in range(3)]


def show(tag, family, c, P, p, w0, order):
    res, obs, coeffs = expand(family, c, P, p, w0, order)
    print(f"== {tag}")
    print(f"   resonances(n>=1): {res}")
    for n, v in obs:
        print(f"   obstruction[{n}] = {v}")
    for m, v in enumerate(coeffs):
        print(f"   w[{m}] = {v}")
    print()


def main():
    # Type3 cubic normal form, + branch, the two pinned examples.
    show("T3k3 q=(0,0,0) c=2 lam=1 (+)", 3, 2, type3_cubic(1, 0, 0, 0, 2), -1, 1, 5)
    show("T3k3 q=(-1,1,0) c=3 lam=1 (+)", 3, 3, type3_cubic(1, -1, 1, 0, 3), -1, 1, 5)
    # - branch of the second example: condition should fail.
    show("T3k3 q=(-1,1,0) c=3 lam=1 (-)", 3, 3, type3_cubic(1, -1, 1, 0, 3), -1, -1, 5)
    # generic rational draw, + branch
    show(
        "T3k3 q=(1/2,-1/3,5/7) c=1/4 lam=2/3 (+)",
        3,
        sp.Rational(1, 4),
        type3_cubic(sp.Rational(2, 3), sp.Rational(1, 2), sp.Rational(-1, 3), sp.Rational(5, 7), sp.Rational(1, 4)),
        -1,
        sp.Rational(2, 3),
        5,
    )
    # condition product for that draw, both sign branches
    lam, c = sp.Rational(2, 3), sp.Rational(1, 4)
    q = [sp.Rational(1, 2), sp.Rational(-1, 3), sp.Rational(5, 7)]
    for s in (1, -1):
        prod = sp.Integer(1)
        for (i, j, k) in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            prod *= s * c * lam + q[i] + q[j] - 2 * q[k]
        print(f"   sign {s}: prod c-condition factors = {sp.nsimplify(c * prod)}")
    print()

    # Type3 quadratic normal form: indices and the two condition regimes.
    show("T3k2 e=(1,0) c=1 lam=1", 3, 1, type3_quadratic(1, 1, 0), -2, 1, 7)
    show("T3k2 e=(0,1) c=5 lam=1", 3, 5, type3_quadratic(1, 0, 1), -2, 1, 7)

    # Type1 cubic and quartic: resonance at 2, effect of a2.
    show("T1k3 P=w^3+a2 w^2, a2=1", 1, 0, [0, 0, 1, 1], -2, -2, 4)
    show("T1k3 P=w^3 (a2=0)", 1, 0, [0, 0, 0, 1], -2, -2, 4)
    show("T1k3 P=w^3+w/2+1/3 (a2=0)", 1, 0, [sp.Rational(1, 3), sp.Rational(1, 2), 0, 1], -2, -2, 4)
    show("T1k4 P=w^4+w^2", 1, 0, [0, 0, 1, 0, 1], -1, sp.I, 4)
    show("T1k4 P=w^4+w+2 (+i branch)", 1, 0, [2, 1, 0, 0, 1], -1, sp.I, 4)

    # Type2, c = 0: quadratic and cubic.
    show("T2k2 c=0 P=w^2+w+1", 2, 0, [1, 1, 1], -2, -6, 7)
    show("T2k3 c=0 P=w^3+w^2", 2, 0, [0, 0, 1, 1], -1, sp.I * sp.sqrt(2), 5)
    # rational leading variant: P = -2w^3/9 + w^2 gives w0 = 3
    show("T2k3 c=0 P=-2w^3/9+w^2", 2, 0, [0, 0, 1, sp.Rational(-2, 9)], -1, 3, 5)

    # Type2, c != 0: linear indicial polynomial, no nonnegative resonance.
    show("T2k3 c=1 P=w^3", 2, 1, [0, 0, 0, 1], -2, -4, 5)
    show("T2k4 c=1 P=w^4", 2, 1, [0, 0, 0, 0, 1], -1, sp.I, 5)


if __name__ == "__main__":
    main()
