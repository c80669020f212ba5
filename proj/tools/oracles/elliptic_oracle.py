#!/usr/bin/env python3
"""Independent reference values for the elliptic layer.

Periods come from direct quadrature of the defining integral and are
cross-checked against mpmath's Carlson R_F. wp/wp'/zeta come from theta
functions, self-validated by the differential identity, parity, and the
textbook Laurent anchors (z^-2 + g2 z^2/20 + g3 z^4/28 + ...). The printed
values are frozen into the C++ unit tests.
"""

import mpmath as mp

mp.mp.dps = 40


def cubic_roots(g2, g3):
    roots = mp.polyroots([4, 0, -g2, -g3], extraprec=60)
    return sorted(roots, key=lambda r: (-mp.re(r), -mp.im(r)))


def half_periods(g2, g3):
    e = cubic_roots(g2, g3)
    w1 = mp.elliprf(0, e[0] - e[1], e[0] - e[2])
    w3 = mp.elliprf(0, e[2] - e[0], e[2] - e[1])
    if mp.im(w3 / w1) < 0:
        w3 = -w3
    return w1, w3, e


class Wp:
    """Theta-function evaluation on the lattice with half-periods w1, w3."""

    def __init__(self, g2, g3):
        self.g2, self.g3 = mp.mpmathify(g2), mp.mpmathify(g3)
        self.w1, self.w3, self.e = half_periods(g2, g3)
        self.tau = self.w3 / self.w1
        self.q = mp.exp(1j * mp.pi * self.tau)

    def p(self, z):
        v = mp.pi * z / (2 * self.w1)
        t2 = mp.jtheta(2, v, self.q)
        t1 = mp.jtheta(1, v, self.q)
        a = mp.pi * mp.jtheta(3, 0, self.q) * mp.jtheta(4, 0, self.q) / (2 * self.w1)
        return self.e[0] + (a * t2 / t1) ** 2

    def p_prime(self, z):
        return mp.diff(self.p, z)

    def zeta(self, z):
        v = mp.pi * z / (2 * self.w1)
        eta1 = -(mp.pi**2 / (12 * self.w1)) * (
            mp.jtheta(1, 0, self.q, 3) / mp.jtheta(1, 0, self.q, 1))
        return eta1 * z / self.w1 + (mp.pi / (2 * self.w1)) * (
            mp.jtheta(1, v, self.q, 1) / mp.jtheta(1, v, self.q))

    def selfcheck(self, z):
        p, pp = self.p(z), self.p_prime(z)
        resid = pp**2 - (4 * p**3 - self.g2 * p - self.g3)
        assert abs(resid) < mp.mpf('1e-25') * (1 + abs(p)) ** 3, resid
        assert abs(self.p(-z) - p) < mp.mpf('1e-25') * (1 + abs(p))
        zsmall = mp.mpf('1e-4') * (1 + 1j) / mp.sqrt(2)
        laurent = zsmall**-2 + self.g2 * zsmall**2 / 20 + self.g3 * zsmall**4 / 28
        assert abs(self.p(zsmall) - laurent) < mp.mpf('1e-12')
        zeta_diff = mp.diff(self.zeta, z)
        assert abs(zeta_diff + p) < mp.mpf('1e-20') * (1 + abs(p)), zeta_diff + p


def quadrature_period(g2, g3):
    e1 = cubic_roots(g2, g3)[0]
    f = lambda t: 1 / mp.sqrt(4 * t**3 - g2 * t - g3)
    return mp.quad(f, [e1, e1 + 1, mp.inf])


def show(label, value, digits=21):
    print(f"{label} = {mp.nstr(value, digits)}")


def main():
    print("== lattice periods ==")
    show("omega1(4,0) quadrature", quadrature_period(4, 0))
    w1, w3, e = half_periods(4, 0)
    show("omega1(4,0) elliprf   ", w1)
    show("omega3(4,0) elliprf   ", w3)
    show("omega1(1/4,0) elliprf ", half_periods(mp.mpf(1) / 4, 0)[0])
    g2c, g3c = mp.mpc(4, 3), mp.mpc(2, -1)
    w1c, w3c, _ = half_periods(g2c, g3c)
    show("omega1(4+3i,2-i)", w1c)
    show("omega3(4+3i,2-i)", w3c)
    show("omega1(0,4)", half_periods(0, 4)[0])
    show("omega3(0,4)", half_periods(0, 4)[1])

    print("== wp values (theta), self-checked ==")
    wp = Wp(4, 0)
    wp.selfcheck(mp.mpf('0.7'))
    wp.selfcheck(mp.mpc('0.31', '0.77'))
    show("wp(0.7; 4,0)      ", wp.p(mp.mpf('0.7')))
    show("wp'(0.7; 4,0)     ", wp.p_prime(mp.mpf('0.7')))
    show("zeta(0.7; 4,0)    ", wp.zeta(mp.mpf('0.7')))
    show("wp(0.31+0.77i;4,0)", wp.p(mp.mpc('0.31', '0.77')))
    show("wp(omega1; 4,0)   ", wp.p(w1))
    zbig = mp.mpc('3.9', '2.6')
    wp.selfcheck(zbig)
    show("wp(3.9+2.6i; 4,0) ", wp.p(zbig))
    show("zeta(3.9+2.6i;4,0)", wp.zeta(zbig))

    wpc = Wp(g2c, g3c)
    wpc.selfcheck(mp.mpc('0.7', '0.2'))
    show("wp(0.7+0.2i; 4+3i, 2-i) ", wpc.p(mp.mpc('0.7', '0.2')))
    show("wp'(0.7+0.2i; 4+3i, 2-i)", wpc.p_prime(mp.mpc('0.7', '0.2')))
    show("zeta(0.7+0.2i; 4+3i,2-i)", wpc.zeta(mp.mpc('0.7', '0.2')))

    wp04 = Wp(0, 4)
    wp04.selfcheck(mp.mpf('0.9'))
    show("wp(0.9; 0, 4)", wp04.p(mp.mpf('0.9')))

    print("== Nevanlinna characteristic of wp(z; 4, 0) at r = 20 ==")
    mp.mp.dps = 20
    wp20 = Wp(4, 0)
    r = mp.mpf(20)

    def logplus_abs(theta):
        z = r * mp.exp(1j * theta)
        val = abs(wp20.p(z))
        return mp.log(val) if val > 1 else mp.mpf(0)

    # Poles sit on 2*w1*(m+ni); integrand is smooth between pole-nearest
    # angles, so split the circle at those angles for the quadrature.
    lattice_pts = []
    lim = int(mp.floor(r / (2 * w1))) + 1
    for mm in range(-lim, lim + 1):
        for nn in range(-lim, lim + 1):
            pt = 2 * w1 * (mm + 1j * nn)
            if (mm, nn) != (0, 0) and abs(pt) <= r:
                lattice_pts.append(pt)
    angles = sorted(float(mp.arg(p)) % (2 * mp.pi) for p in lattice_pts)
    knots = [0] + angles + [2 * mp.pi]
    m_r = mp.quad(logplus_abs, knots) / (2 * mp.pi)
    n_terms = sum(2 * mp.log(r / abs(p)) for p in lattice_pts)
    N_r = n_terms + 2 * mp.log(r)  # double pole at the origin
    T = m_r + N_r
    show("m(20)", m_r, 10)
    show("N(20)", N_r, 10)
    show("T(20)", T, 10)
    show("T(20)/400", T / 400, 10)
    show("pi/(2 omega1)^2  ", mp.pi / (2 * w1) ** 2, 10)
    show("2pi/(2 omega1)^2 ", 2 * mp.pi / (2 * w1) ** 2, 10)
    print("poles in |z|<=20 (with orders):", 2 * len(lattice_pts) + 2)


if __name__ == "__main__":
    main()
