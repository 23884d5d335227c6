"""Airy functions and the self-similar profiles of the dispersive kernel.

Everything downstream (fundamental solutions, layer kernels, vertex
matrices) is built from Ai, Bi and their first derivatives on the real
line.  Evaluation uses three regimes:

* ``|z| <= 4.5``          Maclaurin series in plain doubles.
* ``4.5 < |z| < 9``       the same series summed in compensated
                          double-double arithmetic; the two sub-sums
                          cancel to ~exp(-4/3 |z|^{3/2}) of their size
                          there, which plain doubles cannot survive.
* ``|z| >= 9``            asymptotic expansions, trigonometric form on
                          the negative axis, truncated at the smallest
                          term.

The switchover points were validated against an independent reference
(see tests).  The module also provides the profile pair

    f(x)   = pi 3^(-1/3) Ai(-3^(-1/3) x)
    phi(x) = pi 3^(-1/3) Bi(-3^(-1/3) x)   for x >= 0, else 0,

their derivatives (second derivatives exactly via w'' = z w), running
integrals, the fundamental solutions U, V of u_t = u_xxx, and the
oscillatory complex envelopes used by the singular quadrature helpers.
"""

import numpy as np
from scipy.integrate import quad

__all__ = [
    "airy",
    "airy_all",
    "airy_integral",
    "profile",
    "profile_antideriv",
    "fundamental",
    "profile_integral_check",
    "AiryOverflowError",
    "F0",
    "FP0",
    "PHI0",
    "PHIP0",
]

_SERIES_CUT = 4.5
_ASYM_CUT = 9.0
_CBRT3 = 3.0 ** (1.0 / 3.0)

# Ai(0), -Ai'(0) and sqrt(3) as (hi, lo) double-double pairs.  The low
# parts matter: in the cancellation band the series sums are ~1e6 while
# the result is O(1e-10), so the constants must carry ~32 digits.
_AI0 = (0.3550280538878172, 2.05233632436212e-17)
_NEG_AIP0 = (0.2588194037928068, -2.522243111610832e-17)
_SQRT3 = (1.7320508075688772, 1.0035084221806903e-16)

_SQRT_PI = np.sqrt(np.pi)

# Values of the profiles and their slopes at the origin; these populate
# the vertex matrices.  phi uses the right-hand limit.
F0 = np.pi / (3.0 * 1.3541179394264004)        # pi / (3 Gamma(2/3))
FP0 = np.pi / (3.0 * 2.678938534707747)        # pi / (3 Gamma(1/3))
PHI0 = np.sqrt(3.0) * F0
PHIP0 = -np.sqrt(3.0) * FP0


class AiryOverflowError(FloatingPointError):
    """Bi(z) exceeded double range at large positive argument."""


# ----------------------------------------------------------------------
# double-double helpers (vectorized, error-free transforms)
# ----------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_two_sum(a, b):
    s = a + b
    err = b - (s - a)
    return s, err


def _two_prod(a, b):
    p = a * b
    ah = _SPLITTER * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLITTER * b
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    e = e + x[1] + y[1]
    return _quick_two_sum(s, e)


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e = e + x[0] * y[1] + x[1] * y[0]
    return _quick_two_sum(p, e)


def _dd_div_d(x, d):
    q1 = x[0] / d
    p, e = _two_prod(q1, d)
    q2 = ((x[0] - p) - e + x[1]) / d
    return _quick_two_sum(q1, q2)


def _dd_neg(x):
    return (-x[0], -x[1])


def _dd_from(a):
    return (a, np.zeros_like(a))


# ----------------------------------------------------------------------
# Maclaurin series
# ----------------------------------------------------------------------

def _series_plain(z):
    """Ai, Ai', Bi, Bi' by the Maclaurin series, plain doubles."""
    z = np.asarray(z, dtype=float)
    z3 = z * z * z
    f = np.ones_like(z)
    g = z.copy()
    fp = 0.5 * z * z
    gp = np.ones_like(z)
    tf = np.ones_like(z)
    tg = z.copy()
    tfp = 0.5 * z * z
    tgp = np.ones_like(z)
    for k in range(160):
        tf = tf * z3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * z3 / ((3 * k + 3) * (3 * k + 4))
        tgp = tgp * z3 / ((3 * k + 1) * (3 * k + 3))
        # f' series starts at k=1, so its ratio lags one step behind
        if k > 0:
            tfp = tfp * z3 / ((3 * k) * (3 * k + 2))
        f = f + tf
        g = g + tg
        gp = gp + tgp
        if k > 0:
            fp = fp + tfp
        if (np.abs(tf) + np.abs(tg)).max() < 1e-20 * max(1.0, np.abs(f).max()):
            break
    c1, c2 = _AI0[0], _NEG_AIP0[0]
    ai = c1 * f - c2 * g
    aip = c1 * fp - c2 * gp
    bi = np.sqrt(3.0) * (c1 * f + c2 * g)
    bip = np.sqrt(3.0) * (c1 * fp + c2 * gp)
    return ai, aip, bi, bip


def _series_dd(z):
    """Same series accumulated in double-double arithmetic.

    Used on 4.5 < |z| < 9 where the c1*f and c2*g parts cancel by up to
    ten orders of magnitude.
    """
    z = np.asarray(z, dtype=float)
    z3 = _dd_mul(_dd_mul(_dd_from(z), _dd_from(z)), _dd_from(z))
    one = _dd_from(np.ones_like(z))
    f = one
    g = _dd_from(z.copy())
    fp = _dd_mul(_dd_from(0.5 * z), _dd_from(z))
    gp = one
    tf, tg, tfp, tgp = f, g, fp, gp
    for k in range(240):
        tf = _dd_div_d(_dd_mul(tf, z3), float((3 * k + 2) * (3 * k + 3)))
        tg = _dd_div_d(_dd_mul(tg, z3), float((3 * k + 3) * (3 * k + 4)))
        tgp = _dd_div_d(_dd_mul(tgp, z3), float((3 * k + 1) * (3 * k + 3)))
        if k > 0:
            tfp = _dd_div_d(_dd_mul(tfp, z3), float((3 * k) * (3 * k + 2)))
        f = _dd_add(f, tf)
        g = _dd_add(g, tg)
        gp = _dd_add(gp, tgp)
        if k > 0:
            fp = _dd_add(fp, tfp)
        if max(np.abs(tf[0]).max(), np.abs(tg[0]).max()) < 1e-40 * max(
            1.0, np.abs(f[0]).max()
        ):
            break
    c1f = _dd_mul(_AI0, f)
    c2g = _dd_mul(_NEG_AIP0, g)
    c1fp = _dd_mul(_AI0, fp)
    c2gp = _dd_mul(_NEG_AIP0, gp)
    ai = _dd_add(c1f, _dd_neg(c2g))
    aip = _dd_add(c1fp, _dd_neg(c2gp))
    bi = _dd_mul(_SQRT3, _dd_add(c1f, c2g))
    bip = _dd_mul(_SQRT3, _dd_add(c1fp, c2gp))
    return ai[0] + ai[1], aip[0] + aip[1], bi[0] + bi[1], bip[0] + bip[1]


# ----------------------------------------------------------------------
# asymptotic expansions
# ----------------------------------------------------------------------

def _uv_coeffs(n=40):
    u = np.empty(n)
    v = np.empty(n)
    u[0] = 1.0
    v[0] = 1.0
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        v[k] = u[k] * (6 * k + 1) / (1.0 - 6 * k)
    return u, v


_UK, _VK = _uv_coeffs()


def _asym_sum(zeta, coeffs, alternate):
    """Sum coeffs[k]*zeta^-k, stopping once terms stop decreasing."""
    zeta = np.asarray(zeta, dtype=float)
    total = np.ones_like(zeta)
    term = np.ones_like(zeta)
    prev = np.full_like(zeta, np.inf)
    active = np.ones(zeta.shape, dtype=bool)
    for k in range(1, len(coeffs)):
        term = term * (coeffs[k] / coeffs[k - 1]) / zeta
        if alternate:
            contrib = term * (-1.0) ** k
        else:
            contrib = term
        mag = np.abs(term)
        active = active & (mag < prev) & (mag > 1e-18)
        total = np.where(active, total + contrib, total)
        prev = mag
        if not active.any():
            break
    return total


def _asym_pos(z):
    """Asymptotics on the positive axis, z >= _ASYM_CUT."""
    z = np.asarray(z, dtype=float)
    zeta = (2.0 / 3.0) * z ** 1.5
    if np.any(zeta > 700.0):
        raise AiryOverflowError("Bi overflows for argument >= ~104; clamp the evaluation range")
    q = z ** 0.25
    sa = _asym_sum(zeta, _UK, alternate=True)
    sap = _asym_sum(zeta, _VK, alternate=True)
    sb = _asym_sum(zeta, _UK, alternate=False)
    sbp = _asym_sum(zeta, _VK, alternate=False)
    em = np.exp(-zeta)
    ep = np.exp(zeta)
    ai = 0.5 / _SQRT_PI * em / q * sa
    aip = -0.5 / _SQRT_PI * em * q * sap
    bi = 1.0 / _SQRT_PI * ep / q * sb
    bip = 1.0 / _SQRT_PI * ep * q * sbp
    return ai, aip, bi, bip


def _pqrs(zeta):
    """Even/odd split sums P, Q, R, S of the oscillatory expansions."""
    zeta = np.asarray(zeta, dtype=float)
    iz2 = 1.0 / (zeta * zeta)
    p = np.ones_like(zeta)
    r = np.ones_like(zeta)
    tp = np.ones_like(zeta)
    tr = np.ones_like(zeta)
    q = _UK[1] / zeta
    s = _VK[1] / zeta
    tq = q.copy()
    ts = s.copy()
    active = np.ones(zeta.shape, dtype=bool)
    prev = np.full(zeta.shape, np.inf)
    for k in range(1, len(_UK) // 2):
        tp = tp * (_UK[2 * k] / _UK[2 * k - 2]) * iz2 * (-1.0)
        tr = tr * (_VK[2 * k] / _VK[2 * k - 2]) * iz2 * (-1.0)
        mag = np.abs(tp)
        active = active & (mag < prev) & (mag > 1e-18)
        p = np.where(active, p + tp, p)
        r = np.where(active, r + tr, r)
        prev = mag
        if 2 * k + 1 < len(_UK):
            tq = tq * (_UK[2 * k + 1] / _UK[2 * k - 1]) * iz2 * (-1.0)
            ts = ts * (_VK[2 * k + 1] / _VK[2 * k - 1]) * iz2 * (-1.0)
            q = np.where(active, q + tq, q)
            s = np.where(active, s + ts, s)
        if not active.any():
            break
    return p, q, r, s


def _asym_neg(x):
    """Trigonometric asymptotics for Ai(-x), Bi(-x), x >= _ASYM_CUT."""
    x = np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * x ** 1.5
    p, q, r, s = _pqrs(zeta)
    phi = zeta - 0.25 * np.pi
    c, sn = np.cos(phi), np.sin(phi)
    q4 = x ** 0.25
    ai = (c * p + sn * q) / (_SQRT_PI * q4)
    bi = (-sn * p + c * q) / (_SQRT_PI * q4)
    aip = (sn * r - c * s) * q4 / _SQRT_PI
    bip = (c * r + sn * s) * q4 / _SQRT_PI
    return ai, aip, bi, bip


# ----------------------------------------------------------------------
# public evaluation
# ----------------------------------------------------------------------

def airy_all(z):
    """Vectorized (Ai, Ai', Bi, Bi') on the real line."""
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    ai = np.empty_like(z)
    aip = np.empty_like(z)
    bi = np.empty_like(z)
    bip = np.empty_like(z)
    az = np.abs(z)
    m1 = az <= _SERIES_CUT
    m2 = (az > _SERIES_CUT) & (az < _ASYM_CUT)
    m3p = (az >= _ASYM_CUT) & (z > 0)
    m3n = (az >= _ASYM_CUT) & (z < 0)
    if m1.any():
        ai[m1], aip[m1], bi[m1], bip[m1] = _series_plain(z[m1])
    if m2.any():
        ai[m2], aip[m2], bi[m2], bip[m2] = _series_dd(z[m2])
    if m3p.any():
        ai[m3p], aip[m3p], bi[m3p], bip[m3p] = _asym_pos(z[m3p])
    if m3n.any():
        ai[m3n], aip[m3n], bi[m3n], bip[m3n] = _asym_neg(-z[m3n])
    if scalar:
        return float(ai[0]), float(aip[0]), float(bi[0]), float(bip[0])
    return ai, aip, bi, bip


_WHICH = {"Ai": 0, "AiPrime": 1, "Bi": 2, "BiPrime": 3}


def airy(x, which="Ai"):
    """Evaluate one Airy function; ``which`` in {Ai, Bi, AiPrime, BiPrime}."""
    vals = airy_all(x)
    return vals[_WHICH[which]]


# ----------------------------------------------------------------------
# running integrals of Ai(-t), Bi(-t)
# ----------------------------------------------------------------------

def _int_series_plain(z):
    """(int_0^z F, int_0^z G) with F, G the Maclaurin parts of Ai/Bi.

    F(z) = sum 3^k (1/3)_k z^(3k+1) / ((3k+1) (3k)!) and the analogous
    G; combined below into integrals of Ai and Bi.
    """
    z = np.asarray(z, dtype=float)
    z3 = z * z * z
    tf = z.copy()
    tg = 0.5 * z * z
    intf = z.copy()
    intg = 0.5 * z * z
    for k in range(200):
        tf = tf * z3 * (3 * k + 1) / ((3 * k + 2) * (3 * k + 3) * (3 * k + 4))
        tg = tg * z3 * (3 * k + 2) / ((3 * k + 3) * (3 * k + 4) * (3 * k + 5))
        intf = intf + tf
        intg = intg + tg
        if (np.abs(tf) + np.abs(tg)).max() < 1e-20 * max(1.0, np.abs(intf).max()):
            break
    return intf, intg


def _int_series_dd(z):
    z = np.asarray(z, dtype=float)
    z3 = _dd_mul(_dd_mul(_dd_from(z), _dd_from(z)), _dd_from(z))
    tf = _dd_from(z.copy())
    tg = _dd_mul(_dd_from(0.5 * z), _dd_from(z))
    intf, intg = tf, tg
    for k in range(260):
        tf = _dd_div_d(
            _dd_mul(tf, z3),
            float((3 * k + 2) * (3 * k + 3) * (3 * k + 4)) / (3 * k + 1),
        )
        tg = _dd_div_d(
            _dd_mul(tg, z3),
            float((3 * k + 3) * (3 * k + 4) * (3 * k + 5)) / (3 * k + 2),
        )
        intf = _dd_add(intf, tf)
        intg = _dd_add(intg, tg)
        if max(np.abs(tf[0]).max(), np.abs(tg[0]).max()) < 1e-40 * max(
            1.0, np.abs(intf[0]).max()
        ):
            break
    return intf, intg


def _int_combine_plain(z):
    intf, intg = _int_series_plain(z)
    c1, c2 = _AI0[0], _NEG_AIP0[0]
    ia = c1 * intf - c2 * intg
    ib = np.sqrt(3.0) * (c1 * intf + c2 * intg)
    return ia, ib


def _int_combine_dd(z):
    intf, intg = _int_series_dd(z)
    ia = _dd_add(_dd_mul(_AI0, intf), _dd_neg(_dd_mul(_NEG_AIP0, intg)))
    ib = _dd_mul(_SQRT3, _dd_add(_dd_mul(_AI0, intf), _dd_mul(_NEG_AIP0, intg)))
    return ia[0] + ia[1], ib[0] + ib[1]


def _osc_tail_coeff_series(coeff, zeta, scale):
    """e^(i zeta) antiderivative of scale * sum coeff[m] zeta^(-m-1/2).

    Returns the truncated-at-smallest-term value of
    int_zeta^inf A(s) e^(is) ds  =  -e^(i zeta) sum b_m zeta^(-m-1/2)
    with b_m = -i (a_m + (m - 1/2) b_{m-1}).
    """
    zeta = np.asarray(zeta, dtype=float)
    b = -1j * coeff[0] * scale
    term = b * zeta ** -0.5
    total = term.copy()
    best = np.abs(term)
    active = np.ones(zeta.shape, dtype=bool)
    for m in range(1, len(coeff)):
        b = -1j * (coeff[m] * scale + (m - 0.5) * b)
        term = b * zeta ** (-m - 0.5)
        mag = np.abs(term)
        active = active & (mag < best)
        total = np.where(active, total + term, total)
        best = np.where(active, mag, best)
    return -np.exp(1j * zeta) * total


def _interleave_env(u):
    """Complex coefficients c_m of (P - iQ)(zeta) = sum c_m zeta^-m."""
    c = np.zeros(len(u), dtype=complex)
    for m in range(len(u)):
        k, rem = divmod(m, 2)
        if rem == 0:
            c[m] = (-1.0) ** k * u[m]
        else:
            c[m] = -1j * (-1.0) ** k * u[m]
    return c


_ENV_AI = _interleave_env(_UK)  # Ai(-x):  (P - iQ)


def _env_bi_coeffs(u):
    # Bi(-x) = Re[(Q + iP) e^{i phi}]
    c = np.zeros(len(u), dtype=complex)
    for m in range(len(u)):
        k, rem = divmod(m, 2)
        if rem == 0:
            c[m] = 1j * (-1.0) ** k * u[m]
        else:
            c[m] = (-1.0) ** k * u[m]
    return c


_ENV_BI = _env_bi_coeffs(_UK)


def _ia_pos_tail(x):
    """int_x^inf Ai(-t) dt for x >= _ASYM_CUT (oscillatory tail)."""
    zeta = (2.0 / 3.0) * np.asarray(x, dtype=float) ** 1.5
    scale = np.sqrt(2.0 / 3.0) / _SQRT_PI * np.exp(-0.25j * np.pi)
    return np.real(_osc_tail_coeff_series(_ENV_AI, zeta, scale))


def _ib_pos_tail(x):
    zeta = (2.0 / 3.0) * np.asarray(x, dtype=float) ** 1.5
    scale = np.sqrt(2.0 / 3.0) / _SQRT_PI * np.exp(-0.25j * np.pi)
    return np.real(_osc_tail_coeff_series(_ENV_BI, zeta, scale))


def _int_ai_decay_tail(x):
    """int_x^inf Ai(t) dt for x >= _ASYM_CUT (monotone tail)."""
    x = np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * x ** 1.5
    # A(zeta) = (1/(2 sqrt pi)) sqrt(2/3) zeta^(-1/2) sum (-1)^k u_k zeta^-k
    # antiderivative of A e^-zeta: -e^-zeta sum B_m zeta^(-m-1/2),
    # B_m = a_m - (m - 1/2) B_{m-1}
    a = _UK * (-1.0) ** np.arange(len(_UK)) * (0.5 / _SQRT_PI) * np.sqrt(2.0 / 3.0)
    B = a[0] * np.ones_like(zeta)
    term = B * zeta ** -0.5
    total = term.copy()
    best = np.abs(term)
    active = np.ones(zeta.shape, dtype=bool)
    Bm = np.full_like(zeta, a[0])
    for m in range(1, len(a)):
        Bm = a[m] - (m - 0.5) * Bm
        term = Bm * zeta ** (-m - 0.5)
        mag = np.abs(term)
        active = active & (mag < best)
        total = np.where(active, total + term, total)
        best = np.where(active, mag, best)
    return np.exp(-zeta) * total


def airy_integral(x):
    """Running integrals (int_0^x Ai(-t) dt, int_0^x Bi(-t) dt).

    Both are vectorized over x.  The Ai integral tends to 2/3 as
    x -> +inf and to -1/3 as x -> -inf; the Bi integral tends to 0 as
    x -> +inf and diverges on the negative side (only small negative
    arguments are supported there).
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    ia = np.empty_like(x)
    ib = np.empty_like(x)
    ax = np.abs(x)
    m1 = ax <= _SERIES_CUT
    m2 = (ax > _SERIES_CUT) & (ax < _ASYM_CUT)
    m3p = (ax >= _ASYM_CUT) & (x > 0)
    m3n = (ax >= _ASYM_CUT) & (x < 0)
    if m1.any():
        ia[m1], ib[m1] = _int_combine_plain(x[m1])
    if m2.any():
        ia[m2], ib[m2] = _int_combine_dd(x[m2])
    if m3p.any():
        ia[m3p] = 2.0 / 3.0 - _ia_pos_tail(x[m3p])
        ib[m3p] = -_ib_pos_tail(x[m3p])
    if m3n.any():
        # int_0^x Ai(-t) dt = -int_0^{-x} Ai(s) ds = -(1/3 - tail)
        ia[m3n] = -(1.0 / 3.0 - _int_ai_decay_tail(-x[m3n]))
        ib[m3n] = np.nan  # Bi integral grows like exp; out of supported range
    if scalar:
        return float(ia[0]), float(ib[0])
    return ia, ib


# ----------------------------------------------------------------------
# profiles and fundamental solutions
# ----------------------------------------------------------------------

def profile(x, which="f", order=0):
    """The profile f or phi and its derivatives up to order 2.

    f(x) = pi 3^(-1/3) Ai(-3^(-1/3) x) on the whole line; phi is the
    Bi analogue supported on x >= 0 (zero for x < 0, right-limit values
    at 0).  Order 2 comes from the Airy equation, w'' = -(x/3) w, so it
    is exact given the order-0 value.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    arg = -x / _CBRT3
    ai, aip, bi, bip = airy_all(arg)
    pref = np.pi / _CBRT3
    if which == "f":
        val = pref * ai
        der = -pref / _CBRT3 * aip
    elif which == "phi":
        sup = x >= 0.0
        val = np.where(sup, pref * bi, 0.0)
        der = np.where(sup, -pref / _CBRT3 * bip, 0.0)
    else:
        raise ValueError(f"unknown profile {which!r}")
    if order == 0:
        out = val
    elif order == 1:
        out = der
    elif order == 2:
        out = -(x / 3.0) * val
    else:
        raise ValueError("profile orders 0..2 only")
    if scalar:
        return float(out[0])
    return out


def profile_antideriv(x, which="f"):
    """int_0^x of the profile (phi only for x >= 0)."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    ia, ib = airy_integral(x / _CBRT3)
    if which == "f":
        out = np.pi * ia
    elif which == "phi":
        out = np.where(x >= 0.0, np.pi * ib, 0.0)
    else:
        raise ValueError(f"unknown profile {which!r}")
    if scalar:
        return float(out[0])
    return out


def fundamental(x, t, xi, eta, kind="U", x_order=0):
    """Fundamental solutions of u_t = u_xxx and their x-derivatives.

    U is the f-based kernel, V the phi-based one (zero for x < xi).
    Returns 0 whenever t <= eta.  The x_order-th derivative carries an
    extra (t - eta)^(-x_order/3) factor from self-similarity.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    sigma = t - eta
    scalars = all(np.ndim(a) == 0 for a in (x, t, xi, eta))
    sigma = np.atleast_1d(sigma)
    live = sigma > 0.0
    s3 = np.where(live, sigma, 1.0) ** (1.0 / 3.0)
    z = np.atleast_1d((x - xi) / s3)
    which = "f" if kind == "U" else "phi"
    vals = profile(z, which, x_order)
    out = np.where(live, vals / s3 ** (1 + x_order), 0.0)
    if scalars:
        return float(out[0])
    return out


# ----------------------------------------------------------------------
# oscillatory envelopes (for the singular-quadrature helpers)
# ----------------------------------------------------------------------

PROFILE_OSC_MIN = _ASYM_CUT * _CBRT3  # profiles oscillate cleanly beyond this


def profile_phase(y):
    """Phase Theta(y) with f(y) = Re[env * exp(i Theta)] for large y."""
    return (2.0 / (3.0 * np.sqrt(3.0))) * np.asarray(y, dtype=float) ** 1.5


def profile_phase_deriv(y):
    return np.sqrt(np.asarray(y, dtype=float)) / np.sqrt(3.0)


def _pq_env(zeta, coeff):
    zeta = np.asarray(zeta, dtype=float)
    total = np.zeros(zeta.shape, dtype=complex)
    best = np.full(zeta.shape, np.inf)
    active = np.ones(zeta.shape, dtype=bool)
    for m in range(len(coeff)):
        term = coeff[m] * zeta ** (-float(m))
        mag = np.abs(term)
        active = active & (mag < best)
        total = np.where(active, total + term, total)
        best = np.where(active, mag, best)
    return total


_ENV_AIP = None  # built lazily below


def _env_aip_coeffs():
    # Ai'(-x) = Re[(-S - iR) e^{i phi}]
    c = np.zeros(len(_VK), dtype=complex)
    for m in range(len(_VK)):
        k, rem = divmod(m, 2)
        if rem == 0:
            c[m] = -1j * (-1.0) ** k * _VK[m]
        else:
            c[m] = -((-1.0) ** k) * _VK[m]
    return c


def _env_bip_coeffs():
    # Bi'(-x) = Re[(R - iS) e^{i phi}]
    c = np.zeros(len(_VK), dtype=complex)
    for m in range(len(_VK)):
        k, rem = divmod(m, 2)
        if rem == 0:
            c[m] = (-1.0) ** k * _VK[m]
        else:
            c[m] = -1j * (-1.0) ** k * _VK[m]
    return c


_ENV_AIPC = _env_aip_coeffs()
_ENV_BIPC = _env_bip_coeffs()


def profile_osc_envelope(y, which="f", order=0):
    """Complex envelope E(y) with profile^(order)(y) = Re[E exp(i Theta(y))].

    Valid for y >= PROFILE_OSC_MIN.  Order 2 is derived from the order-0
    envelope through the profile ODE.
    """
    y = np.asarray(y, dtype=float)
    arg = y / _CBRT3
    zeta = (2.0 / 3.0) * arg ** 1.5
    rot = np.exp(-0.25j * np.pi)
    pref = np.pi / _CBRT3
    if order == 0:
        base = _ENV_AI if which == "f" else _ENV_BI
        env = _pq_env(zeta, base) * rot / (_SQRT_PI * arg ** 0.25)
        return pref * env
    if order == 1:
        base = _ENV_AIPC if which == "f" else _ENV_BIPC
        env = _pq_env(zeta, base) * rot * arg ** 0.25 / _SQRT_PI
        return -pref / _CBRT3 * env
    if order == 2:
        return -(y / 3.0) * profile_osc_envelope(y, which, 0)
    raise ValueError("orders 0..2 only")


# ----------------------------------------------------------------------
# integral identities (test support)
# ----------------------------------------------------------------------

def _euler(cells):
    """Euler transform: sum a_k = sum_d (mean-difference row leads) / 2^(d+1)."""
    row = np.asarray(cells, dtype=float)
    total = 0.0
    for _ in range(len(cells)):
        total += row[0] / 2.0
        if len(row) == 1:
            break
        row = 0.5 * (row[1:] + row[:-1])
    return total


def profile_integral_check(which):
    """Quadrature of the profile integral identities.

    which: 'f_neg' -> int_{-inf}^0 f, 'f_pos' -> int_0^inf f,
    'phi_pos' -> int_0^inf phi.  Deliberately independent of
    profile_antideriv: adaptive quadrature, with the oscillatory tails
    summed between sign changes and Euler-accelerated.
    """
    if which == "f_neg":
        val, _ = quad(lambda w: profile(w, "f"), -60.0, 0.0, limit=400)
        return val
    name = "f" if which == "f_pos" else "phi"
    head, _ = quad(lambda w: profile(w, name), 0.0, 10.0, limit=400)
    # locate sign changes of the profile past the head interval
    zeros = []
    w = 10.0
    prev = profile(w, name)
    step = 0.05
    while w < 400.0 and len(zeros) < 260:
        w2 = w + step
        cur = profile(w2, name)
        if prev == 0.0 or (prev < 0) != (cur < 0):
            from scipy.optimize import brentq

            zeros.append(brentq(lambda s: profile(s, name), w, w2, xtol=1e-13))
        prev = cur
        w = w2
    cells = []
    lo = 10.0
    for hi in zeros:
        c, _ = quad(lambda s: profile(s, name), lo, hi, limit=200)
        cells.append(c)
        lo = hi
    # drop the leading partial cell into the head, accelerate the rest
    head += cells[0]
    tail = _euler(cells[1:])
    return head + tail
