"""Power-series estimates of N_i and M_i with explicit error radii.

Every estimate is a rational polynomial in the reciprocals ``1/u_j``. The
exact quantity it approximates, ``N_i / (2 sqrt D)`` or ``2 M_i / sqrt D``,
lies in ``Q(sqrt D)``, so containment in ``series +- radius`` is settled by
an exact sign computation. An interval route with precision escalation is
offered as a cross-check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .arith.interval import RatInterval, decide_sign, interval_of, sqrt_interval
from .arith.quadratic import QuadNum, surd_sign
from .cfrac import ContinuedFraction
from .convergents import convergent_list, norm_table
from .errors import OutOfScopeError
from .indec.core import norm_semiconvergent

__all__ = [
    "ApproxResult",
    "Check",
    "NiBounds",
    "ni_bounds",
    "series_Ni",
    "series_Mi",
    "truncation_residuals",
    "recurrence_residuals",
    "m_identity",
    "global_floor",
    "check_field",
]


def _c(cf: ContinuedFraction, i: int) -> QuadNum:
    """The tail ``c_i`` in ``Q(sqrt D)``."""
    if i == 0:
        return QuadNum(0, 1, 1, cf.D)
    return QuadNum(cf.P(i), 1, cf.Q(i), cf.D)


def _inv_c(cf: ContinuedFraction, i: int) -> QuadNum:
    """``1/c_i = (sqrt D - P_i) / Q_{i-1}``, with ``Q_{-1} = D``."""
    if i == 0:
        return QuadNum(0, 1, cf.D, cf.D)
    return QuadNum(-cf.P(i), 1, cf.Q(i - 1), cf.D)


def _frac_json(q: Fraction) -> list[str]:
    return [str(q.numerator), str(q.denominator)]


def _frac_load(v) -> Fraction:
    return Fraction(int(v[0]), int(v[1]))


@dataclass(frozen=True)
class ApproxResult:
    """A series estimate and whether the exact value provably lies within it.

    ``series`` and ``bound`` are in normalized units: ``N_i / (2 sqrt D)``
    for target ``N`` and ``2 M_i / sqrt D`` for target ``M``. For the
    degree-1 estimate of ``N_i`` the error has a known sign, so the
    admissible range is ``[series - bound, series)``.
    """

    target: str
    i: int
    degree: int
    series: Fraction
    bound: Fraction
    one_sided: bool
    u_floor: int
    exact: int
    approx_lo: Fraction
    approx_hi: Fraction
    certified: bool
    reason: str | None = None

    @property
    def lo(self) -> Fraction:
        return self.series - self.bound

    @property
    def hi(self) -> Fraction:
        return self.series if self.one_sided else self.series + self.bound

    def as_dict(self) -> dict:
        return {
            "target": self.target,
            "i": str(self.i),
            "degree": str(self.degree),
            "series": _frac_json(self.series),
            "bound": _frac_json(self.bound),
            "one_sided": self.one_sided,
            "u_floor": str(self.u_floor),
            "exact": str(self.exact),
            "approx_lo": _frac_json(self.approx_lo),
            "approx_hi": _frac_json(self.approx_hi),
            "certified": self.certified,
            "reason": self.reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> ApproxResult:
        return cls(
            target=d["target"],
            i=int(d["i"]),
            degree=int(d["degree"]),
            series=_frac_load(d["series"]),
            bound=_frac_load(d["bound"]),
            one_sided=d["one_sided"],
            u_floor=int(d["u_floor"]),
            exact=int(d["exact"]),
            approx_lo=_frac_load(d["approx_lo"]),
            approx_hi=_frac_load(d["approx_hi"]),
            certified=d["certified"],
            reason=d["reason"],
        )

    @classmethod
    def from_json(cls, text: str) -> ApproxResult:
        return cls.from_dict(json.loads(text))


def _inside(value: QuadNum, lo: Fraction, hi: Fraction, method: str, bits: int) -> bool:
    # value is irrational here, so strict and weak inequalities coincide
    if method == "exact":
        return lo <= value <= hi
    if method == "interval":
        return decide_sign(value - lo, bits) >= 0 and decide_sign(hi - value, bits) >= 0
    raise ValueError(f"unknown method {method!r}")


def _scaled(series: Fraction, scale: Fraction, D: int, bits: int) -> tuple[Fraction, Fraction]:
    iv = RatInterval.point(series * scale) * sqrt_interval(D, bits)
    return iv.lo, iv.hi


def global_floor(cf: ContinuedFraction) -> int:
    """``min u_j`` over all ``j >= 0``."""
    return min(cf.u0, min(cf.period))


def _w(cf: ContinuedFraction, j: int) -> Fraction:
    return Fraction(1, cf.u(j))


def series_Ni(
    cf: ContinuedFraction,
    i: int,
    degree: int,
    method: str = "exact",
    precision_bits: int = 256,
    table=None,
) -> ApproxResult:
    """Estimate ``N_i / (2 sqrt D)`` to degree 1, 3 or 5 in the ``1/u_j``.

    Radii: ``(1/u_{i+1}^2)(1/u_i + 1/u_{i+2})`` (one-sided) for degree 1;
    ``10/u^5`` with ``u = min(u_{i-1}, ..., u_{i+3})`` for degree 3;
    ``65/u^7`` with ``u`` the least partial quotient overall for degree 5.
    Radii with ``u < 2`` are not certified.
    """
    tab = table or norm_table(cf)
    if degree == 1:
        if i < 0:
            raise ValueError("degree 1 needs i >= 0")
    elif degree in (3, 5):
        if i < 1:
            raise ValueError(f"degree {degree} needs i >= 1")
    else:
        raise ValueError("degree must be 1, 3 or 5")
    w0, w1, w2 = _w(cf, i), _w(cf, i + 1), _w(cf, i + 2)
    reason = None
    if degree == 1:
        series = w1
        bound = w1 * w1 * (w0 + w2)
        u = min(cf.u(i), cf.u(i + 1), cf.u(i + 2))
    elif degree == 3:
        series = w1 * (1 - w0 * w1 - w1 * w2)
        u = min(cf.u(j) for j in range(i - 1, i + 4))
        bound = Fraction(10, u**5)
    else:
        wm, w3 = _w(cf, i - 1), _w(cf, i + 3)
        t = w0 * w1 + w1 * w2
        series = w1 * (1 - t + t * t + wm * w0 * w0 * w1 + w1 * w2 * w2 * w3)
        u = global_floor(cf)
        bound = Fraction(65, u**7)
    exact = tab.N(i)
    one_sided = degree == 1
    if degree > 1 and u < 2:
        certified, reason = False, f"u = {u} < 2 makes the radius vacuous"
    else:
        value = QuadNum(0, exact, 2 * cf.D, cf.D)  # N_i / (2 sqrt D)
        hi = series if one_sided else series + bound
        certified = _inside(value, series - bound, hi, method, precision_bits)
        if not certified:
            reason = "exact value outside series +- radius"
    lo_s, hi_s = _scaled(series, Fraction(2), cf.D, precision_bits)
    return ApproxResult("N", i, degree, series, bound, one_sided, u, exact, lo_s, hi_s, certified, reason)


def series_Mi(
    cf: ContinuedFraction,
    i: int,
    degree: int = 3,
    method: str = "exact",
    precision_bits: int = 256,
    table=None,
) -> ApproxResult:
    """Estimate ``2 M_i / sqrt D`` for odd ``i >= 1`` with ``u_{i+2}`` even.

    Degree 3 carries the radius ``105/u^5`` (``u`` the least partial
    quotient overall). Degree 1 has no printed radius; the one used is the
    distance to the degree-3 value plus ``105/u^5``.
    """
    if i < 1 or i % 2 == 0:
        raise ValueError(f"M_i needs odd i >= 1, got {i}")
    if cf.u(i + 2) % 2:
        raise OutOfScopeError(f"u_{i + 2} = {cf.u(i + 2)} is odd")
    if degree not in (1, 3):
        raise ValueError("degree must be 1 or 3")
    tab = table or norm_table(cf)
    ua, ub, uc = cf.u(i + 1), cf.u(i + 2), cf.u(i + 3)
    s1 = ub + Fraction(1, ua) + Fraction(1, uc)
    d = Fraction(1, ua) - Fraction(1, uc)
    s3 = s1 - (Fraction(1, cf.u(i) * ua * ua) + Fraction(1, uc * uc * cf.u(i + 4)) + d * d / ub)
    u = global_floor(cf)
    r3 = Fraction(105, u**5)
    series, bound = (s3, r3) if degree == 3 else (s1, abs(s1 - s3) + r3)
    exact = norm_semiconvergent(cf, i, ub // 2, tab)
    reason = None
    if u < 2:
        certified, reason = False, f"u = {u} < 2 makes the radius vacuous"
    else:
        value = QuadNum(0, 2 * exact, cf.D, cf.D)  # 2 M_i / sqrt D
        certified = _inside(value, series - bound, series + bound, method, precision_bits)
        if not certified:
            reason = "exact value outside series +- radius"
    lo_s, hi_s = _scaled(series, Fraction(1, 2), cf.D, precision_bits)
    return ApproxResult("M", i, degree, series, bound, False, u, exact, lo_s, hi_s, certified, reason)


def m_identity(cf: ContinuedFraction, i: int, table=None) -> bool:
    """``4 M_i = u_{i+2}^2 N_{i+1} + 2 (N_{i+2} + N_i)`` as integers."""
    tab = table or norm_table(cf)
    u = cf.u(i + 2)
    m = norm_semiconvergent(cf, i, u // 2, tab)
    return 4 * m == u * u * tab.N(i + 1) + 2 * (tab.N(i + 2) + tab.N(i))


@dataclass(frozen=True)
class NiBounds:
    """Rational brackets of ``(2 sqrt D / c_{i+1})(1 - 1/(c_i c_{i+1}))`` and ``2 sqrt D / c_{i+1}``."""

    i: int
    N: int
    lower: RatInterval
    upper: RatInterval
    holds: bool


def ni_bounds(cf: ContinuedFraction, i: int, precision_bits: int = 256, table=None) -> NiBounds:
    if i < 0:
        raise ValueError("i must be >= 0")
    tab = table or norm_table(cf)
    n = tab.N(i)
    upper = _inv_c(cf, i + 1) * QuadNum(0, 2, 1, cf.D)
    lower = upper * (1 - _inv_c(cf, i) * _inv_c(cf, i + 1))
    holds = lower < n < upper
    return NiBounds(i, n, interval_of(lower, precision_bits), interval_of(upper, precision_bits), holds)


@dataclass(frozen=True)
class Check:
    name: str
    holds: bool
    detail: str = field(default="", compare=False)


def _abs_within(x: QuadNum, radius: Fraction) -> bool:
    return -radius <= x <= radius


def _lemma_a(cf: ContinuedFraction, i: int, ks) -> list[Check]:
    """Truncating ``1/c_i = sum (-1)^j / (u_i^{j+1} c_{i+1}^j)`` after ``k`` terms."""
    u, v = cf.u(i), cf.u(i + 1)
    y = _inv_c(cf, i + 1)
    target = _inv_c(cf, i)
    term = QuadNum(1, 0, u, cf.D)
    partial = QuadNum(0, 0, 1, cf.D)
    out = []
    k = 0
    for kk in sorted(ks):
        while k < kk:
            partial = partial + term
            term = term * y * Fraction(-1, u)
            k += 1
        ok = _abs_within(target - partial, Fraction(1, u ** (k + 1) * v**k))
        out.append(Check(f"a(k={k})", ok))
    return out


def _lemma_bcd(cf: ContinuedFraction, i: int) -> list[Check]:
    u0, u1, u2 = cf.u(i), cf.u(i + 1), cf.u(i + 2)
    inv = _inv_c(cf, i)
    sq = inv * inv
    b_series = Fraction(1, u0) * (1 - Fraction(1, u0 * u1))
    b_rad = Fraction(1, u0 * u0 * u1 * u1) * (Fraction(1, u0) + Fraction(1, u2))
    c_rad = Fraction(2, u0**3 * u1)
    d_series = Fraction(1, u0 * u0) * (1 - Fraction(2, u0 * u1))
    d_rad = Fraction(2, u0**4 * u1 * u1)
    # the printed radius for d is too small (D = 2, i = 1 already breaks it);
    # expanding (1 + z)^-2 with z = 1/(u_i c_{i+1}) gives the one-sided
    # error 0 <= err <= 3/(u_i^4 u_{i+1}^2) + 2/(u_i^3 u_{i+1}^2 u_{i+2})
    d_err = sq - d_series
    d_fix = Fraction(3, u0**4 * u1 * u1) + Fraction(2, u0**3 * u1 * u1 * u2)
    return [
        Check("b", _abs_within(inv - b_series, b_rad)),
        Check("c", _abs_within(sq - Fraction(1, u0 * u0), c_rad)),
        Check("d", _abs_within(d_err, d_rad)),
        Check("d_corrected", 0 <= d_err <= d_fix),
    ]


def truncation_residuals(cf: ContinuedFraction, i: int, k: int) -> list[Check]:
    """Exact checks of the truncation error bounds for ``1/c_i`` and ``1/c_i^2``.

    ``a`` bounds the ``k``-term truncation by ``1/(u_i^{k+1} u_{i+1}^k)``;
    ``b``, ``c``, ``d`` are the three fixed expansions with their printed
    radii, and ``d_corrected`` is ``d`` with a radius that actually holds.
    """
    if i < 0 or k < 1:
        raise ValueError("need i >= 0 and k >= 1")
    return _lemma_a(cf, i, [k]) + _lemma_bcd(cf, i)


def recurrence_residuals(cf: ContinuedFraction, i: int, values: tuple[int, int, int, int] | None = None) -> list[Check]:
    """The four recurrence facts at index ``i``, each decided exactly.

    ``values = (N_{i-1}, N_i, T_i, N(alpha_i))`` may be supplied by a caller
    that already ran the convergent recurrence; by default they are computed
    from ``p_i, q_i`` directly.

    * a: ``1/c_i`` agrees with its truncated series for ``k = 1..4``;
    * b: ``T_i = (-1)^(i+1) sqrt D - N(alpha_i) c_{i+1}``;
    * c: ``N_i c_{i+1}^2 = 2 sqrt D c_{i+1} - N_{i-1}``;
    * d: ``N_i / c_{i+2} < sqrt D``.
    """
    if i < 0:
        raise ValueError("i must be >= 0")
    D = cf.D
    if values is None:
        ps, qs = convergent_list(cf, i)
        p, q, pp, qp = ps[i + 1], qs[i + 1], ps[i], qs[i]
        signed = p * p - D * q * q
        n_prev = 1 if i == 0 else abs(pp * pp - D * qp * qp)
        values = (n_prev, abs(signed), p * pp - D * q * qp, signed)
    n_prev, n, t, signed = values
    rootD = QuadNum(0, 1, 1, D)
    c1, c2 = _c(cf, i + 1), _c(cf, i + 2)
    sgn = -1 if i % 2 == 0 else 1
    a_ok = all(ch.holds for ch in _lemma_a(cf, i, range(1, 5)))
    b_ok = (rootD * sgn - c1 * signed - t).is_zero()
    c_ok = (c1 * c1 * n - rootD * c1 * 2 + n_prev).is_zero()
    d_ok = c2 * rootD > n
    return [Check("a", a_ok), Check("b", b_ok), Check("c", c_ok), Check("d", d_ok)]


def _window(cf: ContinuedFraction) -> range:
    """One period of indices, shifted past ``u_0``.

    The expansions are statements about the purely periodic part: at
    ``i = 1`` the degree-5 polynomial would read ``u_0`` where the recursion
    really sees ``u_s = 2 u_0``. ``M_i`` also needs ``i`` odd, so an odd
    period length calls for two periods.
    """
    s = cf.s
    return range(s + 1, 2 * s + 1) if s % 2 == 0 else range(s + 1, 3 * s + 1)


def _mul(x, y, D):
    return (x[0] * y[0] + D * x[1] * y[1], x[0] * y[1] + x[1] * y[0], x[2] * y[2])


def _sub(x, y):
    return (x[0] * y[2] - y[0] * x[2], x[1] * y[2] - y[1] * x[2], x[2] * y[2])


def _cmp(x, n, d, D) -> int:
    """Sign of ``(x0 + x1 sqrt D)/x2 - n/d`` for positive ``x2, d``."""
    return surd_sign(x[0] * d - n * x[2], x[1] * d, D)


def _scaled_root_in(k2: int, scale: int, D: int, lo, hi) -> bool:
    """Whether ``sqrt(k2 / (scale * D))`` lies in ``[lo, hi]``; endpoints are ``(num, den)``."""
    # sqrt(k2/(scale D)) >= n/d  <=>  n <= 0 or k2 d^2 >= scale D n^2
    ln, ld = lo
    hn, hd = hi
    if ln > 0 and k2 * ld * ld < scale * D * ln * ln:
        return False
    return hn > 0 and k2 * hd * hd <= scale * D * hn * hn


def check_field(cf: ContinuedFraction, kmax: int = 4) -> dict:
    """Run every series and truncation check over one period; return tallies.

    Same checks as :func:`ni_bounds`, :func:`truncation_residuals`,
    :func:`series_Ni` and :func:`series_Mi`, but on bare integer triples
    ``(a, b, d) = (a + b sqrt D)/d`` and integer numerators, which keeps a
    sweep over many fields affordable. The result maps a check family to
    ``[passed, failed, skipped]``, plus ``"failures"``: a list of
    ``(family, i)`` for anything that failed.
    """
    tab = norm_table(cf)
    D = cf.D
    tally: dict = {}
    failures = []

    def mark(name, i, ok):
        t = tally.setdefault(name, [0, 0, 0])
        if ok is None:
            t[2] += 1
        elif ok:
            t[0] += 1
        else:
            t[1] += 1
            failures.append((name, i))

    ug = global_floor(cf)
    u = cf.u
    for i in _window(cf):
        n = tab.N(i)
        ua, ub, uc, ud, ue = u(i - 1), u(i), u(i + 1), u(i + 2), u(i + 3)
        x = (-cf.P(i), 1, cf.Q(i - 1))  # 1/c_i
        y = (-cf.P(i + 1), 1, cf.Q(i))  # 1/c_{i+1}

        up = (2 * D, 2 * y[0], y[2])
        xy = _mul(x, y, D)
        low = _mul(up, (xy[2] - xy[0], -xy[1], xy[2]), D)
        mark("ni_bounds", i, _cmp(up, n, 1, D) > 0 and _cmp(low, n, 1, D) < 0)

        # lemma a: 1/c_i against its truncated series, k = 1..kmax
        term = (1, 0, ub)
        part = (0, 0, 1)
        for k in range(1, kmax + 1):
            part = (part[0] * term[2] + term[0] * part[2], part[1] * term[2] + term[1] * part[2], part[2] * term[2])
            t = _mul(term, y, D)
            term = (-t[0], -t[1], t[2] * ub)
            r = _sub(x, part)
            rd = ub ** (k + 1) * uc**k
            mark("lemma_a", i, _cmp(r, 1, rd, D) <= 0 and _cmp(r, -1, rd, D) >= 0)

        sq = _mul(x, x, D)
        den = ub**3 * uc * uc * ud
        ctr = (ub * uc - 1) * ub * uc * ud
        mark("lemma_b", i, _cmp(x, ctr - ub - ud, den, D) >= 0 and _cmp(x, ctr + ub + ud, den, D) <= 0)
        den = ub**3 * uc
        mark("lemma_c", i, _cmp(sq, ub * uc - 2, den, D) >= 0 and _cmp(sq, ub * uc + 2, den, D) <= 0)
        den = ub**4 * uc * uc
        ctr = (ub * uc - 2) * ub * uc
        mark("lemma_d", i, _cmp(sq, ctr - 2, den, D) >= 0 and _cmp(sq, ctr + 2, den, D) <= 0)
        mark("lemma_d_corrected", i, _cmp(sq, ctr * ud, den * ud, D) >= 0 and _cmp(sq, ctr * ud + 3 * ud + 2 * ub, den * ud, D) <= 0)

        # series for N_i / (2 sqrt D); value^2 = n^2 / (4 D)
        n2 = n * n
        sd = ub * uc * uc * ud
        sn = ub * uc * ud - ub - ud
        mark("N_deg1", i, _scaled_root_in(n2, 4, D, (sn, sd), (1, uc)))
        uw = min(ua, ub, uc, ud, ue)
        if uw < 2:
            mark("N_deg3", i, None)
        else:
            p = uw**5
            mark("N_deg3", i, _scaled_root_in(n2, 4, D, (sn * p - 10 * sd, sd * p), (sn * p + 10 * sd, sd * p)))
        if ug < 2:
            mark("N_deg5", i, None)
        else:
            L = ua * ub * ub * uc * uc * ud * ud * ue
            bd = ub + ud
            bn = L - bd * ua * ub * uc * ud * ue + bd * bd * ua * ue + uc * ud * ud * ue + ua * ub * ub * uc
            p, q = ug**7, L * uc
            mark("N_deg5", i, _scaled_root_in(n2, 4, D, (bn * p - 65 * q, q * p), (bn * p + 65 * q, q * p)))

        if i % 2 and ud % 2 == 0:
            mark("M_identity", i, m_identity(cf, i, tab))
            if ug < 2:
                mark("M_deg1", i, None)
                mark("M_deg3", i, None)
                continue
            m = norm_semiconvergent(cf, i, ud // 2, tab)
            # 2 M / sqrt D; value^2 = 4 m^2 / D
            s1 = ud + Fraction(1, uc) + Fraction(1, ue)
            dd = Fraction(1, uc) - Fraction(1, ue)
            s3 = s1 - (Fraction(1, ub * uc * uc) + Fraction(1, ue * ue * u(i + 4)) + dd * dd / ud)
            r3 = Fraction(105, ug**5)
            for name, ctr, rad in (("M_deg1", s1, abs(s1 - s3) + r3), ("M_deg3", s3, r3)):
                lo, hi = ctr - rad, ctr + rad
                mark(name, i, _scaled_root_in(4 * m * m, 1, D, (lo.numerator, lo.denominator), (hi.numerator, hi.denominator)))
    tally["failures"] = failures
    return tally
