"""Continued-fraction-free search for indecomposables.

Embed ``Z[sqrt D]`` in the plane as ``beta -> (beta, beta')``. A totally
positive ``alpha`` decomposes exactly when the open box
``(0, alpha) x (0, alpha')`` holds a lattice point. Lattice points of such
boxes (and of larger boxes covering a fundamental domain) are listed
exhaustively: the box is scaled to a square, the lattice basis is
Lagrange-reduced for the resulting integer quadratic form, and every
coefficient pair inside the circumscribed ellipse is enumerated.
"""

from __future__ import annotations

from functools import cmp_to_key
from math import isqrt

from ..arith.quadratic import QuadInt, surd_sign

__all__ = [
    "ellipse_points",
    "find_decomposition",
    "is_decomposable",
    "is_indecomposable",
    "brute_force_indecomposables",
    "unit_reduce",
    "canonical_rep",
    "domain_indecomposables",
]


def _form(D: int, gx: int, gy: int):
    """Bilinear form ``(v, w) -> 1/2 Tr(v w g)`` with ``g = gx + gy*sqrt(D)``."""

    def F(v, w):
        x = v[0] * w[0] + D * v[1] * w[1]
        y = v[0] * w[1] + v[1] * w[0]
        return x * gx + D * y * gy

    return F


def _lagrange(F, e1, e2):
    n1, n2 = F(e1, e1), F(e2, e2)
    if n2 < n1:
        e1, e2, n1, n2 = e2, e1, n2, n1
    while True:
        m = F(e1, e2)
        mu = (2 * m + n1) // (2 * n1)
        if mu:
            e2 = (e2[0] - mu * e1[0], e2[1] - mu * e1[1])
            n2 = F(e2, e2)
        if n2 < n1:
            e1, e2, n1, n2 = e2, e1, n2, n1
        else:
            return e1, e2


def ellipse_points(D: int, gamma: QuadInt, bound: int, basis=None):
    """All ``beta = b + c*sqrt(D)`` with ``1/2 Tr(beta^2 gamma'^2) <= bound``.

    For ``bound = t^2 N(gamma)^2`` this ellipse circumscribes the box
    ``[0, t*gamma] x [0, t*gamma']``. Returns ``(points, reduced_basis)``; a
    basis from a similar earlier box may be passed to warm-start reduction.
    """
    g = gamma.conjugate() * gamma.conjugate()
    F = _form(D, g.x, g.y)
    e1, e2 = basis or ((1, 0), (0, 1))
    e1, e2 = _lagrange(F, e1, e2)
    g11, g12, g22 = F(e1, e1), F(e1, e2), F(e2, e2)
    det = g11 * g22 - g12 * g12
    top = isqrt(g11 * bound // det)
    pts = []
    for k2 in range(-top, top + 1):
        rest = g11 * bound - det * k2 * k2
        if rest < 0:
            continue
        w = isqrt(rest)
        shift = g12 * k2
        lo = -((w + shift) // g11)  # ceil((-w - shift)/g11)
        hi = (w - shift) // g11
        for k1 in range(lo, hi + 1):
            pts.append((k1 * e1[0] + k2 * e2[0], k1 * e1[1] + k2 * e2[1]))
    return pts, (e1, e2)


def find_decomposition(alpha: QuadInt) -> QuadInt | None:
    """Some ``beta`` with ``0 < beta < alpha`` in both embeddings, or None."""
    if not alpha.is_totally_positive():
        raise ValueError(f"{alpha} is not totally positive")
    D = alpha.D
    n = alpha.norm()
    pts, _ = ellipse_points(D, alpha, n * n)
    for b, c in pts:
        beta = QuadInt(b, c, D)
        if beta.is_totally_positive() and (alpha - beta).is_totally_positive():
            return beta
    return None


def is_decomposable(alpha: QuadInt) -> bool:
    return find_decomposition(alpha) is not None


def is_indecomposable(alpha: QuadInt) -> bool:
    return alpha.is_totally_positive() and find_decomposition(alpha) is None


def brute_force_indecomposables(D: int, trace_bound: int) -> set[QuadInt]:
    """Every indecomposable ``x + y*sqrt(D)`` with ``2x <= trace_bound``, by exhaustive search.

    Each candidate is tested against all ``beta = b + c*sqrt(D)`` with
    ``1 <= b <= x - 1``; nothing beyond total positivity is assumed.
    """
    out = set()
    for x in range(1, trace_bound // 2 + 1):
        ymax = isqrt((x * x - 1) // D) if x * x > D else 0
        for y in range(-ymax, ymax + 1):
            alpha = QuadInt(x, y, D)
            if not alpha.is_totally_positive():
                continue
            if not _naive_decomposable(alpha):
                out.add(alpha)
    return out


def _naive_decomposable(alpha: QuadInt) -> bool:
    x, y, D = alpha.x, alpha.y, alpha.D
    for b in range(1, x):
        cmax = isqrt((b * b - 1) // D) if b * b > D else 0
        for c in range(-cmax, cmax + 1):
            if QuadInt(b, c, D).is_totally_positive() and QuadInt(x - b, y - c, D).is_totally_positive():
                return True
    return False


def unit_reduce(alpha: QuadInt, eps: QuadInt) -> QuadInt:
    """The unit multiple ``eps^k * alpha`` with ``1 <= alpha/alpha' < eps^2``.

    ``alpha/alpha' >= 1`` iff the sqrt(D) coefficient is nonnegative, and
    multiplying by ``eps`` scales the ratio by ``eps^2``.
    """
    inv = eps.conjugate()
    while alpha.y < 0:
        alpha = alpha * eps
    while True:
        down = alpha * inv
        if down.y < 0:
            return alpha
        alpha = down


def canonical_rep(alpha: QuadInt, eps: QuadInt) -> QuadInt:
    """Representative of the orbit of ``alpha`` under units and conjugation."""
    a = unit_reduce(alpha, eps)
    b = unit_reduce(alpha.conjugate(), eps)
    return a if (a.x, a.y) <= (b.x, b.y) else b


def _pareto_minimal(D: int, pts):
    """Points not strictly dominated (in both embeddings) by another point of ``pts``."""

    def by_first(p, q):
        return surd_sign(p[0] - q[0], p[1] - q[1], D)

    pts = sorted(pts, key=cmp_to_key(by_first))
    out = []
    low = None
    for p in pts:
        # second embedding b - c*sqrt(D) strictly below the running minimum?
        if low is None or surd_sign(p[0] - low[0], low[1] - p[1], D) < 0:
            out.append(p)
            low = p
    return out


def domain_indecomposables(D: int, eps: QuadInt, norm_bound: int | None = None) -> set[QuadInt]:
    """Canonical representatives of all indecomposables, found without continued fractions.

    Covers ``{alpha >> 0 : 1 <= alpha/alpha' < eps^2, N(alpha) <= norm_bound}``
    (``norm_bound`` defaults to ``D``, the Dress-Scharlau bound) by boxes
    ``[0, t gamma] x [0, t gamma']`` with ``gamma`` running over powers of
    ``delta = 2*floor(sqrt D) + 2 + sqrt(D)``, whose ratio is below 3. With
    ``t^2 = 2 * norm_bound / N(gamma)`` consecutive boxes overlap on the
    hyperbola, so the union covers the domain. Every point of a box that is
    minimal for the product order is indecomposable, because the box is an
    order ideal of the positive quadrant.
    """
    bound = D if norm_bound is None else norm_bound
    r = isqrt(D)
    delta = QuadInt(2 * r + 2, 1, D)
    eps2 = eps * eps
    gamma = QuadInt(1, 0, D)
    basis = None
    found = set()
    while True:
        n = gamma.norm()
        pts, basis = ellipse_points(D, gamma, 2 * bound * n, basis)
        tp = [(b, c) for b, c in pts if b > 0 and b * b > D * c * c]
        for b, c in _pareto_minimal(D, tp):
            found.add(canonical_rep(QuadInt(b, c, D), eps))
        # stop once this box reaches ratio eps^2: 2*gamma/gamma' >= eps^2
        if (gamma * gamma * 2 - eps2 * n).sign() >= 0:
            return found
        gamma = gamma * delta
