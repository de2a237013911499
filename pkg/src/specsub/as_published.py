"""Closed forms exactly as printed, kept apart from the oracle-backed code.

Nothing here is trusted.  Each function evaluates one printed expression
verbatim so that :mod:`specsub.verify` can compare it with an independent
oracle and report agreement or a discrepancy.  Where a printed expression
excludes some ``k`` (a vanishing denominator) the function raises
:class:`~specsub.errors.UnsupportedK` instead of extrapolating.

Logarithmic variants return natural logs; exponents are evaluated with
:class:`fractions.Fraction` so that large ``r`` does not lose integrality.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import UnsupportedK

F = Fraction


def _f(x) -> float:
    return float(x)


# -- random walks -----------------------------------------------------------

def printed_sign_hitting_time(sigma: np.ndarray, vectors: np.ndarray, degrees: np.ndarray,
                         m: int, i: int, j: int) -> float:
    """Spectral hitting time with the cross term added, as printed."""
    total = 0.0
    for a in range(1, sigma.size):
        va = vectors[:, a]
        total += (va[j] ** 2 / degrees[j] + va[i] * va[j] / math.sqrt(degrees[i] * degrees[j])) / (1.0 - sigma[a])
    return 2.0 * m * total


def sk_case3_reverse_hitting(h: np.ndarray, m: int, k: int,
                             st: tuple[int, int], pq: tuple[int, int]) -> float:
    """``E_j T_i`` for two subdivision vertices, as printed.

    ``i`` has parent edge ``{s, t}`` and ``j`` has ``{p, q}``.
    """
    s, t = st
    p, q = pq
    return 2 * k * m + h[p, s] + h[q, s] + h[p, t] + h[q, t] - h[s, p] - h[p, s]


def sk_commute(commute: np.ndarray, m: int, k: int, case: int,
               i: int | tuple[int, int], j: int | tuple[int, int]) -> float:
    """Printed commute-time closed form for ``S_k(G)``.

    ``commute`` holds ``C(G) = 2m * Omega(G)``.  Case 1 takes two original
    vertices, case 2 a parent edge ``(s, t)`` and an original vertex, case 3
    two parent edges.
    """
    if case == 1:
        omega = commute[i, j] / (2.0 * m)
        return 4.0 * m / k * omega
    if case == 2:
        s, t = i
        return m * (k + 2 * commute[s, j] + 2 * commute[t, j] - commute[s, t]) / k
    if case == 3:
        s, t = i
        p, q = j
        return m * (2 * k + commute[s, p] + commute[s, q] + commute[t, p] + commute[t, q]
                    - commute[p, q] - commute[s, t]) / k
    raise ValueError(f"case must be 1, 2 or 3, got {case}")


# -- iterated S_k spectra -------------------------------------------------------

def sk_iterated_multiplicities(n: int, m: int, k: int, r: int) -> tuple[int, int]:
    """Printed multiplicities (f1 family, eigenvalue 1) of the ``r``-th iterate, ``r > 1``."""
    from .transforms import predicted_sizes

    if r < 2:
        raise ValueError("the printed expression covers r > 1 only")
    family = 2 ** (r - 1) * (n - 1)
    for j in range(2, r + 1):
        v, e = predicted_sizes(n, m, k, r - j, "sk")
        family += 2 ** (j - 2) * (k * e - v + 2)
    v, e = predicted_sizes(n, m, k, r - 1, "sk")
    return family, k * e - v + 2


# -- S_k invariants ---------------------------------------------------------------

def sk_kf_one_step(kf: float, n: int, m: int, k: int) -> float:
    return 8 * k * kf + 2 * k * m * (1 + 2 * k * m - 2 * n)


def sk_kf_k1_step(kf: float, n: int, m: int) -> float:
    return 8 * kf + 2 * m * (1 + 2 * m - 2 * n)


def sk_kf_closed(kf: float, n: int, m: int, k: int, r: int) -> float:
    """Closed form for ``Kf*(S_k^r(G))``, valid for ``k > 2``."""
    if k <= 2:
        raise UnsupportedK(f"closed form requires k > 2, got k={k}")
    k_, m_ = F(k), F(m)
    rest = (F((2 * k) ** r * (4 ** r - 1), 3) * (m_ - 2 * m_ * n)
            + k_ * (4 * k_) ** r * (k_ ** r - 2 ** r) / (k_ - 2) * m_ ** 2
            - k_ * (2 * k_) ** r * (4 ** r - 2 * k_ * (4 ** r - 1) + 3 * (2 * k_) ** r - 4)
            / (3 * (k_ - 2) * (2 * k_ - 1)) * m_ ** 2)
    return (8 * k) ** r * kf + _f(rest)


def sk_kf_k2_closed(kf: float, n: int, m: int, r: int) -> float:
    """Closed form for ``Kf*(S_2^r(G))``."""
    q = F(4) ** r
    rest = (q * (q - 1) / 3 * m - 2 * q * (q - 1) / 3 * m * n
            + 2 * q * (2 * (q - 1) + 3 * r * q) / 9 * m ** 2)
    return 16 ** r * kf + _f(rest)


def sk_ke_one_step(ke: float, n: int, m: int, k: int) -> float:
    return 4 * ke + (1 + 2 * k * m - 2 * n) / 2


def sk_ke_closed(ke: float, n: int, m: int, k: int, r: int) -> float:
    """Closed form for ``Ke(S_k^r(G))``, valid for ``k > 2``."""
    if k <= 2:
        raise UnsupportedK(f"closed form requires k > 2, got k={k}")
    k_ = F(k)
    rest = (F(4 ** r - 1, 6) * (1 - 2 * n)
            + F(2) ** (r - 1) * k_ * (k_ ** r - 2 ** r) / (k_ - 2) * m
            - k_ * (4 ** r - 2 * k_ * (4 ** r - 1) + 3 * (2 * k_) ** r - 4)
            / (6 * (k_ - 2) * (2 * k_ - 1)) * m)
    return 4 ** r * ke + _f(rest)


def sk_ke_k2_closed(ke: float, n: int, m: int, r: int) -> float:
    q = F(4) ** r
    rest = (q - 1) / 6 * (1 - 2 * n) + (2 * (q - 1) + 3 * r * q) / 9 * m
    return 4 ** r * ke + _f(rest)


def sk_log_tau(log_tau: float, n: int, m: int, k: int, r: int) -> float:
    """Log of the printed spanning-tree count of ``S_k^r(G)``."""
    two_exp = F(k * m * (1 - (2 * k) ** r), 1 - 2 * k) - r
    k_exp = n * r + F(k * m * ((2 * k) ** r - 2 * k * r + r - 1), (1 - 2 * k) ** 2) - r
    return _f(two_exp) * math.log(2) + _f(k_exp) * math.log(k) + log_tau


def sk_log_tau_one_step(log_tau: float, n: int, m: int, k: int) -> float:
    """Log of ``2^(km-1) k^(n-1) tau(G)``."""
    return (k * m - 1) * math.log(2) + (n - 1) * math.log(k) + log_tau


# -- S_2k invariants ----------------------------------------------------------------

def s2k_kf_one_step(kf: float, n: int, m: int, k: int) -> float:
    return 27 * k * kf + 16 * k ** 2 * m ** 2 - 16 * k * m * n + 11 * k * m


def s2k_kf_closed(kf: float, n: int, m: int, k: int, r: int) -> float:
    """Closed form for ``Kf*(S_2k^r(G))``, valid for ``k != 3``."""
    if k == 3:
        raise UnsupportedK("closed form excludes k = 3")
    k_ = F(k)
    rest = (16 * k_ ** 2 * (9 * k_) ** (r - 1) * (k_ ** r - 3 ** r) / (k_ - 3) * m ** 2
            + 11 * k_ ** 2 * (3 * k_) ** (r - 1) * (9 ** r - 1) / 8 * m
            - 6 * k_ ** 2 * (3 * k_) ** (r - 2) * (9 ** r - 1) * n
            + 4 * k_ ** 3 * (3 * k_) ** (r - 2) * (9 - 9 ** r + 3 * k_ * (9 ** r - 1) - 8 * (3 * k_) ** r)
            / ((3 * k_ - 1) * (k_ - 3)) * m ** 2)
    return (27 * k) ** r * kf + _f(rest)


def s2k_kf_k3_closed(kf: float, n: int, m: int, r: int) -> float:
    """Closed form for ``Kf*(S_6^r(G))`` (``k = 3``)."""
    c = F(3) ** (2 * r - 1)
    rest = (11 * c * (9 ** r - 1) / 8 * m - 2 * c * (9 ** r - 1) * m * n
            + c * (3 * (9 ** r - 1) + 8 * r * 9 ** r) / 2 * m ** 2)
    return 81 ** r * kf + _f(rest)


def s2k_ke_one_step(ke: float, n: int, m: int, k: int) -> float:
    return 9 * ke + (16 * k * m - 16 * n + 11) / 6


def s2k_ke_closed(ke: float, n: int, m: int, k: int, r: int) -> float:
    """Closed form for ``Ke(S_2k^r(G))``, valid for ``k != 3``."""
    if k == 3:
        raise UnsupportedK("closed form excludes k = 3")
    k_ = F(k)
    rest = (8 * k_ * F(3) ** (r - 2) * (k_ ** r - 3 ** r) / (k_ - 3) * m
            - F(9 ** r - 1, 3 * m) * n
            + 11 * k_ * (9 ** r - 1) / 48
            + 2 * k_ * (9 - 9 ** r + 3 * k_ * (9 ** r - 1) - 8 * (3 * k_) ** r)
            / (9 * (3 * k_ - 1) * (k_ - 3)) * m)
    return 9 ** r * ke + _f(rest)


def s2k_ke_k3_closed(ke: float, n: int, m: int, r: int) -> float:
    rest = F(9 ** r - 1, 48) * (11 - 16 * n) + F(3 * (9 ** r - 1) + 8 * r * 9 ** r, 12) * m
    return 9 ** r * ke + _f(rest)


def phi(r: int, k: int, m: int) -> Fraction:
    return F(2 * k * m * (r - 1 - 3 * k * r + 3 ** r * k ** r), (3 * k - 1) ** 2)


def s2k_log_tau(log_tau: float, n: int, m: int, k: int, r: int) -> float:
    """Log of the printed spanning-tree count of ``S_2k^r(G)``."""
    p = phi(r, k, m)
    half_exp = r * (1 - n) - p
    three_half_exp = r * (2 - n) - p
    three_exp = F(k * m * (3 ** r * k ** r - 1), 3 * k - 1) - 1
    k_exp = n * r - 1 + p
    return (_f(half_exp) * math.log(0.5) + _f(three_half_exp) * math.log(1.5)
            + _f(three_exp) * math.log(3) + _f(k_exp) * math.log(k) + log_tau)
