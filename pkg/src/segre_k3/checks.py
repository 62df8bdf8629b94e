"""Named verification checks over parameter sweeps.

Each check is split into points (one parameter assignment each) so a sweep
can fan out over worker processes; :func:`run_sweep` always returns reports
in canonical parameter order.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from . import lehn, moduli, segre
from .arith import binom_int
from .series import TruncatedSeries, exp_series, revert, revert_lagrange

__all__ = ["CheckReport", "CHECKS", "DEFAULTS", "points_for", "run_point", "run_sweep"]


@dataclass
class CheckReport:
    check: str
    params: dict
    passed: bool
    witness: dict | None = None
    elapsed_ms: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError("a failing report needs a witness")

    def to_json_obj(self, timing: bool = False) -> dict:
        obj = {
            "check": self.check,
            "params": self.params,
            "verdict": "pass" if self.passed else "fail",
            "witness": self.witness,
        }
        if timing:
            obj["elapsed_ms"] = round(self.elapsed_ms, 3)
        return obj


def _witness(index: dict, left, right) -> dict:
    return {"index": index, "left": str(left), "right": str(right)}


def _series_witness(report: lehn.IdentityReport, **extra) -> dict | None:
    if report.match:
        return None
    return _witness({**extra, "coefficient": report.first_mismatch}, report.left, report.right)


def _compare(left: TruncatedSeries, right: TruncatedSeries, **index) -> dict | None:
    for n in range(min(left.order, right.order)):
        if left[n] != right[n]:
            return _witness({**index, "coefficient": n}, left[n], right[n])
    return None


# -- individual checks: params -> witness (None means pass) ------------------


def _k3(ell: int, n_lo: int, n_hi: int, order: int):
    s = lehn.lehn_series(lehn.lehn_constants(lehn.k3(ell)), order)
    for n in range(n_lo, n_hi + 1):
        if s[n] != segre.segre_top(ell, n):
            return _witness({"ell": ell, "n": n}, s[n], segre.segre_top(ell, n))
    return None


def _window(n: int):
    for ell in segre.vanishing_window(n):
        v = segre.segre_top(ell, n)
        if v != 0:
            return _witness({"n": n, "ell": ell}, v, 0)
    return None


def _reconstruct(n: int):
    a, b = segre.reconstruct_alpha_top(n), segre.alpha_top_poly(n)
    for k in range(max(a.degree, b.degree) + 1):
        if a.coeff(k) != b.coeff(k):
            return _witness({"n": n, "power": k}, a.coeff(k), b.coeff(k))
    return None


def shhs_det_formula(n: int) -> int:
    """Determinant of the literal matrix ``(-1)^(j+1) binom(2i-1, j)``.

    ``det binom(m_i, j) = prod_{i<j} (m_j - m_i) / prod_j j!`` with
    ``m_i = 2i - 1`` gives ``2^(n(n-1)/2)``; the column signs contribute
    ``(-1)^(n(n+1)/2)``.
    """
    return (-1) ** (n * (n + 1) // 2) * 2 ** (n * (n - 1) // 2)


def _shhs(n: int):
    d = segre.det_exact(segre.lehn_matrix(n))
    # first row of lehn_matrix is the negated literal first row
    expected = -shhs_det_formula(n)
    if d == 0 or d != expected:
        return _witness({"n": n}, d, expected)
    return None


def _ident(ell: int, order: int):
    r = lehn.ident_check(ell, order)
    if not r.match:
        return _series_witness(r, ell=ell, identity="ident")
    p = lehn.pascal_check(ell, order)
    return _series_witness(p, ell=ell, identity="pascal")


def _schur(order: int):
    t = TruncatedSeries.var(order)
    f = t * (1 + t) ** 2
    newton, lagrange = revert(f), revert_lagrange(f)
    closed = TruncatedSeries(
        [0] + [Fraction(binom_int(-2 * n - 2, n), n + 1) for n in range(order - 1)], order
    )
    return _compare(newton, lagrange, pair="newton-lagrange") or _compare(
        newton, closed, pair="newton-closed"
    )


def _corollary1(ell: int, order: int):
    return _compare(lehn.abelian_closed(ell, order), lehn.ktrivial_series(lehn.abelian(ell), order), ell=ell)


def _corollary2(ell: int, order: int):
    return _series_witness(lehn.enriques_check(ell, order), ell=ell)


def _corollary3(chi: int, order: int):
    rhs = exp_series(lehn.a4_series(order) * (12 * chi))
    return _compare(lehn.elliptic_series(chi, order), rhs, chi=chi)


def _lemma3(n: int):
    closed = segre.alpha_vector(n)
    for ell in segre.vanishing_window(n):
        m = segre.recursion_matrix(ell, n)
        for v in segre.nullspace(m):
            if v[-1] != 0:
                return _witness({"n": n, "ell": ell, "part": "kernel-last"}, v[-1], 0)
        if closed is not None:
            vec = [p(ell) for p in closed]
            image = m.apply(vec)
            for row, val in enumerate(image):
                if val != 0:
                    return _witness({"n": n, "ell": ell, "row": row}, val, 0)
    return None


def _alpha_sum(n: int):
    closed = segre.alpha_vector(n)
    if closed is None:
        raise ValueError("closed forms for every alpha_i are only known for n <= 2")
    total = sum(closed[1:], closed[0])
    for k in range(total.degree + 1):
        if total.coeff(k) != 0:
            return _witness({"n": n, "power": k}, total.coeff(k), 0)
    return None


def _a1a4(ell: int, order: int):
    if lehn.a1_series(order)[1] != 1:
        return _witness({"ell": ell, "coefficient": 1, "series": "A1"}, lehn.a1_series(order)[1], 1)
    lhs = exp_series(lehn.a1_series(order) * (2 * ell) + lehn.a4_series(order) * 24)
    rhs = lehn.lehn_series(lehn.lehn_constants(lehn.k3(ell)), order)
    return _compare(lhs, rhs, ell=ell)


def _asymptotics(n: int):
    lead, sub = lehn.chern_segre_leading(n)
    poly = segre.alpha_next_poly(n)
    # alpha_{n-1} is the coefficient of x y^(2n-1)
    got_lead = lehn.bivariate_coeff(lead, 1, 2 * n - 1) * 2**n
    got_sub = lehn.bivariate_coeff(sub, 1, 2 * n - 1) * 2 ** (n - 1)
    want_lead = Fraction(-(2**n), factorial(n - 1))
    want_sub = Fraction((5 * n - 3) * 2 ** (n - 1), factorial(n - 2))
    for name, got, poly_val, want in (
        ("l^n", got_lead, poly.coeff(n), want_lead),
        ("l^(n-1)", got_sub, poly.coeff(n - 1), want_sub),
    ):
        if not (got == poly_val == want):
            return _witness({"n": n, "term": name}, got, poly_val)
    return None


def _moduli(degree: int):
    rels = moduli.builtin_relations(degree, 1)
    labels = sorted({k for r in rels for k in r.terms})
    rank = moduli.relation_matrix(rels, labels).rank()
    if rank != len(rels):
        return _witness({"degree": degree, "part": "rank"}, rank, len(rels))
    kappa = [k for k in labels if "kappa" in k]
    elim = moduli.eliminate(rels, kappa + ["lambda"])
    for i, r in enumerate(rels):
        rest = moduli.substitute(r, elim.expressions)
        if rest:
            return _witness({"degree": degree, "relation": i}, rest, {})
    return None


@dataclass(frozen=True)
class CheckSpec:
    run: Callable
    axes: tuple[str, ...]
    description: str


CHECKS: dict[str, CheckSpec] = {
    "k3": CheckSpec(_k3, ("ell", "n", "order"), "Lehn series with K3 constants equals 2^n binom(l-2n+2, n)"),
    "window": CheckSpec(_window, ("n",), "top Segre integral vanishes for 2n-2 <= l <= 3n-3"),
    "reconstruct": CheckSpec(_reconstruct, ("n",), "roots and leading term rebuild the closed form"),
    "shhs": CheckSpec(_shhs, ("n",), "beta-system matrix is invertible, with the Vandermonde determinant"),
    "ident": CheckSpec(_ident, ("ell", "order"), "binomial series identity under x = y(1-2y)^2/(1-3y)^3, plus Pascal recursion"),
    "schur": CheckSpec(_schur, ("order",), "Newton reversion of t(1+t)^2 equals Lagrange inversion"),
    "corollary1": CheckSpec(_corollary1, ("ell", "order"), "abelian closed form equals exp(2l A1)"),
    "corollary2": CheckSpec(_corollary2, ("ell", "order"), "Enriques series squared equals the K3 series of degree 4l"),
    "corollary3": CheckSpec(_corollary3, ("chi", "order"), "elliptic closed form equals exp(12 chi A4)"),
    "lemma3": CheckSpec(_lemma3, ("n",), "localization system forces alpha_n = 0 on the window; closed forms lie in the kernel"),
    "alpha-sum": CheckSpec(_alpha_sum, ("n",), "alpha_0 + ... + alpha_n = 0 identically in l"),
    "a1a4": CheckSpec(_a1a4, ("ell", "order"), "exp(2l A1 + 24 A4) equals the K3 Lehn series"),
    "asymptotics": CheckSpec(_asymptotics, ("n",), "two leading coefficients of alpha_{n-1} from the Chern-Segre expansion"),
    "moduli": CheckSpec(_moduli, ("degree",), "relation ledger has full rank and eliminates consistently"),
}

DEFAULTS: dict[str, dict] = {
    "k3": {"ell": (0, 40), "n": (0, 12), "order": 13},
    "window": {"n": (1, 12)},
    "reconstruct": {"n": (1, 8)},
    "shhs": {"n": (1, 12)},
    "ident": {"ell": (-6, 20), "order": 25},
    "schur": {"order": 30},
    "corollary1": {"ell": (0, 12), "order": 15},
    "corollary2": {"ell": (0, 10), "order": 15},
    "corollary3": {"chi": (0, 6), "order": 15},
    "lemma3": {"n": (1, 8)},
    "alpha-sum": {"n": (1, 2)},
    "a1a4": {"ell": (0, 20), "order": 13},
    "asymptotics": {"n": (2, 8)},
    "moduli": {"degree": (2, 8)},
}


def points_for(check: str, ranges: dict) -> list[dict]:
    """Expand ranges into parameter points, in canonical order."""
    spec = CHECKS[check]
    params = {**DEFAULTS[check], **{k: v for k, v in ranges.items() if v is not None}}
    if check == "k3":
        lo, hi = params["n"]
        order = max(params["order"], hi + 1)
        return [
            {"ell": ell, "n_lo": lo, "n_hi": hi, "order": order}
            for ell in range(params["ell"][0], params["ell"][1] + 1)
        ]
    if check == "moduli":
        lo, hi = params["degree"]
        return [{"degree": d} for d in moduli.SUPPORTED_DEGREES if lo <= d <= hi]
    sweep_axis = next((a for a in spec.axes if a != "order"), None)
    extra = {"order": params["order"]} if "order" in spec.axes else {}
    if sweep_axis is None:
        return [extra]
    lo, hi = params[sweep_axis]
    return [{sweep_axis: v, **extra} for v in range(lo, hi + 1)]


def run_point(check: str, params: dict) -> CheckReport:
    start = time.perf_counter()
    witness = CHECKS[check].run(**params)
    elapsed = (time.perf_counter() - start) * 1000
    return CheckReport(check, params, witness is None, witness, elapsed)


def _run_star(args):
    return run_point(*args)


def run_sweep(check: str, points: list[dict], jobs: int = 1) -> list[CheckReport]:
    if jobs <= 1 or len(points) <= 1:
        return [run_point(check, p) for p in points]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, [(check, p) for p in points]))
