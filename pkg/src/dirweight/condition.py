"""The Mobius-convolution nonnegativity condition, computed three ways.

For a weight family w with declared smooth abscissa delta and start index
k, the quantity of interest is

    S(n) = sum over divisors j of n with j >= k of j^(-delta) w_j mu(n/j).

``divisor_sum`` evaluates it literally; ``mult_product`` uses the factored
closed form available for multiplicative families; ``additive_Tt`` uses
the per-prime decomposition available for additive families, whose
individual terms are the sharper per-term certificates.  ``check_range``
runs any subset of the three over a range and cross-checks agreement.

Sign policy: with delta = 0 and exact (rational) weights everything is
computed in exact arithmetic and verdicts are exact; otherwise floats are
used and a value in (-tol, 0) is reported as nonnegative-within-tolerance,
never as a certified violation.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

import numpy as np

from . import _accel, arith
from .weights import WeightFamily

NONNEG_EXACT = "nonneg_exact"
NONNEG_TOL = "nonneg_within_tol"
NEGATIVE = "negative_certified"
INCONCLUSIVE = "inconclusive"

DEFAULT_TOL = 1e-10


def _use_exact(w: WeightFamily, delta: float) -> bool:
    return w.exact and delta == 0.0


def _resolve(w: WeightFamily, delta, k):
    delta = w.delta if delta is None else float(delta)
    if k is None:
        # never inferred from context: the family's declared start governs
        # (1 for multiplicative, 2 for additive, as declared otherwise)
        k = w.start_index
    k = int(k)
    if k < 1:
        raise ValueError("start index k must be >= 1")
    if k < w.defined_from:
        raise ValueError(
            f"{w.name} is undefined on divisors below {w.defined_from}; k={k} too small"
        )
    return delta, k


def divisor_sum(w: WeightFamily, delta: float, k: int, n: int):
    """S(n) by direct summation over the divisors of n."""
    delta, k = _resolve(w, delta, k)
    n = arith._check_positive(n)
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    exact = _use_exact(w, delta)
    total = 0 if exact else 0.0
    for j in arith.divisors(n):
        if j < k:
            continue
        m = arith.mobius(n // j)
        if m == 0:
            continue
        if exact:
            total += w.value(j) * m
        else:
            coef = 1.0 if delta == 0.0 else j ** (-delta)
            total += float(w.value(j)) * m * coef
    return total


def _mult_factors_from(w, delta, factors, exact):
    out = []
    for p, r in factors:
        hi = w.value(p**r)
        lo = w.value(p ** (r - 1))
        if exact:
            out.append(hi - lo)
        else:
            pd = 1.0 if delta == 0.0 else p ** (-delta)
            out.append(pd ** (r - 1) * (pd * float(hi) - float(lo)))
    return out


def mult_factors(w: WeightFamily, delta: float, n: int) -> list:
    """Per-prime factors p^(-delta (r-1)) (p^(-delta) w_{p^r} - w_{p^(r-1)})
    whose product is S(n) for a multiplicative family with k = 1."""
    if w.kind != "multiplicative":
        raise ValueError(f"{w.name} is not multiplicative")
    delta = w.delta if delta is None else float(delta)
    n = arith._check_positive(n)
    return _mult_factors_from(w, delta, arith.factorize(n).factors, _use_exact(w, delta))


def mult_product(w: WeightFamily, delta: float, n: int):
    """Factored form of S(n) over the prime factorization; equals
    divisor_sum with k = 1 for multiplicative families."""
    factors = mult_factors(w, delta, n)
    out = 1 if _use_exact(w, w.delta if delta is None else float(delta)) else 1.0
    for f in factors:
        out = out * f
    return out


def _additive_terms_from(w, delta, factors, exact):
    terms = []
    m = len(factors)
    for t in range(m):
        p_t, r_t = factors[t]
        hi = w.value(p_t**r_t)
        lo = w.value(p_t ** (r_t - 1))
        if exact:
            # at delta = 0 every companion factor p^(-delta) - 1 vanishes
            term = (hi - lo) if m == 1 else 0
        else:
            pd = 1.0 if delta == 0.0 else p_t ** (-delta)
            term = pd ** (r_t - 1) * (pd * float(hi) - float(lo))
            for j in range(m):
                if j == t:
                    continue
                p_j, r_j = factors[j]
                qd = 1.0 if delta == 0.0 else p_j ** (-delta)
                term *= qd ** (r_j - 1) * (qd - 1.0)
        terms.append(term)
    return terms


def additive_Tt(w: WeightFamily, delta: float, n: int):
    """Per-prime decomposition S(n) = sum_t T_t for an additive family
    (k = 2, with the w_1 = 0 extension).  Returns (total, terms)."""
    if w.kind != "additive":
        raise ValueError(f"{w.name} is not additive")
    delta = w.delta if delta is None else float(delta)
    n = arith._check_positive(n)
    if n < 2:
        raise ValueError("additive decomposition needs n >= 2")
    exact = _use_exact(w, delta)
    terms = _additive_terms_from(w, delta, arith.factorize(n).factors, exact)
    total = sum(terms) if terms else (0 if exact else 0.0)
    return total, tuple(terms)


def von_mangoldt_alpha(n: int, alpha: int) -> float:
    """Generalized von Mangoldt value: the Mobius convolution of (log)^alpha,
    sum over divisors j >= 2 of n of (log j)^alpha mu(n/j).

    Expanded over the prime factorization, the sum collapses to monomials
    in the log p_i with positive integer coefficients, so the returned
    value is nonnegative by construction and exactly zero whenever n has
    more than alpha distinct prime factors.  alpha = 1 is the classical
    von Mangoldt function.
    """
    n = arith._check_positive(n)
    if n < 2:
        raise ValueError("generalized von Mangoldt values start at n = 2")
    if not isinstance(alpha, int) or alpha < 1:
        raise ValueError("alpha must be a positive integer")
    factors = arith.factorize(n).factors
    m = len(factors)
    if m > alpha:
        return 0.0
    logs = [math.log(p) for p, _ in factors]
    exps = [r for _, r in factors]
    fact = math.factorial
    total = 0.0
    for comp in iter_product(range(1, alpha + 1), repeat=m):
        if sum(comp) != alpha:
            continue
        coef = fact(alpha)
        for a in comp:
            coef //= fact(a)
        for r, a in zip(exps, comp):
            coef *= r**a - (r - 1) ** a
        mono = 1.0
        for lg, a in zip(logs, comp):
            mono *= lg**a
        total += coef * mono
    return total


# ---------------------------------------------------------------------------
# range evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionRecord:
    n: int
    value: object
    method: str
    verdict: str
    margin: float


@dataclass(frozen=True)
class ConditionReport:
    """Per-n outcomes of the condition over [n_lo, n_hi], with method
    provenance, sign margins, and an aggregate verdict."""

    family: str
    delta: float
    k: int
    n_lo: int
    n_hi: int
    mode: str
    tol: float
    methods: tuple[str, ...]
    records: tuple[ConditionRecord, ...]
    verdict: str
    agreement_failures: int

    def counts(self) -> dict:
        out: dict[str, int] = {}
        for r in self.records:
            out[r.verdict] = out.get(r.verdict, 0) + 1
        return out

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "delta": self.delta,
            "k": self.k,
            "range": [self.n_lo, self.n_hi],
            "mode": self.mode,
            "tol": self.tol,
            "methods": list(self.methods),
            "verdict": self.verdict,
            "agreement_failures": self.agreement_failures,
            "counts": self.counts(),
            "records": [
                {
                    "n": r.n,
                    "value": _scalar_json(r.value),
                    "method": r.method,
                    "verdict": r.verdict,
                    "margin": r.margin,
                }
                for r in self.records
            ],
        }

    def write_csv(self, fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(["n", "value", "method", "verdict", "margin"])
        for r in self.records:
            writer.writerow([r.n, _scalar_json(r.value), r.method, r.verdict, r.margin])


def _scalar_json(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def _sign_verdict(value, exact: bool, tol: float) -> tuple[str, float]:
    if exact:
        margin = float(value)
        return (NONNEG_EXACT if value >= 0 else NEGATIVE), margin
    v = float(value)
    if v < -tol:
        return NEGATIVE, v
    return NONNEG_TOL, v


def _divisor_sums_range(w: WeightFamily, delta: float, k: int, n_max: int, exact: bool):
    """Values of S(n) for every n <= n_max, via one sieve pass."""
    mu = arith.mobius_sieve(n_max)
    if not exact:
        return _accel.divisor_sum_table(w.values_table(n_max), mu, delta, k)
    mu_int = [int(x) for x in mu]
    out: list = [0] * (n_max + 1)
    for j in range(k, n_max + 1):
        wj = w.value(j)
        if wj == 0:
            continue
        for q in range(1, n_max // j + 1):
            m = mu_int[q]
            if m:
                out[j * q] += wj * m
    return out


def check_range(
    w: WeightFamily,
    delta: float | None,
    k: int | None,
    n_max: int,
    methods: tuple[str, ...] = ("divisor_sum",),
    tol: float = DEFAULT_TOL,
) -> ConditionReport:
    """Evaluate the condition for every n in [max(k, 2), n_max] using the
    requested methods, cross-checking their agreement.

    With k = 1 the trivially satisfied n = 1 value (= w_1) is recorded as
    well.  Per-n verdicts follow the sign policy; the aggregate verdict is
    the worst per-n outcome (negative > inconclusive > within-tol > exact).
    """
    delta, k = _resolve(w, delta, k)
    n_max = arith._check_positive(n_max, "n_max")
    if n_max < k:
        raise ValueError(f"n_max={n_max} below the start index k={k}")
    if isinstance(methods, (set, frozenset)):
        methods = sorted(methods)  # keep record order deterministic
    methods = tuple(methods)
    if not methods:
        raise ValueError("at least one method is required")
    for m in methods:
        if m == "divisor_sum":
            continue
        if m == "mult_product" and w.kind == "multiplicative":
            continue
        if m == "additive_Tt" and w.kind == "additive":
            continue
        raise ValueError(f"method {m!r} not applicable to family kind {w.kind!r}")
    if "mult_product" in methods and k != 1:
        raise ValueError("mult_product agrees with the condition only for k = 1")

    exact = _use_exact(w, delta)
    per_method: dict[str, object] = {}
    if "divisor_sum" in methods:
        per_method["divisor_sum"] = _divisor_sums_range(w, delta, k, n_max, exact)
    if "mult_product" in methods or "additive_Tt" in methods:
        mp = [None] * (n_max + 1)
        at = [None] * (n_max + 1)
        want_mp = "mult_product" in methods
        want_at = "additive_Tt" in methods
        for n, factors in arith.factorizations_up_to(n_max):
            if n < 2:
                continue
            if want_mp:
                val = 1 if exact else 1.0
                for f in _mult_factors_from(w, delta, factors, exact):
                    val = val * f
                mp[n] = val
            if want_at:
                terms = _additive_terms_from(w, delta, factors, exact)
                at[n] = sum(terms) if terms else (0 if exact else 0.0)
        if want_mp:
            per_method["mult_product"] = mp
        if want_at:
            per_method["additive_Tt"] = at

    records: list[ConditionRecord] = []
    failures = 0
    n_lo = max(k, 2)

    if k == 1:
        v1 = w.value(1)
        verdict, margin = _sign_verdict(v1, exact, tol)
        records.append(ConditionRecord(1, v1, "divisor_sum", verdict, margin))
        if "mult_product" in methods:
            vm = 1 if exact else 1.0
            verdict, margin = _sign_verdict(vm, exact, tol)
            records.append(ConditionRecord(1, vm, "mult_product", verdict, margin))

    for n in range(n_lo, n_max + 1):
        vals = {m: per_method[m][n] for m in methods}
        agree = True
        ref = next(iter(vals.values()))
        for v in vals.values():
            if exact:
                if v != ref:
                    raise RuntimeError(
                        f"exact methods disagree at n={n}: {vals} for {w.name}"
                    )
            elif abs(float(v) - float(ref)) > tol * max(1.0, abs(float(v)), abs(float(ref))):
                agree = False
        if not agree:
            failures += 1
        for m in methods:
            if not agree:
                records.append(ConditionRecord(n, vals[m], m, INCONCLUSIVE, float(vals[m])))
            else:
                verdict, margin = _sign_verdict(vals[m], exact, tol)
                records.append(ConditionRecord(n, vals[m], m, verdict, margin))

    order = {NEGATIVE: 3, INCONCLUSIVE: 2, NONNEG_TOL: 1, NONNEG_EXACT: 0}
    worst = max((order[r.verdict] for r in records), default=0)
    overall = {0: NONNEG_EXACT, 1: NONNEG_TOL, 2: INCONCLUSIVE, 3: NEGATIVE}[worst]

    return ConditionReport(
        family=w.name,
        delta=delta,
        k=k,
        n_lo=1 if k == 1 else n_lo,
        n_hi=n_max,
        mode="exact" if exact else "float",
        tol=tol,
        methods=methods,
        records=tuple(records),
        verdict=overall,
        agreement_failures=failures,
    )
