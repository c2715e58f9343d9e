"""Euler characteristics, formal dimension, ellipticity verdicts, rho, the
F0 and odd-sphere classifiers, the theorem ledger, and the Sullivan/Quillen
cross-model comparison."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import linalg, quillen, sullivan
from .errors import NotEllipticWithinBound, ValidationError
from .quillen import DGLModel
from .sullivan import SullivanModel


@dataclass(frozen=True)
class LedgerEntry:
    claim: str
    status: str                      # "verified" | "violated" | "not-applicable"
    witness: dict[str, Any] = field(default_factory=dict)


@dataclass
class TheoremLedger:
    entries: list[LedgerEntry] = field(default_factory=list)

    def add(self, claim: str, ok: bool | None, **witness):
        status = "not-applicable" if ok is None else (
            "verified" if ok else "violated")
        self.entries.append(LedgerEntry(claim, status, dict(witness)))

    def extend(self, other: "TheoremLedger"):
        self.entries.extend(other.entries)

    @property
    def violated(self) -> list[LedgerEntry]:
        return [e for e in self.entries if e.status == "violated"]

    @property
    def all_verified(self) -> bool:
        return not self.violated


@dataclass(frozen=True)
class InvariantReport:
    chi_h: int
    chi_v: int
    rho: int
    formal_dimension: int
    elliptic_verified_up_to: int
    f0: bool
    odd_sphere: bool


def candidate_formal_dimension(model: SullivanModel) -> int:
    """sum(odd generator degrees) - sum(even generator degrees - 1); equals
    the formal dimension whenever the model is elliptic."""
    n = 0
    for g in model.generators:
        n += g.degree if g.degree % 2 else -(g.degree - 1)
    return n


def default_bound(model: SullivanModel) -> int:
    nc = candidate_formal_dimension(model)
    return max(2 * nc + 2, model.max_generator_degree() + 2, 2)


class SullivanAnalysis:
    """Cached per-model cohomology window and derived invariants."""

    def __init__(self, model: SullivanModel, bound: int | None = None):
        report = model.validate()
        if not report.ok:
            raise ValidationError(
                "; ".join(f"{i.check}: {i.message}" for i in report.issues))
        self.model = model
        self.n_candidate = candidate_formal_dimension(model)
        self.bound = bound if bound is not None else default_bound(model)
        cx = model.complex()
        self.betti = {i: cx.betti(i) for i in range(0, self.bound + 1)}
        nonzero = [i for i, d in self.betti.items() if d]
        self.formal_dimension = max(nonzero) if nonzero else 0
        self.elliptic = (self.formal_dimension <= self.n_candidate
                         and self.bound >= 2 * self.formal_dimension + 2)
        self._l_dims: dict[int, int] = {}

    def require_elliptic(self):
        if not self.elliptic:
            raise NotEllipticWithinBound(
                f"H^i != 0 for i = {self.formal_dimension} beyond the candidate "
                f"formal dimension {self.n_candidate} (bound {self.bound})")

    def l_dim(self, i: int) -> int:
        if i not in self._l_dims:
            self._l_dims[i] = sullivan.L_dim(self.model, i)
        return self._l_dims[i]

    def v_dim(self, i: int) -> int:
        return sum(1 for g in self.model.generators if g.degree == i)

    @property
    def chi_h(self) -> int:
        return sum((-1) ** i * d for i, d in self.betti.items())

    @property
    def chi_v(self) -> int:
        return sum(1 if g.degree % 2 == 0 else -1 for g in self.model.generators)

    def l_window(self) -> dict[int, int]:
        """dim L^i for 4 <= i <= 2n + 2 (zero beyond 2n by ellipticity)."""
        n = self.formal_dimension
        return {i: self.l_dim(i) for i in range(4, 2 * n + 3)}

    def rho(self) -> int:
        self.require_elliptic()
        n = self.formal_dimension
        total = 1
        for i in range(4, 2 * n + 1):
            total += (-1) ** i * self.l_dim(i)
        return total


# --- spec operations ---------------------------------------------------------

def euler_characteristics(model: SullivanModel, bound: int | None = None):
    a = SullivanAnalysis(model, bound)
    a.require_elliptic()
    return a.chi_h, a.chi_v


def formal_dimension(model: SullivanModel, bound: int | None = None) -> int:
    a = SullivanAnalysis(model, bound)
    a.require_elliptic()
    return a.formal_dimension


def rho(model: SullivanModel) -> int:
    return SullivanAnalysis(model).rho()


def is_pure(model: SullivanModel) -> bool:
    """d(V^even) = 0 and d(V^odd) contained in Lambda(V^even)."""
    for g in model.generators:
        img = model.d_of_generator(g.index)
        if g.degree % 2 == 0:
            if not img.is_zero():
                return False
        else:
            for m in img.terms:
                if any(model.algebra.by_index[i].degree % 2 for i, _ in m):
                    return False
    return True


def elliptic_checks(model: SullivanModel,
                    analysis: SullivanAnalysis | None = None) -> TheoremLedger:
    """Structure theorems for elliptic models, checked literally, plus the
    L-space vanishing/iso facts above the formal dimension."""
    a = analysis or SullivanAnalysis(model)
    a.require_elliptic()
    n = a.formal_dimension
    ledger = TheoremLedger()
    v_even = sum(1 for g in model.generators if g.degree % 2 == 0)
    v_odd = len(model.generators) - v_even
    ledger.add("v-odd-dominates-v-even", v_odd >= v_even,
               v_odd=v_odd, v_even=v_even)
    bad = [g.name for g in model.generators if g.degree >= 2 * n]
    ledger.add("v-vanishes-from-twice-formal-dim", not bad, offenders=bad)
    bad = [g.name for g in model.generators
           if g.degree > n and g.degree % 2 == 0]
    ledger.add("even-v-vanishes-above-formal-dim", not bad, offenders=bad)
    high_odd = sorted({g.degree for g in model.generators
                       if g.degree > n and g.degree % 2})
    ok = len(high_odd) <= 1 and all(a.v_dim(i) == 1 for i in high_odd)
    ledger.add("at-most-one-line-of-odd-v-above-formal-dim", ok,
               degrees=high_odd)
    chi_h, chi_v = a.chi_h, a.chi_v
    ledger.add("euler-characteristic-signs",
               chi_h >= 0 and chi_v <= 0 and ((chi_h == 0) == (chi_v < 0)),
               chi_h=chi_h, chi_v=chi_v)
    # L-space facts above the formal dimension.  Note: L^i = H^i of the
    # truncation matches dim V^(i-1) for every i > n + 1; the odd rows
    # vanish because even V vanishes above n.
    window = a.l_window()
    bad_pairs = [(i, window[i], a.v_dim(i - 1))
                 for i in range(n + 2, 2 * n + 3)
                 if window.get(i, 0) != a.v_dim(i - 1)]
    ledger.add("l-matches-v-above-formal-dim", not bad_pairs,
               mismatches=bad_pairs)
    bad_odd = [i for i in range(n + 2, 2 * n + 3)
               if i % 2 and window.get(i, 0)]
    ledger.add("odd-l-vanishes-above-formal-dim", not bad_odd, offenders=bad_odd)
    bad_top = [i for i in range(2 * n + 1, 2 * n + 3) if window.get(i, 0)]
    ledger.add("l-vanishes-above-twice-formal-dim", not bad_top,
               offenders=bad_top)
    return ledger


def verify_identities(model: SullivanModel,
                      analysis: SullivanAnalysis | None = None) -> TheoremLedger:
    a = analysis or SullivanAnalysis(model)
    a.require_elliptic()
    n = a.formal_dimension
    ledger = TheoremLedger()
    r = a.rho()
    chi_h, chi_v = a.chi_h, a.chi_v
    ledger.add("rho-equals-chi-h-minus-chi-v", r == chi_h - chi_v,
               rho=r, chi_h=chi_h, chi_v=chi_v)
    partial = sum((-1) ** i * a.l_dim(i) for i in range(4, n + 2))
    ledger.add("rho-slack-within-two", 0 <= r - partial <= 2,
               rho=r, partial_sum=partial)
    ledger.add("rho-positive", r >= 1, rho=r)
    l_even = sum(d for i, d in a.l_window().items() if i % 2 == 0)
    l_odd = sum(d for i, d in a.l_window().items() if i % 2)
    ledger.add("even-l-dominates-odd-l", l_even >= l_odd,
               l_even=l_even, l_odd=l_odd)
    if l_even == 0:
        total_h = sum(a.betti.values())
        ledger.add("zero-even-l-forces-h-dim",
                   total_h == len(model.generators) + 1,
                   total_h=total_h, total_v=len(model.generators))
    else:
        ledger.add("zero-even-l-forces-h-dim", None, l_even=l_even)
    ledger.add("rho-dichotomy", r == chi_h or r == -chi_v,
               rho=r, chi_h=chi_h, chi_v=chi_v)
    return ledger


def classify_f0(model: SullivanModel,
                analysis: SullivanAnalysis | None = None):
    """(is_f0, evidence).  Primary criterion: H^odd = 0 in the window;
    cross-checked against purity + chi_V = 0 when the model is pure."""
    a = analysis or SullivanAnalysis(model)
    a.require_elliptic()
    h_odd = sum(d for i, d in a.betti.items() if i % 2)
    f0 = h_odd == 0
    evidence = {"h_odd_total": h_odd, "criterion": "h-odd-vanishes"}
    if is_pure(model):
        alt = a.chi_v == 0
        evidence["pure"] = True
        evidence["chi_v"] = a.chi_v
        evidence["pure-criterion-agrees"] = (alt == f0)
    else:
        evidence["pure"] = False
    return f0, evidence


def f0_consequences(model: SullivanModel,
                    analysis: SullivanAnalysis | None = None) -> TheoremLedger:
    a = analysis or SullivanAnalysis(model)
    ledger = TheoremLedger()
    f0, _ = classify_f0(model, a)
    if not f0:
        ledger.add("f0-odd-l-vanishes", None)
        ledger.add("f0-even-b-maps-vanish", None)
        return ledger
    n = a.formal_dimension
    bad = [i for i in range(5, 2 * n + 3, 2) if a.l_dim(i)]
    ledger.add("f0-odd-l-vanishes", not bad, offenders=bad)
    ranks = {i: linalg.rank(sullivan.whitehead_b(model, i))
             for i in range(2, 2 * n + 1, 2)}
    bad_b = [i for i, rk in ranks.items() if rk]
    ledger.add("f0-even-b-maps-vanish", not bad_b, offenders=bad_b)
    return ledger


def odd_sphere_detect(model: SullivanModel,
                      analysis: SullivanAnalysis | None = None):
    """(is_odd_sphere, evidence): true iff L^even vanishes in the window;
    the positive verdict is corroborated structurally."""
    a = analysis or SullivanAnalysis(model)
    a.require_elliptic()
    n = a.formal_dimension
    window = a.l_window()
    l_even = {i: d for i, d in window.items() if i % 2 == 0 and d}
    verdict = not l_even
    evidence: dict[str, Any] = {"nonzero_even_l": l_even}
    if verdict:
        l_odd = {i: d for i, d in window.items() if i % 2 and d}
        h_matches_v = all(a.betti.get(i, 0) == a.v_dim(i)
                          for i in range(2, a.bound + 1))
        pattern = {i: d for i, d in a.betti.items() if d}
        sphere_pattern = (pattern == {0: 1, n: 1} and n % 2 == 1)
        evidence.update(nonzero_odd_l=l_odd, h_matches_v=h_matches_v,
                        h_pattern=pattern, sphere_pattern=sphere_pattern)
        verdict = not l_odd and h_matches_v and sphere_pattern
    return verdict, evidence


def invariant_report(model: SullivanModel,
                     bound: int | None = None) -> InvariantReport:
    a = SullivanAnalysis(model, bound)
    a.require_elliptic()
    return InvariantReport(
        chi_h=a.chi_h,
        chi_v=a.chi_v,
        rho=a.rho(),
        formal_dimension=a.formal_dimension,
        elliptic_verified_up_to=a.bound,
        f0=classify_f0(model, a)[0],
        odd_sphere=odd_sphere_detect(model, a)[0],
    )


def full_ledger(model: SullivanModel, bound: int | None = None) -> TheoremLedger:
    a = SullivanAnalysis(model, bound)
    a.require_elliptic()
    ledger = TheoremLedger()
    ledger.extend(elliptic_checks(model, a))
    ledger.extend(verify_identities(model, a))
    ledger.extend(f0_consequences(model, a))
    return ledger


# --- cross-model comparison --------------------------------------------------

@dataclass(frozen=True)
class ComparisonReport:
    rho: int
    eta: int
    l_vs_gamma: dict[int, tuple[int, int]]      # k -> (dim L^k, dim Gamma_(k-2))
    homology_pairing: dict[int, tuple[int, int]]  # i -> (dim H^i, dim W_(i-1))
    homotopy_pairing: dict[int, tuple[int, int]]  # i -> (dim V^i, dim H_(i-1))
    mismatches: tuple[str, ...]

    @property
    def matches(self) -> bool:
        return not self.mismatches


def compare_models(s: SullivanModel, q: DGLModel,
                   bound: int | None = None) -> ComparisonReport:
    """Duality report for a Sullivan and a Quillen model of the same space."""
    a = SullivanAnalysis(s, bound)
    a.require_elliptic()
    n = a.formal_dimension
    r = a.rho()
    e = quillen.eta(q)
    mismatches: list[str] = []
    if r != e:
        mismatches.append(f"rho {r} != eta {e}")
    l_vs_gamma = {}
    for k in range(4, 2 * n + 1):
        lk = a.l_dim(k)
        gk = quillen.gamma(q, k - 2).dim
        l_vs_gamma[k] = (lk, gk)
        if lk != gk:
            mismatches.append(f"dim L^{k} = {lk} != dim Gamma_{k - 2} = {gk}")
    qc = q.complex()
    w_dims: dict[int, int] = {}
    for g in q.generators:
        w_dims[g.degree] = w_dims.get(g.degree, 0) + 1
    top = max(n, q.max_generator_degree() + 1)
    homology_pairing = {}
    homotopy_pairing = {}
    for i in range(2, top + 1):
        h = a.betti.get(i, 0)
        w = w_dims.get(i - 1, 0)
        homology_pairing[i] = (h, w)
        if h != w:
            mismatches.append(f"dim H^{i} = {h} != dim W_{i - 1} = {w}")
        v = a.v_dim(i)
        hq = qc.homology_dim(i - 1)
        homotopy_pairing[i] = (v, hq)
        if v != hq:
            mismatches.append(
                f"dim V^{i} = {v} != dim H_{i - 1}(L(W)) = {hq}")
    return ComparisonReport(r, e, l_vs_gamma, homology_pairing,
                            homotopy_pairing, tuple(mismatches))
