"""Regularity verdicts from the block determinants, and closed-form condition reports."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import propositions as P
from .birkhoff import birkhoff_matrix, block_det, det, factorization_sign, gamma_block, tau
from .classification import PROPOSITION_MAX_Q, EndpointClassification, Relation, classify_endpoint
from .cyclotomic import CycNum, complex_close, cyc_embed, format_cyc
from .model import BoundaryCondition, ValidatedProblem

FLOAT_REL_TOL = 1e-9
KS = range(1, 7)


class NotApplicable(Exception):
    """No closed form covers this endpoint."""


class SubcaseNotInPaper(NotApplicable):
    pass


def parity_of(k: int, u: int) -> P.Parity:
    return P.Parity(tau(k, u))


def parities() -> tuple[P.Parity, P.Parity]:
    """One representative tau for each value of i^tau (first +i, then -i)."""
    return P.Parity(1), P.Parity(3)


def ks_with_parity(par: P.Parity, u: int) -> list[int]:
    return [k for k in KS if parity_of(k, u).upper == par.upper]


# -- verdict ------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDet:
    u: int
    k: int
    exact: CycNum
    approx: complex

    @property
    def zero(self) -> bool:
        return self.exact.is_zero()

    @property
    def agrees(self) -> bool:
        return complex_close(cyc_embed(self.exact), self.approx, FLOAT_REL_TOL)

    def to_dict(self) -> dict:
        e = cyc_embed(self.exact)
        return {
            "u": self.u, "k": self.k,
            "exact": format_cyc(self.exact),
            "embedding": [e.real, e.imag],
            "float": [self.approx.real, self.approx.imag],
        }


@dataclass(frozen=True)
class ForbiddenValue:
    slot: int  # 1-based row of the endpoint in statement order
    parity: str  # "+i" or "-i"
    value: Optional[CycNum]  # None when the stated formula has a vanishing denominator
    source: str

    def to_dict(self) -> dict:
        return {"slot": self.slot, "parity": self.parity, "source": self.source,
                "value": None if self.value is None else format_cyc(self.value)}


@dataclass(frozen=True)
class ConditionReport:
    case_id: int
    subcase_id: Optional[str]
    hypotheses_met: Optional[bool]
    forbidden_values: tuple = ()
    condition_satisfied: Optional[bool] = None
    not_applicable_reason: Optional[str] = None
    exempt: tuple = ()  # parities at which an exempt beta2 makes the det nonzero

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "subcase": self.subcase_id,
            "hypotheses_met": self.hypotheses_met,
            "condition_satisfied": self.condition_satisfied,
            "forbidden_values": [f.to_dict() for f in self.forbidden_values],
            "exempt_parities": list(self.exempt),
            "not_applicable_reason": self.not_applicable_reason,
        }


@dataclass(frozen=True)
class EndpointReport:
    u: int
    classification: EndpointClassification
    condition: ConditionReport
    oracle_regular: bool

    @property
    def agrees(self) -> Optional[bool]:
        """Whether the closed form's verdict matches the oracle (None if it gives none)."""
        c = self.condition.condition_satisfied
        return None if c is None else c == self.oracle_regular

    def to_dict(self) -> dict:
        d = self.condition.to_dict()
        d["u"] = self.u
        d["oracle_regular"] = self.oracle_regular
        d["closed_form_agrees"] = self.agrees
        return d


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    per_k_dets: tuple
    failing: tuple
    case_a: EndpointClassification
    case_b: EndpointClassification
    birkhoff_dets: tuple = ()
    condition_reports: tuple = ()
    factorization_holds: Optional[bool] = None

    @property
    def float_agrees(self) -> bool:
        return all(b.agrees for b in self.per_k_dets)

    def to_dict(self) -> dict:
        return {
            "verdict": "regular" if self.regular else "irregular",
            "case_a": self.case_a.to_dict(),
            "case_b": self.case_b.to_dict(),
            "per_k_dets": [b.to_dict() for b in self.per_k_dets],
            "failing": [{"u": u, "k": k} for u, k in self.failing],
            "birkhoff_dets": [format_cyc(x) for x in self.birkhoff_dets],
            "factorization_holds": self.factorization_holds,
            "float_agreement": self.float_agrees,
            "condition_reports": [r.to_dict() for r in self.condition_reports],
        }


def float_block_det(bcs: Sequence[BoundaryCondition], k: int, u: int) -> complex:
    """Independent floating-point route: embed the block and use LAPACK."""
    block = gamma_block(bcs, k, u)
    m = np.array([[cyc_embed(x) for x in row] for row in block.entries], dtype=complex)
    return complex(np.linalg.det(m))


def decide(problem: ValidatedProblem, birkhoff: bool = True) -> RegularityVerdict:
    """All twelve block determinants exactly; regular iff none vanishes."""
    blocks = []
    for u in (0, 1):
        bcs = problem.endpoint(u)
        for k in KS:
            blocks.append(BlockDet(u, k, block_det(bcs, k, u), float_block_det(bcs, k, u)))
    failing = tuple((b.u, b.k) for b in blocks if b.zero)
    regular = not failing

    full = ()
    holds = None
    if birkhoff:
        full = tuple(det(birkhoff_matrix(problem, k)) for k in KS)
        by = {(b.u, b.k): b.exact for b in blocks}
        holds = all(
            f == factorization_sign(k) * by[(0, k)] * by[(1, k)]
            for k, f in zip(KS, full))

    classes = [classify_endpoint(problem.endpoint(u)) for u in (0, 1)]
    reports = []
    for u, cls in enumerate(classes):
        ordered = cls.canonical(problem.endpoint(u))
        betas = [bc.leading_beta if r is not Relation.G else None
                 for bc, r in zip(ordered, cls.relations)]
        try:
            rep = closed_form(cls, betas, u)
        except NotApplicable as exc:
            rep = ConditionReport(cls.case_id, cls.subcase_id, None,
                                  not_applicable_reason=str(exc))
        ok = not any(b.zero for b in blocks if b.u == u)
        reports.append(EndpointReport(u, cls, rep, ok))
    return RegularityVerdict(regular, tuple(blocks), failing, classes[0], classes[1],
                             full, tuple(reports), holds)


# -- closed forms -------------------------------------------------------------

def _not_pm_one(*values) -> bool:
    return all(v is not None and v not in P.PM_ONE for v in values)


_RATIO_FORMS = {5: P.forbidden_case5, 6: P.forbidden_case6, 7: P.forbidden_case7}
_RATIO_LABEL = {5: "(moz51)", 6: "Prop 6", 7: "Prop 7"}


def closed_form(endpoint: EndpointClassification, betas: Sequence, u: int = 0) -> ConditionReport:
    """Evaluate the stated nonvanishing condition for one endpoint.

    ``betas`` are the leading lambda coefficients in the endpoint's canonical
    row order (None for G rows).  Forbidden values are listed per parity of
    i^tau; the k values at which each parity occurs follow from ``u``.
    """
    case, sub = endpoint.case_id, endpoint.subcase_id
    if not endpoint.closed_form_available:
        qs = [q for q in endpoint.phi if q is not None]
        if max(qs, default=0) > PROPOSITION_MAX_Q:
            raise NotApplicable(endpoint.not_applicable_reason)
        raise SubcaseNotInPaper(endpoint.not_applicable_reason)
    cfg = P.Config(endpoint.theta, endpoint.phi, tuple(betas))
    b = cfg.beta

    if case <= 4:
        return ConditionReport(case, sub, True, (), True)

    if case in _RATIO_FORMS:
        forms = [ForbiddenValue(3, par.label, v, "+-1") for par in parities() for v in P.PM_ONE]
        forms += [ForbiddenValue(3, par.label, _RATIO_FORMS[case](cfg, par), _RATIO_LABEL[case])
                  for par in parities()]
        hyp = _not_pm_one(b[2])
        ok = hyp and all(f.value != b[2] for f in forms)
        return ConditionReport(case, sub, hyp, tuple(forms), ok)

    if case in (8, 9):
        lemma_id = sub if case == 8 else "8.5"
        lemma = P.SUBCASE_LEMMAS[lemma_id]
        label = f"Lemma {lemma_id}"
        hyp = _not_pm_one(b[1], b[2])
        forms, exempt, ok = [], [], True
        for par in parities():
            if b[1] in lemma.exempt_values(par):
                exempt.append(par.label)
                continue
            f = lemma.forbidden(b[1], par)
            forms.append(ForbiddenValue(3, par.label, f, label))
            if f is None:
                ok = None if ok else ok
            elif f == b[2]:
                ok = False
        return ConditionReport(case, sub, hyp, tuple(forms), ok if hyp else None,
                               exempt=tuple(exempt))

    # Case 10
    hyp = _not_pm_one(*b)
    forms, exempt, ok = [], [], True
    for par in parities():
        if b[1] == P.exempt_case10(b[0], par):
            exempt.append(par.label)
            continue
        f = P.forbidden_case10(b[0], b[1], par)
        forms.append(ForbiddenValue(3, par.label, f, "Prop 10"))
        if f is None:
            ok = None if ok else ok
        elif f == b[2]:
            ok = False
    return ConditionReport(10, None, hyp, tuple(forms), ok if hyp else None,
                           exempt=tuple(exempt))


def closed_form_for(bcs: Sequence[BoundaryCondition], u: int = 0) -> ConditionReport:
    cls = classify_endpoint(bcs)
    ordered = cls.canonical(bcs)
    betas = [bc.leading_beta if r is not Relation.G else None
             for bc, r in zip(ordered, cls.relations)]
    return closed_form(cls, betas, u)
