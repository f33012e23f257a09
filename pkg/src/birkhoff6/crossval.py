"""Sweeps comparing every stated closed form against the direct determinant.

A *check* is one stated expression or claim.  It is evaluated at points
(configuration, betas, k, u); the oracle value is always ``reduced_det``
computed from the actual Gamma block.  Identity checks compare values
exactly; predicate checks compare the stated zero/nonzero outcome.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from . import propositions as P
from .birkhoff import reduced_det, tau
from .classification import (
    CASE8_SUBCASES, CASE9_WITH_CLOSED_FORM, CASE9_SUBCASES, CASE_OF_MULTISET, Relation,
    admissible_endpoint_rows,
)
from .cyclotomic import CycNum, format_cyc, parse_cyc
from .model import condition
from .regularity import NotApplicable, SubcaseNotInPaper, parities

DEFAULT_GRID_TEXT = ("1/2", "-1/2", "1", "-1", "3/2", "-3/2", "2", "-2", "3", "-3",
                     "1 + z^3", "2 - z^3")
DEFAULT_GRID = tuple(parse_cyc(t) for t in DEFAULT_GRID_TEXT)
ALL_CASES = tuple(range(1, 11))
KU = tuple((k, u) for u in (0, 1) for k in range(1, 7))


@dataclass(frozen=True)
class SweepConfig:
    grid: tuple = DEFAULT_GRID
    cases: tuple = ALL_CASES
    include_special: bool = True
    # beta of an L row cancels from det gamma, so few values are needed there
    l_width: int = 2
    threads: int = 1

    @classmethod
    def from_env(cls, **kw) -> SweepConfig:
        threads = int(os.environ.get("BIRKHOFF6_THREADS", "1") or 1)
        return cls(threads=max(1, threads), **kw)


@dataclass(frozen=True)
class Point:
    cfg: P.Config
    bcs: tuple
    k: int
    u: int

    @property
    def par(self) -> P.Parity:
        return P.Parity(tau(self.k, self.u))


@dataclass(frozen=True)
class Check:
    check_id: str
    label: str
    kind: str  # "identity" or "predicate"
    evaluate: Callable[[Point], object]
    applies: Callable[[P.Config], bool] = lambda cfg: True
    description: str = ""


@dataclass
class DiscrepancyReport:
    check_id: str
    label: str
    case_id: int
    subcase_id: Optional[str]
    kind: str
    description: str = ""
    points_tested: int = 0
    agreements: int = 0
    skipped: int = 0
    witnesses: list = field(default_factory=list)
    by_parity: dict = field(default_factory=lambda: {"+i": [0, 0], "-i": [0, 0]})
    not_applicable_reason: Optional[str] = None

    @property
    def status(self) -> str:
        if self.points_tested == 0:
            return "not-applicable"
        return "refuted" if self.witnesses else "confirmed"

    def parity_status(self) -> dict:
        out = {}
        for label, (pts, agree) in self.by_parity.items():
            out[label] = "not-applicable" if pts == 0 else (
                "confirmed" if pts == agree else "refuted")
        return out

    @property
    def consistent(self) -> bool:
        return self.agreements + len(self.witnesses) == self.points_tested

    def record(self, point: Point, oracle: CycNum, prediction, agree: bool) -> None:
        self.points_tested += 1
        slot = self.by_parity[point.par.label]
        slot[0] += 1
        if agree:
            self.agreements += 1
            slot[1] += 1
            return
        self.witnesses.append({
            "p": list(point.cfg.theta),
            "q": list(point.cfg.phi),
            "betas": [None if b is None else format_cyc(b) for b in point.cfg.beta],
            "k": point.k,
            "u": point.u,
            "parity": point.par.label,
            "oracle": format_cyc(oracle),
            "prediction": _render(prediction),
        })

    def to_dict(self, max_witnesses: Optional[int] = None) -> dict:
        ws = self.witnesses if max_witnesses is None else self.witnesses[:max_witnesses]
        return {
            "check": self.check_id,
            "label": self.label,
            "case": self.case_id,
            "subcase": self.subcase_id,
            "kind": self.kind,
            "description": self.description,
            "status": self.status,
            "parity_status": self.parity_status(),
            "points_tested": self.points_tested,
            "agreements": self.agreements,
            "witness_count": len(self.witnesses),
            "skipped": self.skipped,
            "witnesses": ws,
            "not_applicable_reason": self.not_applicable_reason,
        }


def _render(prediction) -> object:
    if isinstance(prediction, CycNum):
        return format_cyc(prediction)
    if isinstance(prediction, bool):
        return "det = 0" if prediction else "det != 0"
    return prediction


# -- configurations -----------------------------------------------------------------

def _relation_of_row(p, q) -> Relation:
    if q is None:
        return Relation.G
    if p is None:
        return Relation.L
    return Relation.G if p > q + 3 else Relation.L if p < q + 3 else Relation.E


def _governing(p, q) -> int:
    return p if _relation_of_row(p, q) is Relation.G else q


def case_rows(case_id: int, permute: bool = True) -> list[tuple]:
    """Ordered (p, q) row triples realising a case, in statement row order.

    With ``permute`` every ordering of equal-relation rows is produced;
    otherwise rows of one relation are sorted by governing order.
    """
    out = []
    for rows in admissible_endpoint_rows():
        rels = [_relation_of_row(*r) for r in rows]
        key = "".join(sorted((r.value for r in rels), key="GLE".index))
        if CASE_OF_MULTISET[key] != case_id:
            continue
        groups = []
        for rel in (Relation.G, Relation.L, Relation.E):
            members = sorted((r for r, x in zip(rows, rels) if x is rel),
                             key=lambda r: _governing(*r))
            groups.append(list(itertools.permutations(members)) if permute else [tuple(members)])
        for combo in itertools.product(*groups):
            out.append(tuple(r for g in combo for r in g))
    return sorted(set(out), key=lambda rs: tuple((-1 if p is None else p, -1 if q is None else q)
                                                  for p, q in rs))


def governing_triple(rows) -> tuple:
    return tuple(_governing(p, q) for p, q in rows)


def _dedupe(values: Iterable) -> list:
    seen, out = set(), []
    for v in values:
        if v is None or v in seen or (isinstance(v, CycNum) and v.is_zero()):
            continue
        seen.add(v)
        out.append(v)
    return out


# A beta domain yields the value lists for each slot given (rows, earlier betas).
BetaDomain = Callable[[tuple, tuple, int, SweepConfig], list]


def _beta_tuples(rows: tuple, domain: BetaDomain, sweep: SweepConfig) -> Iterator[tuple]:
    def rec(j: int, chosen: tuple):
        if j == len(rows):
            yield chosen
            return
        p, q = rows[j]
        rel = _relation_of_row(p, q)
        if rel is Relation.G:
            vals = [None]
        elif rel is Relation.L:
            vals = list(sweep.grid[:max(1, sweep.l_width)])
        else:
            vals = _dedupe(domain(rows, chosen, j, sweep))
        for v in vals:
            yield from rec(j + 1, chosen + (v,))
    yield from rec(0, ())


def _grid_domain(rows, chosen, j, sweep):
    return list(sweep.grid)


def _ratio_domain(form):
    def domain(rows, chosen, j, sweep):
        vals = list(sweep.grid)
        if sweep.include_special:
            cfg = P.Config(tuple(r[0] for r in rows), tuple(r[1] for r in rows), chosen + (None,))
            vals += list(P.PM_ONE) + [form(cfg, par) for par in parities()]
        return vals
    return domain


def _lemma_domain(lemma: P.SubcaseLemma):
    def domain(rows, chosen, j, sweep):
        vals = list(sweep.grid)
        if not sweep.include_special:
            return vals
        if j == 1:
            for par in parities():
                vals += list(lemma.exempt_values(par))
        elif j == 2:
            for par in parities():
                vals.append(lemma.forbidden(chosen[1], par))
        return vals
    return domain


def _case10_domain(rows, chosen, j, sweep):
    vals = list(sweep.grid)
    if not sweep.include_special:
        return vals
    for par in parities():
        if j == 1:
            vals.append(P.exempt_case10(chosen[0], par))
        elif j == 2:
            vals.append(P.forbidden_case10(chosen[0], chosen[1], par))
    return vals


def make_bcs(rows: tuple, betas: tuple) -> tuple:
    return tuple(condition("A", p, q, beta=b) for (p, q), b in zip(rows, betas))


# -- check definitions --------------------------------------------------------------

def _identity(check_id, label, fn, applies=None, description=""):
    return Check(check_id, label, "identity", lambda pt: fn(pt.cfg, pt.par),
                 applies or (lambda cfg: True), description)


def _predicate(check_id, label, fn, applies=None, description=""):
    return Check(check_id, label, "predicate", lambda pt: fn(pt.cfg, pt.par),
                 applies or (lambda cfg: True), description)


def _beta_avoids_pm_one(*slots):
    def ok(cfg: P.Config) -> bool:
        return all(cfg.beta[s] not in P.PM_ONE for s in slots)
    return ok


def _beta_is_pm_one(slot):
    return lambda cfg: cfg.beta[slot] in P.PM_ONE


def _never_zero(cfg, par):
    return False


def _ratio_predicate(form):
    def pred(cfg, par):
        b = cfg.beta[2]
        return b in P.PM_ONE or b == form(cfg, par)
    return pred


def _moz51_predicate(cfg, par):
    return cfg.beta[2] == P.forbidden_case5(cfg, par)


def _lemma_predicate(lemma: P.SubcaseLemma):
    def pred(cfg, par):
        return lemma.predicted_zero(cfg.beta[1], cfg.beta[2], par)
    return pred


def _case9_as_85(pt: Point) -> CycNum:
    """Oracle det after replacing the L row q=phi1 by a G row p=phi1."""
    phi1 = pt.cfg.phi[0]
    swapped = (condition("A", phi1),) + pt.bcs[1:]
    return reduced_det(swapped, pt.k, pt.u)


@dataclass(frozen=True)
class Family:
    case_id: int
    subcase_id: Optional[str]
    rows: Callable[[], list]
    domain: BetaDomain
    checks: tuple
    not_applicable_reason: Optional[str] = None


def _rows_filter(case_id, triples=None, permute=True):
    def rows():
        out = case_rows(case_id, permute)
        if triples is not None:
            out = [r for r in out if governing_triple(r) in triples]
        return out
    return rows


def build_catalog() -> tuple:
    fams = []
    fams.append(Family(1, None, _rows_filter(1), _grid_domain, (
        _identity("1:4.55", "(4.55)", P.det_case1,
                  description="xi^2-Vandermonde in theta"),
        _predicate("1:prop4.5.1", "Prop 4.5.1 (1)", _never_zero,
                   description="det never vanishes"),
    )))
    fams.append(Family(2, None, _rows_filter(2), _grid_domain, (
        _identity("2:4.63", "(4.63)", P.det_case2,
                  description="xi^2-Vandermonde in phi"),
        _predicate("2:prop4.5.1", "Prop 4.5.1 (2)", _never_zero,
                   description="det never vanishes"),
    )))
    fams.append(Family(3, None, _rows_filter(3), _grid_domain, (
        _identity("3:4.691-matrix", "(4.691) matrix", P.det_case3_matrix,
                  description="Vandermonde in (theta1, theta2, phi3), as the displayed matrix gives"),
        _identity("3:4.691-printed", "(4.691) printed", P.det_case3_printed,
                  description="stated product with phi2 and theta3"),
        _predicate("3:prop4.5.1", "Prop 4.5.1 (3)", _never_zero,
                   description="det never vanishes"),
    )))
    fams.append(Family(4, None, _rows_filter(4), _grid_domain, (
        _identity("4:4.74", "(4.74)", P.det_case4,
                  description="stated Vandermonde in (theta1, phi2, phi3)"),
        _predicate("4:prop4.5.1", "Prop 4.5.1 (4)", _never_zero,
                   description="det never vanishes"),
    )))
    away5 = _beta_avoids_pm_one(2)
    fams.append(Family(5, None, _rows_filter(5), _ratio_domain(P.forbidden_case5), (
        _predicate("5:5.1", "(5.1)", lambda cfg, par: True, _beta_is_pm_one(2),
                   description="det = 0 whenever beta3 = +-1"),
        _identity("5:4.67-expanded", "(4.67) expanded", P.det_case5_expanded, away5,
                  description="cofactor expansion"),
        _identity("5:4.67-factored", "(4.67) factored", P.det_case5_factored, away5,
                  description="factored product"),
        _predicate("5:moz51", "(moz51)", _moz51_predicate, away5,
                   description="det = 0 iff beta3 equals the ratio"),
        _predicate("5:prop5", "Prop 5", _ratio_predicate(P.forbidden_case5),
                   description="det = 0 iff beta3 in {+-1, ratio}"),
    )))
    fams.append(Family(6, None, _rows_filter(6), _ratio_domain(P.forbidden_case6), (
        _predicate("6:prop6", "Prop 6", _ratio_predicate(P.forbidden_case6),
                   description="det = 0 iff beta3 in {+-1, ratio}"),
    )))
    fams.append(Family(7, None, _rows_filter(7), _ratio_domain(P.forbidden_case7), (
        _predicate("7:prop7", "Prop 7", _ratio_predicate(P.forbidden_case7),
                   description="det = 0 iff beta3 in {+-1, ratio}"),
    )))
    away23 = _beta_avoids_pm_one(1, 2)
    for triple, sub in sorted(CASE8_SUBCASES.items(), key=lambda kv: kv[1]):
        lemma = P.SUBCASE_LEMMAS[sub]
        fams.append(Family(8, sub, _rows_filter(8, {triple}, permute=False), _lemma_domain(lemma), (
            _identity(f"{sub}:case8", "(Case8)", P.det_case8_generic,
                      description="cofactor expansion"),
            _identity(f"{sub}:det", lemma.det_label, lemma.determinant, away23,
                      description="subcase determinant"),
            _predicate(f"{sub}:lemma", lemma.lemma_label, _lemma_predicate(lemma), away23,
                       description="exempt beta2 values and forbidden beta3"),
        )))
    lemma85 = P.SUBCASE_LEMMAS["8.5"]
    for triple, sub in sorted(CASE9_SUBCASES.items(), key=lambda kv: kv[1]):
        if sub in CASE9_WITH_CLOSED_FORM:
            fams.append(Family(9, sub, _rows_filter(9, {triple}, permute=False),
                               _lemma_domain(lemma85), (
                Check(f"{sub}:remark", "Remark (Case 9 = Subcase 8.5)", "identity", _case9_as_85,
                      description="det equals that of the Subcase 8.5 block"),
                _predicate(f"{sub}:lemma8.5", "Lemma 8.5 applied to Case 9",
                           _lemma_predicate(lemma85), away23,
                           description="Lemma 8.5 conditions"),
            )))
        elif _rows_filter(9, {triple}, permute=False)():
            fams.append(Family(9, sub, _rows_filter(9, {triple}, permute=False), _grid_domain, (),
                               f"no closed form stated for phi triple {triple}"))
    away123 = _beta_avoids_pm_one(0, 1, 2)
    fams.append(Family(10, None, _rows_filter(10, permute=False), _case10_domain, (
        _identity("10:tmz1-phi", "(Case 9.tmz1) line 1", P.det_case10_phi_form,
                  description="expansion in phi"),
        _identity("10:tmz1-beta", "(Case 9.tmz1) line 2", P.det_case10_beta_form,
                  description="expansion in beta"),
        _identity("10:tmz1-sqrt3", "(Case 9.tmz1) line 3", P.det_case10_sqrt3_form,
                  description="simplified expansion in beta"),
        _identity("10:linear", "(alphaCase10)/(deltaCase10)", P.det_case10_linear,
                  description="det = delta*beta3 + alpha"),
        _predicate("10:prop10", "Prop 10", P.predicted_zero_case10, away123,
                   description="special beta2, otherwise det = 0 iff beta3 = -alpha/delta"),
    )))
    return tuple(fams)


CATALOG = build_catalog()


def families_for(case_id: int, subcase_id: Optional[str] = None) -> list:
    fams = [f for f in CATALOG if f.case_id == case_id
            and (subcase_id is None or f.subcase_id == subcase_id)]
    if not fams:
        if case_id in (8, 9):
            raise SubcaseNotInPaper(f"no closed form for Case {case_id} subcase {subcase_id}")
        raise NotApplicable(f"no closed form for Case {case_id}")
    return fams


# -- running -------------------------------------------------------------------------

class _Oracle:
    """Memoised det gamma; (k, u) enters only through k + 3u mod 6."""

    def __init__(self) -> None:
        self.cache: dict = {}

    def __call__(self, rows: tuple, betas: tuple, bcs: tuple, k: int, u: int) -> CycNum:
        key = (rows, betas, (k + 3 * u) % 6)
        v = self.cache.get(key)
        if v is None:
            v = reduced_det(bcs, k, u)
            self.cache[key] = v
        return v


def run_family(fam: Family, sweep: SweepConfig) -> list:
    reports = [DiscrepancyReport(c.check_id, c.label, fam.case_id, fam.subcase_id, c.kind,
                                 c.description) for c in fam.checks]
    if not fam.checks:
        return [DiscrepancyReport(f"{fam.subcase_id}:none", "none", fam.case_id, fam.subcase_id,
                                  "none", "", not_applicable_reason=fam.not_applicable_reason)]
    oracle = _Oracle()
    for rows in fam.rows():
        theta = tuple(r[0] for r in rows)
        phi = tuple(r[1] for r in rows)
        for betas in _beta_tuples(rows, fam.domain, sweep):
            bcs = make_bcs(rows, betas)
            cfg = P.Config(theta, phi, betas)
            live = [(c, r) for c, r in zip(fam.checks, reports) if c.applies(cfg)]
            skipped = [r for c, r in zip(fam.checks, reports) if not c.applies(cfg)]
            for r in skipped:
                r.skipped += len(KU)
            if not live:
                continue
            for k, u in KU:
                pt = Point(cfg, bcs, k, u)
                truth = oracle(rows, betas, bcs, k, u)
                for check, rep in live:
                    pred = check.evaluate(pt)
                    if pred is None:
                        rep.skipped += 1
                        continue
                    if check.kind == "identity":
                        agree = pred == truth
                    else:
                        agree = bool(pred) == truth.is_zero()
                    rep.record(pt, truth, pred, agree)
    return reports


def _run_index(args) -> list:
    index, sweep = args
    return run_family(CATALOG[index], sweep)


def cross_validate(case_id: int, subcase_id: Optional[str] = None,
                   sweep: Optional[SweepConfig] = None) -> list:
    """One DiscrepancyReport per stated formula of the case (or subcase)."""
    sweep = sweep or SweepConfig()
    out = []
    for fam in families_for(case_id, subcase_id):
        out.extend(run_family(fam, sweep))
    return out


def verify_all(sweep: Optional[SweepConfig] = None) -> list:
    """Reports for every family in the selected cases, in catalog order."""
    sweep = sweep or SweepConfig()
    chosen = [i for i, f in enumerate(CATALOG) if f.case_id in sweep.cases]
    if sweep.threads > 1 and len(chosen) > 1:
        from multiprocessing import get_context
        with get_context("fork").Pool(min(sweep.threads, len(chosen))) as pool:
            parts = pool.map(_run_index, [(i, sweep) for i in chosen])
    else:
        parts = [_run_index((i, sweep)) for i in chosen]
    return [r for part in parts for r in part]


def parse_grid(text: str) -> tuple:
    values = tuple(parse_cyc(t) for t in text.split(",") if t.strip())
    if not values:
        raise ValueError("empty grid")
    if any(v.is_zero() for v in values):
        raise ValueError("grid values must be nonzero")
    return values
