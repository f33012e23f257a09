"""Endpoint case labels (Cases 1-10) and the census of the relation space."""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .model import BoundaryCondition

# highest lambda-order covered by the closed-form propositions
PROPOSITION_MAX_Q = 2


class Relation(str, enum.Enum):
    G = "G"  # p > q + 3
    L = "L"  # p < q + 3
    E = "E"  # p = q + 3

    @property
    def rank(self) -> int:
        return "GLE".index(self.value)


CASE_OF_MULTISET = {
    "GGG": 1, "LLL": 2, "GGL": 3, "GLL": 4, "GGE": 5,
    "GLE": 6, "LLE": 7, "GEE": 8, "LEE": 9, "EEE": 10,
}

CASE8_SUBCASES = {
    (2, 0, 1): "8.1", (5, 0, 1): "8.2", (1, 0, 2): "8.3",
    (4, 0, 2): "8.4", (0, 1, 2): "8.5", (3, 1, 2): "8.6",
}
# Case 9 mirrors Case 8 with the leading order of the first row taken from q
CASE9_SUBCASES = {key: "9" + label[1:] for key, label in CASE8_SUBCASES.items()}
CASE9_WITH_CLOSED_FORM = {"9.5"}


def relation_of(bc: BoundaryCondition) -> Relation:
    if bc.q is None:
        return Relation.G
    if bc.p is None:
        return Relation.L
    if bc.p > bc.q + 3:
        return Relation.G
    if bc.p < bc.q + 3:
        return Relation.L
    return Relation.E


def governing_order(bc: BoundaryCondition) -> int:
    """theta for G rows, phi for L and E rows."""
    return bc.p if relation_of(bc) is Relation.G else bc.q


@dataclass(frozen=True)
class EndpointClassification:
    relations: tuple
    case_id: int
    subcase_id: Optional[str]
    permutation: tuple
    theta: tuple
    phi: tuple
    closed_form_available: bool = True
    not_applicable_reason: Optional[str] = None

    @property
    def governing(self) -> tuple:
        return tuple(t if r is Relation.G else f
                     for r, t, f in zip(self.relations, self.theta, self.phi))

    def canonical(self, bcs: Sequence[BoundaryCondition]) -> tuple:
        return tuple(bcs[i] for i in self.permutation)

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "subcase": self.subcase_id,
            "relations": "".join(r.value for r in self.relations),
            "permutation": list(self.permutation),
            "theta": list(self.theta),
            "phi": list(self.phi),
            "closed_form_available": self.closed_form_available,
            "not_applicable_reason": self.not_applicable_reason,
        }


def classify_endpoint(bcs: Sequence[BoundaryCondition]) -> EndpointClassification:
    """Sort an endpoint's conditions into canonical order and assign its case.

    Canonical order ranks G before L before E, then ascending governing order.
    Case 8/9 triples outside the listed subcases are labelled but flagged as
    oracle-only through ``closed_form_available``.
    """
    if len(bcs) != 3:
        raise ValueError("an endpoint carries exactly three conditions")
    rels = [relation_of(bc) for bc in bcs]
    perm = tuple(sorted(range(3), key=lambda i: (rels[i].rank, governing_order(bcs[i]), i)))
    relations = tuple(rels[i] for i in perm)
    ordered = [bcs[i] for i in perm]
    key = "".join(r.value for r in relations)
    case_id = CASE_OF_MULTISET[key]
    theta = tuple(bc.p for bc in ordered)
    phi = tuple(bc.q for bc in ordered)

    subcase = None
    available = True
    reason = None
    qs = [q for q in phi if q is not None]
    if qs and max(qs) > PROPOSITION_MAX_Q:
        available = False
        reason = f"q = {max(qs)} exceeds the propositions' range 0..{PROPOSITION_MAX_Q}"
    if case_id == 8:
        subcase = CASE8_SUBCASES.get((theta[0], phi[1], phi[2]))
        if subcase is None:
            available = False
            reason = reason or "Case 8 triple not among the listed subcases"
    elif case_id == 9:
        triple = (phi[0], phi[1], phi[2])
        subcase = CASE9_SUBCASES.get(triple)
        if subcase not in CASE9_WITH_CLOSED_FORM:
            available = False
            reason = reason or f"Case 9 triple {triple} has no stated closed form"
    return EndpointClassification(relations, case_id, subcase, perm, theta, phi,
                                  available, reason)


# -- census --------------------------------------------------------------------

@dataclass(frozen=True)
class CaseCensus:
    total_ordered: int
    pure: int
    mixed_canonical: int
    redundant: int
    case8_subcases: list
    case10_forced: tuple
    case9_triples: list = field(default_factory=list)
    assignments_per_case: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "total_ordered": self.total_ordered,
            "pure": self.pure,
            "mixed_canonical": self.mixed_canonical,
            "redundant": self.redundant,
            "case8_subcases": [list(t) for t in self.case8_subcases],
            "case10_forced": list(self.case10_forced),
            "case9_triples": [list(t) for t in self.case9_triples],
            "assignments_per_case": {str(k): v for k, v in sorted(self.assignments_per_case.items())},
        }


# (p, q) realisations of a single condition with q in the propositions' range
def _row_options(max_q: int) -> list[tuple[Optional[int], Optional[int]]]:
    ps = [None, *range(6)]
    qs = [None, *range(max_q + 1)]
    return [(p, q) for p in ps for q in qs if not (p is None and q is None)]


def _distinct(rows) -> bool:
    used = [o for row in rows for o in row if o is not None]
    return len(used) == len(set(used))


def _relation_pq(p, q) -> Relation:
    if q is None:
        return Relation.G
    if p is None:
        return Relation.L
    return Relation.G if p > q + 3 else Relation.L if p < q + 3 else Relation.E


def admissible_endpoint_rows(max_q: int = PROPOSITION_MAX_Q):
    """Unordered triples of (p, q) rows satisfying the distinct-order assumption."""
    opts = _row_options(max_q)
    for combo in itertools.combinations(opts, 3):
        if _distinct(combo):
            yield combo


def enumerate_case_space() -> CaseCensus:
    ordered = list(itertools.product("GLE", repeat=3))
    multisets = Counter("".join(sorted(t, key="GLE".index)) for t in ordered)
    pure = sum(1 for m in multisets if len(set(m)) == 1)
    mixed = len(multisets) - pure
    redundant = len(ordered) - len(multisets)

    case8 = []
    for f2, f3 in itertools.combinations(range(PROPOSITION_MAX_Q + 1), 2):
        for t1 in range(6):
            if _distinct([(t1,), (f2, f2 + 3), (f3, f3 + 3)]):
                case8.append((t1, f2, f3))
    case9 = []
    for f2, f3 in itertools.combinations(range(PROPOSITION_MAX_Q + 1), 2):
        for f1 in range(PROPOSITION_MAX_Q + 1):
            if _distinct([(f1,), (f2, f2 + 3), (f3, f3 + 3)]):
                case9.append((f1, f2, f3))
    case10 = [t for t in itertools.combinations(range(PROPOSITION_MAX_Q + 1), 3)
              if _distinct([(f, f + 3) for f in t])]
    if len(case10) != 1:
        raise AssertionError(f"Case 10 expected one phi triple, found {case10}")

    per_case: Counter = Counter()
    for rows in admissible_endpoint_rows():
        key = "".join(sorted((_relation_pq(*r).value for r in rows), key="GLE".index))
        per_case[CASE_OF_MULTISET[key]] += 1
    return CaseCensus(
        total_ordered=len(ordered),
        pure=pure,
        mixed_canonical=mixed,
        redundant=redundant,
        case8_subcases=sorted(case8, key=lambda t: CASE8_SUBCASES.get(t, "~")),
        case10_forced=case10[0],
        case9_triples=sorted(case9),
        assignments_per_case=dict(per_case),
    )


def census_table(census: CaseCensus) -> str:
    lines = [
        f"ordered relation triples : {census.total_ordered}",
        f"pure cases               : {census.pure}",
        f"mixed canonical cases    : {census.mixed_canonical}",
        f"redundant permutations   : {census.redundant}",
        "Case 8 subcases (theta1, phi2, phi3):",
    ]
    for t in census.case8_subcases:
        lines.append(f"  {CASE8_SUBCASES.get(t, '?'):>4}  {t}")
    lines.append(f"Case 9 triples (phi1, phi2, phi3): {census.case9_triples}")
    lines.append(f"Case 10 forced phi triple: {census.case10_forced}")
    lines.append("admissible endpoint assignments per case (q <= 2):")
    for case in sorted(census.assignments_per_case):
        lines.append(f"  Case {case:>2}: {census.assignments_per_case[case]}")
    return "\n".join(lines)
