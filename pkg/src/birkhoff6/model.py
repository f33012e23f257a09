"""Separated, lambda-linear boundary conditions for the sixth-order problem.

A condition at endpoint ``a`` or ``b`` reads

    sum_{k<=p} alpha_k y^(k)(x) + i*lambda * sum_{k<=q} beta_k y^(k)(x) = 0

with ``p`` or ``q`` possibly absent (``None``).  Three conditions sit at each
endpoint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

from .cyclotomic import ONE, CycLiteralError, CycNum, format_cyc, parse_cyc

MAX_ORDER = 5
ENDPOINTS = ("A", "B")


class ProblemError(ValueError):
    """Invalid problem data; ``where`` points at the offending field."""

    def __init__(self, message: str, endpoint: str | None = None,
                 index: int | None = None, field: str | None = None) -> None:
        self.endpoint = endpoint
        self.index = index
        self.field = field
        super().__init__(f"{self.where}: {message}" if self.where else message)

    @property
    def where(self) -> str:
        if self.endpoint is None:
            return ""
        loc = f"endpoint_{self.endpoint.lower()}"
        if self.index is not None:
            loc += f"[{self.index}]"
        if self.field:
            loc += f".{self.field}"
        return loc


class ParseError(ProblemError):
    pass


class DuplicateOrder(ProblemError):
    pass


class MissingNormalization(ProblemError):
    pass


class ZeroLeadingBeta(ProblemError):
    pass


class EmptyCondition(ProblemError):
    pass


class OrderRangeError(ProblemError):
    pass


@dataclass(frozen=True)
class BoundaryCondition:
    """One boundary condition; ``alpha``/``beta`` are indexed by derivative order."""

    endpoint: str
    p: Optional[int]
    alpha: tuple = ()
    q: Optional[int] = None
    beta: tuple = ()

    @property
    def depends_on_lambda(self) -> bool:
        return self.q is not None

    @property
    def leading_beta(self) -> Optional[CycNum]:
        return None if self.q is None else self.beta[self.q]

    def alpha_at(self, k: int):
        return self.alpha[k] if self.p is not None and k <= self.p else 0

    def beta_at(self, k: int):
        return self.beta[k] if self.q is not None and k <= self.q else 0

    def scaled(self, c: CycNum) -> BoundaryCondition:
        return BoundaryCondition(self.endpoint, self.p, tuple(c * x for x in self.alpha),
                                 self.q, tuple(c * x for x in self.beta))


def compute_nu(bc: BoundaryCondition) -> int:
    """Degree of the condition's boundary form in mu: max(p, q + 3)."""
    orders = []
    if bc.p is not None:
        orders.append(bc.p)
    if bc.q is not None:
        orders.append(bc.q + 3)
    return max(orders)


@dataclass(frozen=True)
class ProblemSpec:
    bcs_a: tuple
    bcs_b: tuple
    g_metadata: Optional[dict] = None

    def endpoint(self, u: int) -> tuple:
        return self.bcs_a if u == 0 else self.bcs_b

    @property
    def conditions(self) -> tuple:
        return self.bcs_a + self.bcs_b


@dataclass(frozen=True)
class DerivedSets:
    """Index sets over conditions 1..6 (1-3 at a, 4-6 at b)."""

    theta1_a: frozenset
    theta1_b: frozenset
    theta0: frozenset
    lambda_a: frozenset
    lambda_b: frozenset
    nu: tuple

    @property
    def theta1(self) -> frozenset:
        return self.theta1_a | self.theta1_b


@dataclass(frozen=True)
class ValidatedProblem:
    spec: ProblemSpec
    sets: DerivedSets
    exact: bool = True

    def endpoint(self, u: int) -> tuple:
        return self.spec.endpoint(u)


def _check_order(value, endpoint, index, name) -> Optional[int]:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise OrderRangeError(f"order must be an integer or null, got {value!r}",
                              endpoint, index, name)
    if not 0 <= value <= MAX_ORDER:
        raise OrderRangeError(f"order {value} outside 0..{MAX_ORDER}", endpoint, index, name)
    return value


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, CycNum) else x == 0


def _is_one(x, exact: bool) -> bool:
    if isinstance(x, CycNum):
        return x == ONE
    if exact:
        return False
    return abs(complex(x) - 1) < 1e-12


def validate_condition(bc: BoundaryCondition, index: int | None = None,
                       exact: bool = True) -> None:
    ep = bc.endpoint
    if ep not in ENDPOINTS:
        raise ProblemError(f"unknown endpoint {ep!r}")
    _check_order(bc.p, ep, index, "p")
    _check_order(bc.q, ep, index, "q")
    if bc.p is None and bc.q is None:
        raise EmptyCondition("both p and q are absent", ep, index)
    for name, order, coeffs in (("alpha", bc.p, bc.alpha), ("beta", bc.q, bc.beta)):
        expected = 0 if order is None else order + 1
        if len(coeffs) != expected:
            raise ProblemError(f"expected {expected} coefficients, got {len(coeffs)}",
                               ep, index, name)
        if exact and not all(isinstance(c, CycNum) for c in coeffs):
            raise ProblemError("exact mode requires CycNum coefficients", ep, index, name)
    if bc.p is not None and not _is_one(bc.alpha[bc.p], exact):
        raise MissingNormalization(f"alpha[{bc.p}] must equal 1", ep, index, "alpha")
    if bc.q is not None and _is_zero(bc.beta[bc.q]):
        raise ZeroLeadingBeta(f"beta[{bc.q}] must be nonzero", ep, index, "beta")


def _check_distinct(bcs: Sequence[BoundaryCondition], endpoint: str) -> None:
    seen: dict[int, tuple[int, str]] = {}
    entries = []
    for idx, bc in enumerate(bcs):
        if bc.p is not None:
            entries.append((bc.p, idx, "p"))
        if bc.q is not None:
            entries.append((bc.q, idx, "q"))
    # sort so the reported pair does not depend on list order
    for order, idx, name in sorted(entries):
        if order in seen:
            pidx, pname = seen[order]
            raise DuplicateOrder(
                f"derivative order {order} used twice ({pname} of condition {pidx} "
                f"and {name} of condition {idx})", endpoint, idx, name)
        seen[order] = (idx, name)


def validate_problem(spec: ProblemSpec, exact: bool = True) -> ValidatedProblem:
    """Check per-condition normalization and distinctness of orders per endpoint."""
    for endpoint, bcs in (("A", spec.bcs_a), ("B", spec.bcs_b)):
        if len(bcs) != 3:
            raise ProblemError(f"expected 3 conditions, got {len(bcs)}", endpoint)
        for idx, bc in enumerate(bcs):
            if bc.endpoint != endpoint:
                raise ProblemError(f"condition tagged {bc.endpoint!r} listed at {endpoint!r}",
                                   endpoint, idx)
            validate_condition(bc, idx, exact)
        _check_distinct(bcs, endpoint)
    return ValidatedProblem(spec, derived_sets(spec), exact)


def derived_sets(spec: ProblemSpec) -> DerivedSets:
    conds = spec.conditions
    theta1 = {j + 1 for j, bc in enumerate(conds) if bc.q is not None}
    lam = {j + 1 for j, bc in enumerate(conds) if bc.p is not None}
    a, b = {1, 2, 3}, {4, 5, 6}
    return DerivedSets(
        theta1_a=frozenset(theta1 & a),
        theta1_b=frozenset(theta1 & b),
        theta0=frozenset((a | b) - theta1),
        lambda_a=frozenset(lam & a),
        lambda_b=frozenset(lam & b),
        nu=tuple(compute_nu(bc) for bc in conds),
    )


# -- construction helpers -----------------------------------------------------

def condition(endpoint: str, p: Optional[int] = None, q: Optional[int] = None,
              beta=None, alpha: Iterable | None = None,
              beta_lower: Iterable | None = None) -> BoundaryCondition:
    """Build a condition with zero lower-order terms unless given.

    ``beta`` is the leading lambda coefficient (default 1); ``alpha`` gives the
    alpha list below the normalized top entry.
    """
    al: tuple = ()
    if p is not None:
        low = [CycNum.coerce(x) for x in (alpha or [])] + [CycNum.coerce(0)] * p
        al = tuple(low[:p]) + (ONE,)
    be: tuple = ()
    if q is not None:
        low = [CycNum.coerce(x) for x in (beta_lower or [])] + [CycNum.coerce(0)] * q
        lead = CycNum.coerce(1 if beta is None else beta)
        be = tuple(low[:q]) + (lead,)
    return BoundaryCondition(endpoint, p, al, q, be)


def problem(a: Sequence[BoundaryCondition], b: Sequence[BoundaryCondition],
            g_metadata: Optional[dict] = None) -> ProblemSpec:
    return ProblemSpec(tuple(a), tuple(b), g_metadata)


def dirichlet_problem() -> ProblemSpec:
    a = [condition("A", p) for p in (0, 1, 2)]
    b = [condition("B", p) for p in (0, 1, 2)]
    return problem(a, b)


# -- JSON ------------------------------------------------------------------------

def _parse_coeffs(values, endpoint, index, name) -> tuple:
    if values is None:
        return ()
    if not isinstance(values, list):
        raise ParseError("expected a list of CycNum literals", endpoint, index, name)
    out = []
    for pos, v in enumerate(values):
        if isinstance(v, int) and not isinstance(v, bool):
            out.append(CycNum.coerce(v))
            continue
        try:
            out.append(parse_cyc(v))
        except CycLiteralError as exc:
            raise ParseError(str(exc), endpoint, index, f"{name}[{pos}]") from None
    return tuple(out)


def condition_from_dict(data: Any, endpoint: str, index: int) -> BoundaryCondition:
    if not isinstance(data, dict):
        raise ParseError("condition must be a JSON object", endpoint, index)
    unknown = set(data) - {"p", "alpha", "q", "beta"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", endpoint, index)
    p = _check_order(data.get("p"), endpoint, index, "p")
    q = _check_order(data.get("q"), endpoint, index, "q")
    alpha = _parse_coeffs(data.get("alpha"), endpoint, index, "alpha")
    beta = _parse_coeffs(data.get("beta"), endpoint, index, "beta")
    return BoundaryCondition(endpoint, p, alpha, q, beta)


def problem_from_dict(data: Any) -> ProblemSpec:
    if not isinstance(data, dict):
        raise ParseError("problem document must be a JSON object")
    ends = {}
    for endpoint, key in (("A", "endpoint_a"), ("B", "endpoint_b")):
        rows = data.get(key)
        if not isinstance(rows, list):
            raise ParseError(f"missing or non-list {key!r}", endpoint)
        if len(rows) != 3:
            raise ParseError(f"expected 3 conditions, got {len(rows)}", endpoint)
        ends[endpoint] = tuple(condition_from_dict(r, endpoint, i) for i, r in enumerate(rows))
    meta = data.get("g_metadata")
    if meta is not None:
        if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
            raise ParseError("g_metadata must map names to strings")
        meta = dict(meta)
    return ProblemSpec(ends["A"], ends["B"], meta)


def parse_problem(text: str) -> ProblemSpec:
    """Parse a problem document; errors carry line/column or field location."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return problem_from_dict(data)


def condition_to_dict(bc: BoundaryCondition) -> dict:
    return {
        "p": bc.p,
        "alpha": None if bc.p is None else [format_cyc(c) for c in bc.alpha],
        "q": bc.q,
        "beta": None if bc.q is None else [format_cyc(c) for c in bc.beta],
    }


def problem_to_dict(spec: ProblemSpec) -> dict:
    out: dict = {
        "endpoint_a": [condition_to_dict(bc) for bc in spec.bcs_a],
        "endpoint_b": [condition_to_dict(bc) for bc in spec.bcs_b],
    }
    if spec.g_metadata is not None:
        out["g_metadata"] = dict(spec.g_metadata)
    return out


def dump_problem(spec: ProblemSpec) -> str:
    return json.dumps(problem_to_dict(spec), indent=2, sort_keys=True)
