"""Boundary matrices W^(u)(mu) as polynomials in mu, with lambda = mu^3.

This is the slow, literal route to the leading-coefficient matrices: each
boundary form is expanded against the fundamental matrix and the coefficient
at mu^nu is read off.  ``birkhoff.omega_leading`` gets the same numbers from
the three-regime table; the two are compared in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import I, ZERO, CycNum, format_cyc, xi_pow
from .model import BoundaryCondition, ProblemSpec, compute_nu


class DegreeExceedsNu(ArithmeticError):
    pass


@dataclass(frozen=True)
class CycPoly:
    """Polynomial in mu with CycNum coefficients, lowest degree first."""

    coefficients: tuple

    def __post_init__(self) -> None:
        cs = list(self.coefficients)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def monomial(cls, c: CycNum, degree: int) -> CycPoly:
        return cls((ZERO,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def coeff(self, d: int) -> CycNum:
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else ZERO

    def __add__(self, other: CycPoly) -> CycPoly:
        n = max(len(self.coefficients), len(other.coefficients))
        return CycPoly(tuple(self.coeff(d) + other.coeff(d) for d in range(n)))

    def __mul__(self, other: CycPoly) -> CycPoly:
        if self.is_zero() or other.is_zero():
            return CycPoly(())
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return CycPoly(tuple(out))

    def to_list(self) -> list[str]:
        return [format_cyc(c) for c in self.coefficients]


def _column(k: int, u: int) -> int:
    """Effective 1-based column index; endpoint b is read three columns on."""
    return (k + 3 * u - 1) % 6 + 1


def fundamental_matrix() -> list[list[CycPoly]]:
    """C(mu): entry (l, k) = xi^((l-1)(2k+1)) * mu^(l-1), 1-based l, k."""
    return [[CycPoly.monomial(xi_pow((l - 1) * (2 * k + 1)), l - 1) for k in range(1, 7)]
            for l in range(1, 7)]


def omega_poly(bc: BoundaryCondition, order: int) -> CycPoly:
    """Coefficient of y^(order) in the boundary form: alpha + i*mu^3*beta."""
    a = CycNum.coerce(bc.alpha_at(order))
    b = CycNum.coerce(bc.beta_at(order))
    return CycPoly((a, ZERO, ZERO, I * b))


def gamma_poly(bc: BoundaryCondition, k: int, u: int = 0) -> CycPoly:
    """gamma_{j,k}(mu) = sum_l omega_l(mu^3) xi^((l-1)(2c+1)) mu^(l-1), c = k + 3u."""
    c = _column(k, u)
    total = CycPoly(())
    for l in range(1, 7):
        om = omega_poly(bc, l - 1)
        if om.is_zero():
            continue
        total = total + om * CycPoly.monomial(xi_pow((l - 1) * (2 * c + 1)), l - 1)
    return total


def leading_data(poly: CycPoly, expected_nu: int) -> tuple[int, CycNum]:
    """Actual degree and the coefficient at mu^expected_nu (the W0 entry)."""
    if poly.degree > expected_nu:
        raise DegreeExceedsNu(f"degree {poly.degree} exceeds nu = {expected_nu}")
    return poly.degree, poly.coeff(expected_nu)


def boundary_matrix_poly(spec: ProblemSpec, u: int) -> list[list[CycPoly]]:
    """W^(u)(mu): rows of the endpoint's conditions, zero rows elsewhere."""
    rows: list[list[CycPoly]] = [[CycPoly(()) for _ in range(6)] for _ in range(6)]
    for j, bc in enumerate(spec.endpoint(u)):
        for k in range(1, 7):
            rows[3 * u + j][k - 1] = gamma_poly(bc, k)
    return rows


def leading_matrix_from_poly(spec: ProblemSpec, u: int) -> list[list[CycNum]]:
    """W0^(u) via polynomial expansion; row j scaled by mu^-nu_j."""
    w = boundary_matrix_poly(spec, u)
    out = [[ZERO] * 6 for _ in range(6)]
    for j, bc in enumerate(spec.endpoint(u)):
        nu = compute_nu(bc)
        for k in range(6):
            out[3 * u + j][k] = leading_data(w[3 * u + j][k], nu)[1]
    return out


def dump_boundary_matrix(spec: ProblemSpec, u: int) -> dict:
    w = boundary_matrix_poly(spec, u)
    return {"u": u, "entries": [[entry.to_list() for entry in row] for row in w]}
