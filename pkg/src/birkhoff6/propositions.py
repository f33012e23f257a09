"""Closed-form determinant expressions and nonvanishing conditions for Cases 1-10.

Each endpoint configuration is given in the row order the statements use
(e.g. G, G, E for Case 5).  ``theta_j``/``phi_j`` are the p/q orders of row j
and ``beta_j`` its leading lambda coefficient.  Expressions are kept exactly
as stated, including ones that turn out not to equal the determinant; the
cross-validation harness decides which hold.

Sign conventions: a stated ``+-`` / ``-+`` pair takes its upper sign when
i^tau = +i.  A pure constant written ``+-c`` (as in ``beta = +-1``) means the
set {c, -c}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .birkhoff import i_pow, phi
from .cyclotomic import I, ONE, SQRT3, CycNum, xi_pow
from .model import BoundaryCondition

PM_ONE = (ONE, -ONE)
PM_THREE = (CycNum(3), CycNum(-3))


@dataclass(frozen=True)
class Parity:
    """Powers of i and -1 attached to tau = 2(k+3u)+1."""

    t: int

    @property
    def s(self) -> CycNum:
        return i_pow(self.t)

    @property
    def s1(self) -> CycNum:
        return i_pow(self.t + 1)

    @property
    def m(self) -> CycNum:
        return CycNum((-1) ** self.t)

    @property
    def m1(self) -> CycNum:
        return CycNum((-1) ** (self.t + 1))

    @property
    def upper(self) -> bool:
        return self.s == I

    @property
    def label(self) -> str:
        return "+i" if self.upper else "-i"


@dataclass(frozen=True)
class Config:
    """Orders and leading betas of an endpoint's three rows, in statement order."""

    theta: tuple
    phi: tuple
    beta: tuple

    @classmethod
    def from_bcs(cls, bcs: Sequence[BoundaryCondition]) -> Config:
        return cls(tuple(bc.p for bc in bcs), tuple(bc.q for bc in bcs),
                   tuple(bc.leading_beta if bc.q is not None else None for bc in bcs))

    def with_beta(self, beta: Sequence[Optional[CycNum]]) -> Config:
        return Config(self.theta, self.phi, tuple(beta))


def x2(e: int) -> CycNum:
    """xi^(2e)."""
    return xi_pow(2 * e)


def x4(e: int) -> CycNum:
    return xi_pow(4 * e)


XI2 = xi_pow(2)
XI4 = xi_pow(4)
XI8 = xi_pow(8)


def _pm(par: Parity, value: CycNum) -> CycNum:
    """Apply a stated -+ : minus under the upper sign."""
    return -value if par.upper else value


def vandermonde(a: int, b: int, c: int) -> CycNum:
    return (x2(b) - x2(a)) * (x2(c) - x2(a)) * (x2(c) - x2(b))


# -- Cases 1-4 --------------------------------------------------------------------

def det_case1(cfg: Config, par: Parity) -> CycNum:
    t1, t2, t3 = cfg.theta
    return vandermonde(t1, t2, t3)


def det_case2(cfg: Config, par: Parity) -> CycNum:
    f1, f2, f3 = cfg.phi
    return vandermonde(f1, f2, f3)


def det_case3_matrix(cfg: Config, par: Parity) -> CycNum:
    """Product read off the displayed Case 3 matrix (rows theta1, theta2, phi3)."""
    return vandermonde(cfg.theta[0], cfg.theta[1], cfg.phi[2])


def det_case3_printed(cfg: Config, par: Parity) -> Optional[CycNum]:
    """Printed Case 3 product; uses phi2 and theta3, which may be absent."""
    t1, _, t3 = cfg.theta
    _, f2, f3 = cfg.phi
    if f2 is None or t3 is None:
        return None
    return (x2(f2) - x2(t1)) * (x2(f3) - x2(t1)) * (x2(t3) - x2(f2))


def det_case4(cfg: Config, par: Parity) -> CycNum:
    t1 = cfg.theta[0]
    _, f2, f3 = cfg.phi
    return (x2(f2) - x2(t1)) * (x2(f3) - x2(t1)) * (x2(f2) - x2(f3))


# -- Cases 5-7 --------------------------------------------------------------------

def det_case5_expanded(cfg: Config, par: Parity) -> CycNum:
    t1, t2, _ = cfg.theta
    f3 = cfg.phi[2]
    b3 = cfg.beta[2]
    p, q = phi(b3, par.t), phi(b3, par.t + 2)
    return ((x2(t2) - x2(t1)) * (x4(f3) * p - x4(t1) * p)
            - (x4(t2) - x4(t1)) * (x2(f3) * q - x2(t1) * p))


def det_case5_factored(cfg: Config, par: Parity) -> CycNum:
    # stated with i^(tau_{3,u}); read as i^(tau_{k,u})
    t1, t2, _ = cfg.theta
    f3 = cfg.phi[2]
    b3 = cfg.beta[2]
    y = x2(f3)
    return ((x2(t2) - x2(t1)) * (y + x2(t2))
            * (par.s * (y + x2(t1)) + I * b3 * (y - x2(t2))))


def _ratio_value(par: Parity, top: int, bottom: int, y: int) -> CycNum:
    """-+ (xi^(2y) + xi^(2 top)) / (xi^(2y) - xi^(2 bottom))."""
    return _pm(par, (x2(y) + x2(top)) / (x2(y) - x2(bottom)))


def forbidden_case5(cfg: Config, par: Parity) -> CycNum:
    return _ratio_value(par, cfg.theta[0], cfg.theta[1], cfg.phi[2])


def forbidden_case6(cfg: Config, par: Parity) -> CycNum:
    return _ratio_value(par, cfg.theta[0], cfg.phi[1], cfg.phi[2])


def forbidden_case7(cfg: Config, par: Parity) -> CycNum:
    return _ratio_value(par, cfg.phi[0], cfg.phi[1], cfg.phi[2])


# -- Case 8 -------------------------------------------------------------------------

def det_case8_generic(cfg: Config, par: Parity) -> CycNum:
    t1 = cfg.theta[0]
    _, f2, f3 = cfg.phi
    _, b2, b3 = cfg.beta
    t = par.t
    p2, q2 = phi(b2, t), phi(b2, t + 2)
    p3, q3 = phi(b3, t), phi(b3, t + 2)
    return ((x2(f2) * q2 - x2(t1) * p2) * (x4(f3) * p3 - x4(t1) * p3)
            - (x4(f2) * p2 - x4(t1) * p2) * (x2(f3) * q3 - x2(t1) * p3))


def _b23(cfg: Config) -> tuple[CycNum, CycNum]:
    return cfg.beta[1], cfg.beta[2]


def det_sub81(cfg: Config, par: Parity) -> CycNum:
    b2, b3 = _b23(cfg)
    s1, m = par.s1, par.m
    return (-SQRT3 * I * b3 * (s1 + b2) + (m + 3 * s1 * b2) * XI4
            + (m + 2 * s1) * XI2)


def det_sub82(cfg: Config, par: Parity) -> CycNum:
    b2, b3 = _b23(cfg)
    s1, m1 = par.s1, par.m1
    return SQRT3 * I * (b3 * (b2 - 3 * s1) + (m1 + s1 * b2))


def det_sub83(cfg: Config, par: Parity) -> CycNum:
    b2, b3 = _b23(cfg)
    s1, m1 = par.s1, par.m1
    return (b3 * (b2 + s1) + (3 * m1 + s1 * b2)) * (XI4 + XI2)


def det_sub84(cfg: Config, par: Parity) -> CycNum:
    # the stated opening parenthesis is never closed; beta3 is read as
    # multiplying only its own bracket
    b2, b3 = _b23(cfg)
    s1, m1 = par.s1, par.m1
    return (b3 * (b2 - 3 * s1) * XI4 + (s1 + b2) * XI2
            + (s1 * b2 + m1) * XI4 + (m1 - 3 * s1 * b2) * XI2)


def det_sub85(cfg: Config, par: Parity) -> CycNum:
    b2, b3 = _b23(cfg)
    s1, m1 = par.s1, par.m1
    return (b3 * (-b2 * (XI4 + XI2) + 3 * s1 * XI4 - s1 * XI2)
            + (m1 - s1 * b2) * XI4 - 3 * (m1 + b2) * XI2)


def det_sub86(cfg: Config, par: Parity) -> CycNum:
    b2, b3 = _b23(cfg)
    s1, m1 = par.s1, par.m1
    return (b3 * (2 * s1 * XI4 + 2 * b2 * XI2) - 2 * s1 * b2 * XI4
            - (4 * s1 * b2 + m1) * XI2)


# Each lemma gives: exempt beta2 values (det claimed nonzero), and the
# forbidden beta3 as a function of beta2 (None when its denominator vanishes).

def _safe_div(num: CycNum, den: CycNum) -> Optional[CycNum]:
    return None if den.is_zero() else num / den


def forbidden_sub81(b2: CycNum, par: Parity) -> Optional[CycNum]:
    s1, m = par.s1, par.m
    return _safe_div((m + 3 * s1 * b2) * XI4 + (m + 2 * s1) * XI2,
                     SQRT3 * I * (s1 + b2))


def forbidden_sub82(b2: CycNum, par: Parity) -> Optional[CycNum]:
    s1, m1 = par.s1, par.m1
    return _safe_div(m1 + s1 * b2, 3 * s1 - b2)


def forbidden_sub83(b2: CycNum, par: Parity) -> Optional[CycNum]:
    s1, m1 = par.s1, par.m1
    v = _safe_div(3 * m1 + s1 * b2, s1 + b2)
    return None if v is None else -v


def forbidden_sub84(b2: CycNum, par: Parity) -> Optional[CycNum]:
    s1, m1 = par.s1, par.m1
    den = 3 * s1 - b2
    if den.is_zero():
        return None
    return (-(s1 + b2) * (XI2 + s1 * XI4) / den
            - (m1 - 3 * s1 * b2) * XI2 / den)


def exempt_sub85(par: Parity) -> CycNum:
    return (3 * par.s1 * XI4 - par.s1 * XI2) / (SQRT3 * I)


def forbidden_sub85(b2: CycNum, par: Parity) -> Optional[CycNum]:
    s1, m1 = par.s1, par.m1
    return _safe_div(3 * (m1 + b2) * XI2 + (s1 * b2 - m1) * XI4,
                     3 * s1 * XI4 - s1 * XI2 + SQRT3 * I * b2)


def exempt_sub86(par: Parity) -> CycNum:
    return -par.s1 * XI2


def forbidden_sub86(b2: CycNum, par: Parity) -> Optional[CycNum]:
    s1, m1 = par.s1, par.m1
    return _safe_div(2 * s1 * b2 * XI4 + (4 * s1 * b2 + m1) * XI2,
                     2 * s1 * XI4 + 2 * b2 * XI2)


@dataclass(frozen=True)
class SubcaseLemma:
    subcase: str
    determinant: object
    forbidden: object
    exempt_constants: tuple = ()
    exempt_parity: object = None
    det_label: str = ""
    lemma_label: str = ""

    def exempt_values(self, par: Parity) -> tuple:
        vals = tuple(self.exempt_constants)
        if self.exempt_parity is not None:
            vals += (self.exempt_parity(par),)
        return vals

    def predicted_zero(self, b2: CycNum, b3: CycNum, par: Parity) -> Optional[bool]:
        if b2 in self.exempt_values(par):
            return False
        f = self.forbidden(b2, par)
        if f is None:
            return None
        return b3 == f


SUBCASE_LEMMAS = {
    "8.1": SubcaseLemma("8.1", det_sub81, forbidden_sub81,
                        det_label="(9mzeq1)", lemma_label="Lemma 8.1 (subcase8.1)"),
    "8.2": SubcaseLemma("8.2", det_sub82, forbidden_sub82, exempt_constants=PM_THREE,
                        det_label="(det8.2)", lemma_label="Lemma 8.2 (det8.2.1)"),
    "8.3": SubcaseLemma("8.3", det_sub83, forbidden_sub83,
                        det_label="(det8.3)", lemma_label="Lemma 8.3 (det8.3.1)"),
    "8.4": SubcaseLemma("8.4", det_sub84, forbidden_sub84, exempt_constants=PM_THREE,
                        det_label="(det8.4)", lemma_label="Lemma 8.4 (det8.4.1)"),
    "8.5": SubcaseLemma("8.5", det_sub85, forbidden_sub85, exempt_parity=exempt_sub85,
                        det_label="(det8.5.1)", lemma_label="Lemma 8.5 (det8.5)"),
    "8.6": SubcaseLemma("8.6", det_sub86, forbidden_sub86, exempt_parity=exempt_sub86,
                        det_label="(det8.6.1)", lemma_label="Lemma 8.6"),
}


# -- Case 10 --------------------------------------------------------------------------

def _phis(cfg: Config, par: Parity):
    t = par.t
    return [(phi(b, t), phi(b, t + 2)) for b in cfg.beta]


def det_case10_phi_form(cfg: Config, par: Parity) -> CycNum:
    (p1, q1), (p2, q2), (p3, q3) = _phis(cfg, par)
    return ((XI8 - 1) * p3 * (XI2 * p1 * q2 - p2 * q1)
            - (XI4 - 1) * p2 * (XI4 * p1 * q3 - p3 * q1))


def _case10_tail(b1: CycNum, b2: CycNum, par: Parity) -> CycNum:
    s1, m1 = par.s1, par.m1
    return (SQRT3 * s1 * (b1 * b2 + m1)
            + m1 * I * (3 * SQRT3 * I * b2 + (XI2 + 1) * b1 - 3 * XI2))


def det_case10_beta_form(cfg: Config, par: Parity) -> CycNum:
    b1, b2, b3 = cfg.beta
    s, m = par.s, par.m
    return (b3 * (b2 * (-I * b1 * (2 * XI4 + 1) + s * (2 * XI2 - 1))
                  + m * I * (XI4 + XI2) - 3 * s * b1)
            + _case10_tail(b1, b2, par))


def det_case10_sqrt3_form(cfg: Config, par: Parity) -> CycNum:
    b1, b2, b3 = cfg.beta
    return b3 * delta_case10(b1, b2, par) + _case10_tail(b1, b2, par)


def alpha_case10(b1: CycNum, b2: CycNum, par: Parity) -> CycNum:
    return par.m - 3 * par.s * b1 + _case10_tail(b1, b2, par)


def delta_case10(b1: CycNum, b2: CycNum, par: Parity) -> CycNum:
    return b2 * (SQRT3 * b1 + SQRT3 * par.s1) + par.m - 3 * par.s * b1


def det_case10_linear(cfg: Config, par: Parity) -> CycNum:
    b1, b2, b3 = cfg.beta
    return b3 * delta_case10(b1, b2, par) + alpha_case10(b1, b2, par)


def exempt_case10(b1: CycNum, par: Parity) -> Optional[CycNum]:
    return _safe_div(3 * par.s1 * b1 + par.m1, SQRT3 * (b1 + par.s1))


def forbidden_case10(b1: CycNum, b2: CycNum, par: Parity) -> Optional[CycNum]:
    v = _safe_div(alpha_case10(b1, b2, par), delta_case10(b1, b2, par))
    return None if v is None else -v


def predicted_zero_case10(cfg: Config, par: Parity) -> Optional[bool]:
    b1, b2, b3 = cfg.beta
    if b2 == exempt_case10(b1, par):
        return False
    f = forbidden_case10(b1, b2, par)
    if f is None:
        return None
    return b3 == f
