"""Leading-coefficient matrices, Birkhoff matrices and Gamma blocks.

Column c of W0 belongs to the root xi^(2c+1).  The block of endpoint u at
offset k uses columns k+3u, k+3u+1, k+3u+2 (mod 6), so the Birkhoff matrix
for k factors as +-det Gamma(a, k, 0) * det Gamma(b, k, 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .cyclotomic import I, ONE, ZERO, CycNum, format_cyc, xi_pow
from .classification import Relation, relation_of
from .model import BoundaryCondition, ValidatedProblem

Matrix = list  # list of rows of CycNum


class ZeroFactor(ArithmeticError):
    pass


def tau(k: int, u: int) -> int:
    return 2 * (k + 3 * u) + 1


def i_pow(t: int) -> CycNum:
    return xi_pow(3 * t)


def phi(beta: CycNum, t: int) -> CycNum:
    """Regime-E leading factor i^t + i*beta (t odd)."""
    if t % 2 == 0:
        raise ValueError("phi is defined for odd exponents")
    return i_pow(t) + I * beta


def omega_leading(bc: BoundaryCondition, k: int, u: int) -> CycNum:
    """Leading coefficient of gamma at column k+3u from the regime table."""
    t = tau(k, u)
    rel = relation_of(bc)
    if rel is Relation.G:
        return xi_pow(t * bc.p)
    beta = bc.leading_beta
    if rel is Relation.L:
        return I * xi_pow(t * bc.q) * beta
    return xi_pow(t * bc.q) * phi(beta, t)


def build_W0(bcs: Sequence[BoundaryCondition], u: int) -> Matrix:
    """6x6 W0^(u); rows 3u..3u+2 hold the endpoint's conditions."""
    out = [[ZERO] * 6 for _ in range(6)]
    for j, bc in enumerate(bcs):
        out[3 * u + j] = [omega_leading(bc, c, 0) for c in range(1, 7)]
    return out


def build_delta(k: int) -> Matrix:
    """Diagonal selector with ones at positions k, k+1, k+2 (1-based, cyclic)."""
    on = {(k - 1 + s) % 6 for s in range(3)}
    return [[ONE if (r == c and r in on) else ZERO for c in range(6)] for r in range(6)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(m)), ZERO) for j in range(p)]
            for i in range(n)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def identity(n: int) -> Matrix:
    return [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]


def birkhoff_matrix(problem: ValidatedProblem, k: int) -> Matrix:
    """W0^(0) Delta_k + W0^(1) (I - Delta_k)."""
    d = build_delta(k)
    co = [[ONE - x if r == c else ZERO for c, x in enumerate(row)] for r, row in enumerate(d)]
    return mat_add(mat_mul(build_W0(problem.endpoint(0), 0), d),
                   mat_mul(build_W0(problem.endpoint(1), 1), co))


@dataclass(frozen=True)
class GammaBlock:
    entries: tuple
    u: int
    k: int

    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]


def block_columns(k: int, u: int) -> tuple[int, int, int]:
    return tuple((k + 3 * u - 1 + s) % 6 + 1 for s in range(3))


def gamma_block(bcs: Sequence[BoundaryCondition], k: int, u: int) -> GammaBlock:
    """3x3 block from columns k+3u .. k+3u+2 (mod 6) of the endpoint's W0 rows."""
    cols = block_columns(k, u)
    entries = tuple(tuple(omega_leading(bc, c, 0) for c in cols) for bc in bcs)
    return GammaBlock(entries, u, (k - 1) % 6 + 1)


# -- determinants ---------------------------------------------------------------------

def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_expansion(m: Matrix) -> CycNum:
    """Signed permutation (Leibniz) expansion."""
    n = len(m)
    if n == 0:
        return ONE
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    total = ZERO
    for perm in itertools.permutations(range(n)):
        term = ONE
        for r, c in enumerate(perm):
            term = term * m[r][c]
            if term.is_zero():
                break
        else:
            total = total + term if _perm_sign(perm) > 0 else total - term
    return total


def det_bareiss(m: Matrix) -> CycNum:
    """Fraction-free (Bareiss) elimination with exact division."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        inv_prev = prev.inverse() if prev != ONE else ONE
        for r in range(c + 1, n):
            arc = a[r][c]
            for j in range(c + 1, n):
                a[r][j] = (p * a[r][j] - arc * a[c][j]) * inv_prev
            a[r][c] = ZERO
        prev = p
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det(m: Matrix) -> CycNum:
    if any(len(r) != len(m) for r in m):
        raise ValueError("determinant of a non-square matrix")
    return det_expansion(m) if len(m) <= 3 else det_bareiss(m)


def block_det(bcs: Sequence[BoundaryCondition], k: int, u: int) -> CycNum:
    return det(gamma_block(bcs, k, u).rows())


# -- row factoring Gamma = A * gamma ----------------------------------------------------

@dataclass(frozen=True)
class RowFactoring:
    a_diag: tuple
    gamma_reduced: tuple

    def reconstruct(self) -> Matrix:
        return [[a * x for x in row] for a, row in zip(self.a_diag, self.gamma_reduced)]


def row_factor(bc: BoundaryCondition, k: int, u: int) -> CycNum:
    """Diagonal factor of a row: xi^(tau*order), times i*beta in regime L."""
    t = tau(k, u)
    rel = relation_of(bc)
    if rel is Relation.G:
        return xi_pow(t * bc.p)
    if rel is Relation.L:
        beta = bc.leading_beta
        if beta.is_zero():
            raise ZeroFactor("leading beta is zero")
        return I * beta * xi_pow(t * bc.q)
    return xi_pow(t * bc.q)


def factor_rows(bcs: Sequence[BoundaryCondition], block: GammaBlock) -> RowFactoring:
    factors = tuple(row_factor(bc, block.k, block.u) for bc in bcs)
    reduced = tuple(tuple(x / a for x in row) for a, row in zip(factors, block.entries))
    return RowFactoring(factors, reduced)


def reduced_block(bcs: Sequence[BoundaryCondition], k: int, u: int) -> Matrix:
    f = factor_rows(bcs, gamma_block(bcs, k, u))
    return [list(r) for r in f.gamma_reduced]


def reduced_det(bcs: Sequence[BoundaryCondition], k: int, u: int) -> CycNum:
    """Oracle value of det gamma, computed from the actual Gamma block."""
    return det(reduced_block(bcs, k, u))


# -- factorization of the 6x6 Birkhoff determinant ---------------------------------------

def factorization_sign(k: int) -> int:
    """Parity of the column permutation taking (k, k+1, .., k+5) to block order."""
    perm = [(k - 1 + s) % 6 for s in range(6)]
    return _perm_sign(perm)


def factorization_check(problem: ValidatedProblem, k: int) -> tuple[int, bool]:
    full = det(birkhoff_matrix(problem, k))
    product = block_det(problem.endpoint(0), k, 0) * block_det(problem.endpoint(1), k, 1)
    sign = factorization_sign(k)
    return sign, full == (product if sign > 0 else -product)


def dump_matrix(m: Matrix) -> list[list[str]]:
    return [[format_cyc(x) for x in row] for row in m]
