"""Seeded random boundary conditions and problems for property suites and sweeps."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .cyclotomic import CycNum, xi_pow
from .model import MAX_ORDER, BoundaryCondition, ProblemSpec, condition, validate_problem

DEFAULT_SEED = 20240611


def random_cyc(rng: random.Random, bound: int = 4, nonzero: bool = False) -> CycNum:
    while True:
        cs = [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(4)]
        # keep many values sparse so special structure shows up
        for j in range(4):
            if rng.random() < 0.5:
                cs[j] = Fraction(0)
        v = CycNum(*cs)
        if not (nonzero and v.is_zero()):
            return v


def random_beta(rng: random.Random) -> CycNum:
    """Leading beta, biased toward +-1 and +-i where regime E degenerates."""
    r = rng.random()
    if r < 0.3:
        return xi_pow(3 * rng.randrange(4))
    return random_cyc(rng, nonzero=True)


def random_condition(rng: random.Random, endpoint: str = "A",
                     used: Optional[set] = None, max_q: int = MAX_ORDER) -> BoundaryCondition:
    """A single normalized condition avoiding the orders in ``used``."""
    used = set() if used is None else used
    free = [o for o in range(MAX_ORDER + 1) if o not in used]
    while True:
        shape = rng.choice(("p", "q", "pq", "e"))
        if shape == "e":
            # p = q + 3, the regime where the leading coefficient can vanish
            qs = [o for o in free if o <= min(max_q, 2) and o + 3 in free]
            if not qs:
                continue
            q = rng.choice(qs)
            p = q + 3
        else:
            p = rng.choice(free) if "p" in shape else None
            qs = [o for o in free if o <= max_q and o != p]
            if "q" in shape and not qs:
                continue
            q = rng.choice(qs) if "q" in shape else None
        if p is None and q is None:
            continue
        alpha = [random_cyc(rng) for _ in range(p)] if p is not None else None
        beta_lower = [random_cyc(rng) for _ in range(q)] if q is not None else None
        beta = random_beta(rng) if q is not None else None
        return condition(endpoint, p, q, beta=beta, alpha=alpha, beta_lower=beta_lower)


def random_endpoint(rng: random.Random, endpoint: str = "A",
                    max_q: int = MAX_ORDER) -> tuple:
    """Three conditions whose orders (p and q together) are pairwise distinct."""
    while True:
        used: set = set()
        out = []
        try:
            for _ in range(3):
                bc = random_condition(rng, endpoint, used, max_q)
                used.update(o for o in (bc.p, bc.q) if o is not None)
                out.append(bc)
        except IndexError:
            continue
        return tuple(out)


def random_problem(rng: random.Random, max_q: int = MAX_ORDER) -> ProblemSpec:
    spec = ProblemSpec(random_endpoint(rng, "A", max_q), random_endpoint(rng, "B", max_q))
    validate_problem(spec)
    return spec
