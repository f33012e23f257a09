"""The nine acceptance criteria, each at its stated tolerance and time limit.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import contextlib
import io
import itertools
import json
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import helpers  # noqa: E402
from birkhoff6 import propositions as P  # noqa: E402
from birkhoff6.birkhoff import (  # noqa: E402
    block_det, factorization_check, i_pow, omega_leading, reduced_det, tau,
)
from birkhoff6.boundary_poly import gamma_poly, leading_data  # noqa: E402
from birkhoff6.classification import (  # noqa: E402
    Relation, admissible_endpoint_rows, classify_endpoint, relation_of,
)
from birkhoff6.cli import main as cli_main  # noqa: E402
from birkhoff6.crossval import DEFAULT_GRID  # noqa: E402
from birkhoff6.cyclotomic import (  # noqa: E402
    I, ONE, XI, ZERO, complex_close, cyc_embed, parse_cyc, xi_pow,
)
from birkhoff6.model import compute_nu, condition, validate_problem  # noqa: E402
from birkhoff6.sampling import random_condition, random_cyc, random_problem  # noqa: E402

SEED = 20240611
FIX = Path(__file__).parent / "fixtures"
KU = [(k, u) for u in (0, 1) for k in range(1, 7)]


def _cli(*argv):
    buf_out, buf_err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(buf_out), contextlib.redirect_stderr(buf_err):
        code = cli_main(list(argv))
    return code, buf_out.getvalue(), buf_err.getvalue()


def _run(number, title, limit, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    timely = dt < limit
    status = "PASS" if ok and timely else "FAIL"
    note = "" if timely else f" [over time limit {limit}s]"
    line = f"criterion {number} {status}: {title} ({dt:.2f}s, limit {limit}s){note} - {detail}"
    print(line)
    helpers.ACCEPTANCE_LOG.append(line)
    return status == "PASS", line


# -- 1 ---------------------------------------------------------------------------

def criterion_1():
    basics = [XI ** 12 == ONE, XI ** 6 == -ONE, complex_close(cyc_embed(xi_pow(3)), 1j),
              (XI + xi_pow(11)) ** 2 == 3]
    rng = random.Random(SEED)
    bad = 0
    for _ in range(1000):
        a, b, c = (random_cyc(rng, bound=9) for _ in range(3))
        ok = ((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
              and a + b == b + a and a * b == b * a and a * (b + c) == a * b + a * c
              and a + ZERO == a and a * ONE == a and a + (-a) == ZERO)
        if not a.is_zero():
            ok = ok and a * a.inverse() == ONE
        bad += not ok
    return all(basics) and bad == 0, f"basic identities {sum(basics)}/4, axiom failures {bad}/1000"


# -- 2 ---------------------------------------------------------------------------

def criterion_2():
    code, out, _ = _cli("enumerate-cases", "--format", "json")
    d = json.loads(out)
    got = (d["total_ordered"], d["pure"], d["mixed_canonical"], d["redundant"])
    sub = {tuple(t) for t in d["case8_subcases"]}
    want = {(2, 0, 1), (5, 0, 1), (1, 0, 2), (4, 0, 2), (0, 1, 2), (3, 1, 2)}
    ok = code == 0 and got == (27, 3, 7, 17) and sub == want and d["case10_forced"] == [0, 1, 2]
    return ok, f"census {got}, Case 8 subcases {sorted(sub)}, Case 10 {d['case10_forced']}"


# -- 3 ---------------------------------------------------------------------------

def criterion_3():
    bad = points = 0
    for thetas in itertools.permutations(range(6), 3):
        bcs = [condition("A", t) for t in thetas]
        cfg = P.Config.from_bcs(bcs)
        for k, u in KU:
            d = reduced_det(bcs, k, u)
            points += 1
            bad += d != P.det_case1(cfg, P.Parity(tau(k, u))) or d.is_zero()
    for phis in itertools.permutations(range(3), 3):
        bcs = [condition("A", None, f, beta=b) for f, b in zip(phis, (2, -3, I))]
        cfg = P.Config.from_bcs(bcs)
        for k, u in KU:
            d = reduced_det(bcs, k, u)
            points += 1
            bad += d != P.det_case2(cfg, P.Parity(tau(k, u))) or d.is_zero()
    return bad == 0, f"{points - bad}/{points} block determinants equal the Vandermonde product"


# -- 4 ---------------------------------------------------------------------------

L_GRID = tuple(parse_cyc(t) for t in ("1/2", "-1", "3/2", "-2", "3", "1 + z^3", "2 - z^3", "z"))


def criterion_4():
    zeros = points = assignments = 0
    for rows in admissible_endpoint_rows():
        bcs0 = [condition("A", p, q) for p, q in rows]
        if classify_endpoint(bcs0).case_id > 4:
            continue
        assignments += 1
        l_slots = [j for j, bc in enumerate(bcs0) if relation_of(bc) is Relation.L]
        for betas in itertools.product(L_GRID, repeat=len(l_slots)):
            chosen = dict(zip(l_slots, betas))
            bcs = [condition("A", p, q, beta=chosen.get(j)) for j, (p, q) in enumerate(rows)]
            for k, u in KU:
                points += 1
                zeros += block_det(bcs, k, u).is_zero()
    return zeros == 0, (f"{assignments} assignments, {points} block determinants, "
                        f"{zeros} zero")


# -- 5 ---------------------------------------------------------------------------

def criterion_5():
    rng = random.Random(SEED)
    bad = drops = e_rows = 0
    n = 300
    for _ in range(n):
        bc = random_condition(rng)
        nu = compute_nu(bc)
        is_e = relation_of(bc) is Relation.E
        e_rows += is_e
        for k, u in KU:
            degree, lead = leading_data(gamma_poly(bc, k, u), nu)
            target = i_pow(tau(k, u) + 1)  # +-1 according to the parity of k + u
            drop = is_e and bc.leading_beta == target
            drops += drop
            if lead != omega_leading(bc, k, u):
                bad += 1
            elif drop != (degree < nu) or (drop and not lead.is_zero()):
                bad += 1
    ok = bad == 0 and drops > 0
    return ok, f"{n} conditions ({e_rows} in regime E), {drops} degree drops, {bad} mismatches"


# -- 6 ---------------------------------------------------------------------------

def criterion_6():
    rng = random.Random(SEED + 1)
    bad = 0
    n = 100
    for _ in range(n):
        vp = validate_problem(random_problem(rng))
        bad += sum(not factorization_check(vp, k)[1] for k in range(1, 7))
    return bad == 0, f"{n} problems x 6 k, {bad} factorization failures"


# -- 7 ---------------------------------------------------------------------------

def criterion_7():
    theta = (5, 4)
    phis = [f for f in range(3) if len({*theta, f, f + 3}) == 4]
    hit = miss = leak = 0
    for f3 in phis:
        cfg = P.Config(theta + (f3 + 3,), (None, None, f3), (None, None, None))
        for k, u in KU:
            par = P.Parity(tau(k, u))
            forbidden = P.forbidden_case5(cfg, par)

            def d(beta):
                bcs = [condition("A", theta[0]), condition("A", theta[1]),
                       condition("A", f3 + 3, f3, beta=beta)]
                return block_det(bcs, k, u)

            if d(forbidden).is_zero():
                hit += 1
            else:
                miss += 1
            for b in DEFAULT_GRID:
                if b in P.PM_ONE or b == forbidden:
                    continue
                leak += d(b).is_zero()
    ok = miss == 0 and leak == 0 and hit > 0
    return ok, (f"phi3 in {phis}: stated value zeroes {hit}/{hit + miss} blocks; "
                f"{leak} zeros at other grid values")


# -- 8 ---------------------------------------------------------------------------

def criterion_8():
    code, out, _ = _cli("verify-propositions", "--cases", "3,5,6,7,8,9,10", "--format", "json")
    data = json.loads(out)
    reps = data["reports"]
    consistent = all(r["agreements"] + r["witness_count"] == r["points_tested"] for r in reps)
    explicit = all(r["status"] in ("confirmed", "refuted", "not-applicable") for r in reps)
    subs = {r["subcase"] for r in reps if r["case"] == 8}
    labels = {r["label"]: r["status"] for r in reps}
    suspects = all(labels.get(x) in ("confirmed", "refuted")
                   for x in ("(5.1)", "(4.691) printed", "(4.691) matrix"))
    cases = {r["case"] for r in reps}
    ok = (code == 0 and consistent and explicit and suspects
          and subs == {"8.1", "8.2", "8.3", "8.4", "8.5", "8.6"} and cases >= set(range(5, 11)))
    s = data["summary"]
    return ok, (f"{len(reps)} reports (confirmed {s['confirmed']}, refuted {s['refuted']}, "
                f"not-applicable {s['not-applicable']}); consistent={consistent}; "
                f"(5.1) {labels.get('(5.1)')}, (4.691) printed {labels.get('(4.691) printed')}")


# -- 9 ---------------------------------------------------------------------------

def _float_ok(report):
    return all(complex_close(complex(*b["embedding"]), complex(*b["float"]), 1e-9)
               for b in report["per_k_dets"])


def criterion_9():
    c1, o1, _ = _cli("analyze", "--input", str(FIX / "dirichlet.json"), "--format", "json")
    c2, o2, _ = _cli("analyze", "--input", str(FIX / "case5_forbidden.json"), "--format", "json")
    r1, r2 = json.loads(o1), json.loads(o2)
    ok = (c1 == 0 and r1["verdict"] == "regular" and c2 == 1 and r2["verdict"] == "irregular"
          and len(r2["failing"]) > 0 and _float_ok(r1) and _float_ok(r2))
    w = r2["failing"][0] if r2["failing"] else None
    return ok, (f"dirichlet exit {c1} {r1['verdict']}; case 5 exit {c2} {r2['verdict']} "
                f"witness {w}; float agreement {_float_ok(r1)} / {_float_ok(r2)}")


CRITERIA = [
    (1, "cyclotomic soundness", 1, criterion_1),
    (2, "case census", 1, criterion_2),
    (3, "Vandermonde identities for Cases 1 and 2", 5, criterion_3),
    (4, "Cases 1-4 blocks never vanish", 60, criterion_4),
    (5, "leading coefficients: polynomial route vs regime table", 10, criterion_5),
    (6, "6x6 determinant factors into the two blocks", 30, criterion_6),
    (7, "Case 5 ratio value zeroes the block (theta = (5, 4))", 5, criterion_7),
    (8, "closed-form cross-validation report", 120, criterion_8),
    (9, "end-to-end analyze on the fixtures", 1, criterion_9),
]


@pytest.mark.parametrize("number,title,limit,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, limit, fn):
    ok, line = _run(number, title, limit, fn)
    assert ok, line


if __name__ == "__main__":
    results = [_run(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
