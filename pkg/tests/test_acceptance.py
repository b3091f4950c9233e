"""Acceptance checks, one per criterion; each prints a single PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or
directly with ``python tests/test_acceptance.py``.
"""

import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import CTX, kappa_star, random_complex, random_disc  # noqa: E402
from torusperiods import _linalg  # noqa: E402
from torusperiods.cone import certify_nonresonant, kappa_profile  # noqa: E402
from torusperiods.enumeration import (brute_force_delta_box, enumerate_delta_in_ellipsoid,  # noqa: E402
                                      finiteness_radius, generator_pump, is_delta_member)
from torusperiods.lattice import alt_form_of, frobenius_normal_form, pairing, signature  # noqa: E402
from torusperiods.monodromy import (ParityCertificate, boundary_samples, crossing_parity,  # noqa: E402
                                    kronecker_matrix, pl_loop_parity)
from torusperiods.period import (PeriodMatrix, pluecker, random_polarized_period,  # noqa: E402
                                 rho_candidates)

PROFILE = kappa_profile(kappa_star(), CTX)


def report(n, ok, detail, started):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} ({time.perf_counter() - started:.1f}s)",
          flush=True)
    assert ok, detail


def test_1_lattice_signature_and_evenness():
    t = time.perf_counter()
    rng = random.Random(101)
    sig = signature()
    odd = 0
    for _ in range(10 ** 4):
        d = tuple(rng.randint(-50, 50) for _ in range(6))
        odd += pairing(d, d) % 2 != 0
    report(1, sig == (3, 3) and odd == 0, f"signature {sig}, {odd} odd squares in 10^4 classes", t)


def test_2_frobenius_identity():
    t = time.perf_counter()
    rng = random.Random(202)
    bad = 0
    for _ in range(10 ** 4):
        d = tuple(rng.randint(-50, 50) for _ in range(6))
        m = alt_form_of(d)
        f = frobenius_normal_form(m)
        u = f.matrix
        utmu = [[sum(u[a][i] * m[a][b] * u[b][j] for a in range(4) for b in range(4))
                 for j in range(4)] for i in range(4)]
        ok = (utmu == f.canonical() and abs(_linalg.int_det(u)) == 1
              and pairing(d, d) == 2 * f.d1 * f.d2 and (f.d1 == 0 or f.d2 % f.d1 == 0))
        bad += not ok
    report(2, bad == 0, f"{bad} failures of U^T M U = canonical, |det U| = 1, <d,d> = 2 d1 d2 in 10^4 forms", t)


def test_3_nonresonance():
    t = time.perf_counter()
    star = certify_nonresonant(kappa_star())
    r = CTX.sqrt
    perturbed = (CTX.one(), CTX.one(), r(2), r(3), r(5), r(6))
    res = certify_nonresonant(perturbed)
    ok = (star.nonresonant and not res.nonresonant and any(res.witness)
          and pairing(perturbed, res.witness) == 0)
    report(3, ok, f"kappa* non-resonant={star.nonresonant}; perturbed witness {res.witness}", t)


def test_4_infinitude_witness():
    t = time.perf_counter()
    ds = generator_pump(PROFILE, 2, 50)
    distinct = len({d.delta for d in ds}) == 50
    members = all(is_delta_member(d.delta, PROFILE, 2) for d in ds)
    decreasing = all((a.pairing_with_kappa - b.pairing_with_kappa).sign() > 0 for a, b in zip(ds, ds[1:]))
    lo0, hi0 = ds[0].pairing_with_kappa.to_interval(64)
    lo1, hi1 = ds[1].pairing_with_kappa.to_interval(64)
    first = Fraction(196, 1000) < lo0 and hi0 < Fraction(1963, 10000)
    second = Fraction(94, 1000) < lo1 and hi1 < Fraction(95, 1000)
    ok = len(ds) == 50 and distinct and members and decreasing and first and second
    report(4, ok, f"50 generators, decreasing={decreasing}, first two in "
                  f"[{float(lo0):.6f}, {float(hi0):.6f}] and [{float(lo1):.6f}, {float(hi1):.6f}]", t)


def test_5_pluecker_and_positivity():
    t = time.perf_counter()
    rng = random.Random(505)
    bad = 0
    signs = {1: 0, -1: 0}
    for _ in range(10 ** 3):
        pm = PeriodMatrix(tuple(tuple(random_complex(rng, terms=rng.randint(1, 2)) for _ in range(4))
                                for _ in range(2)))
        det = pm.real_det()
        if det.is_zero():
            continue
        pt = pluecker(pm, repair=False)
        s = pt.hermitian_norm().sign()
        bad += not pt.quadric().is_zero() or s != det.sign()
        signs[s] = signs.get(s, 0) + 1
    report(5, bad == 0, f"{bad} failures in 10^3 matrices (orientations +{signs[1]} / -{signs[-1]})", t)


def _widest_form(pt, cap=64):
    # slack inflates the bound by a point-dependent factor; keep the walk short
    for k in range(1, 5):
        form = finiteness_radius(PROFILE, pt.x1, pt.x2, 2, Fraction(1, 2 ** k))
        if form.bound.sign() and (form.bound - cap).sign() <= 0:
            return form
    return form


def test_6_ellipsoid_matches_box_oracle():
    t = time.perf_counter()
    box = 4
    oracle = {d.delta for d in brute_force_delta_box(PROFILE, 2, box)}
    agree = compared = nonempty = 0
    for seed in range(20):
        pt = pluecker(random_polarized_period(PROFILE, seed), repair=False)
        for form in (finiteness_radius(PROFILE, pt.x1, pt.x2, 2, 0), _widest_form(pt)):
            ell = {d.delta for d in enumerate_delta_in_ellipsoid(form, PROFILE, 2)}
            mine = {d for d in ell if max(map(abs, d)) <= box}
            theirs = {d for d in oracle if form.contains(d)}
            compared += 1
            agree += mine == theirs
            nonempty += bool(theirs)
    report(6, agree == compared and compared >= 20,
           f"{agree}/{compared} exact set equalities over 20 random polarized points "
           f"({nonempty} with nonempty common region, box {box})", t)


def test_7_kronecker_identity():
    t = time.perf_counter()
    deltas = generator_pump(PROFILE, 2, 8)
    matrix, certs = kronecker_matrix(deltas, PROFILE, 2)
    identity = matrix == [[int(i == j) for j in range(8)] for i in range(8)]
    replay = all(ParityCertificate.from_json(json.loads(json.dumps(c.to_json()))).verify() for c in certs)
    report(7, identity and replay, f"8x8 identity={identity}, certificates re-verified={replay}", t)


def test_8_parity_consistency():
    t = time.perf_counter()
    deltas = [d.delta for d in brute_force_delta_box(PROFILE, 2, 1)]
    rows = list(rho_candidates(CTX, 200, seed=3))
    rng = random.Random(808)
    agree = ones = 0
    for _ in range(100):
        disc, d, n = random_disc(PROFILE, rng, deltas, rows)
        cp = crossing_parity(disc, d)
        agree += cp == pl_loop_parity(boundary_samples(disc, n), d)
        ones += cp
    report(8, agree == 100, f"{agree}/100 discs agree ({ones} with one crossing)", t)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
