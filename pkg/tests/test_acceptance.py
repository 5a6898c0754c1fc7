"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible with or
without ``-s``) and asserts its time budget.
"""

import contextlib
import itertools
import random
import time

import pytest

from mincomp import oracle
from mincomp.decide import Outcome, decide
from mincomp.epsets import EPSet, canonicalize, member
from mincomp.finitegrp import (
    FiniteAbelianGroup,
    check_pair_certificate,
    extract_minimal,
    pair_minimal_complement,
    product_minimal,
)
from mincomp.gallery import diagonal, example_infinite, hyperplane, variant3_choices
from mincomp.witness import BeamSet, beam_complement_check, build_witness, drop_finite, verify_window
from mincomp.zlattice import PeriodBasis, quotient_structure

from conftest import KLEIN_PAIRS, random_basis

pytestmark = pytest.mark.acceptance


@contextlib.contextmanager
def criterion(n: int, title: str, budget: float, capsys):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\ncriterion {n}: {status} {title} ({elapsed:.2f}s / {budget:g}s)")


def subsets(els, sizes):
    return itertools.chain.from_iterable(itertools.combinations(els, r) for r in sizes)


# 1 -----------------------------------------------------------------------------

def test_c1_klein_pair_table(capsys):
    with criterion(1, "pair certificates in Z/2 x Z/2", 1.0, capsys):
        g = FiniteAbelianGroup((2, 2))
        for q1, q, n in KLEIN_PAIRS:
            cert = pair_minimal_complement(g.subset(q1), g.subset(q))
            assert cert is not None
            assert check_pair_certificate(g.subset(q1), g.subset(q), cert.N, cert.witness_map())
            # the listed N with the identity as the private witness for every element
            listed = {x: (0, 0) for x in n}
            assert check_pair_certificate(g.subset(q1), g.subset(q), g.subset(n), listed)
            assert oracle.naive_pair_check((2, 2), q1, q, n)


# 2 -----------------------------------------------------------------------------

def test_c2_periodic_sets_have_no_minimal_complement(capsys):
    with criterion(2, "no minimal complement for periodic sets", 5.0, capsys):
        for d in (1, 2, 3):
            quadrant = EPSet(PeriodBasis.standard(d), (), {(0,) * d})
            assert decide(quadrant).outcome is Outcome.NOT_EXISTS
        for k in (0, 1, 2):
            anti = EPSet(PeriodBasis.standard(2), (), {(r, -r) for r in range(-k, k + 1)})
            assert decide(anti).outcome is Outcome.NOT_EXISTS
        rng = random.Random(2)
        for _ in range(100):
            d = rng.randint(1, 3)
            basis = random_basis(rng, d, 16)
            base = {tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(rng.randint(1, 4))}
            dec = decide(EPSet(basis, (), base))
            assert dec.outcome is Outcome.NOT_EXISTS and dec.canonical.sporadic == frozenset()


# 3 -----------------------------------------------------------------------------

def existence_cases():
    for d in (1, 2, 3):
        for k in (2, 3):
            for i in range(1, d + 1):
                yield f"variant 1 d={d} k={k} i={i}", example_infinite(1, d, k=k, i=i)
        for i in range(1, d + 1):
            yield f"variant 2 d={d} i={i}", example_infinite(2, d, i=i)
        if d >= 2:
            for f in variant3_choices(d):
                yield f"variant 3 d={d} F={sorted(f)}", example_infinite(3, d, F=sorted(f))


def test_c3_existence_with_verified_witnesses(capsys):
    with criterion(3, "existence examples with window-verified witnesses", 60.0, capsys):
        for name, w in existence_cases():
            dec = decide(w)
            assert dec.exists, name
            d = w.dim
            core = [(-8, 8)] * d
            wit = build_witness(dec.canonical, dec.certificate, 12)
            report = verify_window(dec.canonical, wit, core)
            assert report.failures == [], name
            assert not report.minimality_missing, name
            core_kept = {p for p in wit.kept if all(-8 <= x <= 8 for x in p)}
            assert set(report.minimality_witnesses) == core_kept, name
            if d <= 2:
                # independent recount of coverage from the kept points alone
                cols = w.basis.columns
                mem = lambda x: oracle.ep_member(cols, dec.canonical.sporadic, dec.canonical.base, x)
                assert oracle.window_cover_check(wit.kept, mem, oracle.Box(core)) == [], name


# 4 -----------------------------------------------------------------------------

SMALL_QUOTIENTS = [
    ((2,),), ((3,),), ((4,),),
    ((2, 0), (0, 2)), ((1, 0), (0, 2)), ((1, 0), (0, 3)), ((1, 0), (0, 4)),
    ((2, 0), (1, 2)), ((2, 0), (0, 1)),
]


def residue_level_sets(basis: PeriodBasis):
    """Every canonical-form pattern with at most two sporadic and two base residues."""
    q = quotient_structure(basis)
    residues = q.residues()
    below = basis.columns[0]
    for base_res in subsets(residues, (1, 2)):
        base = [q.rep(r) for r in base_res]
        for spor_res in subsets(residues, (0, 1, 2)):
            # one step below the representative keeps sporadic points outside base + cone
            spor = [tuple(a - b for a, b in zip(q.rep(r), below)) for r in spor_res]
            yield canonicalize(EPSet(basis, spor, base))


def test_c4_single_outside_point_criterion_matches_naive_search(capsys):
    with criterion(4, "decide agrees with naive search when one sporadic residue is outside", 30.0,
                   capsys):
        checked = 0
        for cols in SMALL_QUOTIENTS:
            basis = PeriodBasis(cols)
            for w in residue_level_sets(basis):
                dec = decide(w)
                if len(dec.profile.W1) != 1:
                    continue
                lifts = oracle.naive_lattice_pair_search(cols, dec.profile.W1, w.base)
                assert dec.exists == (lifts is not None), w
                checked += 1
        assert checked > 100


# 5 -----------------------------------------------------------------------------

def test_c5_extract_minimal_exhaustive(capsys):
    with criterion(5, "extract_minimal on every complement in small groups", 120.0, capsys):
        for factors in [(2,), (3,), (4,), (5,), (6,), (2, 2)]:
            g = FiniteAbelianGroup(factors)
            nonempty = list(subsets(g.elements, range(1, g.order + 1)))
            for w in nonempty:
                ws = g.subset(w)
                for c in nonempty:
                    cs = g.subset(c)
                    if not oracle.naive_is_complement(factors, w, c):
                        continue
                    m = extract_minimal(ws, cs)
                    assert m.elements <= cs.elements
                    assert oracle.naive_minimality_check(factors, w, m.elements)


# 6 -----------------------------------------------------------------------------

def minimal_pairs(factors):
    """All (W, M) with M a minimal complement of W, checked by the oracle."""
    els = oracle.group_elements(factors)
    nonempty = list(subsets(els, range(1, len(els) + 1)))
    return [(w, m) for w in nonempty for m in nonempty
            if oracle.naive_minimality_check(factors, w, m)]


def test_c6_products_of_minimal_complements(capsys):
    with criterion(6, "products of minimal complements stay minimal", 60.0, capsys):
        groups = [(2,), (3,), (4,), (2, 2)]
        pairs = {f: minimal_pairs(f) for f in groups}
        for f1, f2 in itertools.product(groups, repeat=2):
            g1, g2 = FiniteAbelianGroup(f1), FiniteAbelianGroup(f2)
            for (w1, m1), (w2, m2) in itertools.product(pairs[f1], pairs[f2]):
                w, m = product_minimal([(g1.subset(w1), g1.subset(m1)),
                                        (g2.subset(w2), g2.subset(m2))])
                assert oracle.naive_minimality_check(f1 + f2, w.elements, m.elements)


# 7 -----------------------------------------------------------------------------

def test_c7_hyperplane_is_minimal_complement_of_diagonal(capsys):
    with criterion(7, "hyperplane against the signed diagonal on windows", 10.0, capsys):
        for d in (2, 3):
            d_set = diagonal(d)
            d_member = lambda p: p in d_set
            for i in range(1, d + 1):
                for half in (1, 3, 5):
                    core = oracle.Box.cube(d, -half, half)
                    # x = h + (+-n, ..., +-n) forces n = |x_i| and |h_j| <= 2 * half
                    h_win = hyperplane(d, i).window([(-2 * half, 2 * half)] * d)
                    assert oracle.window_cover_check(h_win, d_member, core) == []
                    for p in h_win:
                        if p in core:
                            # p has a single representation, so p drops out with it
                            assert oracle.representations(h_win, d_member, p) == [p]
                    # and removing p uncovers nothing else near it
                    p = tuple(0 if j == i - 1 else half for j in range(d))
                    uncovered = oracle.window_cover_check(h_win - {p}, d_member, core)
                    assert uncovered == [p]


# 8 -----------------------------------------------------------------------------

def random_raw(rng, d):
    basis = random_basis(rng, d, 8)
    pts = lambda n: {tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(n)}
    return EPSet(basis, pts(rng.randint(0, 3)), pts(rng.randint(1, 3)))


def test_c8_structure_properties(capsys):
    with criterion(8, "canonical form idempotent, faithful and presentation independent", 30.0,
                   capsys):
        rng = random.Random(8)
        for _ in range(500):
            d = rng.randint(1, 3)
            raw = random_raw(rng, d)
            can = canonicalize(raw)
            assert canonicalize(can) == can
            cols = raw.basis.columns
            window = oracle.Box.cube(d, -4, 4) if d < 3 else oracle.Box.cube(d, -2, 2)
            pts = [tuple(rng.randint(-5, 5) for _ in range(d)) for _ in range(30)]
            for x in itertools.chain(pts, window if d == 1 else []):
                expected = oracle.ep_member(cols, raw.sporadic, raw.base, x)
                assert member(raw, x) == member(can, x) == expected
            # same set written with every window member listed as a sporadic point
            listed = oracle.window_points(
                lambda x: oracle.ep_member(cols, raw.sporadic, raw.base, x), window)
            other = EPSet(raw.basis, set(listed) | set(raw.sporadic), can.base | raw.base)
            assert canonicalize(other) == can


# 9 -----------------------------------------------------------------------------

def random_beamset(rng, d):
    basis = random_basis(rng, d, 9, positive=True)
    q = quotient_structure(basis)
    beams = []
    if rng.random() < 0.5:
        # one beam per residue along a period vector: always a complement
        for r in q.residues():
            apex = tuple(a + rng.randint(-1, 1) * u for a, u in zip(q.rep(r), basis.columns[0]))
            beams.append((apex, basis.combine([rng.randint(1, 2) for _ in range(d)])))
        if rng.random() < 0.5:
            beams.pop(rng.randrange(len(beams)))
    else:
        for _ in range(rng.randint(1, 3)):
            apex = tuple(rng.randint(0, 3) for _ in range(d))
            direction = tuple(rng.randint(1, 3) for _ in range(d))
            if any(c <= 0 for c in basis.rational_coords(direction)):
                direction = basis.combine([1] * d)
            beams.append((apex, direction))
    finite = {tuple(rng.randint(0, 3) for _ in range(d)) for _ in range(rng.randint(0, 3))}
    return BeamSet(basis, frozenset(finite), tuple(beams))


def window_complement(m: BeamSet, length: int) -> bool:
    """Coverage of a box by the first ``length`` points of each beam plus the cone."""
    d = m.basis.dim
    cols = m.basis.columns
    # a full residue system lies at negative first coordinate, below the finite part
    targets = oracle.Box(((-10, 0),) + ((-3, 3),) * (d - 1))
    return not oracle.window_cover_check(m.points(length), lambda v: oracle.in_cone(cols, v),
                                         targets)


def test_c9_beams(capsys):
    with criterion(9, "beam sets against windowed coverage, finite removals", 20.0, capsys):
        rng = random.Random(9)
        outcomes = []
        for _ in range(50):
            d = rng.randint(1, 2)
            m = random_beamset(rng, d)
            status = beam_complement_check(m)
            outcomes.append(status)
            assert status == window_complement(m, 40)
            pool = sorted(m.points(4))
            f = rng.sample(pool, min(len(pool), rng.randint(1, 4)))
            cut = drop_finite(m, f)
            assert not set(f) & cut.points(40)
            assert beam_complement_check(cut) == status
            assert window_complement(cut, 40) == status
        assert any(outcomes) and not all(outcomes)
