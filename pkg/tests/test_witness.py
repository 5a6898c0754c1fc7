import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mincomp import oracle
from mincomp.decide import decide
from mincomp.epsets import EPSet
from mincomp.errors import InvalidCertificate, MalformedBeam, NegativeShells
from mincomp.finitegrp import FiniteAbelianGroup, PairCertificate
from mincomp.witness import (
    BeamSet,
    WitnessComplement,
    beam_complement_check,
    build_witness,
    drop_finite,
    enumeration_order,
    parse_witness_dump,
    verify_window,
)
from mincomp.zlattice import PeriodBasis

from conftest import random_basis

P2 = PeriodBasis(((2,),))
P4 = PeriodBasis(((4,),))
EVEN = PeriodBasis(((2, 0), (0, 2)))


def exists(w):
    dec = decide(w)
    assert dec.exists
    return dec


def test_odd_tail_keeps_all_evens():
    dec = exists(EPSet(P2, {(0,)}, {(1,)}))
    wit = build_witness(dec.canonical, dec.certificate, 10)
    assert not wit.removed
    assert wit.kept == {(2 * t,) for t in range(-10, 11)}
    # the window sumset check agrees: kept + W covers [-10, 10]
    member = lambda x: oracle.ep_member([(2,)], {(0,)}, {(1,)}, x)
    assert oracle.window_cover_check(wit.kept, member, [(x,) for x in range(-10, 11)]) == []


def test_two_sporadic_points_removal_pattern():
    dec = exists(EPSet(P4, {(1,), (5,)}, {(0,)}))
    wit = build_witness(dec.canonical, dec.certificate, 3)
    near = lambda s: {p for p in s if abs(p[0]) <= 6}
    assert near(wit.removed) == {(0,), (2,), (-6,)}
    assert near(wit.kept) == {(-4,), (-2,), (4,), (6,)}


def test_naive_greedy_reimplementation_agrees():
    cases = [
        EPSet(P4, {(1,), (5,)}, {(0,)}),
        EPSet(P2, {(0,)}, {(1,)}),
        EPSet(EVEN, {(0, 0)}, {(1, 0)}),
        EPSet(PeriodBasis(((3,),)), {(0,), (4,), (-1,)}, {(1,)}),
    ]
    for w in cases:
        dec = exists(w)
        wit = build_witness(dec.canonical, dec.certificate, 3)
        order = enumeration_order(dec.canonical, dec.certificate, 3)
        prof = dec.profile
        q = prof.quotient
        n_pts = [q.rep(r) for r in dec.certificate.N.elements]
        q_pts = list(dec.canonical.base)
        kept, removed = oracle.naive_greedy(w.basis.columns, prof.W1, n_pts, q_pts, order)
        assert set(kept) == wit.kept and set(removed) == wit.removed


def test_stability_across_shell_counts():
    dec = exists(EPSet(P4, {(1,), (5,)}, {(0,)}))
    small = build_witness(dec.canonical, dec.certificate, 0)
    big = build_witness(dec.canonical, dec.certificate, 3)
    assert small.kept <= big.kept and small.removed <= big.removed
    assert small.kept | small.removed == {(0,), (2,)}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_stability_random(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 2)
    basis = random_basis(rng, d, 8)
    pts = lambda n: {tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(n)}
    dec = decide(EPSet(basis, pts(rng.randint(1, 3)), pts(rng.randint(1, 2))))
    if not dec.exists:
        return
    k = 2 if d == 2 else 4
    a = build_witness(dec.canonical, dec.certificate, k)
    b = build_witness(dec.canonical, dec.certificate, k + 1)
    assert a.kept <= b.kept and a.removed <= b.removed
    assert not (b.kept & a.removed) and not (b.removed & a.kept)
    q = dec.profile.quotient
    assert all(q.residue(p) in dec.certificate.N.elements for p in b.kept)
    report = verify_window(dec.canonical, b, [(-3, 3)] * d)
    assert report.ok, report.text()


def test_build_witness_errors():
    dec = exists(EPSet(P2, {(0,)}, {(1,)}))
    with pytest.raises(NegativeShells):
        build_witness(dec.canonical, dec.certificate, -1)
    g = dec.certificate.group
    bogus = PairCertificate(g.subset([(1,)]), (((1,), (1,)),))
    with pytest.raises(InvalidCertificate):
        build_witness(dec.canonical, bogus, 2)
    other = PairCertificate(FiniteAbelianGroup((4,)).subset([(0,)]), (((0,), (0,)),))
    with pytest.raises(InvalidCertificate):
        build_witness(dec.canonical, other, 2)
    periodic = decide(EPSet(P2, (), {(0,)})).canonical
    with pytest.raises(InvalidCertificate):
        build_witness(periodic, dec.certificate, 2)


def test_verify_window_examples():
    dec = exists(EPSet(P2, {(0,)}, {(1,)}))
    wit = build_witness(dec.canonical, dec.certificate, 10)
    report = verify_window(dec.canonical, wit, [(-10, 10)])
    assert report.covered == 21 and report.ok
    assert all(x == m for m, x in report.minimality_witnesses.items())
    assert report.machine() == "covered=21 failures=0 minimality_ok=true"

    dec = exists(EPSet(EVEN, {(0, 0)}, {(1, 0)}))
    wit = build_witness(dec.canonical, dec.certificate, 8)
    report = verify_window(dec.canonical, wit, [(-6, 6)] * 2)
    assert report.ok and report.covered == 169


def test_verify_window_detects_corruption():
    dec = exists(EPSet(P2, {(0,)}, {(1,)}))
    wit = build_witness(dec.canonical, dec.certificate, 10)
    broken = WitnessComplement(wit.certificate, wit.basis, wit.shells_processed,
                               wit.kept - {(4,)}, wit.removed)
    report = verify_window(dec.canonical, broken, [(-10, 10)])
    assert report.failures == [(4,)]
    assert not report.ok


def test_verify_window_agrees_with_oracle_sumset():
    dec = exists(EPSet(P4, {(1,), (5,)}, {(0,)}))
    wit = build_witness(dec.canonical, dec.certificate, 12)
    report = verify_window(dec.canonical, wit, [(-20, 20)])
    assert report.ok
    member = lambda x: oracle.ep_member([(4,)], {(1,), (5,)}, {(0,)}, x)
    targets = [(x,) for x in range(-20, 21)]
    assert oracle.window_cover_check(wit.kept, member, targets) == []
    # each kept core point is the only representation of its witness target
    for m, x in report.minimality_witnesses.items():
        assert oracle.representations(wit.kept, member, x) == [m]


def test_dump_round_trip():
    dec = exists(EPSet(P4, {(1,), (5,)}, {(0,)}))
    wit = build_witness(dec.canonical, dec.certificate, 2)
    kept, removed = parse_witness_dump(wit.dump())
    assert kept == wit.kept and removed == wit.removed
    with pytest.raises(ValueError):
        parse_witness_dump("X 1 2\n")


# -- beams -------------------------------------------------------------------

def test_beam_examples():
    unit = PeriodBasis.standard(2)
    assert beam_complement_check(BeamSet(unit, beams=(((0, 0), (1, 1)),)))
    single = BeamSet(EVEN, beams=(((0, 0), (2, 2)),))
    assert not beam_complement_check(single)
    four = BeamSet(EVEN, beams=tuple((a, (2, 2)) for a in [(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert beam_complement_check(four)


def test_beam_direction_must_point_into_the_cone():
    with pytest.raises(MalformedBeam):
        BeamSet(EVEN, beams=(((0, 0), (2, 0)),))
    with pytest.raises(MalformedBeam):
        BeamSet(EVEN, beams=(((0, 0), (1,)),))


def test_drop_finite():
    unit = PeriodBasis.standard(2)
    m = BeamSet(unit, beams=(((0, 0), (1, 1)),))
    assert drop_finite(m, []) == m
    cut = drop_finite(m, [(0, 0)])
    assert beam_complement_check(cut)
    assert (0, 0) not in cut.points(10)
    m = BeamSet(EVEN, beams=tuple((a, (2, 2)) for a in [(0, 0), (1, 0), (0, 1), (1, 1)]))
    f = [(0, 0), (-2, -2), (1, 0), (-5, -4), (-1, 1)]
    cut = drop_finite(m, f)
    assert beam_complement_check(cut)
    assert not set(f) & cut.points(20)
    # everything else survives
    assert m.points(20) - set(f) <= cut.points(20)


def beam_window_uncovered(m: BeamSet, lo: int, hi: int, length: int):
    targets = list(oracle.Box.cube(m.basis.dim, lo, hi))
    cols = m.basis.columns
    return oracle.window_cover_check(m.points(length), lambda v: oracle.in_cone(cols, v), targets)


def test_beam_check_agrees_with_window_coverage():
    rng = random.Random(5)
    for _ in range(10):
        m = random_beamset(rng, rng.randint(1, 2), 6)
        uncovered = beam_window_uncovered(m, -6, 6, 40)
        assert beam_complement_check(m) == (not uncovered)


def random_beamset(rng, d, max_order):
    basis = random_basis(rng, d, max_order, positive=True)
    beams = []
    for _ in range(rng.randint(1, 4)):
        apex = tuple(rng.randint(-2, 2) for _ in range(d))
        gamma = [rng.randint(1, 2) for _ in range(d)]
        beams.append((apex, basis.combine(gamma)))
    finite = {tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(0, 3))}
    return BeamSet(basis, frozenset(finite), tuple(beams))
