import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qinfoloc.codefile import load_bundled
from qinfoloc.graphcode import CosetRep, Graph, encode
from qinfoloc.infoloc import (
    Presence,
    all_subsets,
    build_context,
    classify,
    closure,
    commutation,
    compose,
    generating_set,
    is_abelian,
    is_member,
    rep_inverse,
    rep_order,
    rep_power,
    subset_info_group,
    sweep,
)
from qinfoloc.oracle import DenseCode
from qinfoloc.pauli import is_based_in

from strategies import small_codes


def brute_members(code, B):
    """Membership by enumerating the whole stabilizer lattice of the trivial code."""
    tr = code.trivial
    n, D = code.n, code.D
    ranges = [range(0, D, dj) for dj in tr.d] + [range(D)] * (n - tr.k)
    out = set()
    for r in code.representatives():
        for x in itertools.product(*ranges):
            pair = np.zeros(2 * n, dtype=np.int64)
            pair[:n] = x
            for j, (a, b, mj) in enumerate(zip(r.xi, r.zeta, tr.m)):
                pair[j] += a
                pair[n + j] = b * mj
            if is_based_in(code.clifford.apply(pair), B, D):
                out.add(r)
                break
    return out


@settings(max_examples=40, deadline=None)
@given(small_codes(max_dim=81), st.data())
def test_members_match_brute_force_and_dense(code, data):
    B = data.draw(st.sets(st.integers(0, code.n - 1)))
    report = subset_info_group(code, B)
    assert set(report.members) == brute_members(code, B)
    assert set(report.members) == DenseCode(code).members(sorted(B))


@settings(max_examples=40, deadline=None)
@given(small_codes(max_dim=256), st.data())
def test_members_form_a_subgroup(code, data):
    B = data.draw(st.sets(st.integers(0, code.n - 1)))
    report = subset_info_group(code, B)
    members = set(report.members)
    tr = code.trivial
    assert CosetRep((0,) * tr.k, (0,) * tr.k) in members
    assert all(compose(a, b, tr) in members for a in members for b in members)
    assert closure(report.generators, tr) == members
    assert report.rank_pb * report.N == code.K


@settings(max_examples=30, deadline=None)
@given(small_codes(max_dim=256))
def test_monotone_in_subset(code):
    n = code.n
    groups = {B: set(subset_info_group(code, B, classify_all=False).members) for B in all_subsets(n, include_empty=True)}
    for B, G in groups.items():
        for j in range(n):
            if j not in B:
                bigger = tuple(sorted(B + (j,)))
                assert G <= groups[bigger]
    assert len(groups[()]) == 1
    assert len(groups[tuple(range(n))]) == code.K**2


@settings(max_examples=30, deadline=None)
@given(small_codes(max_dim=256))
def test_complement_duality(code):
    assert sweep(code).duality_violations == []


@settings(max_examples=30, deadline=None)
@given(small_codes(max_dim=256))
def test_members_commute_with_complement_members(code):
    tr = code.trivial
    for B in all_subsets(code.n):
        Bc = tuple(j for j in range(code.n) if j not in B)
        a = subset_info_group(code, B, classify_all=False).members
        b = subset_info_group(code, Bc, classify_all=False).members
        assert all(commutation(x, y, tr) == 0 for x in a for y in b)


def test_distance_principle_five_qudit():
    # all information absent from any 2 carriers, so any 3 carry everything
    for D in (2, 3, 4, 5, 6):
        code = encode(Graph.from_edges(5, D, [(i, (i + 1) % 5) for i in range(5)]), [[1] * 5])
        for B in all_subsets(5):
            r = subset_info_group(code, B, classify_all=False)
            assert r.case() == ("all_absent" if len(B) <= 2 else "all_present"), (D, B)


def test_normalization_is_rational():
    code = load_bundled("steane").encode()
    ctx = build_context(code, (0, 1, 4))
    assert ctx.N == Fraction(1, 4) and ctx.rank_pb == 8
    ctx = build_context(load_bundled("refinement_d4_z1z2sq").encode(), (1,))
    assert ctx.N == 2 and ctx.rank_pb == 2


def test_subset_out_of_range():
    with pytest.raises(ValueError):
        build_context(load_bundled("steane").encode(), (7,))


def test_single_rep_membership_agrees_with_batch():
    code = load_bundled("four_two_two_d3").encode()
    ctx = build_context(code, (0, 1))
    report = subset_info_group(code, (0, 1), ctx=ctx)
    members = set(report.members)
    assert all(is_member(r, ctx) == (r in members) for r in code.representatives())


# --- group arithmetic ----------------------------------------------------------


def test_rep_arithmetic_composite():
    tr = load_bundled("smith_example_d6").encode().trivial  # d = (3, 2)
    r = CosetRep((1, 1), (2, 0))
    assert rep_order(r, tr) == 6
    assert rep_power(r, 6, tr).is_identity()
    assert compose(r, rep_inverse(r, tr), tr).is_identity()
    assert rep_power(r, 2, tr) == CosetRep((2, 0), (1, 0))


def test_commutation_uses_logical_dimension():
    tr = load_bundled("smith_example_d6").encode().trivial
    x1, z1 = CosetRep((1, 0), (0, 0)), CosetRep((0, 0), (1, 0))
    # X1 Z1^m1 = omega^m1 Z1^m1 X1 with m1 = 2 at D = 6
    assert commutation(x1, z1, tr) == 2
    assert (commutation(x1, z1, tr) + commutation(z1, x1, tr)) % 6 == 0


def test_is_abelian_and_generating_set():
    tr = load_bundled("four_two_two_d3").encode().trivial
    group = closure([CosetRep((1, 0), (0, 0)), CosetRep((0, 1), (0, 0))], tr)
    assert len(group) == 9 and is_abelian(list(group), tr)
    pauli = closure([CosetRep((1, 0), (0, 0)), CosetRep((0, 0), (1, 0))], tr)
    assert not is_abelian(list(pauli), tr)
    gens = generating_set(pauli, tr)
    assert closure(gens, tr) == pauli and len(gens) == 2
    with pytest.raises(ValueError):
        is_abelian([], tr)


def test_classify_excludes_identity_powers():
    tr = load_bundled("refinement_d4").encode().trivial  # one logical qudit, d = 4
    identity = CosetRep((0,), (0,))
    x2 = CosetRep((2,), (0,))
    x1 = CosetRep((1,), (0,))
    # order-2 element: its only nontrivial power is the identity, so it is absent
    assert classify(x2, {identity}, tr).status is Presence.ABSENT
    got = classify(x1, {identity, x2}, tr)
    assert got.status is Presence.PARTIAL and got.power == 2
    x3 = CosetRep((3,), (0,))
    assert classify(x3, {identity, x2}, tr).power == 2


def test_partial_presence_example():
    code = load_bundled("refinement_d4_z1z2sq").encode()
    report = subset_info_group(code, (1,))
    statuses = {r.label(): c.status for r, c in report.classification.items()}
    assert statuses["X01"] is Presence.PARTIAL
    assert statuses["X01^2"] is Presence.PERFECT
    assert statuses["Z01"] is Presence.ABSENT
    assert report.member_count == 2 and report.is_abelian


def test_sweep_size_filter_and_workers():
    code = load_bundled("steane").encode()
    a = sweep(code, 3)
    b = sweep(code, 3, workers=4)
    assert len(a.reports) == 35
    assert {B: r.member_count for B, r in a.reports.items()} == {B: r.member_count for B, r in b.reports.items()}
