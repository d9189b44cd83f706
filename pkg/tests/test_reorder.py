import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fairstream.core import FairnessConstraint, WindowSpec, valid_combinations
from fairstream.gen import from_values
from fairstream.oracle import brute_force_reorder, naive_fair_blocks
from fairstream.reorder import bfair_reorder, count_fair_blocks, extended_prefix, ibc, max_reorder

from conftest import BASE, LANDMARKS

S5 = WindowSpec(5, 5)


def labels(totals, names="CAH"):
    return [n for n, t in zip(names, totals) for _ in range(t)]


def test_ibc_and_prefix():
    assert ibc((6, 7, 7), (2, 1, 2)) == 3
    assert extended_prefix((6, 7, 7), (2, 1, 2), 3) == ((0, 1, 1), 2)
    assert ibc((0, 4), (0, 2)) == 2
    assert ibc((1, 4), (2, 2)) == 0


def test_single_case_worked_example(constraint2):
    res = bfair_reorder(from_values(labels((6, 7, 7))), constraint2, S5)
    assert [it.value for it in res.stream] == "A H C C H A H C C H A H C C H A H A A A".split()
    assert res.fair_block_count == 13
    assert res.primary_combo == (2, 1, 2)
    assert (res.plan.ibc, res.plan.ep, res.plan.epl) == (3, (0, 1, 1), 2)


def test_multi_case_worked_example(constraint2):
    res = bfair_reorder(from_values(labels((7, 8, 5))), constraint2, S5)
    assert [it.value for it in res.stream] == ("A C C H H " * 2 + "A C C H C A" + " A" * 4).split()
    assert (res.plan.ibc, res.plan.ibc_r, res.plan.ep) == (2, 1, (0, 1, 0))
    assert res.secondary_combo == (3, 1, 1)
    assert res.fair_block_count == count_fair_blocks(res.stream, constraint2, S5)


def test_running_example_with_landmarks(constraint2, scope_items):
    res = bfair_reorder(scope_items, constraint2, S5)
    assert Counter(it.value for it in res.stream) == Counter(BASE + LANDMARKS)
    assert res.fair_block_count == 13
    before = count_fair_blocks(scope_items, constraint2, S5)
    assert before < 13


def test_reorder_is_a_stable_permutation(constraint2, scope_items):
    res = bfair_reorder(scope_items, constraint2, S5)
    assert sorted(it.seq for it in res.stream) == [it.seq for it in scope_items]
    for v in "CAH":
        seqs = [it.seq for it in res.stream if it.value == v]
        assert seqs == sorted(seqs)


def test_short_input_rejected(constraint2):
    with pytest.raises(ValueError):
        bfair_reorder(from_values(list("CAH")), constraint2, S5)


def test_no_block_fits_returns_input(constraint2):
    items = from_values(list("AAAAAAH"))
    res = bfair_reorder(items, constraint2, S5)
    assert not res.changed and res.stream == items


def test_never_worse_than_input(constraint2):
    items = from_values(list("CCAHH" * 3))
    res = bfair_reorder(items, constraint2, S5)
    assert res.fair_block_count == 11


def test_max_reorder_rejects_bad_combo(constraint2):
    with pytest.raises(ValueError):
        max_reorder(from_values(BASE), (2, 3), [], constraint2, S5)


def test_max_reorder_fixed_combo(constraint2):
    res = max_reorder(from_values(labels((6, 7, 7))), (2, 1, 2), [(2, 1, 2)], constraint2, S5)
    assert res.fair_block_count == 13


@st.composite
def instances(draw, n_max=40):
    ell = draw(st.integers(2, 4))
    weights = draw(st.lists(st.integers(1, 9), min_size=ell, max_size=ell))
    s = draw(st.integers(2, 6))
    names = [f"v{i}" for i in range(ell)]
    c = FairnessConstraint.from_lists(names, [Fraction(w, sum(weights)) for w in weights])
    vals = draw(st.lists(st.sampled_from(names), min_size=s, max_size=n_max))
    return c, WindowSpec(s, s), vals


@settings(max_examples=200, deadline=None)
@given(instances())
def test_reported_count_is_true_count(case):
    c, spec, vals = case
    res = bfair_reorder(from_values(vals), c, spec)
    assert Counter(it.value for it in res.stream) == Counter(vals)
    assert res.fair_block_count == naive_fair_blocks([it.value for it in res.stream], c, spec.block_size)
    assert res.fair_block_count >= naive_fair_blocks(vals, c, spec.block_size)
    assert res.fair_block_count <= len(vals) - spec.block_size + 1


@settings(max_examples=150, deadline=None)
@given(instances(n_max=60))
def test_single_combo_formula(case):
    # with exactly one allowed combination the extended isomorphic layout is exact
    c, spec, vals = case
    combos = valid_combinations(c, spec)
    totals = [vals.count(v) for v in c.schema.values]
    n_blocks = ibc(totals, combos[0])
    if len(combos) != 1 or n_blocks < 1:
        return
    res = bfair_reorder(from_values(vals), c, spec)
    s, n = spec.block_size, len(vals)
    if n_blocks * s == n:
        assert res.fair_block_count == n - s + 1
    else:
        _, epl = extended_prefix(totals, combos[0], n_blocks)
        assert res.fair_block_count == (n_blocks - 1) * s + epl + 1


def test_matches_oracle_on_single_combo_constraints():
    rng = random.Random(3)
    checked = 0
    while checked < 150:
        ell = rng.choice((2, 3))
        s = rng.choice((2, 3, 4))
        names = [f"v{i}" for i in range(ell)]
        counts = [rng.randint(0, s) for _ in range(ell)]
        if sum(counts) != s:
            continue
        c = FairnessConstraint.from_lists(names, [Fraction(x, s) for x in counts])
        vals = [rng.choice(names) for _ in range(rng.randint(s, 10))]
        res = bfair_reorder(from_values(vals), c, WindowSpec(s, s))
        assert res.fair_block_count == brute_force_reorder(vals, c, WindowSpec(s, s))
        checked += 1
