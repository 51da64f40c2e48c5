"""Subshift fixtures with independent oracles.

The spacing-shift fast paths (gap criterion, cross distances) are checked
against plain filler-word enumeration; the certified Sturmian coding is
checked against a 60-digit Decimal computation of the rotation.
"""

import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, assume, settings
from hypothesis import strategies as st

from chaoskit import setfam, subshift
from chaoskit.budgets import BudgetError
from chaoskit.setfam import WindowSet, window_set
from chaoskit.subshift import (
    FullShift, SpacingShift, SturmianShift, cylinder_hitting_set, gap_set,
    golden_spec, language, occurrence_gaps, parse_word, periodicity_probe,
    spacing_dense_periodic, dense_periodic_witness_ok, spacing_member,
    spacing_witness, sturmian_prefix, word_distance,
)


def evens(h=64):
    return WindowSet(h, tuple(range(0, h, 2)))


def nonpowers(h=128):
    return setfam.from_generator("complement(powers(2))", h)


# ---------------------------------------------------------------------------
# Words and the metric.

def test_word_basics():
    assert parse_word("-") == ""
    assert parse_word("0101") == "0101"
    with pytest.raises(ValueError):
        parse_word("012")
    assert subshift.format_word("") == "-"


def test_word_distance():
    assert word_distance("0110", "0100") == Fraction(1, 4)
    assert word_distance("1", "0") == 1
    assert word_distance("111", "111") == 0
    with pytest.raises(ValueError):
        word_distance("01", "011")


def test_spacing_member():
    p = evens(16)
    assert spacing_member(p, "101")        # gap 2
    assert spacing_member(p, "0000")
    assert not spacing_member(p, "11")     # gap 1
    assert not spacing_member(p, "1001")   # gap 3
    with pytest.raises(ValueError):
        spacing_member(evens(4), "10001")  # gap 4 is beyond the horizon


# ---------------------------------------------------------------------------
# Language enumeration.

def test_language_spacing_evens_frozen():
    words = language(SpacingShift(evens(32)), 3)
    assert words == {"", "0", "1", "00", "01", "10",
                     "000", "001", "010", "100", "101"}


def test_language_full_shift_count():
    assert len(language(FullShift(), 4)) == 31      # 1+2+4+8+16


def test_language_budget():
    with pytest.raises(BudgetError):
        language(FullShift(), 4, node_budget=10)
    with pytest.raises(BudgetError):
        language(FullShift(), 17)


# ---------------------------------------------------------------------------
# Gap sets and cylinders against brute enumeration.

def brute_hitting(p_set, u, v, n_max):
    """Scan every admissible word of length n_max + 3 once, collecting all
    (prefix, shift, segment) coincidences; completely independent of the
    gap-criterion shortcuts."""
    length = n_max + 3
    seen = set()
    stack = [""]
    while stack:
        w = stack.pop()
        if len(w) == length:
            continue
        for c in "01":
            cand = w + c
            if spacing_member(p_set, cand):
                stack.append(cand)
                if len(cand) == length:
                    for a in range(1, 4):
                        for n in range(1, n_max + 1):
                            for b in range(1, 4):
                                seen.add((cand[:a], n, cand[n:n + b]))
    return seen


def test_cylinder_hitting_matches_brute():
    rng = random.Random("cylinder-brute")
    for _ in range(12):
        members = {m for m in range(1, 32) if rng.random() < 0.5}
        p = window_set(32, members | {1})
        oracle = SpacingShift(p)
        truth = brute_hitting(p, "", "", 8)
        words = sorted(w for w in language(oracle, 3) if w)
        for u in words:
            for v in words:
                got = cylinder_hitting_set(oracle, u, v, 8)
                expected = tuple(n for n in range(1, 9) if (u, n, v) in truth)
                assert got.members == expected, (p.members, u, v)


def test_cylinder_overlap_region_frozen():
    # u = v = 101 over the even spacing set: overlaps at even shifts only.
    got = cylinder_hitting_set(SpacingShift(evens(64)), "101", "101", 8)
    assert got.members == (2, 4, 6, 8)
    # On the full shift every shift is realizable.
    got = cylinder_hitting_set(FullShift(), "01", "10", 10)
    assert got.members == tuple(range(1, 11))


def test_gap_set_is_shifted_p():
    """gap_set(1, 1) recovers P - 1 on the window, for every fixture."""
    for p in (evens(64), nonpowers(128), setfam.full_window(64),
              window_set(64, [1, 2, 5, 11, 29])):
        got = gap_set(SpacingShift(p), "1", "1", 32)
        expected = tuple(q - 1 for q in p.members if 1 <= q <= 33)
        assert got.members == expected


def test_gap_set_nonpowers_frozen():
    got = gap_set(SpacingShift(nonpowers(128)), "1", "1", 32)
    assert got.members == tuple(sorted(set(range(33)) - {1, 3, 7, 15, 31}))


def test_gap_set_undecidable_horizon():
    with pytest.raises(ValueError):
        gap_set(SpacingShift(evens(16)), "1", "1", 32)


def test_gap_set_generic_fallback_agrees():
    """A wrapper that hides the SpacingShift type forces the DFS fallback."""

    class Opaque:
        kind = "opaque"

        def __init__(self, p):
            self._o = SpacingShift(p)

        def accepts(self, w):
            return self._o.accepts(w)

    for members in ([1, 2, 5], [2, 4, 6, 8, 10, 12], [1, 4, 9, 16]):
        p = window_set(32, members)
        fast = gap_set(SpacingShift(p), "1", "1", 10)
        slow = gap_set(Opaque(p), "1", "1", 10)
        assert fast.members == slow.members


# ---------------------------------------------------------------------------
# Dense periodic points in spacing shifts.

def test_witness_rule_even_spacing():
    # k = 2 works for every even p: all three progressions stay even.
    p_set = evens(256)
    for p in range(2, 65, 2):
        assert dense_periodic_witness_ok(p_set, p, 2)


def test_witness_rule_nonpowers_and_p1_exception():
    p_set = nonpowers(256)
    # Doubling rule: for p >= 2 every multiple of p keeps an odd factor.
    for p in p_set.members:
        if 2 <= p <= 64:
            assert dense_periodic_witness_ok(p_set, p, 2 * p)
    # p = 1 is the exception: k = 2 sweeps out all of N, hitting the powers.
    assert 1 in p_set
    assert not dense_periodic_witness_ok(p_set, 1, 2)
    assert dense_periodic_witness_ok(p_set, 1, 6)


def test_spacing_dense_periodic_reports():
    rep = spacing_dense_periodic(nonpowers(128))
    assert rep.passed and not rep.failures
    assert rep.witnesses[1] == 6           # ascending search skips k <= 5
    rep = spacing_dense_periodic(evens(128))
    assert rep.passed
    assert all(k == 2 for k in rep.witnesses.values())


def test_spacing_witness_frozen():
    p = nonpowers(32)
    w = spacing_witness("1", 3, "1", p)
    assert w.word == "10001" and not w.member          # gap 4 is a power
    w = spacing_witness("1", 4, "1", p)
    assert w.word == "100001" and w.member
    assert not w.block_start                           # 4 itself is missing
    w = spacing_witness("1", 5, "1", p)
    assert w.member and w.block_start                  # 5,6 both in P


@given(st.integers(1, 20), st.integers(0, 12))
@settings(max_examples=40)
def test_spacing_witness_block_start_sufficient(seed, k):
    """Whenever k starts a long enough run of P, the glued word is a member."""
    rng = random.Random(f"witness/{seed}")
    members = {m for m in range(1, 40) if rng.random() < 0.6}
    p = window_set(40, members | {1})
    u, v = "101", "11"
    assume(spacing_member(p, u) and spacing_member(p, v))
    w = spacing_witness(u, k, v, p)
    if w.block_start:
        assert w.member


# ---------------------------------------------------------------------------
# Sturmian coding, against a Decimal oracle.

def decimal_prefix(n):
    getcontext().prec = 60
    alpha = (Decimal(5).sqrt() - 1) / 2
    out = []
    for i in range(n):
        frac = (i * alpha) % 1
        out.append("1" if frac >= 1 - alpha else "0")
    return "".join(out)


def test_sturmian_first_symbols_frozen():
    spec = golden_spec(400)
    assert sturmian_prefix(spec, 8) == "01011010"


def test_sturmian_matches_decimal_oracle():
    spec = golden_spec(400)
    assert sturmian_prefix(spec) == decimal_prefix(400)


def test_sturmian_certification_rejects_coarse_surrogate():
    with pytest.raises(ValueError):
        subshift.SturmianSpec(alpha=Fraction(2, 3), ulp=Fraction(1, 9),
                              prefix_len=50)


def test_factor_complexity_small():
    oracle = SturmianShift(golden_spec(2000))
    lang = language(oracle, 8)
    for n in range(1, 9):
        assert sum(1 for w in lang if len(w) == n) == n + 1


def test_occurrences_match_decimal_prefix():
    spec = golden_spec(400)
    ref = decimal_prefix(400)
    for w in ("0", "10", "010", "0110"):
        occ = occurrence_gaps(spec, w)
        expected = tuple(i for i in range(len(ref) - len(w) + 1)
                         if ref.startswith(w, i))
        assert occ.members == expected


def test_periodicity_probe():
    # No short word powers occur in the rotation coding...
    assert not periodicity_probe(SturmianShift(golden_spec(400)), 6, 8)
    # ...but spacing shifts always carry them (all-zero word, and for the
    # even fixture also the 2-periodic word 10).
    ev = SpacingShift(evens(64))
    assert periodicity_probe(ev, 2, 8)
    assert ev.accepts("10" * 8)


def test_sturmian_word_budget():
    oracle = SturmianShift(golden_spec(100))
    with pytest.raises(BudgetError):
        oracle.accepts("0" * 26)
    with pytest.raises(BudgetError):
        occurrence_gaps(oracle.spec, "01" * 20)


# ---------------------------------------------------------------------------
# Transitivity survey panels.

def test_transitivity_report_evens():
    rep = subshift.fs_transitivity_report(
        SpacingShift(evens(128)), 3, 64,
        setfam.FamilyParams(gap=2, block=8, cofinite_head=8, burnin=8))
    assert rep.all_syndetic
    assert not rep.all_thick
    assert not rep.all_cofinite
    assert rep.p_verdict is not None and not rep.p_verdict.thick
    # Rows with an empty u or v never appear: only non-empty words pair up.
    assert all(r.u and r.v for r in rep.rows)


def test_transitivity_report_mixing_iff_cofinite():
    params = setfam.FamilyParams(gap=2, block=8, cofinite_head=8, burnin=8)
    fixtures = [
        setfam.full_window(128),
        window_set(128, set(range(1, 128)) - {3}),
        evens(128),
        nonpowers(128),
    ]
    for p in fixtures:
        rep = subshift.fs_transitivity_report(SpacingShift(p), 2, 64, params)
        assert rep.all_cofinite == rep.p_verdict.cofinite
