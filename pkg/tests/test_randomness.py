from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from irreversim.randomness import (
    alternating,
    all_zeros,
    borel_defect,
    champernowne_prefix,
    deficiency,
    deviation_test,
    empty_test,
    lz78_code_length,
    lz78_complexity,
    neg_log2_prob,
    solovay_membership,
)
from irreversim.seqcore import FAIR, BernoulliPrior, BitString, SeededBitSource

bitstrings = st.text(alphabet="01", min_size=1, max_size=300)


def reference_lz78(s: str) -> list[str]:
    """Plain string LZ78 parse; the last phrase may repeat an earlier one."""
    phrases, seen, cur = [], set(), ""
    for ch in s:
        cur += ch
        if cur not in seen:
            seen.add(cur)
            phrases.append(cur)
            cur = ""
    if cur:
        phrases.append(cur)
    return phrases


@pytest.mark.parametrize(
    "s, c, bits",
    [("0" * 10, 4, 9), ("0", 1, 1), ("01", 2, 3)],
)
def test_lz78_examples(s, c, bits):
    est = lz78_complexity(s)
    assert est.phrase_count == c
    assert est.encoded_bits == bits


def test_lz78_ten_zeros_phrases():
    assert reference_lz78("0" * 10) == ["0", "00", "000", "0000"]


@given(bitstrings)
def test_lz78_matches_reference_parse(s):
    assert lz78_complexity(s).phrase_count == len(reference_lz78(s))


@pytest.mark.parametrize("c", [1, 2, 3, 4, 5, 17, 1000])
def test_code_length_formula(c):
    import math

    assert lz78_code_length(c) == sum(math.ceil(math.log2(i)) + 1 for i in range(1, c + 1))


def test_lz78_empty_rejected():
    with pytest.raises(ValueError):
        lz78_complexity("")


@pytest.mark.parametrize("s, d", [("0" * 10, 1), ("0", 0)])
def test_deficiency_examples(s, d):
    rep = deficiency(s)
    assert rep.deficiency == d
    assert rep.neg_log_prob == len(s)


def test_deficiency_1024_zeros():
    rep = deficiency("0" * 1024)
    assert rep.deficiency >= 512


@given(bitstrings)
def test_fair_deficiency_identity(s):
    rep = deficiency(s, FAIR)
    assert rep.deficiency == len(s) - lz78_complexity(s).encoded_bits
    assert rep.deficiency == rep.neg_log_prob - rep.k_estimate


def test_biased_neg_log_prob():
    assert neg_log2_prob("101", BernoulliPrior(0.25)) == pytest.approx(-np.log2(0.25 * 0.75 * 0.25))


@pytest.mark.parametrize("q1, s", [(0, "1"), (1, "0"), (Fraction(0), "0010")])
def test_zero_probability_prefix(q1, s):
    with pytest.raises(ValueError, match="zero-probability prefix"):
        deficiency(s, BernoulliPrior(q1))


@pytest.mark.parametrize("s, k, d", [("0101", 1, 0), ("0101", 2, 0.75), ("0000000", 1, 0.5)])
def test_borel_defect_examples(s, k, d):
    assert borel_defect(s, k) == pytest.approx(d, abs=1e-15)


def test_borel_defect_errors():
    with pytest.raises(ValueError):
        borel_defect("01", 3)
    with pytest.raises(ValueError):
        borel_defect("01", 0)


@given(bitstrings, st.integers(1, 4))
def test_borel_defect_relabel_invariant(s, k):
    if k > len(s):
        return
    flipped = s.translate(str.maketrans("01", "10"))
    assert borel_defect(s, k) == borel_defect(flipped, k)


def test_borel_defect_matches_counting():
    s = str(SeededBitSource(4).prefix(999))
    k = 3
    blocks = [s[i:i + k] for i in range(0, 999 - 999 % k, k)]
    freqs = [blocks.count("".join(w)) / len(blocks) for w in product("01", repeat=k)]
    assert borel_defect(s, k) == pytest.approx(max(abs(f - 1 / 8) for f in freqs), abs=1e-15)


@pytest.mark.parametrize("N, s", [(22, "0110111001011101111000"), (1, "0"), (4, "0110")])
def test_champernowne_examples(N, s):
    assert champernowne_prefix(N) == s


def test_champernowne_prefix_consistent():
    long = str(champernowne_prefix(5000))
    for n in (1, 7, 100, 4999):
        assert long.startswith(str(champernowne_prefix(n)))


def test_champernowne_is_normal_but_compressible():
    N = 2**16
    c = champernowne_prefix(N)
    for k in (1, 2, 3):
        assert borel_defect(c, k) <= 0.05
    assert lz78_complexity(c).phrase_count <= 2 * N / 16


def test_controls_separate_from_fair_sequences():
    N = 2**16
    fair = [deficiency(SeededBitSource(seed).bits(N)).deficiency for seed in range(100)]
    assert np.median(fair) <= 0.15 * N
    assert deficiency(all_zeros(N)).deficiency >= 0.5 * N
    assert deficiency(alternating(N)).deficiency >= 0.5 * N


def test_solovay_all_ones():
    test = deviation_test(Fraction(1, 5))
    rep = solovay_membership(test, "1" * 100, 100)
    assert rep.indices == list(range(1, 101))


def test_solovay_alternation():
    test = deviation_test(Fraction(1, 5))
    rep = solovay_membership(test, alternating(100), 100)
    assert rep.indices == [1]
    assert rep.stabilized_before()


def test_solovay_empty_family():
    rep = solovay_membership(empty_test(), SeededBitSource(1), 50)
    assert rep.indices == [] and rep.count == 0 and rep.last is None


def test_solovay_short_sequence_names_index():
    with pytest.raises(ValueError, match="V_11"):
        solovay_membership(deviation_test(Fraction(1, 5)), "0" * 10, 20)


def test_solovay_membership_matches_oracle():
    src = SeededBitSource(8)
    bits = src.bits(500)
    test = deviation_test(Fraction(1, 10))
    want = [n for n in range(1, 501) if abs(Fraction(int(bits[:n].sum()), n) - Fraction(1, 2)) > Fraction(1, 10)]
    assert solovay_membership(test, src, 500).indices == want


@pytest.mark.parametrize("n", [1, 4, 9, 14])
def test_deviation_test_cylinders_within_bound(n):
    test = deviation_test(Fraction(1, 5))
    measure = sum(Fraction(1, 2**len(s)) for s in test.cylinders(n))
    assert measure == test.exact_measure(n)
    assert measure <= test.measure_bound(n)


def test_deviation_test_biased_prior_bound():
    prior = BernoulliPrior(Fraction(1, 3))
    test = deviation_test(Fraction(1, 6), prior)
    for n in range(1, 40):
        assert test.exact_measure(n) <= test.measure_bound(n)


def test_cylinder_enumeration_cap():
    with pytest.raises(ValueError):
        list(deviation_test(Fraction(1, 5)).cylinders(30))


def test_fair_sources_rarely_in_late_tests():
    test = deviation_test(Fraction(1, 10))
    late = [solovay_membership(test, SeededBitSource(s), 2000).stabilized_before() for s in range(20)]
    assert sum(late) >= 18
    assert not solovay_membership(test, all_zeros(2000), 2000).stabilized_before()
