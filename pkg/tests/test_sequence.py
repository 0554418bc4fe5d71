import pytest

from fibquilt.sequence import (
    MAX_SAFE_INDEX,
    generate,
    index_of_value,
    verify_identities,
)
from fibquilt.decomposition import sequence_from_definition

FIRST_13 = (1, 2, 3, 4, 5, 7, 9, 12, 16, 21, 28, 37, 49)


def test_first_thirteen_terms():
    assert generate(13).terms == FIRST_13


def test_generate_one():
    assert generate(1).terms == (1,)


def test_strictly_increasing():
    t = generate(60).terms
    assert all(a < b for a, b in zip(t, t[1:]))


def test_both_recurrences_agree():
    t = generate(60).terms
    for i in range(7, 61):  # 1-based index i
        assert t[i - 1] == t[i - 4] + t[i - 3]
        assert t[i - 1] == t[i - 2] + t[i - 6]


def test_sum_identity_small_case():
    t = generate(10).terms
    assert sum(t[:5]) == 15 == t[9] - 6


def test_recurrence_a_small_case():
    seq = generate(13)
    assert seq.value(7) == 9 == seq.value(6) + seq.value(2)


def test_verify_identities_clean():
    report = verify_identities(30)
    assert report.all_ok
    assert report.failures == []


def test_verify_identities_requires_enough_terms():
    with pytest.raises(ValueError):
        verify_identities(9)


def test_index_of_value():
    seq = generate(13)
    assert index_of_value(seq, 7) == 6
    assert index_of_value(seq, 6) is None  # 6 = 2 + 4 is never a term
    assert index_of_value(seq, 1) == 1
    assert index_of_value(seq, 49) == 13


def test_generate_rejects_zero():
    with pytest.raises(ValueError):
        generate(0)


def test_overflow_refused_with_safe_bound():
    generate(MAX_SAFE_INDEX)  # largest allowed
    assert generate(MAX_SAFE_INDEX).terms[-1] <= 2**63 - 1
    with pytest.raises(ValueError, match=str(MAX_SAFE_INDEX)):
        generate(MAX_SAFE_INDEX + 1)


def test_value_accessor_bounds():
    seq = generate(5)
    with pytest.raises(IndexError):
        seq.value(0)
    with pytest.raises(IndexError):
        seq.value(6)


def test_definition_oracle_matches_recurrence():
    assert tuple(sequence_from_definition(25)) == generate(25).terms
