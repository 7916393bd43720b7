from quadgb.algebra import rank_zero_forms
from quadgb.corpus import random_presentation, run_corpus
from quadgb.fields import FieldError, make_field, make_rng

import pytest


def test_random_presentation_conforms():
    K = make_field(101)
    I, R = random_presentation(5, K, make_rng(4))
    assert R.dims[2] == 3 and R.dims[3] == 0
    assert not rank_zero_forms(R)
    assert len(I.gens) == 15 - 3


def test_small_corpus():
    stats = run_corpus(5, 3, seed=2)
    assert stats["witness"] == 3 and stats["verification_failed"] == 0
    again = run_corpus(5, 3, seed=2)
    assert again == stats


def test_empty_and_invalid():
    stats = run_corpus(4, 0)
    assert stats["witness"] == 0 and stats["items"] == []
    with pytest.raises(FieldError):
        run_corpus(4, 1, p=2)
    with pytest.raises(ValueError):
        random_presentation(3, make_field(101), make_rng(0))
