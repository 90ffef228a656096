import itertools

import pytest

from effalg import (GeneratorSpec, enumerate_all, enumerate_size, find_isomorphism, generate,
                    naive_class_counts, validate_ea)
from effalg.catalog import MAX_ENUM_SIZE
from effalg.core import is_orthoalgebra
from effalg.structure import blocks, ord_of


def test_generator_examples(b2):
    C = generate("chain(3)")
    assert ord_of(C, C.index("a")) == 3
    M = generate("mo(2)")
    assert M.n == 6 and is_orthoalgebra(M) and len(blocks(M)) == 2
    assert find_isomorphism(generate("product(chain(1),chain(1))"), b2) is not None


@pytest.mark.parametrize("text", ["chain(3)", "product(chain(2),mo(2))", "hsum(diamond,boolean(3))"])
def test_spec_text_round_trip(text):
    assert str(GeneratorSpec.parse(text)) == text


@pytest.mark.parametrize("text", ["chain(0)", "chain", "mo(1,2)", "product(chain(2))",
                                  "diamond(1)", "torus(3)", "chain(3"])
def test_bad_specs(text):
    with pytest.raises(ValueError):
        GeneratorSpec.parse(text)


def test_hsum_label_collision():
    E = generate("hsum(chain(2),chain(2))")
    assert E.labels == ("0", "a_1", "a_2", "1")
    assert validate_ea(E).valid


def test_small_sizes():
    assert len(enumerate_size(2)) == 1
    [C2] = enumerate_size(3)
    a = 1
    assert C2.oplus(a, a) == C2.unit
    assert len(enumerate_size(4)) == 3


def test_enumerator_matches_oracle():
    counts = {n: len(enumerate_size(n)) for n in range(2, 6)}
    assert counts == naive_class_counts(5)


def test_oracle_free_rows_agree_at_three():
    assert naive_class_counts(3, fix_forced_rows=False) == naive_class_counts(3)


def test_no_isomorphic_duplicates():
    by_size = {}
    for E in enumerate_all(6):
        by_size.setdefault(E.n, []).append(E)
    for group in by_size.values():
        for A, B in itertools.combinations(group, 2):
            assert find_isomorphism(A, B) is None


def test_size_bounds():
    with pytest.raises(ValueError):
        enumerate_all(MAX_ENUM_SIZE + 1)
    with pytest.raises(ValueError):
        enumerate_size(1)
