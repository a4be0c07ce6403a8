import itertools
import random
from fractions import Fraction

import pytest

from conftest import random_nz_set
from oracles import shortest_reset_word, sync_by_pairs_brute
from primset.automata import (Automaton, CernyViolation, NotAnAutomaton, bound_f_default,
                              bound_f_rational, cerny_automaton, check_cerny_bound,
                              construct_positive_product, cubic_product_bound, extract_automaton,
                              is_automaton, is_synchronizing, positive_product_bound,
                              shortest_sync_word)
from primset.core import BoolMatrix, MatrixSet, image, is_positive, word_product
from primset.generators import extremal_primitive_set
from primset.pvstruct import AssumptionViolated, decide_primitive_nz
from primset.semigroup import LimitExceeded, ResourceLimits, decide_primitive_exact


def random_automaton(n, m, rng):
    return Automaton.from_maps([[rng.randint(1, n) for _ in range(n)] for _ in range(m)])


def primitive_nz_sets(count, seed, max_n=5):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = random_nz_set(rng.randint(2, max_n), rng.randint(1, 3), rng)
        if decide_primitive_nz(s).primitive:
            out.append(s)
    return out


def test_is_automaton_examples():
    perm = BoolMatrix.from_function([2, 3, 1])
    assert is_automaton(MatrixSet((perm, BoolMatrix.identity(3))))
    assert not is_automaton(MatrixSet((BoolMatrix.ones(2),)))
    with pytest.raises(NotAnAutomaton):
        Automaton(MatrixSet((BoolMatrix.ones(2),)))


def test_sync_examples():
    assert not is_synchronizing(Automaton.from_maps([[1, 2, 3]]))
    assert is_synchronizing(cerny_automaton(5))
    const = Automaton.from_maps([[1, 1, 1]])
    assert is_synchronizing(const)
    res = shortest_sync_word(const)
    assert res.word == (1,) and res.target_state == 1
    assert not shortest_sync_word(Automaton.from_maps([[2, 1]])).synchronizing


def test_cerny_construction():
    a = cerny_automaton(2)
    assert a.maps == ((0, 0), (1, 0))
    with pytest.raises(ValueError):
        cerny_automaton(1)


@pytest.mark.parametrize("n", range(2, 9))
def test_cerny_lengths(n):
    res = shortest_sync_word(cerny_automaton(n))
    assert len(res.word) == (n - 1) ** 2


def test_cerny_words_match_brute_force():
    for n in range(2, 5):
        a = cerny_automaton(n)
        assert shortest_sync_word(a).word == shortest_reset_word(a.maps, (n - 1) ** 2)


def test_reset_words_collapse_states():
    rng = random.Random(73)
    for _ in range(200):
        a = random_automaton(rng.randint(1, 6), rng.randint(1, 3), rng)
        res = shortest_sync_word(a)
        if res.synchronizing:
            states = (1 << a.n) - 1
            for k in res.word:
                states = image(states, a.base[k].rows)
            assert states == 1 << (res.target_state - 1)
            p = word_product(a.base, res.word)
            assert all(r == 1 << (res.target_state - 1) for r in p.rows)


def test_shortest_reset_word_matches_enumeration():
    rng = random.Random(79)
    for _ in range(150):
        n = rng.randint(2, 5)
        a = random_automaton(n, rng.randint(1, 2), rng)
        res = shortest_sync_word(a)
        brute = shortest_reset_word(a.maps, (n - 1) ** 2)
        assert (res.word if res.synchronizing else None) == brute


def test_pair_criterion_matches_oracle():
    rng = random.Random(83)
    for _ in range(300):
        a = random_automaton(rng.randint(1, 6), rng.randint(1, 3), rng)
        assert is_synchronizing(a) == sync_by_pairs_brute(a.maps)
        assert is_synchronizing(a) == shortest_sync_word(a).synchronizing


def test_cerny_bound_predicate_random():
    # any violation here would refute the (n-1)^2 conjecture: fail loudly
    rng = random.Random(89)
    for _ in range(400):
        a = random_automaton(rng.randint(2, 6), rng.randint(1, 3), rng)
        length = check_cerny_bound(a)
        if length is not None:
            assert length <= (a.n - 1) ** 2


def test_cerny_bound_exhaustive_small():
    for n in (2, 3):
        maps = list(itertools.product(range(1, n + 1), repeat=n))
        for f, g in itertools.product(maps, repeat=2):
            check_cerny_bound(Automaton.from_maps([f, g]))


def test_cerny_violation_is_loud(monkeypatch):
    import primset.automata as automata
    fake = automata.SyncResult(True, (1,) * 5, 1)
    monkeypatch.setattr(automata, "shortest_sync_word", lambda a, limits=None: fake)
    with pytest.raises(CernyViolation):
        check_cerny_bound(cerny_automaton(3))


def test_sync_word_limits():
    with pytest.raises(LimitExceeded):
        shortest_sync_word(cerny_automaton(8), ResourceLimits(max_states=10))
    with pytest.raises(LimitExceeded):
        shortest_sync_word(cerny_automaton(8), ResourceLimits(max_depth=3))


def test_extract_all_ones():
    s = MatrixSet((BoolMatrix.ones(3),))
    auto, w = extract_automaton(s, [1])
    assert w == (1,)
    assert auto.maps == ((0, 0, 0),)
    assert is_synchronizing(auto)


def test_extract_extremal():
    s = extremal_primitive_set(3)
    v = decide_primitive_exact(s)
    auto, w = extract_automaton(s, v.witness)
    assert is_automaton(auto.base)
    assert all(auto.base[k] <= s[v.witness[k - 1]] for k in w)
    assert is_synchronizing(auto)


def test_extract_errors():
    s = extremal_primitive_set(3)
    with pytest.raises(ValueError):
        extract_automaton(s, [1, 2])
    with pytest.raises(AssumptionViolated):
        extract_automaton(MatrixSet((BoolMatrix.from_array([[1, 1], [0, 0]]),)), [1])


def test_extraction_properties():
    for s in primitive_nz_sets(100, 97):
        w = decide_primitive_exact(s).witness
        auto, word = extract_automaton(s, w)
        assert is_automaton(auto.base)
        assert word == tuple(range(1, len(w) + 1))
        assert all(auto.base[k] <= s[w[k - 1]] for k in word)
        assert is_synchronizing(auto)
        collapsed = word_product(auto.base, word)
        assert all(r == 1 for r in collapsed.rows)


def test_bound_values():
    assert bound_f_default(1) == 0
    assert bound_f_default(2) == 1
    assert bound_f_default(4) == 10
    assert bound_f_default(5) == 19
    assert positive_product_bound(4) == 23
    assert positive_product_bound(5) == 42
    assert positive_product_bound(1, f=lambda n: 7) == 14
    assert cubic_product_bound(5) == Fraction(347, 8)


def test_rational_identity():
    for n in range(1, 101):
        assert 2 * bound_f_rational(n) + n - 1 == cubic_product_bound(n)


def test_product_length_within_bound():
    for s in primitive_nz_sets(100, 101):
        assert len(decide_primitive_exact(s).witness) <= positive_product_bound(s.n)


def test_construct_examples():
    assert construct_positive_product(MatrixSet((BoolMatrix.ones(3),))) == (1,)
    assert construct_positive_product(MatrixSet((BoolMatrix.ones(1),))) == (1,)
    s = extremal_primitive_set(3)
    w = construct_positive_product(s)
    assert is_positive(word_product(s, w))
    assert len(w) <= positive_product_bound(3)
    s4 = extremal_primitive_set(4)
    assert is_positive(word_product(s4, construct_positive_product(s4)))


def test_construct_random():
    for s in primitive_nz_sets(150, 103, max_n=6):
        w = construct_positive_product(s)
        assert is_positive(word_product(s, w))
        assert len(w) >= len(decide_primitive_exact(s).witness)
        assert construct_positive_product(s, exact=True) == decide_primitive_exact(s).witness


def test_construct_errors():
    with pytest.raises(ValueError):
        construct_positive_product(MatrixSet((BoolMatrix.identity(2),)))
    with pytest.raises(AssumptionViolated):
        construct_positive_product(MatrixSet((BoolMatrix.zeros(2),)))
