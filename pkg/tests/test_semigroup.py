import random

import pytest

from conftest import random_nz_set, random_set
from oracles import all_words, dense, product_of, shortest_positive_word
from primset.core import BoolMatrix, MatrixSet, is_positive, prefix_products, word_product
from primset.generators import prime_cycle_set
from primset.pvstruct import decide_primitive_nz
from primset.semigroup import (INF, LimitExceeded, ResourceLimits, certify_not_primitive_closure,
                               decide_primitive_exact, shortest_positive_length,
                               verify_closure_certificate)


def bm(rows):
    return BoolMatrix.from_array(rows)


def test_all_ones_singleton():
    v = decide_primitive_exact(MatrixSet((BoolMatrix.ones(3),)))
    assert v.primitive and v.witness == (1,) and v.length == 1


def test_permutations_never_primitive():
    shift = BoolMatrix.from_function([2, 3, 1])
    s = MatrixSet((BoolMatrix.identity(3), shift))
    v = decide_primitive_exact(s)
    assert not v.primitive and v.witness is None
    assert v.explored_states == 3


def test_prime_cycles_two_three():
    v = decide_primitive_exact(prime_cycle_set([2, 3]))
    assert v.primitive and len(v.witness) == 8


def test_prime_cycles_against_depth_first_oracle():
    s = prime_cycle_set([2, 3])
    assert decide_primitive_exact(s).witness == shortest_positive_word(s, 9)


def test_shortest_length_examples():
    assert shortest_positive_length(MatrixSet((BoolMatrix.ones(2),))) == 1
    assert shortest_positive_length(MatrixSet((BoolMatrix.identity(2),))) == INF


def test_closure_examples():
    assert certify_not_primitive_closure(MatrixSet((BoolMatrix.identity(2),))) == {BoolMatrix.identity(2)}
    p = BoolMatrix.from_function([2, 1])
    assert certify_not_primitive_closure(MatrixSet((p,))) == {p, BoolMatrix.identity(2)}
    lower = bm([[1, 0], [1, 1]])
    assert certify_not_primitive_closure(MatrixSet((lower,))) == {lower}


def test_closure_refuses_primitive():
    with pytest.raises(ValueError):
        certify_not_primitive_closure(MatrixSet((BoolMatrix.ones(2),)))


def test_witness_is_minimal_against_enumeration():
    rng = random.Random(17)
    primitive = 0
    for _ in range(120):
        n = rng.randint(1, 4)
        s = random_set(n, rng.randint(1, 3), rng)
        v = decide_primitive_exact(s)
        if v.primitive:
            primitive += 1
            assert v.witness == shortest_positive_word(s, len(v.witness))
        else:
            closure = certify_not_primitive_closure(s)
            assert verify_closure_certificate(s, closure)
    assert primitive > 20


def test_lexicographic_tie_break_small():
    # all words up to length 3 are scanned in order; the first positive one must come back
    rng = random.Random(23)
    for _ in range(60):
        s = random_set(3, 3, rng, density=0.5)
        v = decide_primitive_exact(s)
        if not v.primitive or len(v.witness) > 3:
            continue
        mats = dense(s)
        first = next(w for w in all_words(s.m, 3) if product_of(mats, w).all())
        assert v.witness == first


def test_closure_certificates_are_closed():
    rng = random.Random(29)
    checked = 0
    for _ in range(80):
        s = random_set(rng.randint(1, 4), rng.randint(1, 2), rng, density=0.3)
        if decide_primitive_exact(s).primitive:
            continue
        closure = certify_not_primitive_closure(s)
        assert BoolMatrix.ones(s.n) not in closure
        assert all(p @ a in closure for p in closure for a in s.mats)
        checked += 1
    assert checked > 10


def test_closure_verifier_rejects_tampering():
    p = BoolMatrix.from_function([2, 1])
    s = MatrixSet((p,))
    assert not verify_closure_certificate(s, {p})
    assert not verify_closure_certificate(s, {p, BoolMatrix.identity(2), BoolMatrix.ones(2)})


def test_adding_all_ones_gives_length_one():
    rng = random.Random(31)
    for _ in range(40):
        s = random_set(rng.randint(1, 5), rng.randint(1, 3), rng)
        t = MatrixSet(s.mats + (BoolMatrix.ones(s.n),))
        v = decide_primitive_exact(t)
        assert v.primitive and len(v.witness) == 1


def test_agrees_with_structural_test():
    rng = random.Random(37)
    for _ in range(200):
        s = random_nz_set(rng.randint(1, 6), rng.randint(1, 3), rng)
        assert decide_primitive_exact(s).primitive == decide_primitive_nz(s).primitive


def test_packed_and_scalar_searches_agree():
    rng = random.Random(41)
    for _ in range(120):
        s = random_set(rng.randint(1, 5), rng.randint(1, 3), rng)
        a = decide_primitive_exact(s)
        b = decide_primitive_exact(s, scalar=True)
        assert a == b
        c = decide_primitive_exact(s, prune_dead=False, scalar=True)
        assert (c.primitive, c.witness) == (a.primitive, a.witness)


def test_explored_states_respect_pigeonhole():
    rng = random.Random(43)
    for _ in range(100):
        s = random_set(rng.randint(1, 4), rng.randint(1, 3), rng)
        v = decide_primitive_exact(s)
        assert v.explored_states <= 2 ** (s.n * s.n)


def test_witness_prefixes_never_repeat():
    rng = random.Random(47)
    for _ in range(100):
        s = random_nz_set(rng.randint(2, 5), rng.randint(1, 3), rng)
        v = decide_primitive_exact(s)
        if v.primitive:
            pats = prefix_products(s, v.witness)
            assert len(set(pats)) == len(pats)


def test_state_limit_is_an_error_not_a_verdict():
    s = prime_cycle_set([2, 3])
    assert decide_primitive_exact(s).explored_states == 16
    with pytest.raises(LimitExceeded) as exc:
        decide_primitive_exact(s, ResourceLimits(max_states=5))
    assert "undecided" in str(exc.value)
    with pytest.raises(LimitExceeded):
        decide_primitive_exact(s, ResourceLimits(max_states=5), scalar=True)


def test_depth_limit_is_an_error_not_a_verdict():
    s = prime_cycle_set([2, 3])
    with pytest.raises(LimitExceeded):
        decide_primitive_exact(s, ResourceLimits(max_depth=5))
    assert decide_primitive_exact(s, ResourceLimits(max_depth=8)).primitive


def test_timeout_is_an_error():
    s = prime_cycle_set([3, 5])
    with pytest.raises(LimitExceeded):
        decide_primitive_exact(s, ResourceLimits(timeout=0.0))


def test_larger_dimension_uses_tuple_search():
    n = 9
    shift = BoolMatrix.from_function([i % n + 1 for i in range(1, n + 1)])
    extra = BoolMatrix(n, shift.rows[:-1] + (shift.rows[-1] | 1 << 1,))
    v = decide_primitive_exact(MatrixSet((shift, extra)))
    assert v.primitive and is_positive(word_product(MatrixSet((shift, extra)), v.witness))
