"""
Synchronizing automata and positive products
============================================

An automaton here is a set of 0/1 matrices with a single 1 in every row.
A reset word sends every state to one state.  Positive products of a
primitive set contain such automata, which links reset-word bounds to
bounds on positive products.
"""
from primset import (cerny_automaton, construct_positive_product, decide_primitive_exact,
                     extract_automaton, is_synchronizing, positive_product_bound,
                     shortest_sync_word)
from primset.automata import cubic_product_bound
from primset.core import format_word
from primset.generators import extremal_primitive_set

for n in range(2, 8):
    res = shortest_sync_word(cerny_automaton(n))
    print(f"cerny n={n}: reset word length {len(res.word)} = (n-1)^2 = {(n - 1) ** 2}")

s = extremal_primitive_set(4)
w = decide_primitive_exact(s).witness
auto, word = extract_automaton(s, w)
print("extracted", auto.m, "letters, synchronizing:", is_synchronizing(auto))

# B1 C B2: a positive column, a short connector, a positive row.
built = construct_positive_product(s)
print("constructed word", format_word(built), "length", len(built), "vs shortest", len(w))
print("bound 2f(n)+n-1 =", positive_product_bound(4), " cubic =", cubic_product_bound(4))
