"""
Sets whose positive products are long
=====================================

A hub plus disjoint cycles of coprime lengths forces any positive product
to wind around all cycles at once, so its length grows like the product of
the cycle lengths.
"""
from primset import prime_cycle_predicted_length, prime_cycle_set, shortest_positive_length

for lengths in ([2], [3], [2, 3], [3, 4], [3, 5], [2, 3, 5]):
    s = prime_cycle_set(lengths)
    print(lengths, "n =", s.n, "predicted", prime_cycle_predicted_length(lengths),
          "exact", shortest_positive_length(s))
