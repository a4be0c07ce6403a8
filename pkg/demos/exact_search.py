"""
Exact primitivity by semigroup search
=====================================

A set of nonnegative matrices is primitive when some product of its members
has every entry positive.  Only the zero pattern matters, so we work with
boolean patterns and search products breadth first.
"""
import numpy as np

from primset import MatrixSet, decide_primitive_exact, certify_not_primitive_closure
from primset.core import prefix_products, word_product

# Two numeric matrices.  Values are thrown away, only entries > 0 survive.
a = np.array([[0.0, 2.5, 0.0], [0.0, 0.0, 1.0], [0.3, 0.0, 0.0]])
b = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 4.0], [1.0, 0.0, 7.0]])
s = MatrixSet.from_arrays([a, b])

v = decide_primitive_exact(s)
print("primitive:", v.primitive)
print("shortest witness:", v.witness, "length", v.length)
print("patterns explored:", v.explored_states)
print(word_product(s, v.witness).to_array())

# Along a shortest witness no prefix pattern repeats; that is why the
# number of distinct patterns bounds the witness length.
for k, p in enumerate(prefix_products(s, v.witness), 1):
    print(k, p.rows)

# A set of permutations is never primitive.  The certificate is the closed
# set of reachable patterns: anyone can check it is closed and lacks all-ones.
perms = MatrixSet.from_arrays([np.eye(3)[[1, 2, 0]], np.eye(3)[[1, 0, 2]]])
closure = certify_not_primitive_closure(perms)
print("closure of the permutation pair has", len(closure), "patterns")
