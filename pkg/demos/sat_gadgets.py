"""
Hardness: 3-SAT as primitivity
==============================

Each CNF formula becomes three graphs.  The formula is satisfiable exactly
when the three adjacency matrices form a primitive set, and a satisfying
assignment spells out a positive product directly.
"""
from primset import parse_dimacs, sat_equivalence_check, sat_gadgets, sat_witness_sequence
from primset.core import is_positive, word_product

f = parse_dimacs("""c two clauses over three variables
p cnf 3 2
1 2 3 0
-1 -2 -3 0
""")
s, layout = sat_gadgets(f)
print(s.n, "nodes:", " ".join(layout.names()))

w = sat_witness_sequence(f, (0, 0, 1))
print("word", w, "positive:", is_positive(word_product(s, w)))

report = sat_equivalence_check(f)
print("satisfiable", report.satisfiable, "primitive", report.primitive,
      "shortest", report.witness)

unsat = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
print("unsatisfiable formula gives primitive =", sat_equivalence_check(unsat).primitive)
