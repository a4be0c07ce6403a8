"""Instance families: 3-SAT gadgets, coprime-cycle sets and the extremal pair.

Gadget node order (1-based): ``u`` first, then for each clause ``i`` in turn
``u_1^i .. u_n^i``, ``l_2^i .. l_n^i``, ``f^i``, ``s^i``.  ``f^i`` doubles as
``u_{n+1}^i`` and ``s^i`` as ``l_{n+1}^i``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import BoolMatrix, MatrixSet, Word
from .semigroup import ResourceLimits, decide_primitive_exact


class DimacsError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} outside +-1..{self.num_vars}")

    @property
    def K(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[int]) -> bool:
        """``assignment[j-1]`` is the 0/1 value of ``x_j``."""
        return all(clause_satisfied(c, assignment) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.K}"]
        lines += [" ".join(str(x) for x in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def clause_satisfied(clause: Sequence[int], assignment: Sequence[int]) -> bool:
    return any((assignment[abs(lit) - 1] == 1) == (lit > 0) for lit in clause)


def satisfying_assignments(f: CnfFormula):
    """Brute force over all ``2**n`` assignments, in lexicographic order."""
    for bits in itertools.product((0, 1), repeat=f.num_vars):
        if f.satisfied_by(bits):
            yield bits


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF restricted to clauses of exactly three literals."""
    header = None
    clauses = []
    current: list[int] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise DimacsError("duplicate header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                nv, nc = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if nv < 1 or nc < 0:
                raise DimacsError(f"bad header counts {nv} {nc}", lineno)
            header = (nv, nc)
            continue
        if header is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if len(current) != 3:
                    raise DimacsError(f"clause width {len(current)}, expected 3", lineno)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > header[0]:
                raise DimacsError(f"variable {abs(lit)} out of range 1..{header[0]}", lineno)
            current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is not terminated by 0", lineno)
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


@dataclass(frozen=True)
class GadgetLayout:
    """Bijection between gadget node names and 1-based indices."""

    num_vars: int
    num_clauses: int

    @property
    def size(self) -> int:
        return 1 + self.num_clauses * (2 * self.num_vars + 1)

    def u(self) -> int:
        return 1

    def _base(self, i: int) -> int:
        if not 1 <= i <= self.num_clauses:
            raise IndexError(f"clause {i} outside 1..{self.num_clauses}")
        return 1 + (i - 1) * (2 * self.num_vars + 1)

    def u_node(self, i: int, j: int) -> int:
        """``u_j^i`` for ``j`` in ``1..n+1`` (``u_{n+1}^i`` is ``f^i``)."""
        n = self.num_vars
        if j == n + 1:
            return self.f(i)
        if not 1 <= j <= n:
            raise IndexError(j)
        return self._base(i) + j

    def l_node(self, i: int, j: int) -> int:
        """``l_j^i`` for ``j`` in ``2..n+1`` (``l_{n+1}^i`` is ``s^i``)."""
        n = self.num_vars
        if j == n + 1:
            return self.s(i)
        if not 2 <= j <= n:
            raise IndexError(j)
        return self._base(i) + n + (j - 1)

    def f(self, i: int) -> int:
        return self._base(i) + 2 * self.num_vars

    def s(self, i: int) -> int:
        return self._base(i) + 2 * self.num_vars + 1

    def clause_nodes(self, i: int) -> list[int]:
        b = self._base(i)
        return list(range(b + 1, b + 2 * self.num_vars + 2))

    def names(self) -> list[str]:
        out = ["u"]
        for i in range(1, self.num_clauses + 1):
            out += [f"u_{j}^{i}" for j in range(1, self.num_vars + 1)]
            out += [f"l_{j}^{i}" for j in range(2, self.num_vars + 1)]
            out += [f"f^{i}", f"s^{i}"]
        return out

    def index(self, name: str) -> int:
        return self.names().index(name) + 1

    def name(self, idx: int) -> str:
        return self.names()[idx - 1]


def sat_gadgets(f: CnfFormula) -> tuple[MatrixSet, GadgetLayout]:
    """Adjacency patterns of the three gadget graphs of ``f``.

    Letter 1 encodes ``x_j = 1`` steps, letter 2 ``x_j = 0`` steps and letter 3
    resets from the failure/success nodes.
    """
    n, K = f.num_vars, f.K
    lay = GadgetLayout(n, K)
    g1: list[tuple[int, int]] = []
    g2: list[tuple[int, int]] = []
    g3: list[tuple[int, int]] = []
    for i, clause in enumerate(f.clauses, 1):
        for j in range(1, n + 1):
            by_one = j in clause
            by_zero = -j in clause
            src = lay.u_node(i, j)
            g1.append((src, lay.l_node(i, j + 1) if by_one else lay.u_node(i, j + 1)))
            g2.append((src, lay.l_node(i, j + 1) if by_zero else lay.u_node(i, j + 1)))
        shared = [(lay.l_node(i, j), lay.l_node(i, j + 1)) for j in range(2, n + 1)]
        shared += [(lay.f(i), lay.f(i)), (lay.s(i), lay.f(i)), (lay.u(), lay.u_node(i, 1))]
        g1 += shared
        g2 += shared
        g3 += [(lay.f(i), lay.u()), (lay.s(i), lay.u())]
        g3 += [(lay.s(i), v) for v in lay.clause_nodes(i)]
    size = lay.size
    mats = tuple(BoolMatrix.from_edges(size, e) for e in (g1, g2, g3))
    return MatrixSet(mats), lay


def sat_witness_sequence(f: CnfFormula, assignment: Sequence[int]) -> Word:
    """Positive word for the gadget set built from a satisfying assignment.

    ``G1`` ``n+1`` times, ``G3``, ``G1``, then ``G1``/``G2`` per variable value,
    then ``G3``: length ``2n + 4``.
    """
    assignment = tuple(int(x) for x in assignment)
    if len(assignment) != f.num_vars or any(x not in (0, 1) for x in assignment):
        raise ValueError(f"assignment must be {f.num_vars} values in {{0, 1}}")
    if not f.satisfied_by(assignment):
        raise ValueError(f"assignment {assignment} does not satisfy the formula")
    n = f.num_vars
    return (1,) * (n + 1) + (3, 1) + tuple(1 if x else 2 for x in assignment) + (3,)


@dataclass(frozen=True)
class EquivalenceReport:
    satisfiable: bool
    primitive: bool
    assignment: Optional[tuple[int, ...]]
    witness: Optional[Word]
    explored_states: int

    @property
    def agree(self) -> bool:
        return self.satisfiable == self.primitive


def sat_equivalence_check(f: CnfFormula, limits: Optional[ResourceLimits] = None) -> EquivalenceReport:
    """Brute-force satisfiability next to exact primitivity of the gadget set."""
    assignment = next(satisfying_assignments(f), None)
    s, _ = sat_gadgets(f)
    verdict = decide_primitive_exact(s, limits)
    return EquivalenceReport(assignment is not None, verdict.primitive, assignment,
                             verdict.witness, verdict.explored_states)


def _check_coprime(lengths: Sequence[int]) -> tuple[int, ...]:
    lengths = tuple(int(x) for x in lengths)
    if not lengths:
        raise ValueError("need at least one cycle")
    if any(x < 2 for x in lengths):
        raise ValueError("cycle lengths must be at least 2")
    for a, b in itertools.combinations(lengths, 2):
        if math.gcd(a, b) != 1:
            raise ValueError(f"cycle lengths {a} and {b} are not coprime")
    return lengths


def prime_cycle_set(cycle_lengths: Sequence[int]) -> MatrixSet:
    """Four graphs on a hub ``u`` (node 1) plus disjoint cycles of coprime lengths.

    Each cycle occupies a contiguous index range; its first node is the lowest
    index and its last node the highest.

    * letter 1: every cycle, first -> ... -> last -> first
    * letter 2: last node of each cycle -> every node of its cycle and -> u
    * letter 3: every node -> u
    * letter 4: u -> first node of each cycle
    """
    lengths = _check_coprime(cycle_lengths)
    n = 1 + sum(lengths)
    g1, g2, g4 = [], [], []
    start = 2
    for p in lengths:
        nodes = list(range(start, start + p))
        first, last = nodes[0], nodes[-1]
        g1 += [(nodes[t], nodes[(t + 1) % p]) for t in range(p)]
        g2 += [(last, v) for v in nodes] + [(last, 1)]
        g4.append((1, first))
        start += p
    g3 = [(v, 1) for v in range(1, n + 1)]
    return MatrixSet(tuple(BoolMatrix.from_edges(n, e) for e in (g1, g2, g3, g4)))


def prime_cycle_predicted_length(cycle_lengths: Sequence[int]) -> int:
    """``2 + prod(lengths)``: letters 3, 4, then letter 1 ``prod - 1`` times, then letter 2."""
    return 2 + math.prod(_check_coprime(cycle_lengths))


def prime_cycle_witness(cycle_lengths: Sequence[int]) -> Word:
    lengths = _check_coprime(cycle_lengths)
    return (3, 4) + (1,) * (math.prod(lengths) - 1) + (2,)


def extremal_primitive_set(n: int) -> MatrixSet:
    """Two-matrix primitive set with no positive product shorter than ``n(n-1)``.

    ``A_a`` is the identity plus entry ``(n, 1)``; ``A_b`` is the cyclic
    permutation with entries ``(j, j+1 mod n)``.  Right-multiplying a row
    vector by ``A_b`` shifts it right, and ``A_a`` copies the last entry into
    the first.
    """
    if n < 2:
        raise ValueError("extremal_primitive_set needs n >= 2")
    a = BoolMatrix.from_edges(n, [(i, i) for i in range(1, n + 1)] + [(n, 1)])
    b = BoolMatrix.from_edges(n, [(j, j % n + 1) for j in range(1, n + 1)])
    return MatrixSet((a, b))
