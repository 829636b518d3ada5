"""Graph instances whose metric dimension encodes 3-SAT satisfiability.

Each variable becomes a ten-vertex widget: a six-cycle T - a1 - b1 - F - b2 -
a2 - T carrying one pendant per interior vertex (a3 on a1, a4 on a2, b3 on b1,
b4 on b2).  Any resolving set must pick at least one of the eight interior
vertices, and which row the pick lands in (a-row or b-row) encodes the truth
value.  Each clause becomes a five-vertex widget: a path c1 - c2 - c3 plus two
extra neighbors c4, c5 of c2.  The twins c4/c5 force one pick per clause, and
the pair (c1, c3) is resolved only by interior picks of variables whose
literal satisfies the clause.  Satisfiable formulas therefore need exactly one
pick per widget, unsatisfiable ones need more.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, build_graph


class FormulaError(ValueError):
    """Raised for malformed CNF input."""


@dataclass(frozen=True)
class Formula:
    """A CNF formula with DIMACS-style signed literals."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise FormulaError("formula needs at least one variable")
        for ci, clause in enumerate(self.clauses):
            for lit in clause:
                if lit == 0:
                    raise FormulaError(f"clause {ci + 1} contains literal 0")
                if abs(lit) > self.num_vars:
                    raise FormulaError(
                        f"clause {ci + 1} uses variable {abs(lit)}, "
                        f"but only {self.num_vars} are declared"
                    )

    def is_satisfied_by(self, assignment: dict[int, bool]) -> bool:
        return all(
            any(assignment[abs(lit)] == (lit > 0) for lit in clause)
            for clause in self.clauses
        )


def parse_dimacs_cnf(text: str) -> Formula:
    """Parse DIMACS CNF: a `p cnf <vars> <clauses>` header, `c` comment lines,
    and zero-terminated clauses (which may span lines)."""
    num_vars: int | None = None
    num_clauses: int | None = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise FormulaError(f"line {lineno}: second header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"line {lineno}: header must be 'p cnf <vars> <clauses>'")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormulaError(f"line {lineno}: non-numeric header fields") from None
            continue
        if num_vars is None:
            raise FormulaError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormulaError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        raise FormulaError("last clause is not 0-terminated")
    if num_vars is None:
        raise FormulaError("missing 'p cnf' header")
    if num_clauses is not None and num_clauses != len(clauses):
        raise FormulaError(
            f"header declares {num_clauses} clauses, found {len(clauses)}"
        )
    return Formula(num_vars=num_vars, clauses=tuple(clauses))


@dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    labels: dict[int, str]
    formula: Formula

    def vertex(self, label: str) -> int:
        for v, lab in self.labels.items():
            if lab == label:
                return v
        raise KeyError(label)


# Vertex layout inside one variable widget, in id order.
_VAR_NAMES = ("T", "F", "a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4")
_VAR_EDGES = (
    ("T", "a1"),
    ("T", "a2"),
    ("a1", "b1"),
    ("a2", "b2"),
    ("b1", "F"),
    ("b2", "F"),
    ("a1", "a3"),
    ("a2", "a4"),
    ("b1", "b3"),
    ("b2", "b4"),
)
_CLAUSE_NAMES = ("c1", "c2", "c3", "c4", "c5")
_CLAUSE_EDGES = (("c1", "c2"), ("c2", "c3"), ("c2", "c4"), ("c2", "c5"))

#: Variable-to-clause wiring by literal polarity; a variable not occurring in
#: a clause connects through all four, keeping it neutral for that clause.
_LINKS_POSITIVE = (("T", "c1"), ("F", "c1"), ("F", "c3"))
_LINKS_NEGATIVE = (("T", "c1"), ("F", "c1"), ("T", "c3"))
_LINKS_ABSENT = (("T", "c1"), ("F", "c1"), ("T", "c3"), ("F", "c3"))


def reduce_to_graph(formula: Formula) -> GadgetGraph:
    """Build the hardness instance for a 3-CNF formula.

    Requires at least one clause, and exactly three distinct variables per
    clause.  The resulting graph has 10 vertices per variable plus 5 per
    clause, and its metric dimension is `num_vars + num_clauses` exactly when
    the formula is satisfiable (one more otherwise).
    """
    n_vars, clauses = formula.num_vars, formula.clauses
    if not clauses:
        raise FormulaError("reduction needs at least one clause")
    for ci, clause in enumerate(clauses):
        if len(clause) != 3 or len({abs(lit) for lit in clause}) != 3:
            raise FormulaError(
                f"clause {ci + 1} must use exactly three distinct variables"
            )

    labels: dict[int, str] = {}
    ids: dict[str, int] = {}

    def add(label: str) -> int:
        v = len(labels)
        labels[v] = label
        ids[label] = v
        return v

    for x in range(1, n_vars + 1):
        for name in _VAR_NAMES:
            if name in ("T", "F"):
                add(f"{name}{x}")
            else:
                add(f"{name[0]}{x}^{name[1]}")
    for j in range(1, len(clauses) + 1):
        for name in _CLAUSE_NAMES:
            add(f"c{j}^{name[1]}")

    def var_id(x: int, name: str) -> int:
        if name in ("T", "F"):
            return ids[f"{name}{x}"]
        return ids[f"{name[0]}{x}^{name[1]}"]

    def clause_id(j: int, name: str) -> int:
        return ids[f"c{j}^{name[1]}"]

    edges: list[tuple[int, int]] = []
    for x in range(1, n_vars + 1):
        edges.extend((var_id(x, u), var_id(x, v)) for u, v in _VAR_EDGES)
    for j in range(1, len(clauses) + 1):
        edges.extend((clause_id(j, u), clause_id(j, v)) for u, v in _CLAUSE_EDGES)
    for j, clause in enumerate(clauses, start=1):
        polarity = {abs(lit): lit > 0 for lit in clause}
        for x in range(1, n_vars + 1):
            if x not in polarity:
                links = _LINKS_ABSENT
            elif polarity[x]:
                links = _LINKS_POSITIVE
            else:
                links = _LINKS_NEGATIVE
            edges.extend((var_id(x, u), clause_id(j, v)) for u, v in links)

    graph = build_graph(10 * n_vars + 5 * len(clauses), edges)
    return GadgetGraph(graph=graph, labels=labels, formula=formula)
