import itertools

import pytest

from mdim.gadgets import (
    Formula,
    FormulaError,
    parse_dimacs_cnf,
    reduce_to_graph,
)
from mdim.graph import all_pairs_distances
from mdim.resolving import pair_masks


def test_formula_validation():
    f = Formula(3, ((1, -2, 3),))
    assert f.num_vars == 3
    with pytest.raises(FormulaError):
        Formula(0, ())
    with pytest.raises(FormulaError):
        Formula(2, ((1, 0, 2),))
    with pytest.raises(FormulaError):
        Formula(2, ((1, 3, -2),))


def test_formula_evaluation():
    f = Formula(3, ((1, -2, 3), (-1, 2, 3)))
    assert f.is_satisfied_by({1: True, 2: True, 3: False})
    assert not f.is_satisfied_by({1: True, 2: False, 3: False})
    assert f.is_satisfied_by({1: False, 2: False, 3: True})


def test_parse_dimacs():
    f = parse_dimacs_cnf(
        """c a comment
p cnf 3 2
1 -2 3 0
-1 2
3 0
"""
    )
    assert f.num_vars == 3
    assert f.clauses == ((1, -2, 3), (-1, 2, 3))


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("1 2 3 0\n", "before 'p cnf' header"),
        ("p cnf 3\n1 2 3 0\n", "header must be"),
        ("p dnf 3 1\n1 2 3 0\n", "header must be"),
        ("p cnf 3 1\np cnf 3 1\n", "second header"),
        ("p cnf 3 1\n1 x 3 0\n", "bad literal"),
        ("p cnf 3 1\n1 2 3\n", "not 0-terminated"),
        ("p cnf 3 2\n1 2 3 0\n", "declares 2 clauses"),
        ("p cnf 2 1\n1 2 3 0\n", "uses variable 3"),
        ("", "missing 'p cnf' header"),
    ],
)
def test_parse_dimacs_errors(text, fragment):
    with pytest.raises(FormulaError, match=fragment):
        parse_dimacs_cnf(text)


def test_reduction_validation():
    with pytest.raises(FormulaError):
        reduce_to_graph(Formula(3, ()))  # no clauses
    with pytest.raises(FormulaError):
        reduce_to_graph(Formula(3, ((1, 2),)))  # too short
    with pytest.raises(FormulaError):
        reduce_to_graph(Formula(3, ((1, 1, 2),)))  # repeated variable


def test_reduction_size_arithmetic():
    gg = reduce_to_graph(Formula(3, ((1, 2, 3),)))
    g = gg.graph
    # ten vertices per variable, five per clause
    assert g.n == 35
    # ten widget edges per variable, four per clause, three links per literal
    assert g.edge_count == 30 + 4 + 9
    assert len(gg.labels) == g.n
    assert len(set(gg.labels.values())) == g.n  # labels are unique
    assert gg.vertex("T1") != gg.vertex("F1")
    with pytest.raises(KeyError):
        gg.vertex("nope")

    two = reduce_to_graph(Formula(4, ((1, 2, 3), (2, 3, 4))))
    assert two.graph.n == 4 * 10 + 2 * 5


def test_polarity_wiring():
    gg = reduce_to_graph(Formula(4, ((1, -2, 3),)))
    g = gg.graph
    V = gg.vertex
    c1, c3 = V("c1^1"), V("c1^3")
    # positive literal: both poles touch c1, only F reaches c3
    assert g.has_edge(V("T1"), c1) and g.has_edge(V("F1"), c1)
    assert g.has_edge(V("F1"), c3) and not g.has_edge(V("T1"), c3)
    # negative literal: mirrored
    assert g.has_edge(V("T2"), c1) and g.has_edge(V("F2"), c1)
    assert g.has_edge(V("T2"), c3) and not g.has_edge(V("F2"), c3)
    # absent variable: fully linked, hence neutral
    for pole in ("T4", "F4"):
        assert g.has_edge(V(pole), c1) and g.has_edge(V(pole), c3)


def test_variable_widget_shape():
    gg = reduce_to_graph(Formula(3, ((1, 2, 3),)))
    g, V = gg.graph, gg.vertex
    for x in (1, 2, 3):
        # the six-cycle
        ring = [f"T{x}", f"a{x}^1", f"b{x}^1", f"F{x}", f"b{x}^2", f"a{x}^2"]
        for u, w in zip(ring, ring[1:] + ring[:1]):
            assert g.has_edge(V(u), V(w)), (u, w)
        # one pendant per interior ring vertex
        for stem, tip in ((f"a{x}^1", f"a{x}^3"), (f"a{x}^2", f"a{x}^4"),
                          (f"b{x}^1", f"b{x}^3"), (f"b{x}^2", f"b{x}^4")):
            assert g.has_edge(V(stem), V(tip))
            assert g.degree(V(tip)) == 1


def test_forced_pairs():
    gg = reduce_to_graph(Formula(3, ((1, -2, 3),)))
    g = gg.graph
    dm = all_pairs_distances(g)
    ids = {lab: v for v, lab in gg.labels.items()}

    def resolvers(u_lab, v_lab):
        u, v = ids[u_lab], ids[v_lab]
        return {
            gg.labels[w] for w in range(g.n) if dm.dist[u, w] != dm.dist[v, w]
        }

    for x in (1, 2, 3):
        interiors = {
            f"a{x}^1", f"a{x}^2", f"a{x}^3", f"a{x}^4",
            f"b{x}^1", f"b{x}^2", f"b{x}^3", f"b{x}^4",
        }
        # the widget's own interior pairs can only be told apart from inside,
        # which is what forces one pick per variable
        assert resolvers(f"a{x}^1", f"a{x}^2") == interiors
        assert resolvers(f"b{x}^1", f"b{x}^2") == interiors
    # clause twins force one pick per clause
    assert resolvers("c1^4", "c1^5") == {"c1^4", "c1^5"}
    # the clause's long pair listens exactly to its satisfying rows:
    # rows a (true) for the positive literals 1 and 3, row b (false) for the
    # negated literal 2, the matching poles, and the pair itself
    want = {"c1^1", "c1^3", "T1", "T3", "F2"}
    for q in (1, 2, 3, 4):
        want |= {f"a1^{q}", f"a3^{q}", f"b2^{q}"}
    assert resolvers("c1^1", "c1^3") == want


def test_pendants_substitute_for_their_stem():
    gg = reduce_to_graph(Formula(3, ((1, 2, 3),)))
    g = gg.graph
    dm = all_pairs_distances(g)
    a1, a3 = gg.vertex("a1^1"), gg.vertex("a1^3")
    assert all(
        dm.dist[a3, z] == 1 + dm.dist[a1, z] for z in range(g.n) if z != a3
    )


def exhaustive_dimension(g, upto):
    """Mask-scan dimension; the gadget graphs are too big for the guarded oracle."""
    dm = all_pairs_distances(g)
    masks, full = pair_masks(dm.dist)
    for size in range(1, upto + 1):
        for combo in itertools.combinations(range(g.n), size):
            acc = 0
            for v in combo:
                acc |= masks[v]
            if acc == full:
                return size, combo
    return None, None


def test_satisfiable_formula_hits_target_dimension():
    formula = Formula(3, ((1, -2, 3),))
    gg = reduce_to_graph(formula)
    target = formula.num_vars + len(formula.clauses)
    size, witness = exhaustive_dimension(gg.graph, target)
    assert size == target
    # decode the witness: the interior picks encode a satisfying assignment
    names = {gg.labels[v] for v in witness}
    rows = {}
    for x in (1, 2, 3):
        if any(f"a{x}^{q}" in names for q in (1, 2, 3, 4)):
            rows[x] = True
        elif any(f"b{x}^{q}" in names for q in (1, 2, 3, 4)):
            rows[x] = False
    if len(rows) == 3:
        assert formula.is_satisfied_by(rows)
