import random

from aigkit.sat import CnfFormula, check_model, sat_solve


def brute_force_sat(clauses, n_vars):
    """Exhaustive verdict via bit-parallel evaluation over all assignments."""
    size = 1 << n_vars
    full = (1 << size) - 1
    var_pat = {}
    for i in range(n_vars):
        block = (1 << (1 << i)) - 1
        period = 1 << (i + 1)
        word = 0
        for base in range(1 << i, size, period):
            word |= block << base
        var_pat[i + 1] = word
    sat_word = full
    for c in clauses:
        cw = 0
        for l in c:
            p = var_pat[abs(l)]
            cw |= p if l > 0 else p ^ full
        sat_word &= cw
        if sat_word == 0:
            return False
    return sat_word != 0


def test_unit_propagation_forces_assignment():
    res = sat_solve([[1, 2], [-1]])
    assert res.status == "sat"
    assert res.model[1] is False
    assert res.model[2] is True


def test_contradictory_units():
    assert sat_solve([[1], [-1]]).status == "unsat"


def test_empty_formula_is_sat():
    assert sat_solve([], n_vars=0).status == "sat"


def test_empty_clause_is_unsat():
    assert sat_solve([[1], []]).status == "unsat"


def test_pigeonhole_3_into_2_unsat():
    # vars p[i][j]: pigeon i in hole j
    def v(i, j):
        return i * 2 + j + 1

    clauses = []
    for i in range(3):
        clauses.append([v(i, 0), v(i, 1)])
    for j in range(2):
        for a in range(3):
            for b in range(a + 1, 3):
                clauses.append([-v(a, j), -v(b, j)])
    assert sat_solve(clauses).status == "unsat"


def test_random_3cnf_matches_brute_force():
    rng = random.Random(42)
    for trial in range(300):
        n = rng.randrange(4, 13)
        m = int(n * rng.uniform(2.0, 5.5))
        clauses = []
        for _ in range(m):
            vs = rng.sample(range(1, n + 1), 3)
            clauses.append([v if rng.random() < 0.5 else -v for v in vs])
        want = brute_force_sat(clauses, n)
        res = sat_solve(clauses, n_vars=n)
        assert res.status == ("sat" if want else "unsat"), f"trial {trial}"
        if res.status == "sat":
            assert check_model(clauses, res.model)


def test_unknown_on_conflict_limit():
    # a hard-ish pigeonhole with a tiny conflict budget
    def v(i, j):
        return i * 6 + j + 1

    clauses = []
    for i in range(7):
        clauses.append([v(i, j) for j in range(6)])
    for j in range(6):
        for a in range(7):
            for b in range(a + 1, 7):
                clauses.append([-v(a, j), -v(b, j)])
    res = sat_solve(clauses, max_conflicts=5)
    assert res.status == "unknown"


def test_cnf_formula_dimacs():
    f = CnfFormula()
    x = f.new_var()
    y = f.new_var()
    f.add_clause([x, -y])
    f.add_clause([-x])
    text = f.to_dimacs()
    assert text.startswith("p cnf 2 2\n")
    assert "1 -2 0" in text
