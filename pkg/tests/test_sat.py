import itertools
import os
import random
import stat
import sys

import pytest

from ocalearn import (CnfInstance, SolverConfig, SolverError, sat_solve,
                      solve_builtin)


def test_single_positive_unit():
    cnf = CnfInstance()
    x1 = cnf.new_var(("x", 1))
    cnf.add(x1)
    assert sat_solve(cnf) == {x1: True}


def test_contradictory_units():
    cnf = CnfInstance()
    x1 = cnf.new_var(("x", 1))
    cnf.add(x1)
    cnf.add(-x1)
    assert sat_solve(cnf) is None


def test_empty_clause_list_is_satisfiable():
    assert sat_solve(CnfInstance()) == {}


def test_dimacs_format():
    cnf = CnfInstance()
    a = cnf.new_var(("a",))
    b = cnf.new_var(("b",))
    cnf.add(a, -b)
    cnf.add(b)
    assert cnf.to_dimacs() == "p cnf 2 2\n1 -2 0\n2 0\n"


def _brute(num_vars, clauses):
    for bits in itertools.product((False, True), repeat=num_vars):
        if all(any((lit > 0) == bits[abs(lit) - 1] for lit in clause)
               for clause in clauses):
            return True
    return False


def test_builtin_agrees_with_enumeration():
    rng = random.Random(11)
    for _ in range(800):
        num_vars = rng.randrange(1, 10)
        clauses = []
        for _ in range(rng.randrange(0, 30)):
            width = rng.randrange(1, 4)
            clauses.append(tuple(rng.choice((-1, 1)) * rng.randrange(1, num_vars + 1)
                                 for _ in range(width)))
        model = solve_builtin(num_vars, clauses)
        assert (model is not None) == _brute(num_vars, clauses)
        if model is not None:
            assert all(any((lit > 0) == model[abs(lit)] for lit in clause)
                       for clause in clauses)


def test_builtin_handles_pigeonhole_unsat():
    n = 5
    clauses = []
    var = lambda p, h: p * n + h + 1
    for p in range(n + 1):
        clauses.append(tuple(var(p, h) for h in range(n)))
    for h in range(n):
        for p1 in range(n + 1):
            for p2 in range(p1 + 1, n + 1):
                clauses.append((-var(p1, h), -var(p2, h)))
    assert solve_builtin((n + 1) * n, clauses) is None


STUB = """#!{python}
import sys
sys.path.insert(0, {srcdir!r})
from ocalearn.sat import solve_builtin

clauses = []
num_vars = 0
with open(sys.argv[1]) as handle:
    for line in handle:
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p cnf"):
            num_vars = int(line.split()[2])
            continue
        lits = [int(tok) for tok in line.split()]
        assert lits[-1] == 0
        clauses.append(tuple(lits[:-1]))
model = solve_builtin(num_vars, clauses)
if model is None:
    print("s UNSATISFIABLE")
else:
    print("s SATISFIABLE")
    lits = " ".join(str(v if model[v] else -v) for v in sorted(model))
    print("v " + lits + " 0")
"""


@pytest.fixture
def external_solver(tmp_path):
    srcdir = os.path.join(os.path.dirname(os.path.dirname(__file__)), "src")
    path = tmp_path / "stubsolver"
    path.write_text(STUB.format(python=sys.executable, srcdir=srcdir))
    path.chmod(path.stat().st_mode | stat.S_IXUSR)
    return str(path)


def test_external_backend_agreement(external_solver):
    rng = random.Random(5)
    config = SolverConfig(backend=f"external:{external_solver}", time_limit_s=60)
    for _ in range(25):
        cnf = CnfInstance()
        num_vars = rng.randrange(2, 12)
        for v in range(num_vars):
            cnf.new_var(("x", v))
        for _ in range(rng.randrange(1, 40)):
            width = rng.randrange(1, 4)
            cnf.add(*(rng.choice((-1, 1)) * rng.randrange(1, num_vars + 1)
                      for _ in range(width)))
        external = sat_solve(cnf, config)
        builtin = sat_solve(cnf)
        assert (external is None) == (builtin is None)
        if external is not None:
            assert all(any((lit > 0) == external[abs(lit)] for lit in clause)
                       for clause in cnf.clauses)


def test_external_backend_agrees_on_identification_instances(external_solver):
    # instances produced by the DFA-identification encoder, up to a few
    # thousand clauses
    from ocalearn import ObservationTable, SimulatedTeacher, build_samples
    from ocalearn.minsepdfa import build_apta, encode_size_n
    from conftest import make_anbna

    machine = make_anbna()
    teacher = SimulatedTeacher(machine)
    table = ObservationTable(machine.alphabet)
    for p in ("a", "ab", "aba", "b", "aa"):
        table.add_prefix(p)
    table.add_suffix("a")
    table.fill(teacher)
    apta = build_apta(build_samples(table))
    config = SolverConfig(backend=f"external:{external_solver}", time_limit_s=120)
    for n in range(1, 6):
        cnf = encode_size_n(apta, n)
        assert len(cnf.clauses) <= 5000
        external = sat_solve(cnf, config)
        builtin = sat_solve(cnf)
        assert (external is None) == (builtin is None)


def test_external_backend_missing_executable():
    cnf = CnfInstance()
    cnf.add(cnf.new_var(("x",)))
    with pytest.raises(SolverError):
        sat_solve(cnf, SolverConfig(backend="external:/nonexistent/solver"))


def test_backend_selector_validation():
    with pytest.raises(Exception):
        SolverConfig(backend="magic").external_path()
    assert SolverConfig().external_path() is None
