import random

from malcev.intsolve import INFEASIBLE, INT, RATIONAL, row_reduce_int, solve_int_columns


def test_simple_solution():
    # x * (1,0) + y * (1,1) = (3, 2)
    status, coeffs = solve_int_columns([{0: 1}, {0: 1, 1: 1}], {0: 3, 1: 2})
    assert status == INT
    assert coeffs == {0: 1, 1: 2}


def test_infeasible():
    status, _ = solve_int_columns([{0: 1}], {1: 1})
    assert status == INFEASIBLE


def test_rational_only():
    status, _ = solve_int_columns([{0: 2}], {0: 1})
    assert status == RATIONAL


def test_zero_rhs():
    status, coeffs = solve_int_columns([{0: 1}], {})
    assert status == INT and coeffs == {}
    status, _ = solve_int_columns([], {0: 1})
    assert status == INFEASIBLE


def test_negative_and_mixed():
    status, coeffs = solve_int_columns([{0: -2, 1: 1}, {0: 3, 1: -1}], {0: 1, 1: 0})
    assert status == INT
    assert coeffs[0] * -2 + coeffs.get(1, 0) * 3 == 1


def test_random_constructed_systems_resolve():
    rng = random.Random(20)
    for _ in range(100):
        ncols = rng.randrange(1, 7)
        nrows = rng.randrange(1, 7)
        cols = []
        for _ in range(ncols):
            col = {r: rng.randrange(-4, 5) for r in range(nrows)}
            cols.append({k: v for k, v in col.items() if v})
        x = [rng.randrange(-3, 4) for _ in range(ncols)]
        rhs: dict[int, int] = {}
        for j, col in enumerate(cols):
            for r, v in col.items():
                rhs[r] = rhs.get(r, 0) + x[j] * v
        status, coeffs = solve_int_columns(cols, rhs)
        assert status == INT
        check: dict[int, int] = {}
        for j, c in coeffs.items():
            for r, v in cols[j].items():
                check[r] = check.get(r, 0) + c * v
        assert {k: v for k, v in check.items() if v} == {k: v for k, v in rhs.items() if v}


def test_row_reduce_spans_same_lattice():
    rng = random.Random(21)
    for _ in range(50):
        rows = []
        for _ in range(rng.randrange(1, 5)):
            rows.append({k: rng.randrange(-3, 4) for k in range(4) if rng.random() < 0.7})
        reduced = row_reduce_int(rows, lambda k: k)
        # every original row is an integer combination of the reduced rows
        for r in rows:
            r = {k: v for k, v in r.items() if v}
            if not r:
                continue
            status, _ = solve_int_columns(reduced, r)
            assert status == INT
        # and conversely
        for r in reduced:
            status, _ = solve_int_columns([dict(x) for x in rows], r)
            assert status == INT


def test_row_reduce_deterministic_and_signed():
    rows = [{0: -2, 1: 4}, {0: 2, 1: -4}, {1: 3}]
    out1 = row_reduce_int(rows, lambda k: k)
    out2 = row_reduce_int([dict(r) for r in rows], lambda k: k)
    assert out1 == out2
    for r in out1:
        lead = max(r, key=lambda k: k)
        assert r[lead] > 0
