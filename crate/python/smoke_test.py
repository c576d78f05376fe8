"""Smoke test for the miura extension module."""

import miura


def main():
    half = miura.Problem("A", 1, weights=[[1], [1]], points=[0, 1])
    y = [["-1/2", 1]]
    assert miura.is_generic(half, y)
    assert miura.is_fertile(half, y)
    assert miura.fertility(half, y) == [["0", "0", "1"]]
    assert miura.bethe_residuals(half, [["1/2"]]) == ["0"]
    assert miura.descend(half, y, 1, "-1/2") == [["1/4", "-1/2", "1"]]

    sol = miura.solve(half, y)
    assert (sol.rows, sol.cols) == (2, 2)
    assert all(k == "(1/2)" for row in sol.entries for e in row for k in e)

    trivial = miura.Problem("A", 1)
    sol = miura.solve(trivial, [[1]])
    assert sol.entries[1][0] == {"(0)": "-x"}

    for lie_type, rank, cells in [("A", 1, 2), ("A", 2, 6), ("B", 2, 8), ("G", 2, 12)]:
        p = miura.Problem(lie_type, rank)
        table = miura.populate(p, [[1]] * rank)
        assert len(table) == cells, (lie_type, rank, len(table))
        assert all(c.length == len(c.word) for c in table)

    b2 = miura.Problem("B", 2)
    assert miura.solve(b2, [[1], [1]]).builder == "bc"
    vec = miura.solve(b2, [[1], [1]], path=[1, 2, 1], params=["0", "2", "1:-1"])
    assert (vec.rows, vec.cols) == (4, 1)
    assert len(miura.reproduce(b2, [[1], [1]], [1, 2])) == 2

    assert miura.shifted_action("A", 1, [1], [0]) == ["-2"]

    for bad in (lambda: miura.Problem("Q", 2), lambda: miura.Problem("A", 1, points=["1//2"], weights=[[1]])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        miura.solve(miura.Problem("G", 2), [[1], [1]])
    except ValueError as e:
        assert "path" in str(e)
    else:
        raise AssertionError("expected ValueError")
    try:
        miura.descend(miura.Problem("A", 2), [["0", "1"], ["0", "1"]], 1)
    except miura.MiuraError:
        pass
    else:
        raise AssertionError("expected MiuraError")
    print("smoke test passed")


if __name__ == "__main__":
    main()
