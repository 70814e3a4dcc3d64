"""Smoke test for the epgap_py extension module.

Build first:  pip install --no-build-isolation ./crates/python
"""

import epgap_py as ep


def main():
    xi = ep.Graph.generate("xi", r=4)
    assert (xi.n, xi.m) == (12, 14), xi
    w, td = ep.treewidth(xi)
    assert w == 2, w
    assert len(td["bags"]) >= 1

    k6 = ep.Graph.generate("complete", n=6)
    k3 = ep.Graph.generate("complete", n=3)
    k5 = ep.Graph.generate("complete", n=5)
    count, models = ep.pack(k6, k3)
    assert count == 2 and len(models) == 2
    used = [v for model in models for branch in model for v in branch]
    assert len(used) == len(set(used))
    size, hitting = ep.cover(k5, k3)
    assert size == 3 and len(hitting) == 3

    c5 = ep.Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert ep.Graph.from_graph6(c5.to_graph6()) == c5
    assert ep.find_minor(c5, k3) is not None
    assert ep.find_minor(ep.Graph.generate("path", n=6), k3) is None

    cert = ep.epgap(k6, k3, 2)
    assert cert["verdict"]["valid"], cert["verdict"]
    assert cert["type"] == "packing"

    assert ep.bound_th2(1, 2) == 67
    assert ep.bound_th2(2, 2) == 259
    value, _ = ep.bound_th1(1, 6)
    assert value == 3019825151
    assert ep.kostochka_threshold(2) == 1296.0

    reports = ep.verify(seed=7, trials=20, lemmas=["stiebitz", "erdos_szekeres"])
    assert all(r["failures"] == 0 for r in reports), reports

    try:
        ep.Graph(3, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("self loop accepted")

    try:
        ep.treewidth(ep.Graph.generate("complete", n=80))
    except ep.SizeLimitError:
        pass
    else:
        raise AssertionError("size limit not enforced")

    print("smoke test passed")


if __name__ == "__main__":
    main()
