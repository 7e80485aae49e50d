"""Smoke test for the pygrowth extension.

Build first:  maturin develop -m crates/py/Cargo.toml --release
"""

import json
import math
from fractions import Fraction

import pygrowth


def main():
    g = pygrowth.lattice_graph(2, radius=40)
    p = g.profile(0, 40)
    assert p.balls[:4] == [1, 5, 13, 25]
    assert all(p.ball(n) == 2 * n * n + 2 * n + 1 for n in range(41))

    h = pygrowth.heisenberg_graph(5)
    assert h.profile(0, 5).balls[:3] == [1, 5, 17]

    shell = pygrowth.shell_alpha([p], n_max=20)
    assert shell["alpha"] > 0
    assert math.isclose(shell["delta"], math.log2(1 + float(shell["alpha"])))
    alpha = shell["alpha"]
    assert pygrowth.lemma_recursion_audit(p, 20, (alpha.numerator, alpha.denominator))
    bound = pygrowth.verify_sphere_bound([p], shell["delta"], list(range(1, 21)))
    assert bound["pass"], bound

    chain = pygrowth.tree_chain(2, 3, 8)
    roots = [chain.basepoint(f"r_{k}") for k in range(1, 9)]
    profiles = [chain.profile(r, 258) for r in roots]
    cd = pygrowth.doubling_constant(profiles, 129)
    assert isinstance(cd, Fraction)
    for q in profiles:
        picks = pygrowth.dyadic_subsequence(q, (cd.numerator, cd.denominator), 7)
        assert all(ok for _, ok in picks)

    net = chain.separated_net(roots[3], 2, 8, 3)
    assert net == sorted(net) and net

    sizes = pygrowth.product_powers([[0, 0], [1, 0], [0, 1], [-1, -1]], 20)
    ratios = pygrowth.folner_ratios(sizes)
    assert ratios[-1] < ratios[0]

    values = pygrowth.ergodic_trace("cos-x", (0.1, 0.2), 200)
    assert abs(values[-1]) < 0.05

    out = pygrowth.reproduce("counterexample-tree")
    summary = json.loads(out["summary"])
    assert out["pass"] and summary["pass"]
    assert out["artifacts"]["annulus.csv"].startswith("# config-sha256=")

    cfg = json.dumps({"space": {"family": "lattice", "rank": 1}, "radius": 8, "radios": 2})
    try:
        pygrowth.run_experiment(cfg)
    except ValueError as e:
        assert "radios" in str(e)
    else:
        raise AssertionError("unknown key accepted")

    print("smoke test ok:", len(pygrowth.recipe_names()), "recipes,", f"alpha={alpha}")


if __name__ == "__main__":
    main()
