#!/usr/bin/env python3
"""Smoke test for the probmetric Python extension.

Build and run from the repository root:

    cargo build -p probmetric-python --release
    mkdir -p python/_build
    cp target/release/libprobmetric.so python/_build/probmetric.so
    PYTHONPATH=python/_build python3 python/smoke_test.py
"""

import json

import probmetric as pm


def main() -> None:
    print(f"probmetric {pm.__version__}")

    # a two-point space at distance 1
    space = pm.Space(["a", "b"], [["0", "1"], ["1", "0"]])
    assert len(space) == 2
    assert space.dist(0, 1) == "1"
    assert space.index_of("b") == 1

    # the metric axioms are enforced at construction
    try:
        pm.Space(["a", "b", "c"], [["0", "1", "5"], ["1", "0", "1"], ["5", "1", "0"]])
    except ValueError as e:
        assert "triangle" in str(e)
    else:
        raise AssertionError("triangle violation accepted")

    # laws and the classical values
    delta_a = pm.Law.dirac(space, 0)
    delta_b = pm.Law.dirac(space, 1)
    half = pm.Law(space, ["1/2", "1/2"])
    assert str(pm.total_variation(delta_a, delta_b)) == "1"
    assert str(pm.total_variation(half, delta_a)) == "1/2"
    assert str(pm.prokhorov("10", delta_a, delta_b)) == "1/10"

    # minimal-metric identities: hat(K_lambda) = rho_lambda, hat(ind) = tv
    for lam in ["1/2", "1", "2"]:
        assert pm.hat(f"kyfan:{lam}", half, delta_a) == pm.prokhorov(lam, half, delta_a)
    assert pm.hat("ind", half, delta_a) == pm.total_variation(half, delta_a)

    # the optimal coupling moves half the mass across distance 1
    value, plan = pm.hat_with_witness("lp:1", half, delta_a)
    assert str(value) == "1/2"
    assert plan.entries == [["1/2", "0"], ["1/2", "0"]]
    assert plan.row_marginal() == half

    # realizing the witness attains the hat value exactly
    xi, eta = plan.realize_pair()
    assert pm.eval_metric("lp:1", xi, eta) == value
    assert pm.law_of(xi) == half

    # exact L^p values carry their rational power
    v = pm.eval_metric("lp:2", xi, eta)
    power, degree = v.power
    assert (power, degree) == ("1/2", 2)
    assert abs(v.approx() - 0.5 ** 0.5) < 1e-12

    # transport, bottleneck, vertex enumeration
    value, _ = pm.transport_lp(half, delta_a, [["0", "1"], ["1", "0"]])
    assert value == "1/2"
    assert pm.bottleneck(half, delta_a) == "1"
    assert pm.min_mass_above("1", half, delta_a) == "1/2"
    assert len(pm.enumerate_vertices(half, half)) == 2

    # gluing reproduces marginals
    diag = pm.Coupling(space, space, [["1/2", "0"], ["0", "1/2"]])
    anti = pm.Coupling(space, space, [["0", "1/2"], ["1/2", "0"]])
    glued = pm.glue(diag, anti)
    assert glued.atoms() == [([0, 0, 1], "1/2"), ([1, 1, 0], "1/2")]
    chain = pm.glue_chain([diag, diag])
    assert chain.arity == 3

    # limit operators and the gauge closed forms
    target = pm.RandomVariable.constant(space, 0)
    far = pm.RandomVariable.constant(space, 1)
    lim = pm.limit_operator("family:kyfan", [far], target)
    assert str(lim) == "1"
    assert pm.reflect("family:kyfan") == "family:prokhorov"
    assert pm.reflect("basis(ind)") == "basis(tv)"
    assert pm.coreflect("family:kyfan") == "ind"
    assert pm.coreflect("family:prokhorov") == "tv"

    # the minimal-limit inequality on an alignable pair: lower = upper = 0
    xi0 = pm.RandomVariable(space, [("0", "1/2", 0), ("1/2", "1", 1)])
    eta0 = pm.RandomVariable(space, [("0", "1/2", 1), ("1/2", "1", 0)])
    report = pm.min_limit_gap("family:kyfan", [eta0], xi0, seed=1, budget=2)
    assert report["holds"]
    assert report["lower"].is_zero() and report["upper"].is_zero()

    # equal almost everywhere is subdivision-invariant
    xi_split = pm.RandomVariable(
        space, [("0", "1/4", 0), ("1/4", "1/2", 0), ("1/2", "1", 1)]
    )
    assert pm.equal_ae(xi0, xi_split)
    assert not pm.equal_ae(xi0, eta0)

    # joint laws
    jl = pm.joint_law([xi0, eta0])
    assert jl.atoms() == [([0, 1], "1/2"), ([1, 0], "1/2")]
    assert jl.marginal([0]).atoms() == [([0], "1/2"), ([1], "1/2")]

    # instance files round-trip and resolve names
    doc = pm.generate_instance(7, "small")
    inst = pm.parse_instance(doc)
    assert inst.to_json() == doc
    assert "P0" in inst.law_names
    p0 = inst.law("P0")
    assert pm.hat("linf", p0, p0).is_zero()

    # a verification suite from Python
    report = json.loads(pm.run_suite("identities", [0, 1]))
    assert report["suite"] == "identities"
    assert report["failures"] == []
    assert report["exact_mode"] is True

    print("smoke test passed")


if __name__ == "__main__":
    main()
