import pytest

from firecontain import classify, families as F, randgen, strategies
from firecontain.engine import (
    Schedule,
    min_burned_containment,
    run_simulation,
    sn_exact,
)
from firecontain.errors import EmbeddingInconsistent, NotApplicable
from firecontain.strategies import (
    degree_local_strategy,
    hex_containment_strategy,
    lattice_map,
    lattice_probes,
    load_plan,
    mapped_plan,
    rect_containment_strategy,
    separator_strategy,
    theorem_dispatch,
)


def test_load_plan_hash_and_guard():
    for name in ("hex_containment", "rect_containment"):
        plan = load_plan(name)
        assert plan["name"] == name
        assert all(isinstance(c, tuple) for rnd in plan["rounds"]
                   for c in rnd)


def test_load_plan_rejects_corruption(monkeypatch):
    load_plan.cache_clear()
    monkeypatch.setitem(strategies.PLAN_HASHES, "hex_containment", "0" * 64)
    with pytest.raises(EmbeddingInconsistent):
        load_plan("hex_containment")
    load_plan.cache_clear()


def test_lattice_map_hex():
    g = F.hex_patch(3)
    at = lattice_map(g, 0, "hex")
    assert at is not None
    assert at[(0, 0)] == 0
    # mapped cells are real vertices with consistent adjacency
    for (x, y), v in at.items():
        for dx, dy in F.HEX_DIRS:
            w = at.get((x + dx, y + dy))
            if w is not None:
                assert g.has_edge(v, w)


def test_lattice_map_rect():
    g = F.rect_grid(7, 7)
    centre = 3 * 7 + 3
    at = lattice_map(g, centre, "rect")
    assert at is not None and at[(0, 0)] == centre
    for (x, y), v in at.items():
        for dx, dy in F.RECT_DIRS:
            w = at.get((x + dx, y + dy))
            if w is not None:
                assert g.has_edge(v, w)


def test_lattice_map_fails_off_grid():
    g = F.platonic("icosahedron")  # degree 5 everywhere
    assert lattice_map(g, 0, "hex") is None
    assert lattice_map(g, 0, "rect") is None


def test_hex_strategy_contract():
    strat = hex_containment_strategy()
    for radius in (4, 5):
        g = F.hex_patch(radius)
        trace = strat.run(g, 0, Schedule(4, 3))
        assert trace.burned_count <= 6
        assert len(trace.rounds) <= 4


def test_hex_strategy_not_applicable_near_boundary():
    g = F.hex_patch(2)
    strat = hex_containment_strategy()
    assert not strat.applicable(g, 0)
    with pytest.raises(NotApplicable):
        strat.run(g, 0, Schedule(4, 3))


def test_rect_strategy_contract():
    strat = rect_containment_strategy()
    for size in (17, 21):
        g = F.rect_grid(size, size)
        centre = (size // 2) * size + size // 2
        trace = strat.run(g, centre, Schedule.constant(2))
        assert trace.burned_count <= 18
        assert len(trace.rounds) <= 8


def test_rect_strategy_not_applicable_small_grid():
    g = F.rect_grid(5, 5)
    strat = rect_containment_strategy()
    assert not strat.applicable(g, 12)


def test_lattice_probes_schedule_filter():
    g = F.rect_grid(17, 17)
    centre = 8 * 17 + 8
    probes = lattice_probes(g, centre, Schedule.constant(2), 18)
    assert probes  # the rect plan maps here
    # schedule (4,3) filters the rect plan out, hex plan does not map
    assert lattice_probes(g, centre, Schedule(4, 3), 18) == []


def test_mapped_plan_drops_missing_offsets():
    # near the boundary some plan offsets leave the graph; the mapped plan
    # simply omits them
    g = F.rect_grid(9, 9)
    plan = load_plan("rect_containment")
    mapped = mapped_plan(g, 4 * 9 + 4, plan)
    assert mapped is not None
    total_cells = sum(len(r) for r in plan["rounds"])
    assert sum(len(r) for r in mapped) <= total_cells


def test_degree_local_strategies():
    g = F.path(5)
    s = degree_local_strategy("girth5_thm2", "X_2")
    t = s.run(g, 2, Schedule.constant(2))
    assert t.burned_count == 1
    g = F.platonic("dodecahedron")
    s = degree_local_strategy("girth5_thm2", "X_3")
    t = s.run(g, 0, Schedule.constant(2))
    assert t.burned_count <= 2
    g = F.platonic("icosahedron")
    s = degree_local_strategy("planar_thm3", "X_5")
    t = s.run(g, 0, Schedule(4, 3))
    assert t.burned_count <= 6
    with pytest.raises(NotApplicable):
        degree_local_strategy("planar_thm3", "X_9")


def test_config_strategy_31():
    g = F.platonic("cube")
    s = strategies.config_strategy("3.1")
    t = s.run(g, 0, Schedule.constant(2))
    assert t.burned_count <= 18


def test_config_strategy_applicability_and_search():
    for seed in range(5):
        g = randgen.random_tf_maximal(16, seed)
        for v in range(g.n):
            if g.degree(v) != 3:
                continue
            for m in classify.detect_local_configs(g, v):
                s = strategies.config_strategy(m.config)
                assert s.applicable(g, v)
                t = s.run(g, v, Schedule.constant(2))
                assert t.burned_count <= 18
                assert len(t.rounds) <= 18


def test_config_strategy_unknown_id():
    with pytest.raises(NotApplicable):
        strategies.config_strategy("9.9")


def test_separator_strategy():
    g = F.path(9)
    s = separator_strategy([4])
    t = s.run(g, 0, Schedule.constant(1))
    # vertices 5..8 survive behind the separator
    assert t.saved >= 4
    assert 4 not in t.burned_set()


def test_separator_too_close():
    g = F.path(9)
    s = separator_strategy([4, 5])  # size 2, distance 4 from 0: fine
    assert s.applicable(g, 0)
    s = separator_strategy([1, 2])  # size 2 at distance 1: cannot finish
    assert not s.applicable(g, 0)
    with pytest.raises(NotApplicable):
        separator_strategy([])


def test_dispatch_contracts_girth5():
    g = F.platonic("dodecahedron")
    rep = classify.classify_girth5(g)
    disp = theorem_dispatch("girth5_thm2", rep)
    for v in range(g.n):
        t = run_simulation(g, v, Schedule.constant(2), disp.decide)
        assert t.burned_count <= 2  # X_3 contract: at most 2 burned


def test_dispatch_contracts_planar():
    for seed in range(3):
        g = randgen.random_triangulation(18, seed)
        rep = classify.classify_planar(g)
        disp = theorem_dispatch("planar_thm3", rep)
        for v in rep.x_vertices():
            t = run_simulation(g, v, Schedule(4, 3), disp.decide)
            assert t.burned_count <= 6, (seed, v)


def test_dispatch_contracts_tf():
    for seed in range(3):
        g = randgen.random_tf_maximal(18, seed)
        rep = classify.classify_triangle_free(g)
        disp = theorem_dispatch("trianglefree_thm5", rep)
        for v in rep.x_vertices():
            t = run_simulation(g, v, Schedule.constant(2), disp.decide)
            assert t.burned_count <= 18, (seed, v)


def test_dispatch_context_mismatch():
    rep = classify.classify_girth5(F.cycle(5))
    with pytest.raises(NotApplicable):
        theorem_dispatch("planar_thm3", rep)


def test_strategies_never_beat_exact():
    g = F.platonic("icosahedron")
    rep = classify.classify_planar(g)
    disp = theorem_dispatch("planar_thm3", rep)
    sched = Schedule(4, 3)
    for v in range(g.n):
        t = run_simulation(g, v, sched, disp.decide)
        assert t.saved <= sn_exact(g, v, sched).value


def test_containment_agrees_with_strategy_on_hex():
    g = F.hex_patch(4)
    res = min_burned_containment(
        g, 0, Schedule(4, 3), burn_cap=6,
        probes=lattice_probes(g, 0, Schedule(4, 3), 6))
    assert res.feasible and res.trace.burned_count <= 6
