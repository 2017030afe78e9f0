import json

import pytest

from conftest import random_connected_graph
from firecontain import engine, families as F
from firecontain.engine import (
    ContainmentResult,
    Schedule,
    SimTrace,
    advance_round,
    frontier,
    ignite,
    min_burned_containment,
    null_strategy,
    plan_strategy,
    replay,
    run_simulation,
    sn_exact,
)
from firecontain.errors import (
    BudgetExceeded,
    ProtectBurningVertex,
    StrategyBudgetViolation,
)
from oracles import (
    connected_subsets_reference,
    containment_reference,
    sn_reference,
)


def test_schedule():
    s = Schedule(4, 3)
    assert s.budget(1) == 4 and s.budget(2) == 3 and s.budget(9) == 3
    assert s.cumulative(0) == 0
    assert s.cumulative(3) == 10
    assert Schedule.constant(2).as_pair() == [2, 2]
    with pytest.raises(ValueError):
        Schedule(-1, 2)


def test_round_semantics():
    g = F.path(5)
    state = ignite(2)
    assert state.round == 0 and state.burning == frozenset([2])
    state = advance_round(g, state, [3], budget=1)
    assert state.burning == frozenset([1, 2])
    assert state.protected == frozenset([3])
    state = advance_round(g, state, [0], budget=1)
    assert state.burning == frozenset([1, 2])
    assert not frontier(g, state.burning, state.protected)


def test_advance_round_guards():
    g = F.path(4)
    state = ignite(0)
    with pytest.raises(BudgetExceeded):
        advance_round(g, state, [2, 3], budget=1)
    with pytest.raises(ProtectBurningVertex):
        advance_round(g, state, [0], budget=1)
    state = advance_round(g, state, [2], budget=1)
    with pytest.raises(ProtectBurningVertex):
        advance_round(g, state, [2], budget=1)


def test_run_simulation_terminates_and_counts():
    g = F.star(8)
    trace = run_simulation(g, 0, Schedule.constant(1), null_strategy)
    assert trace.saved == 0
    assert trace.burned_count == 8
    # protecting fewer than the budget is legal (null strategy always does)
    trace = run_simulation(g, 1, Schedule.constant(3), null_strategy)
    assert trace.burned_count == 8 and len(trace.rounds) == 2


def test_strategy_budget_violation():
    g = F.path(4)

    def cheat(g_, state, budget):
        return [2, 3]

    with pytest.raises(StrategyBudgetViolation):
        run_simulation(g, 0, Schedule.constant(1), cheat)


def test_replay_determinism():
    g = F.platonic("icosahedron")
    res = sn_exact(g, 0, Schedule(4, 3))
    again = replay(g, res.trace)
    assert again == res.trace
    # JSON round trip preserves the trace
    back = SimTrace.from_json(json.loads(
        engine.trace_to_json_str(res.trace)), g.n)
    assert back == res.trace


def test_sn_point_values():
    assert sn_exact(F.path(3), 1, Schedule.constant(1)).value == 1
    assert sn_exact(F.path(3), 0, Schedule.constant(1)).value == 2
    assert sn_exact(F.star(6), 0, Schedule.constant(1)).value == 1
    assert sn_exact(F.star(6), 1, Schedule.constant(1)).value == 5
    # one hub of K_{2,3}: protect a leaf, then the other hub
    g = F.complete_bipartite_2_m(3)
    assert sn_exact(g, 0, Schedule.constant(1)).value == 2
    # a leaf start: protect one hub, then one of the two free leaves
    assert sn_exact(g, 2, Schedule.constant(1)).value == 2


def test_sn_matches_reference_on_random_graphs():
    for seed in range(12):
        g = random_connected_graph(6, 0.45, seed)
        for k in (1, 2):
            sched = Schedule.constant(k)
            for start in range(g.n):
                res = sn_exact(g, start, sched)
                assert res.optimal
                assert res.value == sn_reference(g, start, sched)
                assert replay(g, res.trace).saved == res.value


def test_sn_matches_reference_uneven_schedule():
    sched = Schedule(2, 1)
    for seed in range(6):
        g = random_connected_graph(6, 0.5, seed + 100)
        for start in range(g.n):
            assert sn_exact(g, start, sched).value == \
                sn_reference(g, start, sched)


def test_sn_timeout_is_lower_bound():
    g = F.rect_grid(6, 6)
    res = sn_exact(g, 14, Schedule.constant(2), node_limit=50)
    assert not res.optimal
    assert res.trace is not None
    assert res.value == res.trace.saved
    assert replay(g, res.trace).saved == res.value


def test_connected_region_enumeration():
    for seed in range(8):
        g = random_connected_graph(7, 0.4, seed + 50)
        got = set(engine._connected_regions(g, 0, 4))
        want = connected_subsets_reference(g, 0, 4)
        assert got == want
        assert len(list(engine._connected_regions(g, 0, 4))) == len(want)


@pytest.mark.parametrize("force_dfs", [False, True])
def test_containment_matches_reference(force_dfs, monkeypatch):
    if force_dfs:
        monkeypatch.setattr(engine, "REGION_ENUM_MAX_CAP", 0)
    for seed in range(10):
        g = random_connected_graph(7, 0.4, seed + 300)
        for sched in (Schedule.constant(1), Schedule.constant(2),
                      Schedule(2, 1)):
            for cap in (2, 3, 5):
                res = min_burned_containment(g, 0, sched, burn_cap=cap)
                assert res.status in ("feasible", "infeasible")
                want = containment_reference(g, 0, sched, cap, cap)
                assert res.feasible == want
                if res.feasible:
                    t = replay(g, res.trace)
                    assert t.burned_count <= cap
                    assert len(t.rounds) <= cap


def test_containment_round_cap():
    g = F.path(9)
    sched = Schedule.constant(1)
    res = min_burned_containment(g, 4, sched, burn_cap=5, round_cap=2)
    assert res.feasible == containment_reference(g, 4, sched, 5, 2)
    if res.feasible:
        assert len(res.trace.rounds) <= 2


def test_containment_trivial_small_graph():
    g = F.path(3)
    res = min_burned_containment(g, 0, Schedule.constant(0), burn_cap=3)
    assert res.feasible and res.proven


def test_containment_rejects_bad_caps():
    with pytest.raises(ValueError):
        min_burned_containment(F.path(3), 0, Schedule.constant(1), burn_cap=0)


def test_containment_result_flags():
    r = ContainmentResult("infeasible", proven=True)
    assert not r.feasible
