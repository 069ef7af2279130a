# third parties
import pytest

# application configuration
from youwol.sspa.configuration import OracleBounds

# application terms
from youwol.sspa.terms import Config, Function, Name, Var

# application model
from youwol.sspa.model import StateAtom
from youwol.sspa.parser import Model, parse_rule

# application engine
from youwol.sspa.engine import saturate
from youwol.sspa.oracle import (
    BoundHit,
    Deduction,
    GroundConfig,
    Reachable,
    Unreachable,
    World,
    ground_reachable,
    ground_term,
    initial_states,
    is_constructor,
    replay_trace,
    replay_witness,
)
from youwol.sspa.query import check_query, reconstruct_trace

SMALL = OracleBounds(nonce_pool=1, max_depth=4, max_steps=1000)


class TestGrounding:
    def test_constructors(self, toy_model: Model):
        assert [is_constructor(rule) for rule in toy_model.rules] == [True, False, False, True]
        assert not is_constructor(parse_rule("rule r: k(x) => k(pk(x, x));", toy_model))

    def test_placeholders_become_constants(self):
        assert ground_term(Function("h", (Config("v"), Var("x"), Name("a")))) == Function(
            "h", (Name("v0"), Name("x0"), Name("a"))
        )

    def test_initial_states(self, toy_model: Model):
        assert initial_states(toy_model.access) == (StateAtom("box", (Name("main"), Name("v0"))),)

    def test_derivable(self, toy_model: Model):
        deduction = Deduction(toy_model.initial_rules(), max_depth=6)
        world = World(frozenset({Name("a")}), frozenset(), frozenset())
        assert deduction.derivable(Function("pk", (Function("seal", (Name("a"), Name("a"))),)), world)
        assert not deduction.derivable(Function("h", (Name("a"),)), world)
        assert not deduction.derivable(Name("b"), world)

    def test_bounds_must_be_positive(self):
        with pytest.raises(ValueError):
            GroundConfig(nonce_pool=0)
        with pytest.raises(ValueError):
            OracleBounds(max_steps=0)


class TestGroundReachable:
    def test_reachable(self, corpus_model, report):
        model = corpus_model("toy_counter")
        result = ground_reachable(model, "reached_two", GroundConfig.from_bounds(model, SMALL), report)
        assert isinstance(result, Reachable)
        assert [step.rule_name for step in result.trace] == ["inc_zero", "inc_one"]
        assert str(result.event) == "reached_two(main[])"

    def test_unreachable(self, corpus_model, report):
        model = corpus_model("toy_counter")
        result = ground_reachable(model, "reached_three", GroundConfig.from_bounds(model, SMALL), report)
        assert isinstance(result, Unreachable)
        assert result.explored > 0

    def test_event_nothing_produces(self, corpus_model, report):
        assert isinstance(ground_reachable(corpus_model("toy_counter"), "nothing", report=report), Unreachable)

    def test_bound_hit(self, corpus_model, report):
        model = corpus_model("toy_counter")
        config = GroundConfig.from_bounds(model, SMALL.with_overrides(max_steps=1))
        result = ground_reachable(model, "reached_two", config, report)
        assert isinstance(result, BoundHit)
        assert result.bounds == ("steps",)

    def test_toggle(self, corpus_model, report):
        model = corpus_model("toy_toggle")
        config = GroundConfig.from_bounds(model, SMALL)
        leaked = ground_reachable(model, "leaked", config, report)
        assert isinstance(leaked, Reachable)
        assert [step.rule_name for step in leaked.trace] == ["turn_on", "turn_off"]
        assert isinstance(ground_reachable(model, "forged", config, report), Unreachable)


class TestReplay:
    def test_oracle_trace(self, corpus_model, report):
        model = corpus_model("toy_counter")
        config = GroundConfig.from_bounds(model, SMALL)
        result = ground_reachable(model, "reached_two", config, report)
        assert isinstance(result, Reachable)
        replayed = replay_trace(model, result, config)
        assert replayed.reached
        assert replayed.steps == 2

    def test_witness(self, corpus_model, report):
        """The trace of an attack found by saturation runs on ground states."""
        model = corpus_model("toy_counter")
        result = saturate(model, report=report)
        verdict = check_query(result.b, "reached_two", model.access)
        assert verdict.witness is not None
        tree = reconstruct_trace(verdict.witness, result.knowledge_base)
        replayed = replay_witness(model, tree, GroundConfig.from_bounds(model, SMALL))
        assert replayed.reached, replayed.reason
