# standard library
from pathlib import Path

# third parties
import pytest

# application configuration
from youwol.sspa.configuration import EngineLimits

# application terms
from youwol.sspa.terms import Config, Function, Name, Nonce, Var

# application model
from youwol.sspa.model import Event, Knowledge, ProvenanceKind, StateAtom, implies, validate
from youwol.sspa.parser import Model, parse_rule

# application engine
from youwol.sspa.engine import (
    KnowledgeBase,
    LimitExceeded,
    NotUnifiable,
    ProgressAnalysis,
    SideConditionViolated,
    compose_rules,
    dump_rules,
    dumped_rule_text,
    enumerate_cover_maps,
    is_final,
    saturate,
    transform_state,
)


class TestCompose:
    def test_supplies_the_pivot(self, toy_model: Model):
        rule = toy_model.rules[0]
        target = parse_rule("rule t: k(pk(a[])) => k(b[]);", toy_model)
        (pivot,) = target.premises
        composed = compose_rules(rule, target, pivot)
        assert composed.premises == {Knowledge(Name("a"))}
        assert composed.conclusion == Knowledge(Name("b"))
        assert composed.provenance.kind == ProvenanceKind.COMPOSED
        assert composed.provenance.pivot == pivot

    def test_states_come_first(self, toy_model: Model):
        """The states of the composed rule are ordered before the states where the pivot is available."""
        fetch = toy_model.rules[1]
        target = parse_rule("rule t: k(pk(y)) => box(main[], y) -> k(seal(y, y));", toy_model)
        (pivot,) = target.premises
        composed = compose_rules(fetch, target, pivot)
        assert not composed.premises
        assert len(composed.states) == 2
        later = StateAtom("box", (Name("main"), Var("y")))
        (earlier,) = composed.states - {later}
        assert earlier.args[1] == Function("pk", (Var("y"),))
        assert (earlier, later) in composed.orderings
        assert (later, earlier) not in composed.orderings

    def test_reserved_pivot(self, toy_model: Model):
        target = parse_rule("rule t: k(y) => k(pk(y));", toy_model)
        with pytest.raises(SideConditionViolated):
            compose_rules(toy_model.rules[0], target, Knowledge(Var("y")))

    def test_tied_knowledge_is_supplied_last(self, toy_model: Model):
        fetch = toy_model.rules[1]
        target = parse_rule("query leak: start([n], x), k(x) => leak();", toy_model)
        composed = compose_rules(fetch, target, Knowledge(Var("x")))
        assert not any(isinstance(fact, Knowledge) for fact in composed.premises)
        assert len(composed.states) == 1
        assert is_final(composed)

    def test_rule_premises_outside_reserved(self, toy_model: Model):
        rule = parse_rule("rule r: k(pk(x)) => k(x);", toy_model)
        target = parse_rule("rule t: k(pk(a[])) => k(b[]);", toy_model)
        (pivot,) = target.premises
        with pytest.raises(SideConditionViolated):
            compose_rules(rule, target, pivot)

    def test_transferring_rule(self, toy_model: Model):
        target = parse_rule("rule t: k(pk(a[])) => k(b[]);", toy_model)
        (pivot,) = target.premises
        with pytest.raises(SideConditionViolated):
            compose_rules(toy_model.rules[2], target, pivot)

    def test_not_unifiable(self, toy_model: Model):
        target = parse_rule("rule t: k(seal(a[], b[])) => k(b[]);", toy_model)
        (pivot,) = target.premises
        with pytest.raises(NotUnifiable):
            compose_rules(toy_model.rules[0], target, pivot)


class TestTransform:
    def test_replaces_the_latest_state(self, toy_model: Model):
        """The state produced by the conversion is replaced by the state it was converted from."""
        transferring = toy_model.rules[2]
        consistent = parse_rule("query q: k(x) => box(|id|, h(|v|, x)) -> q(|v|);", toy_model)
        (cover,) = enumerate_cover_maps(transferring, consistent)
        transformed = transform_state(transferring, consistent, cover)
        assert transformed.provenance.kind == ProvenanceKind.TRANSFORMED
        assert [str(state) for state in transformed.sorted_states()] == ["box(|id|, |v|)"]
        (event,) = [fact for fact in transformed.premises if isinstance(fact, Event)]
        assert event.name == "start"
        assert event.args[1] == Config("v")

    def test_orderings_on_replaced_states_are_dropped(self, toy_model: Model):
        """An ordering towards the replaced state does not survive it."""
        transferring = toy_model.rules[2]
        consistent = parse_rule(
            "query q: k(x) => box(a[], b[])^s, box(|id|, h(|v|, x))^t : {^s <= ^t} -> q(|v|);", toy_model
        )
        (cover,) = enumerate_cover_maps(transferring, consistent)
        transformed = transform_state(transferring, consistent, cover)
        assert {str(state) for state in transformed.states} == {"box(a[], b[])", "box(|id|, |v|)"}
        for lower, upper in transformed.orderings:
            assert lower in transformed.states and upper in transformed.states
        assert parse_rule(str(transformed), toy_model) == transformed

    def test_no_cover_on_other_objects(self, toy_model: Model):
        consistent = parse_rule("query q: => box(main[], a[]) -> q();", toy_model)
        assert not enumerate_cover_maps(toy_model.rules[2], consistent)

    def test_arguments_in_the_wrong_order(self, toy_model: Model):
        assert not enumerate_cover_maps(toy_model.rules[1], toy_model.rules[2])

    def test_knowledge_conclusions_are_not_transformed(self, toy_model: Model):
        transferring = toy_model.rules[2]
        consistent = parse_rule("rule r: k(x) => box(main[], h(a[], x)) -> k(x);", toy_model)
        (cover,) = enumerate_cover_maps(transferring, consistent)
        with pytest.raises(SideConditionViolated):
            transform_state(transferring, consistent, cover)
        transformed = transform_state(transferring, consistent, cover, require_event=False)
        assert isinstance(transformed.conclusion, Knowledge)


class TestDigitalEnvelope:
    """Composition and transformation steps on the digital envelope protocol."""

    @pytest.fixture
    def model(self, corpus_model) -> Model:
        return corpus_model("dep_noreboot")

    @pytest.fixture
    def composed(self, model: Model):
        supplier = parse_rule("rule r: gensrt([s], |p|, pkey) => tpm(bob[], h(|p|, open[])) -> k([s]);", model)
        target = parse_rule(
            "query attack: gensrt([s], |p|, pkey), k([s]) : {<2, ^c>} => tpm(bob[], h(|p|, revoke[]))^c -> attack();",
            model,
        )
        return compose_rules(supplier, target, Knowledge(Nonce("s")))

    def test_open_before_revoke(self, model: Model, composed):
        expected = parse_rule(
            "query attack: gensrt([s], |p|, pkey) : {<1, ^a>}"
            " => tpm(bob[], h(|p|, open[]))^a, tpm(bob[], h(|p|, revoke[]))^c : {^a <= ^a, ^c <= ^c, ^a <= ^c}"
            " -> attack();",
            model,
        )
        assert implies(composed, expected) and implies(expected, composed)

    def test_one_cover_map(self, model: Model, composed):
        """The latest state alone is a cover set; both states are one too but cannot both follow one extension."""
        extend = next(rule for rule in model.rules if rule.name == "extend")
        (cover,) = enumerate_cover_maps(extend, composed)
        ((_, image),) = cover.m
        (state,) = image
        assert "revoke[]" in str(state)

    def test_revoke_is_undone(self, model: Model, composed):
        extend = next(rule for rule in model.rules if rule.name == "extend")
        (cover,) = enumerate_cover_maps(extend, composed)
        transformed = transform_state(extend, composed, cover)
        expected = parse_rule(
            "query attack: gensrt([s], |p|, pkey), k(revoke[]) : {<1, ^a>}"
            " => tpm(bob[], h(|p|, open[]))^a, tpm(bob[], |p|)^h : {^a <= ^a, ^h <= ^h, ^a <= ^h}"
            " -> attack();",
            model,
        )
        assert implies(transformed, expected) and implies(expected, transformed)
        assert not is_final(transformed)

    def test_created_objects_leave_the_rule(self, model: Model):
        """Going back past the creation of an object drops its state and brings in the premises of the creator."""
        iteration = next(rule for rule in model.rules if rule.name == "iteration")
        query = model.query("opened")
        assert query is not None
        (cover,) = enumerate_cover_maps(iteration, query.rule)
        transformed = transform_state(iteration, query.rule, cover, check_side_conditions=False)
        assert not any(state.name == "secret" for state in transformed.states)
        assert [state.name for state in transformed.sorted_states()] == ["alice"]
        assert any(isinstance(fact, Knowledge) and "keycert" in str(fact) for fact in transformed.premises)

    def test_created_objects_have_no_earlier_states(self, model: Model):
        iteration = next(rule for rule in model.rules if rule.name == "iteration")
        consistent = parse_rule(
            "query q: => secret([s], |p|, |pkey|)^a, secret([s], h(|p|, x), |pkey|)^b : {^a <= ^b} -> q();", model
        )
        covers = enumerate_cover_maps(iteration, consistent)
        assert covers
        for cover in covers:
            with pytest.raises(SideConditionViolated):
                transform_state(iteration, consistent, cover, check_side_conditions=False)

    def test_composition_is_stable_under_implication(self, model: Model):
        """Composing general rules implies composing their instances."""
        pk = next(rule for rule in model.rules if rule.name == "pk")
        aenc = next(rule for rule in model.rules if rule.name == "aenc")
        pk_instance = parse_rule("rule r: k(a[]) => k(pk(a[]));", model)
        aenc_instance = parse_rule("rule r: k(b[]), k(pk(a[])) => k(aenc(b[], pk(a[])));", model)
        assert implies(pk, pk_instance) and implies(aenc, aenc_instance)
        instance = compose_rules(
            pk_instance, aenc_instance, Knowledge(Function("pk", (Name("a"),))), check_side_conditions=False
        )
        general = [compose_rules(pk, aenc, pivot, check_side_conditions=False) for pivot in aenc.sorted_premises()]
        assert any(implies(rule, instance) for rule in general)


class TestKnowledgeBase:
    def test_ids(self, toy_model: Model):
        knowledge_base = KnowledgeBase()
        inserted = [knowledge_base.add_rule(validate(rule)) for rule in toy_model.rules]
        assert [rule.rule_id for rule in inserted if rule is not None] == [0, 1, 2, 3]
        assert len(knowledge_base) == 4

    def test_tautologies_are_dropped(self, toy_model: Model):
        knowledge_base = KnowledgeBase()
        assert knowledge_base.add_rule(parse_rule("rule r: k(x) => k(x);", toy_model)) is None
        assert knowledge_base.stats.tautologies == 1

    def test_implied_rules_are_dropped(self, toy_model: Model):
        knowledge_base = KnowledgeBase()
        knowledge_base.add_rule(parse_rule("rule r: k(x) => k(pk(x));", toy_model))
        assert knowledge_base.add_rule(parse_rule("rule r: k(a[]) => k(pk(a[]));", toy_model)) is None
        assert knowledge_base.stats.subsumed == 1

    def test_implied_rules_are_evicted_but_archived(self, toy_model: Model):
        knowledge_base = KnowledgeBase()
        specific = knowledge_base.add_rule(parse_rule("rule r: k(a[]) => k(pk(a[]));", toy_model))
        general = knowledge_base.add_rule(parse_rule("rule r: k(x) => k(pk(x));", toy_model))
        assert specific is not None and general is not None
        assert knowledge_base.rules() == [general]
        assert specific.rule_id not in knowledge_base
        assert knowledge_base.get(specific.rule_id) == specific
        assert len(knowledge_base.archive()) == 2
        assert knowledge_base.stats.evicted == 1

    def test_depth_limit(self, toy_model: Model):
        knowledge_base = KnowledgeBase(EngineLimits(max_term_depth=3))
        assert knowledge_base.add_rule(parse_rule("rule r: k(x) => k(pk(pk(pk(x))));", toy_model)) is None
        assert knowledge_base.depth_exceeded
        assert knowledge_base.stats.too_deep == 1

    def test_rule_limit(self, toy_model: Model):
        knowledge_base = KnowledgeBase(EngineLimits(max_rules=1))
        knowledge_base.add_rule(toy_model.rules[0])
        with pytest.raises(LimitExceeded):
            knowledge_base.add_rule(toy_model.rules[1])

    def test_infeasible_orderings_are_pruned(self, toy_model: Model):
        knowledge_base = KnowledgeBase(progress=ProgressAnalysis(toy_model.initial_rules()))
        rule = parse_rule(
            "query q: => box(main[], h(b[], x))^s, box(main[], b[])^t : {^s <= ^t} -> q(x);",
            toy_model,
        )
        assert knowledge_base.add_rule(rule) is None
        assert knowledge_base.stats.pruned == 1


class TestProgress:
    def test_growing_positions(self, toy_model: Model):
        progress = ProgressAnalysis(toy_model.initial_rules())
        small = StateAtom("box", (Name("main"), Name("b")))
        large = StateAtom("box", (Name("main"), Function("h", (Name("b"), Var("x")))))
        assert progress.can_evolve(small, large)
        assert not progress.can_evolve(large, small)
        assert not progress.resets("box", 1)

    def test_resets(self, corpus_model):
        progress = ProgressAnalysis(corpus_model("toy_toggle").initial_rules())
        assert progress.resets("switch", 1)

    def test_realizable_states(self, corpus_model):
        model = corpus_model("toy_counter")
        progress = ProgressAnalysis(model.initial_rules(), model.access)
        assert progress.realizable(StateAtom("counter", (Name("other"), Name("one"))))
        assert progress.realizable(StateAtom("counter", (Name("main"), Name("zero"))))
        assert not progress.realizable(StateAtom("counter", (Name("main"), Name("three"))))
        assert ProgressAnalysis(model.initial_rules()).realizable(StateAtom("counter", (Name("main"), Name("three"))))

    def test_unrealizable_states_are_pruned(self, corpus_model):
        model = corpus_model("toy_counter")
        knowledge_base = KnowledgeBase(progress=ProgressAnalysis(model.initial_rules(), model.access))
        rule = parse_rule("query q: k(x) => counter(|c|, three[]) -> q(x);", model)
        assert knowledge_base.add_rule(rule) is None
        assert knowledge_base.stats.pruned == 1


class TestFinal:
    def test_events_and_singletons(self, toy_model: Model):
        assert is_final(parse_rule("query leak: start([n], x), k(y) => box(main[], x) -> leak();", toy_model))

    def test_knowledge_tied_to_an_event(self, toy_model: Model):
        assert not is_final(parse_rule("query leak: start([n], x), k(x) => leak();", toy_model))

    def test_knowledge_conclusion(self, toy_model: Model):
        assert not is_final(parse_rule("rule r: k(y) => k(pk(y));", toy_model))


class TestSaturate:
    def test_fixpoint(self, toy_model: Model, report):
        result = saturate(toy_model, report=report)
        assert not result.truncated
        assert result.initial_count == 5
        assert all(is_final(rule) for rule in result.b)
        assert {rule.rule_id for rule in result.b} <= {rule.rule_id for rule in result.b_v}

    def test_minimal(self, toy_model: Model, report):
        """No active rule implies another one."""
        rules = saturate(toy_model, report=report).b_v
        for general in rules:
            for specific in rules:
                if general.rule_id != specific.rule_id:
                    assert not implies(general, specific)

    def test_deterministic(self, toy_model: Model, report):
        first = saturate(toy_model, report=report)
        second = saturate(toy_model, report=report)
        assert [str(rule) for rule in first.b_v] == [str(rule) for rule in second.b_v]

    def test_rule_limit(self, toy_model: Model, report):
        result = saturate(toy_model, EngineLimits(max_rules=1), report=report)
        assert result.truncated
        assert result.limits_hit == ["rules"]

    def test_timeout(self, toy_model: Model, report):
        result = saturate(toy_model, EngineLimits(timeout=1e-9), report=report)
        assert result.truncated
        assert "timeout" in result.limits_hit

    def test_dump(self, toy_model: Model, report, tmp_path: Path):
        result = saturate(toy_model, report=report)
        path = tmp_path / "kb.txt"
        dump_rules(result.knowledge_base.archive(), path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == len(result.knowledge_base.archive())
        assert lines[0].startswith("#0 base:pk | rule pk:")
        for line, rule in zip(lines, result.knowledge_base.archive()):
            assert parse_rule(dumped_rule_text(line), toy_model) == rule

    @pytest.mark.parametrize("name", ["toy_counter", "toy_toggle"])
    def test_generated_rules_are_validated(self, corpus_model, report, name: str):
        """Every rule the saturation ever inserted is its own validated form and implies itself."""
        result = saturate(corpus_model(name), report=report)
        for rule in result.knowledge_base.archive():
            assert validate(rule) == rule
            assert implies(rule, rule)
