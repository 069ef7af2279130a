# standard library
import random

# third parties
import pytest

# application terms
from youwol.sspa.terms import (
    EMPTY,
    Config,
    CyclicBindings,
    Function,
    Name,
    NoUnifier,
    Nonce,
    Substitution,
    Term,
    Var,
    depth,
    is_ground,
    match,
    nonces,
    occurs,
    rename_apart,
    unifiable,
    unify,
    unify_all,
)


def f(*args: Term) -> Function:
    return Function("f", args)


def g(*args: Term) -> Function:
    return Function("g", args)


x, y, z = Var("x"), Var("y"), Var("z")
p = Config("p")
a, b = Name("a"), Name("b")


def random_term(rng: random.Random, size: int) -> Term:
    if size <= 1 or rng.random() < 0.3:
        return rng.choice([x, y, z, p, a, b, Nonce("n")])
    symbol = rng.choice(["f", "g", "h"])
    arity = rng.randint(1, 2)
    return Function(symbol, tuple(random_term(rng, size // 2) for _ in range(arity)))


class TestTerms:
    def test_text_form(self):
        """Terms print in the model file syntax."""
        assert str(f(x, p, a, Nonce("n"), Nonce("n", 2))) == "f(x, |p|, a[], [n], [n.2])"

    def test_depth_and_groundness(self):
        """Depth counts nesting; ground terms have no placeholders, nonces allowed."""
        assert depth(a) == 1
        assert depth(f(g(a), b)) == 3
        assert is_ground(f(a, Nonce("n")))
        assert not is_ground(f(a, p))

    def test_occurs_and_nonces(self):
        term = f(g(x), Nonce("n"))
        assert occurs(x, term)
        assert not occurs(y, term)
        assert nonces(term) == {Nonce("n")}


class TestSubstitution:
    def test_bindings_are_resolved(self):
        """Chained bindings are resolved at construction, so applying once is enough."""
        sigma = Substitution({x: f(y), y: a})
        assert sigma.apply(x) == f(a)
        assert sigma.apply(sigma.apply(g(x, y))) == sigma.apply(g(x, y))

    def test_cycles_are_rejected(self):
        with pytest.raises(CyclicBindings):
            Substitution({x: f(y), y: g(x)})

    def test_identity_bindings_are_dropped(self):
        assert Substitution({x: x}) == EMPTY

    def test_compose(self):
        """The composition applies the inner substitution first."""
        outer = Substitution({y: a})
        inner = Substitution({x: f(y)})
        composed = outer.compose(inner)
        for term in (x, y, g(x, y), z):
            assert composed.apply(term) == outer.apply(inner.apply(term))

    def test_compose_after_apply_is_idempotent(self):
        """A unifier found on terms the first substitution was applied to composes idempotently."""
        sigma = unify(f(x, y), f(g(z), z))
        step = unify(sigma.apply(g(x, y)), g(g(a), p))
        composed = step.compose(sigma)
        for term in (x, y, z, p, f(x, g(y, p))):
            assert composed.apply(composed.apply(term)) == composed.apply(term)
            assert composed.apply(term) == step.apply(sigma.apply(term))

    def test_compose_equation_over_idempotence(self):
        """Outer maps y to x and inner binds x: the equation holds, which no idempotent substitution could do."""
        outer = Substitution({y: x})
        inner = Substitution({x: a})
        composed = outer.compose(inner)
        assert composed.apply(g(x, y)) == outer.apply(inner.apply(g(x, y))) == g(a, x)


class TestUnify:
    def test_most_general(self):
        sigma = unify(f(x, g(y)), f(a, z))
        assert sigma.apply(f(x, g(y))) == sigma.apply(f(a, z))
        assert sigma.apply(z) == g(y)

    def test_left_placeholder_is_bound(self):
        """Between two placeholders, the left one is bound to the right one."""
        assert unify(x, y) == Substitution({x: y})

    def test_config_is_a_variable(self):
        assert unify(f(p), f(g(a))).apply(p) == g(a)

    def test_clash(self):
        with pytest.raises(NoUnifier) as error:
            unify(f(a), g(a))
        assert error.value.reason == "clash"

    def test_arity(self):
        with pytest.raises(NoUnifier) as error:
            unify(f(a), f(a, b))
        assert error.value.reason == "arity"

    def test_occurs_check(self):
        with pytest.raises(NoUnifier) as error:
            unify(x, f(x))
        assert error.value.reason == "occurs"

    def test_nonces(self):
        """Nonces unify with placeholders and with nonces of the same name only."""
        assert unifiable(Nonce("n"), x)
        assert unifiable(Nonce("n"), Nonce("n", 3))
        assert not unifiable(Nonce("n"), Nonce("m"))
        assert not unifiable(Nonce("n"), a)
        assert not unifiable(Nonce("n"), f(a))

    def test_extends_a_substitution(self):
        sigma = unify_all([(x, a)])
        assert not unifiable(sigma.apply(x), b)
        with pytest.raises(NoUnifier):
            unify(x, b, sigma)

    @pytest.mark.parametrize("seed", range(5))
    def test_unifiers_unify(self, seed: int):
        """Random pairs: when a unifier exists, it makes both sides equal and is idempotent."""
        rng = random.Random(seed)
        for _ in range(200):
            left, right = random_term(rng, 8), random_term(rng, 8)
            try:
                sigma = unify(left, right)
            except NoUnifier:
                continue
            assert sigma.apply(left) == sigma.apply(right)
            assert sigma.apply(sigma.apply(left)) == sigma.apply(left)


class TestMatch:
    def test_one_way(self):
        """Only the pattern side is bound."""
        assert match(f(x, x), f(a, a)) == Substitution({x: a})
        assert match(f(x, x), f(a, b)) is None
        assert match(f(a), f(x)) is None

    def test_nonce_patterns(self):
        assert match(Nonce("n"), Nonce("n", 2)) == Substitution({Nonce("n"): Nonce("n", 2)})
        assert match(Nonce("n"), a) is None


class TestRenameApart:
    def test_clashing_names_are_renamed(self):
        (renamed,), sigma = rename_apart((f(x, y),), used={"x"})
        assert renamed == f(Var("x1"), y)
        assert sigma == Substitution({x: Var("x1")}, normalize=False)

    def test_used_nonces_get_a_new_instance(self):
        (renamed,), _ = rename_apart((f(Nonce("n")),), used=(), used_nonces=[Nonce("n")])
        assert renamed == f(Nonce("n", 1))
