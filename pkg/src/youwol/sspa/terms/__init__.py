"""Terms, substitutions and syntactic unification."""

# relative
from .substitution import EMPTY, CyclicBindings, Substitution, apply, compose
from .term import (
    Bindable,
    Config,
    Function,
    Name,
    Nonce,
    Placeholder,
    Term,
    Var,
    all_bindables,
    bindables,
    depth,
    is_ground,
    is_placeholder,
    nonces,
    occurs,
    placeholders,
    subterms,
    term_key,
)
from .unify import NoUnifier, match, match_all, rename_apart, unifiable, unify, unify_all

__all__ = [
    "EMPTY",
    "Bindable",
    "Config",
    "CyclicBindings",
    "Function",
    "Name",
    "NoUnifier",
    "Nonce",
    "Placeholder",
    "Substitution",
    "Term",
    "Var",
    "all_bindables",
    "apply",
    "bindables",
    "compose",
    "depth",
    "is_ground",
    "is_placeholder",
    "match",
    "match_all",
    "nonces",
    "occurs",
    "placeholders",
    "rename_apart",
    "subterms",
    "term_key",
    "unifiable",
    "unify",
    "unify_all",
]
