"""Query engine: accessibility, verdicts and attack derivation trees."""

# relative
from .access import access_unifier, accessible
from .check import Verdict, VerdictStatus, Witness, check_query, witness_of
from .errors import MalformedProvenance, NotAccessible
from .render import render_steps, render_tree, tree_as_dict, verdict_as_dict
from .trace import DerivationNode, DerivationTree, Edge, TraceStep, reconstruct_trace
from .validator import tree_violations, validate_tree
