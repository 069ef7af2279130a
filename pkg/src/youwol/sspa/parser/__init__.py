"""Model files: parsing and serialization."""

# relative
from .errors import ParseError
from .model_file import Model, Query
from .parse import parse_rule, parse_spec
from .serialize import rule_body, serialize_model, serialize_rule
