"""Saturation engine: composition, state transformation and the knowledge base fixpoint."""

# relative
from .compose import compose_rules
from .dump import dump_line, dump_rules, dumped_rule_text
from .errors import LimitExceeded, NotUnifiable, SaturationTimeout, SideConditionViolated
from .knowledge_base import KnowledgeBase, SaturationStats, conclusion_index
from .progress import ProgressAnalysis
from .saturate import Saturation, SaturationResult, is_final, saturate
from .transform import CoverMap, enumerate_cover_maps, transform_state
