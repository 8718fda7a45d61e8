"""Decision procedures and arithmetic on triples, grouped by concern."""

from . import graph_tool
from . import action_tool
from . import semigroup_tool
from . import fixed_path_tool
from . import ratio_tool
from . import freeness_tool
from . import transitivity_tool
from . import groupoid_tool
from . import snf_tool
from . import katsura_tool
from . import correspondence_tool
from . import literal_parser_tool

__all__ = [
    "graph_tool",
    "action_tool",
    "semigroup_tool",
    "fixed_path_tool",
    "ratio_tool",
    "freeness_tool",
    "transitivity_tool",
    "groupoid_tool",
    "snf_tool",
    "katsura_tool",
    "correspondence_tool",
    "literal_parser_tool",
]
