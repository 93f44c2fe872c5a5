"""Command-line surface: expression syntax and verbs."""

from .commands import VERB_OPS, CommandResult, build_parser, main, run_command
from .expr import format_lc, lc_to_json, parse_expr

__all__ = ["VERB_OPS", "CommandResult", "build_parser", "format_lc", "lc_to_json", "main",
           "parse_expr", "run_command"]
