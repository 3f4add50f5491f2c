"""Script language and command-line front end."""

from .main import execute, main
from .runner import Report, run
from .syntax import ScriptError, format_script, parse_script

__all__ = ["execute", "main", "Report", "run", "ScriptError", "format_script", "parse_script"]
