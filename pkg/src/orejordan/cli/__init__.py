"""Session files, command dispatch and JSON reports."""

from .main import main
from .report import Report, dump_reports, load_reports
from .session import COMMANDS, Session, run_command, run_commands, run_session

__all__ = ["COMMANDS", "Report", "Session", "dump_reports", "load_reports", "main",
           "run_command", "run_commands", "run_session"]
