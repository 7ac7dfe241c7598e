"""
Logging for lindyn sessions.

Every CLI invocation gets its own session file named after the subcommand,
so a long `verify` run and the `power` calls around it stay separate. The
console is stderr only: stdout carries the JSON report.
"""
import glob
import logging
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)

KEEP_SESSIONS = 5
MAX_BYTES = 10 * 1024 * 1024

CONSOLE_FORMAT = "%(levelname)s: %(message)s"
CONSOLE_DEBUG_FORMAT = "%(levelname)s [%(name)s]: %(message)s"
# processName tells suite workers apart
FILE_FORMAT = "%(asctime)s | %(levelname)-8s | %(processName)s | %(name)s:%(lineno)d | %(message)s"


def _prune_sessions(log_path: Path) -> None:
    """Delete the oldest session files so the new one makes KEEP_SESSIONS"""
    pattern = str(log_path.parent / f"{log_path.stem}_*.log")
    sessions = sorted(glob.glob(pattern), reverse=True)  # timestamp first in the name, newest first
    for old in sessions[KEEP_SESSIONS - 1:]:
        try:
            Path(old).unlink()
        except OSError:
            pass


def setup_logging(
    log_file: str = "logs/lindyn-lab.log",
    console_level: int = logging.INFO,
    file_level: int = logging.DEBUG,
    command: Optional[str] = None,
) -> Path:
    """
    Configure the console handler (stderr) and a rotating session file.

    Session files are `<stem>_<timestamp>[_<command>].log` next to log_file;
    the last KEEP_SESSIONS are kept and each rotates at MAX_BYTES.

    Args:
        log_file: Base path; its stem prefixes every session file
        console_level: Console level (DEBUG also shows logger names)
        file_level: Session file level
        command: Subcommand recorded in the session file name

    Returns:
        Path of the session log file
    """
    log_path = Path(log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)
    _prune_sessions(log_path)

    # Microseconds keep back-to-back runs apart
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
    suffix = f"_{command}" if command else ""
    session_log = log_path.parent / f"{log_path.stem}_{timestamp}{suffix}.log"

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter(
        CONSOLE_DEBUG_FORMAT if console_level <= logging.DEBUG else CONSOLE_FORMAT
    ))

    file_handler = RotatingFileHandler(
        session_log,
        mode='a',
        maxBytes=MAX_BYTES,
        backupCount=KEEP_SESSIONS,
        encoding='utf-8'
    )
    file_handler.setLevel(file_level)
    file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))

    root_logger.addHandler(console_handler)
    root_logger.addHandler(file_handler)

    logger.debug(
        f"Session {command or '-'}: console={logging.getLevelName(console_level)}, "
        f"file={session_log} ({logging.getLevelName(file_level)})"
    )
    return session_log
