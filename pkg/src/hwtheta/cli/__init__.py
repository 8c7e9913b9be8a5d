from .corpus import corpus_run
from .main import main
from .runner import Report, run
from .session import (Session, SessionSyntaxError, UnknownSymbol, parse_session,
                      print_session)

__all__ = ["Report", "Session", "SessionSyntaxError", "UnknownSymbol", "corpus_run",
           "main", "parse_session", "print_session", "run"]
