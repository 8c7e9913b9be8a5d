"""Regression corpus: ``<name>.session`` files paired with ``<name>.expected.json``.

An expectation file is a list of ``{"command": "<text>", "expect": {...}}``;
the command text picks the first result with that command line, and every
key in ``expect`` must match the result exactly.
"""
import json
from dataclasses import dataclass
from pathlib import Path

from .runner import run
from .session import parse_session, print_statement


class CorpusError(Exception):
    pass


@dataclass
class CorpusRow:
    session: str
    command: str
    key: str
    expected: object
    actual: object

    @property
    def passed(self):
        return self.expected == self.actual

    @property
    def diff(self):
        if self.passed:
            return ""
        return "%s: %s [%s] expected %r, got %r" % (self.session, self.command, self.key,
                                                   self.expected, self.actual)


def default_corpus_dir():
    return Path(__file__).resolve().parent.parent / "corpus"


def _lookup(result, key):
    cur = result
    for part in key.split("."):
        if isinstance(cur, dict) and part in cur:
            cur = cur[part]
        else:
            return "<missing>"
    return cur


def run_session_file(path, max_index=12):
    text = Path(path).read_text(encoding="utf-8")
    session = parse_session(text)
    report = run(session, max_index=max_index)
    return session, report


def check_session(path, expectations, max_index=12):
    session, report = run_session_file(path, max_index)
    by_text = {}
    for cmd, res in zip(session.commands, report.results):
        by_text.setdefault(print_statement(cmd), res)
    rows = []
    for item in expectations:
        res = by_text.get(item["command"])
        for key, want in item["expect"].items():
            got = "<no such command>" if res is None else _lookup(res, key)
            rows.append(CorpusRow(Path(path).stem, item["command"], key, want, got))
    return rows


def corpus_run(directory=None, max_index=12):
    """Run every session in the corpus; returns ``(all_passed, rows)``."""
    directory = Path(directory) if directory else default_corpus_dir()
    sessions = sorted(directory.glob("*.session")) if directory.is_dir() else []
    if not sessions:
        raise CorpusError("no corpus found in %s" % directory)
    rows = []
    for s in sessions:
        exp = s.with_suffix(".expected.json")
        expectations = json.loads(exp.read_text(encoding="utf-8")) if exp.exists() else []
        rows.extend(check_session(s, expectations, max_index))
    return all(r.passed for r in rows), rows


def format_rows(rows):
    lines = []
    for r in rows:
        tag = "PASS" if r.passed else "FAIL"
        line = "%s  %-12s %-28s %-24s" % (tag, r.session, r.command, r.key)
        if not r.passed:
            line += " expected %r, got %r" % (r.expected, r.actual)
        lines.append(line.rstrip())
    n_ok = sum(r.passed for r in rows)
    lines.append("%d/%d expectations passed" % (n_ok, len(rows)))
    return "\n".join(lines)
