"""Shared record of acceptance verdicts, printed at the end of the pytest run."""

LINES: list[str] = []
