"""Tolerance schedule presets and the one-value-per-line schedule file format."""
from __future__ import annotations

import os
from pathlib import Path

from .errors import ScheduleParseError
from .samplers.particles import ToleranceSchedule

# (tolerance, iterations) blocks of the 100-iteration experiment schedule
_PAPER_2007 = ((10.0, 10), (5.0, 10), (2.0, 10), (1.0, 10), (0.5, 10),
               (0.2, 10), (0.1, 10), (0.05, 10), (0.02, 10), (0.01, 10))

PRESETS = {
    "paper-2007": tuple(e for e, k in _PAPER_2007 for _ in range(k)),
}


def parse_schedule(text: str) -> ToleranceSchedule:
    eps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            value = float(line)
        except ValueError:
            raise ScheduleParseError(f"not a number: {line!r}", line=lineno) from None
        if not value > 0:
            raise ScheduleParseError(f"tolerance must be > 0, got {line}", line=lineno)
        eps.append(value)
    if not eps:
        raise ScheduleParseError("schedule file contains no tolerances")
    return ToleranceSchedule(tuple(eps))


def format_schedule(schedule: ToleranceSchedule) -> str:
    return "".join(f"{e!r}\n" for e in schedule)


def load_schedule(source) -> ToleranceSchedule:
    """Return a preset by name, otherwise parse ``source`` as a schedule file."""
    if isinstance(source, ToleranceSchedule):
        return source
    name = os.fspath(source)
    if name in PRESETS:
        return ToleranceSchedule(PRESETS[name])
    path = Path(name)
    if not path.is_file():
        raise ScheduleParseError(
            f"unknown schedule preset or missing file: {name!r} "
            f"(presets: {', '.join(sorted(PRESETS))})"
        )
    return parse_schedule(path.read_text(encoding="utf-8"))
