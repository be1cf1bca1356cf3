"""Verification reports and the small fan-out helper the sweeps share."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")

JSON_KEYS = ("identity", "parameters", "terms_checked", "failures", "elapsed_ms", "convention_notes")


@dataclass
class VerificationReport:
    identity: str
    parameters: dict = field(default_factory=dict)
    terms_checked: int = 0
    failures: list = field(default_factory=list)
    elapsed_ms: float = 0.0
    convention_notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, index: str, lhs: str = "", rhs: str = "") -> None:
        self.failures.append({"index": str(index), "lhs": str(lhs), "rhs": str(rhs)})

    def note(self, text: str) -> None:
        if text not in self.convention_notes:
            self.convention_notes.append(text)

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        self.terms_checked += other.terms_checked
        for f in other.failures:
            self.failures.append({**f, "index": prefix + f["index"]})
        for n in other.convention_notes:
            self.note(n)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "parameters": self.parameters,
            "terms_checked": self.terms_checked,
            "failures": self.failures,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "convention_notes": self.convention_notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=False)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        line = (f"[{status}] {self.identity} ({params}): {self.terms_checked} terms, "
                f"{len(self.failures)} failures, {self.elapsed_ms:.0f} ms")
        for f in self.failures[:5]:
            line += f"\n    {f['index']}: {f['lhs']} != {f['rhs']}"
        if len(self.failures) > 5:
            line += f"\n    ... {len(self.failures) - 5} more"
        return line


@contextmanager
def timed(report: VerificationReport) -> Iterator[VerificationReport]:
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = (time.perf_counter() - start) * 1000.0


def default_threads() -> int:
    env = os.environ.get("NCJACOBI_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """Order-preserving map, optionally across worker threads."""
    items = list(items)
    threads = threads or default_threads()
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
