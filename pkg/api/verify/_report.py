from __future__ import annotations

import dataclasses
import time
import typing as typ

from .. import errors

PASS = 'pass'
FAIL = 'fail'
SKIP = 'skip'
# Probe of a claim stated without proof; never affects the exit status.
OPEN = 'open'


@dataclasses.dataclass(frozen=True)
class Outcome:
    status: str
    counterexample: typ.Any = None
    reason: str = None


def passed() -> Outcome:
    return Outcome(PASS)


def failed(counterexample: typ.Any) -> Outcome:
    return Outcome(FAIL, counterexample=counterexample)


def skipped(reason: str) -> Outcome:
    return Outcome(SKIP, reason=reason)


def expect(condition: bool, counterexample: typ.Callable[[], typ.Any]) -> Outcome:
    """Pass if the condition holds, else fail with the lazily built counterexample."""
    return passed() if condition else failed(counterexample())


@dataclasses.dataclass(frozen=True)
class Check:
    name: str
    status: str
    counterexample: typ.Any = None
    millis: float = None
    reason: str = None

    def to_json(self) -> dict:
        data = {'name': self.name, 'status': self.status}
        if self.counterexample is not None:
            data['counterexample'] = self.counterexample
        if self.reason is not None:
            data['reason'] = self.reason
        data['millis'] = self.millis
        return data


def run_check(name: str, fn: typ.Callable[[], Outcome], timings: bool = False) -> Check:
    """Run a check and turn library errors into report entries.

    Cap and precondition errors skip the check, any other error fails it.

    :param name: The name of the check.
    :param fn: The check itself.
    :param timings: Whether to measure the run time.
    :return: The report entry.
    """
    start = time.perf_counter()
    try:
        outcome = fn()
    except (errors.CapExceeded, errors.PreconditionFailed) as e:
        outcome = skipped(str(e))
    except errors.SharingError as e:
        outcome = failed({'error': str(e)})
    millis = round((time.perf_counter() - start) * 1000, 3) if timings else None
    return Check(name, outcome.status, outcome.counterexample, millis, outcome.reason)


@dataclasses.dataclass
class Report:
    suite: str
    n: int
    seed: int
    checks: list[Check] = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Whether no check failed."""
        return all(c.status != FAIL for c in self.checks)

    def count(self, status: str) -> int:
        return sum(1 for c in self.checks if c.status == status)

    def to_json(self) -> dict:
        return {
            'suite': self.suite,
            'n': self.n,
            'seed': self.seed,
            'checks': [c.to_json() for c in self.checks],
        }

    def summary(self) -> str:
        return (f'{self.suite} n={self.n} seed={self.seed}: {self.count(PASS)} passed, {self.count(FAIL)} failed,'
                f' {self.count(SKIP)} skipped, {self.count(OPEN)} open')
