from __future__ import annotations

import sys
import threading
import typing as typ

from . import shcore
from .operators import _core


class Logger:
    NONE = 0
    OPERATIONS = 1
    INTERMEDIARY_RESULTS = 2
    DEBUG = 3

    def __init__(self, name: str, level: int = NONE):
        self._name = name
        self._level = level

    @property
    def level(self) -> int:
        return self._level

    @level.setter
    def level(self, level: int):
        self._level = level

    def print_operation(self, s: str):
        if self._level >= self.OPERATIONS:
            self._print(f'-> {s}')

    def print_intermediary_result(self, s: str):
        if self._level >= self.INTERMEDIARY_RESULTS:
            self._print('value: ' + s)

    def debug(self, o):
        if self._level >= self.DEBUG:
            self._print(o, prefix='[DEBUG]')

    def warning(self, o):
        self._print(o, prefix='[WARNING]')

    def _print(self, o, prefix: str = ''):
        # stdout carries results only
        print(f'[{self._name}]' + prefix, o, file=sys.stderr)


class Pipeline:
    """Pipelines represent a sequence of operators to apply to an element of SH.
    Each operator takes in the element returned by the operator preceding it.
    """

    def __init__(self, name: str = 'main', verbosity: int = Logger.NONE):
        """Creates a pipeline.

        :param name: Name of this pipeline.
        :param verbosity: The verbosity level.
        """
        self._name = name
        self._operators: list[_core.Operator] = []
        self._logger = Logger(name, verbosity)

    @property
    def name(self) -> str:
        return self._name

    def then(self, op: _core.Operator) -> Pipeline:
        """Appends an operator to this pipeline.

        :param op: The operator to append.
        :return: This pipeline.
        """
        self._operators.append(op)
        return self

    def execute(self, sh: shcore.ShElement, operands: _core.Operands = None) -> shcore.ShElement:
        """Executes this pipeline on the given element.
        If this pipeline is empty, the passed element is returned as is.

        :param sh: The element to execute this pipeline on.
        :param operands: The extra operands (second element, substitution) available to the operators.
        :return: The resulting element.
        """
        operands = operands or _core.Operands()
        buffer = sh
        for op in self._operators:
            self._logger.print_intermediary_result(str(buffer))
            self._logger.print_operation(op)
            buffer = op.apply(buffer, operands)
        return buffer


def run_parallel(target: typ.Callable[[typ.Any], typ.Any], chunks: typ.Sequence[typ.Any], jobs: int = 1) -> list:
    """Applies a function to each chunk, possibly in separate threads.
    Results are guaranted to be returned in the same order as the chunks.

    :param target: The function to apply.
    :param chunks: The arguments, one per call.
    :param jobs: The maximal number of threads running at the same time; 1 runs everything in the calling thread.
    :return: The list of results.
    """
    if jobs <= 1:
        return [target(chunk) for chunk in chunks]
    results = []
    for start in range(0, len(chunks), jobs):
        threads = [_ThreadWithReturnValue(target=target, arg=chunk) for chunk in chunks[start:start + jobs]]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        for thread in threads:
            if thread.error is not None:
                raise thread.error
            results.append(thread.result)
    return results


class _ThreadWithReturnValue(threading.Thread):
    """Adds a way to get the result of a thread’s target."""

    def __init__(self, target: typ.Callable[[typ.Any], typ.Any], arg: typ.Any):
        super().__init__(target=target, args=(arg,))
        self._result = None
        self._error = None

    @property
    def result(self) -> typ.Any:
        return self._result

    @property
    def error(self) -> BaseException | None:
        return self._error

    def run(self):
        try:
            # noinspection PyUnresolvedReferences
            self._result = self._target(*self._args)
        except BaseException as e:
            self._error = e
