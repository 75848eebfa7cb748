"""Splits reST docstrings of operators into a summary and per-parameter descriptions.

The registry uses it to document `eval --op` in the CLI help.
"""

import dataclasses
import inspect
import re

_FIELD_REGEX = re.compile(r'^:(?:param|returns?|raises)\b', re.M)
_PARAM_REGEX = re.compile(r'^:param (?P<name>\w+): (?P<doc>.*?)(?=^:|\Z)', re.S | re.M)
_RETURNS_REGEX = re.compile(r'^:returns?: (?P<doc>.*?)(?=^:|\Z)', re.S | re.M)


@dataclasses.dataclass
class DocString:
    short_description: str = ''
    long_description: str = ''
    params: dict[str, str] = dataclasses.field(default_factory=dict)
    returns: str = ''


def _join_lines(text: str) -> str:
    return ' '.join(line.strip() for line in text.strip().splitlines())


def parse_docstring(docstring: str | None) -> DocString:
    """Parse a docstring into its components."""
    if not docstring:
        return DocString()
    docstring = inspect.cleandoc(docstring)
    short, _, rest = docstring.partition('\n')
    fields = ''
    if match := _FIELD_REGEX.search(rest):
        rest, fields = rest[:match.start()], rest[match.start():]
    returns = _RETURNS_REGEX.search(fields)
    return DocString(
        short_description=short.strip(),
        long_description=rest.strip(),
        params={name: _join_lines(doc) for name, doc in _PARAM_REGEX.findall(fields)},
        returns=_join_lines(returns.group('doc')) if returns else '',
    )
