"""Text and JSON codecs for elements of SH and for sets of elements.

Text form, available when every variable name is a single character: `{x, xy, xyz}`, `{}` for bottom.
Groups may also be written with `+`-separated names: `{v1+v2, v3}`.
JSON form: an array of groups, each an array of variable names, e.g. `[["x"],["x","y"]]`.
Element sets (domain images, meet-irreducibles, …) are written `{"vars": […], "label": …, "elements": […]}`.
"""
from __future__ import annotations

import json
import pathlib
import typing as typ

from . import errors, shcore, utils
from .shcore import ShElement
from .universe import VarUniverse, make_universe

TEXT = 'text'
JSON = 'json'
FORMATS = (TEXT, JSON)


def dumps(o: typ.Any, pretty: bool = False) -> str:
    """Serialize to JSON deterministically."""
    if pretty:
        return json.dumps(o, indent=2, ensure_ascii=False)
    return json.dumps(o, separators=(',', ':'), ensure_ascii=False)


def element_to_json(sh: ShElement) -> list[list[str]]:
    return [sh.universe.names_of(g) for g in sh]


def element_from_json(u: VarUniverse, data: typ.Any) -> ShElement:
    """Decode the JSON form of an element.

    :raises ParseError: If the data is not an array of arrays of names.
    :raises SemanticError: If a group is empty or a name unknown.
    """
    if not isinstance(data, list) or not all(isinstance(g, list) and all(isinstance(v, str) for v in g)
                                              for g in data):
        raise errors.ParseError('expected an array of arrays of variable names')
    return shcore.make_element(u, data)


def parse_element(u: VarUniverse, text: str) -> ShElement:
    """Parse an element written in text or JSON form.

    :param u: The universe.
    :param text: The text to parse.
    :return: The element.
    :raises ParseError: On syntax errors.
    :raises UnknownVariable: If a group mentions a variable outside the universe.
    """
    stripped = text.strip()
    if stripped.startswith('['):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise errors.ParseError(f'invalid JSON: {e.msg}', column=e.colno - 1)
        return element_from_json(u, data)
    offset = len(text) - len(text.lstrip())
    if not stripped.startswith('{'):
        raise errors.ParseError("expected '{'", column=offset)
    if not stripped.endswith('}'):
        raise errors.ParseError("expected '}'", column=offset + len(stripped))
    body = stripped[1:-1]
    if not body.strip():
        return shcore.bottom(u)
    groups = []
    column = offset + 1
    for part in body.split(','):
        if not part.strip():
            raise errors.ParseError('empty sharing group', column=column)
        groups.append(u.parse_var_set(part))
        column += len(part) + 1
    return shcore.make_element(u, groups)


def format_element(sh: ShElement, fmt: str = TEXT) -> str:
    """Print an element canonically; the text form falls back to JSON for multi-character names."""
    if fmt == TEXT and sh.universe.single_char:
        return str(sh)
    return dumps(element_to_json(sh))


def elements_to_json(u: VarUniverse, elements: typ.Iterable[ShElement], label: str = None) -> dict:
    """Encode a set of elements over a universe, sorted canonically."""
    return {
        'vars': list(u.names),
        'label': label,
        'elements': [element_to_json(sh) for sh in sort_elements(elements)],
    }


def elements_from_json(data: typ.Any) -> tuple[VarUniverse, list[ShElement], str | None]:
    """Decode a set of elements.

    :return: A tuple (universe, elements, label).
    :raises ParseError: If a key is missing.
    """
    try:
        u = make_universe(data['vars'])
        return u, [element_from_json(u, e) for e in data['elements']], data.get('label')
    except (KeyError, TypeError) as e:
        raise errors.ParseError(f'malformed element set: {e}')


def load_elements(path: pathlib.Path) -> tuple[VarUniverse, list[ShElement], str | None]:
    """Read a set of elements from a JSON file, such as a golden file."""
    try:
        with path.open(mode='r', encoding='utf8') as f:
            return elements_from_json(json.load(f))
    except OSError as e:
        raise errors.ParseError(f'could not open file: {e}')
    except json.JSONDecodeError as e:
        raise errors.ParseError(f'invalid JSON in {path}: {e.msg}', column=e.colno - 1)


def sort_elements(elements: typ.Iterable[ShElement]) -> list[ShElement]:
    """Canonical order of elements: number of groups, then their canonical group lists."""
    return sorted(elements, key=lambda sh: (len(sh), [utils.group_key(g) for g in sh]))
