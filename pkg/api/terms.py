"""First-order terms and substitutions over a universe of variables.

Grammar::

    Term    ::= Ident | Ident '(' Term (',' Term)* ')'
    Subst   ::= '{' '}' | '{' Binding (',' Binding)* '}'
    Binding ::= Var '->' Term

An identifier that names a universe variable is a variable, any other identifier is a functor.
"""
from __future__ import annotations

import dataclasses
import re
import typing as typ

from . import errors
from .universe import VarUniverse

_IDENT_REGEX = re.compile(r'[A-Za-z][A-Za-z0-9_]*')


@dataclasses.dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclasses.dataclass(frozen=True)
class Compound:
    """A functor applied to arguments. Constants are compounds without arguments."""
    functor: str
    args: tuple[Term, ...] = ()

    def __str__(self):
        if not self.args:
            return self.functor
        return f'{self.functor}({", ".join(map(str, self.args))})'


Term = Var | Compound


@dataclasses.dataclass(frozen=True)
class Binding:
    lhs: str
    rhs: Term

    def __post_init__(self):
        if self.rhs == Var(self.lhs):
            raise errors.SelfBinding(f'binding {self.lhs} -> {self.lhs} binds a variable to itself')

    def __str__(self):
        return f'{self.lhs} -> {self.rhs}'


@dataclasses.dataclass(frozen=True)
class Substitution:
    """An ordered list of bindings with pairwise distinct left-hand sides."""
    bindings: tuple[Binding, ...] = ()

    def __post_init__(self):
        seen = set()
        for binding in self.bindings:
            if binding.lhs in seen:
                raise errors.DuplicateBinding(f'variable {binding.lhs!r} is bound twice')
            seen.add(binding.lhs)

    def __len__(self):
        return len(self.bindings)

    def __iter__(self) -> typ.Iterator[Binding]:
        return iter(self.bindings)

    def domain(self) -> frozenset[str]:
        return frozenset(b.lhs for b in self.bindings)

    def apply(self, t: Term) -> Term:
        """Apply this substitution once to a term."""
        if isinstance(t, Var):
            for binding in self.bindings:
                if binding.lhs == t.name:
                    return binding.rhs
            return t
        return Compound(t.functor, tuple(self.apply(a) for a in t.args))

    def lower(self, u: VarUniverse) -> list[tuple[int, int]]:
        """Lower each binding x -> t to the pair (index of x, mask of vars(t)).

        :param u: The universe the variables belong to.
        :return: The lowered bindings, in stored order.
        :raises UnknownVariable: If a variable is not in the universe.
        """
        return [(u.index(b.lhs), u.mask_of(term_vars(b.rhs))) for b in self.bindings]

    def __str__(self):
        return '{' + ', '.join(map(str, self.bindings)) + '}'


def term_vars(t: Term) -> frozenset[str]:
    """Return the set of variables occurring in a term."""
    if isinstance(t, Var):
        return frozenset((t.name,))
    result = frozenset()
    for arg in t.args:
        result |= term_vars(arg)
    return result


def is_idempotent(s: Substitution) -> bool:
    """Tell whether applying the substitution twice equals applying it once.

    For each binding x -> t this compares xσσ = tσ with xσ = t.
    """
    return all(s.apply(b.rhs) == b.rhs for b in s.bindings)


class _Parser:
    """Recursive-descent parser over a single string; columns are 0-based."""

    def __init__(self, u: VarUniverse, text: str):
        self._u = u
        self._text = text
        self._pos = 0

    def error(self, message: str) -> errors.ParseError:
        return errors.ParseError(message, column=self._pos)

    def skip_ws(self):
        while self._pos < len(self._text) and self._text[self._pos].isspace():
            self._pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self._pos >= len(self._text)

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self._text.startswith(token, self._pos)

    def expect(self, token: str):
        if not self.peek(token):
            found = self._text[self._pos:self._pos + 1] or 'end of input'
            raise self.error(f'expected {token!r}, found {found!r}')
        self._pos += len(token)

    def ident(self) -> str:
        self.skip_ws()
        if match := _IDENT_REGEX.match(self._text, self._pos):
            self._pos = match.end()
            return match.group()
        raise self.error('expected identifier')

    def term(self) -> Term:
        name = self.ident()
        if name in self._u.names:
            if self.peek('('):
                raise self.error(f'variable {name!r} cannot be used as a functor')
            return Var(name)
        if not self.peek('('):
            return Compound(name)
        self.expect('(')
        if self.peek(')'):
            raise self.error(f'functor {name!r} applied to no arguments')
        args = [self.term()]
        while self.peek(','):
            self.expect(',')
            args.append(self.term())
        self.expect(')')
        return Compound(name, tuple(args))

    def binding(self) -> Binding:
        self.skip_ws()
        lhs = self.ident()
        if lhs not in self._u.names:
            raise errors.UnknownVariable(f'left-hand side {lhs!r} is not a variable of interest')
        self.expect('->')
        return Binding(lhs, self.term())

    def end(self):
        if not self.at_end():
            raise self.error(f'unexpected trailing input {self._text[self._pos:]!r}')


def parse_term(u: VarUniverse, text: str) -> Term:
    """Parse a term.

    :param u: The universe; identifiers naming its variables are variables.
    :param text: The text to parse.
    :return: The term.
    :raises ParseError: On syntax errors, with the column of the error.
    """
    if not text.strip():
        raise errors.ParseError('empty term', column=0)
    parser = _Parser(u, text)
    t = parser.term()
    parser.end()
    return t


def parse_subst(u: VarUniverse, text: str) -> Substitution:
    """Parse a substitution written `{x -> t, …}`; bindings keep their textual order.

    :raises ParseError: On syntax errors.
    :raises SelfBinding: For a binding x -> x.
    :raises DuplicateBinding: If a variable is bound twice.
    :raises UnknownVariable: If a left-hand side is not a variable of the universe.
    """
    parser = _Parser(u, text)
    parser.expect('{')
    bindings = []
    if not parser.peek('}'):
        bindings.append(parser.binding())
        while parser.peek(','):
            parser.expect(',')
            bindings.append(parser.binding())
    parser.expect('}')
    parser.end()
    return Substitution(tuple(bindings))


def parse_subst_lines(u: VarUniverse, text: str) -> Substitution:
    """Parse a substitution written one binding per line between `subst:` marker lines.

    Text without any marker is parsed with `parse_subst`.
    """
    lines = text.splitlines()
    if not any(line.strip() == 'subst:' for line in lines):
        return parse_subst(u, text)
    bindings = []
    inside = False
    for line in lines:
        stripped = line.strip()
        if stripped == 'subst:':
            if inside:
                break
            inside = True
            continue
        if inside and stripped:
            parser = _Parser(u, stripped)
            bindings.append(parser.binding())
            parser.end()
    return Substitution(tuple(bindings))


def ground(variables: typ.Iterable[str], constant: str) -> Substitution:
    """Build the substitution binding each of the given variables to a constant."""
    return Substitution(tuple(Binding(x, Compound(constant)) for x in variables))
