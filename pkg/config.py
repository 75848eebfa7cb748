import argparse
import dataclasses
import pathlib
import re
import typing as typ

from api import errors, formats, operators as ops, pipeline as pl, universe as unv, utils

_OPERATOR_CFG_REGEX = re.compile(r'(?P<name>\w+)(?::(?P<arg>.*)|\[(?P<params>(?:\w+=.*?)+(?:,(?:\w+=.*?)+)*)?])?')

COMMANDS = ('eval', 'closure', 'enumerate', 'mi', 'complement', 'product', 'verify', 'witness')


@dataclasses.dataclass(frozen=True)
class OperatorConfig:
    name: str
    args: dict[str, typ.Any] = None


@dataclasses.dataclass(frozen=True)
class Config:
    command: str
    universe: unv.VarUniverse
    format: str
    verbosity: int
    force: bool
    jobs: int
    # Values of the subcommand's options; `@path` arguments are already read.
    options: dict[str, typ.Any]
    operators: list[OperatorConfig] = dataclasses.field(default_factory=list)
    # Whether the universe was generated by --n rather than named.
    numbered: bool = False


def _parse_cli_operator(raw: str, ops_metadata: ops.OperatorsMetadata, index: int) -> OperatorConfig:
    if not (match := _OPERATOR_CFG_REGEX.fullmatch(raw)):
        raise errors.ParseError(f'invalid operator definition: {raw!r} (#{index})')
    op_name = match.group('name')
    if op_name not in ops_metadata:
        raise errors.ParseError(f'undefined operator: {op_name!r} (#{index})')
    op_metadata = ops_metadata[op_name]

    def cast_value(param_name: str, param_value: str) -> typ.Any:
        try:
            return op_metadata.args[param_name].type(param_value)
        except KeyError:
            raise errors.ParseError(f'invalid parameter {param_name!r} for operator {op_name!r} (#{index})')
        except ValueError:
            raise errors.ParseError(
                f'invalid value {param_value!r} for parameter {param_name!r} on operator {op_name!r} (#{index})')

    if (arg := match.group('arg')) is not None:
        if op_metadata.main_arg is None:
            raise errors.ParseError(f'operator {op_name!r} takes no argument (#{index})')
        return OperatorConfig(name=op_name, args={op_metadata.main_arg: cast_value(op_metadata.main_arg, arg)})

    def split_param(raw_param: str) -> list[str]:
        raw_param = raw_param.replace(r'\,', ',')
        if '=' not in raw_param:
            raise errors.ParseError(f'malformed parameter {raw_param!r} for operator {op_name!r} (#{index})')
        return raw_param.split('=', 1)

    raw_params = re.split(r'(?<!\\),', p) if (p := match.group('params')) else []
    return OperatorConfig(name=op_name, args={k: cast_value(k, v) for k, v in map(split_param, raw_params)})


def _operators_doc(ops_metadata: ops.OperatorsMetadata) -> str:
    doc = ('An operator to apply to the element, either `<operator>:<value>`'
           ' or `<operator>[<arg1>=<value1>,<arg2>=<value2>,…]`. May be repeated.\n'
           'Available operators:\n')
    for op in ops_metadata.values():
        doc += f'  {op.name}\t{op.doc}\n'
        for arg, metadata in op.args.items():
            doc += f'    {arg}: {metadata.type.__name__} = {metadata.default_value!r}\n'
            if metadata.doc:
                doc += f'      {metadata.doc}\n'
    # parser.parse_args(...) uses %-formatting on help strings
    return doc.replace('%', '%%')


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    universe = common.add_mutually_exclusive_group()
    universe.add_argument('--vars', metavar='NAMES', help='Comma-separated variables of interest, e.g. `x,y,z`.')
    universe.add_argument('--n', type=int, metavar='N', help='Use the variables v1, …, vN.')
    common.add_argument('--format', choices=formats.FORMATS, default=formats.TEXT, help='Output format.')
    common.add_argument('--force', action='store_true', help='Lift the enumeration cap of 4 variables.')
    common.add_argument('--jobs', type=int, default=1, metavar='N', help='Number of threads for enumerations.')
    common.add_argument('-v', '--verbosity', action='count', default=0,
                        help='Print applied operators (-v), intermediary results (-vv) and debug information (-vvv).')

    parser = argparse.ArgumentParser(
        description='Evaluates operators of the set-sharing domain SH and of its abstractions,'
                    ' and decomposes these domains.',
        formatter_class=argparse.RawTextHelpFormatter,
    )
    # noinspection PyProtectedMember
    parser._actions[0].help = 'Show this help message and exit.'
    sub = parser.add_subparsers(dest='command', required=True, metavar='COMMAND')

    def command(name: str, help_: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_, description=help_,
                              formatter_class=argparse.RawTextHelpFormatter)

    p = command('eval', 'Apply a pipeline of operators to an element.')
    p.add_argument('--sh', required=True, help='The element, e.g. `{x, xy}`, or @FILE.')
    p.add_argument('--sh2', help='The second element of binary operators, or @FILE.')
    p.add_argument('--subst', help='The substitution used by amgu, e.g. `{x -> f(y)}`, or @FILE.')
    p.add_argument('--op', dest='operators', action='append', required=True, metavar='OPERATOR',
                   help=_operators_doc(ops.get_operators_metadata()))

    p = command('closure', 'Apply a closure operator to an element and tell whether it is a fixpoint.')
    p.add_argument('--sh', required=True, help='The element, or @FILE.')
    p.add_argument('--domain', required=True, help='The closure: con, ps, ts:<k>, def, psd, tsd:<k>, ps-prime, sh.')

    p = command('enumerate', 'Enumerate the image of a closure or a named sub-domain.')
    p.add_argument('--domain', default='sh', help='The domain name.')

    p = command('mi', 'Print the meet-irreducible elements of a domain.')
    p.add_argument('--domain', required=True, help='The domain name.')
    p.add_argument('--method', choices=('covers', 'bruteforce', 'formula'), default='covers',
                   help='`formula` builds them without enumeration; dependency domains only.')

    p = command('complement', 'Complement an abstraction within a reference domain.')
    p.add_argument('--reference', required=True, help='The domain to decompose.')
    p.add_argument('--remove', required=True, help='The abstraction to remove.')

    p = command('product', 'Compute the reduced product of two domains.')
    p.add_argument('--left', required=True, help='The first domain.')
    p.add_argument('--right', required=True, help='The second domain.')

    p = command('verify', 'Run verification suites.')
    p.add_argument('--suite', default='all', help='One of ops, closures, mi, complements, decomposition,'
                                                  ' quotient, all.')
    p.add_argument('--trials', type=int, default=100, help='Number of random trials per sampled check.')
    p.add_argument('--seed', type=int, default=0, help='The random seed.')
    p.add_argument('-k', type=int, help='Only check this closure index.')
    p.add_argument('--out', type=pathlib.Path, metavar='FILE', help='Write the report to this file.')
    p.add_argument('--timings', action='store_true', help='Report the run time of each check.')

    p = command('witness', 'Find a context telling apart two elements with different TSD_k closures.')
    p.add_argument('--sh', required=True, help='The first element, or @FILE.')
    p.add_argument('--sh2', required=True, help='The second element, or @FILE.')
    p.add_argument('-k', type=int, required=True, help='The index of the dependency domain.')
    return parser


def _resolve_universe(parsed_args: argparse.Namespace, headers: list[list[str]]) -> tuple[unv.VarUniverse, bool]:
    if parsed_args.n is not None:
        if headers:
            raise errors.UniverseMismatch('--n cannot be used with files declaring their variables')
        return unv.numbered_universe(parsed_args.n), True
    declared = [unv.make_universe(names) for names in headers]
    if parsed_args.vars is not None:
        u = unv.parse_vars(parsed_args.vars)
    elif declared:
        u = declared[0]
    else:
        raise errors.ParseError('either --vars or --n is required')
    for other in declared:
        if other != u:
            raise errors.UniverseMismatch(f'universes differ: {u} vs {other}')
    return u, False


def parse_args(args: list[str]) -> Config:
    """Parses the given CLI arguments.

    :param args: The CLI arguments.
    :return: A Config object for the arguments.
    :raises SharingError: If arguments are invalid.
    """
    parsed_args = _build_parser().parse_args(args)
    options = {k: v for k, v in vars(parsed_args).items()
               if k not in ('command', 'vars', 'n', 'format', 'force', 'jobs', 'verbosity', 'operators')}
    headers = []
    for key in ('sh', 'sh2', 'subst'):
        if options.get(key) is not None:
            options[key], names = utils.load_argument(options[key])
            if names is not None:
                headers.append(names)
    u, numbered = _resolve_universe(parsed_args, headers)
    if parsed_args.jobs < 1:
        raise errors.SemanticError(f'number of jobs must be positive, got {parsed_args.jobs}')
    operators = []
    if parsed_args.command == 'eval':
        ops_metadata = ops.get_operators_metadata()
        operators = [_parse_cli_operator(op, ops_metadata, i + 1) for i, op in enumerate(parsed_args.operators)]
    return Config(
        command=parsed_args.command,
        universe=u,
        format=parsed_args.format,
        verbosity=min(parsed_args.verbosity, pl.Logger.DEBUG),
        force=parsed_args.force,
        jobs=parsed_args.jobs,
        options=options,
        operators=operators,
        numbered=numbered,
    )
