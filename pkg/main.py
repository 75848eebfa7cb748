import sys
import traceback

import config
from api import closures, errors, formats, lattice, operators as ops, pipeline as pl, terms, verify

_logger = pl.Logger('main')


def _image_summary(d: lattice.DomainImage, fmt: str) -> str:
    if fmt == formats.JSON:
        return formats.dumps(formats.elements_to_json(d.universe, d, d.label))
    return f'{d.label}: {len(d)} elements'


def _element(cfg: config.Config, key: str):
    return formats.parse_element(cfg.universe, cfg.options[key])


def cmd_eval(cfg: config.Config) -> tuple[str, int]:
    u = cfg.universe
    sh = _element(cfg, 'sh')
    sh2 = _element(cfg, 'sh2') if cfg.options.get('sh2') is not None else None
    subst = None
    if cfg.options.get('subst') is not None:
        subst = terms.parse_subst_lines(u, cfg.options['subst'])
        if not terms.is_idempotent(subst):
            _logger.warning(f'substitution {subst} is not idempotent')
    pipeline = pl.Pipeline(verbosity=cfg.verbosity)
    for i, operator in enumerate(cfg.operators):
        try:
            pipeline.then(ops.create_operator(operator.name, **operator.args))
        except errors.SharingError as e:
            raise type(e)(f'operator {operator.name!r} (#{i + 1}): {e}')
    result = pipeline.execute(sh, ops.Operands(sh2=sh2, subst=subst))
    return formats.format_element(result, cfg.format), 0


def cmd_closure(cfg: config.Config) -> tuple[str, int]:
    sh = _element(cfg, 'sh')
    cid = closures.parse_closure(cfg.universe, cfg.options['domain'])
    rho = closures.apply(cid, sh)
    if cfg.format == formats.JSON:
        return formats.dumps({
            'closure': str(cid),
            'result': formats.element_to_json(rho),
            'member': rho == sh,
        }), 0
    return f'{formats.format_element(rho)}\nmember: {"yes" if rho == sh else "no"}', 0


def cmd_enumerate(cfg: config.Config) -> tuple[str, int]:
    d = lattice.image_by_name(cfg.universe, cfg.options['domain'], cfg.force, cfg.jobs)
    return _image_summary(d, cfg.format), 0


def cmd_mi(cfg: config.Config) -> tuple[str, int]:
    u = cfg.universe
    domain, method = cfg.options['domain'], cfg.options['method']
    if method == 'formula':
        cid = closures.parse_closure(u, domain)
        if cid.kind == closures.ClosureKind.IDENTITY:
            k = u.n
        elif cid.kind == closures.ClosureKind.TSD:
            k = cid.k
        else:
            raise errors.SemanticError(f'the formula method only applies to dependency domains, not {cid}')
        elements, counts = lattice.mi_formula(u, k)
        label = str(cid)
    else:
        d = lattice.image_by_name(u, domain, cfg.force, cfg.jobs)
        elements = lattice.meet_irreducibles(d, method, cfg.jobs)
        counts = lattice.counts_of(d, method, cfg.jobs)
        label = d.label
    if cfg.format == formats.JSON:
        data = formats.elements_to_json(u, elements, f'mi({label})')
        data['counts'] = {'dAtoms': counts.dual_atoms, 'M': counts.m, 'MI': counts.mi}
        return formats.dumps(data), 0
    lines = [formats.format_element(sh) for sh in formats.sort_elements(elements)]
    return '\n'.join(lines + [str(counts)]), 0


def cmd_complement(cfg: config.Config) -> tuple[str, int]:
    u = cfg.universe
    reference = lattice.image_by_name(u, cfg.options['reference'], cfg.force, cfg.jobs)
    removed = lattice.image_by_name(u, cfg.options['remove'], cfg.force, cfg.jobs)
    return _image_summary(lattice.complement(reference, removed, jobs=cfg.jobs), cfg.format), 0


def cmd_product(cfg: config.Config) -> tuple[str, int]:
    u = cfg.universe
    left = lattice.image_by_name(u, cfg.options['left'], cfg.force, cfg.jobs)
    right = lattice.image_by_name(u, cfg.options['right'], cfg.force, cfg.jobs)
    return _image_summary(lattice.reduced_product(left, right), cfg.format), 0


def cmd_verify(cfg: config.Config) -> tuple[str, int]:
    u = cfg.universe
    trial_cfg = verify.TrialConfig(
        n=u.n,
        trials=cfg.options['trials'],
        seed=cfg.options['seed'],
        k=cfg.options['k'],
        names=None if cfg.numbered else u.names,
        jobs=cfg.jobs,
        force=cfg.force,
        timings=cfg.options['timings'],
    )
    report = verify.run_suite(cfg.options['suite'], trial_cfg, cfg.verbosity)
    if cfg.format == formats.JSON:
        output = formats.dumps(report.to_json(), pretty=True)
    else:
        lines = []
        for check in report.checks:
            line = f'{check.status.upper():4} {check.name}'
            if check.counterexample is not None:
                line += ' ' + formats.dumps(check.counterexample)
            if check.millis is not None:
                line += f' ({check.millis} ms)'
            lines.append(line)
        output = '\n'.join(lines + [report.summary()])
    code = 0 if report.ok else 1
    if (out := cfg.options['out']) is not None:
        try:
            out.write_text(output + '\n', encoding='utf8')
        except OSError as e:
            raise errors.SharingError(f'could not write report: {e}')
        return report.summary(), code
    return output, code


def cmd_witness(cfg: config.Config) -> tuple[str, int]:
    sh1, sh2 = _element(cfg, 'sh'), _element(cfg, 'sh2')
    w = verify.find_witness(sh1, sh2, cfg.options['k'])
    data = w.to_json(sh1)
    if cfg.format == formats.JSON:
        return formats.dumps(data), 0
    data['group'] = cfg.universe.format_group(w.group)
    data['tuple'] = cfg.universe.format_group(w.tuple)
    return '\n'.join(f'{k}: {v}' for k, v in data.items()), 0


_COMMANDS = {
    'eval': cmd_eval,
    'closure': cmd_closure,
    'enumerate': cmd_enumerate,
    'mi': cmd_mi,
    'complement': cmd_complement,
    'product': cmd_product,
    'verify': cmd_verify,
    'witness': cmd_witness,
}


def main(args: list[str] = None) -> int:
    """Run the CLI and return its exit code."""
    verbosity = pl.Logger.NONE
    try:
        cfg = config.parse_args(sys.argv[1:] if args is None else args)
        verbosity = cfg.verbosity
        _logger.level = verbosity
        output, code = _COMMANDS[cfg.command](cfg)
    except errors.SharingError as e:
        if verbosity >= pl.Logger.DEBUG:
            traceback.print_exc(file=sys.stderr)
        print('Error:', e, file=sys.stderr)
        return e.exit_code
    print(output)
    return code


if __name__ == '__main__':
    sys.exit(main())
