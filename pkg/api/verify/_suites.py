from __future__ import annotations

import pathlib
import typing as typ

from . import _checks as chk
from ._report import Outcome, Report, SKIP, run_check, skipped
from ._trials import TrialConfig
from .. import closures, errors, formats, lattice
from ..pipeline import Logger

SUITES = ('ops', 'closures', 'mi', 'complements', 'decomposition', 'quotient')
ALL = 'all'
GOLDEN_DIR = pathlib.Path(__file__).resolve().parents[2] / 'golden'

CheckList = list[tuple[str, typ.Callable[[], Outcome]]]


def _needs(cfg: TrialConfig, min_n: int, fn: typ.Callable[[], Outcome]) -> typ.Callable[[], Outcome]:
    if cfg.n < min_n:
        return lambda: skipped(f'requires at least {min_n} variables')
    return fn


def _ops(cfg: TrialConfig) -> CheckList:
    return [
        ('bin_laws', lambda: chk.check_bin_laws(cfg)),
        ('self_union_chain', lambda: chk.check_self_union_chain(cfg)),
        ('star_closure', lambda: chk.check_star_closure(cfg)),
        ('star_emi', lambda: chk.check_star_emi(cfg)),
        ('rel_proj', lambda: chk.check_rel_proj(cfg)),
        ('amgu_order', lambda: chk.check_amgu_order(cfg)),
        ('ground_bindings', lambda: chk.check_ground_bindings(cfg)),
    ]


def _closures(cfg: TrialConfig) -> CheckList:
    checks = []
    for k in cfg.ks:
        for cid in (chk.ts(k), chk.tsd(k)):
            checks.append((f'closure_laws[{cid}]', lambda cid=cid: chk.check_closure_laws(cfg, cid)))
        checks += [
            (f'rho_emi[{k}]', lambda k=k: chk.check_rho_emi(cfg, k)),
            (f'additivity[{k}]', lambda k=k: chk.check_additivity(cfg, k)),
            (f'ts_tuples[{k}]', lambda k=k: chk.check_ts_tuples(cfg, k)),
            (f'ts_in_tsd[{k},{k}]', lambda k=k: chk.check_ts_in_tsd(cfg, k, k)),
        ]
        for j in range(1, k):
            checks += [
                (f'ts_collapse[{j},{k}]', lambda j=j, k=k: chk.check_ts_collapse(cfg, j, k)),
                (f'ts_refinement[{j},{k}]', lambda j=j, k=k: chk.probe_ts_refinement(cfg, j, k)),
                (f'tsd_chain[{j},{k}]', lambda j=j, k=k: chk.check_tsd_chain(cfg, j, k)),
                (f'ts_in_tsd[{j},{k}]', lambda j=j, k=k: chk.check_ts_in_tsd(cfg, j, k)),
            ]
    checks += [
        ('def_is_star', lambda: chk.check_def_is_star(cfg)),
        ('tsd_n_is_identity', lambda: chk.check_tsd_n_is_identity(cfg)),
        ('ps_prime_product', _needs(cfg, 2, lambda: chk.check_ps_prime(cfg))),
        ('psd_square', _needs(cfg, 2, lambda: chk.check_self_union(cfg, 2))),
    ]
    return checks


def _golden(cfg: TrialConfig, file_name: str, masks: typ.Callable[[], frozenset[int]]) -> typ.Callable[[], Outcome]:
    def run():
        if cfg.n != 3:
            return skipped('golden files describe 3 variables')
        path = GOLDEN_DIR / file_name
        if not path.exists():
            return skipped(f'missing golden file {path.name}')
        _, expected, _ = formats.load_elements(path)
        return chk.check_golden(cfg, masks, expected)

    return run


def _mi(cfg: TrialConfig) -> CheckList:
    u = cfg.universe

    def image(cid):
        return lattice.image_of(u, cid, cfg.force, cfg.jobs)

    def mi(cid):
        return lambda: lattice.meet_irreducible_masks(image(cid), 'covers', cfg.jobs)

    checks = [
        ('methods_agree[sh]', lambda: chk.check_mi_methods(cfg, image(closures.IDENTITY))),
        ('meet_generated[sh]', lambda: chk.check_meet_generated(cfg, image(closures.IDENTITY))),
        ('dual_atomistic[sh]', lambda: chk.check_dual_atoms(cfg, image(closures.IDENTITY), True)),
        ('ts_n', lambda: chk.check_ts_n(cfg)),
    ]
    for k in cfg.ks:
        for cid, atomistic in ((chk.ts(k), True), (chk.tsd(k), False)):
            checks += [
                (f'methods_agree[{cid}]', lambda cid=cid: chk.check_mi_methods(cfg, image(cid))),
                (f'meet_generated[{cid}]', lambda cid=cid: chk.check_meet_generated(cfg, image(cid))),
                (f'dual_atoms[{cid}]', lambda cid=cid, a=atomistic: chk.check_dual_atoms(cfg, image(cid), a)),
            ]
        checks += [
            (f'formula[{k}]', lambda k=k: chk.check_mi_formula(cfg, k)),
            (f'counts[{k}]', lambda k=k: chk.check_counts(cfg, k)),
            (f'ts_atoms_in_tsd[{k}]', lambda k=k: chk.check_ts_atoms_in_tsd(cfg, k)),
        ]
        for j in range(1, k):
            checks += [
                (f'mi_tsd_cap_ts[{j},{k}]', lambda j=j, k=k: chk.check_mi_tsd_cap_ts(cfg, j, k)),
                (f'mi_tsd_cap_tsd[{j},{k}]', lambda j=j, k=k: chk.check_mi_tsd_cap_tsd(cfg, j, k)),
            ]
    checks += [
        ('golden_dual_atoms_sh', _golden(cfg, 'dual_atoms_sh_n3.json',
                                         lambda: lattice.dual_atom_masks(image(closures.IDENTITY)))),
        ('golden_mi_def', _golden(cfg, 'mi_def_n3.json', mi(closures.DEF))),
        ('golden_mi_psd', _golden(cfg, 'mi_psd_n3.json', mi(closures.PSD))),
    ]
    return checks


def _complements(cfg: TrialConfig) -> CheckList:
    n = cfg.n

    def identity(reference, removed, expected=None, differs=False):
        return lambda: chk.check_complement(cfg, reference, removed, expected, differs)

    checks = [(f'sh~ts:{j}', identity('sh', f'ts:{j}')) for j in range(1, n)]
    checks.append((f'sh~ts:{n}', identity('sh', f'ts:{n}', differs=True)))
    checks += [(f'sh~tsd:{j}', identity('sh', f'tsd:{j}', f'sh_plus:{j}')) for j in range(1, n)]
    for k in cfg.ks:
        checks += [
            (f'tsd:{k}~ts:{k}', identity(f'tsd:{k}', f'ts:{k}', f'tsd_oplus:{k}')),
            (f'tsd:{k}~(tsd:{k}~ts:{k})', lambda k=k: chk.check_double_complement(cfg, k)),
        ]
        for j in range(1, k):
            checks += [
                (f'tsd:{k}~ts:{j}', identity(f'tsd:{k}', f'ts:{j}')),
                (f'tsd:{k}~tsd:{j}', identity(f'tsd:{k}', f'tsd:{j}', f'tsd_plus:{k}:{j}')),
            ]
    checks += [
        ('def~con', identity('def', 'con', 'def_oplus')),
        ('sh~def', identity('sh', 'def', 'sh_plus_def')),
        ('psd~ps', _needs(cfg, 2, identity('psd', 'ps', 'psd_oplus'))),
        ('psd~con', _needs(cfg, 2, identity('psd', 'con'))),
        ('psd~def', _needs(cfg, 2, identity('psd', 'def', 'psd_plus'))),
        ('sh~psd', _needs(cfg, 2, identity('sh', 'psd', 'sh_plus_psd'))),
        ('psd_plus~ps', _needs(cfg, 2, identity('psd_plus', 'ps', 'psd_ddagger'))),
        ('psd_plus~psd_ddagger', _needs(cfg, 2, identity('psd_plus', 'psd_ddagger', 'ps'))),
        ('sh~sh_plus_def', _needs(cfg, 2, identity('sh', 'sh_plus_def', 'def_minus'))),
        ('sh_plus_def~ps', _needs(cfg, 3, identity('sh_plus_def', 'ps'))),
        ('sh_plus_def~ps-prime', _needs(cfg, 2, identity('sh_plus_def', 'ps-prime', 'sh_plus_def_oplus'))),
        ('sh_plus_def~ts_n', _needs(cfg, 2, identity('sh_plus_def', f'ts:{n}', 'sh_plus_def_oplus'))),
    ]
    return checks


def _decomposition(cfg: TrialConfig) -> CheckList:
    checks = [
        ('con*def_oplus', lambda: chk.check_product(cfg, ['con', 'def_oplus'], 'def')),
        ('ps*psd_oplus', _needs(cfg, 2, lambda: chk.check_product(cfg, ['ps', 'psd_oplus'], 'psd'))),
        ('def_minus*ps*psd_ddagger',
         _needs(cfg, 2, lambda: chk.check_product(cfg, ['def_minus', 'ps', 'psd_ddagger'], 'psd'))),
        ('ps*ts_n', _needs(cfg, 2, lambda: chk.check_product(cfg, ['ps', f'ts:{cfg.n}'], 'ps-prime'))),
    ]
    checks += [(f'ts:{k}*tsd_oplus:{k}', lambda k=k: chk.check_product(cfg, [f'ts:{k}', f'tsd_oplus:{k}'], f'tsd:{k}'))
               for k in cfg.ks]
    return checks


def _quotient(cfg: TrialConfig) -> CheckList:
    checks = []
    for k in cfg.ks:
        checks += [
            (f'congruence[{k}]', lambda k=k: chk.check_congruence(cfg, k)),
            (f'self_union[{k}]', lambda k=k: chk.check_self_union(cfg, k)),
            (f'witnesses[{k}]', lambda k=k: chk.check_witnesses(cfg, k)),
        ]
    checks.append(('ground_bindings', lambda: chk.check_ground_bindings(cfg)))
    return checks


_BUILDERS = {
    'ops': _ops,
    'closures': _closures,
    'mi': _mi,
    'complements': _complements,
    'decomposition': _decomposition,
    'quotient': _quotient,
}


def run_suite(name: str, cfg: TrialConfig, verbosity: int = Logger.NONE) -> Report:
    """Run a named group of checks, or all of them.

    :param name: One of `ops`, `closures`, `mi`, `complements`, `decomposition`, `quotient` or `all`.
    :param cfg: The configuration.
    :param verbosity: The verbosity level; checks are logged from level 1 on.
    :return: The report, in a deterministic order.
    :raises ParseError: If the suite is unknown.
    """
    if name != ALL and name not in SUITES:
        raise errors.ParseError(f'unknown suite: {name!r}')
    logger = Logger('verify', verbosity)
    report = Report(suite=name, n=cfg.n, seed=cfg.seed)
    for suite in SUITES if name == ALL else (name,):
        for check_name, fn in _BUILDERS[suite](cfg):
            logger.print_operation(f'{suite}.{check_name}')
            check = run_check(f'{suite}.{check_name}', fn, cfg.timings)
            if check.status == SKIP:
                logger.warning(f'skipped {check.name}: {check.reason}')
            report.checks.append(check)
    return report
