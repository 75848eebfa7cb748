"""Executable checks of the algebraic properties of SH, of its closures and of the lattice engine.

Each check returns an `Outcome`. Checks over random elements run `cfg.trials` seeded trials;
below 4 variables most of them enumerate SH instead.
"""
from __future__ import annotations

import functools
import itertools
import typing as typ
import zlib

from ._random import differing_rho_partner, equal_rho_partner, random_sh, random_subst, random_var_set
from ._report import FAIL, OPEN, PASS, Outcome, expect, failed, passed
from ._trials import TrialConfig, run_trials
from ._witness import find_witness, fresh_constant
from .. import closures, errors, lattice, shcore, terms
from ..closures import ClosureId, ClosureKind
from ..lattice import DomainImage
from ..shcore import ShElement
from ..universe import VarUniverse

# Up to this many variables, properties over all of SH are checked exhaustively.
EXHAUSTIVE_VARS = 3


def ts(k: int) -> ClosureId:
    return ClosureId(ClosureKind.TS, k)


def tsd(k: int) -> ClosureId:
    return ClosureId(ClosureKind.TSD, k)


def all_elements(u: VarUniverse) -> typ.Iterator[ShElement]:
    for mask in range(1 << u.full):
        yield ShElement.from_mask(u, mask)


def _salt(*parts) -> int:
    return zlib.crc32(repr(parts).encode())


def _sample(u: VarUniverse, masks: typ.Iterable[int], limit: int = 3) -> list[str]:
    return [str(ShElement.from_mask(u, m)) for m in sorted(masks)[:limit]]


def same_masks(u: VarUniverse, actual: frozenset[int], expected: frozenset[int]) -> Outcome:
    """Compare two sets of bit-vectors, reporting a few elements of each difference."""
    return expect(actual == expected, lambda: {
        'actual_size': len(actual),
        'expected_size': len(expected),
        'missing': _sample(u, expected - actual),
        'unexpected': _sample(u, actual - expected),
    })


def same_image(actual: DomainImage, expected: DomainImage) -> Outcome:
    return same_masks(actual.universe, actual.masks(), expected.masks())


def _image(cfg: TrialConfig, cid: ClosureId) -> DomainImage:
    return lattice.image_of(cfg.universe, cid, cfg.force, cfg.jobs)


def _named(cfg: TrialConfig, name: str) -> DomainImage:
    return lattice.named_subdomain(cfg.universe, name, cfg.force, cfg.jobs)


def _mi(cfg: TrialConfig, d: DomainImage) -> frozenset[int]:
    return lattice.meet_irreducible_masks(d, 'covers', cfg.jobs)


def _for_elements(cfg: TrialConfig, salt: int, prop: typ.Callable[[ShElement, ShElement], typ.Any]) -> Outcome:
    """Check a property of pairs of elements: all pairs of SH for small universes, random pairs otherwise.

    The property returns None when it holds, or a counterexample.
    """
    u = cfg.universe
    if u.n <= EXHAUSTIVE_VARS:
        elements = list(all_elements(u))
        for sh1 in elements:
            for sh2 in elements:
                if (cex := prop(sh1, sh2)) is not None:
                    return failed(cex)
        return passed()
    return run_trials(cfg, lambda i, rng: prop(random_sh(u, rng), random_sh(u, rng)), salt)


def _for_random(cfg: TrialConfig, salt: int, prop: typ.Callable[[ShElement, ShElement], typ.Any]) -> Outcome:
    u = cfg.universe
    return run_trials(cfg, lambda i, rng: prop(random_sh(u, rng), random_sh(u, rng)), salt)


########
# Core #
########


def check_bin_laws(cfg: TrialConfig) -> Outcome:
    """bin is commutative and monotone."""
    u = cfg.universe

    def trial(i, rng):
        sh1, sh2, sh3 = random_sh(u, rng), random_sh(u, rng), random_sh(u, rng)
        if shcore.bin_union(sh1, sh2) != shcore.bin_union(sh2, sh1):
            return {'law': 'commutative', 'sh1': str(sh1), 'sh2': str(sh2)}
        if not shcore.bin_union(sh1, sh2) <= shcore.bin_union(shcore.lub(sh1, sh3), sh2):
            return {'law': 'monotone', 'sh1': str(sh1), 'sh2': str(sh2), 'sh3': str(sh3)}
        return None

    return run_trials(cfg, trial, _salt('bin'))


def check_self_union_chain(cfg: TrialConfig) -> Outcome:
    """sh = sh¹ ⊆ sh² ⊆ … ⊆ shⁿ = sh★."""
    n = cfg.n

    def prop(sh, _):
        chain = [shcore.self_union(sh, j) for j in range(1, n + 1)]
        star = shcore.star_union(sh)
        if chain[0] != sh or chain[-1] != star or any(not a <= b for a, b in zip(chain, chain[1:])):
            return {'sh': str(sh), 'chain': [str(e) for e in chain], 'star': str(star)}
        return None

    return _for_random(cfg, _salt('self-union-chain'), prop)


def check_star_closure(cfg: TrialConfig) -> Outcome:
    """Star-union is extensive, idempotent and monotone."""
    star_of = functools.lru_cache(maxsize=None)(shcore.star_union)

    def prop(sh1, sh2):
        star = star_of(sh1)
        if not sh1 <= star or star_of(star) != star:
            return {'sh': str(sh1), 'star': str(star)}
        if not star <= star_of(shcore.lub(sh1, sh2)):
            return {'law': 'monotone', 'sh1': str(sh1), 'sh2': str(sh2)}
        return None

    return _for_elements(cfg, _salt('star'), prop)


def check_star_emi(cfg: TrialConfig) -> Outcome:
    """sh1 ⊆ sh2★ iff sh1★ ⊆ sh2★."""
    star_of = functools.lru_cache(maxsize=None)(shcore.star_union)

    def prop(sh1, sh2):
        star2 = star_of(sh2)
        if (sh1 <= star2) != (star_of(sh1) <= star2):
            return {'sh1': str(sh1), 'sh2': str(sh2)}
        return None

    return _for_elements(cfg, _salt('star-emi'), prop)


def check_rel_proj(cfg: TrialConfig) -> Outcome:
    """proj(sh, VI) = sh, rel(VI, sh) = sh and rel(∅, sh) = ∅."""
    full = cfg.universe.full

    def prop(sh, _):
        if shcore.proj(sh, full) != sh or shcore.rel(full, sh) != sh or len(shcore.rel(0, sh)) != 0:
            return {'sh': str(sh)}
        return None

    return _for_random(cfg, _salt('rel-proj'), prop)


def check_amgu_order(cfg: TrialConfig) -> Outcome:
    """Probe: the result of amgu does not depend on the order of the bindings.

    A violation is reported with status `open`.
    """
    u = cfg.universe

    def trial(i, rng):
        sh = random_sh(u, rng)
        sigma = random_subst(u, rng)
        expected = shcore.amgu(sh, sigma)
        for order in itertools.permutations(sigma.bindings):
            if (actual := shcore.amgu(sh, terms.Substitution(order))) != expected:
                return {'sh': str(sh), 'sigma': str(sigma), 'order': str(terms.Substitution(order)),
                        'expected': str(expected), 'actual': str(actual)}
        return None

    outcome = run_trials(cfg, trial, _salt('amgu-order'))
    return outcome if outcome.status != FAIL else Outcome(OPEN, counterexample=outcome.counterexample)


def check_ground_bindings(cfg: TrialConfig) -> Outcome:
    """Grounding the variables of D removes exactly the groups that meet D.

    Exhaustive over all elements and all D ⊆ VI for small universes, sampled otherwise.
    """
    u = cfg.universe
    constant = fresh_constant(u.names)

    def prop(sh: ShElement, d: int):
        sigma = terms.ground(u.names_of(d), constant)
        expected = ShElement(u, sh.groups - shcore.rel_groups(d, sh.groups))
        if (actual := shcore.amgu(sh, sigma)) != expected:
            return {'sh': str(sh), 'sigma': str(sigma), 'expected': str(expected), 'actual': str(actual)}
        return None

    if u.n <= EXHAUSTIVE_VARS:
        for sh in all_elements(u):
            for d in range(u.full + 1):
                if (cex := prop(sh, d)) is not None:
                    return failed(cex)
        return passed()
    return run_trials(cfg, lambda i, rng: prop(random_sh(u, rng), random_var_set(u, rng)), _salt('ground'))


############
# Closures #
############


def check_closure_laws(cfg: TrialConfig, cid: ClosureId) -> Outcome:
    """The closure is extensive, idempotent and monotone."""
    u = cfg.universe
    cid.check(u)
    if u.n <= EXHAUSTIVE_VARS:
        elements = list(all_elements(u))
        images = {sh: closures.apply(cid, sh) for sh in elements}
        for sh, rho in images.items():
            if not sh <= rho or images[rho] != rho:
                return failed({'sh': str(sh), 'rho': str(rho)})
        for sh1, sh2 in itertools.product(elements, repeat=2):
            if sh1 <= sh2 and not images[sh1] <= images[sh2]:
                return failed({'law': 'monotone', 'sh1': str(sh1), 'sh2': str(sh2)})
        return passed()

    def prop(sh1, sh2):
        rho = closures.apply(cid, sh1)
        if not sh1 <= rho or closures.apply(cid, rho) != rho:
            return {'sh': str(sh1), 'rho': str(rho)}
        if not rho <= closures.apply(cid, shcore.lub(sh1, sh2)):
            return {'law': 'monotone', 'sh1': str(sh1), 'sh2': str(sh2)}
        return None

    return _for_random(cfg, _salt('closure', str(cid)), prop)


def check_rho_emi(cfg: TrialConfig, k: int) -> Outcome:
    """sh1 ⊆ ρ(sh2) iff ρ(sh1) ⊆ ρ(sh2) for ρ = ρ_TSDk."""
    rho = functools.lru_cache(maxsize=None)(lambda sh: closures.rho_tsd(sh, k))

    def prop(sh1, sh2):
        rho2 = rho(sh2)
        if (sh1 <= rho2) != (rho(sh1) <= rho2):
            return {'sh1': str(sh1), 'sh2': str(sh2)}
        return None

    return _for_elements(cfg, _salt('rho-emi', k), prop)


def check_def_is_star(cfg: TrialConfig) -> Outcome:
    def prop(sh):
        return {'sh': str(sh)} if closures.rho_tsd(sh, 1) != shcore.star_union(sh) else None

    if cfg.n <= EXHAUSTIVE_VARS:
        return _exhaustive(cfg.universe, prop)
    return _for_random(cfg, _salt('def-star'), lambda sh, _: prop(sh))


def check_tsd_n_is_identity(cfg: TrialConfig) -> Outcome:
    n = cfg.n

    def prop(sh):
        return {'sh': str(sh)} if closures.rho_tsd(sh, n) != sh else None

    if n <= EXHAUSTIVE_VARS:
        return _exhaustive(cfg.universe, prop)
    return _for_random(cfg, _salt('tsd-n'), lambda sh, _: prop(sh))


def _exhaustive(u: VarUniverse, prop: typ.Callable[[ShElement], typ.Any]) -> Outcome:
    for sh in all_elements(u):
        if (cex := prop(sh)) is not None:
            return failed(cex)
    return passed()


def check_self_union(cfg: TrialConfig, k: int) -> Outcome:
    """ρ_TSDk(shᵏ) = sh★, exhaustively for small universes."""

    def prop(sh):
        lhs = closures.rho_tsd(shcore.self_union(sh, k), k)
        if lhs != (star := shcore.star_union(sh)):
            return {'sh': str(sh), 'k': k, 'rho': str(lhs), 'star': str(star)}
        return None

    if cfg.n <= EXHAUSTIVE_VARS:
        return _exhaustive(cfg.universe, prop)
    return _for_random(cfg, _salt('self-union', k), lambda sh, _: prop(sh))


def check_additivity(cfg: TrialConfig, k: int) -> Outcome:
    """ρ(sh) ∖ rel(V, ρ(sh)) = ρ(sh ∖ rel(V, sh)) for ρ = ρ_TSDk."""
    u = cfg.universe

    def trial(i, rng):
        sh, v = random_sh(u, rng), random_var_set(u, rng)
        rho = closures.rho_tsd(sh, k)
        lhs = ShElement(u, rho.groups - shcore.rel_groups(v, rho.groups))
        rhs = closures.rho_tsd(ShElement(u, sh.groups - shcore.rel_groups(v, sh.groups)), k)
        if lhs != rhs:
            return {'sh': str(sh), 'v': u.names_of(v), 'lhs': str(lhs), 'rhs': str(rhs)}
        return None

    return run_trials(cfg, trial, _salt('addit', k))


def check_ts_tuples(cfg: TrialConfig, k: int) -> Outcome:
    """ρ_TSk only depends on the k-tuples of its argument."""
    u = cfg.universe

    def prop(sh, _):
        if closures.rho_ts(ShElement(u, closures.tuples_k(sh, k)), k) != closures.rho_ts(sh, k):
            return {'sh': str(sh), 'k': k}
        return None

    return _for_random(cfg, _salt('ts-tuples', k), prop)


def check_ts_collapse(cfg: TrialConfig, j: int, k: int) -> Outcome:
    """ρ_TSj maps every element of TS_k to SG when j < k."""
    top = shcore.top(cfg.universe)
    for sh in _image(cfg, ts(k)):
        if closures.rho_ts(sh, j) != top:
            return failed({'sh': str(sh), 'j': j, 'k': k})
    return passed()


def probe_ts_refinement(cfg: TrialConfig, j: int, k: int) -> Outcome:
    """Probe: { ρ_TSk(e) | e ∈ TS_j } = TS_j for j < k.

    A mismatch is reported with status `open`.
    """
    u = cfg.universe
    source = _image(cfg, ts(j))
    mapped = frozenset(closures.rho_ts(sh, k).to_mask() for sh in source)
    if mapped == source.masks():
        return passed()
    outside = sorted(mapped - source.masks())
    witness = next(sh for sh in source if closures.rho_ts(sh, k).to_mask() not in source.masks()) if outside else None
    return Outcome(OPEN, counterexample={
        'j': j,
        'k': k,
        'mapped_size': len(mapped),
        'image_size': len(source),
        'element': str(witness) if witness else None,
        'maps_to': str(closures.rho_ts(witness, k)) if witness else None,
        'missing': _sample(u, source.masks() - mapped),
    })


def check_tsd_chain(cfg: TrialConfig, j: int, k: int) -> Outcome:
    """TSD_j ⊊ TSD_k for j < k."""
    small, large = _image(cfg, tsd(j)), _image(cfg, tsd(k))
    return expect(small.issubset(large) and len(small) < len(large),
                  lambda: {'j': j, 'k': k, 'sizes': [len(small), len(large)]})


def check_ts_in_tsd(cfg: TrialConfig, j: int, k: int) -> Outcome:
    """TS_j ⊆ TSD_k for j ≤ k, strictly when j = k and n > 1."""
    a, b = _image(cfg, ts(j)), _image(cfg, tsd(k))
    strict = j < k or cfg.n > 1
    return expect(a.issubset(b) and (not strict or len(a) < len(b)),
                  lambda: {'j': j, 'k': k, 'sizes': [len(a), len(b)]})


def check_ps_prime(cfg: TrialConfig) -> Outcome:
    """The fixpoints of ρ_PS′ form PS ⊓ TS_n."""
    product = lattice.reduced_product(_image(cfg, closures.PS), _image(cfg, ts(cfg.n)))
    return same_image(_image(cfg, closures.PS_PRIME), product)


###########
# Lattice #
###########


def check_mi_methods(cfg: TrialConfig, d: DomainImage) -> Outcome:
    covers = _mi(cfg, d)
    bruteforce = lattice.meet_irreducible_masks(d, 'bruteforce')
    return same_masks(d.universe, covers, bruteforce)


def check_meet_generated(cfg: TrialConfig, d: DomainImage) -> Outcome:
    return same_image(lattice.moore(d.universe, _mi(cfg, d)), d)


def check_dual_atoms(cfg: TrialConfig, d: DomainImage, atomistic: bool) -> Outcome:
    """Dual-atoms are meet-irreducible; in a dual-atomistic image they are all of them but top."""
    atoms, mi = lattice.dual_atom_masks(d), _mi(cfg, d)
    if not atoms <= mi:
        return failed({'not_irreducible': _sample(d.universe, atoms - mi)})
    if atomistic:
        return same_masks(d.universe, mi, atoms | {d.top})
    return passed()


def check_ts_atoms_in_tsd(cfg: TrialConfig, k: int) -> Outcome:
    """dAtoms(TS_k) = { sh ∈ MI(TSD_k) | VI ∉ sh }."""
    u = cfg.universe
    vi = 1 << (u.full - 1)
    expected = frozenset(m for m in _mi(cfg, _image(cfg, tsd(k))) if not m & vi)
    return same_masks(u, lattice.dual_atom_masks(_image(cfg, ts(k))), expected)


def check_mi_tsd_cap_ts(cfg: TrialConfig, j: int, k: int) -> Outcome:
    """MI(TSD_k) ∩ TS_j = {SG} for j < k."""
    d = _image(cfg, tsd(k))
    return same_masks(d.universe, _mi(cfg, d) & _image(cfg, ts(j)).masks(), frozenset({d.top}))


def check_mi_tsd_cap_tsd(cfg: TrialConfig, j: int, k: int) -> Outcome:
    """MI(TSD_k) ∩ TSD_j = dAtoms(TSD_j) for j < k."""
    d, coarser = _image(cfg, tsd(k)), _image(cfg, tsd(j))
    return same_masks(d.universe, _mi(cfg, d) & coarser.masks(), lattice.dual_atom_masks(coarser))


def check_mi_formula(cfg: TrialConfig, k: int) -> Outcome:
    """The closed-form meet-irreducibles of TSD_k are the enumerated ones."""
    u = cfg.universe
    _, _, expected = lattice.mi_formula_masks(u, k)
    return same_masks(u, _mi(cfg, _image(cfg, tsd(k))), expected)


def check_counts(cfg: TrialConfig, k: int) -> Outcome:
    """Enumerated, constructed and closed-form cardinalities of dAtoms(TSD_k), M_k and MI(TSD_k) agree."""
    u = cfg.universe
    measured = lattice.counts_of(_image(cfg, tsd(k)), 'covers', cfg.jobs)
    _, constructed = lattice.mi_formula(u, k)
    formula = lattice.formula_counts(u.n, k)
    return expect(measured == constructed == formula, lambda: {
        'k': k,
        'measured': str(measured),
        'constructed': str(constructed),
        'formula': str(formula),
    })


def check_ts_n(cfg: TrialConfig) -> Outcome:
    """TS_n = MI(TS_n) = {SG, SG ∖ {VI}}."""
    d = _image(cfg, ts(cfg.n))
    expected = frozenset({d.top, d.top & ~(1 << (cfg.universe.full - 1))})
    if (outcome := same_masks(d.universe, d.masks(), expected)).status != PASS:
        return outcome
    return same_masks(d.universe, _mi(cfg, d), expected)


def check_golden(cfg: TrialConfig, masks: typ.Callable[[], frozenset[int]], expected: list[ShElement]) -> Outcome:
    """Compare computed elements with the ones of a golden file, by bit pattern."""
    u = cfg.universe
    if expected and expected[0].universe.n != u.n:
        raise errors.PreconditionFailed(f'golden file is for {expected[0].universe.n} variables')
    return same_masks(u, masks(), frozenset(sh.to_mask() for sh in expected))


###############
# Complements #
###############


def check_complement(cfg: TrialConfig, reference: str, removed: str, expected: str | None,
                     differs: bool = False) -> Outcome:
    """reference ∼ removed = expected, where names are closures or named sub-domains.

    :param expected: The expected image; None means the reference itself.
    :param differs: Whether the result must instead differ from the expected image.
    """
    u = cfg.universe
    ref = lattice.image_by_name(u, reference, cfg.force, cfg.jobs)
    result = lattice.complement(ref, lattice.image_by_name(u, removed, cfg.force, cfg.jobs), jobs=cfg.jobs)
    target = ref if expected is None else lattice.image_by_name(u, expected, cfg.force, cfg.jobs)
    if differs:
        return expect(result != target, lambda: {'size': len(result)})
    return same_image(result, target)


def check_double_complement(cfg: TrialConfig, k: int) -> Outcome:
    """TSD_k ∼ (TSD_k ∼ TS_k) = TS_k."""
    d = _image(cfg, tsd(k))
    inner = lattice.complement(d, _image(cfg, ts(k)), jobs=cfg.jobs)
    return same_image(lattice.complement(d, inner, jobs=cfg.jobs), _image(cfg, ts(k)))


def check_product(cfg: TrialConfig, parts: list[str], expected: str) -> Outcome:
    """The reduced product of the named images is the expected image."""
    u = cfg.universe
    images = [lattice.image_by_name(u, p, cfg.force, cfg.jobs) for p in parts]
    product = images[0]
    for d in images[1:]:
        product = lattice.reduced_product(product, d)
    return same_image(product, lattice.image_by_name(u, expected, cfg.force, cfg.jobs))


############
# Quotient #
############


def check_congruence(cfg: TrialConfig, k: int) -> Outcome:
    """ρ_TSDk(sh1) = ρ_TSDk(sh2) is preserved by amgu, lub and proj."""
    u = cfg.universe
    cid = tsd(k)

    def trial(i, rng):
        sh1 = random_sh(u, rng)
        sh2 = equal_rho_partner(sh1, cid, rng)
        sigma, other, v = random_subst(u, rng), random_sh(u, rng), random_var_set(u, rng)
        results = {
            'amgu': (shcore.amgu(sh1, sigma), shcore.amgu(sh2, sigma)),
            'lub': (shcore.lub(sh1, other), shcore.lub(sh2, other)),
            'proj': (shcore.proj(sh1, v), shcore.proj(sh2, v)),
        }
        for op, (a, b) in results.items():
            if closures.apply(cid, a) != closures.apply(cid, b):
                return {'op': op, 'k': k, 'sh1': str(sh1), 'sh2': str(sh2), 'sigma': str(sigma),
                        'other': str(other), 'v': u.names_of(v)}
        return None

    return run_trials(cfg, trial, _salt('congruence', k))


def check_witnesses(cfg: TrialConfig, k: int, draws: int = 100) -> Outcome:
    """find_witness succeeds on random pairs with different ρ_TSDk, and its output is re-checked.

    Every trial tests one pair; `draws` bounds the random draws of the second element.
    """
    u = cfg.universe

    def trial(i, rng):
        sh1 = random_sh(u, rng)
        sh2 = differing_rho_partner(sh1, tsd(k), rng, draws)
        try:
            w = find_witness(sh1, sh2, k)
        except errors.InternalError as e:
            return {'k': k, 'sh1': str(sh1), 'sh2': str(sh2), 'error': str(e)}
        a1, a2 = shcore.amgu(sh1, w.sigma), shcore.amgu(sh2, w.sigma)
        if not (1 <= w.j <= k) or closures.rho_ts(a1, w.j) == closures.rho_ts(a2, w.j):
            return {'k': k, 'sh1': str(sh1), 'sh2': str(sh2), 'witness': w.to_json(sh1)}
        return None

    return run_trials(cfg, trial, _salt('witness', k))
