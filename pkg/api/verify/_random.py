"""Random elements, variable sets and substitutions for the sampled checks."""
import numpy as np

from .. import closures, errors
from ..closures import ClosureId
from ..pipeline import Logger
from ..shcore import ShElement, bottom
from ..terms import Binding, Compound, Substitution, Term, Var
from ..universe import VarUniverse

DENSITIES = (0.1, 0.3, 0.5)
MAX_PARTNER_ATTEMPTS = 1000
_FUNCTORS = ('f', 'g')
_CONSTANTS = ('a', 'b')

_logger = Logger('verify')


def random_sh(u: VarUniverse, rng: np.random.Generator, p: float = None) -> ShElement:
    """Draw an element of SH, each group being included independently.

    :param u: The universe.
    :param rng: The generator.
    :param p: The inclusion probability; drawn from {0.1, 0.3, 0.5} when absent.
    """
    if p is None:
        p = DENSITIES[rng.integers(len(DENSITIES))]
    picked = rng.random(u.full) < p
    return ShElement(u, frozenset(int(g) for g in np.flatnonzero(picked) + 1))


def random_var_set(u: VarUniverse, rng: np.random.Generator) -> int:
    return int(rng.integers(u.full + 1))


def _free_name(u: VarUniverse, candidates: tuple[str, ...]) -> list[str]:
    return [c for c in candidates if c not in u.names]


def random_term(u: VarUniverse, rng: np.random.Generator, depth: int = 2) -> Term:
    """Draw a term over the universe; functors and constants avoid variable names."""
    roll = rng.random()
    constants = _free_name(u, _CONSTANTS) or ['c0']
    if roll < 0.4:
        return Var(u.names[rng.integers(u.n)])
    functors = _free_name(u, _FUNCTORS)
    if roll < 0.55 or depth == 0 or not functors:
        return Compound(constants[rng.integers(len(constants))])
    arity = int(rng.integers(1, 4))
    functor = functors[rng.integers(len(functors))]
    return Compound(functor, tuple(random_term(u, rng, depth - 1) for _ in range(arity)))


def random_subst(u: VarUniverse, rng: np.random.Generator, max_bindings: int = 3) -> Substitution:
    """Draw a substitution of 1 to `max_bindings` bindings with distinct left-hand sides."""
    size = int(rng.integers(1, min(u.n, max_bindings) + 1))
    bindings = []
    for x in rng.permutation(u.n)[:size]:
        lhs = u.names[x]
        rhs = random_term(u, rng)
        while rhs == Var(lhs):
            rhs = random_term(u, rng)
        bindings.append(Binding(lhs, rhs))
    return Substitution(tuple(bindings))


def equal_rho_partner(sh: ShElement, cid: ClosureId, rng: np.random.Generator,
                      attempts: int = MAX_PARTNER_ATTEMPTS) -> ShElement:
    """Draw an element with the same closure as sh.

    Candidates drop up to two groups of sh and add random groups of ρ(sh); the first one whose closure
    equals ρ(sh) is returned, or ρ(sh) itself once the attempts are exhausted.
    """
    target = closures.apply(cid, sh)
    own = sorted(sh.groups)
    extra = sorted(target.groups - sh.groups)
    for attempt in range(attempts):
        dropped = int(rng.integers(min(2, len(own)) + 1))
        kept = set(own)
        for i in rng.permutation(len(own))[:dropped]:
            kept.discard(own[i])
        if extra:
            kept.update(g for g, pick in zip(extra, rng.random(len(extra)) < 0.5) if pick)
        candidate = ShElement(sh.universe, frozenset(kept))
        if closures.apply(cid, candidate) == target:
            _logger.debug(f'partner of {sh} found after {attempt + 1} attempts')
            return candidate
    return target


def differing_rho_partner(sh: ShElement, cid: ClosureId, rng: np.random.Generator,
                          attempts: int = MAX_PARTNER_ATTEMPTS) -> ShElement:
    """Draw an element whose closure differs from that of sh.

    Random elements are tried first. Past the attempts, a random group outside ρ(sh) is added to the last
    candidate, or the empty element is returned when ρ(sh) holds every group.

    :raises PreconditionFailed: If the closure is constant.
    """
    u = sh.universe
    target = closures.apply(cid, sh)
    candidate = sh
    for _ in range(attempts):
        candidate = random_sh(u, rng)
        if closures.apply(cid, candidate) != target:
            return candidate
    outside = [g for g in range(1, u.full + 1) if g not in target.groups]
    if not outside:
        if closures.apply(cid, bottom(u)) == target:
            raise errors.PreconditionFailed(f'every element has the same {cid} closure')
        return bottom(u)
    return ShElement(u, candidate.groups | {outside[rng.integers(len(outside))]})
