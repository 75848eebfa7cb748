import numpy as np
import pytest

from api import closures, errors, shcore, terms, universe as unv, verify
from api.verify import _checks
from .strategies import XYZ, el


def config(n: int = 3, **kwargs) -> verify.TrialConfig:
    return verify.TrialConfig(n=n, trials=kwargs.pop('trials', 20), names=('x', 'y', 'z')[:n] if n <= 3 else None,
                              **kwargs)


class TestTrialConfig:
    def test_defaults(self):
        cfg = verify.TrialConfig(n=3)
        assert cfg.trials == 100
        assert cfg.ks == [1, 2, 3]
        assert cfg.universe == unv.numbered_universe(3)
        assert verify.TrialConfig(n=3, k=2).ks == [2]
        assert config().universe == XYZ

    @pytest.mark.parametrize('kwargs', [
        {'trials': 0},
        {'k': 4},
        {'names': ('x', 'y')},
        {'seed': -1},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(errors.SemanticError):
            verify.TrialConfig(n=3, **kwargs)


class TestTrials:
    def test_generator_depends_on_seed_and_trial_only(self):
        a = verify.trial_rng(7, 3).integers(1 << 30, size=4)
        b = verify.trial_rng(7, 3).integers(1 << 30, size=4)
        c = verify.trial_rng(8, 3).integers(1 << 30, size=4)
        assert (a == b).all()
        assert not (a == c).all()

    @pytest.mark.parametrize('jobs', [1, 3])
    def test_lowest_failing_trial_is_reported(self, jobs):
        cfg = verify.TrialConfig(n=2, trials=10, jobs=jobs)
        outcome = verify.run_trials(cfg, lambda i, rng: {'i': i} if i >= 5 else None)
        assert outcome.status == verify.FAIL
        assert outcome.counterexample == {'trial': 5, 'seed': 0, 'i': 5}

    def test_passing_trials(self):
        assert verify.run_trials(config(), lambda i, rng: None).status == verify.PASS


class TestRandom:
    def test_random_sh(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            sh = verify.random_sh(XYZ, rng)
            assert all(1 <= g <= XYZ.full for g in sh.groups)
        assert verify.random_sh(XYZ, rng, p=1.0) == shcore.top(XYZ)
        assert verify.random_sh(XYZ, rng, p=0.0) == shcore.bottom(XYZ)

    def test_random_subst(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            sigma = verify.random_subst(XYZ, rng)
            assert 1 <= len(sigma) <= 3
            assert all(b.rhs != terms.Var(b.lhs) for b in sigma)
            sigma.lower(XYZ)

    def test_equal_rho_partner(self):
        rng = np.random.default_rng(2)
        for k in (1, 2):
            cid = closures.ClosureId(closures.ClosureKind.TSD, k)
            for _ in range(10):
                sh = verify.random_sh(XYZ, rng)
                partner = verify.equal_rho_partner(sh, cid, rng)
                assert closures.apply(cid, partner) == closures.apply(cid, sh)

    def test_differing_rho_partner(self):
        rng = np.random.default_rng(3)
        for k in (1, 2, 3):
            cid = closures.ClosureId(closures.ClosureKind.TSD, k)
            for sh in (verify.random_sh(XYZ, rng), shcore.bottom(XYZ), shcore.top(XYZ)):
                partner = verify.differing_rho_partner(sh, cid, rng, attempts=1)
                assert closures.apply(cid, partner) != closures.apply(cid, sh)

    def test_differing_rho_partner_of_constant_closure(self):
        with pytest.raises(errors.PreconditionFailed):
            verify.differing_rho_partner(shcore.top(XYZ), closures.parse_closure(XYZ, 'top'), np.random.default_rng(0))


class TestReport:
    def test_run_check_maps_errors(self):
        def cap():
            raise errors.CapExceeded('too big')

        def broken():
            raise errors.SemanticError('bad')

        assert verify.run_check('a', cap).status == verify.SKIP
        assert verify.run_check('a', cap).reason == 'too big'
        check = verify.run_check('b', broken)
        assert check.status == verify.FAIL
        assert check.counterexample == {'error': 'bad'}

    def test_timings(self):
        assert verify.run_check('a', verify.passed).millis is None
        assert verify.run_check('a', verify.passed, timings=True).millis >= 0

    def test_json(self):
        report = verify.Report(suite='ops', n=3, seed=0, checks=[
            verify.Check('a', verify.PASS),
            verify.Check('b', verify.OPEN, counterexample={'k': 1}),
            verify.Check('c', verify.SKIP, reason='why'),
        ])
        assert report.ok
        assert report.to_json() == {
            'suite': 'ops',
            'n': 3,
            'seed': 0,
            'checks': [
                {'name': 'a', 'status': 'pass', 'millis': None},
                {'name': 'b', 'status': 'open', 'counterexample': {'k': 1}, 'millis': None},
                {'name': 'c', 'status': 'skip', 'reason': 'why', 'millis': None},
            ],
        }
        assert report.summary() == 'ops n=3 seed=0: 1 passed, 0 failed, 1 skipped, 1 open'
        report.checks.append(verify.Check('d', verify.FAIL))
        assert not report.ok


class TestWitness:
    def test_direct_case(self):
        w = verify.find_witness(el(XYZ, 'xy'), el(XYZ, 'x', 'y'), 1)
        assert w.to_json(el(XYZ, 'xy')) == {
            'sigma': '{y -> c0, z -> c0}',
            'j': 1,
            'side': 'sh2',
            'group': ['x'],
            'case': 'direct',
            'tuple': ['x'],
        }

    def test_tuple_case(self):
        w = verify.find_witness(el(XYZ, 'xy'), el(XYZ, 'xyz'), 1)
        assert (w.side, w.group, w.case, w.tuple, w.j) == (verify.SH1, 0b011, verify.TUPLE, 0b001, 1)
        assert str(w.sigma) == '{z -> c0}'

    @pytest.mark.parametrize('sh2, expected', [
        (el(XYZ), (0b001, 1)),
        (el(XYZ, 'xy', 'z'), (0b101, 2)),
    ])
    def test_tuple_case_grounds_nothing(self, sh2, expected):
        w = verify.find_witness(el(XYZ, 'xyz'), sh2, 2)
        assert (w.side, w.group, w.case) == (verify.SH1, 0b111, verify.TUPLE)
        assert len(w.sigma) == 0
        assert (w.tuple, w.j) == expected

    def test_witness_distinguishes(self):
        sh1, sh2 = el(XYZ, 'xy', 'yz'), el(XYZ, 'xy', 'xz', 'yz')
        w = verify.find_witness(sh1, sh2, 2)
        a1, a2 = shcore.amgu(sh1, w.sigma), shcore.amgu(sh2, w.sigma)
        assert closures.rho_ts(a1, w.j) != closures.rho_ts(a2, w.j)

    @pytest.mark.parametrize('k', [1, 2])
    def test_every_trial_checks_a_witness(self, k, monkeypatch):
        calls = []

        def counting(sh1, sh2, k_):
            calls.append((sh1, sh2))
            return verify.find_witness(sh1, sh2, k_)

        monkeypatch.setattr(_checks, 'find_witness', counting)
        outcome = verify.check_witnesses(config(trials=500), k, draws=1)
        assert outcome.status == verify.PASS
        assert len(calls) == 500
        assert all(closures.rho_tsd(sh1, k) != closures.rho_tsd(sh2, k) for sh1, sh2 in calls)

    def test_same_closure(self):
        with pytest.raises(errors.PreconditionFailed):
            verify.find_witness(el(XYZ, 'x', 'y'), el(XYZ, 'x', 'y', 'xy'), 1)

    def test_universe_mismatch(self, xy):
        with pytest.raises(errors.UniverseMismatch):
            verify.find_witness(el(XYZ, 'x'), el(xy, 'y'), 1)

    def test_fresh_constant(self):
        assert verify.fresh_constant(('x', 'y')) == 'c0'
        assert verify.fresh_constant(('c0', 'c1', 'x')) == 'c2'


class TestSuites:
    @pytest.mark.parametrize('suite', verify.SUITES)
    def test_suites_hold_for_three_variables(self, suite):
        report = verify.run_suite(suite, config())
        failures = [c for c in report.checks if c.status == verify.FAIL]
        assert failures == []
        assert report.count(verify.PASS) > 0

    def test_all_suites_for_one_variable(self):
        report = verify.run_suite(verify.ALL, config(n=1))
        assert report.ok
        assert {c.name.split('.')[0] for c in report.checks} == set(verify.SUITES)

    def test_golden_checks_run_for_three_variables(self):
        report = verify.run_suite('mi', config())
        golden = [c for c in report.checks if 'golden' in c.name]
        assert len(golden) == 3
        assert all(c.status == verify.PASS for c in golden)

    def test_golden_checks_skip_otherwise(self):
        report = verify.run_suite('mi', config(n=2))
        assert all(c.status == verify.SKIP for c in report.checks if 'golden' in c.name)

    def test_ts_refinement_is_open(self):
        report = verify.run_suite('closures', config(k=2))
        check = next(c for c in report.checks if c.name == 'closures.ts_refinement[1,2]')
        assert check.status == verify.OPEN
        assert report.ok

    def test_deterministic(self):
        first = verify.run_suite('quotient', config(seed=42))
        second = verify.run_suite('quotient', config(seed=42))
        assert first.to_json() == second.to_json()

    def test_caps_skip_checks(self):
        report = verify.run_suite('complements', verify.TrialConfig(n=5, trials=1))
        assert report.ok
        assert report.count(verify.SKIP) > 0

    def test_unknown_suite(self):
        with pytest.raises(errors.ParseError):
            verify.run_suite('nope', config())
