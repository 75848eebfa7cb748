import json

import pytest

import main


def run(capsys, *args: str) -> tuple[int, str, str]:
    code = main.main(list(args))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


class TestEval:
    def test_amgu(self, capsys):
        code, out, _ = run(capsys, 'eval', '--vars', 'x,y,z', '--sh', '{x, y, z}', '--subst', '{x -> y}',
                           '--op', 'amgu')
        assert (code, out) == (0, '{z, xy}')

    def test_operator_forms(self, capsys):
        code, out, _ = run(capsys, 'eval', '--vars', 'x,y,z', '--sh', '{xyz}', '--op', 'proj:xy',
                           '--op', 'self[j=2]', '--op', 'star')
        assert (code, out) == (0, '{z, xy, xyz}')

    def test_binary(self, capsys):
        code, out, _ = run(capsys, 'eval', '--vars', 'x,y,z', '--sh', '{x, y}', '--sh2', '{z}', '--op', 'bin')
        assert (code, out) == (0, '{xz, yz}')

    def test_json_and_numbered_universe(self, capsys):
        code, out, _ = run(capsys, 'eval', '--n', '2', '--sh', '[["v1"],["v2"]]', '--op', 'star')
        assert code == 0
        assert json.loads(out) == [['v1'], ['v2'], ['v1', 'v2']]

    def test_file_argument_with_header(self, capsys, tmp_path):
        path = tmp_path / 'sh.txt'
        path.write_text('vars: x, y, z\n{x, y}\n', encoding='utf8')
        code, out, _ = run(capsys, 'eval', '--sh', f'@{path}', '--op', 'star')
        assert (code, out) == (0, '{x, y, xy}')

    def test_verbose_output_goes_to_stderr(self, capsys):
        code, out, err = run(capsys, 'eval', '--vars', 'x,y', '--sh', '{x}', '--op', 'star', '-v')
        assert (code, out) == (0, '{x}')
        assert 'star' in err

    @pytest.mark.parametrize('args, expected_code', [
        (['--sh', '{x'], 2),
        (['--sh', '{w}'], 3),
        (['--sh', '{x}', '--op', 'nope'], 2),
        (['--sh', '{x}', '--op', 'self:two'], 2),
        (['--sh', '{x}', '--op', 'bin'], 3),
        (['--sh', '{x}', '--subst', '{x -> x}', '--op', 'amgu'], 3),
    ])
    def test_errors(self, capsys, args, expected_code):
        if '--op' not in args:
            args = args + ['--op', 'star']
        code, out, err = run(capsys, 'eval', '--vars', 'x,y,z', *args)
        assert code == expected_code
        assert out == ''
        assert 'Error:' in err

    def test_missing_universe(self, capsys):
        code, _, _ = run(capsys, 'eval', '--sh', '{x}', '--op', 'star')
        assert code == 2


class TestDomains:
    def test_closure(self, capsys):
        code, out, _ = run(capsys, 'closure', '--vars', 'x,y,z', '--sh', '{x, y}', '--domain', 'def')
        assert (code, out) == (0, '{x, y, xy}\nmember: no')

    def test_closure_json(self, capsys):
        code, out, _ = run(capsys, 'closure', '--vars', 'x,y,z', '--sh', '{x}', '--domain', 'ps',
                           '--format', 'json')
        assert code == 0
        assert json.loads(out) == {'closure': 'ps', 'result': [['x'], ['y'], ['z']], 'member': False}

    def test_enumerate(self, capsys):
        code, out, _ = run(capsys, 'enumerate', '--vars', 'x,y', '--domain', 'def')
        assert (code, out) == (0, 'def: 7 elements')

    def test_enumerate_cap(self, capsys):
        code, _, err = run(capsys, 'enumerate', '--n', '5')
        assert code == 4
        assert '--force' in err

    def test_enumerate_forced_sh_cap(self, capsys):
        code, out, err = run(capsys, 'enumerate', '--n', '5', '--force')
        assert (code, out) == (4, '')
        assert err.startswith('Error: SH has 2^31 elements')

    def test_enumerate_forced_tuple_image(self, capsys):
        code, out, _ = run(capsys, 'enumerate', '--n', '5', '--domain', 'ts:2', '--force')
        assert (code, out) == (0, 'ts:2: 1024 elements')

    def test_mi(self, capsys):
        code, out, _ = run(capsys, 'mi', '--vars', 'x,y,z', '--domain', 'psd')
        lines = out.splitlines()
        assert code == 0
        assert len(lines) == 11
        assert lines[-1] == 'dAtoms=6 M=3 MI=10'
        assert lines[-2] == '{x, y, z, xy, xz, yz, xyz}'

    def test_mi_methods_agree(self, capsys):
        outputs = []
        for method in ('covers', 'bruteforce', 'formula'):
            code, out, _ = run(capsys, 'mi', '--vars', 'x,y,z', '--domain', 'def', '--method', method)
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1] == outputs[2]
        assert outputs[0].endswith('dAtoms=3 M=9 MI=13')

    def test_mi_formula_needs_a_dependency_domain(self, capsys):
        code, _, _ = run(capsys, 'mi', '--vars', 'x,y,z', '--domain', 'ps', '--method', 'formula')
        assert code == 3

    def test_mi_json(self, capsys):
        code, out, _ = run(capsys, 'mi', '--vars', 'x', '--domain', 'sh', '--format', 'json')
        assert code == 0
        assert json.loads(out) == {
            'vars': ['x'],
            'label': 'mi(sh)',
            'elements': [[], [['x']]],
            'counts': {'dAtoms': 1, 'M': 0, 'MI': 2},
        }

    def test_complement(self, capsys):
        code, out, _ = run(capsys, 'complement', '--vars', 'x,y,z', '--reference', 'sh', '--remove', 'ps')
        assert (code, out) == (0, '(sh ~ ps): 128 elements')

    def test_complement_of_a_non_subdomain(self, capsys):
        code, _, _ = run(capsys, 'complement', '--vars', 'x,y,z', '--reference', 'con', '--remove', 'def')
        assert code == 3

    def test_product(self, capsys):
        code, out, _ = run(capsys, 'product', '--vars', 'x,y', '--left', 'con', '--right', 'def_oplus',
                           '--format', 'json')
        assert code == 0
        data = json.loads(out)
        assert data['label'] == '(con * def_oplus)'
        assert len(data['elements']) == 7


class TestVerify:
    def test_text_report(self, capsys):
        code, out, _ = run(capsys, 'verify', '--n', '2', '--suite', 'decomposition')
        assert code == 0
        assert out.splitlines()[-1].startswith('decomposition n=2 seed=0: ')
        assert all(line.split()[0] in ('PASS', 'SKIP', 'OPEN') for line in out.splitlines()[:-1])

    def test_json_report_is_deterministic(self, capsys):
        args = ('verify', '--n', '2', '--suite', 'quotient', '--trials', '10', '--seed', '3', '--format', 'json')
        first = run(capsys, *args)
        second = run(capsys, *args)
        assert first[0] == 0
        assert first[1] == second[1]
        report = json.loads(first[1])
        assert (report['suite'], report['n'], report['seed']) == ('quotient', 2, 3)
        assert all(c['millis'] is None for c in report['checks'])

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / 'report.json'
        code, out, _ = run(capsys, 'verify', '--vars', 'x,y', '--suite', 'ops', '--trials', '5', '--format', 'json',
                           '--out', str(path), '--timings')
        assert code == 0
        assert out.startswith('ops n=2 seed=0: ')
        report = json.loads(path.read_text(encoding='utf8'))
        assert all(c['millis'] is not None for c in report['checks'])

    def test_unknown_suite(self, capsys):
        code, _, _ = run(capsys, 'verify', '--n', '2', '--suite', 'nope')
        assert code == 2


class TestWitness:
    def test_text(self, capsys):
        code, out, _ = run(capsys, 'witness', '--vars', 'x,y,z', '--sh', '{xy}', '--sh2', '{x, y}', '-k', '1')
        assert code == 0
        assert out.splitlines() == [
            'sigma: {y -> c0, z -> c0}', 'j: 1', 'side: sh2', 'group: x', 'case: direct',
            'tuple: x',
        ]

    def test_same_closure(self, capsys):
        code, _, _ = run(capsys, 'witness', '--vars', 'x,y,z', '--sh', '{x, y}', '--sh2', '{x, y, xy}', '-k', '1')
        assert code == 3
