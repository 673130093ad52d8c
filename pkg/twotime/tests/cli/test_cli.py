import json
import os
import shutil
import tempfile
import warnings

from mock import patch
import six

from twotime import config
from twotime.cli import main, to_json, parse_state, sweep_to_csv, _utcnow, GAMMA_EXIT_NOT_GAMMA
from twotime.exceptions import ParameterError, ValidationError
from twotime.operators import random_hermitian, plus_minus_lambda
from twotime.rng import Seed, split
from twotime.tests.base import BaseTwoTimeTestCase

NOW = '2020-01-01T00:00:00Z'


class BaseCLITestCase(BaseTwoTimeTestCase):

    def setUp(self):
        super(BaseCLITestCase, self).setUp()
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)
        super(BaseCLITestCase, self).tearDown()

    def run_cli(self, *argv):
        """ returns (exit code, stdout text, stderr text) """
        with patch('sys.stdout', new_callable=six.StringIO) as out, \
                patch('sys.stderr', new_callable=six.StringIO) as err, \
                patch('twotime.cli._utcnow', return_value=NOW):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def run_json(self, *argv):
        code, out, err = self.run_cli(*argv)
        self.assertNotEqual(code, 1, err)
        report = json.loads(out)
        self.assertEqual(report['generated_at'], NOW)
        return code, report


class TestCorrelate(BaseCLITestCase):

    def test_self_correlation(self):
        code, report = self.run_json('correlate', '--o1', 'X', '--o2', 'X', '--state', 'maximally-mixed')
        self.assertEqual(code, 0)
        self.assertAlmostEqual(report['value'], 1.0, places=12)
        self.assertAlmostEqual(report['self_check']['trace_rho_o_squared'], 1.0, places=12)
        self.assertLessEqual(report['self_check']['residual'], 1e-12)
        self.assertAlmostEqual(report['anticommutator_value'], 1.0, places=12)

    def test_anticommuting_paulis(self):
        code, report = self.run_json('correlate', '--o1', 'X', '--o2', 'Z', '--state', 'random:7')
        self.assertEqual(code, 0)
        self.assertAlmostEqual(report['value'], 0.0, places=12)
        self.assertEqual(report['state'], 'random:7')
        self.assertNotIn('self_check', report)

    def test_identity_and_sigma_z(self):
        code, report = self.run_json('correlate', '--o1', 'I', '--o2', 'Z', '--state', 'pure:0')
        self.assertAlmostEqual(report['value'], 1.0, places=12)
        self.assertEqual(report['matrix_dim'], 2)
        self.assertNotIn('anticommutator_value', report)

    def test_expression_labels(self):
        code, report = self.run_json('correlate', '--o1', '0.5*XX + 0.5*ZZ', '--o2', 'YY')
        self.assertEqual(report['o1'], '0.5*XX + 0.5*ZZ')
        self.assertEqual(report['matrix_dim'], 4)
        self.assertEqual(report['state'], 'maximally-mixed')

    def test_parse_error(self):
        code, out, err = self.run_cli('correlate', '--o1', 'X +', '--o2', 'Z')
        self.assertEqual(code, 1)
        self.assertEqual(out, '')
        self.assertIn('at position', err)
        self.assertTrue(err.startswith('twotime: error:'))

    def test_dimension_mismatch(self):
        code, out, err = self.run_cli('correlate', '--o1', 'X', '--o2', 'XX')
        self.assertEqual(code, 1)

    def test_unknown_state(self):
        code, out, err = self.run_cli('correlate', '--o1', 'X', '--o2', 'Z', '--state', 'thermal')
        self.assertEqual(code, 1)
        self.assertIn('thermal', err)


class TestGammaCheck(BaseCLITestCase):

    def test_pauli_basis(self):
        code, report = self.run_json('gamma-check', '--basis', 'X', '--basis', 'Y', '--basis', 'Z')
        self.assertEqual(code, 0)
        self.assertTrue(report['is_gamma'])
        self.assertEqual(report['failure_reason'], 'none')
        self.assertEqual(report['basis'], ['X', 'Y', 'Z'])
        self.assertEqual(report['clifford_qubits'], 1)
        self.assertEqual(report['trials'], config.DEFAULT_TRIALS)

    def test_identity_and_sigma_z(self):
        code, report = self.run_json('gamma-check', '--basis', 'I', '--basis', 'Z')
        self.assertEqual(code, GAMMA_EXIT_NOT_GAMMA)
        self.assertFalse(report['is_gamma'])
        self.assertEqual(report['failure_reason'], 'state-dependent')
        self.assertNotIn('clifford_qubits', report)
        self.assertAlmostEqual(report['residuals'], 2.0, places=12)
        self.assertGreater(report['statistic'], 1e-8)

    def test_five_dimensional_basis(self):
        argv = ['gamma-check']
        for word in ('XX', 'XY', 'XZ', 'ZI', 'YI'):
            argv += ['--basis', word]
        code, report = self.run_json(*argv)
        self.assertEqual(code, 0)
        self.assertTrue(report['is_gamma'])
        self.assertEqual(report['clifford_qubits'], 2)

    def test_output_is_reproducible(self):
        a = self.run_cli('gamma-check', '--basis', 'X', '--basis', 'X + Z', '--seed', '4')
        b = self.run_cli('gamma-check', '--basis', 'X', '--basis', 'X + Z', '--seed', '4')
        self.assertEqual(a, b)

    def test_missing_basis(self):
        code, out, err = self.run_cli('gamma-check')
        self.assertEqual(code, 1)
        self.assertIn('--basis', err)

    def test_dependent_basis(self):
        code, out, err = self.run_cli('gamma-check', '--basis', 'X', '--basis', '2*X')
        self.assertEqual(code, 1)


class TestSimulate(BaseCLITestCase):

    def test_parallel_vectors(self):
        code, report = self.run_json('simulate', '--r', '1,0,0', '--s', '1,0,0', '--steps', '100')
        self.assertEqual(code, 0)
        self.assertAlmostEqual(report['inner_product_hat'], 1.0, places=12)
        self.assertEqual(report['angle_hat'], 0.0)
        self.assertEqual(report['n_pairs'], 99)
        self.assertEqual(report['exact_inner_product'], 1.0)
        self.assertEqual(report['seed'], config.DEFAULT_SEED)
        self.assertEqual(report['r'], [1.0, 0.0, 0.0])

    def test_summary_fields(self):
        code, report = self.run_json('simulate', '--r', '1,0,0', '--s', '0,0,1', '--steps', '1000',
                                     '--seed', '3', '--init', 'pure:1')
        for key in ('inner_product_hat', 'angle_hat', 'standard_error', 'n_pairs', 'seed', 'exact_inner_product',
                    'exact_angle', 'steps', 'init'):
            self.assertIn(key, report)
        self.assertEqual(report['init'], 'pure:1')
        self.assertAlmostEqual(report['exact_angle'], 1.5707963267948966, places=15)
        self.assertNotIn('trace_path', report)

    def test_out_directory_is_reproducible(self):
        contents = []
        for name in ('a', 'b'):
            out = os.path.join(self.tmp, name)
            code, report = self.run_json('simulate', '--r', '1,0,0', '--s', '0.5,0,0.8660254', '--steps', '2000',
                                         '--seed', '42', '--out', out)
            self.assertEqual(report['trace_path'], os.path.join(out, 'trace.csv'))
            with open(report['trace_path']) as fp:
                trace = fp.read()
            with open(report['estimate_path']) as fp:
                estimate = json.load(fp)
            self.assertEqual(estimate['inner_product_hat'], report['inner_product_hat'])
            contents.append(trace)
        self.assertEqual(contents[0], contents[1])
        lines = contents[0].splitlines()
        self.assertEqual(lines[0], 'step,observable_label,outcome')
        self.assertEqual(len(lines), 2001)
        self.assertTrue(lines[1].startswith('1,r,'))
        self.assertTrue(lines[2].startswith('2,s,'))

    def test_bad_arguments(self):
        self.assertEqual(self.run_cli('simulate', '--r', '1,0', '--s', '1,0,0')[0], 1)
        self.assertEqual(self.run_cli('simulate', '--r', '1,0,0', '--s', '0,0,0')[0], 1)
        self.assertEqual(self.run_cli('simulate', '--r', '1,0,0', '--s', '0,0,1', '--steps', '1')[0], 1)
        self.assertEqual(self.run_cli('simulate', '--r', '1,0,0', '--s', '0,0,1', '--steps', 'many')[0], 1)
        self.assertEqual(self.run_cli('simulate', '--s', '0,0,1')[0], 1)


class TestSweep(BaseCLITestCase):

    def test_qubit_sweep(self):
        code, report = self.run_json('sweep', '--dim-space', '3', '--matrix-dim', '2', '--subspaces', '5')
        self.assertEqual(code, 0)
        self.assertTrue(report['positive_control']['is_gamma'])
        self.assertEqual(report['positive_control']['kind'], 'control')
        self.assertEqual(len(report['rows']), 5)
        self.assertEqual(report['summary']['n_gamma'], 0)
        self.assertEqual(sum(report['summary']['reasons'].values()), 5)
        self.assertEqual([row['index'] for row in report['rows']], list(range(5)))

    def test_defaults(self):
        code, report = self.run_json('sweep', '--subspaces', '2')
        self.assertEqual((report['dim_space'], report['matrix_dim']), (3, 2))

    def test_two_qubit_control(self):
        code, report = self.run_json('sweep', '--dim-space', '4', '--matrix-dim', '4', '--subspaces', '2')
        self.assertTrue(report['positive_control']['is_gamma'])

    def test_one_dimensional_subspaces(self):
        code, report = self.run_json('sweep', '--dim-space', '1', '--matrix-dim', '2', '--subspaces', '3')
        self.assertEqual(code, 0)
        self.assertTrue(report['positive_control']['is_gamma'])
        self.assertEqual(len(report['rows']), 3)
        for row in report['rows']:
            basis = random_hermitian(2, split(split(Seed(config.DEFAULT_SEED), row['index']), 0))
            self.assertEqual(row['is_gamma'], plus_minus_lambda(basis) is not None)

    def test_no_control_that_fits(self):
        code, report = self.run_json('sweep', '--dim-space', '2', '--matrix-dim', '3', '--subspaces', '1')
        self.assertIsNone(report['positive_control'])

    def test_subspace_too_large(self):
        code, out, err = self.run_cli('sweep', '--dim-space', '5', '--matrix-dim', '2')
        self.assertEqual(code, 1)
        self.assertIn('does not fit', err)

    def test_csv(self):
        code, out, err = self.run_cli('sweep', '--subspaces', '3', '--format', 'csv')
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'index,kind,is_gamma,failure_reason,residuals,statistic')
        self.assertTrue(lines[1].startswith(',control,true,none,'))
        self.assertEqual(len(lines), 5)
        self.assertTrue(lines[2].startswith('0,random,false,'))

    def test_csv_without_control(self):
        report = {'positive_control': None,
                  'rows': [{'index': 0, 'kind': 'random', 'is_gamma': False,
                            'failure_reason': 'basis-not-dichotomic', 'residuals': 0.5,
                            'statistic': 0.25}]}
        self.assertEqual(sweep_to_csv(report), 'index,kind,is_gamma,failure_reason,residuals,statistic\n'
                                               '0,random,false,basis-not-dichotomic,0.5,0.25\n')

    def test_reproducible(self):
        a = self.run_cli('sweep', '--subspaces', '3', '--seed', '8')
        b = self.run_cli('sweep', '--subspaces', '3', '--seed', '8')
        self.assertEqual(a, b)


class TestUsage(BaseCLITestCase):

    def test_missing_command(self):
        code, out, err = self.run_cli()
        self.assertEqual(code, 1)
        self.assertIn('command is required', err)

    def test_unknown_command(self):
        self.assertEqual(self.run_cli('frobnicate')[0], 1)

    def test_unknown_flag(self):
        self.assertEqual(self.run_cli('correlate', '--o3', 'X')[0], 1)

    def test_version(self):
        from twotime import __version__
        with patch('sys.stdout', new_callable=six.StringIO) as out:
            with self.assertRaises(SystemExit):
                main(['--version'])
        self.assertEqual(out.getvalue().strip(), __version__)


class TestConfigFile(BaseCLITestCase):

    def write_config(self, values):
        path = os.path.join(self.tmp, 'run.json')
        with open(path, 'w') as fp:
            json.dump(values, fp)
        return path

    def test_flags_override_file(self):
        path = self.write_config({'basis': ['X', 'Y', 'Z'], 'trials': 4, 'seed': 3})
        code, report = self.run_json('gamma-check', '--config', path, '--seed', '5')
        self.assertEqual(report['seed'], 5)
        self.assertEqual(report['trials'], 4)
        self.assertEqual(report['basis'], ['X', 'Y', 'Z'])

    def test_tolerances_are_restored(self):
        path = self.write_config({'o1': 'X', 'o2': 'Z', 'tolerances': {'TAU_GAMMA': 1e-6}})
        code, report = self.run_json('correlate', '--config', path)
        self.assertEqual(code, 0)
        self.assertEqual(config.TAU_GAMMA, 1e-8)

    def test_bad_files(self):
        path = os.path.join(self.tmp, 'broken.json')
        with open(path, 'w') as fp:
            fp.write('{not json')
        self.assertEqual(self.run_cli('correlate', '--config', path)[0], 1)
        self.assertEqual(self.run_cli('correlate', '--config', os.path.join(self.tmp, 'missing.json'))[0], 1)
        path = self.write_config({'o1': 'X', 'o2': 'Z', 'colour': 'red'})
        code, out, err = self.run_cli('correlate', '--config', path)
        self.assertEqual(code, 1)
        self.assertIn('colour', err)


class TestTimestamp(BaseTwoTimeTestCase):

    def test_utc_format_without_deprecation_warnings(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            stamp = _utcnow()
        self.assertEqual([w for w in caught if issubclass(w.category, DeprecationWarning)], [])
        self.assertRegex(stamp, r'^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$')


class TestJsonFormat(BaseTwoTimeTestCase):

    def test_layout(self):
        text = to_json({'b': 1.0, 'a': [1, float('nan')], 'c': True, 'd': None, 'e': {}})
        self.assertEqual(text, '{\n  "a": [\n    1,\n    null\n  ],\n  "b": 1.0,\n  "c": true,\n'
                               '  "d": null,\n  "e": {}\n}')

    def test_floats(self):
        self.assertEqual(to_json(0.1), '0.10000000000000001')
        self.assertEqual(to_json(1e20), '1e+20')
        self.assertEqual(to_json(-2.0), '-2.0')
        self.assertEqual(to_json(float('inf')), 'null')
        self.assertEqual(float(to_json(1 / 3.0)), 1 / 3.0)

    def test_unsupported(self):
        with self.assertRaises(TypeError):
            to_json(object())


class TestParseState(BaseTwoTimeTestCase):

    def test_states(self):
        self.assertEqual(parse_state('maximally-mixed', 4).tag, 'maximally-mixed')
        self.assertEqual(parse_state(None, 2).tag, 'maximally-mixed')
        self.assertEqual(parse_state('pure:1', 2).tag, 'pure:1')
        self.assertEqual(parse_state('random:9', 2).tag, 'random:9')

    def test_errors(self):
        for spec in ('pure', 'pure:x', 'mixed:1', 'random:'):
            with self.assertRaises(ParameterError):
                parse_state(spec, 2)
        with self.assertRaises(ValidationError):
            parse_state('pure:2', 2)
