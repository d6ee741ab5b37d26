#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests de l'interface en ligne de commande (stdout = rapport, codes de sortie)
"""

import json

import pytest
from click.testing import CliRunner

from app import cli


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, data_path, *args):
    verb, fixture, *rest = args
    result = runner.invoke(cli, [verb, data_path(fixture), *rest, '--json'])
    return result, (json.loads(result.output) if result.exit_code in (0, 1) else None)


class TestDecomposeCommand:
    """Verbe decompose"""

    def test_a2_regular(self, runner, data_path):
        result, report = run_json(runner, data_path, 'decompose', 'a2_quiver.json', 'regular')
        assert result.exit_code == 0
        summands = report['result']['summands']
        assert [(s['dim'], s['multiplicity']) for s in summands] == [(2, 1), (1, 1)]
        assert report['schema_version'] == '1.0'
        assert report['field'] == {'p': 7}

    def test_zero_module(self, runner, data_path):
        result, report = run_json(runner, data_path, 'decompose', 'a2_quiver.json', 'zero')
        assert result.exit_code == 0
        assert report['result']['summands'] == []

    def test_witnesses_flag(self, runner, data_path):
        result, report = run_json(runner, data_path, 'decompose', 'a2_quiver.json', 'M',
                                  '--witnesses')
        assert result.exit_code == 0
        assert all('witnesses' in s for s in report['result']['summands'])

    def test_equal_seeds_are_byte_identical(self, runner, data_path):
        args = ['decompose', data_path('upper_triangular.json'), 'sum', '--seed', '17',
                '--json', '--witnesses']
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)
        assert first.exit_code == 0
        assert first.output == second.output

    def test_json_reparses_identically(self, runner, data_path):
        result = runner.invoke(cli, ['decompose', data_path('a2_quiver.json'), 'regular', '--json'])
        report = json.loads(result.output)
        assert json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + '\n' == result.output

    def test_text_output(self, runner, data_path):
        result = runner.invoke(cli, ['decompose', data_path('a2_quiver.json'), 'regular'])
        assert result.exit_code == 0
        assert '2 facteurs indécomposables' in result.output

    def test_modulus_too_small(self, runner, data_path):
        result = runner.invoke(cli, ['decompose', data_path('truncated_polynomial_p2.json'),
                                     'regular'])
        assert result.exit_code == 3
        assert result.output == ''

    def test_end_dimension_too_large(self, runner, data_path, tmp_path):
        # sur F_5, p > dim A = 3 mais dim End(M) = 5
        with open(data_path('a2_quiver.json'), encoding='utf-8') as handle:
            data = json.load(handle)
        data['field']['p'] = 5
        path = tmp_path / 'a2_p5.json'
        path.write_text(json.dumps(data), encoding='utf-8')
        result = runner.invoke(cli, ['decompose', str(path), 'M'])
        assert result.exit_code == 3
        assert result.output == ''
        assert runner.invoke(cli, ['decompose', str(path), 'regular']).exit_code == 0

    def test_corrupted_instance(self, runner, data_path):
        result = runner.invoke(cli, ['decompose', data_path('corrupted_structure_constants.json'),
                                     'regular'])
        assert result.exit_code == 2

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ['decompose', str(tmp_path / 'missing.json'), 'regular'])
        assert result.exit_code == 2

    def test_seed_out_of_range(self, runner, data_path):
        result = runner.invoke(cli, ['decompose', data_path('a2_quiver.json'), 'regular',
                                     '--seed', '-1'])
        assert result.exit_code == 2


class TestOtherCommands:
    """projcover, hom, end, radhom, is-iso"""

    def test_projcover_of_simple(self, runner, data_path):
        result, report = run_json(runner, data_path, 'projcover', 'a2_quiver.json', 'S1')
        assert result.exit_code == 0
        assert report['result']['cover_dim'] == 2
        assert report['result']['kernel_dim'] == 1

    def test_projcover_of_projective(self, runner, data_path):
        result, report = run_json(runner, data_path, 'projcover', 'a2_quiver.json', 'P1')
        assert report['result']['kernel_dim'] == 0

    def test_projcover_unknown_module(self, runner, data_path):
        result = runner.invoke(cli, ['projcover', data_path('a2_quiver.json'), 'P7'])
        assert result.exit_code == 2

    def test_projcover_needs_radical(self, runner, data_path):
        result = runner.invoke(cli, ['projcover', data_path('truncated_polynomial_p2.json'),
                                     'regular'])
        assert result.exit_code == 3

    def test_hom(self, runner, data_path):
        result, report = run_json(runner, data_path, 'hom', 'a2_quiver.json', 'P2', 'P1',
                                  '--witnesses')
        assert report['result']['dim'] == 1
        assert report['result']['basis'] == [[[0, 1]]]

    def test_end_of_simple(self, runner, data_path):
        result, report = run_json(runner, data_path, 'end', 'a2_quiver.json', 'S1')
        assert report['result']['dim'] == 1

    def test_radhom(self, runner, data_path):
        result, report = run_json(runner, data_path, 'radhom', 'kxy_x2y2.json', 'X', 'Y')
        assert result.exit_code == 0
        assert report['result']['hom_dim'] >= report['result']['dim'] >= 1

    def test_is_iso(self, runner, data_path):
        result, report = run_json(runner, data_path, 'is-iso', 'a2_quiver.json', 'M', 'M')
        assert report['result']['isomorphic'] is True
        result, report = run_json(runner, data_path, 'is-iso', 'a2_quiver.json',
                                  'rad_regular', 'P2')
        assert report['result']['isomorphic'] is True
        result, report = run_json(runner, data_path, 'is-iso', 'a2_quiver.json', 'P1', 'S1')
        assert report['result']['isomorphic'] is False


class TestVerifyCommand:
    """Suites de propriétés"""

    def test_kxy_radical_suite(self, runner, data_path):
        result, report = run_json(runner, data_path, 'verify', 'kxy_x2y2.json',
                                  '--suite', 'radical')
        assert result.exit_code == 0, result.output
        assert report['result']['passed'] == report['result']['total']

    def test_kxy_projrad_remark(self, runner, data_path):
        result, report = run_json(runner, data_path, 'verify', 'kxy_x2y2.json',
                                  '--suite', 'covers')
        assert result.exit_code == 0, result.output
        by_name = {p['name']: p for p in report['result']['properties']}
        assert by_name['instance_morphisms']['passed']
        assert not by_name['instance_morphisms'].get('skipped', False)

    def test_a2_all_suites(self, runner, data_path):
        result, report = run_json(runner, data_path, 'verify', 'a2_quiver.json')
        assert result.exit_code == 0, result.output
        suites = {p['suite'] for p in report['result']['properties']}
        assert suites == {'radical', 'covers', 'uniqueness', 'fitting'}
        assert report['result']['passed'] == report['result']['total']
        failures = [p['name'] for p in report['result']['properties'] if not p['passed']]
        assert failures == []

    def test_unknown_suite(self, runner, data_path):
        result = runner.invoke(cli, ['verify', data_path('a2_quiver.json'), '--suite', 'nope'])
        assert result.exit_code == 2

    def test_corrupted_instance(self, runner, data_path):
        result = runner.invoke(cli, ['verify', data_path('corrupted_structure_constants.json')])
        assert result.exit_code == 2

    def test_text_table(self, runner, data_path):
        result = runner.invoke(cli, ['verify', data_path('a2_quiver.json'), '--suite', 'fitting'])
        assert result.exit_code == 0
        assert "Suite 'fitting'" in result.output
