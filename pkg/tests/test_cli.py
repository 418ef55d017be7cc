import json

import pytest

from uncrossgame import GroundSet
from uncrossgame.cli import emit_instance, generate_instance, parse_instance
from uncrossgame.cli.cli_main import (EXIT_FAILED, EXIT_GENERATION, EXIT_OK, EXIT_PARSE,
                                      build_parser, main)


def write_json(path, data):
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


def read_json(path):
    return json.loads(path.read_text(encoding='utf-8'))


@pytest.fixture
def instance_path(tmp_path):
    out = tmp_path / 'instance.json'
    assert main(['gen', '--n', '5', '--family-size', '6', '--seed', '3', '--out', str(out)]) == EXIT_OK
    return out


@pytest.fixture
def bad_table_path(tmp_path):
    return write_json(tmp_path / 'bad.json', {
        'ground_set_size': 4,
        'function': {'kind': 'table', 'payload': {'values': [
            {'set': [1, 2], 'value': '2'}, {'set': [2, 3], 'value': '2'}]}},
        'family': [[1, 2], [2, 3]],
    })


@pytest.fixture
def zero_path(tmp_path):
    return write_json(tmp_path / 'zero.json', {
        'ground_set_size': 4,
        'function': {'kind': 'table', 'payload': {'values': []}},
        'family': [[1, 2], [2, 3]],
        'dual': [{'set': [1, 2], 'weight': '2'}, {'set': [2, 3], 'weight': '3'}],
    })


class TestGen:
    def test_deterministic(self, tmp_path, instance_path):
        again = tmp_path / 'again.json'
        main(['gen', '--n', '5', '--family-size', '6', '--seed', '3', '--out', str(again)])
        assert read_json(again) == read_json(instance_path)

    def test_seed_from_environment(self, tmp_path, monkeypatch, instance_path):
        monkeypatch.setenv('UNCROSSGAME_SEED', '3')
        out = tmp_path / 'env.json'
        assert main(['gen', '--n', '5', '--family-size', '6', '--out', str(out)]) == EXIT_OK
        assert read_json(out) == read_json(instance_path)

    def test_contents(self, instance_path):
        data = read_json(instance_path)
        assert data['ground_set_size'] == 5
        assert len(data['family']) == 6
        assert 'dual' in data and 'lp' in data

    def test_empty_family(self, tmp_path):
        out = tmp_path / 'empty.json'
        assert main(['gen', '--n', '4', '--family-size', '0', '--out', str(out)]) == EXIT_OK
        assert read_json(out)['family'] == []

    def test_too_large(self, tmp_path):
        out = tmp_path / 'big.json'
        assert main(['gen', '--n', '17', '--family-size', '3', '--out', str(out)]) == EXIT_GENERATION
        assert not out.exists()

    @pytest.mark.parametrize('kind', ['requirement', 'deficiency', 'indicator'])
    def test_kinds_round_trip(self, kind):
        instance = generate_instance(5, 4, kind=kind, seed=11)
        data = emit_instance(instance)
        parsed = parse_instance(json.loads(json.dumps(data)))
        assert emit_instance(parsed) == data
        assert all(parsed.f(X) == instance.f(X) for X in GroundSet(5).bipartitions())


class TestVerifyFn:
    def test_generated_passes(self, instance_path, capsys):
        assert main(['verify-fn', str(instance_path)]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)['ok'] is True

    def test_bad_table(self, bad_table_path, tmp_path):
        out = tmp_path / 'report.json'
        assert main(['verify-fn', bad_table_path, '--out', str(out)]) == EXIT_FAILED
        report = read_json(out)
        assert report['ok'] is False
        assert report['violation']['lhs'] == '4'
        assert report['violation']['rhs'] == '0'

    def test_malformed_json(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"ground_set_size": 4,', encoding='utf-8')
        assert main(['verify-fn', str(path)]) == EXIT_PARSE

    def test_missing_file(self, tmp_path):
        assert main(['verify-fn', str(tmp_path / 'nope.json')]) == EXIT_PARSE

    @pytest.mark.parametrize('data', [
        {'ground_set_size': 1, 'function': {'kind': 'table', 'payload': {'values': []}}, 'family': []},
        {'ground_set_size': 4, 'function': {'kind': 'magic', 'payload': {}}, 'family': []},
        {'ground_set_size': 4, 'function': {'kind': 'table', 'payload': {'values': []}},
         'family': [[1, 2, 3, 4]]},
        {'ground_set_size': 4, 'function': {'kind': 'table', 'payload': {'values': []}},
         'family': [], 'dual': [{'set': [1], 'weight': '-1'}]},
        {'ground_set_size': 4, 'function': {'kind': 'table', 'payload': {'values': []}},
         'family': [], 'lp': {'edges': [[1, 2]], 'costs': ['1', '2']}},
    ])
    def test_bad_fields(self, tmp_path, data):
        assert main(['verify-fn', write_json(tmp_path / 'bad.json', data)]) == EXIT_PARSE


class TestPlayReplay:
    @pytest.mark.parametrize('blue', ['random:0', 'maxpot', 'alwaysx'])
    def test_play_and_replay(self, tmp_path, instance_path, blue):
        report_path, trace_path = tmp_path / 'report.json', tmp_path / 'trace.json'
        code = main(['play', str(instance_path), '--blue', blue, '--trace', str(trace_path),
                     '--out', str(report_path)])
        report = read_json(report_path)
        assert code == EXIT_OK
        assert report['won'] is True
        assert report['within_bound'] is True

        replay_path = tmp_path / 'replay.json'
        assert main(['replay', str(instance_path), str(trace_path),
                     '--out', str(replay_path)]) == EXIT_OK
        replayed = read_json(replay_path)
        assert replayed['iterations'] == report['iterations']
        assert replayed['matches_trace'] is True
        assert replayed['laminar'] is True

    def test_exhaustive(self, tmp_path, zero_path):
        out = tmp_path / 'report.json'
        assert main(['play', zero_path, '--blue', 'exhaustive', '--allow-none',
                     '--out', str(out)]) == EXIT_OK
        assert read_json(out)['iterations'] <= 3

    def test_naive_red(self, tmp_path, zero_path):
        out = tmp_path / 'report.json'
        assert main(['play', zero_path, '--red', 'naive', '--blue', 'alwaysx',
                     '--out', str(out)]) == EXIT_OK

    def test_unknown_blue(self, zero_path):
        with pytest.raises(SystemExit):
            build_parser().parse_args(['play', zero_path, '--blue', 'sometimes'])

    def test_tampered_trace(self, tmp_path, instance_path):
        trace_path = tmp_path / 'trace.json'
        main(['play', str(instance_path), '--trace', str(trace_path), '--out',
              str(tmp_path / 'report.json')])
        data = read_json(trace_path)
        data['final_family'] = [[1, 2], [2, 3]]
        write_json(trace_path, data)
        assert main(['replay', str(instance_path), str(trace_path),
                     '--out', str(tmp_path / 'replay.json')]) == EXIT_FAILED


class TestUncross:
    @pytest.mark.parametrize('mode', ['naive', 'strategic'])
    def test_modes(self, tmp_path, zero_path, mode):
        out = tmp_path / 'report.json'
        assert main(['uncross', zero_path, '--mode', mode, '--out', str(out)]) == EXIT_OK
        report = read_json(out)
        assert report['laminar'] is True
        assert report['steps'] == len(report['records'])

    def test_scale_keeps_steps(self, tmp_path, instance_path):
        first, second = tmp_path / 'a.json', tmp_path / 'b.json'
        main(['uncross', str(instance_path), '--out', str(first)])
        main(['uncross', str(instance_path), '--scale', '1024/3', '--out', str(second)])
        assert read_json(first)['steps'] == read_json(second)['steps']

    @pytest.mark.parametrize('scale', ['0', '-1', 'abc', '0.5'])
    def test_bad_scale(self, zero_path, scale):
        assert main(['uncross', zero_path, '--scale', scale]) == EXIT_PARSE

    def test_missing_dual(self, bad_table_path):
        assert main(['uncross', bad_table_path]) == EXIT_PARSE


class TestLpExperiment:
    def test_trials(self, tmp_path, instance_path):
        out = tmp_path / 'lp.json'
        code = main(['lp-experiment', str(instance_path), '--trials', '2', '--seed', '5',
                     '--out', str(out)])
        summary = read_json(out)
        assert code in (EXIT_OK, EXIT_FAILED)
        assert summary['passed'] + summary['failed'] + summary['nothing_to_improve'] == 2
        assert (code == EXIT_OK) == (summary['failed'] == 0)

    def test_missing_lp(self, zero_path):
        assert main(['lp-experiment', zero_path]) == EXIT_PARSE

    def test_bad_epsilon(self, instance_path):
        assert main(['lp-experiment', str(instance_path), '--epsilon', 'x']) == EXIT_PARSE
