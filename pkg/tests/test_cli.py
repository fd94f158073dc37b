import logging

import pytest

from meshcurv.cli import main
from meshcurv.version import __version__


def _data_rows(text):
    lines = [line for line in text.splitlines() if not line.startswith('#')]
    return lines[1:]


@pytest.fixture
def plane_fan_file(test_files_dir):
    return str(test_files_dir.joinpath('plane_fan.off'))


def test_estimate(plane_fan_file, capsys):
    assert main(['estimate', '--input', plane_fan_file]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == '# command=estimate'
    assert lines[1] == f'# version={__version__}'
    assert '# method=gauss-grad' in lines
    assert not any(line.startswith('# timestamp=') for line in lines)
    header = [line for line in lines if not line.startswith('#')][0]
    assert header.startswith('vertex,x,y,z,method,K,H,k1,k2')
    rows = _data_rows(out)
    assert len(rows) == 7
    center = rows[0].split(',')
    assert center[0] == '0'
    assert center[4] == 'gauss-grad'
    assert float(center[5]) == pytest.approx(0.0, abs=1e-12)
    assert center[-2:] == ['0', '0']


def test_estimate_all_methods_to_file(plane_fan_file, tmp_path, capsys):
    output = tmp_path.joinpath('curvatures.csv')
    code = main([
        'estimate', '--input', plane_fan_file, '--method', 'all',
        '--output', str(output), '--threads', '2',
    ])
    assert code == 0
    assert capsys.readouterr().out == ''
    rows = _data_rows(output.read_text())
    assert len(rows) == 28
    assert [row.split(',')[4] for row in rows[:4]] == [
        'gauss-grad', 'taubin-area', 'taubin-centroid', 'chen-schmitt',
    ]


def test_estimate_is_deterministic(plane_fan_file, capsys):
    main(['estimate', '--input', plane_fan_file, '--method', 'taubin-area'])
    first = capsys.readouterr().out
    main(['estimate', '--input', plane_fan_file, '--method', 'taubin-area'])
    second = capsys.readouterr().out
    assert first == second


def test_estimate_timestamp(plane_fan_file, capsys):
    assert main(['estimate', '--input', plane_fan_file, '--timestamp']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith('# timestamp=') for line in lines)


def test_estimate_unreadable_input(test_files_dir, caplog):
    with caplog.at_level(logging.ERROR, logger='meshcurv.cli'):
        code = main([
            'estimate', '--input',
            str(test_files_dir.joinpath('bad_header.off')),
        ])
    assert code == 1
    assert 'line 1' in caplog.text


def test_estimate_missing_input(tmp_path):
    missing = str(tmp_path.joinpath('missing.off'))
    assert main(['estimate', '--input', missing]) == 1


def test_estimate_empty_mesh(tmp_path):
    path = tmp_path.joinpath('empty.off')
    path.write_text('OFF\n0 0 0\n')
    assert main(['estimate', '--input', str(path)]) == 1


@pytest.mark.parametrize('argv', [
    pytest.param([], id='no-command'),
    pytest.param(['smooth'], id='unknown-command'),
    pytest.param(['estimate'], id='missing-input'),
    pytest.param(
        ['estimate', '--input', 'a.off', '--method', 'quadric'],
        id='unknown-method'
    ),
    pytest.param(
        ['estimate', '--input', 'a.off', '--threads', '0'],
        id='threads'
    ),
    pytest.param(
        ['estimate', '--input', 'a.off', '--colour'],
        id='unknown-flag'
    ),
    pytest.param(['bench', '--degrees', '3:2'], id='empty-range'),
    pytest.param(['bench', '--radii', '0.1'], id='malformed-range'),
    pytest.param(['bench', '--methods', 'quadric'], id='unknown-methods'),
    pytest.param(['bench', '--surfaces', 'many'], id='surfaces'),
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 1
    assert 'usage' in capsys.readouterr().err


def test_version(capsys):
    assert main(['--version']) == 0
    assert __version__ in capsys.readouterr().out


def test_bench(capsys):
    argv = [
        'bench', '--surfaces', '2', '--partitions', '2', '--seed', '3',
        '--methods', 'taubin-area,chen-schmitt', '--threads', '1',
    ]
    assert main(argv) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[:3] == [
        '# command=bench',
        f'# version={__version__}',
        '# seed=3',
    ]
    assert '# methods=taubin-area,chen-schmitt' in lines
    rows = _data_rows(out)
    assert len(rows) == 2 * 2 + 2 * 2 + 2
    assert rows[-1].startswith('overall,-1,chen-schmitt,')

    argv[-1] = '2'
    assert main(argv) == 0
    assert capsys.readouterr().out == out


def test_bench_invalid_configuration(caplog):
    with caplog.at_level(logging.ERROR, logger='meshcurv.cli'):
        assert main(['bench', '--valence', '2:4']) == 1
    assert 'invalid benchmark configuration' in caplog.text


def test_check_clean_mesh(test_files_dir, capsys):
    path = str(test_files_dir.joinpath('plane_fan.off'))
    assert main(['check', '--input', path]) == 0
    assert capsys.readouterr().out == 'no findings\n'


def test_check_flipped_face(test_files_dir, capsys):
    path = str(test_files_dir.joinpath('flipped_pair.off'))
    assert main(['check', '--input', path]) == 2
    assert capsys.readouterr().out == (
        'edge 2-0: traversed in the same direction by faces 0, 1\n'
    )


def test_check_degenerate_faces(tmp_path, capsys):
    path = tmp_path.joinpath('degenerate.off')
    path.write_text(
        'OFF\n4 3 0\n0 0 0\n1 0 0\n2 0 0\n0 1 0\n'
        '3 0 1 3\n3 0 1 2\n3 0 0 3\n'
    )
    assert main(['check', '--input', str(path)]) == 2
    assert capsys.readouterr().out.splitlines() == [
        'face 1: zero area',
        'face 2: repeated vertex',
    ]


def test_check_isolated_vertex(tmp_path, capsys):
    path = tmp_path.joinpath('isolated.obj')
    path.write_text('v 0 0 0\nv 1 0 0\nv 0 1 0\nv 5 5 5\nf 1 2 3\n')
    assert main(['check', '--input', str(path)]) == 2
    assert capsys.readouterr().out == 'vertex 3: isolated\n'


def test_check_unreadable_input(test_files_dir):
    path = str(test_files_dir.joinpath('non_triangle.obj'))
    assert main(['check', '--input', path]) == 1


def test_runtime_failure(plane_fan_file, monkeypatch, caplog):
    def broken(*args, **kwargs):
        raise RuntimeError('out of memory')

    monkeypatch.setattr('meshcurv.cli.estimate_curvatures', broken)
    with caplog.at_level(logging.ERROR, logger='meshcurv.cli'):
        assert main(['estimate', '--input', plane_fan_file]) == 3
    assert 'estimate failed: out of memory' in caplog.text
