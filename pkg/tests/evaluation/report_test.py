# -*- coding: utf-8 -*-


"""
Test suite for the evaluation reports
"""


import pytest


def make_report(boundaries=(-10.0, 0.0, 5.0, 10.0)):
    from dynapatch.evaluation.report import EvalReport, FrameRecord
    records = [
        FrameRecord('frame_0000', -7.5, 0, (0, 2), False),
        FrameRecord('frame_0001', -2.5, 0, (), True),
        FrameRecord('frame_0002', 7.5, 2, (1,), True),
        FrameRecord('frame_0003', 9.0, 2, (), True),
    ]
    return EvalReport(records, 'white-box', [0], loss_kind='obj',
                      boundaries=boundaries)


def test_rates():
    report = make_report()
    assert report.frame_count == 4
    assert report.success_count == 3
    assert report.success_rate == 75.0
    assert report.bin_rates == [50.0, None, 100.0]
    assert make_report(boundaries=None).bin_rates is None
    assert "success_rate=75.00" in repr(report)


def test_report_dict():
    data = make_report().as_dict()
    assert data['label'] == 'white-box'
    assert data['class_ids'] == [0]
    assert data['success_count'] == 3
    assert data['frames'][0] == {'name': 'frame_0000', 'angle': -7.5,
                                 'bin': 0, 'detections': [0, 2],
                                 'success': False}


def test_write_report(tmpdir):
    import json
    import pathlib
    report = make_report()
    json_path = report.write_json(pathlib.Path(str(tmpdir)) / 'report.json')
    with open(json_path) as report_file:
        assert json.load(report_file) == report.as_dict()
    csv_path = report.write_csv(pathlib.Path(str(tmpdir)) / 'frames.csv')
    lines = csv_path.read_text().splitlines()
    assert lines[0] == 'name,angle,bin,detections,success'
    assert lines[1] == 'frame_0000,-7.5,0,0 2,0'
    assert lines[2] == 'frame_0001,-2.5,0,,1'
    unbinned = make_report(boundaries=None)
    unbinned.records[0] = unbinned.records[0]._replace(bin_index=None)
    lines = unbinned.write_csv(pathlib.Path(str(tmpdir)) / 'u.csv') \
        .read_text().splitlines()
    assert lines[1] == 'frame_0000,-7.5,,0 2,0'


def test_empty_report():
    from dynapatch.evaluation.report import EvalReport
    from dynapatch.utils.exceptions import EvaluationError
    with pytest.raises(EvaluationError) as exception:
        EvalReport([], 'white-box', [0])
    assert "without evaluated frames" in str(exception.value)
