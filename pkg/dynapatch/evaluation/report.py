# -*- coding: utf-8 -*-


"""
Evaluation reports holding per-frame attack outcomes.
"""


import collections
import csv
import json

from dynapatch.utils.exceptions import EvaluationError


FrameRecord = collections.namedtuple('FrameRecord', [
    'name', 'angle', 'bin_index', 'detected_classes', 'success'])
FrameRecord.__doc__ = """
Outcome of a single evaluated frame: the class ids of all surviving
detections and whether the attack succeeded on the frame
"""


class EvalReport(object):
    """
    Success rate report of an evaluation run

    :param records: per-frame outcomes
    :type records: `list` of :class:`FrameRecord`
    :param label: evaluation label (e.g. white-box, semantic, transfer)
    :type label: `str`
    :param class_ids: class ids whose detection marks a failed frame
    :type class_ids: `tuple`
    :param loss_kind: loss kind the evaluated patches were crafted with
    :type loss_kind: `str`
    :param boundaries: bin boundaries of the evaluated plan (if any)
    :type boundaries: `list`
    :raises EvaluationError: if no frame was evaluated
    """

    CSV_COLUMNS = ('name', 'angle', 'bin', 'detections', 'success')

    def __init__(self, records, label, class_ids, loss_kind=None,
                 boundaries=None):
        self.records = list(records)
        if not self.records:
            raise EvaluationError("cannot create a report without evaluated "
                                  "frames")
        self.label = label
        self.class_ids = tuple(int(c) for c in class_ids)
        self.loss_kind = loss_kind
        self.boundaries = None if boundaries is None else list(boundaries)

    def __repr__(self):
        return "EvalReport(label={}, frames={}, success_rate={:.2f})".format(
            self.label, self.frame_count, self.success_rate)

    @property
    def frame_count(self):
        return len(self.records)

    @property
    def success_count(self):
        return sum(1 for r in self.records if r.success)

    @property
    def success_rate(self):
        """
        Percentage of frames in which none of the class ids was detected.
        """
        return 100.0 * self.success_count / self.frame_count

    @property
    def bin_rates(self):
        """
        Success rate of every plan bin (None for bins without frames), or
        None if no plan was evaluated.
        """
        if self.boundaries is None:
            return None
        rates = []
        for index in range(len(self.boundaries) - 1):
            outcomes = [r.success for r in self.records
                        if r.bin_index == index]
            rates.append(100.0 * sum(outcomes) / len(outcomes)
                         if outcomes else None)
        return rates

    def as_dict(self):
        return {
            'label': self.label,
            'loss_kind': self.loss_kind,
            'class_ids': list(self.class_ids),
            'frame_count': self.frame_count,
            'success_count': self.success_count,
            'success_rate': self.success_rate,
            'boundaries': self.boundaries,
            'bin_rates': self.bin_rates,
            'frames': [{'name': r.name, 'angle': r.angle,
                        'bin': r.bin_index,
                        'detections': list(r.detected_classes),
                        'success': r.success} for r in self.records],
        }

    def write_json(self, path):
        with open(path, 'w') as report_file:
            json.dump(self.as_dict(), report_file, indent=2, sort_keys=True)
            report_file.write('\n')
        return path

    def write_csv(self, path):
        """
        Write the per-frame table, detections joined by spaces.
        """
        with open(path, 'w', newline='') as table_file:
            writer = csv.writer(table_file, lineterminator='\n')
            writer.writerow(self.CSV_COLUMNS)
            for record in self.records:
                writer.writerow([
                    record.name, repr(record.angle),
                    '' if record.bin_index is None else record.bin_index,
                    " ".join(str(c) for c in record.detected_classes),
                    int(record.success)])
        return path
