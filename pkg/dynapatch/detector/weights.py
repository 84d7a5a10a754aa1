# -*- coding: utf-8 -*-


"""
Detector weight files.

Layout: a `PFDET v1` header line, one `<field> <value>` text line per
DetectorConfig field, a `weights <count>` line and finally the raw weights
as little-endian float64 values in declared layer order.
"""


import pathlib

import numpy as np

from dynapatch.detector.config import DetectorConfig
from dynapatch.detector.network import Detector
from dynapatch.utils.defaults import FileDefaults
from dynapatch.utils.exceptions import (DetectorWeightsError,
                                        DetectorConfigError)


def _format_value(name, value):
    if name == 'conv_layers':
        return ";".join(",".join(str(v) for v in layer) for layer in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_value(name, text):
    if name == 'conv_layers':
        return tuple(tuple(int(v) for v in layer.split(','))
                     for layer in text.split(';'))
    if name in ('detection_threshold', 'nms_iou_threshold'):
        return float(text)
    return int(text)


def write_weights(detector, path):
    """
    Write a detector to a weight file.

    :param detector: the detector to store
    :type detector: :class:`~dynapatch.detector.network.Detector`
    :param path: output file
    :type path: `str` or `pathlib.Path`
    """
    lines = [FileDefaults.WEIGHTS_HEADER]
    for name, value in detector.config.as_dict().items():
        lines.append("{} {}".format(name, _format_value(name, value)))
    lines.append("weights {}".format(detector.parameter_count))
    payload = np.concatenate([w.values.reshape(-1)
                              for w in detector.weights]).astype('<f8')
    with open(path, 'wb') as weight_file:
        weight_file.write(("\n".join(lines) + "\n").encode('ascii'))
        weight_file.write(payload.tobytes())


def read_weights(path):
    """
    Read a detector from a weight file.

    :returns: the stored detector
    :rtype: :class:`~dynapatch.detector.network.Detector`
    :raises DetectorWeightsError: if the file is malformed
    """
    path = pathlib.Path(path)
    if not path.is_file():
        raise DetectorWeightsError("missing detector weight file '{}'"
                                   .format(path))
    with open(path, 'rb') as weight_file:
        header = weight_file.readline().decode('ascii', 'replace').strip()
        if header != FileDefaults.WEIGHTS_HEADER:
            raise DetectorWeightsError("invalid weight file header '{}' in "
                                       "'{}' (expected '{}')".format(
                                           header, path,
                                           FileDefaults.WEIGHTS_HEADER))
        fields = {}
        count = None
        while count is None:
            line = weight_file.readline()
            if not line:
                raise DetectorWeightsError("weight file '{}' ends before the "
                                           "weights record".format(path))
            name, _, text = line.decode('ascii', 'replace').strip() \
                .partition(' ')
            try:
                if name == 'weights':
                    count = int(text)
                elif name in DetectorConfig.FIELDS:
                    fields[name] = _parse_value(name, text)
                else:
                    valid = ", ".join(DetectorConfig.FIELDS)
                    raise DetectorWeightsError(
                        "got an invalid field '{}' in weight file '{}' "
                        "(valid fields: {})".format(name, path, valid))
            except ValueError:
                raise DetectorWeightsError("unable to parse value '{}' of "
                                           "field '{}' in '{}'".format(
                                               text, name, path))
        payload = weight_file.read()
    missing = [name for name in DetectorConfig.FIELDS if name not in fields]
    if missing:
        raise DetectorWeightsError("weight file '{}' lacks field(s) {}"
                                   .format(path, ", ".join(missing)))
    try:
        config = DetectorConfig(**fields)
    except DetectorConfigError as exception:
        raise DetectorWeightsError("invalid detector configuration in '{}': "
                                   "{}".format(path, exception))
    shapes = Detector.weight_shapes(config)
    expected = int(sum(np.prod(shape) for shape in shapes))
    if count != expected or len(payload) != 8 * expected:
        raise DetectorWeightsError("weight file '{}' holds {} bytes for {} "
                                   "declared weights but the configuration "
                                   "requires {} weights".format(
                                       path, len(payload), count, expected))
    flat = np.frombuffer(payload, dtype='<f8').astype(np.float64)
    weights, offset = [], 0
    for shape in shapes:
        size = int(np.prod(shape))
        weights.append(flat[offset:offset + size].reshape(shape))
        offset += size
    return Detector(config, weights)
