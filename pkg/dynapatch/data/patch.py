# -*- coding: utf-8 -*-


"""
Adversarial patch datatype and its file formats.

A patch is stored as 8-bit binary PPM image accompanied by a JSON
metadata sidecar. The optional `PFPATCH v1` companion stores the exact
float64 pixel values.
"""


import json
import pathlib

import numpy as np

from dynapatch.tensor import Tensor
from dynapatch.utils.defaults import FileDefaults
from dynapatch.utils.exceptions import PatchFileError
from dynapatch.utils.images import read_ppm, write_ppm


class Patch(object):
    """
    Optimizable patch image assigned to one screen slot

    :param pixels: values of shape (3, h, w) in [0, 1]
    :type pixels: `numpy.ndarray` or :class:`~dynapatch.tensor.Tensor`
    :param slot: id of the screen slot the patch is shown on
    :type slot: `int`
    :param angle_subset: optional (low, high) view angle range the patch
        was crafted for
    :type angle_subset: `tuple`
    :param loss_kind: loss the patch was crafted with
    :type loss_kind: `str`
    :param seed: seed used for the crafting run
    :type seed: `int`
    :param iterations: number of optimizer steps performed
    :type iterations: `int`
    """

    def __init__(self, pixels, slot, angle_subset=None, loss_kind=None,
                 seed=None, iterations=0, requires_grad=False):
        if isinstance(pixels, Tensor):
            tensor = pixels
        else:
            tensor = Tensor(pixels, requires_grad=requires_grad)
        if tensor.ndim != 3 or tensor.shape[0] != 3:
            raise PatchFileError("patch pixels must have shape (3, h, w) but "
                                 "got {}".format(tensor.shape))
        self.pixels = tensor
        self.slot = int(slot)
        self.angle_subset = (None if angle_subset is None else
                             (float(angle_subset[0]),
                              float(angle_subset[1])))
        self.loss_kind = loss_kind
        self.seed = seed
        self.iterations = int(iterations)

    def __repr__(self):
        return "Patch(slot={}, shape={}, loss_kind={})".format(
            self.slot, self.shape, self.loss_kind)

    @property
    def shape(self):
        return self.pixels.shape

    @property
    def values(self):
        return self.pixels.values

    def detach(self):
        """
        Copy of the patch whose pixels are a constant tensor.
        """
        return Patch(self.pixels.values.copy(), self.slot,
                     angle_subset=self.angle_subset,
                     loss_kind=self.loss_kind, seed=self.seed,
                     iterations=self.iterations)

    @property
    def metadata(self):
        return {
            'slot': self.slot,
            'angle_subset': (None if self.angle_subset is None
                             else list(self.angle_subset)),
            'loss_kind': self.loss_kind,
            'seed': self.seed,
            'iterations': self.iterations,
        }

    def write(self, path_stem, exact=True):
        """
        Write the patch to `<stem>.ppm` and `<stem>.json` (and the exact
        `<stem>.pfpatch` companion if `exact` is set).

        :returns: paths of all written files
        :rtype: `list`
        """
        path_stem = pathlib.Path(path_stem)
        ppm_path = path_stem.with_suffix('.ppm')
        json_path = path_stem.with_suffix('.json')
        write_ppm(ppm_path, self.values)
        with open(json_path, 'w') as metadata_file:
            json.dump(self.metadata, metadata_file, indent=2, sort_keys=True)
            metadata_file.write('\n')
        written = [ppm_path, json_path]
        if exact:
            exact_path = path_stem.with_suffix('.pfpatch')
            write_exact(exact_path, self.values)
            written.append(exact_path)
        return written

    @classmethod
    def read(cls, path_stem):
        """
        Read a patch from its stem; the exact companion takes precedence
        over the 8-bit image if it is available.

        :raises PatchFileError: if the image or the metadata is missing
        """
        path_stem = pathlib.Path(path_stem)
        json_path = path_stem.with_suffix('.json')
        if not json_path.is_file():
            raise PatchFileError("missing patch metadata file '{}'"
                                 .format(json_path))
        with open(json_path, 'r') as metadata_file:
            try:
                metadata = json.load(metadata_file)
            except ValueError as exception:
                raise PatchFileError("unable to parse patch metadata '{}': {}"
                                     .format(json_path, exception))
        exact_path = path_stem.with_suffix('.pfpatch')
        ppm_path = path_stem.with_suffix('.ppm')
        if exact_path.is_file():
            pixels = read_exact(exact_path)
        elif ppm_path.is_file():
            pixels = read_ppm(ppm_path)
        else:
            raise PatchFileError("missing patch image '{}'".format(ppm_path))
        try:
            return cls(pixels, metadata['slot'],
                       angle_subset=metadata.get('angle_subset'),
                       loss_kind=metadata.get('loss_kind'),
                       seed=metadata.get('seed'),
                       iterations=metadata.get('iterations', 0))
        except KeyError as exception:
            raise PatchFileError("patch metadata '{}' lacks required key {}"
                                 .format(json_path, exception))


def write_exact(path, pixels):
    """
    Write float64 patch values in the `PFPATCH v1` format.
    """
    pixels = np.asarray(pixels, dtype=np.float64)
    header = "{}\nshape {}\n".format(FileDefaults.PATCH_HEADER,
                                     " ".join(str(n) for n in pixels.shape))
    with open(path, 'wb') as exact_file:
        exact_file.write(header.encode('ascii'))
        exact_file.write(pixels.astype('<f8').tobytes())


def read_exact(path):
    """
    Read float64 patch values stored in the `PFPATCH v1` format.

    :raises PatchFileError: if the header or the payload are invalid
    """
    with open(path, 'rb') as exact_file:
        header = exact_file.readline().decode('ascii', 'replace').strip()
        if header != FileDefaults.PATCH_HEADER:
            raise PatchFileError("invalid patch file header '{}' in '{}' "
                                 "(expected '{}')".format(
                                     header, path, FileDefaults.PATCH_HEADER))
        shape_line = exact_file.readline().decode('ascii', 'replace').split()
        payload = exact_file.read()
    try:
        if shape_line[0] != 'shape':
            raise ValueError
        shape = tuple(int(n) for n in shape_line[1:])
    except (IndexError, ValueError):
        raise PatchFileError("invalid shape record in patch file '{}'"
                             .format(path))
    expected = int(np.prod(shape)) * 8
    if len(payload) != expected:
        raise PatchFileError("patch file '{}' holds {} bytes of pixel data "
                             "but shape {} requires {}"
                             .format(path, len(payload), shape, expected))
    return np.frombuffer(payload, dtype='<f8').reshape(shape).astype(
        np.float64)


def random_patch(rng, slot, height, width, init_range):
    """
    Uniformly initialized patch requiring gradients.
    """
    low, high = init_range
    pixels = rng.uniform(low, high, size=(3, height, width))
    return Patch(pixels, slot, requires_grad=True)
