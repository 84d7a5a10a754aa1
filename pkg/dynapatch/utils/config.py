# -*- coding: utf-8 -*-


"""
Unified flat run configuration read from and written to YAML files.
"""


import hashlib
import json

import yaml

from dynapatch.attack.config import AttackConfig
from dynapatch.detector.config import DetectorConfig
from dynapatch.detector.training import TrainingConfig
from dynapatch.scenegen.scene import SceneSpec, ScreenSlot
from dynapatch.utils.defaults import (AttackDefaults, DetectorDefaults,
                                      SceneDefaults, TrainingDefaults)
from dynapatch.utils.exceptions import RunConfigError


# environment variable overriding the configured seed
SEED_VARIABLE = 'PF_SEED'


def _scene_keys():
    return {name: getattr(SceneDefaults, name.upper())
            for name in SceneSpec.FIELDS}


def default_settings():
    """
    Flat mapping of every configuration key to its default value.

    The image size is shared by the renderer and the detector input, the
    target class by the renderer, the detector training and the attack.
    """
    settings = _scene_keys()
    settings.update({
        'screens': len(SceneDefaults.SCREEN_SLOTS),
        'grid_size': DetectorDefaults.GRID_SIZE,
        'boxes_per_cell': DetectorDefaults.BOXES_PER_CELL,
        'num_classes': DetectorDefaults.NUM_CLASSES,
        'conv_layers': DetectorDefaults.CONV_LAYERS,
        'detection_threshold': DetectorDefaults.DETECTION_THRESHOLD,
        'nms_iou_threshold': DetectorDefaults.NMS_IOU_THRESHOLD,
        'train_epochs': TrainingDefaults.EPOCHS,
        'train_max_epochs': TrainingDefaults.MAX_EPOCHS,
        'train_learning_rate': TrainingDefaults.LEARNING_RATE,
        'train_batch_size': TrainingDefaults.BATCH_SIZE,
        'holdout_fraction': TrainingDefaults.HOLDOUT_FRACTION,
        'loss_kind': AttackDefaults.LOSS_KIND,
        'semantic_classes': AttackDefaults.SEMANTIC_CLASSES,
        'semantic_base': AttackDefaults.SEMANTIC_BASE,
        'tv_weight': AttackDefaults.TV_WEIGHT,
        'learning_rate': AttackDefaults.LEARNING_RATE,
        'epochs': AttackDefaults.EPOCHS,
        'batch_size': AttackDefaults.BATCH_SIZE,
        'patch_height': AttackDefaults.PATCH_HEIGHT,
        'patch_width': AttackDefaults.PATCH_WIDTH,
        'max_subsets': AttackDefaults.MAX_SUBSETS,
        'seed': 0,
    })
    return settings


def _plain(value):
    """
    Convert tuples (also nested ones) to lists for serialization.
    """
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


class RunConfig(object):
    """
    Flat key / value configuration of all pipeline stages

    Keys mirror the field names of the scene, the detector, the detector
    training and the attack configuration (training keys carry a `train_`
    prefix where they would clash with attack keys), extended by `screens`
    (number of screens attached to the target) and `seed`.

    :param settings: non-default settings
    :type settings: `dict`
    :raises RunConfigError: if an unknown key is given or if the resulting
        configuration is inconsistent
    """

    def __init__(self, settings=None):
        self.settings = default_settings()
        self.update(settings or {})

    def __getitem__(self, key):
        return self.settings[key]

    def update(self, settings):
        valid_keys = sorted(self.settings)
        for key, value in settings.items():
            if key not in self.settings:
                raise RunConfigError("got an invalid configuration key '{}' "
                                     "(valid keys: {})".format(
                                         key, ", ".join(valid_keys)))
            self.settings[key] = value
        self.validate()
        return self

    def validate(self):
        """
        Build every stage configuration once to surface invalid values.
        """
        screens = self.settings['screens']
        if not 0 <= int(screens) <= len(SceneDefaults.SCREEN_SLOTS):
            raise RunConfigError("number of screens must be in [0, {}] (got "
                                 "{})".format(len(SceneDefaults.SCREEN_SLOTS),
                                              screens))
        try:
            self.scene_spec()
            self.detector_config()
            self.training_config()
            self.attack_config()
        except (TypeError, ValueError) as exception:
            raise RunConfigError("invalid configuration value: {}".format(
                exception))

    @property
    def seed(self):
        return int(self.settings['seed'])

    # -- stage configurations ---------------------------------------------

    def screen_slots(self):
        return [ScreenSlot(s['slot'], s['face'], tuple(s['offset']),
                           tuple(s['size']))
                for s in SceneDefaults.SCREEN_SLOTS[:int(self['screens'])]]

    def scene_spec(self):
        """
        :rtype: :class:`~dynapatch.scenegen.scene.SceneSpec`
        """
        settings = {name: self.settings[name] for name in SceneSpec.FIELDS}
        return SceneSpec(screen_slots=self.screen_slots(), **settings)

    def detector_config(self):
        """
        :rtype: :class:`~dynapatch.detector.config.DetectorConfig`
        """
        settings = {name: self.settings[name] for name in DetectorConfig.FIELDS
                    if name != 'input_size'}
        return DetectorConfig(input_size=self['image_size'], **settings)

    def training_config(self):
        """
        :rtype: :class:`~dynapatch.detector.training.TrainingConfig`
        """
        return TrainingConfig(epochs=self['train_epochs'],
                              max_epochs=self['train_max_epochs'],
                              learning_rate=self['train_learning_rate'],
                              batch_size=self['train_batch_size'],
                              holdout_fraction=self['holdout_fraction'],
                              target_class=self['target_class'],
                              seed=self.seed)

    def attack_config(self, **overrides):
        """
        :rtype: :class:`~dynapatch.attack.config.AttackConfig`
        """
        settings = {name: self.settings[name] for name in AttackConfig.FIELDS
                    if name != 'seed'}
        settings['seed'] = self.seed
        settings.update(overrides)
        return AttackConfig(**settings)

    # -- overrides --------------------------------------------------------

    def apply_overrides(self, assignments):
        """
        Apply `key=value` assignments, values parsed as YAML scalars or
        flow sequences.

        :raises RunConfigError: for malformed assignments
        """
        settings = {}
        for assignment in assignments:
            key, separator, value = assignment.partition('=')
            if not separator or not key.strip():
                raise RunConfigError("malformed override '{}' (expected "
                                     "key=value)".format(assignment))
            try:
                settings[key.strip()] = yaml.safe_load(value)
            except yaml.YAMLError as exception:
                raise RunConfigError("unable to parse the value of override "
                                     "'{}': {}".format(assignment, exception))
        return self.update(settings)

    def apply_environment(self, environment):
        """
        Override the seed by the `PF_SEED` environment variable if set.
        """
        value = environment.get(SEED_VARIABLE)
        if value is None or value == '':
            return self
        try:
            seed = int(value)
        except ValueError:
            raise RunConfigError("environment variable {} must hold an "
                                 "integer seed (got '{}')".format(
                                     SEED_VARIABLE, value))
        return self.update({'seed': seed})

    # -- serialization ----------------------------------------------------

    def as_dict(self):
        return {key: _plain(value) for (key, value) in
                sorted(self.settings.items())}

    @property
    def digest(self):
        """
        sha256 of the canonical JSON form of the configuration.
        """
        canonical = json.dumps(self.as_dict(), sort_keys=True,
                               separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    def write(self, path):
        with open(path, 'w') as config_file:
            yaml.safe_dump(self.as_dict(), config_file,
                           default_flow_style=None, sort_keys=True)
        return path

    @classmethod
    def from_file(cls, path):
        """
        Read a flat YAML configuration file.

        :raises RunConfigError: if the file is not a flat key / value map
        """
        with open(path, 'r') as config_file:
            try:
                content = yaml.safe_load(config_file)
            except yaml.YAMLError as exception:
                raise RunConfigError("unable to parse configuration file "
                                     "'{}': {}".format(path, exception))
        if content is None:
            content = {}
        if not isinstance(content, dict):
            raise RunConfigError("configuration file '{}' must contain a "
                                 "key / value mapping".format(path))
        return cls(content)
