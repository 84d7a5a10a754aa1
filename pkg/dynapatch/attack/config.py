# -*- coding: utf-8 -*-


"""
Configuration of the patch crafting runs.
"""


from dynapatch.utils.defaults import AttackDefaults
from dynapatch.utils.exceptions import AttackConfigError


class AttackConfig(object):
    """
    Objective and optimizer settings of a crafting run

    :param loss_kind: one of cls, obj, obj_cls or semantic
    :type loss_kind: `str`
    :param target_class: class y whose detection is suppressed
    :type target_class: `int`
    :param semantic_classes: classes suppressed together by the semantic
        loss (must contain the target class)
    :type semantic_classes: `tuple`
    :param semantic_base: per-class base loss of the semantic objective
        (cls or obj_cls)
    :type semantic_base: `str`
    :param tv_weight: weight alpha of the total variation term
    :type tv_weight: `float`
    :param learning_rate: Adam step size
    :param epochs: passes over the crafting frames
    :param batch_size: frames per optimizer step
    :param seed: seed of the initialization, shuffling and transformations
    :param patch_height: patch height in pixels
    :param patch_width: patch width in pixels
    :param max_subsets: optional upper bound on the subsets tried by the
        dynamic split search
    :raises AttackConfigError: if a setting is invalid
    """

    FIELDS = ('loss_kind', 'target_class', 'semantic_classes',
              'semantic_base', 'tv_weight', 'learning_rate', 'epochs',
              'batch_size', 'seed', 'patch_height', 'patch_width',
              'max_subsets')

    def __init__(self, **kwargs):
        for name in kwargs:
            if name not in self.FIELDS:
                valid = ", ".join(self.FIELDS)
                raise AttackConfigError("got an invalid attack setting '{}' "
                                        "(valid settings: {})".format(name,
                                                                      valid))
        for name in self.FIELDS:
            value = kwargs.get(name)
            if value is None and name != 'max_subsets':
                value = 0 if name == 'seed' else getattr(AttackDefaults,
                                                         name.upper())
            setattr(self, name, value)
        self.semantic_classes = tuple(int(c) for c in self.semantic_classes)
        self.target_class = int(self.target_class)
        self.tv_weight = float(self.tv_weight)
        self.learning_rate = float(self.learning_rate)
        for name in ('epochs', 'batch_size', 'seed', 'patch_height',
                     'patch_width'):
            setattr(self, name, int(getattr(self, name)))
        self.validate()

    def validate(self):
        if self.loss_kind not in AttackDefaults.LOSS_KINDS:
            raise AttackConfigError("unknown loss kind '{}' (valid kinds: {})"
                                    .format(self.loss_kind, ", ".join(
                                        AttackDefaults.LOSS_KINDS)))
        if self.tv_weight < 0.0:
            raise AttackConfigError("tv weight must not be negative (got {})"
                                    .format(self.tv_weight))
        if self.learning_rate <= 0.0:
            raise AttackConfigError("learning rate must be positive (got {})"
                                    .format(self.learning_rate))
        if self.epochs < 0 or self.batch_size < 1:
            raise AttackConfigError("invalid schedule: {} epochs with batch "
                                    "size {}".format(self.epochs,
                                                     self.batch_size))
        if self.patch_height < 1 or self.patch_width < 1:
            raise AttackConfigError("invalid patch size {}x{}".format(
                self.patch_width, self.patch_height))
        if self.max_subsets is not None and int(self.max_subsets) < 1:
            raise AttackConfigError("max subsets must be positive (got {})"
                                    .format(self.max_subsets))
        if self.loss_kind == 'semantic':
            if self.semantic_base == 'obj':
                raise AttackConfigError("the semantic loss cannot use the obj "
                                        "base loss (obj has no class "
                                        "argument)")
            if self.semantic_base not in AttackDefaults.SEMANTIC_BASE_KINDS:
                raise AttackConfigError("unknown semantic base loss '{}' "
                                        "(valid: {})".format(
                                            self.semantic_base, ", ".join(
                                                AttackDefaults
                                                .SEMANTIC_BASE_KINDS)))
            if not self.semantic_classes:
                raise AttackConfigError("the semantic loss requires a "
                                        "non-empty class set")
            if self.target_class not in self.semantic_classes:
                raise AttackConfigError("the semantic class set {} must "
                                        "contain the target class {}".format(
                                            list(self.semantic_classes),
                                            self.target_class))

    def copy(self, **overrides):
        settings = self.as_dict()
        settings.update(overrides)
        return AttackConfig(**settings)

    def as_dict(self):
        settings = {name: getattr(self, name) for name in self.FIELDS}
        settings['semantic_classes'] = list(self.semantic_classes)
        return settings

    def __repr__(self):
        return "AttackConfig({})".format(", ".join(
            "{}={!r}".format(k, v) for (k, v) in self.as_dict().items()))
