# -*- coding: utf-8 -*-


"""
Test suite for the crafting configuration
"""


import pytest


def test_defaults():
    from dynapatch.attack.config import AttackConfig
    config = AttackConfig()
    assert config.loss_kind == 'obj_cls'
    assert config.target_class == 0
    assert config.semantic_classes == (0, 1, 2)
    assert config.tv_weight == 0.1
    assert config.learning_rate == 0.03
    assert (config.epochs, config.batch_size) == (30, 8)
    assert (config.patch_height, config.patch_width) == (16, 32)
    assert config.seed == 0
    assert config.max_subsets is None


def test_copy_and_as_dict():
    from dynapatch.attack.config import AttackConfig
    config = AttackConfig(loss_kind='cls', semantic_classes=[2, 0])
    other = config.copy(loss_kind='obj', epochs=3)
    assert (other.loss_kind, other.epochs) == ('obj', 3)
    assert config.loss_kind == 'cls'
    assert other.as_dict()['semantic_classes'] == [2, 0]
    assert set(other.as_dict()) == set(AttackConfig.FIELDS)


@pytest.mark.parametrize('settings,message', [
    ({'bogus': 1}, "got an invalid attack setting 'bogus'"),
    ({'loss_kind': 'l2'}, "unknown loss kind 'l2'"),
    ({'tv_weight': -0.1}, "tv weight must not be negative"),
    ({'learning_rate': 0.0}, "learning rate must be positive"),
    ({'epochs': -1}, "invalid schedule"),
    ({'batch_size': 0}, "invalid schedule"),
    ({'patch_width': 0}, "invalid patch size"),
    ({'max_subsets': 0}, "max subsets must be positive"),
    ({'loss_kind': 'semantic', 'semantic_base': 'obj'},
     "cannot use the obj base loss"),
    ({'loss_kind': 'semantic', 'semantic_base': 'max'},
     "unknown semantic base loss 'max'"),
    ({'loss_kind': 'semantic', 'semantic_classes': ()},
     "requires a non-empty class set"),
    ({'loss_kind': 'semantic', 'semantic_classes': (1, 2)},
     "must contain the target class 0"),
])
def test_invalid_settings(settings, message):
    from dynapatch.attack.config import AttackConfig
    from dynapatch.utils.exceptions import AttackConfigError
    with pytest.raises(AttackConfigError) as exception:
        AttackConfig(**settings)
    assert message in str(exception.value)


def test_semantic_base_ignored_for_single_class_losses():
    from dynapatch.attack.config import AttackConfig
    config = AttackConfig(loss_kind='obj', semantic_base='obj')
    assert config.semantic_base == 'obj'
