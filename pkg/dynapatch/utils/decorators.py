# -*- coding: utf-8 -*-


"""
Decorators shared across the package: a read-only classproperty used by
the defaults collections and the error translation used by the CLI.
"""


import functools

import click

from dynapatch.utils.exceptions import DynapatchError


class classproperty(object):
    """
    Read-only property evaluated on the class instead of the instance.
    """

    def __init__(self, fget):
        self.fget = fget

    def __get__(self, owner_self, owner_cls):
        return self.fget(owner_cls)


def domain_errors(command):
    """
    Translate package exceptions raised by a command into click errors.

    Domain failures end the command with exit status 1 and the exception
    message printed to stderr. Usage errors are left to click (exit
    status 2).
    """
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DynapatchError as exception:
            raise click.ClickException(str(exception))
        except OSError as exception:
            # unreadable inputs or unwritable output locations
            raise click.ClickException("{}: {}".format(
                exception.strerror or type(exception).__name__,
                exception.filename or exception))
    return wrapper
