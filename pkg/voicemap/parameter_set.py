#!/usr/bin/env python
# -*- coding: utf-8 -*-
# parameter_set.py

# Copyright (c) 2024, the voicemap developers
#
# This file is part of the voicemap package.
#
# voicemap is free software: you can redistribute it and/or modify
# it under the terms of the MIT licence.
#
# voicemap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# MIT License for more details.
#
# You should have received a copy of the license
# along with voicemap. If not, see <https://opensource.org/licenses/MIT>

STATE_DEFAULT = 0
STATE_USER_SET = 1

TYPE_VOICING = 1 << 1
TYPE_FRAME = 1 << 2
TYPE_MAP = 1 << 3
TYPE_RENDER = 1 << 4


class ConfigError(ValueError):
    pass


class Parameter(object):
    """
    One configuration value with its default, the allowed range and a type flag. ``cast`` converts values given as
    text (config files, command line), ``choices`` restricts the value to a set of names.
    """
    __slots__ = ["value", "default", "range", "state", "type", "cast", "choices"]

    def __init__(self, default=None, range=(None, None), type=TYPE_VOICING, cast=float, choices=None):
        self.value = None
        self.default = default
        self.range = range
        self.state = STATE_DEFAULT
        self.type = type
        self.cast = cast
        self.choices = choices

    @property
    def current(self):
        return self.default if self.value is None else self.value

    def convert(self, name, value):
        """ cast a value (e.g. a string from a config file) and check it against the range of the parameter """
        if value is None:
            return None
        try:
            if self.cast is int:
                # integers may arrive as "3", "3.0" or 3.0 but never as 3.5
                number = float(value)
                if not number.is_integer():
                    raise ValueError
                value = int(number)
            else:
                value = self.cast(value)
        except (TypeError, ValueError):
            raise ConfigError("invalid value %r for parameter %s" % (value, name))
        if self.choices is not None and value not in self.choices:
            raise ConfigError("parameter %s has to be one of %s, not %r" % (name, ", ".join(self.choices), value))
        lower, upper = self.range
        if lower is not None and value < lower:
            raise ConfigError("parameter %s=%s is below its lower bound %s" % (name, value, lower))
        if upper is not None and value > upper:
            raise ConfigError("parameter %s=%s is above its upper bound %s" % (name, value, upper))
        return value


class DefaultAccess(object):
    """ attribute access to the defaults of a parameter dictionary """
    parameters = {}

    def __init__(self, parameters):
        self.parameters = parameters

    def __getattr__(self, name):
        if name in self.parameters:
            return self.parameters[name].default
        return object.__getattribute__(self, name)

    def __setattr__(self, name, value):
        if name not in self.parameters:
            return object.__setattr__(self, name, value)
        parameter = self.parameters[name]
        parameter.default = parameter.convert(name, value)


class ParameterSet(object):
    """
    A named collection of :py:class:`Parameter` objects. Reading an attribute gives the user set value or, if none
    is set, the default. Assigning None resets a parameter to its default.
    """
    parameters = {}

    def __init__(self, **parameters):
        self.parameters = parameters
        self.defaults = DefaultAccess(self.parameters)

    def __getattr__(self, name):
        if name in self.parameters:
            return self.parameters[name].current
        return object.__getattribute__(self, name)

    def __setattr__(self, name, value):
        if name not in self.parameters:
            return object.__setattr__(self, name, value)
        parameter = self.parameters[name]
        parameter.value = parameter.convert(name, value)
        parameter.state = STATE_DEFAULT if value is None else STATE_USER_SET

    def get_parameters(self, type=None):
        # with a type flag only the parameters of this type
        return [name for name, parameter in self.parameters.items() if type is None or parameter.type & type]

    def get_user_set_parameters(self, type=None):
        return [name for name in self.get_parameters(type) if self.parameters[name].state == STATE_USER_SET]

    def set_parameters(self, names, values=None):
        pairs = names.items() if isinstance(names, dict) else zip(names, values)
        for name, value in pairs:
            if name not in self.parameters:
                raise ConfigError("unknown parameter %s" % name)
            setattr(self, name, value)

    def items(self, type=None):
        for name in sorted(self.get_parameters(type)):
            yield name, self.parameters[name].current


class ClassWithParameterSet(object):
    """ forwards the attributes that name a parameter to the ``parameters`` set of the instance """
    parameters = None

    def __getattr__(self, name):
        if self.parameters is not None and (name == "defaults" or name in self.parameters.parameters):
            return getattr(self.parameters, name)
        return object.__getattribute__(self, name)

    def __setattr__(self, name, value):
        if self.parameters is not None and name in self.parameters.parameters:
            return setattr(self.parameters, name, value)
        return object.__setattr__(self, name, value)

    def set_parameters(self, names, values=None):
        self.parameters.set_parameters(names, values)
        self.validate()

    def validate(self):
        """ check invariants that involve more than one parameter """
        pass
