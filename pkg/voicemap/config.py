#!/usr/bin/env python
# -*- coding: utf-8 -*-
# config.py

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

from .parameter_set import ParameterSet, ClassWithParameterSet, Parameter, ConfigError, TYPE_MAP, TYPE_RENDER
from .cycles import VoicingConfig
from .frame_metrics import FrameConfig
from .statistic import WEIGHTINGS
from .voice_map import metric_name


class RunConfig(ClassWithParameterSet):
    """
    All settings of an analysis run: the voicing and frame parameters plus the map, statistics and render settings.
    The parameters of the voicing and frame configuration are shared, setting them here changes the module
    configuration as well.

    Parameters
    ----------
    voicing : :py:class:`VoicingConfig`, optional
        the cycle detector parameters.
    frames : :py:class:`FrameConfig`, optional
        the frame metric parameters.
    **kwargs
        values for any parameter of the run.

    Examples
    --------

    >>> import voicemap as vm
    >>> config = vm.RunConfig(min_run=4)
    >>> config.voicing.min_run
    4
    """

    def __init__(self, voicing=None, frames=None, **kwargs):
        self.voicing = voicing if voicing is not None else VoicingConfig()
        self.frames = frames if frames is not None else FrameConfig()
        params = dict(
            min_cycles_per_cell=Parameter(default=1, range=(1, None), type=TYPE_MAP, cast=int),
            weighting=Parameter(default="cell", type=TYPE_MAP, cast=str, choices=WEIGHTINGS),
            st_min=Parameter(default=0, range=(-12, 60), type=TYPE_RENDER, cast=int),
            st_max=Parameter(default=36, range=(-12, 60), type=TYPE_RENDER, cast=int),
            spl_min=Parameter(default=40, range=(0, 140), type=TYPE_RENDER, cast=int),
            spl_max=Parameter(default=100, range=(0, 140), type=TYPE_RENDER, cast=int),
            f0_hz_min=Parameter(default=55., type=TYPE_RENDER),
            f0_hz_max=Parameter(default=440., type=TYPE_RENDER),
            spl_db_min=Parameter(default=40., type=TYPE_RENDER),
            spl_db_max=Parameter(default=100., type=TYPE_RENDER),
            crest_min=Parameter(default=1., type=TYPE_RENDER),
            crest_max=Parameter(default=4., type=TYPE_RENDER),
            sb_db_min=Parameter(default=-40., type=TYPE_RENDER),
            sb_db_max=Parameter(default=0., type=TYPE_RENDER),
            cpps_db_min=Parameter(default=0., type=TYPE_RENDER),
            cpps_db_max=Parameter(default=15., type=TYPE_RENDER),
            diff_cap=Parameter(default=5., range=(1e-9, None), type=TYPE_RENDER),
        )
        # join the parameters of the module configurations
        params.update(self.voicing.parameters.parameters)
        params.update(self.frames.parameters.parameters)
        self.parameters = ParameterSet(**params)
        self.set_parameters(kwargs)

    def validate(self):
        self.voicing.validate()
        self.frames.validate()
        if self.st_min >= self.st_max or self.spl_min >= self.spl_max:
            raise ConfigError("the render window [%d, %d] st x [%d, %d] dB is empty"
                              % (self.st_min, self.st_max, self.spl_min, self.spl_max))
        for metric in ["f0_hz", "spl_db", "crest", "sb_db", "cpps_db"]:
            lower, upper = self.color_bounds(metric)
            if lower >= upper:
                raise ConfigError("the color scale of %s [%s, %s] is empty" % (metric, lower, upper))

    def color_bounds(self, metric):
        metric = metric_name(metric)
        return getattr(self, metric + "_min"), getattr(self, metric + "_max")

    @property
    def render_window(self):
        return (self.st_min, self.st_max), (self.spl_min, self.spl_max)

    def update(self, values):
        """ set parameters from a dictionary, e.g. command line overrides """
        self.set_parameters(values)
        return self

    def load(self, filename):
        """
        Read ``key = value`` lines from a file. Blank lines and lines starting with # are ignored.
        """
        values = {}
        with open(filename, "r") as fp:
            for line_number, line in enumerate(fp, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise ConfigError("%s:%d: expected key = value, found %r" % (filename, line_number, line))
                values[key.strip()] = value.strip()
        self.set_parameters(values)
        return self

    def metadata(self):
        """ the effective settings and the names of the user set ones, for the header of written files """
        metadata = dict(self.parameters.items())
        metadata["user_set"] = ",".join(sorted(self.parameters.get_user_set_parameters()))
        return dict(sorted(metadata.items()))

    def __str__(self):
        return "\n".join("%s = %s" % item for item in self.parameters.items())


def load_config(filename=None, overrides=None):
    """
    Create a run configuration from an optional config file and optional overrides (applied after the file).

    Parameters
    ----------
    filename : str, optional
        a file of ``key = value`` lines.
    overrides : dict, optional
        values that take precedence over the file.

    Returns
    -------
    config : :py:class:`RunConfig`
        the configuration.
    """
    config = RunConfig()
    if filename is not None:
        config.load(filename)
    if overrides:
        config.update(overrides)
    return config
