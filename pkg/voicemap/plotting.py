#!/usr/bin/env python
# -*- coding: utf-8 -*-
# plotting.py

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

import numpy as np

from .config import RunConfig
from .voice_map import metric_name
from .statistic import coverage_band
from .render import difference_color


def _cell_grid(keys, values, config):
    (st_min, st_max), (spl_min, spl_max) = config.render_window
    grid = np.full((spl_max - spl_min, st_max - st_min), np.nan)
    for key, value in zip(keys, values):
        if st_min <= key.st_bin < st_max and spl_min <= key.spl_bin < spl_max:
            grid[key.spl_bin - spl_min, key.st_bin - st_min] = value
    return grid


def _setup_axes(config, title):
    import matplotlib.pyplot as plt
    (st_min, st_max), (spl_min, spl_max) = config.render_window
    plt.xlim(st_min, st_max)
    plt.ylim(spl_min, spl_max)
    plt.xlabel("Semitones re 55 Hz")
    plt.ylabel("SPL (dB)")
    plt.title(title)


def plotVoiceMap(voice_map, metric, config=None, **kwargs):
    """
    Draw the cell means of a metric into the current matplotlib axes, with the color bounds of the configuration.

    Parameters
    ----------
    voice_map : :py:class:`VoiceMap`
        the map.
    metric : str
        the metric name.
    config : :py:class:`RunConfig`, optional
        the render window and color bounds.
    """
    import matplotlib.pyplot as plt
    from matplotlib.colors import LinearSegmentedColormap
    from .render import COLD_TO_WARM

    if config is None:
        config = RunConfig()
    metric = metric_name(metric)
    keys, values = voice_map.means(metric, config.min_cycles_per_cell)
    lower, upper = config.color_bounds(metric)
    cmap = LinearSegmentedColormap.from_list("cold_to_warm", COLD_TO_WARM / 255)
    (st_min, st_max), (spl_min, spl_max) = config.render_window
    image = plt.imshow(_cell_grid(keys, values, config), origin="lower", cmap=cmap, vmin=lower, vmax=upper,
                       extent=[st_min, st_max, spl_min, spl_max], aspect="auto", interpolation="nearest", **kwargs)
    plt.colorbar(image, label=metric)
    _setup_axes(config, metric)
    return image


def plotDifferenceMap(difference, config=None, **kwargs):
    """ draw a difference map, green where the differences are positive and red where they are negative """
    import matplotlib.pyplot as plt
    from matplotlib.colors import to_rgb

    if config is None:
        config = RunConfig()
    (st_min, st_max), (spl_min, spl_max) = config.render_window
    rgb = np.ones((spl_max - spl_min, st_max - st_min, 3))
    for key in difference.keys():
        if st_min <= key.st_bin < st_max and spl_min <= key.spl_bin < spl_max:
            rgb[key.spl_bin - spl_min, key.st_bin - st_min] = to_rgb(difference_color(difference[key],
                                                                                     config.diff_cap))
    image = plt.imshow(rgb, origin="lower", extent=[st_min, st_max, spl_min, spl_max], aspect="auto",
                       interpolation="nearest", **kwargs)
    _setup_axes(config, "difference of %s" % difference.metric)
    return image


def plotCoverage(curves, labels=None, show_band=True):
    """
    Plot coverage curves (occupied cells versus the number of utterances) and, for two or more curves, their mean
    with a 95% confidence band.

    Parameters
    ----------
    curves : list
        coverage curves as returned by :py:func:`coverage_curve`.
    labels : list of str, optional
        a label for every curve.
    """
    import matplotlib.pyplot as plt

    if labels is None:
        labels = [None] * len(curves)
    for curve, label in zip(curves, labels):
        k, cells = np.array(curve, dtype=float).reshape(-1, 2).T
        plt.plot(k, cells, "-", lw=0.8, alpha=0.6, label=label)
    if show_band and len(curves) >= 2:
        band = coverage_band(curves)
        plt.plot(band["k"], band["mean"], "k-", lw=2, label="mean")
        plt.fill_between(band["k"], band["ci95_low"], band["ci95_high"], color="k", alpha=0.2, label="95% CI")
    plt.xlabel("number of utterances")
    plt.ylabel("occupied cells")
    if any(label is not None for label in labels) or (show_band and len(curves) >= 2):
        plt.legend()
