#!/usr/bin/env python
# -*- coding: utf-8 -*-
# statistic.py

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
import pandas as pd

from .voice_map import metric_name, METRICS

Z_95 = 1.96

WEIGHTING_CELL = "cell"
WEIGHTING_CYCLE = "cycle"
WEIGHTINGS = [WEIGHTING_CELL, WEIGHTING_CYCLE]

STATS_COLUMNS = ["metric", "mean", "std", "ci95_low", "ci95_high", "n_cells", "diff_from_ref", "overlap_cells"]
TABLE_COLUMNS = ["system", "Mean ± Std.dev.", "CI Range (95%)", "Diff from Raw", "Overlap"]


class InsufficientCellsError(ValueError):
    pass


def print_mean_std(x, y, digits=2):
    return "%.*f ± %.*f" % (digits, x, digits, y)


def print_difference(x, digits=2):
    if x is None:
        return "n/a"
    # avoid printing -0.00
    if round(x, digits) == 0:
        x = 0.0
    return "%+.*f" % (digits, x)


class MapStats(object):
    """
    The summary statistics of one metric of a voice map.

    Attributes
    ----------
    mean, std : float
        the mean and sample standard deviation (n-1) of the cell means.
    ci95_low, ci95_high : float
        mean -/+ 1.96 std / sqrt(n).
    n_cells : int
        the number of cells that carry the metric.
    diff_from_ref : float or None
        the mean difference to a reference map over the overlapping cells.
    """
    __slots__ = ["metric", "mean", "std", "ci95_low", "ci95_high", "n_cells", "diff_from_ref", "overlap_cells",
                 "weighting"]

    def __init__(self, metric, mean, std, n_cells, observations=None, diff_from_ref=None, overlap_cells=None,
                 weighting=WEIGHTING_CELL):
        self.metric = metric
        self.mean = mean
        self.std = std
        self.n_cells = n_cells
        half_width = Z_95 * std / np.sqrt(observations if observations is not None else n_cells)
        self.ci95_low = mean - half_width
        self.ci95_high = mean + half_width
        self.diff_from_ref = diff_from_ref
        self.overlap_cells = overlap_cells
        self.weighting = weighting

    def as_row(self):
        return [self.metric, self.mean, self.std, self.ci95_low, self.ci95_high, self.n_cells,
                np.nan if self.diff_from_ref is None else self.diff_from_ref,
                np.nan if self.overlap_cells is None else self.overlap_cells]

    def __str__(self):
        text = "%s %s [%.2f, %.2f]" % (self.metric, print_mean_std(self.mean, self.std), self.ci95_low, self.ci95_high)
        if self.diff_from_ref is not None:
            text += " %s" % print_difference(self.diff_from_ref)
        return text


def weighted_mean_std(values, weights):
    total = np.sum(weights)
    mean = np.sum(weights * values) / total
    variance = np.sum(weights * (values - mean) ** 2) / (total - 1)
    return mean, np.sqrt(variance), total


def stats(voice_map, metric, reference=None, weighting=WEIGHTING_CELL, min_cycles_per_cell=1):
    """
    The statistics of a metric over the cells of a map, each cell is one observation (or each cycle when the
    weighting is "cycle").

    Parameters
    ----------
    voice_map : :py:class:`VoiceMap`
        the map.
    metric : str
        the metric name.
    reference : :py:class:`VoiceMap`, optional
        a reference map, when given the mean difference over the overlapping cells is reported.
    weighting : str, optional
        "cell" (default) or "cycle".

    Returns
    -------
    stats : :py:class:`MapStats`
        the statistics.

    Examples
    --------

    >>> import voicemap as vm
    >>> print(vm.stats(voice_map, "cpps"))
    cpps_db 3.00 ± 1.41 [1.04, 4.96]
    """
    metric = metric_name(metric)
    if weighting not in WEIGHTINGS:
        raise ValueError("weighting has to be one of %s" % ", ".join(WEIGHTINGS))
    keys, means = voice_map.means(metric, min_cycles_per_cell)
    if len(keys) < 2:
        raise InsufficientCellsError("%s: %d cells carry %s, at least 2 are needed"
                                     % (voice_map.source or "map", len(keys), metric))

    if weighting == WEIGHTING_CELL:
        weights = np.ones(len(keys))
        mean, std = np.mean(means), np.std(means, ddof=1)
        observations = len(keys)
    else:
        weights = np.array([voice_map.cells[key].counts[metric] for key in keys], dtype=float)
        mean, std, observations = weighted_mean_std(means, weights)

    diff_from_ref = overlap_cells = None
    if reference is not None:
        reference_keys, reference_means = reference.means(metric, min_cycles_per_cell)
        reference_means = dict(zip(reference_keys, reference_means))
        shared = [index for index, key in enumerate(keys) if key in reference_means]
        overlap_cells = len(shared)
        if shared:
            deltas = np.array([means[index] - reference_means[keys[index]] for index in shared])
            diff_from_ref = float(np.sum(weights[shared] * deltas) / np.sum(weights[shared]))

    return MapStats(metric, float(mean), float(std), len(keys), observations, diff_from_ref, overlap_cells, weighting)


def stats_table(voice_map, reference=None, metrics=None, weighting=WEIGHTING_CELL, min_cycles_per_cell=1):
    """ the statistics of all metrics that have at least 2 cells, as a DataFrame """
    rows = []
    for metric in metrics or METRICS:
        try:
            rows.append(stats(voice_map, metric, reference, weighting, min_cycles_per_cell).as_row())
        except InsufficientCellsError:
            continue
    return pd.DataFrame(rows, columns=STATS_COLUMNS)


def compare_table(maps, reference, metric, weighting=WEIGHTING_CELL, min_cycles_per_cell=1):
    """
    Compare several systems against a reference in one table with the columns "Mean ± Std.dev.",
    "CI Range (95%)", "Diff from Raw" and the number of overlapping cells.

    Parameters
    ----------
    maps : dict
        the voice maps by system label, in the order of the rows.
    reference : str
        the label of the reference system, its row reads "baseline" in the difference column.
    metric : str
        the metric name.

    Returns
    -------
    table : DataFrame
        one row per system.
    """
    metric = metric_name(metric)
    if reference not in maps:
        raise KeyError("the reference %s is not one of the compared maps" % reference)
    reference_map = maps[reference]
    rows = []
    for label, voice_map in maps.items():
        try:
            if label == reference:
                result = stats(voice_map, metric, None, weighting, min_cycles_per_cell)
                difference = "baseline"
                overlap = len(voice_map.means(metric, min_cycles_per_cell)[0])
            else:
                result = stats(voice_map, metric, reference_map, weighting, min_cycles_per_cell)
                difference = print_difference(result.diff_from_ref)
                overlap = result.overlap_cells
            rows.append([label, print_mean_std(result.mean, result.std),
                         "[%.2f, %.2f]" % (result.ci95_low, result.ci95_high), difference, overlap])
        except InsufficientCellsError:
            rows.append([label, "n/a", "n/a", "baseline" if label == reference else "n/a",
                         len(voice_map.means(metric, min_cycles_per_cell)[0])])
    return pd.DataFrame(rows, columns=TABLE_COLUMNS)


def coverage_band(curves):
    """
    The mean coverage of several systems after every utterance count, with a 95% confidence interval.

    Parameters
    ----------
    curves : list
        coverage curves as returned by :py:func:`coverage_curve`, at least 2. Longer curves are truncated to the
        shortest one.

    Returns
    -------
    band : DataFrame
        the columns k, mean, ci95_low, ci95_high.
    """
    if len(curves) < 2:
        raise InsufficientCellsError("a coverage band needs at least 2 curves")
    length = min(len(curve) for curve in curves)
    cells = np.array([[count for k, count in curve[:length]] for curve in curves], dtype=float)
    mean = np.mean(cells, axis=0)
    half_width = Z_95 * np.std(cells, axis=0, ddof=1) / np.sqrt(len(curves))
    return pd.DataFrame(dict(k=np.arange(1, length + 1), mean=mean, ci95_low=mean - half_width,
                             ci95_high=mean + half_width))


def format_table(data):
    """ an aligned plain text rendering of a table """
    columns = [str(column) for column in data.columns]
    cells = [[format_cell(value) for value in row] for row in data.itertuples(index=False)]
    widths = [max([len(column)] + [len(row[index]) for row in cells]) for index, column in enumerate(columns)]
    lines = ["  ".join(column.ljust(width) for column, width in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * width for width in widths))
    for row in cells:
        lines.append("  ".join(value.ljust(width) for value, width in zip(row, widths)).rstrip())
    return "\n".join(lines)


def format_cell(value):
    if isinstance(value, str):
        return value
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return ""
    if isinstance(value, (int, np.integer)):
        return "%d" % value
    return "%.2f" % value


def printStatsTable(voice_map, reference=None, weighting=WEIGHTING_CELL, min_cycles_per_cell=1):
    """ print the table of all metrics of a map in the layout "Mean ± Std.dev. | CI Range (95%) | Diff from Raw" """
    print(format_table(summary_table(voice_map, reference, weighting, min_cycles_per_cell)))


def summary_table(voice_map, reference=None, weighting=WEIGHTING_CELL, min_cycles_per_cell=1, metrics=None):
    rows = []
    for metric in metrics or METRICS:
        try:
            result = stats(voice_map, metric, reference, weighting, min_cycles_per_cell)
        except InsufficientCellsError:
            continue
        row = [metric, print_mean_std(result.mean, result.std), "[%.2f, %.2f]" % (result.ci95_low, result.ci95_high)]
        if reference is not None:
            row += [print_difference(result.diff_from_ref), result.overlap_cells]
        rows.append(row)
    columns = ["metric", "Mean ± Std.dev.", "CI Range (95%)"]
    if reference is not None:
        columns += ["Diff from Raw", "Overlap"]
    return pd.DataFrame(rows, columns=columns)
