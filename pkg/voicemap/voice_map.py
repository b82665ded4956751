#!/usr/bin/env python
# -*- coding: utf-8 -*-
# voice_map.py

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

from collections import namedtuple

import numpy as np
import pandas as pd

METRICS = ["f0_hz", "spl_db", "crest", "sb_db", "cpps_db"]
# metrics every cycle carries, the others may be absent
CYCLE_METRICS = ["f0_hz", "spl_db", "crest"]
FRAME_METRICS = ["sb_db", "cpps_db"]
METRIC_ALIASES = {"f0": "f0_hz", "spl": "spl_db", "crest": "crest", "sb": "sb_db", "cpps": "cpps_db"}

MAP_COLUMNS = ["st_bin", "spl_bin", "n_cycles", "f0_hz", "spl_db", "crest", "sb_db", "cpps_db", "n_sb", "n_cpps"]
DIFF_COLUMNS = ["st_bin", "spl_bin", "delta"]

REFERENCE_F0_HZ = 55.0


class UnknownMetricError(ValueError):
    pass


class MapFormatError(ValueError):
    def __init__(self, message, row=None):
        if row is not None:
            message = "row %d: %s" % (row, message)
        ValueError.__init__(self, message)
        self.row = row


def metric_name(name):
    """ resolve a metric name or its short alias to the column name """
    if name in METRICS:
        return name
    if name in METRIC_ALIASES:
        return METRIC_ALIASES[name]
    raise UnknownMetricError("unknown metric %s, use one of %s" % (name, ", ".join(METRICS)))


def semitone_of(f0_hz):
    """
    The pitch in semitones relative to 55 Hz.

    Parameters
    ----------
    f0_hz : float
        the fundamental frequency in Hz, has to be positive.

    Returns
    -------
    semitones : float
        12 log2(f0_hz / 55)

    Examples
    --------

    >>> import voicemap as vm
    >>> vm.semitone_of(110)
    12.0
    """
    if not f0_hz > 0:
        raise ValueError("the fundamental frequency has to be positive, not %s" % f0_hz)
    return 12 * np.log2(f0_hz / REFERENCE_F0_HZ)


class CellKey(namedtuple("CellKey", ["st_bin", "spl_bin"])):
    __slots__ = ()

    @classmethod
    def of(cls, f0_hz, spl_db):
        return cls(int(np.floor(semitone_of(f0_hz))), int(np.floor(spl_db)))


class CellAccumulator(object):
    __slots__ = ["n_cycles", "sums", "counts"]

    def __init__(self, n_cycles=0, sums=None, counts=None):
        self.n_cycles = n_cycles
        self.sums = {metric: 0.0 for metric in METRICS}
        self.counts = {metric: 0 for metric in METRICS}
        if sums is not None:
            self.sums.update(sums)
        if counts is not None:
            self.counts.update(counts)

    def add(self, cycle):
        self.n_cycles += 1
        for metric in METRICS:
            value = getattr(cycle, metric)
            if value is None or not np.isfinite(value):
                continue
            if metric == "cpps_db":
                # negative prominences only occur from noise, they count as 0
                value = max(value, 0.0)
            self.sums[metric] += value
            self.counts[metric] += 1

    def merged(self, other):
        return CellAccumulator(self.n_cycles + other.n_cycles,
                               {metric: self.sums[metric] + other.sums[metric] for metric in METRICS},
                               {metric: self.counts[metric] + other.counts[metric] for metric in METRICS})

    def copy(self):
        return CellAccumulator(self.n_cycles, dict(self.sums), dict(self.counts))

    def mean(self, metric):
        """ the mean of a metric, None when no cycle of the cell carries it """
        if self.counts[metric] == 0:
            return None
        return self.sums[metric] / self.counts[metric]

    def __repr__(self):
        return "CellAccumulator(n=%d, %s)" % (self.n_cycles, ", ".join(
            "%s=%s" % (metric, "%.3g" % self.mean(metric) if self.counts[metric] else "-") for metric in METRICS))


class VoiceMap(object):
    """
    A sparse grid of cells of 1 semitone (re 55 Hz) times 1 dB, each accumulating the metrics of the cycles that
    fall into it.

    Parameters
    ----------
    cells : dict, optional
        a mapping of :py:class:`CellKey` to :py:class:`CellAccumulator`.
    source : str, optional
        a label for the material the map was built from.
    """

    def __init__(self, cells=None, source=""):
        self.cells = dict(cells) if cells is not None else {}
        self.source = source

    @classmethod
    def from_cycles(cls, cycles, source=""):
        voice_map = cls(source=source)
        for cycle in cycles:
            accumulate(voice_map, cycle)
        return voice_map

    @property
    def cycle_total(self):
        return sum(cell.n_cycles for cell in self.cells.values())

    def keys(self):
        return sorted(self.cells.keys())

    def __len__(self):
        return len(self.cells)

    def __contains__(self, key):
        return key in self.cells

    def __getitem__(self, key):
        return self.cells[key]

    def occupied(self, min_cycles_per_cell=1):
        return [key for key in self.keys() if self.cells[key].n_cycles >= min_cycles_per_cell]

    def means(self, metric, min_cycles_per_cell=1):
        """ the keys and cell means of all cells that carry the metric """
        metric = metric_name(metric)
        keys = [key for key in self.occupied(min_cycles_per_cell) if self.cells[key].counts[metric] > 0]
        return keys, np.array([self.cells[key].mean(metric) for key in keys], dtype=float)

    def copy(self):
        return VoiceMap({key: cell.copy() for key, cell in self.cells.items()}, self.source)

    def __eq__(self, other):
        if not isinstance(other, VoiceMap) or self.keys() != other.keys():
            return False
        for key in self.keys():
            a, b = self.cells[key], other.cells[key]
            if a.n_cycles != b.n_cycles or a.counts != b.counts or a.sums != b.sums:
                return False
        return True

    def __repr__(self):
        return "VoiceMap(%s: %d cells, %d cycles)" % (self.source or "<unnamed>", len(self), self.cycle_total)

    def to_dataframe(self):
        rows = []
        for key in self.keys():
            cell = self.cells[key]
            rows.append([key.st_bin, key.spl_bin, cell.n_cycles] +
                        [cell.mean(metric) if cell.counts[metric] else np.nan for metric in METRICS] +
                        [cell.counts["sb_db"], cell.counts["cpps_db"]])
        data = pd.DataFrame(rows, columns=MAP_COLUMNS)
        return data.astype({column: (float if column in METRICS else int) for column in MAP_COLUMNS})

    def save(self, filename, metadata=None):
        """
        Write the map as CSV: optional ``# key = value`` metadata lines, then one row per occupied cell sorted by
        (st_bin, spl_bin) with the cell means at 6 significant digits.
        """
        with open(filename, "w") as fp:
            write_metadata(fp, metadata)
            self.to_dataframe().to_csv(fp, index=False, float_format="%.6g", na_rep="")

    @classmethod
    def load(cls, filename):
        data = read_table(filename, MAP_COLUMNS)
        voice_map = cls(source=read_metadata(filename).get("source", ""))
        for row_number, row in enumerate(data.itertuples(index=False), start=1):
            values = row._asdict()
            key = CellKey(int_field(values, "st_bin", row_number), int_field(values, "spl_bin", row_number))
            if key in voice_map.cells:
                raise MapFormatError("duplicate cell (%d, %d)" % key, row_number)
            n_cycles = int_field(values, "n_cycles", row_number)
            if n_cycles < 1:
                raise MapFormatError("a stored cell needs at least one cycle", row_number)
            counts = {metric: n_cycles for metric in CYCLE_METRICS}
            counts["sb_db"] = int_field(values, "n_sb", row_number)
            counts["cpps_db"] = int_field(values, "n_cpps", row_number)
            sums = {}
            for metric in METRICS:
                mean = float_field(values, metric, row_number)
                if counts[metric] > n_cycles or counts[metric] < 0:
                    raise MapFormatError("count of %s outside [0, n_cycles]" % metric, row_number)
                if mean is None:
                    if counts[metric] > 0:
                        raise MapFormatError("missing mean of %s" % metric, row_number)
                    sums[metric] = 0.0
                else:
                    if counts[metric] == 0:
                        raise MapFormatError("mean of %s given for a count of 0" % metric, row_number)
                    sums[metric] = mean * counts[metric]
            voice_map.cells[key] = CellAccumulator(n_cycles, sums, counts)
        return voice_map


class DifferenceMap(object):
    """ the cell wise difference of one metric between two maps, on the cells both maps carry the metric in """

    def __init__(self, metric, cells=None):
        self.metric = metric_name(metric)
        self.cells = dict(cells) if cells is not None else {}

    def keys(self):
        return sorted(self.cells.keys())

    def values(self):
        return np.array([self.cells[key] for key in self.keys()], dtype=float)

    def __len__(self):
        return len(self.cells)

    def __getitem__(self, key):
        return self.cells[key]

    def __neg__(self):
        return DifferenceMap(self.metric, {key: -value for key, value in self.cells.items()})

    def __repr__(self):
        return "DifferenceMap(%s, %d cells)" % (self.metric, len(self))

    def to_dataframe(self):
        data = pd.DataFrame([[key.st_bin, key.spl_bin, self.cells[key]] for key in self.keys()], columns=DIFF_COLUMNS)
        return data.astype({"st_bin": int, "spl_bin": int, "delta": float})

    def save(self, filename, metadata=None):
        metadata = dict(metadata or {})
        metadata["metric"] = self.metric
        with open(filename, "w") as fp:
            write_metadata(fp, metadata)
            self.to_dataframe().to_csv(fp, index=False, float_format="%.6g")

    @classmethod
    def load(cls, filename, metric=None):
        if metric is None:
            metric = read_metadata(filename).get("metric")
            if metric is None:
                raise MapFormatError("the difference map %s does not name its metric" % filename)
        data = read_table(filename, DIFF_COLUMNS)
        cells = {}
        for row_number, row in enumerate(data.itertuples(index=False), start=1):
            values = row._asdict()
            key = CellKey(int_field(values, "st_bin", row_number), int_field(values, "spl_bin", row_number))
            delta = float_field(values, "delta", row_number)
            if delta is None:
                raise MapFormatError("missing delta", row_number)
            cells[key] = delta
        return cls(metric, cells)


def accumulate(voice_map, cycle):
    """
    Add a cycle to the cell of its f0 and level. The map is changed in place and returned.

    Parameters
    ----------
    voice_map : :py:class:`VoiceMap`
        a map owned by the caller.
    cycle : :py:class:`CycleRecord`
        the cycle, absent frame metrics (None) only increase the cycle count.

    Returns
    -------
    voice_map : :py:class:`VoiceMap`
        the same map.
    """
    key = CellKey.of(cycle.f0_hz, cycle.spl_db)
    cell = voice_map.cells.get(key)
    if cell is None:
        cell = voice_map.cells[key] = CellAccumulator()
    cell.add(cycle)
    return voice_map


def merge(a, b):
    """
    The cell wise sum of two maps as a new map. Cells are combined in sorted key order.

    Examples
    --------

    >>> import voicemap as vm
    >>> corpus = vm.merge(map_sentence1, map_sentence2)
    """
    cells = {}
    for key in sorted(set(a.cells) | set(b.cells)):
        if key in a.cells and key in b.cells:
            cells[key] = a.cells[key].merged(b.cells[key])
        elif key in a.cells:
            cells[key] = a.cells[key].copy()
        else:
            cells[key] = b.cells[key].copy()
    source = a.source if a.source == b.source else "+".join(label for label in (a.source, b.source) if label)
    return VoiceMap(cells, source)


def merge_all(maps, source=None):
    result = VoiceMap()
    for voice_map in maps:
        result = merge(result, voice_map)
    if source is not None:
        result.source = source
    return result


def diff(a, b, metric):
    """
    The difference of a metric between two maps (a minus b) on the cells where both maps carry the metric.

    Parameters
    ----------
    a, b : :py:class:`VoiceMap`
        the two maps, b is normally the reference.
    metric : str
        the metric name.

    Returns
    -------
    difference : :py:class:`DifferenceMap`
        the deltas, empty if the maps do not overlap.
    """
    metric = metric_name(metric)
    cells = {}
    for key in sorted(set(a.cells) & set(b.cells)):
        cell_a, cell_b = a.cells[key], b.cells[key]
        if cell_a.counts[metric] > 0 and cell_b.counts[metric] > 0:
            cells[key] = cell_a.mean(metric) - cell_b.mean(metric)
    return DifferenceMap(metric, cells)


def overlap_area(a, b):
    """ the number of cells occupied in both maps """
    return len(set(a.cells) & set(b.cells))


def coverage_curve(per_utterance_maps, min_cycles_per_cell=1):
    """
    The number of occupied cells of the growing corpus after every utterance.

    Parameters
    ----------
    per_utterance_maps : list of :py:class:`VoiceMap`
        the maps of the utterances in corpus order.
    min_cycles_per_cell : int, optional
        the number of cycles a cell needs to count as occupied.

    Returns
    -------
    curve : list of tuple
        (utterance_count, cumulative_cells) for every prefix of the corpus.
    """
    counts = {}
    curve = []
    for index, voice_map in enumerate(per_utterance_maps):
        for key, cell in voice_map.cells.items():
            counts[key] = counts.get(key, 0) + cell.n_cycles
        curve.append((index + 1, sum(1 for count in counts.values() if count >= min_cycles_per_cell)))
    return curve


def write_metadata(fp, metadata):
    for key, value in (metadata or {}).items():
        fp.write("# %s = %s\n" % (key, value))


def read_metadata(filename):
    metadata = {}
    with open(filename, "r") as fp:
        for line in fp:
            if not line.startswith("#"):
                break
            key, sep, value = line[1:].partition("=")
            if sep:
                metadata[key.strip()] = value.strip()
    return metadata


def read_table(filename, columns):
    """ read a CSV of the given columns, skipping the leading metadata comments """
    try:
        data = pd.read_csv(filename, comment="#", dtype=str, keep_default_na=False, skip_blank_lines=True)
    except pd.errors.EmptyDataError:
        raise MapFormatError("%s is empty, not even a header" % filename)
    except pd.errors.ParserError as err:
        raise MapFormatError("%s: %s" % (filename, err))
    except UnicodeDecodeError as err:
        raise MapFormatError("%s is not a text file: %s" % (filename, err))
    if list(data.columns) != columns:
        raise MapFormatError("%s: expected the header %s, found %s" % (filename, ",".join(columns),
                                                                      ",".join(map(str, data.columns))))
    return data


def int_field(values, name, row_number):
    text = values[name].strip()
    try:
        number = float(text)
    except ValueError:
        raise MapFormatError("%s is not a number: %r" % (name, text), row_number)
    if not number.is_integer():
        raise MapFormatError("%s is not an integer: %r" % (name, text), row_number)
    return int(number)


def float_field(values, name, row_number):
    text = values[name].strip()
    if text == "":
        return None
    try:
        number = float(text)
    except ValueError:
        raise MapFormatError("%s is not a number: %r" % (name, text), row_number)
    if not np.isfinite(number):
        raise MapFormatError("%s is not finite: %r" % (name, text), row_number)
    return number
