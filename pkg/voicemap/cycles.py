#!/usr/bin/env python
# -*- coding: utf-8 -*-
# cycles.py

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
from scipy.ndimage import uniform_filter1d

from .parameter_set import ParameterSet, ClassWithParameterSet, Parameter, ConfigError, TYPE_VOICING
from .signal_io import ANALYSIS_RATE
from .filters import highpass_50hz, leaky_integrate

CYCLE_COLUMNS = ["start_sample", "length_samples", "f0_hz", "spl_db", "crest", "cpps_db", "sb_db"]


class SilentCycleError(ValueError):
    pass


class VoicingConfig(ClassWithParameterSet):
    """
    The parameters of the cycle detector and of the cycle metrics.

    Parameters
    ----------
    f0_min_hz, f0_max_hz : float, optional
        the voicing band, candidate cycles outside of it are dropped (default 55 to 880 Hz).
    max_jump : float, optional
        the largest relative period change between neighbouring cycles of a voiced run (default 0.25).
    min_run : int, optional
        the minimal number of consistent consecutive cycles (default 3).
    alpha : float, optional
        the leak factor of the integrator (default 0.999).
    spl_offset_db : float, optional
        the offset added to the level re full scale (default 100 dB).
    """

    def __init__(self, f0_min_hz=None, f0_max_hz=None, max_jump=None, min_run=None, alpha=None, spl_offset_db=None,
                 mean_window_s=None, highpass_hz=None):
        self.parameters = ParameterSet(
            f0_min_hz=Parameter(default=55., range=(1., 20000.), type=TYPE_VOICING),
            f0_max_hz=Parameter(default=880., range=(1., 20000.), type=TYPE_VOICING),
            max_jump=Parameter(default=0.25, range=(0., 10.), type=TYPE_VOICING),
            min_run=Parameter(default=3, range=(1, None), type=TYPE_VOICING, cast=int),
            alpha=Parameter(default=0.999, range=(1e-9, 1 - 1e-9), type=TYPE_VOICING),
            spl_offset_db=Parameter(default=100., range=(-200., 300.), type=TYPE_VOICING),
            mean_window_s=Parameter(default=0.046, range=(1e-4, 1.), type=TYPE_VOICING),
            highpass_hz=Parameter(default=50., range=(1., 1000.), type=TYPE_VOICING),
        )
        self.parameters.set_parameters(dict(f0_min_hz=f0_min_hz, f0_max_hz=f0_max_hz, max_jump=max_jump,
                                            min_run=min_run, alpha=alpha, spl_offset_db=spl_offset_db,
                                            mean_window_s=mean_window_s, highpass_hz=highpass_hz))
        self.validate()

    def validate(self):
        if self.f0_min_hz >= self.f0_max_hz:
            raise ConfigError("the voicing band [%s, %s] Hz is empty" % (self.f0_min_hz, self.f0_max_hz))

    @property
    def f0_band(self):
        return self.f0_min_hz, self.f0_max_hz

    def __str__(self):
        return "VoicingConfig(band=[%g, %g] Hz, max_jump=%g, min_run=%d, alpha=%g)" % (
            self.f0_min_hz, self.f0_max_hz, self.max_jump, self.min_run, self.alpha)


class CycleRecord(object):
    """
    One phonatory cycle of the analysis buffer.

    The frame metrics ``cpps_db`` and ``sb_db`` are None until they have been attached with
    :py:func:`attach_frames_to_cycles`.
    """
    __slots__ = ["start_sample", "length_samples", "f0_hz", "spl_db", "crest", "cpps_db", "sb_db"]

    def __init__(self, start_sample, length_samples, f0_hz, spl_db, crest, cpps_db=None, sb_db=None):
        self.start_sample = int(start_sample)
        self.length_samples = int(length_samples)
        self.f0_hz = float(f0_hz)
        self.spl_db = float(spl_db)
        self.crest = float(crest)
        self.cpps_db = cpps_db
        self.sb_db = sb_db

    @classmethod
    def from_values(cls, f0_hz, spl_db, crest, cpps_db=None, sb_db=None, start_sample=0, sample_rate=ANALYSIS_RATE):
        """ a cycle that is only defined by its metric values (e.g. for hand built maps) """
        return cls(start_sample, max(int(round(sample_rate / f0_hz)), 1), f0_hz, spl_db, crest, cpps_db, sb_db)

    @property
    def end_sample(self):
        return self.start_sample + self.length_samples

    def midpoint_s(self, sample_rate=ANALYSIS_RATE):
        return (self.start_sample + self.length_samples / 2) / sample_rate

    def metric(self, name):
        return getattr(self, name)

    def copy(self):
        return CycleRecord(self.start_sample, self.length_samples, self.f0_hz, self.spl_db, self.crest,
                           self.cpps_db, self.sb_db)

    def __eq__(self, other):
        return isinstance(other, CycleRecord) and all(getattr(self, key) == getattr(other, key)
                                                      for key in self.__slots__)

    def __repr__(self):
        return "CycleRecord(start=%d, length=%d, f0=%.2f Hz, spl=%.2f dB, crest=%.3f)" % (
            self.start_sample, self.length_samples, self.f0_hz, self.spl_db, self.crest)


def compute_cycle_metrics(samples, spl_offset_db=100.0):
    """
    Level and crest factor of the samples of one cycle.

    Parameters
    ----------
    samples : ndarray
        the original (unfiltered) samples of the cycle, at least 2.
    spl_offset_db : float, optional
        the offset added to the RMS level re full scale.

    Returns
    -------
    spl_db : float
        20 log10(rms) + spl_offset_db
    crest : float
        the peak amplitude divided by the RMS amplitude

    Examples
    --------

    >>> import numpy as np
    >>> import voicemap as vm
    >>> spl_db, crest = vm.compute_cycle_metrics(np.sin(np.arange(400) / 400 * 2 * np.pi))
    >>> round(spl_db, 4), round(crest, 4)
    (96.9897, 1.4142)
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        raise SilentCycleError("a cycle needs at least 2 samples")
    peak = np.max(np.abs(samples))
    if peak == 0:
        raise SilentCycleError("silent cycle")
    # rms relative to the peak lies in (0, 1], a constant |x| gives exactly 1
    relative_rms = np.sqrt(np.mean((samples / peak) ** 2))
    return 20 * np.log10(peak * relative_rms) + spl_offset_db, 1.0 / relative_rms


def integrated_signal(buf, cfg):
    """ the high-passed, integrated and mean-removed signal whose zero crossings mark cycle boundaries """
    integrated = leaky_integrate(highpass_50hz(buf, cfg.highpass_hz), cfg.alpha).samples
    window = max(int(round(cfg.mean_window_s * buf.sample_rate)), 1)
    return integrated - uniform_filter1d(integrated, window, mode="nearest")


def zero_crossings(x):
    """ indices n with x[n-1] < 0 <= x[n] (positive-going crossings, assigned to the sample at or after zero) """
    x = np.asarray(x)
    return np.flatnonzero((x[:-1] < 0) & (x[1:] >= 0)) + 1


def voiced_runs(lengths, cfg, sample_rate=ANALYSIS_RATE):
    """
    Apply the voicing band and the period consistency gate to consecutive candidate periods.

    Parameters
    ----------
    lengths : ndarray
        the candidate periods in samples, candidate i spans boundary i to boundary i+1.

    Returns
    -------
    keep : ndarray of bool
        for every candidate whether it is part of a voiced run.
    """
    lengths = np.asarray(lengths, dtype=float)
    n = len(lengths)
    keep = np.zeros(n, dtype=bool)
    if n == 0:
        return keep
    f0 = sample_rate / lengths
    in_band = (f0 >= cfg.f0_min_hz) & (f0 <= cfg.f0_max_hz)

    # whether candidate i and i+1 continue the same run
    ratio = lengths[1:] / lengths[:-1]
    consistent = in_band[:-1] & in_band[1:] & (ratio >= 1 / (1 + cfg.max_jump)) & (ratio <= 1 + cfg.max_jump)

    start = 0
    for i in range(n):
        # the run ends at i when the link to i+1 is broken
        if i == n - 1 or not consistent[i]:
            if in_band[start] and i - start + 1 >= cfg.min_run:
                keep[start:i + 1] = True
            start = i + 1
    return keep


def detect_cycles(buf, cfg=None):
    """
    Detect the phonatory cycles of a buffer and compute their f0, level and crest factor.

    The signal is high-passed at 50 Hz, leaky integrated and freed from its slowly varying mean. Positive-going zero
    crossings delimit candidate cycles, which are kept when their f0 lies in the voicing band and they belong to a run
    of at least ``min_run`` cycles with consistent periods. Level and crest factor use the original samples.

    Parameters
    ----------
    buf : :py:class:`AudioBuffer`
        a buffer at 44100 Hz.
    cfg : :py:class:`VoicingConfig`, optional
        the detector parameters.

    Returns
    -------
    cycles : list of :py:class:`CycleRecord`
        the cycles ordered by their start sample.
    """
    if cfg is None:
        cfg = VoicingConfig()
    assert buf.sample_rate == ANALYSIS_RATE, "cycle detection runs at %d Hz" % ANALYSIS_RATE
    if len(buf) < 2:
        return []

    boundaries = zero_crossings(integrated_signal(buf, cfg))
    if len(boundaries) < 2:
        return []
    starts = boundaries[:-1]
    lengths = np.diff(boundaries)
    keep = voiced_runs(lengths, cfg, buf.sample_rate)
    starts, lengths = starts[keep], lengths[keep]
    if len(starts) == 0:
        return []

    cycles = []
    for start, length in zip(starts, lengths):
        try:
            spl_db, crest = compute_cycle_metrics(buf.samples[start:start + length], cfg.spl_offset_db)
        # silent cycles are excluded
        except SilentCycleError:
            continue
        cycles.append(CycleRecord(start, length, buf.sample_rate / length, spl_db, crest))
    return cycles


def cycles_to_dataframe(cycles):
    data = pd.DataFrame([[getattr(cycle, key) for key in CYCLE_COLUMNS] for cycle in cycles], columns=CYCLE_COLUMNS)
    return data.astype({key: (int if key in ("start_sample", "length_samples") else float) for key in CYCLE_COLUMNS})


def write_cycles_csv(cycles, filename):
    """ dump the cycles as CSV with 6 significant digits and empty fields for absent frame metrics """
    cycles_to_dataframe(cycles).to_csv(filename, index=False, float_format="%.6g", na_rep="")
