#!/usr/bin/env python
# -*- coding: utf-8 -*-
# frame_metrics.py

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
from scipy import signal
from scipy.ndimage import convolve1d
from numpy.lib.stride_tricks import sliding_window_view

from .parameter_set import ParameterSet, ClassWithParameterSet, Parameter, ConfigError, TYPE_FRAME
from .signal_io import ANALYSIS_RATE
from .filters import FilterSpec, LOWPASS_BUTTERWORTH_4, clamped_cutoff

FRAME_COLUMNS = ["center_s", "sb_db", "cpps_db"]

POWER_FLOOR = 1e-30
CEPSTRAL_FLOOR = 1e-20


class FrameConfig(ClassWithParameterSet):
    """
    The parameters of the frame based metrics (spectrum balance and smoothed cepstral peak prominence).

    Parameters
    ----------
    frame_len_s : float, optional
        the length of the Hann window, default 23 ms.
    hop_s : float, optional
        the frame advance, default 10 ms.
    fft_size : int, optional
        the transform size the frames are zero-padded to, default 2048.
    cepstrum_bins : int, optional
        the number of retained quefrency bins, default 512.
    cpps_smooth_cutoff_hz : float, optional
        the cutoff of the one-pole low-pass that smooths every quefrency bin over time, default 16 Hz.
    cpps_quefrency_avg_bins : int, optional
        the width of the moving average across quefrency, default 7 (odd).
    sb_low_hz, sb_high_hz : float, optional
        the upper edge of the low band and the lower edge of the high band, default 1500 and 2000 Hz.
    sb_smooth_cutoff_hz : float, optional
        the cutoff of the 4th order low-pass smoothing the spectrum balance stream, default 50 Hz.
    """

    def __init__(self, frame_len_s=None, hop_s=None, fft_size=None, cepstrum_bins=None, cpps_smooth_cutoff_hz=None,
                 cpps_quefrency_avg_bins=None, sb_low_hz=None, sb_high_hz=None, sb_smooth_cutoff_hz=None,
                 cpps_f0_min_hz=None, cpps_f0_max_hz=None):
        self.parameters = ParameterSet(
            frame_len_s=Parameter(default=0.023, range=(1e-3, 1.), type=TYPE_FRAME),
            hop_s=Parameter(default=0.010, range=(1e-4, 1.), type=TYPE_FRAME),
            fft_size=Parameter(default=2048, range=(16, 1 << 20), type=TYPE_FRAME, cast=int),
            cepstrum_bins=Parameter(default=512, range=(4, None), type=TYPE_FRAME, cast=int),
            cpps_smooth_cutoff_hz=Parameter(default=16., range=(1e-3, None), type=TYPE_FRAME),
            cpps_quefrency_avg_bins=Parameter(default=7, range=(1, 101), type=TYPE_FRAME, cast=int),
            sb_low_hz=Parameter(default=1500., range=(1., None), type=TYPE_FRAME),
            sb_high_hz=Parameter(default=2000., range=(1., None), type=TYPE_FRAME),
            sb_smooth_cutoff_hz=Parameter(default=50., range=(1e-3, None), type=TYPE_FRAME),
            cpps_f0_min_hz=Parameter(default=55., range=(1., None), type=TYPE_FRAME),
            cpps_f0_max_hz=Parameter(default=880., range=(1., None), type=TYPE_FRAME),
        )
        self.parameters.set_parameters(dict(frame_len_s=frame_len_s, hop_s=hop_s, fft_size=fft_size,
                                            cepstrum_bins=cepstrum_bins, cpps_smooth_cutoff_hz=cpps_smooth_cutoff_hz,
                                            cpps_quefrency_avg_bins=cpps_quefrency_avg_bins, sb_low_hz=sb_low_hz,
                                            sb_high_hz=sb_high_hz, sb_smooth_cutoff_hz=sb_smooth_cutoff_hz,
                                            cpps_f0_min_hz=cpps_f0_min_hz, cpps_f0_max_hz=cpps_f0_max_hz))
        self.validate()

    def validate(self, sample_rate=ANALYSIS_RATE):
        if self.frame_length(sample_rate) > self.fft_size:
            raise ConfigError("a frame of %d samples does not fit into an fft of size %d"
                              % (self.frame_length(sample_rate), self.fft_size))
        if self.cepstrum_bins > self.fft_size // 4:
            raise ConfigError("cepstrum_bins has to be at most fft_size/4 = %d" % (self.fft_size // 4))
        if self.cpps_quefrency_avg_bins % 2 != 1:
            raise ConfigError("cpps_quefrency_avg_bins has to be odd")
        if self.sb_low_hz > self.sb_high_hz:
            raise ConfigError("the low band of the spectrum balance has to end below the high band")
        if self.cpps_f0_min_hz >= self.cpps_f0_max_hz:
            raise ConfigError("the cepstral peak search band is empty")
        if self.cpps_smooth_cutoff_hz >= self.frame_rate(sample_rate) / 2:
            raise ConfigError("the cepstral smoothing cutoff has to lie below half the frame rate")

    def frame_length(self, sample_rate=ANALYSIS_RATE):
        return int(round(self.frame_len_s * sample_rate))

    def hop_length(self, sample_rate=ANALYSIS_RATE):
        return max(int(round(self.hop_s * sample_rate)), 1)

    def frame_rate(self, sample_rate=ANALYSIS_RATE):
        return sample_rate / self.hop_length(sample_rate)

    def quefrency_range(self, sample_rate=ANALYSIS_RATE):
        """ the first and last quefrency bin of the peak search, clipped to the retained cepstrum """
        lower = int(round(sample_rate / self.cpps_f0_max_hz))
        upper = int(round(sample_rate / self.cpps_f0_min_hz))
        return lower, min(upper, self.cepstrum_bins - 1)

    def smoothing_coefficient(self, sample_rate=ANALYSIS_RATE):
        return FilterSpec("one-pole-lowpass", self.cpps_smooth_cutoff_hz, self.frame_rate(sample_rate)).coefficient()


class MetricFrame(object):
    __slots__ = ["center_s", "sb_db", "cpps_db", "center_sample"]

    def __init__(self, center_s, sb_db, cpps_db, center_sample=None):
        self.center_s = center_s
        self.sb_db = sb_db
        self.cpps_db = cpps_db
        # the center in (half) samples, exact where the time in seconds is not
        self.center_sample = center_sample

    def __repr__(self):
        return "MetricFrame(%.3f s, sb=%.2f dB, cpps=%.2f dB)" % (self.center_s, self.sb_db, self.cpps_db)


class FrameStream(object):
    """
    The Hann windowed frames of a buffer, zero-padded to the fft size. Only frames that lie completely inside the
    buffer are part of the stream. Frames are produced on demand, single or as blocks.
    """

    def __init__(self, buf, cfg):
        self.cfg = cfg
        self.sample_rate = buf.sample_rate
        self.frame_length = cfg.frame_length(buf.sample_rate)
        self.hop_length = cfg.hop_length(buf.sample_rate)
        self.fft_size = cfg.fft_size
        self.window = signal.windows.hann(self.frame_length, sym=True)
        if len(buf) >= self.frame_length:
            self.count = (len(buf) - self.frame_length) // self.hop_length + 1
            self._view = sliding_window_view(buf.samples, self.frame_length)[::self.hop_length]
        else:
            self.count = 0
            self._view = np.zeros((0, self.frame_length))

    def __len__(self):
        return self.count

    @property
    def center_samples(self):
        return np.arange(self.count) * self.hop_length + self.frame_length / 2

    @property
    def centers_s(self):
        return self.center_samples / self.sample_rate

    def block(self, start, stop):
        stop = min(stop, self.count)
        frames = np.zeros((max(stop - start, 0), self.fft_size))
        frames[:, :self.frame_length] = self._view[start:stop] * self.window
        return frames

    def blocks(self, size=512):
        for start in range(0, self.count, size):
            yield start, self.block(start, start + size)

    def __getitem__(self, index):
        if not -self.count <= index < self.count:
            raise IndexError("frame index %d out of range" % index)
        index = index % self.count
        return self.block(index, index + 1)[0]

    def __iter__(self):
        for start, frames in self.blocks():
            for frame in frames:
                yield frame


def frame_stream(buf, cfg=None):
    """
    Cut a buffer into windowed frames.

    Parameters
    ----------
    buf : :py:class:`AudioBuffer`
        a buffer at 44100 Hz.
    cfg : :py:class:`FrameConfig`, optional
        the frame parameters.

    Returns
    -------
    frames : :py:class:`FrameStream`
        a sequence of frames of length ``fft_size``.

    Examples
    --------

    >>> import numpy as np
    >>> import voicemap as vm
    >>> len(vm.frame_stream(vm.AudioBuffer(np.zeros(44100), 44100)))
    98
    """
    if cfg is None:
        cfg = FrameConfig()
    return FrameStream(buf, cfg)


def power_spectrum(frames, cfg):
    return np.abs(np.fft.rfft(frames, n=cfg.fft_size, axis=-1)) ** 2


def band_masks(cfg, sample_rate=ANALYSIS_RATE):
    frequencies = np.fft.rfftfreq(cfg.fft_size, 1 / sample_rate)
    low = (frequencies > 0) & (frequencies < cfg.sb_low_hz)
    high = frequencies > cfg.sb_high_hz
    return low, high


def balance_from_power(power, cfg, sample_rate=ANALYSIS_RATE):
    low, high = band_masks(cfg, sample_rate)
    # a floor relative to the frame energy, equal in both bands
    floor = 1e-12 * (np.sum(power, axis=-1) + POWER_FLOOR)
    power_low = np.sum(power[..., low], axis=-1) + floor
    power_high = np.sum(power[..., high], axis=-1) + floor
    return 10 * np.log10(power_high / power_low)


def spectrum_balance(frame, cfg=None, sample_rate=ANALYSIS_RATE):
    """
    The spectrum balance of a single frame: the power above 2 kHz over the power below 1.5 kHz, in dB.

    Parameters
    ----------
    frame : ndarray
        a windowed frame (as delivered by :py:func:`frame_stream`).
    cfg : :py:class:`FrameConfig`, optional
        the frame parameters.

    Returns
    -------
    sb_db : float
        10 log10(W_high / W_low), without the temporal smoothing of :py:func:`smooth_balance`.
    """
    if cfg is None:
        cfg = FrameConfig()
    return float(balance_from_power(power_spectrum(frame, cfg), cfg, sample_rate))


def smooth_balance(sb_values, cfg, sample_rate=ANALYSIS_RATE):
    """ smooth the per frame spectrum balance stream with the 4th order Butterworth low-pass at the frame rate """
    sb_values = np.asarray(sb_values, dtype=float)
    if len(sb_values) == 0:
        return sb_values
    frame_rate = cfg.frame_rate(sample_rate)
    spec = FilterSpec(LOWPASS_BUTTERWORTH_4, clamped_cutoff(cfg.sb_smooth_cutoff_hz, frame_rate), frame_rate)
    return spec.apply(sb_values, steady_start=True)


def cepstral_power(power, cfg):
    """ the squared real cepstrum of the dB power spectrum, retaining ``cepstrum_bins`` quefrency bins """
    log_power = 10 * np.log10(np.maximum(power, POWER_FLOOR))
    cepstrum = np.fft.irfft(log_power, n=cfg.fft_size, axis=-1)[..., :cfg.cepstrum_bins]
    return cepstrum ** 2


def quefrency_average(values, width):
    """ centered moving average along the last axis, bins at the edges average over the available neighbours """
    kernel = np.ones(width)
    sums = convolve1d(values, kernel, axis=-1, mode="constant", cval=0.0)
    counts = convolve1d(np.ones(values.shape[-1]), kernel, mode="constant", cval=0.0)
    return sums / counts


def peak_prominence(cepstrum_db, lower, upper):
    """
    The height of the cepstral peak above a least squares regression line, both fitted over the bins lower..upper.
    No interpolation between bins. A flat cepstrum has a prominence of 0.
    """
    cepstrum_db = np.atleast_2d(cepstrum_db)
    segment = cepstrum_db[:, lower:upper + 1]
    quefrency = np.arange(lower, upper + 1, dtype=float)

    # the least squares line of every row
    q_mean = quefrency.mean()
    q_centered = quefrency - q_mean
    values_mean = segment.mean(axis=1)
    slope = (segment - values_mean[:, None]) @ q_centered / np.sum(q_centered ** 2)

    peak_index = np.argmax(segment, axis=1)
    peak = segment[np.arange(len(segment)), peak_index]
    baseline = values_mean + slope * (quefrency[peak_index] - q_mean)
    prominence = peak - baseline
    prominence[np.ptp(segment, axis=1) == 0] = 0.0
    return prominence


def cepstrum_to_db(cepstral_power_values):
    return 10 * np.log10(cepstral_power_values + CEPSTRAL_FLOOR)


def raw_cpp(frame, cfg=None, sample_rate=ANALYSIS_RATE):
    """ the cepstral peak prominence of a single frame without temporal and quefrency smoothing """
    if cfg is None:
        cfg = FrameConfig()
    ceps = cepstrum_to_db(cepstral_power(power_spectrum(frame, cfg), cfg))
    return float(peak_prominence(ceps, *cfg.quefrency_range(sample_rate))[0])


class CppsSmoother(object):
    """
    The state of the per-bin temporal smoothing of the cepstrum: a one-pole low-pass
    c[n] = (1-beta) raw[n] + beta c[n-1] on every quefrency bin, starting at the first raw cepstrum.
    """

    def __init__(self, cfg=None, sample_rate=ANALYSIS_RATE):
        if cfg is None:
            cfg = FrameConfig()
        self.beta = cfg.smoothing_coefficient(sample_rate)
        self.previous = None

    def reset(self):
        self.previous = None

    def update(self, raw):
        """ smooth a block of raw cepstra (frames along the first axis) and keep the last one as state """
        raw = np.atleast_2d(raw)
        if len(raw) == 0:
            return raw
        previous = raw[0] if self.previous is None else self.previous
        smoothed, _ = signal.lfilter([1 - self.beta], [1, -self.beta], raw, axis=0, zi=(self.beta * previous)[None, :])
        self.previous = smoothed[-1]
        return smoothed


def cpps(frame, state, cfg=None, sample_rate=ANALYSIS_RATE):
    """
    The smoothed cepstral peak prominence of the next frame of a stream.

    Parameters
    ----------
    frame : ndarray
        a windowed frame, zero-padded to ``fft_size``.
    state : :py:class:`CppsSmoother`
        the smoother of the stream, updated in place.
    cfg : :py:class:`FrameConfig`, optional
        the frame parameters.

    Returns
    -------
    cpps_db : float
        the prominence of the smoothed cepstral peak over the regression line, in dB.
    """
    if cfg is None:
        cfg = FrameConfig()
    return float(smoothed_prominence(power_spectrum(np.atleast_2d(frame), cfg), state, cfg, sample_rate)[0])


def smoothed_prominence(power, state, cfg, sample_rate=ANALYSIS_RATE):
    smoothed = state.update(cepstral_power(power, cfg))
    averaged = quefrency_average(smoothed, cfg.cpps_quefrency_avg_bins)
    return peak_prominence(cepstrum_to_db(averaged), *cfg.quefrency_range(sample_rate))


def compute_frames(buf, cfg=None, block_size=512):
    """
    Compute the spectrum balance and smoothed cepstral peak prominence of all frames of a buffer.

    The per frame spectra are computed in blocks, the two temporal smoothers run once over the whole stream.

    Parameters
    ----------
    buf : :py:class:`AudioBuffer`
        a buffer at 44100 Hz.
    cfg : :py:class:`FrameConfig`, optional
        the frame parameters.

    Returns
    -------
    frames : list of :py:class:`MetricFrame`
        one entry per frame, ordered in time.
    """
    if cfg is None:
        cfg = FrameConfig()
    cfg.validate(buf.sample_rate)
    stream = frame_stream(buf, cfg)
    smoother = CppsSmoother(cfg, buf.sample_rate)

    balance = np.zeros(len(stream))
    prominence = np.zeros(len(stream))
    for start, frames in stream.blocks(block_size):
        power = power_spectrum(frames, cfg)
        balance[start:start + len(frames)] = balance_from_power(power, cfg, buf.sample_rate)
        prominence[start:start + len(frames)] = smoothed_prominence(power, smoother, cfg, buf.sample_rate)
    balance = smooth_balance(balance, cfg, buf.sample_rate)

    return [MetricFrame(center_s, sb_db, cpps_db, center_sample) for center_s, sb_db, cpps_db, center_sample
            in zip(stream.centers_s, balance, prominence, stream.center_samples)]


def attach_frames_to_cycles(cycles, frames, max_distance_s=0.023, sample_rate=ANALYSIS_RATE):
    """
    Give every cycle the spectrum balance and cepstral peak prominence of the frame whose center is closest to the
    cycle midpoint. Equidistant frames resolve to the earlier one, frames further away than ``max_distance_s`` are
    not used and the cycle keeps absent frame metrics.

    Parameters
    ----------
    cycles : list of :py:class:`CycleRecord`
        the cycles, ordered in time.
    frames : list of :py:class:`MetricFrame`
        the frames, ordered in time.

    Returns
    -------
    cycles : list of :py:class:`CycleRecord`
        copies of the cycles with the frame metrics attached.
    """
    result = [cycle.copy() for cycle in cycles]
    if len(frames) == 0 or len(cycles) == 0:
        return result

    # work in samples, where frame centers and cycle midpoints are exact multiples of a half sample
    centers = np.array([frame.center_sample if frame.center_sample is not None else frame.center_s * sample_rate
                        for frame in frames], dtype=float)
    midpoints = np.array([cycle.start_sample + cycle.length_samples / 2 for cycle in cycles], dtype=float)

    after = np.clip(np.searchsorted(centers, midpoints, side="left"), 0, len(centers) - 1)
    before = np.clip(after - 1, 0, len(centers) - 1)
    distance_before = np.abs(midpoints - centers[before])
    distance_after = np.abs(centers[after] - midpoints)
    nearest = np.where(distance_before <= distance_after, before, after)
    distance = np.minimum(distance_before, distance_after)

    for cycle, index, dist in zip(result, nearest, distance):
        if dist <= max_distance_s * sample_rate:
            cycle.sb_db = float(frames[index].sb_db)
            cycle.cpps_db = float(frames[index].cpps_db)
    return result


def frames_to_dataframe(frames):
    return pd.DataFrame([[frame.center_s, frame.sb_db, frame.cpps_db] for frame in frames], columns=FRAME_COLUMNS,
                        dtype=float)


def write_frames_csv(frames, filename):
    frames_to_dataframe(frames).to_csv(filename, index=False, float_format="%.6g")
