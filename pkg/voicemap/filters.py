#!/usr/bin/env python
# -*- coding: utf-8 -*-
# filters.py

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

import logging

import numpy as np
from scipy import signal

from .signal_io import AudioBuffer, ANALYSIS_RATE

logger = logging.getLogger(__name__)

HIGHPASS_BUTTERWORTH_2 = "highpass-butterworth-order2"
LOWPASS_BUTTERWORTH_4 = "lowpass-butterworth-order4"
ONE_POLE_LOWPASS = "one-pole-lowpass"

FILTER_ORDERS = {HIGHPASS_BUTTERWORTH_2: 2, LOWPASS_BUTTERWORTH_4: 4, ONE_POLE_LOWPASS: 1}


class FilterSpec(object):
    """
    Description of one of the fixed filters of the analysis.

    Parameters
    ----------
    kind : str
        one of "highpass-butterworth-order2", "lowpass-butterworth-order4" or "one-pole-lowpass".
    cutoff_hz : float
        the -3 dB frequency, has to lie strictly between 0 and the Nyquist frequency.
    sample_rate : float
        the rate (in Hz) of the sequence the filter runs on.
    """
    __slots__ = ["kind", "cutoff_hz", "sample_rate"]

    def __init__(self, kind, cutoff_hz, sample_rate):
        if kind not in FILTER_ORDERS:
            raise ValueError("unknown filter kind %s" % kind)
        if not 0 < cutoff_hz < sample_rate / 2:
            raise ValueError("the cutoff of %s Hz has to lie between 0 and the Nyquist frequency %s Hz"
                             % (cutoff_hz, sample_rate / 2))
        self.kind = kind
        self.cutoff_hz = cutoff_hz
        self.sample_rate = sample_rate

    @property
    def order(self):
        return FILTER_ORDERS[self.kind]

    def sos(self):
        """ the filter as cascaded second order sections """
        if self.kind == ONE_POLE_LOWPASS:
            # y[n] = (1-beta) x[n] + beta y[n-1]
            beta = self.coefficient()
            return np.array([[1 - beta, 0., 0., 1., -beta, 0.]])
        btype = "highpass" if self.kind == HIGHPASS_BUTTERWORTH_2 else "lowpass"
        return signal.butter(self.order, self.cutoff_hz, btype=btype, fs=self.sample_rate, output="sos")

    def coefficient(self):
        """ the feedback coefficient beta of a one-pole low-pass """
        return np.exp(-2 * np.pi * self.cutoff_hz / self.sample_rate)

    def apply(self, x, steady_start=False):
        """
        Run the filter forward (causal) over a sequence.

        Parameters
        ----------
        x : ndarray
            the input sequence, filtered along the first axis.
        steady_start : bool, optional
            start from the steady state of the first input value instead of a zero state.
        """
        sos = self.sos()
        x = np.asarray(x, dtype=float)
        if steady_start and len(x):
            zi = signal.sosfilt_zi(sos)
            zi = zi.reshape(zi.shape + (1,) * (x.ndim - 1)) * x[0]
            return signal.sosfilt(sos, x, axis=0, zi=zi)[0]
        return signal.sosfilt(sos, x, axis=0)

    def gain_db(self, frequency_hz):
        """ the magnitude response in dB at the given frequencies """
        w, h = signal.sosfreqz(self.sos(), worN=np.atleast_1d(frequency_hz), fs=self.sample_rate)
        return 20 * np.log10(np.abs(h))

    def __repr__(self):
        return "FilterSpec(%s, %g Hz at %g Hz)" % (self.kind, self.cutoff_hz, self.sample_rate)


def clamped_cutoff(cutoff_hz, sample_rate, fraction=0.98):
    """ limit a cutoff to a fraction of the Nyquist frequency of the given rate """
    limit = fraction * sample_rate / 2
    if cutoff_hz >= limit:
        logger.debug("cutoff of %g Hz clamped to %g Hz at a rate of %g Hz", cutoff_hz, limit, sample_rate)
        return limit
    return cutoff_hz


def highpass_50hz(buf, cutoff_hz=50.0):
    """
    Second order Butterworth high-pass at 50 Hz, applied once forward.

    Parameters
    ----------
    buf : :py:class:`AudioBuffer`
        a buffer at 44100 Hz.

    Returns
    -------
    buffer : :py:class:`AudioBuffer`
        the filtered buffer.
    """
    assert buf.sample_rate == ANALYSIS_RATE, "the high-pass expects a buffer at %d Hz" % ANALYSIS_RATE
    spec = FilterSpec(HIGHPASS_BUTTERWORTH_2, cutoff_hz, buf.sample_rate)
    return AudioBuffer(spec.apply(buf.samples), buf.sample_rate, buf.source_id)


def leaky_integrate(buf, alpha=0.999):
    """
    The leaky integrator x[n] = y[n] + alpha x[n-1] with x[-1] = 0.

    Parameters
    ----------
    buf : :py:class:`AudioBuffer`
        a buffer at 44100 Hz.
    alpha : float, optional
        the leak factor, 0 < alpha < 1.

    Returns
    -------
    buffer : :py:class:`AudioBuffer`
        the integrated buffer, same length as the input.

    Examples
    --------

    >>> import numpy as np
    >>> import voicemap as vm
    >>> impulse = vm.AudioBuffer(np.r_[1.0, np.zeros(3)], 44100)
    >>> vm.leaky_integrate(impulse).samples
    array([1.      , 0.999   , 0.998001, 0.997003])
    """
    assert 0 < alpha < 1, "alpha has to lie between 0 and 1"
    samples = signal.lfilter([1.0], [1.0, -alpha], buf.samples)
    return AudioBuffer(samples, buf.sample_rate, buf.source_id)
