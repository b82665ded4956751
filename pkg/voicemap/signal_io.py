#!/usr/bin/env python
# -*- coding: utf-8 -*-
# signal_io.py

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

import os
import logging
from math import gcd

import numpy as np
from scipy.io import wavfile
from scipy import signal

logger = logging.getLogger(__name__)

ANALYSIS_RATE = 44100
PCM16_SCALE = 32768.0


class AudioError(ValueError):
    pass


class UnreadableAudioError(AudioError):
    pass


class UnsupportedEncodingError(AudioError):
    pass


class MultichannelError(AudioError):
    pass


class EmptyAudioError(AudioError):
    pass


class AudioBuffer(object):
    """
    A mono recording as floating point samples relative to full scale.

    Parameters
    ----------
    samples : ndarray
        the amplitude values, full scale is 1.0
    sample_rate : int
        the sampling rate in Hz
    source_id : str, optional
        a label for the recording, normally the file stem
    """
    __slots__ = ["samples", "sample_rate", "source_id"]

    def __init__(self, samples, sample_rate, source_id=""):
        samples = np.asarray(samples, dtype=float)
        assert samples.ndim == 1, "an AudioBuffer has to be mono (a one dimensional array)"
        assert int(sample_rate) == sample_rate and sample_rate > 0, "the sample rate has to be a positive integer"
        self.samples = samples
        self.sample_rate = int(sample_rate)
        self.source_id = source_id

    def __len__(self):
        return len(self.samples)

    @property
    def duration_s(self):
        return len(self.samples) / self.sample_rate

    def scaled(self, gain):
        return AudioBuffer(self.samples * gain, self.sample_rate, self.source_id)

    def __repr__(self):
        return "AudioBuffer(%s, %d samples at %d Hz)" % (self.source_id or "<unnamed>", len(self), self.sample_rate)


def load_wav(path):
    """
    Load a mono 16-bit PCM WAV file. The samples are scaled by 1/32768 without any normalisation.

    Parameters
    ----------
    path : str
        the filename of the WAV file.

    Returns
    -------
    buffer : :py:class:`AudioBuffer`
        the decoded samples with the sample rate of the file header.

    Examples
    --------

    >>> import voicemap as vm
    >>> buf = vm.load_wav("LJ050-0029.wav")
    >>> buf.sample_rate
    22050
    """
    source_id = os.path.splitext(os.path.basename(path))[0]
    try:
        rate, data = wavfile.read(path)
    except (OSError, EOFError) as err:
        raise UnreadableAudioError("unreadable file %s: %s" % (path, err))
    except ValueError as err:
        # scipy reports unknown format tags and broken chunks as ValueError
        message = str(err)
        if "format" in message.lower() and "not understood" not in message.lower() and "riff" not in message.lower():
            raise UnsupportedEncodingError("non-PCM encoding in %s: %s" % (path, message))
        raise UnreadableAudioError("unreadable file %s: %s" % (path, message))

    if data.ndim > 1 and data.shape[1] != 1:
        raise MultichannelError("multichannel input: %s has %d channels" % (path, data.shape[1]))
    if data.dtype != np.int16:
        raise UnsupportedEncodingError("non-PCM encoding in %s: only 16-bit PCM is supported, found %s"
                                       % (path, data.dtype))
    data = data.reshape(-1)
    if data.size == 0:
        raise EmptyAudioError("zero-length audio in %s" % path)

    return AudioBuffer(data.astype(float) / PCM16_SCALE, rate, source_id)


def write_wav(path, buf):
    """ write a buffer as 16-bit PCM, clipping to the representable range """
    data = np.clip(np.round(np.asarray(buf.samples) * PCM16_SCALE), -32768, 32767).astype(np.int16)
    wavfile.write(path, buf.sample_rate, data)


def resampling_filter(up, down, beta=5.0):
    # windowed-sinc low-pass at the lower of the two Nyquist frequencies, at least 65 taps
    max_rate = max(up, down)
    half_len = 16 * max_rate
    return signal.firwin(2 * half_len + 1, 1.0 / max_rate, window=("kaiser", beta))


def resample_to_44100(buf):
    """
    Bring a buffer to the analysis rate of 44100 Hz with a band limited (windowed-sinc) polyphase resampler.
    A buffer that is already at 44100 Hz is returned unchanged.

    Parameters
    ----------
    buf : :py:class:`AudioBuffer`
        the input buffer.

    Returns
    -------
    buffer : :py:class:`AudioBuffer`
        the buffer at 44100 Hz.
    """
    if buf.sample_rate == ANALYSIS_RATE:
        return buf

    # the rational factor between the two rates
    divisor = gcd(ANALYSIS_RATE, buf.sample_rate)
    up = ANALYSIS_RATE // divisor
    down = buf.sample_rate // divisor
    logger.debug("resample %s from %d Hz (up %d, down %d)", buf.source_id, buf.sample_rate, up, down)

    samples = signal.resample_poly(buf.samples, up, down, window=resampling_filter(up, down))
    return AudioBuffer(samples, ANALYSIS_RATE, buf.source_id)


def load_analysis_buffer(path):
    return resample_to_44100(load_wav(path))
