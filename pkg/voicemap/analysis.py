#!/usr/bin/env python
# -*- coding: utf-8 -*-
# analysis.py

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

import tqdm

from .config import RunConfig
from .signal_io import load_wav, resample_to_44100
from .cycles import detect_cycles
from .frame_metrics import compute_frames, attach_frames_to_cycles
from .voice_map import VoiceMap, merge_all

logger = logging.getLogger(__name__)


class NoVoicedContentError(ValueError):
    pass


class FileAnalysis(object):
    """ the result of analysing one recording: its cycles (with frame metrics attached), frames and voice map """
    __slots__ = ["filename", "source_id", "cycles", "frames", "voice_map"]

    def __init__(self, filename, source_id, cycles, frames, voice_map):
        self.filename = filename
        self.source_id = source_id
        self.cycles = cycles
        self.frames = frames
        self.voice_map = voice_map

    def __repr__(self):
        return "FileAnalysis(%s: %d cycles, %d frames, %d cells)" % (self.source_id, len(self.cycles),
                                                                     len(self.frames), len(self.voice_map))


def analyze_buffer(buf, config=None):
    """
    Run the cycle detector and the frame metrics on a buffer and attach the frame metrics to the cycles.

    Parameters
    ----------
    buf : :py:class:`AudioBuffer`
        the recording, it is resampled to 44100 Hz when needed.
    config : :py:class:`RunConfig`, optional
        the settings.

    Returns
    -------
    cycles : list of :py:class:`CycleRecord`
        the voiced cycles with attached frame metrics.
    frames : list of :py:class:`MetricFrame`
        the frames.
    """
    if config is None:
        config = RunConfig()
    buf = resample_to_44100(buf)
    cycles = detect_cycles(buf, config.voicing)
    frames = compute_frames(buf, config.frames)
    cycles = attach_frames_to_cycles(cycles, frames, config.frames.frame_len_s, buf.sample_rate)
    return cycles, frames


def analyze_file(filename, config=None):
    """
    Analyse one WAV file.

    Parameters
    ----------
    filename : str
        the WAV file (mono 16-bit PCM).
    config : :py:class:`RunConfig`, optional
        the settings.

    Returns
    -------
    analysis : :py:class:`FileAnalysis`
        cycles, frames and voice map of the file.
    """
    buf = load_wav(filename)
    cycles, frames = analyze_buffer(buf, config)
    voice_map = VoiceMap.from_cycles(cycles, source=buf.source_id)
    logger.debug("%s: %d cycles, %d frames, %d cells", filename, len(cycles), len(frames), len(voice_map))
    return FileAnalysis(filename, buf.source_id, cycles, frames, voice_map)


def analyze_files(filenames, config=None, threads=1, disable_bar=False):
    """
    Analyse several WAV files, optionally with a pool of threads. The results are ordered by file name, independent
    of the order in which the analyses finish.

    Parameters
    ----------
    filenames : list of str
        the WAV files.
    config : :py:class:`RunConfig`, optional
        the settings, shared read only by all analyses.
    threads : int, optional
        the number of threads, 1 analyses the files one after the other.
    disable_bar : bool, optional
        hide the progress bar.

    Returns
    -------
    analyses : list of :py:class:`FileAnalysis`
        one entry per file, sorted by file name.
    """
    if config is None:
        config = RunConfig()
    filenames = sorted(filenames)
    if threads <= 1:
        analyses = [analyze_file(filename, config) for filename in tqdm.tqdm(filenames, disable=disable_bar)]
    else:
        logger.debug("run with %d threads", threads)
        from multiprocessing.dummy import Pool as ThreadPool

        with ThreadPool(threads) as pool:
            analyses = list(tqdm.tqdm(pool.imap(lambda filename: analyze_file(filename, config), filenames),
                                      total=len(filenames), disable=disable_bar))
    return analyses


def corpus_map(analyses, source="corpus"):
    """ merge the per file maps in file name order """
    analyses = sorted(analyses, key=lambda analysis: analysis.filename)
    return merge_all([analysis.voice_map for analysis in analyses], source=source)
