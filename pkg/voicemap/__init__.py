#!/usr/bin/env python
# -*- coding: utf-8 -*-
# __init__.py

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

from .parameter_set import ParameterSet, Parameter, ClassWithParameterSet, ConfigError
from .signal_io import (AudioBuffer, AudioError, UnreadableAudioError, UnsupportedEncodingError, MultichannelError,
                        EmptyAudioError, ANALYSIS_RATE, load_wav, write_wav, resample_to_44100, load_analysis_buffer)
from .filters import FilterSpec, highpass_50hz, leaky_integrate, clamped_cutoff
from .cycles import (VoicingConfig, CycleRecord, SilentCycleError, compute_cycle_metrics, detect_cycles,
                     integrated_signal, zero_crossings, voiced_runs, cycles_to_dataframe, write_cycles_csv)
from .frame_metrics import (FrameConfig, MetricFrame, FrameStream, CppsSmoother, frame_stream, spectrum_balance,
                            smooth_balance, cpps, raw_cpp, peak_prominence, compute_frames, attach_frames_to_cycles,
                            frames_to_dataframe, write_frames_csv)
from .voice_map import (VoiceMap, DifferenceMap, CellKey, CellAccumulator, MapFormatError, UnknownMetricError,
                        METRICS, metric_name, semitone_of, accumulate, merge, merge_all, diff, overlap_area,
                        coverage_curve)
from .statistic import (MapStats, InsufficientCellsError, stats, stats_table, compare_table, coverage_band,
                        summary_table, printStatsTable, print_mean_std)
from .config import RunConfig, load_config
from .analysis import (FileAnalysis, NoVoicedContentError, analyze_buffer, analyze_file, analyze_files,
                       corpus_map)
from .render import render_map_svg, render_diff_svg, save_svg
from .plotting import plotVoiceMap, plotDifferenceMap, plotCoverage

__version__ = "1.0.0"
