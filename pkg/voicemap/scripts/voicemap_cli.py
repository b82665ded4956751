#!/usr/bin/env python
# -*- coding: utf-8 -*-
# voicemap_cli.py

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

'''
voice map analysis of speech recordings
analyzes WAV files into voice maps, compares maps, prints statistics and coverage curves and renders SVG figures

usage:
    voicemap analyze <wav>... --out <map.csv> [--dump-cycles] [--dump-frames] [--per-file-dir <dir>] [--threads <n>]
    voicemap compare <map_a.csv> <map_b.csv> --out <prefix> [--metric <name>]
    voicemap coverage <map.csv>... [--min-cycles <n>] [--out <curve.csv>]
    voicemap render <map_or_diff.csv> --out <figure.svg> [--metric <name>]
    voicemap stats <map.csv> [--reference <map.csv>] [--weighting cell|cycle] [--out <stats.csv>]
    voicemap table <map.csv>... --reference <map.csv> --metric <name> [--out <table.csv>]

all commands accept --config <file> (key = value lines) and --set key=value overrides.

exit status:
    0 success, 2 input or parse error, 3 empty result (no voiced content, too few cells)
'''

import os
import sys
import logging
import argparse

import pandas as pd

from voicemap.parameter_set import ConfigError
from voicemap.config import load_config
from voicemap.signal_io import AudioError
from voicemap.cycles import write_cycles_csv
from voicemap.frame_metrics import write_frames_csv
from voicemap.voice_map import (VoiceMap, DifferenceMap, MapFormatError, UnknownMetricError, METRICS, DIFF_COLUMNS,
                                metric_name, diff, overlap_area, coverage_curve, read_metadata)
from voicemap.statistic import (InsufficientCellsError, WEIGHTINGS, stats_table, summary_table, compare_table,
                                format_table)
from voicemap.analysis import NoVoicedContentError, analyze_files, corpus_map
from voicemap.render import render_map_svg, render_diff_svg, save_svg

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_EMPTY_RESULT = 3

logger = logging.getLogger("voicemap")


def parse_overrides(assignments):
    overrides = {}
    for assignment in assignments or []:
        key, sep, value = assignment.partition("=")
        if not sep or not key.strip():
            raise ConfigError("an override has to look like key=value, not %r" % assignment)
        overrides[key.strip()] = value.strip()
    return overrides


def get_config(args):
    config = load_config(args.config, parse_overrides(args.set))
    if getattr(args, "min_cycles", None) is not None:
        config.min_cycles_per_cell = args.min_cycles
    if getattr(args, "weighting", None) is not None:
        config.weighting = args.weighting
    config.validate()
    return config


def output_name(out, suffix):
    # e.g. corpus.csv -> corpus.LJ050-0029.cycles.csv
    base = os.path.splitext(out)[0]
    return "%s.%s" % (base, suffix)


def cmd_analyze(args):
    config = get_config(args)
    analyses = analyze_files(args.inputs, config, threads=args.threads, disable_bar=args.quiet)
    total_cycles = sum(len(analysis.cycles) for analysis in analyses)
    if total_cycles == 0:
        raise NoVoicedContentError("no voiced content in %d file(s)" % len(analyses))

    corpus = corpus_map(analyses)
    metadata = config.metadata()
    metadata["files"] = len(analyses)
    metadata["source"] = corpus.source
    corpus.save(args.out, metadata)

    for analysis in analyses:
        if args.dump_cycles:
            write_cycles_csv(analysis.cycles, output_name(args.out, analysis.source_id + ".cycles.csv"))
        if args.dump_frames:
            write_frames_csv(analysis.frames, output_name(args.out, analysis.source_id + ".frames.csv"))
        if args.per_file_dir:
            if not os.path.isdir(args.per_file_dir):
                os.makedirs(args.per_file_dir)
            file_metadata = config.metadata()
            file_metadata["source"] = analysis.source_id
            analysis.voice_map.save(os.path.join(args.per_file_dir, analysis.source_id + ".csv"), file_metadata)

    print("analyzed %d file(s): %d cycles, %d occupied cells -> %s"
          % (len(analyses), total_cycles, len(corpus.occupied(config.min_cycles_per_cell)), args.out))
    return EXIT_OK


def cmd_compare(args):
    config = get_config(args)
    map_a = VoiceMap.load(args.map_a)
    map_b = VoiceMap.load(args.map_b)
    metrics = [metric_name(args.metric)] if args.metric else METRICS

    if overlap_area(map_a, map_b) == 0:
        print("WARNING: %s and %s do not overlap, the differences are empty" % (args.map_a, args.map_b),
              file=sys.stderr)
    for metric in metrics:
        difference = diff(map_a, map_b, metric)
        difference.save("%s_%s.diff.csv" % (args.out, metric), dict(a=args.map_a, b=args.map_b))

    print("%s vs %s (%d overlapping cells)" % (args.map_a, args.map_b, overlap_area(map_a, map_b)))
    print(format_table(summary_table(map_a, map_b, config.weighting, config.min_cycles_per_cell, metrics)))
    stats_table(map_a, map_b, metrics, config.weighting, config.min_cycles_per_cell).to_csv(
        "%s_stats.csv" % args.out, index=False, float_format="%.6g", na_rep="")
    return EXIT_OK


def cmd_coverage(args):
    config = get_config(args)
    maps = [VoiceMap.load(filename) for filename in args.maps]
    curve = pd.DataFrame(coverage_curve(maps, config.min_cycles_per_cell), columns=["k", "cells"])
    if args.out:
        curve.to_csv(args.out, index=False)
    print(curve.to_csv(index=False), end="")
    return EXIT_OK


def is_difference_csv(filename):
    with open(filename, "r") as fp:
        for line in fp:
            if line.startswith("#") or not line.strip():
                continue
            return line.strip().split(",") == DIFF_COLUMNS
    return False


def cmd_render(args):
    config = get_config(args)
    if is_difference_csv(args.csv):
        metric = metric_name(args.metric) if args.metric else read_metadata(args.csv).get("metric")
        if metric is None:
            raise UnknownMetricError("%s does not name its metric, use --metric" % args.csv)
        svg = render_diff_svg(DifferenceMap.load(args.csv, metric_name(metric)), config)
    else:
        if not args.metric:
            raise UnknownMetricError("rendering a voice map needs --metric")
        metric = metric_name(args.metric)
        svg = render_map_svg(VoiceMap.load(args.csv), metric, config)
    save_svg(svg, args.out)
    print("written %s" % args.out)
    return EXIT_OK


def cmd_stats(args):
    config = get_config(args)
    voice_map = VoiceMap.load(args.map)
    reference = VoiceMap.load(args.reference) if args.reference else None
    occupied = len(voice_map.occupied(config.min_cycles_per_cell))
    if occupied < 2:
        raise InsufficientCellsError("%s has %d occupied cell(s), at least 2 are needed" % (args.map, occupied))
    print(format_table(summary_table(voice_map, reference, config.weighting, config.min_cycles_per_cell)))
    if args.out:
        stats_table(voice_map, reference, None, config.weighting, config.min_cycles_per_cell).to_csv(
            args.out, index=False, float_format="%.6g", na_rep="")
    return EXIT_OK


def cmd_table(args):
    config = get_config(args)
    label = lambda filename: os.path.splitext(os.path.basename(filename))[0]
    maps = {label(args.reference): VoiceMap.load(args.reference)}
    for filename in args.maps:
        maps.setdefault(label(filename), VoiceMap.load(filename))
    table = compare_table(maps, label(args.reference), metric_name(args.metric), config.weighting,
                          config.min_cycles_per_cell)
    print(format_table(table))
    if args.out:
        table.to_csv(args.out, index=False)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="file with key = value settings")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a setting")
    common.add_argument("--verbose", action="store_true", help="print debug messages")
    common.add_argument("--quiet", action="store_true", help="hide the progress bar")

    parser = argparse.ArgumentParser(prog="voicemap", description="voice map analysis of speech recordings")
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    analyze = commands.add_parser("analyze", parents=[common], help="analyze WAV files into a voice map")
    analyze.add_argument("inputs", nargs="+", help="mono 16-bit PCM WAV files")
    analyze.add_argument("--out", required=True, help="the voice map CSV")
    analyze.add_argument("--dump-cycles", action="store_true", help="write the cycles of every file as CSV")
    analyze.add_argument("--dump-frames", action="store_true", help="write the frames of every file as CSV")
    analyze.add_argument("--per-file-dir", help="write the voice map of every file into this directory")
    analyze.add_argument("--threads", type=int, default=1, help="number of files analyzed in parallel")
    analyze.add_argument("--min-cycles", type=int, help="cycles needed for an occupied cell")
    analyze.set_defaults(func=cmd_analyze)

    compare = commands.add_parser("compare", parents=[common], help="difference maps and statistics of two maps")
    compare.add_argument("map_a", help="the voice map to evaluate")
    compare.add_argument("map_b", help="the reference voice map")
    compare.add_argument("--metric", help="only this metric (default all)")
    compare.add_argument("--out", required=True, help="prefix of the written files")
    compare.add_argument("--weighting", choices=WEIGHTINGS)
    compare.add_argument("--min-cycles", type=int)
    compare.set_defaults(func=cmd_compare)

    coverage = commands.add_parser("coverage", parents=[common], help="occupied cells versus utterances")
    coverage.add_argument("maps", nargs="+", help="per utterance voice maps in corpus order")
    coverage.add_argument("--min-cycles", type=int)
    coverage.add_argument("--out", help="the curve CSV")
    coverage.set_defaults(func=cmd_coverage)

    render = commands.add_parser("render", parents=[common], help="draw a voice map or difference map as SVG")
    render.add_argument("csv", help="a voice map or difference map CSV")
    render.add_argument("--metric", help="the metric to draw")
    render.add_argument("--out", required=True, help="the SVG file")
    render.add_argument("--min-cycles", type=int)
    render.set_defaults(func=cmd_render)

    stats = commands.add_parser("stats", parents=[common], help="statistics of the metrics of a map")
    stats.add_argument("map", help="the voice map")
    stats.add_argument("--reference", help="a reference voice map")
    stats.add_argument("--weighting", choices=WEIGHTINGS)
    stats.add_argument("--min-cycles", type=int)
    stats.add_argument("--out", help="the statistics CSV")
    stats.set_defaults(func=cmd_stats)

    table = commands.add_parser("table", parents=[common], help="compare several maps to a reference")
    table.add_argument("maps", nargs="+", help="the voice maps of the systems")
    table.add_argument("--reference", required=True, help="the reference voice map")
    table.add_argument("--metric", required=True)
    table.add_argument("--weighting", choices=WEIGHTINGS)
    table.add_argument("--min-cycles", type=int)
    table.add_argument("--out", help="the table CSV")
    table.set_defaults(func=cmd_table)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG)

    try:
        return args.func(args)
    except (NoVoicedContentError, InsufficientCellsError) as err:
        print("ERROR: %s" % err, file=sys.stderr)
        return EXIT_EMPTY_RESULT
    except (AudioError, MapFormatError, ConfigError, UnknownMetricError) as err:
        print("ERROR: %s" % err, file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as err:
        print("ERROR: %s" % err, file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == '__main__':
    sys.exit(main())
