#!/usr/bin/env python
# -*- coding: utf-8 -*-
# render.py

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

CELL_WIDTH = 12
CELL_HEIGHT = 6
MARGIN_LEFT = 70
MARGIN_RIGHT = 110
MARGIN_TOP = 30
MARGIN_BOTTOM = 50
COLORBAR_WIDTH = 16
COLORBAR_STEPS = 64
ST_TICK = 6
SPL_TICK = 10

# a sequential scale from cold to warm
COLD_TO_WARM = np.array([[49, 54, 149], [69, 117, 180], [116, 173, 209], [171, 217, 233],
                         [254, 224, 144], [253, 174, 97], [244, 109, 67], [215, 48, 39]], dtype=float)


def hex_color(rgb):
    return "#%02x%02x%02x" % tuple(int(round(value)) for value in rgb)


def scale_color(value, lower, upper):
    """ the color of a value on the cold to warm scale between lower and upper (clipped) """
    fraction = np.clip((value - lower) / (upper - lower), 0, 1) * (len(COLD_TO_WARM) - 1)
    index = min(int(np.floor(fraction)), len(COLD_TO_WARM) - 2)
    weight = fraction - index
    return hex_color(COLD_TO_WARM[index] * (1 - weight) + COLD_TO_WARM[index + 1] * weight)


def difference_color(delta, cap):
    """ green for positive, red for negative differences, the saturation grows with |delta| up to the cap """
    saturation = min(abs(delta) / cap, 1.0)
    faded = 255 * (1 - saturation)
    if delta >= 0:
        return hex_color((faded, 255, faded))
    return hex_color((255, faded, faded))


class SvgCanvas(object):
    """ collects the elements of a voice map figure with the geometry of the render window """

    def __init__(self, config):
        (self.st_min, self.st_max), (self.spl_min, self.spl_max) = config.render_window
        self.plot_width = (self.st_max - self.st_min) * CELL_WIDTH
        self.plot_height = (self.spl_max - self.spl_min) * CELL_HEIGHT
        self.width = MARGIN_LEFT + self.plot_width + MARGIN_RIGHT
        self.height = MARGIN_TOP + self.plot_height + MARGIN_BOTTOM
        self.elements = []

    def inside(self, key):
        return self.st_min <= key.st_bin < self.st_max and self.spl_min <= key.spl_bin < self.spl_max

    def cell_position(self, key):
        x = MARGIN_LEFT + (key.st_bin - self.st_min) * CELL_WIDTH
        y = MARGIN_TOP + (self.spl_max - key.spl_bin - 1) * CELL_HEIGHT
        return x, y

    def add_cell(self, key, color):
        if not self.inside(key):
            return
        x, y = self.cell_position(key)
        self.elements.append('<rect class="cell" x="%d" y="%d" width="%d" height="%d" fill="%s"/>'
                             % (x, y, CELL_WIDTH, CELL_HEIGHT, color))

    def add_text(self, x, y, text, anchor="middle", size=11, transform=""):
        self.elements.append('<text x="%s" y="%s" font-size="%d" text-anchor="%s"%s>%s</text>'
                             % (format_number(x), format_number(y), size, anchor,
                                ' transform="%s"' % transform if transform else "", escape(text)))

    def add_axes(self, title):
        left, top = MARGIN_LEFT, MARGIN_TOP
        bottom = top + self.plot_height
        self.elements.append('<rect class="frame" x="%d" y="%d" width="%d" height="%d" fill="none" stroke="black"/>'
                             % (left, top, self.plot_width, self.plot_height))
        # semitone ticks
        for st in range(int(np.ceil(self.st_min / ST_TICK)) * ST_TICK, self.st_max + 1, ST_TICK):
            x = left + (st - self.st_min) * CELL_WIDTH
            self.elements.append('<line class="tick" x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
                                 % (x, bottom, x, bottom + 5))
            self.add_text(x, bottom + 18, "%d" % st)
        # level ticks
        for spl in range(int(np.ceil(self.spl_min / SPL_TICK)) * SPL_TICK, self.spl_max + 1, SPL_TICK):
            y = top + (self.spl_max - spl) * CELL_HEIGHT
            self.elements.append('<line class="tick" x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
                                 % (left - 5, y, left, y))
            self.add_text(left - 8, y + 4, "%d" % spl, anchor="end")
        self.add_text(left + self.plot_width / 2, bottom + 38, "Semitones re 55 Hz")
        self.add_text(18, top + self.plot_height / 2, "SPL (dB)",
                      transform="rotate(-90 18 %s)" % format_number(top + self.plot_height / 2))
        self.add_text(left + self.plot_width / 2, top - 10, title, size=13)

    def add_colorbar(self, colors, lower_label, upper_label, middle_label=None):
        """ a vertical color bar right of the plot, colors from the bottom (lower) to the top (upper) """
        x = MARGIN_LEFT + self.plot_width + 24
        step = self.plot_height / len(colors)
        for index, color in enumerate(colors):
            y = MARGIN_TOP + self.plot_height - (index + 1) * step
            self.elements.append('<rect class="colorbar" x="%d" y="%s" width="%d" height="%s" fill="%s"/>'
                                 % (x, format_number(y), COLORBAR_WIDTH, format_number(step), color))
        self.elements.append('<rect class="frame" x="%d" y="%d" width="%d" height="%d" fill="none" stroke="black"/>'
                             % (x, MARGIN_TOP, COLORBAR_WIDTH, self.plot_height))
        label_x = x + COLORBAR_WIDTH + 6
        self.add_text(label_x, MARGIN_TOP + self.plot_height, lower_label, anchor="start")
        self.add_text(label_x, MARGIN_TOP + 10, upper_label, anchor="start")
        if middle_label is not None:
            self.add_text(label_x, MARGIN_TOP + self.plot_height / 2 + 4, middle_label, anchor="start")

    def to_string(self):
        header = ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d" '
                  'font-family="sans-serif">' % (self.width, self.height, self.width, self.height))
        background = '<rect class="background" x="0" y="0" width="%d" height="%d" fill="white"/>' % (self.width,
                                                                                                      self.height)
        return "\n".join([header, background] + self.elements + ["</svg>"]) + "\n"


def format_number(value):
    return ("%.2f" % value).rstrip("0").rstrip(".")


def escape(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_map_svg(voice_map, metric, config=None):
    """
    Draw the cell means of a metric as an SVG image: one 1 semitone x 1 dB rectangle per cell inside the render
    window, on a fixed cold to warm color scale with a labeled color bar.

    Parameters
    ----------
    voice_map : :py:class:`VoiceMap`
        the map.
    metric : str
        the metric name.
    config : :py:class:`RunConfig`, optional
        the render window and color bounds.

    Returns
    -------
    svg : str
        the SVG document.
    """
    if config is None:
        config = RunConfig()
    metric = metric_name(metric)
    lower, upper = config.color_bounds(metric)
    canvas = SvgCanvas(config)
    canvas.add_axes(metric)
    keys, means = voice_map.means(metric, config.min_cycles_per_cell)
    for key, value in zip(keys, means):
        canvas.add_cell(key, scale_color(value, lower, upper))
    levels = lower + (np.arange(COLORBAR_STEPS) + 0.5) / COLORBAR_STEPS * (upper - lower)
    canvas.add_colorbar([scale_color(level, lower, upper) for level in levels], "%g" % lower, "%g" % upper,
                        "%g" % ((lower + upper) / 2))
    return canvas.to_string()


def render_diff_svg(difference, config=None):
    """
    Draw a difference map as an SVG image: green cells where the first map exceeds the reference, red cells where
    it falls below, with a saturation proportional to the difference up to ``diff_cap``.

    Parameters
    ----------
    difference : :py:class:`DifferenceMap`
        the differences.
    config : :py:class:`RunConfig`, optional
        the render window and the saturation cap.

    Returns
    -------
    svg : str
        the SVG document.
    """
    if config is None:
        config = RunConfig()
    cap = config.diff_cap
    canvas = SvgCanvas(config)
    canvas.add_axes("difference of %s" % difference.metric)
    for key in difference.keys():
        canvas.add_cell(key, difference_color(difference[key], cap))
    levels = -cap + (np.arange(COLORBAR_STEPS) + 0.5) / COLORBAR_STEPS * 2 * cap
    canvas.add_colorbar([difference_color(level, cap) for level in levels], "%+g" % -cap, "%+g" % cap, "0")
    return canvas.to_string()


def save_svg(svg, filename):
    with open(filename, "w", newline="\n") as fp:
        fp.write(svg)
