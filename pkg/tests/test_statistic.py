#!/usr/bin/env python
# -*- coding: utf-8 -*-
# test_statistic.py

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

import matplotlib
matplotlib.use('agg')
import sys
import os
import unittest
import numpy as np
from hypothesis import given, assume

import mock

while True:
    # try to import voicemap
    try:
        import voicemap as vm
    # if an import error occurs
    except ImportError as err:
        # get the module name from the error message
        name = str(err).split("'")[1]
        print("Mock:", name, file=sys.stderr)
        # and mock it
        sys.modules.update((mod_name, mock.MagicMock()) for mod_name in [name])
        # then try again to import it
        continue
    else:
        break

sys.path.insert(0, os.path.dirname(__file__))
import strategies as vm_st
from strategies import TempFile




def two_cell_map(first, second, **kwargs):
    return vm.VoiceMap.from_cycles(vm_st.cell_cycles(12, 70, cpps_db=first, **kwargs) +
                                   vm_st.cell_cycles(13, 70, cpps_db=second, **kwargs), source="two cells")


class TestStats(unittest.TestCase):

    def test_twoCells(self):
        result = vm.stats(two_cell_map(2, 4), "cpps")
        self.assertEqual(result.metric, "cpps_db")
        self.assertAlmostEqual(result.mean, 3)
        self.assertAlmostEqual(result.std, np.sqrt(2))
        self.assertAlmostEqual(result.ci95_low, 3 - 1.96)
        self.assertAlmostEqual(result.ci95_high, 3 + 1.96)
        self.assertEqual(result.n_cells, 2)
        self.assertEqual(vm.print_mean_std(result.mean, result.std), "3.00 ± 1.41")
        self.assertEqual(str(result), "cpps_db 3.00 ± 1.41 [1.04, 4.96]")

    def test_equalCells(self):
        result = vm.stats(two_cell_map(7.5, 7.5), "cpps_db")
        self.assertEqual(result.mean, 7.5)
        self.assertEqual(result.std, 0)
        self.assertEqual((result.ci95_low, result.ci95_high), (7.5, 7.5))

    def test_insufficientCells(self):
        voice_map = vm.VoiceMap.from_cycles(vm_st.cell_cycles(12, 70, 5, cpps_db=3))
        self.assertRaises(vm.InsufficientCellsError, vm.stats, voice_map, "cpps")
        self.assertRaises(vm.InsufficientCellsError, vm.stats, vm.VoiceMap(), "crest")
        # no cycle carries a spectrum balance
        self.assertRaises(vm.InsufficientCellsError, vm.stats, two_cell_map(2, 4), "sb")

    def test_unknown(self):
        self.assertRaises(vm.UnknownMetricError, vm.stats, two_cell_map(2, 4), "jitter")
        self.assertRaises(ValueError, vm.stats, two_cell_map(2, 4), "cpps", weighting="median")

    def test_minCycles(self):
        voice_map = vm.VoiceMap.from_cycles(vm_st.cell_cycles(12, 70, 1, cpps_db=1) +
                                            vm_st.cell_cycles(13, 70, 2, cpps_db=2) +
                                            vm_st.cell_cycles(14, 70, 2, cpps_db=4))
        self.assertAlmostEqual(vm.stats(voice_map, "cpps").mean, 7 / 3)
        self.assertAlmostEqual(vm.stats(voice_map, "cpps", min_cycles_per_cell=2).mean, 3)
        self.assertRaises(vm.InsufficientCellsError, vm.stats, voice_map, "cpps", min_cycles_per_cell=3)

    def test_cycleWeighting(self):
        voice_map = vm.VoiceMap.from_cycles(vm_st.cell_cycles(12, 70, 1, cpps_db=2) +
                                            vm_st.cell_cycles(13, 70, 3, cpps_db=4))
        result = vm.stats(voice_map, "cpps", weighting="cycle")
        self.assertAlmostEqual(result.mean, np.average([2, 4], weights=[1, 3]))
        # frequency weights: sum(w (x - mean)^2) / (sum(w) - 1)
        self.assertAlmostEqual(result.std, 1)
        self.assertAlmostEqual(result.ci95_high - result.mean, 1.96 / 2)
        self.assertEqual(result.n_cells, 2)

        # with one cycle per cell both weightings agree
        cell = vm.stats(two_cell_map(2, 4), "cpps")
        cycle = vm.stats(two_cell_map(2, 4), "cpps", weighting="cycle")
        self.assertAlmostEqual(cell.mean, cycle.mean)
        self.assertAlmostEqual(cell.std, cycle.std)

    def test_reference(self):
        voice_map = two_cell_map(2, 4)
        result = vm.stats(voice_map, "cpps", voice_map)
        self.assertEqual(result.diff_from_ref, 0)
        self.assertEqual(result.overlap_cells, 2)

        reference = vm.VoiceMap.from_cycles(vm_st.cell_cycles(12, 70, cpps_db=1) + vm_st.cell_cycles(30, 90, cpps_db=9))
        result = vm.stats(voice_map, "cpps", reference)
        self.assertAlmostEqual(result.diff_from_ref, 1)
        self.assertEqual(result.overlap_cells, 1)

        disjoint = vm.VoiceMap.from_cycles(vm_st.cell_cycles(30, 90, cpps_db=9) + vm_st.cell_cycles(31, 90, cpps_db=9))
        result = vm.stats(voice_map, "cpps", disjoint)
        self.assertEqual(result.diff_from_ref, None)
        self.assertEqual(result.overlap_cells, 0)

    @given(vm_st.voice_map())
    def test_cellMeans(self, voice_map):
        keys, means = voice_map.means("spl")
        assume(len(keys) >= 2)
        result = vm.stats(voice_map, "spl")
        self.assertAlmostEqual(result.mean, np.mean(means), 6)
        self.assertAlmostEqual(result.std, np.std(means, ddof=1), 6)
        assert result.ci95_low <= result.mean <= result.ci95_high


class TestTables(unittest.TestCase):

    def test_statsTable(self):
        table = vm.stats_table(two_cell_map(2, 4))
        self.assertEqual(list(table.metric), ["f0_hz", "spl_db", "crest", "cpps_db"])
        self.assertEqual(list(table.columns), ["metric", "mean", "std", "ci95_low", "ci95_high", "n_cells",
                                               "diff_from_ref", "overlap_cells"])
        assert np.all(np.isnan(table.diff_from_ref))
        table = vm.stats_table(two_cell_map(2, 4), two_cell_map(1, 4), metrics=["cpps_db"])
        self.assertEqual(len(table), 1)
        self.assertAlmostEqual(table.diff_from_ref[0], 0.5)

    def test_summaryTable(self):
        table = vm.summary_table(two_cell_map(2, 4))
        self.assertEqual(list(table.columns), ["metric", "Mean ± Std.dev.", "CI Range (95%)"])
        self.assertEqual(table["Mean ± Std.dev."][3], "3.00 ± 1.41")
        self.assertEqual(table["CI Range (95%)"][3], "[1.04, 4.96]")
        table = vm.summary_table(two_cell_map(2, 4), two_cell_map(2, 4))
        self.assertEqual(list(table["Diff from Raw"]), ["+0.00"] * 4)
        self.assertEqual(list(table["Overlap"]), [2] * 4)
        table = vm.summary_table(two_cell_map(2, 4), metrics=["cpps_db", "f0_hz"])
        self.assertEqual(list(table.metric), ["cpps_db", "f0_hz"])

    def test_compareTable(self):
        maps = dict(raw=two_cell_map(2, 4), smooth=two_cell_map(3, 6), single=vm.VoiceMap.from_cycles(
            vm_st.cell_cycles(12, 70, cpps_db=1)))
        table = vm.compare_table(maps, "raw", "cpps")
        self.assertEqual(list(table.system), ["raw", "smooth", "single"])
        self.assertEqual(list(table["Diff from Raw"]), ["baseline", "+1.50", "n/a"])
        self.assertEqual(list(table["Overlap"]), [2, 2, 1])
        self.assertEqual(table["Mean ± Std.dev."][1], "4.50 ± 2.12")
        self.assertRaises(KeyError, vm.compare_table, maps, "missing", "cpps")

        text = vm.statistic.format_table(table)
        lines = text.splitlines()
        self.assertEqual(len(lines), 5)
        assert lines[0].startswith("system")
        assert set(lines[1]) <= {"-", " "}
        assert "baseline" in lines[2]

    def test_printDifference(self):
        self.assertEqual(vm.statistic.print_difference(-0.001), "+0.00")
        self.assertEqual(vm.statistic.print_difference(-0.5), "-0.50")
        self.assertEqual(vm.statistic.print_difference(None), "n/a")
        self.assertEqual(vm.print_mean_std(1, 0.123, digits=1), "1.0 ± 0.1")


class TestCoverageBand(unittest.TestCase):

    def test_band(self):
        band = vm.coverage_band([[(1, 2), (2, 4)], [(1, 4), (2, 6)], [(1, 3), (2, 5)]])
        np.testing.assert_equal(band.k.to_numpy(), [1, 2])
        np.testing.assert_almost_equal(band["mean"].to_numpy(), [3, 5])
        np.testing.assert_almost_equal((band.ci95_high - band["mean"]).to_numpy(), 1.96 / np.sqrt(3))

    def test_truncated(self):
        band = vm.coverage_band([[(1, 2), (2, 4)], [(1, 4)]])
        self.assertEqual(len(band), 1)

    def test_oneCurve(self):
        self.assertRaises(vm.InsufficientCellsError, vm.coverage_band, [[(1, 2)]])


if __name__ == '__main__':
    unittest.main()
