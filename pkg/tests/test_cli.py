#!/usr/bin/env python
# -*- coding: utf-8 -*-
# test_cli.py

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
import io
import shutil
import tempfile
import pandas as pd

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
from voicemap.scripts import voicemap_cli


def run(*argv):
    with mock.patch("sys.stdout", new_callable=io.StringIO) as stdout, \
            mock.patch("sys.stderr", new_callable=io.StringIO) as stderr:
        code = voicemap_cli.main([str(arg) for arg in argv])
    return code, stdout.getvalue(), stderr.getvalue()


def read(filename):
    with open(filename) as fp:
        return fp.read()


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.folder = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.folder)

    def path(self, name):
        return os.path.join(self.folder, name)

    def wav(self, name, buf):
        filename = self.path(name)
        vm.write_wav(filename, buf)
        return filename

    def voice_map(self, name, cycles):
        filename = self.path(name)
        vm.VoiceMap.from_cycles(cycles, source=name).save(filename)
        return filename

    def two_cell_map(self, name, first=2, second=4):
        return self.voice_map(name, vm_st.cell_cycles(12, 70, cpps_db=first) + vm_st.cell_cycles(13, 70, cpps_db=second))


class TestAnalyze(CliTestCase):

    def test_silence(self):
        filename = self.wav("silence.wav", vm.AudioBuffer(np.zeros(44100), 44100))
        code, out, err = run("analyze", filename, "--out", self.path("map.csv"), "--quiet")
        self.assertEqual(code, voicemap_cli.EXIT_EMPTY_RESULT)
        assert "ERROR: no voiced content" in err
        assert not os.path.exists(self.path("map.csv"))

    def test_sine(self):
        filename = self.wav("sine.wav", vm_st.sine(110, 2.0, amplitude=0.3))
        code, out, err = run("analyze", filename, "--out", self.path("map.csv"), "--quiet")
        self.assertEqual(code, voicemap_cli.EXIT_OK)
        assert out.startswith("analyzed 1 file(s): ")
        voice_map = vm.VoiceMap.load(self.path("map.csv"))
        dominant = max(voice_map.keys(), key=lambda key: voice_map[key].n_cycles)
        assert 11 <= dominant.st_bin <= 13
        self.assertEqual(dominant.spl_bin, 86)
        self.assertEqual(voice_map.source, "corpus")
        metadata = vm.voice_map.read_metadata(self.path("map.csv"))
        self.assertEqual(metadata["files"], "1")
        self.assertEqual(metadata["min_run"], "3")

    def test_missingFile(self):
        code, out, err = run("analyze", self.path("missing.wav"), "--out", self.path("map.csv"), "--quiet")
        self.assertEqual(code, voicemap_cli.EXIT_INPUT_ERROR)
        assert "missing.wav" in err

    def test_deterministic(self):
        filename = self.wav("pulses.wav", vm_st.pulse_train(140, 1.0, amplitude=0.3))
        run("analyze", filename, "--out", self.path("first.csv"), "--quiet")
        run("analyze", filename, "--out", self.path("second.csv"), "--quiet")
        self.assertEqual(read(self.path("first.csv")), read(self.path("second.csv")))

    def test_threads(self):
        filenames = [self.wav("b.wav", vm_st.sine(150, 1.0, amplitude=0.2)),
                     self.wav("a.wav", vm_st.sine(220, 1.0, amplitude=0.1))]
        self.assertEqual(run("analyze", *filenames, "--out", self.path("one.csv"), "--quiet")[0], 0)
        self.assertEqual(run("analyze", *filenames, "--out", self.path("two.csv"), "--quiet", "--threads", 2)[0], 0)
        self.assertEqual(read(self.path("one.csv")), read(self.path("two.csv")))

    def test_dumps(self):
        filename = self.wav("sine.wav", vm_st.sine(110, 1.0))
        code, out, err = run("analyze", filename, "--out", self.path("map.csv"), "--quiet", "--dump-cycles",
                             "--dump-frames", "--per-file-dir", self.path("files"))
        self.assertEqual(code, 0)
        cycles = read(self.path("map.sine.cycles.csv")).splitlines()
        self.assertEqual(cycles[0], "start_sample,length_samples,f0_hz,spl_db,crest,cpps_db,sb_db")
        assert len(cycles) > 50
        frames = read(self.path("map.sine.frames.csv")).splitlines()
        assert len(frames) > 90
        self.assertEqual(vm.VoiceMap.load(self.path(os.path.join("files", "sine.csv"))).source, "sine")

    def test_overrides(self):
        filename = self.wav("sine.wav", vm_st.sine(110, 0.5))
        code, out, err = run("analyze", filename, "--out", self.path("map.csv"), "--quiet", "--set", "min_run=abc")
        self.assertEqual(code, voicemap_cli.EXIT_INPUT_ERROR)
        assert "min_run" in err
        code, out, err = run("analyze", filename, "--out", self.path("map.csv"), "--quiet", "--set", "min_run")
        self.assertEqual(code, voicemap_cli.EXIT_INPUT_ERROR)

        config = self.path("settings.cfg")
        with open(config, "w") as fp:
            fp.write("min_run = 5\n")
        code, out, err = run("analyze", filename, "--out", self.path("map.csv"), "--quiet", "--config", config,
                             "--min-cycles", 2)
        self.assertEqual(code, 0)
        metadata = vm.voice_map.read_metadata(self.path("map.csv"))
        self.assertEqual(metadata["min_run"], "5")
        self.assertEqual(metadata["min_cycles_per_cell"], "2")
        self.assertEqual(metadata["user_set"], "min_cycles_per_cell,min_run")


class TestCompare(CliTestCase):

    def test_self(self):
        filename = self.two_cell_map("m.csv")
        code, out, err = run("compare", filename, filename, "--out", self.path("cmp"))
        self.assertEqual(code, 0)
        assert "(2 overlapping cells)" in out
        difference = vm.DifferenceMap.load(self.path("cmp_cpps_db.diff.csv"))
        self.assertEqual(len(difference), 2)
        np.testing.assert_equal(difference.values(), 0)
        self.assertEqual(len(vm.DifferenceMap.load(self.path("cmp_sb_db.diff.csv"))), 0)
        stats = pd.read_csv(self.path("cmp_stats.csv"))
        self.assertEqual(list(stats.metric), ["f0_hz", "spl_db", "crest", "cpps_db"])
        np.testing.assert_equal(stats.diff_from_ref.to_numpy(), 0)

    def test_metric(self):
        a = self.two_cell_map("a.csv", 3, 3)
        b = self.two_cell_map("b.csv", 2, 4)
        code, out, err = run("compare", a, b, "--out", self.path("cmp"), "--metric", "cpps")
        self.assertEqual(code, 0)
        np.testing.assert_almost_equal(vm.DifferenceMap.load(self.path("cmp_cpps_db.diff.csv")).values(), [1, -1])
        assert not os.path.exists(self.path("cmp_crest.diff.csv"))
        # the printed summary and the written table hold the same metrics
        self.assertEqual(list(pd.read_csv(self.path("cmp_stats.csv")).metric), ["cpps_db"])
        assert "cpps_db" in out
        assert "f0_hz" not in out
        assert "crest" not in out

    def test_malformed(self):
        good = self.two_cell_map("good.csv")
        bad = self.path("bad.csv")
        with open(bad, "w") as fp:
            fp.write("st_bin,spl_bin,n_cycles,f0_hz,spl_db,crest,sb_db,cpps_db,n_sb,n_cpps\n"
                     "12,70,x,110,70.5,1.5,,,0,0\n")
        code, out, err = run("compare", good, bad, "--out", self.path("cmp"))
        self.assertEqual(code, voicemap_cli.EXIT_INPUT_ERROR)
        assert "row 1" in err

    def test_disjoint(self):
        a = self.voice_map("a.csv", vm_st.cell_cycles(12, 70))
        b = self.voice_map("b.csv", vm_st.cell_cycles(20, 80))
        code, out, err = run("compare", a, b, "--out", self.path("cmp"), "--metric", "crest")
        self.assertEqual(code, 0)
        assert "WARNING:" in err
        self.assertEqual(len(vm.DifferenceMap.load(self.path("cmp_crest.diff.csv"))), 0)


class TestCoverage(CliTestCase):

    def test_disjoint(self):
        filenames = []
        for index, voice_map in enumerate(vm_st.disjoint_maps([5, 3, 2])):
            filenames.append(self.path("u%d.csv" % index))
            voice_map.save(filenames[-1])
        code, out, err = run("coverage", *filenames, "--out", self.path("curve.csv"))
        self.assertEqual(code, 0)
        self.assertEqual(out, "k,cells\n1,5\n2,8\n3,10\n")
        self.assertEqual(read(self.path("curve.csv")), out)


class TestRender(CliTestCase):

    def test_map(self):
        filename = self.two_cell_map("m.csv")
        code, out, err = run("render", filename, "--metric", "cpps", "--out", self.path("m.svg"))
        self.assertEqual(code, 0)
        self.assertEqual(read(self.path("m.svg")).count('class="cell"'), 2)

    def test_unknownMetric(self):
        filename = self.two_cell_map("m.csv")
        code, out, err = run("render", filename, "--metric", "jitter", "--out", self.path("m.svg"))
        self.assertEqual(code, voicemap_cli.EXIT_INPUT_ERROR)
        assert "jitter" in err
        # a voice map needs the metric
        self.assertEqual(run("render", filename, "--out", self.path("m.svg"))[0], voicemap_cli.EXIT_INPUT_ERROR)

    def test_difference(self):
        filename = self.path("d.csv")
        vm.DifferenceMap("cpps", {vm.CellKey(12, 70): 3.0, vm.CellKey(13, 70): -1.0}).save(filename)
        code, out, err = run("render", filename, "--out", self.path("d.svg"))
        self.assertEqual(code, 0)
        svg = read(self.path("d.svg"))
        assert "#66ff66" in svg and "#ffcccc" in svg


class TestStats(CliTestCase):

    def test_twoCells(self):
        filename = self.two_cell_map("m.csv")
        code, out, err = run("stats", filename, "--out", self.path("stats.csv"))
        self.assertEqual(code, 0)
        assert "3.00 ± 1.41" in out
        assert os.path.exists(self.path("stats.csv"))

    def test_oneCell(self):
        filename = self.voice_map("m.csv", vm_st.cell_cycles(12, 70, 4, cpps_db=2))
        code, out, err = run("stats", filename)
        self.assertEqual(code, voicemap_cli.EXIT_EMPTY_RESULT)
        assert "ERROR:" in err

    def test_weighting(self):
        filename = self.voice_map("m.csv", vm_st.cell_cycles(12, 70, 1, cpps_db=2) +
                                  vm_st.cell_cycles(13, 70, 3, cpps_db=4))
        code, out, err = run("stats", filename, "--weighting", "cycle")
        self.assertEqual(code, 0)
        assert "3.50 ± 1.00" in out


class TestTable(CliTestCase):

    def test_table(self):
        raw = self.two_cell_map("raw.csv", 2, 4)
        smooth = self.two_cell_map("smooth.csv", 3, 6)
        code, out, err = run("table", smooth, "--reference", raw, "--metric", "cpps")
        self.assertEqual(code, 0)
        lines = out.splitlines()
        assert lines[2].startswith("raw") and "baseline" in lines[2]
        assert lines[3].startswith("smooth") and "+1.50" in lines[3]


if __name__ == '__main__':
    unittest.main()
