#!/usr/bin/env python
# -*- coding: utf-8 -*-
# test_signal_io.py

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
from scipy.io import wavfile
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as st_np

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


def rms_db(x):
    return 20 * np.log10(np.sqrt(np.mean(np.asarray(x) ** 2)))


class TestLoadWav(unittest.TestCase):

    def test_silence(self):
        with TempFile(".wav") as filename:
            wavfile.write(filename, 22050, np.zeros(22050, dtype=np.int16))
            buf = vm.load_wav(filename)
        self.assertEqual(buf.sample_rate, 22050)
        self.assertEqual(len(buf), 22050)
        assert np.all(buf.samples == 0)
        self.assertEqual(buf.source_id, os.path.splitext(filename)[0])

    def test_fullScale(self):
        with TempFile(".wav") as filename:
            wavfile.write(filename, 22050, np.full(100, 32767, dtype=np.int16))
            buf = vm.load_wav(filename)
        np.testing.assert_almost_equal(buf.samples, 0.99997, 5)
        assert np.all(buf.samples <= 1.0)

    def test_noNormalisation(self):
        with TempFile(".wav") as filename:
            wavfile.write(filename, 44100, np.array([0, 100, -100, 3], dtype=np.int16))
            buf = vm.load_wav(filename)
        np.testing.assert_equal(buf.samples, np.array([0, 100, -100, 3]) / 32768)

    def test_multichannel(self):
        with TempFile(".wav") as filename:
            wavfile.write(filename, 22050, np.zeros((100, 2), dtype=np.int16))
            self.assertRaises(vm.MultichannelError, vm.load_wav, filename)

    def test_nonPcm(self):
        with TempFile(".wav") as filename:
            wavfile.write(filename, 22050, np.zeros(100, dtype=np.float32))
            self.assertRaises(vm.UnsupportedEncodingError, vm.load_wav, filename)

    def test_empty(self):
        with TempFile(".wav") as filename:
            wavfile.write(filename, 22050, np.zeros(0, dtype=np.int16))
            self.assertRaises(vm.EmptyAudioError, vm.load_wav, filename)

    def test_unreadable(self):
        self.assertRaises(vm.UnreadableAudioError, vm.load_wav, "does_not_exist.wav")
        with TempFile(".wav") as filename:
            with open(filename, "w") as fp:
                fp.write("this is not a wav file at all")
            self.assertRaises(vm.UnreadableAudioError, vm.load_wav, filename)

    def test_errorsAreLabeled(self):
        # all audio errors share a base class and name the file
        try:
            vm.load_wav("does_not_exist.wav")
        except vm.AudioError as err:
            assert "does_not_exist.wav" in str(err)
        else:
            self.fail("no error raised")

    @settings(deadline=None)
    @given(st_np.arrays(dtype=np.int16, shape=st.integers(1, 2000)), st.sampled_from([22050, 44100, 16000]))
    def test_roundTrip(self, data, rate):
        with TempFile(".wav") as filename:
            vm.write_wav(filename, vm.AudioBuffer(data / 32768, rate))
            buf = vm.load_wav(filename)
        self.assertEqual(buf.sample_rate, rate)
        np.testing.assert_equal(buf.samples * 32768, data.astype(float))


class TestResample(unittest.TestCase):

    def test_identity(self):
        buf = vm_st.white_noise(0.1)
        out = vm.resample_to_44100(buf)
        self.assertEqual(out.sample_rate, 44100)
        np.testing.assert_equal(out.samples, buf.samples)

    def test_duration(self):
        out = vm.resample_to_44100(vm.AudioBuffer(np.zeros(22050), 22050))
        self.assertEqual(out.sample_rate, 44100)
        assert abs(len(out) - 44100) <= 1

    def test_sineLevel(self):
        for rate, freq in [(22050, 1000), (22050, 200), (16000, 5000), (22050, 8000)]:
            buf = vm_st.sine(freq, 1.0, amplitude=0.5, sample_rate=rate)
            out = vm.resample_to_44100(buf)
            # compare the interior, 10 ms away from the edges
            edge_in, edge_out = int(0.01 * rate), int(0.01 * 44100)
            level_in = rms_db(buf.samples[edge_in:-edge_in])
            level_out = rms_db(out.samples[edge_out:-edge_out])
            self.assertAlmostEqual(level_in, level_out, delta=0.1, msg="%d Hz sine at %d Hz" % (freq, rate))

    def test_sineFrequency(self):
        out = vm.resample_to_44100(vm_st.sine(1000, 1.0, sample_rate=22050))
        spectrum = np.abs(np.fft.rfft(out.samples))
        peak = np.fft.rfftfreq(len(out), 1 / 44100)[np.argmax(spectrum)]
        self.assertAlmostEqual(peak, 1000, delta=1)

    def test_kernelLength(self):
        assert len(vm.signal_io.resampling_filter(2, 1)) >= 64


if __name__ == '__main__':
    unittest.main()
