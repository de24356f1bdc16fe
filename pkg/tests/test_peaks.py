import random

import pytest

from oracles import patterns as oracle
from q4eda.peaks import Peak, find_peaks


class TestFindPeaks:
    def test_single_spike(self):
        assert find_peaks([0.0, 3.0, 0.0]) == [Peak(1, 3.0, 1.0)]

    def test_plateau_reports_leftmost_sample(self):
        got = find_peaks([0.0, 2.0, 2.0, 2.0, 0.0])
        assert [p.index for p in got] == [1]
        assert got[0].width == pytest.approx(3.0)

    def test_flat_series_has_none(self):
        assert find_peaks([1.0, 1.0, 1.0]) == []

    def test_endpoints_are_not_peaks(self):
        assert find_peaks([3.0, 1.0, 2.0]) == []

    def test_shoulder_has_small_prominence(self):
        # second bump sits on the first one's flank
        got = find_peaks([0.0, 1.0, 0.5, 2.0, 0.0])
        assert [p.index for p in got] == [1, 3]
        assert got[0].prominence == pytest.approx(0.5)
        assert got[1].prominence == pytest.approx(2.0)

    def test_short_series(self):
        assert find_peaks([]) == []
        assert find_peaks([1.0]) == []
        assert find_peaks([1.0, 2.0]) == []

    def test_rel_height_widens_width(self):
        narrow = find_peaks([0.0, 4.0, 0.0], rel_height=0.25)
        wide = find_peaks([0.0, 4.0, 0.0], rel_height=0.9)
        assert narrow[0].width < wide[0].width

    def test_matches_oracle_on_random_series(self):
        rng = random.Random(4021)
        for trial in range(120):
            n = rng.randint(3, 24)
            values = [round(rng.uniform(0.0, 10.0), 2) for _ in range(n)]
            got = find_peaks(values)
            indices = oracle.find_peak_indices(values)
            assert [p.index for p in got] == indices, (trial, values)
            for peak in got:
                assert peak.prominence == pytest.approx(
                    oracle.prominence_of(values, peak.index), abs=1e-9)
                assert peak.width == pytest.approx(
                    oracle.width_of(values, peak.index, 0.5), abs=1e-9)
