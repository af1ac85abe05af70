"""
Brute-force map enumeration tests.
"""

import io

import pytest

from stringforge.exceptions import Disconnected, InputError, TooLarge
from stringforge.oracle import (
    RotationSystem,
    compare,
    count_by_faces,
    count_records,
    enumerate_maps,
    genus_of,
    pairings,
    profiles_within,
    valences_of,
)
from stringforge.logging import setup_logging
from stringforge.utils.validators import parse_profile_text
from tests.conftest import ORACLE_COUNTS


@pytest.mark.unit
@pytest.mark.oracle
class TestRotationSystems:
    """Faces, genus and connectivity of single rotation systems."""

    def test_planar_quartic_vertex(self):
        rs = RotationSystem.from_pairing([4], [1, 0, 3, 2])
        assert rs.faces() == 3
        assert genus_of(rs) == 0

    def test_toroidal_quartic_vertex(self):
        rs = RotationSystem.from_pairing([4], [2, 3, 0, 1])
        assert rs.faces() == 1
        assert genus_of(rs) == 1

    def test_disconnected(self):
        rs = RotationSystem.from_pairing([2, 2], [1, 0, 3, 2])
        assert not rs.is_connected()
        with pytest.raises(Disconnected):
            genus_of(rs)

    def test_pairings_count(self):
        assert len(list(pairings(list(range(6))))) == 15
        assert len(list(pairings(list(range(8))))) == 105

    def test_valences(self):
        assert valences_of({4: 1, 3: 2}) == [3, 3, 4]


@pytest.mark.unit
@pytest.mark.oracle
class TestCounts:
    """Counts by genus and faces."""

    @pytest.mark.parametrize("profile_text", sorted(ORACLE_COUNTS))
    def test_known_profiles(self, profile_text):
        assert count_by_faces(parse_profile_text(profile_text)) == ORACLE_COUNTS[profile_text]

    def test_connected_pairings_of_two_quartic_vertices(self):
        assert sum(count_by_faces({4: 2}).values()) == 96

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_chains_are_planar(self, n):
        counts = count_by_faces({2: n})
        assert all(g == 0 for g, _ in counts)

    def test_parallel_matches_serial(self):
        assert count_by_faces({4: 2}, workers=2) == count_by_faces({4: 2}, workers=1)

    def test_enumerate_maps_filters_genus(self):
        assert enumerate_maps({4: 1}, 1) == {1: 1}
        assert enumerate_maps({4: 1}, 2) == {}

    def test_odd_total_valence(self):
        with pytest.raises(InputError):
            count_by_faces({3: 1})

    def test_dart_bound(self):
        with pytest.raises(TooLarge):
            count_by_faces({4: 3}, max_darts=8)

    def test_records(self):
        records = count_records({4: 1})
        assert [(r.genus, r.faces, r.count) for r in records] == [(0, 3, "2"), (1, 1, "1")]
        assert records[0].profile == {"4": 1}

    def test_profiles_within(self):
        profiles = list(profiles_within([3], 3))
        assert profiles == [{3: 2}]


@pytest.mark.integration
@pytest.mark.oracle
class TestComparison:
    """Series map counts against the enumeration."""

    @pytest.mark.parametrize("genus", [0, 1])
    def test_quartic(self, quartic, genus):
        report = compare(quartic, genus, 2)
        assert report.entries
        assert report.passed, report.mismatches

    def test_cubic(self, cubic):
        report = compare(cubic, 0, 2)
        assert report.passed, report.mismatches

    def test_profiles_beyond_dart_bound_are_skipped(self, quartic, restore_root_logger):
        stream = io.StringIO()
        setup_logging(level="DEBUG", stream=stream)
        report = compare(quartic, 0, 2, max_darts=4)
        assert report.passed
        assert {entry.profile["4"] for entry in report.entries} == {1}
        output = stream.getvalue()
        assert "Skipping profile beyond dart bound" in output
        assert "darts=8" in output
