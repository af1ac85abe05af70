"""Brute-force map counts from rotation systems.

Vertex ``i`` of valence ``j`` owns the darts ``(i, 1..j)`` in that cyclic
order; ``sigma`` is the fixed cyclic shift at every vertex and a map is a
fixed-point-free involution ``alpha`` pairing the darts into edges. Faces
are the cycles of ``sigma . alpha`` and the genus follows from
``V - E + F = 2 - 2g``. Every connected pairing is counted once, which is
the count with labeled vertices and one marked dart per vertex.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .exceptions import Disconnected, InputError, TooLarge
from .logging import get_logger, time_operation
from .models import ComparisonEntry, ComparisonReport, MapCountRecord
from .specialize import Potential, free_energy_series, map_count
from .utils.helpers import parallel_map
from .utils.serializers import format_fraction
from .utils.validators import validate_profile

logger = get_logger(__name__)

DEFAULT_MAX_DARTS = 16

Profile = Mapping[int, int]
FaceCounts = Dict[Tuple[int, int], int]


def valences_of(profile: Profile) -> List[int]:
    """One valence per labeled vertex, smallest valence first."""
    return [j for j, n in sorted(validate_profile(profile).items()) for _ in range(n)]


def vertex_permutation(valences: Sequence[int]) -> Tuple[int, ...]:
    sigma: List[int] = []
    start = 0
    for j in valences:
        sigma.extend(start + (k + 1) % j for k in range(j))
        start += j
    return tuple(sigma)


def dart_owners(valences: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i for i, j in enumerate(valences) for _ in range(j))


@dataclass(frozen=True)
class RotationSystem:
    valences: Tuple[int, ...]
    sigma: Tuple[int, ...]
    alpha: Tuple[int, ...]

    @classmethod
    def from_pairing(cls, valences: Sequence[int], alpha: Sequence[int]) -> "RotationSystem":
        valences = tuple(valences)
        return cls(valences, vertex_permutation(valences), tuple(alpha))

    @property
    def darts(self) -> int:
        return len(self.sigma)

    def faces(self) -> int:
        seen = [False] * self.darts
        count = 0
        for start in range(self.darts):
            if seen[start]:
                continue
            count += 1
            d = start
            while not seen[d]:
                seen[d] = True
                d = self.sigma[self.alpha[d]]
        return count

    def is_connected(self) -> bool:
        return _connected(dart_owners(self.valences), self.alpha, len(self.valences))


def _connected(owners: Sequence[int], alpha: Sequence[int], vertices: int) -> bool:
    parent = list(range(vertices))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    components = vertices
    for d, e in enumerate(alpha):
        ra, rb = find(owners[d]), find(owners[e])
        if ra != rb:
            parent[ra] = rb
            components -= 1
    return components == 1


def genus_of(rs: RotationSystem) -> int:
    """``g`` from ``V - E + F = 2 - 2g``."""
    if not rs.is_connected():
        raise Disconnected(details={"valences": rs.valences})
    V, E, F = len(rs.valences), rs.darts // 2, rs.faces()
    return (2 - V + E - F) // 2


def pairings(darts: Sequence[int]) -> Iterator[Dict[int, int]]:
    """Every perfect matching of ``darts`` by backtracking on the smallest dart."""
    if not darts:
        yield {}
        return
    first, rest = darts[0], darts[1:]
    for i, partner in enumerate(rest):
        for matching in pairings(rest[:i] + rest[i + 1:]):
            matching[first] = partner
            matching[partner] = first
            yield matching


def _count_branch(task: Tuple[Tuple[int, ...], int]) -> FaceCounts:
    """Counts for all pairings that match dart 0 with ``partner``."""
    valences, partner = task
    n = sum(valences)
    sigma = vertex_permutation(valences)
    owners = dart_owners(valences)
    V, E = len(valences), n // 2
    counts: Counter = Counter()
    remaining = [d for d in range(1, n) if d != partner]
    for matching in pairings(remaining):
        matching[0] = partner
        matching[partner] = 0
        alpha = [matching[d] for d in range(n)]
        if not _connected(owners, alpha, V):
            continue
        rs = RotationSystem(valences, sigma, tuple(alpha))
        F = rs.faces()
        counts[((2 - V + E - F) // 2, F)] += 1
    return dict(counts)


def count_by_faces(profile: Profile, max_darts: int = DEFAULT_MAX_DARTS, workers: int = 1) -> FaceCounts:
    """``(genus, faces) -> count`` over all connected maps with the profile."""
    valences = tuple(valences_of(profile))
    n = sum(valences)
    if n % 2:
        raise InputError("Total valence must be even", details={"profile": dict(profile)})
    if n > max_darts:
        raise TooLarge(details={"profile": dict(profile)}, darts=n, limit=max_darts)
    if n == 0:
        return {}
    with time_operation("count_by_faces", {"profile": dict(profile), "darts": n}):
        branches = parallel_map(_count_branch, [(valences, p) for p in range(1, n)], workers)
    total: Counter = Counter()
    for branch in branches:
        total.update(branch)
    logger.debug("Enumerated maps", profile=dict(profile), maps=sum(total.values()))
    return dict(sorted(total.items()))


def enumerate_maps(profile: Profile, genus: int, max_darts: int = DEFAULT_MAX_DARTS, workers: int = 1) -> Dict[int, int]:
    """Face count to number of genus-``genus`` maps with the profile."""
    counts = count_by_faces(profile, max_darts, workers)
    return {faces: c for (g, faces), c in counts.items() if g == genus}


def count_records(profile: Profile, max_darts: int = DEFAULT_MAX_DARTS, workers: int = 1) -> List[MapCountRecord]:
    key = {str(j): n for j, n in sorted(profile.items()) if n}
    return [
        MapCountRecord(profile=key, genus=g, faces=faces, count=str(c))
        for (g, faces), c in count_by_faces(profile, max_darts, workers).items()
    ]


def profiles_within(valences: Sequence[int], max_vertices: int) -> Iterator[Dict[int, int]]:
    """Non-empty profiles over ``valences`` with at most ``max_vertices`` vertices and even total valence."""
    valences = sorted(set(valences))
    for counts in product(range(max_vertices + 1), repeat=len(valences)):
        if not 0 < sum(counts) <= max_vertices:
            continue
        profile = {j: n for j, n in zip(valences, counts) if n}
        if sum(j * n for j, n in profile.items()) % 2 == 0:
            yield profile


def compare(
    potential: Potential,
    genus: int,
    max_vertices: int,
    max_darts: int = DEFAULT_MAX_DARTS,
    workers: int = 1,
) -> ComparisonReport:
    """Series map counts of ``F_genus`` against exhaustive enumeration."""
    series = free_energy_series(potential, genus, max_vertices)
    entries: List[ComparisonEntry] = []
    valences = [j for j, _ in potential.couplings]
    for profile in profiles_within(valences, max_vertices):
        darts = sum(j * n for j, n in profile.items())
        if darts > max_darts:
            logger.debug("Skipping profile beyond dart bound", profile=profile, darts=darts, max_darts=max_darts)
            continue
        from_series = map_count(series, profile, potential)
        from_oracle = enumerate_maps(profile, genus, max_darts, workers)
        for faces in sorted(set(from_series) | set(from_oracle)):
            s = from_series.get(faces, Fraction(0))
            o = from_oracle.get(faces, 0)
            entries.append(
                ComparisonEntry(
                    profile={str(j): n for j, n in profile.items()},
                    faces=faces,
                    series_count=format_fraction(s),
                    oracle_count=str(o),
                    equal=s == o,
                )
            )
    report = ComparisonReport(potential=potential.text, genus=genus, max_vertices=max_vertices, entries=entries)
    if not report.passed:
        logger.warning("Oracle mismatch", potential=potential.text, genus=genus, mismatches=len(report.mismatches))
    return report


__all__ = [
    "DEFAULT_MAX_DARTS",
    "RotationSystem",
    "compare",
    "count_by_faces",
    "count_records",
    "enumerate_maps",
    "genus_of",
    "pairings",
    "profiles_within",
    "valences_of",
]
