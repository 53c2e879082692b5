"""Flag vectors and the linear relations between their entries.

The generalized Dehn-Sommerville relations say that for an index set S and a
gap (i, k) of S (both endpoints in S together with -1 and d, k - i >= 2, no
element of S strictly between them)

    sum_{j=i+1}^{k-1} (-1)^(j-i-1) f_{S + j}  =  f_S * (1 - (-1)^(k-i-1)).

The S = {} gap (-1, d) case is Euler's relation.  Solving these relations
repeatedly eliminates every index set that touches d-1 or contains two
consecutive elements, leaving the Fibonacci-sized sparse basis; all of the
arithmetic is exact and the elimination coefficients stay integral.
"""

import itertools
import json
from fractions import Fraction
from functools import lru_cache

from .errors import IncompleteBasis, InvalidParams, MissingEntry
from .rational import normalize, rat_from_str, rat_to_str

# ----------------------------------------------------------------------
# value containers


class FVector:
    """Face-count vector (f_0, ..., f_{d-1}) of a d-polytope."""

    __slots__ = ("d", "components")

    def __init__(self, components):
        self.components = tuple(int(c) for c in components)
        self.d = len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return self.d

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        if isinstance(other, FVector):
            return self.components == other.components
        return self.components == tuple(other)

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"FVector{self.components}"

    def reversed(self) -> "FVector":
        return FVector(self.components[::-1])


def subset_key(S) -> str:
    """Index set as a concatenated digit string ('' for the empty set)."""
    return "".join(str(i) for i in S)


def parse_subset_key(key: str) -> tuple[int, ...]:
    S = tuple(int(ch) for ch in key)
    if any(a >= b for a, b in zip(S, S[1:])):
        raise InvalidParams(f"index-set key {key!r} is not strictly increasing")
    return S


class FlagVector:
    """Mapping from index sets S in {0,...,d-1} to the chain counts f_S.

    f_empty is pinned to 1.  ``complete`` marks that all 2^d entries are
    present, which is what the Dehn-Sommerville residuals require.
    """

    __slots__ = ("d", "entries")

    def __init__(self, d: int, entries: dict):
        if d < 0:
            raise InvalidParams(f"dimension must be >= 0, got {d}")
        self.d = d
        norm: dict[tuple[int, ...], object] = {}
        for S, value in entries.items():
            S = tuple(sorted(set(S)))
            if S and not (0 <= S[0] and S[-1] < d):
                raise InvalidParams(f"index set {S} outside 0..{d - 1}")
            norm[S] = normalize(Fraction(value))
        if norm.setdefault((), 1) != 1:
            raise InvalidParams("f_empty must equal 1")
        self.entries = norm

    @property
    def complete(self) -> bool:
        return len(self.entries) == 2 ** self.d

    def get(self, S):
        S = tuple(sorted(set(S)))
        try:
            return self.entries[S]
        except KeyError:
            raise MissingEntry(
                f"flag entry f_{{{subset_key(S)}}} is not present") from None

    def f_vector(self) -> FVector:
        return FVector(self.get((i,)) for i in range(self.d))

    def sparse_values(self) -> dict[tuple[int, ...], object]:
        return {S: self.get(S) for S in sparse_basis(self.d)}

    def to_json(self) -> str:
        entries = {subset_key(S): rat_to_str(v)
                   for S, v in sorted(self.entries.items(), key=lambda kv: (len(kv[0]), kv[0]))}
        return json.dumps({"d": self.d, "entries": entries})

    @classmethod
    def from_json(cls, text: str) -> "FlagVector":
        doc = json.loads(text)
        entries = {}
        for key, value in doc["entries"].items():
            if isinstance(value, str):
                value = rat_from_str(value)
            entries[parse_subset_key(key)] = value
        return cls(doc["d"], entries)

    def __eq__(self, other):
        if not isinstance(other, FlagVector):
            return NotImplemented
        return self.d == other.d and self.entries == other.entries

    def __repr__(self):
        return f"FlagVector(d={self.d}, entries={len(self.entries)})"


# ----------------------------------------------------------------------
# sparse basis


@lru_cache(maxsize=None)
def sparse_basis(d: int) -> tuple[tuple[int, ...], ...]:
    """Index sets inside {0,...,d-2} with no two consecutive elements.

    There are Fibonacci-many of them (2, 3, 5, 8, 13, 21 for d = 2..7) and
    flag-vector entries on these sets determine everything else.
    """
    if d < 0:
        raise InvalidParams(f"dimension must be >= 0, got {d}")
    sets = []
    for size in range(0, d + 1):
        for S in itertools.combinations(range(max(d - 1, 0)), size):
            if all(b - a >= 2 for a, b in zip(S, S[1:])):
                sets.append(S)
    return tuple(sorted(sets, key=lambda S: (len(S), S)))


def is_sparse(S, d: int) -> bool:
    S = tuple(sorted(S))
    return (all(s <= d - 2 for s in S)
            and all(b - a >= 2 for a, b in zip(S, S[1:])))


# ----------------------------------------------------------------------
# Dehn-Sommerville relations


def gds_pairs(d: int) -> tuple:
    """All (S, (i, k)) relation labels for dimension d, in a fixed order."""
    pairs = []
    for size in range(0, d + 1):
        for S in itertools.combinations(range(d), size):
            bounds = (-1,) + S + (d,)
            for i, k in zip(bounds, bounds[1:]):
                if k - i >= 2:
                    pairs.append((S, (i, k)))
    return tuple(pairs)


def gds_relation(S, gap: tuple[int, int], d: int) -> dict[tuple[int, ...], int]:
    """Coefficients of one relation, as a combination that must vanish."""
    S = tuple(sorted(set(S)))
    i, k = gap
    combo: dict[tuple[int, ...], int] = {}
    for j in range(i + 1, k):
        T = tuple(sorted(S + (j,)))
        combo[T] = combo.get(T, 0) + (-1) ** (j - i - 1)
    combo[S] = combo.get(S, 0) - (1 - (-1) ** (k - i - 1))
    return {T: c for T, c in combo.items() if c}


def gds_residuals(v: FlagVector) -> list:
    """One residual per (S, gap) pair; all zero iff v satisfies the relations."""
    if not v.complete:
        raise MissingEntry("residuals need a complete flag vector")
    out = []
    for S, gap in gds_pairs(v.d):
        combo = gds_relation(S, gap, v.d)
        out.append(normalize(sum(c * Fraction(v.get(T)) for T, c in combo.items())))
    return out


# ----------------------------------------------------------------------
# reduction to the sparse basis


def _min_offender(S: tuple[int, ...], d: int):
    offenders = [p for p in S if p + 1 in S or p == d - 1]
    return min(offenders) if offenders else None


def _eliminate_once(S: tuple[int, ...], d: int) -> list[tuple[tuple[int, ...], Fraction]]:
    """Rewrite f_S via the relation on the gap left of its smallest offender.

    The relation is solved for its highest term, which by the choice of the
    offender is exactly f_S; every replacement set is smaller than S in the
    descending lexicographic order, so repeated elimination terminates.
    """
    p = _min_offender(S, d)
    rest = tuple(x for x in S if x != p)
    i = max([x for x in rest if x < p], default=-1)
    k = min([x for x in rest if x > p], default=d)
    assert k - 1 == p, (S, p, i, k)
    sign = Fraction((-1) ** (p - i - 1))
    terms = [(rest, sign * (1 - (-1) ** (k - i - 1)))]
    for j in range(i + 1, p):
        terms.append((tuple(sorted(rest + (j,))), -sign * (-1) ** (j - i - 1)))
    return terms


@lru_cache(maxsize=None)
def _reduce(S: tuple[int, ...], d: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    if is_sparse(S, d):
        return ((S, Fraction(1)),)
    combo: dict[tuple[int, ...], Fraction] = {}
    for T, c in _eliminate_once(S, d):
        for U, cu in _reduce(T, d):
            combo[U] = combo.get(U, Fraction(0)) + c * cu
    return tuple(sorted(((U, c) for U, c in combo.items() if c),
                        key=lambda item: (len(item[0]), item[0])))


def reduce_index(S, d: int) -> dict[tuple[int, ...], Fraction]:
    """Express f_S over the sparse basis, valid on every relation-satisfying
    flag vector.  Idempotent on sparse sets."""
    S = tuple(sorted(set(S)))
    if S and not (0 <= S[0] and S[-1] < d):
        raise InvalidParams(f"index set {S} outside 0..{d - 1}")
    return dict(_reduce(S, d))


def complete_from_sparse(values: dict, d: int) -> FlagVector:
    """Fill in all 2^d flag entries from values on the sparse basis."""
    basis = sparse_basis(d)
    norm: dict[tuple[int, ...], object] = {}
    for S, value in values.items():
        S = tuple(sorted(set(S)))
        if not is_sparse(S, d):
            raise InvalidParams(f"{S} is not a sparse index set for d={d}")
        norm[S] = normalize(Fraction(value))
    if norm.setdefault((), 1) != 1:
        raise InvalidParams("f_empty must equal 1")
    missing = [S for S in basis if S not in norm]
    if missing:
        raise IncompleteBasis(
            f"missing sparse values for {[subset_key(S) for S in missing]}")
    entries: dict[tuple[int, ...], object] = {}
    for size in range(0, d + 1):
        for S in itertools.combinations(range(d), size):
            entries[S] = normalize(sum(
                (c * Fraction(norm[T]) for T, c in _reduce(S, d)),
                start=Fraction(0)))
    return FlagVector(d, entries)


def euler_check(f) -> bool:
    """Does the alternating sum of face counts equal 1 - (-1)^d?"""
    f = f if isinstance(f, FVector) else FVector(f)
    return sum((-1) ** i * fi for i, fi in enumerate(f)) == 1 - (-1) ** f.d


def parse_sparse_json(text: str) -> tuple[dict[tuple[int, ...], object], int]:
    """Read sparse flag data {d, entries: {"": 1, "02": ...}}."""
    doc = json.loads(text)
    d = doc["d"]
    values = {}
    for key, value in doc["entries"].items():
        if isinstance(value, str):
            value = rat_from_str(value)
        values[parse_subset_key(key)] = value
    return values, d
