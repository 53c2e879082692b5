"""Linear forms on flag vectors and their convolution calculus.

Forms are finitely supported rational coefficient vectors indexed by subsets
of {0,...,d-1}; constants are carried as multiples of f_empty so that the
convolution stays a purely index-based bilinear operation.  Two forms are
considered equivalent when their difference reduces to zero against the
Dehn-Sommerville relations, which is how the classical identities are stated.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DimensionMismatch, InvalidParams, MissingEntry, UnsupportedDimension
from .flagalg import (
    FlagVector,
    complete_from_sparse,
    euler_check,
    gds_residuals,
    parse_subset_key,
    reduce_index,
    sparse_basis,
    subset_key,
)
from .families import PropertyReport, properties
from .rational import normalize, rat_from_str, rat_to_str


class FlagForm:
    """A linear functional sum_S c_S f_S on flag vectors of d-polytopes."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs: dict):
        if d < 0:
            raise InvalidParams(f"dimension must be >= 0, got {d}")
        self.d = d
        norm: dict[tuple[int, ...], Fraction] = {}
        for S, c in coeffs.items():
            S = tuple(sorted(set(S)))
            if S and not (0 <= S[0] and S[-1] < d):
                raise InvalidParams(f"index set {S} outside 0..{d - 1}")
            c = Fraction(c)
            if c:
                norm[S] = norm.get(S, Fraction(0)) + c
        self.coeffs = {S: c for S, c in norm.items() if c}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "FlagForm") -> "FlagForm":
        if self.d != other.d:
            raise DimensionMismatch(f"cannot add forms of dims {self.d} and {other.d}")
        out = dict(self.coeffs)
        for S, c in other.coeffs.items():
            out[S] = out.get(S, Fraction(0)) + c
        return FlagForm(self.d, out)

    def __sub__(self, other: "FlagForm") -> "FlagForm":
        return self + (-other)

    def __neg__(self) -> "FlagForm":
        return FlagForm(self.d, {S: -c for S, c in self.coeffs.items()})

    def __mul__(self, scalar) -> "FlagForm":
        scalar = Fraction(scalar)
        return FlagForm(self.d, {S: c * scalar for S, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlagForm):
            return NotImplemented
        return self.d == other.d and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.d, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        terms = " ".join(
            f"{'+' if c > 0 else '-'} {abs(c)}*f_{{{subset_key(S) or 'empty'}}}"
            for S, c in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0])))
        return f"FlagForm(d={self.d}: {terms or '0'})"

    def evaluate(self, v: FlagVector):
        """Apply the form; falls back to the sparse reduction when entries
        are missing but the vector is completable."""
        if self.d != v.d:
            raise DimensionMismatch(
                f"form at d={self.d} applied to vector at d={v.d}")
        try:
            return normalize(sum((c * Fraction(v.get(S))
                                  for S, c in self.coeffs.items()),
                                 start=Fraction(0)))
        except MissingEntry:
            red = self.reduced()
            if red.coeffs == self.coeffs:
                raise
            return red.evaluate(v)

    def reduced(self) -> "FlagForm":
        """The equivalent form supported on the sparse basis."""
        out: dict[tuple[int, ...], Fraction] = {}
        for S, c in self.coeffs.items():
            for T, ct in reduce_index(S, self.d).items():
                out[T] = out.get(T, Fraction(0)) + c * ct
        return FlagForm(self.d, out)

    def gds_equal(self, other: "FlagForm") -> bool:
        if self.d != other.d:
            return False
        return (self - other).reduced().is_zero()

    def to_json(self) -> str:
        coeffs = {subset_key(S): rat_to_str(c)
                  for S, c in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))}
        return json.dumps({"d": self.d, "coeffs": coeffs})

    @classmethod
    def from_json(cls, text: str) -> "FlagForm":
        doc = json.loads(text)
        coeffs = {}
        for key, value in doc["coeffs"].items():
            if isinstance(value, str):
                value = rat_from_str(value)
            coeffs[parse_subset_key(key)] = value
        return cls(doc["d"], coeffs)


def flag_form(d: int, coeffs: dict) -> FlagForm:
    return FlagForm(d, coeffs)


def evaluate(m: FlagForm, v: FlagVector):
    return m.evaluate(v)


def dual_form(m: FlagForm) -> FlagForm:
    """Index reversal s -> d-1-s, the combinatorial polarity on forms."""
    return FlagForm(m.d, {tuple(sorted(m.d - 1 - s for s in S)): c
                          for S, c in m.coeffs.items()})


def convolve(m1: FlagForm, m2: FlagForm) -> FlagForm:
    """Bilinear convolution: f_S at d1 times f_T at d2 becomes
    f_{S + {d1} + (T shifted by d1+1)} at d1 + d2 + 1."""
    d1, d2 = m1.d, m2.d
    out: dict[tuple[int, ...], Fraction] = {}
    for S, c1 in m1.coeffs.items():
        for T, c2 in m2.coeffs.items():
            U = tuple(sorted(S + (d1,) + tuple(t + d1 + 1 for t in T)))
            out[U] = out.get(U, Fraction(0)) + c1 * c2
    return FlagForm(d1 + d2 + 1, out)


def evaluate_by_face_sum(m1: FlagForm, m2: FlagForm, lattice):
    """Evaluate the convolution of m1 and m2 on a lattice directly, as the sum
    over faces F of dimension m1.d of m1(F) * m2(P/F)."""
    d1, d2 = m1.d, m2.d
    if d1 + d2 + 1 != lattice.d:
        raise DimensionMismatch(
            f"convolution of dims {d1} and {d2} does not match a {lattice.d}-lattice")
    total = Fraction(0)
    for face in lattice.faces(d1):
        below = lattice.restriction(face).flag_vector()
        above = lattice.quotient(face).flag_vector()
        total += Fraction(m1.evaluate(below)) * Fraction(m2.evaluate(above))
    return normalize(total)


def g_forms(d: int) -> tuple[FlagForm, FlagForm | None]:
    """The toric forms g_0 = f_empty and g_1 = f_0 - (d+1) f_empty."""
    g0 = FlagForm(d, {(): 1})
    if d < 1:
        return g0, None
    g1 = FlagForm(d, {(0,): 1, (): -(d + 1)})
    return g0, g1


def kalai_5d_summands() -> tuple[FlagForm, FlagForm, FlagForm]:
    """The three convolutions of toric g forms that cover dimension 5:
    g0^1 * g1^2 * g0^0,  g0^0 * g1^2 * g0^1  and  g1^2 * g1^2."""
    g0_0, _ = g_forms(0)
    g0_1, _ = g_forms(1)
    _, g1_2 = g_forms(2)
    s1 = convolve(convolve(g0_1, g1_2), g0_0)
    s2 = convolve(convolve(g0_0, g1_2), g0_1)
    s3 = convolve(g1_2, g1_2)
    return s1, s2, s3


def kalai_5d_form() -> FlagForm:
    """Sum of the three g-convolution summands, reduced: 9f_2 - 6f_1 - 6f_3."""
    s1, s2, s3 = kalai_5d_summands()
    total = (s1 + s2 + s3).reduced()
    assert total == FlagForm(5, {(1,): -6, (2,): 9, (3,): -6}), total
    return total


class BatteryMember(NamedTuple):
    name: str
    form: FlagForm
    source: str


class InequalityBattery:
    """Named forms asserted nonnegative on all polytopes of one dimension."""

    def __init__(self, d: int, members: list[BatteryMember]):
        self.d = d
        self.members = list(members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def evaluate_all(self, v: FlagVector) -> dict[str, object]:
        return {m.name: m.form.evaluate(v) for m in self.members}

    def violations(self, v: FlagVector) -> list[str]:
        return [name for name, val in self.evaluate_all(v).items() if val < 0]


def battery(d: int) -> InequalityBattery:
    """The closed list of linear inequalities used at d = 5, 6, 7."""
    if d == 5:
        kalai = kalai_5d_form()
        members = [
            BatteryMember("edge-vertex-bound",
                          flag_form(5, {(1,): 2, (0,): -5}),
                          "every vertex of a 5-polytope meets at least 5 edges"),
            BatteryMember("edge-vertex-bound-dual",
                          flag_form(5, {(3,): 2, (4,): -5}),
                          "dual form: every facet has at least 5 ridges"),
            BatteryMember("g1-convolution",
                          kalai,
                          "sum of the three nonnegative g1 convolution"
                          " splittings of dimension 5"),
            BatteryMember("g1-convolution-dual",
                          dual_form(kalai),
                          "index reversal of g1-convolution"),
        ]
    elif d == 6:
        members = [
            BatteryMember("edge-vertex-bound",
                          flag_form(6, {(1,): 1, (0,): -3}),
                          "every vertex of a 6-polytope meets at least 6 edges"),
            BatteryMember("cd-c2dc2-bound",
                          flag_form(6, {(0,): 1, (1,): -1, (2,): 1, (): -21}),
                          "nonnegativity of the cd-index coefficient"
                          " <c^2dc^2 - 19c^6>"),
            BatteryMember("edge-vertex-bound-dual",
                          flag_form(6, {(4,): 1, (5,): -3}),
                          "dual form: every facet has at least 6 ridges"),
            BatteryMember("cd-c2dc2-bound-dual",
                          flag_form(6, {(5,): 1, (4,): -1, (3,): 1, (): -21}),
                          "index reversal of cd-c2dc2-bound"),
        ]
    elif d == 7:
        members = [
            BatteryMember("edge-vertex-bound",
                          flag_form(7, {(1,): 2, (0,): -7}),
                          "every vertex of a 7-polytope meets at least 7 edges"),
            BatteryMember("cd-c2dc3-bound",
                          flag_form(7, {(0,): 1, (1,): -1, (2,): 1, (): -36}),
                          "nonnegativity of the cd-index coefficient"
                          " <c^2dc^3 - 34c^7>"),
            BatteryMember("edge-vertex-bound-dual",
                          flag_form(7, {(5,): 2, (6,): -7}),
                          "dual form: every facet has at least 7 ridges"),
            BatteryMember("cd-c2dc3-bound-dual",
                          flag_form(7, {(6,): 1, (5,): -1, (4,): 1, (): -36}),
                          "index reversal of cd-c2dc3-bound"),
        ]
    else:
        raise UnsupportedDimension(f"no inequality battery for d={d}")
    return InequalityBattery(d, members)


@dataclass
class CandidateReport:
    d: int
    f: tuple[int, ...]
    battery_values: dict[str, object]
    battery_ok: bool
    euler_ok: bool
    gds_ok: bool
    properties: PropertyReport


def check_candidate(v) -> CandidateReport:
    """Screen a complete or completable flag vector against the battery and
    the f-vector property predicates."""
    if isinstance(v, dict):
        raise InvalidParams("pass a FlagVector; complete sparse data first")
    d = v.d
    if d not in (5, 6, 7):
        raise UnsupportedDimension(f"candidate screening supports d in 5..7, got {d}")
    if not v.complete:
        v = complete_from_sparse(dict(v.entries), d)
    values = battery(d).evaluate_all(v)
    f = v.f_vector()
    return CandidateReport(
        d=d,
        f=tuple(f),
        battery_values=values,
        battery_ok=all(val >= 0 for val in values.values()),
        euler_ok=euler_check(f),
        gds_ok=all(r == 0 for r in gds_residuals(v)),
        properties=properties(f),
    )


def feasible_sample_boxes() -> dict[tuple[int, ...], tuple[int, int]]:
    """Integer sampling boxes for sparse 5-dimensional flag data, scaled to
    bracket the cyclic polytopes with 8 to 12 vertices."""
    from .lattice import build_cyclic

    lo = build_cyclic(5, 8).flag_vector()
    hi = build_cyclic(5, 12).flag_vector()
    boxes = {}
    for S in sparse_basis(5):
        if not S:
            continue
        boxes[S] = (max(1, int(lo.get(S)) // 2), 2 * int(hi.get(S)))
    return boxes


def sample_feasible_5d(rng, count: int, max_tries: int = 20000) -> list[FlagVector]:
    """Rejection-sample complete 5-dimensional flag vectors with positive
    face counts that pass the whole battery."""
    boxes = feasible_sample_boxes()
    bat = battery(5)
    out: list[FlagVector] = []
    for _ in range(max_tries):
        if len(out) >= count:
            break
        values = {S: rng.randint(a, b) for S, (a, b) in boxes.items()}
        v = complete_from_sparse(values, 5)
        if any(v.get((i,)) <= 0 for i in range(5)):
            continue
        if any(val < 0 for val in bat.evaluate_all(v).values()):
            continue
        out.append(v)
    return out
