"""Closed-form f-vectors, connected sums, and the f-vector properties.

The four properties checked on a positive vector (f_0, ..., f_{d-1}):

    convex       2 f_k >= f_{k-1} + f_{k+1}        for interior k
    log-convex   f_k^2 >= f_{k-1} f_{k+1}          for interior k
    unimodal     rises to some peak, then falls
    barany       f_k >= min(f_0, f_{d-1})          for interior k

Each one implies the next on positive integer vectors.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch, InvalidParams
from .flagalg import FVector


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num} not divisible by {den}")
    return q


def cyclic_f5(n: int) -> FVector:
    """f-vector of the cyclic 5-polytope on n vertices:
    (n, n(n-1)/2, 2(n^2-6n+10), 5(n-3)(n-4)/2, (n-3)(n-4))."""
    if n < 6:
        raise InvalidParams(f"cyclic 5-polytope needs n >= 6, got {n}")
    return FVector((
        n,
        _exact_div(n * (n - 1), 2),
        2 * (n * n - 6 * n + 10),
        _exact_div(5 * (n - 3) * (n - 4), 2),
        (n - 3) * (n - 4),
    ))


def cyclic_f7(n: int) -> FVector:
    """f-vector of the cyclic 7-polytope on n vertices."""
    if n < 8:
        raise InvalidParams(f"cyclic 7-polytope needs n >= 8, got {n}")
    return FVector((
        n,
        _exact_div(n * (n - 1), 2),
        _exact_div(n * (n - 1) * (n - 2), 6),
        _exact_div(5 * (n - 4) * (n * n - 8 * n + 21), 6),
        _exact_div((n - 4) * (3 * n * n - 31 * n + 84), 2),
        _exact_div(7 * (n - 4) * (n - 5) * (n - 6), 6),
        _exact_div((n - 4) * (n - 5) * (n - 6), 3),
    ))


def connected_sum_f(fP, fQ) -> FVector:
    """f-vector of a connected sum: componentwise sum, one less at both ends.

    Only the dimensions are validated; whether the pair is actually gluable
    (simplicial with simple) is the caller's concern.
    """
    fP = fP if isinstance(fP, FVector) else FVector(fP)
    fQ = fQ if isinstance(fQ, FVector) else FVector(fQ)
    if fP.d != fQ.d:
        raise DimensionMismatch(f"cannot glue dimensions {fP.d} and {fQ.d}")
    d = fP.d
    if d < 3:
        raise InvalidParams(f"connected sums need dimension >= 3, got {d}")
    return FVector(tuple(
        p + q - (1 if i in (0, d - 1) else 0)
        for i, (p, q) in enumerate(zip(fP, fQ))))


def p7n(n: int) -> FVector:
    """f-vector of the connected sum of the cyclic 7-polytope on n vertices
    with its dual; palindromic, with

        f_0 = (n-3)(n^2-12n+41)/3         f_1 = (7n^3-102n^2+515n-840)/6
        f_2 = (5n^3-66n^2+313n-504)/3     f_3 = 5(n-4)(n^2-8n+21)/3
    """
    if n < 8:
        raise InvalidParams(f"the family starts at n = 8, got {n}")
    f0 = _exact_div((n - 3) * (n * n - 12 * n + 41), 3)
    f1 = _exact_div(7 * n**3 - 102 * n * n + 515 * n - 840, 6)
    f2 = _exact_div(5 * n**3 - 66 * n * n + 313 * n - 504, 3)
    f3 = _exact_div(5 * (n - 4) * (n * n - 8 * n + 21), 3)
    return FVector((f0, f1, f2, f3, f2, f1, f0))


@dataclass
class PropertyReport:
    """Verdicts for the four properties with a violating index per failure."""
    convex: bool
    log_convex: bool
    unimodal: bool
    barany: bool
    witnesses: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        letters = {"C": "convex", "L": "log_convex", "U": "unimodal", "B": "barany"}
        return {
            letter: {"holds": getattr(self, attr),
                     "witness": self.witnesses.get(attr)}
            for letter, attr in letters.items()
        }


def _unimodal(f: FVector) -> tuple[bool, int | None]:
    comps = f.components
    peak = comps.index(max(comps))
    for j in range(peak):
        if comps[j] > comps[j + 1]:
            return False, j + 1
    for j in range(peak, len(comps) - 1):
        if comps[j] < comps[j + 1]:
            return False, j
    return True, None


def properties(f) -> PropertyReport:
    """Check the four properties on a positive integer vector."""
    f = f if isinstance(f, FVector) else FVector(f)
    if f.d < 1 or any(c <= 0 for c in f):
        raise InvalidParams("need a nonempty vector of positive integers")
    comps = f.components
    witnesses: dict[str, int] = {}

    convex = True
    log_convex = True
    barany = True
    end_min = min(comps[0], comps[-1])
    for k in range(1, f.d - 1):
        if convex and 2 * comps[k] < comps[k - 1] + comps[k + 1]:
            convex, witnesses["convex"] = False, k
        if log_convex and comps[k] ** 2 < comps[k - 1] * comps[k + 1]:
            log_convex, witnesses["log_convex"] = False, k
        if barany and comps[k] < end_min:
            barany, witnesses["barany"] = False, k

    # no strict dip anywhere, and an ascent-then-descent shape around the
    # first maximum; the two agree except on plateaus, where the shape test
    # is the definition
    dip_free = all(
        not (comps[k] < comps[k - 1] and comps[k] < comps[k + 1])
        for k in range(1, f.d - 1))
    shaped, u_witness = _unimodal(f)
    unimodal = dip_free and shaped
    if not unimodal:
        witnesses["unimodal"] = u_witness

    report = PropertyReport(convex, log_convex, unimodal, barany, witnesses)
    assert (not convex or log_convex) and (not log_convex or unimodal) \
        and (not unimodal or barany), report
    return report


def neighborly_gap(f0: int) -> int:
    """f_0 + f_2 - 2 f_1 for a 2-neighbourly polytope with f0 vertices:
    f0 (f0-2) (f0-7) / 6, positive as soon as f0 >= 8."""
    if f0 < 1:
        raise InvalidParams(f"need at least one vertex, got {f0}")
    return _exact_div(f0 * (f0 - 2) * (f0 - 7), 6)


@dataclass
class RatioTriple:
    """The three consecutive log-convexity ratios of a 7-dimensional vector."""
    n: int
    r1: Fraction  # f1^2 / (f0 f2)
    r2: Fraction  # f2^2 / (f1 f3)
    r3: Fraction  # f3^2 / (f2 f4)


def r3_closed_form(n: int) -> Fraction:
    """Middle ratio of the connected-sum family in closed form:
    25 (n-4)^2 (n^2-8n+21)^2 / (5n^3 - 66n^2 + 313n - 504)^2."""
    num = 25 * (n - 4) ** 2 * (n * n - 8 * n + 21) ** 2
    den = (5 * n**3 - 66 * n * n + 313 * n - 504) ** 2
    return Fraction(num, den)


def logconv_scan(n_min: int, n_max: int) -> list[RatioTriple]:
    """Exact log-convexity ratios of the connected-sum family per n."""
    if not 8 <= n_min <= n_max:
        raise InvalidParams(f"need 8 <= n_min <= n_max, got {n_min}..{n_max}")
    out = []
    for n in range(n_min, n_max + 1):
        f = p7n(n)
        out.append(RatioTriple(
            n=n,
            r1=Fraction(f[1] ** 2, f[0] * f[2]),
            r2=Fraction(f[2] ** 2, f[1] * f[3]),
            r3=Fraction(f[3] ** 2, f[2] * f[4]),
        ))
    return out


def candidate_6d(ell: int) -> dict[tuple[int, ...], int]:
    """Sparse flag data of the 6-dimensional candidate family; every member
    satisfies the full battery while f_1 always exceeds f_2."""
    if ell < 0:
        raise InvalidParams(f"family parameter must be >= 0, got {ell}")
    return {
        (): 1,
        (0,): 22 + ell,
        (1,): 111 + 3 * ell,
        (2,): 110 + 2 * ell,
        (3,): 35 + 4 * ell,
        (4,): 21 + 6 * ell,
        (0, 2): 780 + 15 * ell,
        (0, 3): 1340 + 50 * ell,
        (0, 4): 1080 + 51 * ell,
        (1, 3): 2010 + 90 * ell,
        (1, 4): 2160 + 132 * ell,
        (2, 4): 1260 + 114 * ell,
        (0, 2, 4): 6480 + 396 * ell,
    }


def candidate_7d() -> dict[tuple[int, ...], int]:
    """Sparse flag data of the 7-dimensional candidate vector; it passes the
    battery yet its f_3 drops below both f_0 and f_6."""
    return {
        (): 1,
        (0,): 134,
        (1,): 469,
        (2,): 371,
        (3,): 70,
        (4,): 371,
        (5,): 469,
        (0, 2): 2814,
        (0, 3): 6580,
        (0, 4): 10360,
        (0, 5): 8484,
        (1, 3): 9870,
        (1, 4): 20720,
        (1, 5): 21210,
        (2, 4): 13790,
        (2, 5): 20720,
        (3, 5): 9870,
        (0, 2, 4): 62160,
        (0, 2, 5): 84840,
        (0, 3, 5): 84840,
        (1, 3, 5): 127260,
    }
