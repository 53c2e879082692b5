"""ab-index and cd-index over an exact coefficient ring, plus the toric
g-recursion on face lattices.

The ab-index collects the flag quantities k_S = sum_{T subset S} (-1)^{|S\\T|} f_T
as coefficients of words in the noncommuting letters a, b (letter b at the
positions in S).  For Eulerian flag data the polynomial rewrites uniquely in
c = a + b and d = ab + ba; the rewrite is found by solving one exact linear
system over all cd-words of the right degree, so inconsistency is detected
rather than assumed away.  Coefficients may be rationals or flag forms; the
same solver serves the numeric and the symbolic extraction.
"""

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DegreeMismatch, InvalidParams, MissingEntry, NotEulerian
from .flagalg import FlagVector
from .forms import FlagForm
from .rational import normalize, rat_from_str, rat_to_str


def cd_degree(word: str) -> int:
    """Degree of a cd-word: c counts 1, d counts 2."""
    if any(ch not in "cd" for ch in word):
        raise InvalidParams(f"not a cd-word: {word!r}")
    return sum(1 if ch == "c" else 2 for ch in word)


def _rev_key(word: str) -> tuple[int, ...]:
    return tuple(1 if ch == "d" else 0 for ch in reversed(word))


@lru_cache(maxsize=None)
def cd_words(degree: int) -> tuple[str, ...]:
    """All cd-words of a degree, reverse-lexicographic with c < d.

    There are Fibonacci-many, matching the sparse basis size.
    """
    if degree < 0:
        raise InvalidParams(f"degree must be >= 0, got {degree}")
    # grow degree one at a time: append a c, or upgrade a trailing c to a d
    words = [""]
    for _ in range(degree):
        words = [w + "c" for w in words] + [
            w[:-1] + "d" for w in words if w.endswith("c")]
    return tuple(sorted(words, key=_rev_key))


def ab_words(degree: int) -> tuple[str, ...]:
    return tuple("".join(w) for w in itertools.product("ab", repeat=degree))


def word_for_set(S, degree: int) -> str:
    return "".join("b" if i in S else "a" for i in range(degree))


class AbPolynomial:
    """Homogeneous polynomial in noncommuting a, b with exact coefficients."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict):
        self.degree = degree
        clean = {}
        for word, coeff in terms.items():
            if len(word) != degree or any(ch not in "ab" for ch in word):
                raise InvalidParams(f"bad ab-word {word!r} for degree {degree}")
            if not _ring_zero(coeff):
                clean[word] = coeff
        self.terms = clean

    def coefficient(self, word: str):
        return self.terms.get(word, 0)

    def __eq__(self, other):
        if not isinstance(other, AbPolynomial):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self):
        return f"AbPolynomial(degree={self.degree}, terms={len(self.terms)})"


class CdPolynomial:
    """Homogeneous cd-polynomial; prints and parses in a canonical form."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict):
        self.degree = degree
        clean = {}
        for word, coeff in terms.items():
            if cd_degree(word) != degree:
                raise DegreeMismatch(f"{word!r} has degree {cd_degree(word)}, not {degree}")
            if not _ring_zero(coeff):
                clean[word] = coeff
        self.terms = clean

    def coefficient(self, word: str):
        if cd_degree(word) != self.degree:
            raise DegreeMismatch(
                f"{word!r} has degree {cd_degree(word)}, not {self.degree}")
        return self.terms.get(word, 0)

    def ordered_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _rev_key(kv[0]))

    def canonical_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, coeff in self.ordered_terms():
            coeff = normalize(coeff)
            body = _pretty_word(word) or "1"
            if abs(coeff) == 1 and word:
                text = body
            else:
                text = f"{rat_to_str(abs(coeff))}{body if word else ''}" or rat_to_str(abs(coeff))
            parts.append(("- " if coeff < 0 else "+ ") + text)
        head = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
        return " ".join([head] + parts[1:])

    @classmethod
    def from_str(cls, text: str) -> "CdPolynomial":
        terms: dict[str, object] = {}
        degree = None
        for sign, coeff_text, word_text in _parse_terms(text):
            word = _expand_pretty(word_text)
            coeff = rat_from_str(coeff_text) if coeff_text else 1
            coeff = -coeff if sign == "-" else coeff
            if degree is None:
                degree = cd_degree(word)
            elif cd_degree(word) != degree:
                raise InvalidParams(f"mixed degrees in {text!r}")
            terms[word] = terms.get(word, 0) + coeff
        if degree is None:
            raise InvalidParams(f"cannot parse cd-polynomial {text!r}")
        return cls(degree, terms)

    def __eq__(self, other):
        if not isinstance(other, CdPolynomial):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self):
        return f"CdPolynomial({self.canonical_str()!r})"


def _pretty_word(word: str) -> str:
    out = []
    for letter, run in itertools.groupby(word):
        count = len(list(run))
        out.append(letter if count == 1 else f"{letter}^{count}")
    return "".join(out)


def _expand_pretty(text: str) -> str:
    if not re.fullmatch(r"(?:[cd](?:\^?\d+)?\s*)*", text):
        raise InvalidParams(f"cannot parse cd-word {text!r}")
    out = []
    for m in re.finditer(r"([cd])(?:\^?(\d+))?", text):
        out.append(m.group(1) * int(m.group(2) or 1))
    return "".join(out)


def _parse_terms(text: str):
    text = text.strip()
    if text == "0":
        return
    # normalize so each term starts with an explicit sign
    text = "+ " + text if not text.startswith(("+", "-")) else text
    for chunk in re.finditer(r"([+-])\s*([^+-]+)", text):
        sign, body = chunk.group(1), chunk.group(2).strip()
        m = re.fullmatch(r"(\d+(?:/\d+)?)?\s*([cd^\d ]*)", body)
        if not m:
            raise InvalidParams(f"cannot parse term {body!r}")
        coeff_text, word_text = m.group(1), (m.group(2) or "").strip()
        if not coeff_text and not word_text:
            raise InvalidParams(f"cannot parse term {body!r}")
        if word_text in ("1", ""):
            word_text = ""
        yield sign, coeff_text, word_text


# ----------------------------------------------------------------------
# ring plumbing: coefficients are Fractions/ints or FlagForms


def _ring_zero(x) -> bool:
    if isinstance(x, FlagForm):
        return x.is_zero()
    return x == 0


def _ring_sub(x, y):
    return x - y


def _ring_scale(x, q: Fraction):
    if isinstance(x, FlagForm):
        return x * q
    return normalize(Fraction(x) * q)


# ----------------------------------------------------------------------
# ab-index and the cd rewrite


def ab_index(v: FlagVector) -> AbPolynomial:
    """Flag k-polynomial of a complete flag vector, by inclusion-exclusion:
    the word with letter b exactly at the positions of S carries
    k_S = sum over T inside S of (-1)^{|S|-|T|} f_T."""
    if not v.complete:
        raise MissingEntry("the ab-index needs all flag entries")
    d = v.d
    terms = {}
    for size in range(0, d + 1):
        for S in itertools.combinations(range(d), size):
            k = 0
            for tsize in range(0, size + 1):
                for T in itertools.combinations(S, tsize):
                    k += (-1) ** (size - tsize) * v.get(T)
            terms[word_for_set(S, d)] = normalize(k)
    return AbPolynomial(d, terms)


@lru_cache(maxsize=None)
def symbolic_ab_index(d: int) -> AbPolynomial:
    """ab-index with flag-form coefficients, every k_S reduced to the sparse
    basis so that the cd rewrite holds exactly in those coordinates."""
    terms = {}
    for size in range(0, d + 1):
        for S in itertools.combinations(range(d), size):
            coeffs: dict[tuple[int, ...], int] = {}
            for tsize in range(0, size + 1):
                for T in itertools.combinations(S, tsize):
                    coeffs[T] = coeffs.get(T, 0) + (-1) ** (size - tsize)
            terms[word_for_set(S, d)] = FlagForm(d, coeffs).reduced()
    return AbPolynomial(d, terms)


def _expand_cd(word: str) -> dict[str, int]:
    expansion = {"": 1}
    for ch in word:
        nxt: dict[str, int] = {}
        pieces = ("a", "b") if ch == "c" else ("ab", "ba")
        for w, c in expansion.items():
            for piece in pieces:
                nxt[w + piece] = nxt.get(w + piece, 0) + c
        expansion = nxt
    return expansion


def ab_to_cd(p: AbPolynomial) -> CdPolynomial:
    """Rewrite an ab-polynomial in c = a+b, d = ab+ba by exact elimination.

    The cd-expansions give an integer system with one equation per ab-word;
    a leftover inconsistent equation means the flag data was not Eulerian.
    """
    degree = p.degree
    columns = cd_words(degree)
    col_index = {u: j for j, u in enumerate(columns)}
    rows = []
    for w in ab_words(degree):
        rows.append([Fraction(0)] * len(columns))
    word_row = {w: i for i, w in enumerate(ab_words(degree))}
    for j, u in enumerate(columns):
        for w, c in _expand_cd(u).items():
            rows[word_row[w]][j] += c
    rhs = [p.coefficient(w) for w in ab_words(degree)]

    pivot_of: dict[int, int] = {}
    used: set[int] = set()
    for j in range(len(columns)):
        pivot = next((i for i in range(len(rows))
                      if i not in used and rows[i][j] != 0), None)
        if pivot is None:
            raise NotEulerian("cd-expansions failed to span; degenerate system")
        used.add(pivot)
        pivot_of[j] = pivot
        scale = rows[pivot][j]
        rows[pivot] = [x / scale for x in rows[pivot]]
        rhs[pivot] = _ring_scale(rhs[pivot], Fraction(1, 1) / scale)
        for i in range(len(rows)):
            if i != pivot and rows[i][j] != 0:
                factor = rows[i][j]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[pivot])]
                rhs[i] = _ring_sub(rhs[i], _ring_scale(rhs[pivot], factor))
    for i in range(len(rows)):
        if i not in used and not _ring_zero(rhs[i]):
            raise NotEulerian("flag data violates the Eulerian relations")
    terms = {u: rhs[pivot_of[j]] for j, u in enumerate(columns)}
    return CdPolynomial(degree, terms)


def _as_flag_vector(source) -> FlagVector:
    if isinstance(source, FlagVector):
        return source
    return source.flag_vector()


def cd_index(source) -> CdPolynomial:
    """cd-index of a lattice or complete flag vector."""
    return ab_to_cd(ab_index(_as_flag_vector(source)))


def cd_coefficient(source, word: str):
    """Coefficient of one cd-monomial in the cd-index."""
    v = _as_flag_vector(source)
    if cd_degree(word) != v.d:
        raise DegreeMismatch(
            f"{word!r} has degree {cd_degree(word)}, need {v.d}")
    return normalize(cd_index(v).coefficient(word))


@lru_cache(maxsize=None)
def _symbolic_cd_index(d: int) -> CdPolynomial:
    return ab_to_cd(symbolic_ab_index(d))


def cd_word_to_flag_form(word: str, d: int) -> FlagForm:
    """The flag form whose value on every Eulerian flag vector equals the
    cd-coefficient of the word; returned reduced to the sparse basis."""
    if cd_degree(word) != d:
        raise DegreeMismatch(f"{word!r} has degree {cd_degree(word)}, need {d}")
    form = _symbolic_cd_index(d).coefficient(word)
    if isinstance(form, FlagForm):
        return form
    return FlagForm(d, {(): form})


def stanley_nonneg_check(lattice) -> bool:
    """All cd-index coefficients nonnegative; a failure here means a bug."""
    return all(c >= 0 for c in cd_index(lattice).terms.values())


# ----------------------------------------------------------------------
# toric h/g recursion


class ToricGVector:
    """Entries g_0, ..., g_{floor(d/2)} of the toric g-vector."""

    __slots__ = ("d", "entries")

    def __init__(self, d: int, entries):
        self.d = d
        self.entries = tuple(normalize(e) for e in entries)
        if len(self.entries) != d // 2 + 1:
            raise InvalidParams(
                f"expected {d // 2 + 1} entries for d={d}, got {len(self.entries)}")

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if isinstance(other, ToricGVector):
            return (self.d, self.entries) == (other.d, other.entries)
        return self.entries == tuple(other)

    def __repr__(self):
        return f"ToricGVector(d={self.d}, {self.entries})"


def _poly_add_scaled(acc: list, poly, shift_pow: list):
    # acc += poly * shift_pow, all ascending coefficient lists
    for i, a in enumerate(poly):
        if a == 0:
            continue
        for j, b in enumerate(shift_pow):
            acc[i + j] += a * b


@lru_cache(maxsize=None)
def _x_minus_one_pow(m: int) -> tuple[int, ...]:
    return tuple((-1) ** (m - i) * comb(m, i) for i in range(m + 1))


def _face_g(lattice, rank: int, idx: int) -> tuple[int, ...]:
    """g-polynomial (ascending coefficients) of one face, memoized per face."""
    if rank == -1:
        return (1,)
    memo = lattice._toric_g_memo
    key = (rank, idx)
    if key in memo:
        return memo[key]
    face = lattice.faces(rank)[idx]
    if len(face) == rank + 1:
        # a k-face with k+1 vertices is a simplex: g is constant 1
        memo[key] = (1,)
        return memo[key]
    h = _face_h(lattice, rank, idx)
    g = _g_from_h(h, rank)
    memo[key] = g
    return g


def _face_h(lattice, rank: int, idx: int) -> tuple[int, ...]:
    """h-polynomial of the sub-polytope below one face, as the sum of
    g(subface) * (x-1)^(rank - 1 - subrank) over all proper subfaces."""
    acc = [0] * (rank + 1)
    _poly_add_scaled(acc, (1,), list(_x_minus_one_pow(rank)))  # empty face
    for a in range(0, rank):
        shift = list(_x_minus_one_pow(rank - 1 - a))
        if rank == lattice.d:
            members = range(len(lattice.faces(a)))
        else:
            members = lattice._faces_below(a, rank)[idx]
        for i in members:
            _poly_add_scaled(acc, _face_g(lattice, a, i), shift)
    return tuple(acc)


def _g_from_h(h: tuple[int, ...], dim: int) -> tuple[int, ...]:
    # h list is ascending in x; h_i counts from the top power: h_i = h[dim - i]
    hv = [h[dim - i] for i in range(dim + 1)]
    g = []
    prev = 0
    for i in range(dim // 2 + 1):
        g.append(hv[i] - prev)
        prev = hv[i]
    while len(g) > 1 and g[-1] == 0:
        g.pop()
    return tuple(g)


def toric_h(lattice) -> tuple[int, ...]:
    """Toric h-vector (h_0, ..., h_d); palindromic on Eulerian lattices."""
    d = lattice.d
    h = _face_h(lattice, d, 0)
    return tuple(h[d - i] for i in range(d + 1))


def toric_g(lattice) -> ToricGVector:
    """Toric g-vector by the h/g recursion over the face lattice."""
    d = lattice.d
    hv = toric_h(lattice)
    entries = []
    prev = 0
    for i in range(d // 2 + 1):
        entries.append(hv[i] - prev)
        prev = hv[i]
    return ToricGVector(d, entries)
