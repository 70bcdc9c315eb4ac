"""Freely reduced words, the maps sigma and Phi on F2, and truncated Magnus series.

Words are stored run-length compressed as ``(generator_index, exponent)``
syllables over a named alphabet.  The free group ``F2 = <alpha, gamma>`` uses
the alphabet ``("a", "g")``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

F2_ALPHABET = ("a", "g")
ALPHA, GAMMA = 0, 1

_SUPERSCRIPTS = str.maketrans("⁻⁰¹²³⁴⁵⁶⁷⁸⁹", "-0123456789")
_GREEK = str.maketrans({"α": "a", "β": "b", "γ": "g"})
_TOKEN = re.compile(r"([A-Za-z])(?:\^\(?(-?\d+)\)?|([⁻⁰¹²³⁴⁵⁶⁷⁸⁹]+))?")
_SKIP = re.compile(r"[\s*·.]+")


def _reduce(alphabet_size: int, syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for gen, exp in syllables:
        gen, exp = int(gen), int(exp)
        if not 0 <= gen < alphabet_size:
            raise ValueError(f"generator index {gen} outside alphabet of size {alphabet_size}")
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class ReducedWord:
    alphabet: tuple[str, ...]
    syllables: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "syllables", _reduce(len(self.alphabet), self.syllables))

    @classmethod
    def identity(cls, alphabet: Sequence[str] = F2_ALPHABET) -> "ReducedWord":
        return cls(tuple(alphabet), ())

    @classmethod
    def generator(cls, alphabet: Sequence[str], name: str, exp: int = 1) -> "ReducedWord":
        return cls(tuple(alphabet), ((tuple(alphabet).index(name), exp),))

    @classmethod
    def parse(cls, text: str, alphabet: Sequence[str] = F2_ALPHABET) -> "ReducedWord":
        """Parse strings like ``"a^2 g^-1"``, ``"aba^-1b"`` or ``"e"``.

        An upper-case letter stands for the inverse of the lower-case generator;
        unicode superscript exponents (``a⁻¹``) and the Greek names α, β, γ are
        accepted as well.
        """
        return cls(tuple(alphabet), parse_syllables(text, alphabet))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    @property
    def syllable_count(self) -> int:
        return len(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> list[tuple[int, int]]:
        """Expand into single letters ``(generator, +-1)``."""
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def _check(self, other: "ReducedWord") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError(f"alphabet mismatch: {self.alphabet} vs {other.alphabet}")

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        self._check(other)
        return ReducedWord(self.alphabet, self.syllables + other.syllables)

    def inverse(self) -> "ReducedWord":
        return ReducedWord(self.alphabet, tuple((g, -e) for g, e in reversed(self.syllables)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "ReducedWord":
        base = self if n >= 0 else self.inverse()
        out = ReducedWord.identity(self.alphabet)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __str__(self) -> str:
        if not self.syllables:
            return "e"
        parts = []
        for g, e in self.syllables:
            name = self.alphabet[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ReducedWord({str(self)!r})"


def parse_syllables(text: str, alphabet: Sequence[str]) -> list[tuple[int, int]]:
    """Parse a word string into raw (unreduced) syllables."""
    alphabet = tuple(alphabet)
    s = text.translate(_GREEK).strip()
    if s in ("", "e", "1"):
        return []
    out = []
    pos = 0
    while pos < len(s):
        skip = _SKIP.match(s, pos)
        if skip:
            pos = skip.end()
            continue
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        letter, exp_ascii, exp_sup = m.groups()
        sign = 1
        if letter not in alphabet and letter.lower() in alphabet and letter.isupper():
            letter, sign = letter.lower(), -1
        if letter not in alphabet:
            raise ValueError(f"unknown generator {letter!r} in {text!r}; alphabet is {alphabet}")
        if exp_ascii is not None:
            exp = int(exp_ascii)
        elif exp_sup is not None:
            exp = int(exp_sup.translate(_SUPERSCRIPTS))
        else:
            exp = 1
        out.append((alphabet.index(letter), sign * exp))
        pos = m.end()
    return out


def concat_reduce(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    return u * v


def sigma(w: ReducedWord) -> int:
    """Sum of the exponents of alpha (generator 0) in ``w``."""
    return sum(e for g, e in w.syllables if g == ALPHA)


def phi_power(w: ReducedWord, n: int) -> ReducedWord:
    """Apply ``Phi**n`` where Phi fixes alpha and inverts gamma."""
    if n % 2 == 0:
        return w
    return ReducedWord(w.alphabet, tuple((g, -e if g == GAMMA else e) for g, e in w.syllables))


def all_reduced_words(max_length: int, alphabet: Sequence[str] = F2_ALPHABET) -> list[ReducedWord]:
    """Every freely reduced word of letter length at most ``max_length``."""
    alphabet = tuple(alphabet)
    letters = [(g, s) for g in range(len(alphabet)) for s in (1, -1)]
    layer = [()]
    out = [ReducedWord(alphabet, ())]
    for _ in range(max_length):
        nxt = []
        for word in layer:
            for g, s in letters:
                if word and word[-1] == (g, -s):
                    continue
                nxt.append(word + ((g, s),))
        out.extend(ReducedWord(alphabet, w) for w in nxt)
        layer = nxt
    return out


# -- truncated Magnus expansion --------------------------------------------

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer power series in two non-commuting variables X (0) and Y (1)."""

    max_degree: int
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(m): int(c) for m, c in dict(self.coefficients).items()
                 if c != 0 and len(m) <= self.max_degree}
        object.__setattr__(self, "coefficients", clean)

    @classmethod
    def one(cls, max_degree: int) -> "TruncatedSeries":
        return cls(max_degree, {(): 1})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        d = min(self.max_degree, other.max_degree)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.coefficients.items():
            if len(m1) > d:
                continue
            for m2, c2 in other.coefficients.items():
                if len(m1) + len(m2) <= d:
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return TruncatedSeries(d, out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.max_degree == other.max_degree and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.max_degree, tuple(sorted(self.coefficients.items()))))

    def is_one(self) -> bool:
        return self.coefficients == {(): 1}

    def leading_term(self) -> tuple[Monomial, int] | None:
        """First nonzero coefficient of ``self - 1`` by degree, then lexicographically."""
        terms = [(m, c) for m, c in self.coefficients.items() if m != ()]
        c0 = self.coefficients.get((), 0)
        if c0 != 1:
            terms.append(((), c0 - 1))
        if not terms:
            return None
        return min(terms, key=lambda mc: (len(mc[0]), mc[0]))


def _letter_series(gen: int, exp_sign: int, d: int) -> TruncatedSeries:
    if exp_sign > 0:
        return TruncatedSeries(d, {(): 1, (gen,): 1})
    # (1 + X)^-1 = sum (-X)^k
    return TruncatedSeries(d, {(gen,) * k: (-1) ** k for k in range(d + 1)})


def magnus_expand(w: ReducedWord, max_degree: int) -> TruncatedSeries:
    """Magnus expansion alpha -> 1 + X, gamma -> 1 + Y, truncated above ``max_degree``."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    out = TruncatedSeries.one(max_degree)
    cache: dict[tuple[int, int], TruncatedSeries] = {}
    for g, s in w.letters():
        if (g, s) not in cache:
            cache[(g, s)] = _letter_series(g, s, max_degree)
        out = out * cache[(g, s)]
    return out


def f2_sign(w: ReducedWord, degree: int | None = None) -> int:
    """Sign of ``w`` in the Magnus order on F2: +1, -1, or 0 for the identity.

    A reduced word with k syllables has a nonzero Magnus coefficient in degree
    k, so truncating at the word length always exposes the leading term.
    """
    if w.is_identity():
        return 0
    if degree is None:
        degree = len(w)
    lead = magnus_expand(w, max(1, degree)).leading_term()
    if lead is None:
        raise ArithmeticError(f"Magnus expansion of {w} truncated to 1")
    return 1 if lead[1] > 0 else -1


def f2_compare(u: ReducedWord, v: ReducedWord) -> int:
    """-1, 0, +1 as ``u < v``, ``u == v``, ``u > v`` in the left-invariant Magnus order."""
    return -f2_sign(u.inverse() * v, max(1, len(u) + len(v)))
