"""The groups G1 and G2 that contain BS(1,-1) in two ways.

G2 = <alpha, beta, gamma | alpha beta alpha^-1 = beta^-1, beta gamma beta^-1 = gamma^-1>
is handled through its normal form ``w * beta**n`` with ``w`` in the free group
F2 = <alpha, gamma>.  G1 = <alpha, beta | beta alpha^2 beta^-1 = alpha^-2,
alpha beta^2 alpha^-1 = beta^-2> is handled through a faithful representation
by affine isometries of R^3 with exact rational translations.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .words import (
    ALPHA,
    F2_ALPHABET,
    GAMMA,
    ReducedWord,
    f2_sign,
    parse_syllables,
    phi_power,
    sigma,
)

INT_MAX = 2**63 - 1

# raw G2 words use alpha=0, beta=1, gamma=2
G2_ALPHABET = ("a", "b", "g")
RAW_ALPHA, RAW_BETA, RAW_GAMMA = 0, 1, 2
_RAW_TO_F2 = {RAW_ALPHA: ALPHA, RAW_GAMMA: GAMMA}
_F2_TO_RAW = {ALPHA: RAW_ALPHA, GAMMA: RAW_GAMMA}

# the two defining relators of G2, each equal to the identity
G2_RELATORS = (
    ((RAW_ALPHA, 1), (RAW_BETA, 1), (RAW_ALPHA, -1), (RAW_BETA, 1)),
    ((RAW_BETA, 1), (RAW_GAMMA, 1), (RAW_BETA, -1), (RAW_GAMMA, 1)),
)


def _checked(x: int) -> int:
    if not -INT_MAX <= x <= INT_MAX:
        raise OverflowError(f"beta exponent {x} exceeds the 64-bit range")
    return x


@dataclass(frozen=True)
class G2Element:
    w: ReducedWord = ReducedWord(F2_ALPHABET, ())
    n: int = 0

    def __post_init__(self):
        if self.w.alphabet != F2_ALPHABET:
            raise ValueError(f"G2 word part must be over {F2_ALPHABET}")
        object.__setattr__(self, "n", _checked(int(self.n)))

    @classmethod
    def make(cls, w: Union[str, ReducedWord] = "e", n: int = 0) -> "G2Element":
        if isinstance(w, str):
            w = ReducedWord.parse(w, F2_ALPHABET)
        return cls(w, n)

    def __mul__(self, other: "G2Element") -> "G2Element":
        return g2_multiply(self, other)

    def inverse(self) -> "G2Element":
        w = phi_power(self.w.inverse(), self.n)
        sign = -1 if sigma(self.w) % 2 else 1
        return G2Element(w, -sign * self.n)

    def __pow__(self, k: int) -> "G2Element":
        base = self if k >= 0 else self.inverse()
        out = G2Element()
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.w.is_identity() and self.n == 0

    def raw_syllables(self) -> list[tuple[int, int]]:
        """The word ``w beta^n`` over the raw alphabet (a, b, g)."""
        out = [(_F2_TO_RAW[g], e) for g, e in self.w.syllables]
        if self.n:
            out.append((RAW_BETA, self.n))
        return out

    def to_json(self) -> dict:
        return {"w": str(self.w), "n": self.n}

    @classmethod
    def from_json(cls, data: Union[dict, str]) -> "G2Element":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise ValueError("G2Element JSON must be an object with fields 'w' and 'n'")
        if "w" not in data or not isinstance(data["w"], str):
            raise ValueError("G2Element field 'w' must be a word string")
        if "n" not in data or not isinstance(data["n"], int) or isinstance(data["n"], bool):
            raise ValueError("G2Element field 'n' must be an integer")
        try:
            w = ReducedWord.parse(data["w"], F2_ALPHABET)
        except ValueError as exc:
            raise ValueError(f"G2Element field 'w': {exc}") from None
        return cls(w, data["n"])

    def __str__(self) -> str:
        return f"({self.w}) b^{self.n}"


def g2_multiply(x: G2Element, y: G2Element) -> G2Element:
    # beta^n w' = Phi^n(w') beta^((-1)^sigma(w') n); sigma is taken on the second word
    sign = -1 if sigma(y.w) % 2 else 1
    return G2Element(x.w * phi_power(y.w, x.n), _checked(sign * x.n + y.n))


def _g2_letters(word) -> list[tuple[int, int]]:
    if isinstance(word, ReducedWord):
        if word.alphabet != G2_ALPHABET:
            raise ValueError(f"expected a word over {G2_ALPHABET}, got {word.alphabet}")
        syllables = word.syllables
    elif isinstance(word, str):
        syllables = parse_syllables(word, G2_ALPHABET)
    else:
        syllables = word
    letters = []
    for g, e in syllables:
        s = 1 if e > 0 else -1
        letters.extend([(g, s)] * abs(e))
    return letters


def g2_rewrite(word) -> G2Element:
    """Normal form of a word over (a, b, g) by pushing beta-letters right.

    Rules, applied one swap at a time:
    ``beta^e alpha^t -> alpha^t beta^-e`` and ``beta^e gamma^t -> gamma^-t beta^e``.
    """
    out: list[tuple[int, int]] = []
    tail = 0
    for g, s in _g2_letters(word):
        if g == RAW_BETA:
            out.append((g, s))
            continue
        for i in range(len(out) - 1, tail - 1, -1):
            beta_sign = out[i][1]
            if g == RAW_ALPHA:
                out[i] = (RAW_BETA, -beta_sign)
            else:
                s = -s
        out.insert(tail, (g, s))
        tail += 1
    w = ReducedWord(F2_ALPHABET, [(_RAW_TO_F2[g], s) for g, s in out[:tail]])
    return G2Element(w, sum(s for _, s in out[tail:]))


def g2_omega(word, flip: str = "alpha") -> ReducedWord:
    """The omega map: flip letters with an odd number of beta^+-1 to their left, drop beta.

    ``flip="alpha"`` follows the recipe literally (alpha-letters are flipped,
    gamma-letters untouched).  ``flip="gamma"`` flips gamma-letters instead,
    which is the variant compatible with the rewriting rules.
    """
    target = {"alpha": RAW_ALPHA, "gamma": RAW_GAMMA}[flip]
    parity = 0
    out = []
    for g, s in _g2_letters(word):
        if g == RAW_BETA:
            parity ^= 1
            continue
        if g == target and parity:
            s = -s
        out.append((_RAW_TO_F2[g], s))
    return ReducedWord(F2_ALPHABET, out)


def g2_sigma(x: G2Element) -> int:
    return sigma(x.w)


def g2_eta(x: G2Element) -> int:
    return x.n


@lru_cache(maxsize=None)
def _positive_sign(x: G2Element) -> int:
    s = g2_sigma(x)
    if s:
        return 1 if s > 0 else -1
    if x.n:
        return 1 if x.n > 0 else -1
    return f2_sign(x.w)


@dataclass(frozen=True)
class G2Order:
    """Left-invariant order on G2: sign by sigma, then eta, then the Magnus order on F2."""

    def sign(self, x: G2Element) -> int:
        return _positive_sign(x)

    def is_positive(self, x: G2Element) -> bool:
        return _positive_sign(x) > 0

    def compare(self, x: G2Element, y: G2Element) -> int:
        """-1, 0, +1 as ``x < y``, ``x == y``, ``x > y``."""
        return -_positive_sign(x.inverse() * y)


def g2_compare(x: G2Element, y: G2Element, order: G2Order | None = None) -> str:
    c = (order or G2Order()).compare(x, y)
    return {-1: "less", 0: "equal", 1: "greater"}[c]


def all_g2_elements(max_word: int, max_n: int) -> list[G2Element]:
    from .words import all_reduced_words

    return [G2Element(w, n) for w in all_reduced_words(max_word) for n in range(-max_n, max_n + 1)]


# -- G1 as affine isometries ------------------------------------------------

_SIGNS = {(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)}


@dataclass(frozen=True)
class AffineIso3:
    """``x -> diag(linear) x + translation`` with exact rational translation."""

    linear: tuple[int, int, int] = (1, 1, 1)
    translation: tuple[Fraction, Fraction, Fraction] = (Fraction(0), Fraction(0), Fraction(0))

    def __post_init__(self):
        linear = tuple(int(s) for s in self.linear)
        if linear not in _SIGNS:
            raise ValueError(f"linear part {linear} is not a determinant-one sign diagonal")
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "translation", tuple(Fraction(t) for t in self.translation))

    def __call__(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(s * Fraction(xi) + t for s, xi, t in zip(self.linear, x, self.translation))

    def __matmul__(self, other: "AffineIso3") -> "AffineIso3":
        return affine_compose(self, other)

    def inverse(self) -> "AffineIso3":
        return AffineIso3(self.linear, tuple(-s * t for s, t in zip(self.linear, self.translation)))

    def __pow__(self, n: int) -> "AffineIso3":
        base = self if n >= 0 else self.inverse()
        out = AffineIso3()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def is_identity(self) -> bool:
        return self.linear == (1, 1, 1) and not any(self.translation)

    def is_translation(self) -> bool:
        return self.linear == (1, 1, 1)

    def to_json(self) -> dict:
        def frac(t: Fraction) -> str:
            return str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"

        return {
            "linear": "[" + ",".join("+" if s > 0 else "-" for s in self.linear) + "]",
            "t": [frac(t) for t in self.translation],
        }

    @classmethod
    def from_json(cls, data: Union[dict, str]) -> "AffineIso3":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise ValueError("AffineIso3 JSON must be an object with fields 'linear' and 't'")
        lin = data.get("linear")
        if not isinstance(lin, str) or not lin.startswith("[") or not lin.endswith("]"):
            raise ValueError("AffineIso3 field 'linear' must look like \"[+,-,-]\"")
        signs = lin[1:-1].split(",")
        if len(signs) != 3 or any(s.strip() not in "+-" or not s.strip() for s in signs):
            raise ValueError("AffineIso3 field 'linear' must hold three signs")
        t = data.get("t")
        if not isinstance(t, list) or len(t) != 3:
            raise ValueError("AffineIso3 field 't' must be a list of three rationals")
        try:
            trans = tuple(Fraction(x) for x in t)
        except (ValueError, TypeError, ZeroDivisionError):
            raise ValueError(f"AffineIso3 field 't' holds a malformed rational: {t!r}") from None
        return cls(tuple(1 if s.strip() == "+" else -1 for s in signs), trans)


def affine_compose(f: AffineIso3, g: AffineIso3) -> AffineIso3:
    """``f o g``: apply g first."""
    linear = tuple(a * b for a, b in zip(f.linear, g.linear))
    translation = tuple(a * t + s for a, t, s in zip(f.linear, g.translation, f.translation))
    return AffineIso3(linear, translation)


_HALF = Fraction(1, 2)
G1_ALPHABET = ("a", "b")


def g1_generator(which: str) -> AffineIso3:
    if which == "alpha":
        return AffineIso3((1, -1, -1), (_HALF, 0, 0))
    if which == "beta":
        return AffineIso3((-1, 1, -1), (0, _HALF, _HALF))
    raise ValueError(f"unknown G1 generator {which!r}")


def g1_eval(word) -> AffineIso3:
    """Evaluate a word over (a, b) = (alpha, beta) in the affine representation."""
    if isinstance(word, str):
        syllables = parse_syllables(word, G1_ALPHABET)
    elif isinstance(word, ReducedWord):
        syllables = word.syllables
    else:
        syllables = word
    gens = (g1_generator("alpha"), g1_generator("beta"))
    out = AffineIso3()
    for g, e in syllables:
        out = out @ gens[g] ** e
    return out


def g1_element_order(f: AffineIso3, max_check: int = 6) -> float:
    """Order of ``f``: an integer if ``f**m`` is the identity for some m <= 6, else ``inf``.

    Torsion in this linear-part group can only have order dividing 4.
    """
    power = AffineIso3()
    for m in range(1, max_check + 1):
        power = power @ f
        if power.is_identity():
            return m
    return math.inf


def g1_ball(radius: int, generators: Iterable[AffineIso3] | None = None) -> dict[AffineIso3, int]:
    """Elements within word length ``radius`` of the identity, with their word length."""
    if generators is None:
        a, b = g1_generator("alpha"), g1_generator("beta")
        generators = (a, a.inverse(), b, b.inverse())
    generators = list(generators)
    dist = {AffineIso3(): 0}
    frontier = [AffineIso3()]
    for step in range(1, radius + 1):
        nxt = []
        for f in frontier:
            for g in generators:
                h = f @ g
                if h not in dist:
                    dist[h] = step
                    nxt.append(h)
        frontier = nxt
    return dist


def g1_relations() -> dict[str, bool]:
    a, b = g1_generator("alpha"), g1_generator("beta")
    return {
        "beta alpha^2 beta^-1 = alpha^-2": b @ a**2 @ b.inverse() == a**-2,
        "alpha beta^2 alpha^-1 = beta^-2": a @ b**2 @ a.inverse() == b**-2,
    }
