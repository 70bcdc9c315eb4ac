"""Normal-form arithmetic in BS(1,-1) = <a, b | a b a^-1 = b^-1>.

Every element is ``a**p * b**q`` for a unique integer pair.  The product law is
stored in closed form; :func:`bs_reduce` is an independent rewriting path that
pushes b-letters to the right one swap at a time.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Union

from .words import ReducedWord, parse_syllables

BS_ALPHABET = ("a", "b")
A, B = 0, 1

INT_MAX = 2**63 - 1

# a b a^-1 b, equal to the identity in BS(1,-1)
RELATOR = ((A, 1), (B, 1), (A, -1), (B, 1))


def _checked(x: int) -> int:
    if not -INT_MAX <= x <= INT_MAX:
        raise OverflowError(f"exponent {x} exceeds the 64-bit range")
    return x


@dataclass(frozen=True, order=True)
class BsElement:
    p: int = 0
    q: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p", _checked(int(self.p)))
        object.__setattr__(self, "q", _checked(int(self.q)))

    def __mul__(self, other: "BsElement") -> "BsElement":
        return bs_multiply(self, other)

    def inverse(self) -> "BsElement":
        return bs_inverse(self)

    def __pow__(self, n: int) -> "BsElement":
        base = self if n >= 0 else self.inverse()
        out, n = BsElement(), abs(n)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_identity(self) -> bool:
        return self.p == 0 and self.q == 0

    def to_word(self) -> ReducedWord:
        return ReducedWord(BS_ALPHABET, ((A, self.p), (B, self.q)))

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, data: Union[dict, str]) -> "BsElement":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise ValueError("BsElement JSON must be an object with fields 'p' and 'q'")
        for key in ("p", "q"):
            if key not in data:
                raise ValueError(f"BsElement JSON is missing field {key!r}")
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise ValueError(f"BsElement field {key!r} must be an integer, got {data[key]!r}")
        return cls(data["p"], data["q"])

    def __str__(self) -> str:
        return f"a^{self.p} b^{self.q}"


def bs_multiply(x: BsElement, y: BsElement) -> BsElement:
    # b^q a^p' = a^p' b^((-1)^p' q)
    sign = -1 if y.p % 2 else 1
    return BsElement(_checked(x.p + y.p), _checked(sign * x.q + y.q))


def bs_inverse(x: BsElement) -> BsElement:
    sign = -1 if x.p % 2 else 1
    return BsElement(-x.p, -sign * x.q)


WordLike = Union[ReducedWord, str, Iterable[tuple[int, int]]]


def _raw_letters(word: WordLike) -> list[tuple[int, int]]:
    if isinstance(word, ReducedWord):
        if word.alphabet != BS_ALPHABET:
            raise ValueError(f"expected a word over {BS_ALPHABET}, got alphabet {word.alphabet}")
        syllables = word.syllables
    elif isinstance(word, str):
        syllables = parse_syllables(word, BS_ALPHABET)
    else:
        syllables = word
    letters = []
    for g, e in syllables:
        s = 1 if e > 0 else -1
        letters.extend([(g, s)] * abs(e))
    return letters


def rewrite_letters(letters: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Push every b-letter to the right using ``b^s a^t -> a^t b^-s``.

    Returns the rewritten letter sequence (all a-letters first), not yet freely
    reduced.
    """
    out: list[tuple[int, int]] = []
    tail = 0  # index where the trailing block of b-letters starts
    for g, s in letters:
        if g == B:
            out.append((B, s))
            continue
        # swap the a-letter leftwards past each b of the trailing block
        for i in range(tail, len(out)):
            out[i] = (B, -out[i][1])
        out.insert(tail, (A, s))
        tail += 1
    return out


def bs_reduce(word: WordLike) -> BsElement:
    """Normal form of a (not necessarily reduced) word over {a, b} by rewriting."""
    rewritten = rewrite_letters(_raw_letters(word))
    p = q = 0
    for g, s in rewritten:
        if g == A:
            p += s
        else:
            q += s
    return BsElement(p, q)


def bs_subgroup_membership(x: BsElement, subgroup: str) -> bool:
    """Membership in ``<a^2, b>`` (``"even_a_and_b"``) or ``<a, b^2>`` (``"a_and_even_b"``)."""
    if subgroup == "even_a_and_b":
        return x.p % 2 == 0
    if subgroup == "a_and_even_b":
        return x.q % 2 == 0
    raise ValueError(f"unknown subgroup {subgroup!r}")
