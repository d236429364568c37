"""The monoid of alternating operator words over {Tl, Tr}.

Words are stored as explicit alternating letter sequences; the empty word is
the identity.  Multiplication concatenates, dropping the first letter of the
right factor when it repeats the last letter of the left factor.  The order
makes longer words smaller.
"""

from __future__ import annotations

from dataclasses import dataclass

TL = "Tl"
TR = "Tr"
_LETTERS = (TL, TR)


@dataclass(frozen=True)
class ThetaWord:
    letters: tuple = ()

    def __post_init__(self):
        for a in self.letters:
            if a not in _LETTERS:
                raise ValueError(f"bad letter {a!r}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == b:
                raise ValueError("letters must alternate")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(self.letters)


EMPTY = ThetaWord()


def word(text: str) -> ThetaWord:
    """Parse a concatenation like "TlTrTl"; the empty string is the empty word."""
    if text in ("", "1"):
        return EMPTY
    letters = []
    i = 0
    while i < len(text):
        piece = text[i : i + 2]
        if piece not in _LETTERS:
            raise ValueError(f"cannot parse {text!r} at position {i}")
        letters.append(piece)
        i += 2
    return ThetaWord(tuple(letters))


def multiply(s: ThetaWord, t: ThetaWord) -> ThetaWord:
    if not s.letters:
        return t
    if not t.letters:
        return s
    if s.letters[-1] == t.letters[0]:
        return ThetaWord(s.letters + t.letters[1:])
    return ThetaWord(s.letters + t.letters)


def leq(s: ThetaWord, t: ThetaWord) -> bool:
    """s <= t iff |s| > |t| or s = t (longer words are smaller)."""
    return len(s) > len(t) or s == t


def enumerate_words(n: int) -> frozenset:
    """All alternating words of length n: one for n = 0, otherwise two."""
    if n < 0:
        raise ValueError("length must be >= 0")
    if n == 0:
        return frozenset((EMPTY,))
    out = []
    for head in _LETTERS:
        letters = tuple(_LETTERS[(_LETTERS.index(head) + i) % 2] for i in range(n))
        out.append(ThetaWord(letters))
    return frozenset(out)


def words_up_to(n: int) -> list:
    """All words of length <= n, sorted by (length, text)."""
    out: list = []
    for k in range(n + 1):
        out.extend(sorted(enumerate_words(k), key=str))
    return out


def dual_word(s: ThetaWord) -> ThetaWord:
    return ThetaWord(tuple(TR if a == TL else TL for a in s.letters))


_ALPHABETS = {
    (TL, TR): {TL: TL, TR: TR},
    ("Kl", "Kr"): {TL: "Kl", TR: "Kr"},
}


def substitute(s: ThetaWord, alphabet: tuple = ("Kl", "Kr")) -> tuple:
    """Letterwise image of the word in the chosen operator alphabet."""
    table = _ALPHABETS[alphabet]
    return tuple(table[a] for a in s.letters)
