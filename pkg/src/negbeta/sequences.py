"""Lazy integer digit streams a_1 a_2 ... and the morphisms that generate them."""
from __future__ import annotations

import re
import threading
from itertools import count, islice
from typing import Callable, Iterable, Iterator, Mapping, Sequence


class SequenceFormatError(ValueError):
    pass


class Morphism:
    """A substitution on digit letters, e.g. ``3 -> 30032, 2 -> 2, 0 -> 00``."""

    def __init__(self, rules: Mapping[int, Sequence[int]]):
        self.rules = {int(k): tuple(int(d) for d in v) for k, v in rules.items()}
        for k, image in self.rules.items():
            if not image:
                raise SequenceFormatError(f"empty image for letter {k}")
            for d in image:
                if d not in self.rules:
                    raise SequenceFormatError(f"letter {d} in image of {k} has no rule")
        self._lengths: dict[tuple[int, int], int] = {}

    def __call__(self, word: Iterable[int]) -> tuple[int, ...]:
        out: list[int] = []
        for d in word:
            out.extend(self.rules[d])
        return tuple(out)

    def iterate(self, word: Iterable[int], times: int) -> tuple[int, ...]:
        word = tuple(word)
        for _ in range(times):
            word = self(word)
        return word

    def length(self, word: Iterable[int], times: int) -> int:
        """``|sigma^times(word)|`` without expanding the word."""
        return sum(self._letter_length(d, times) for d in word)

    def _letter_length(self, letter: int, times: int) -> int:
        key = (letter, times)
        if key not in self._lengths:
            if times == 0:
                self._lengths[key] = 1
            else:
                self._lengths[key] = sum(self._letter_length(d, times - 1) for d in self.rules[letter])
        return self._lengths[key]

    def is_prolongable(self, seed: int) -> bool:
        image = self.rules[seed]
        return image[0] == seed and len(image) > 1

    def fixed_point(self, seed: int) -> "DigitSequence":
        return DigitSequence.morphic(self, seed)

    def __repr__(self):
        body = ";".join(f"{k}>{''.join(map(str, v))}" for k, v in sorted(self.rules.items(), reverse=True))
        return f"Morphism({body!r})"


class DigitSequence:
    """A lazily evaluated sequence of nonnegative integer digits, indexed from 1.

    ``alphabet_max`` must bound every digit; the series tail estimates of the
    streamed backend rely on it.
    """

    def __init__(self, factory: Callable[[], Iterator[int]], *, alphabet_max: int,
                 name: str | None = None, kind: str = "generated"):
        self._factory = factory
        self._iter: Iterator[int] | None = None
        self._cache: list[int] = []
        self._lock = threading.Lock()
        self.alphabet_max = int(alphabet_max)
        self.name = name
        self.kind = kind
        self.prefix_part: tuple[int, ...] = ()
        self.period_part: tuple[int, ...] = ()
        self.morphism: Morphism | None = None
        self.seed: int | None = None

    # construction -------------------------------------------------------

    @classmethod
    def periodic(cls, prefix: Sequence[int], period: Sequence[int], name: str | None = None) -> DigitSequence:
        prefix, period = tuple(map(int, prefix)), tuple(map(int, period))
        if not period:
            raise SequenceFormatError("period must be nonempty")

        def gen():
            yield from prefix
            while True:
                yield from period

        seq = cls(gen, alphabet_max=max(prefix + period), name=name, kind="periodic")
        seq.prefix_part, seq.period_part = prefix, period
        return seq

    @classmethod
    def morphic(cls, morphism: Morphism, seed: int, name: str | None = None) -> DigitSequence:
        if not morphism.is_prolongable(seed):
            raise SequenceFormatError(f"morphism is not prolongable on {seed}")

        def gen():
            word = (seed,)
            emitted = 0
            while True:
                word = morphism(word)
                yield from word[emitted:]
                emitted = len(word)

        seq = cls(gen, alphabet_max=max(morphism.rules), name=name, kind="morphic")
        seq.morphism, seq.seed = morphism, seed
        return seq

    @classmethod
    def from_function(cls, fn: Callable[[int], int], *, alphabet_max: int, name: str | None = None) -> DigitSequence:
        return cls(lambda: (fn(n) for n in count(1)), alphabet_max=alphabet_max, name=name)

    # access ---------------------------------------------------------------

    @property
    def is_eventually_periodic(self) -> bool:
        return self.kind == "periodic"

    def _fill(self, n: int) -> None:
        if len(self._cache) >= n:
            return
        with self._lock:
            if self._iter is None:
                self._iter = self._factory()
            need = n - len(self._cache)
            chunk = list(islice(self._iter, need))
            if len(chunk) < need:
                raise IndexError("digit source exhausted")
            for d in chunk:
                if d < 0 or d > self.alphabet_max:
                    raise SequenceFormatError(f"digit {d} outside [0, {self.alphabet_max}]")
            self._cache.extend(chunk)

    def digit(self, n: int) -> int:
        """a_n, 1-based."""
        if n < 1:
            raise IndexError("digits are indexed from 1")
        if self.kind == "periodic":
            p = len(self.prefix_part)
            if n <= p:
                return self.prefix_part[n - 1]
            return self.period_part[(n - p - 1) % len(self.period_part)]
        self._fill(n)
        return self._cache[n - 1]

    def prefix(self, n: int) -> list[int]:
        """[a_1, ..., a_n]."""
        if self.kind == "periodic":
            return [self.digit(k) for k in range(1, n + 1)]
        self._fill(n)
        return self._cache[:n]

    def __iter__(self) -> Iterator[int]:
        for n in count(1):
            yield self.digit(n)

    def image(self, morphism: Morphism, name: str | None = None) -> DigitSequence:
        """Apply ``morphism`` letterwise to this (infinite) sequence."""
        src = self

        def gen():
            for d in src:
                yield from morphism.rules[d]

        return DigitSequence(gen, alphabet_max=max(d for v in morphism.rules.values() for d in v),
                             name=name)

    def literal(self) -> str:
        if self.kind == "periodic":
            head = " ".join(map(str, self.prefix_part))
            per = " ".join(map(str, self.period_part))
            return f"{head} ({per})^".strip()
        if self.kind == "morphic":
            rules = ";".join(f"{k}>{''.join(map(str, v))}"
                             for k, v in sorted(self.morphism.rules.items(), reverse=True))
            return f"{rules}@{self.seed}"
        return self.name or "<generated>"

    def __repr__(self):
        head = "".join(map(str, self.prefix(12)))
        return f"DigitSequence({self.name or self.kind}: {head}...)"


# literals ------------------------------------------------------------------

_PERIODIC_RE = re.compile(r"^\s*([0-9\s]*)\(\s*([0-9\s]+)\)\s*(\^\s*(ω|w|omega)?)?\s*$")


def parse_sequence(text: str) -> DigitSequence:
    """Parse ``"3 (0 1)^"`` (prefix + parenthesised period) or ``"3>30032;2>2;0>00@3"``.

    Digits separated by whitespace may have several figures; unseparated runs
    are read one figure per digit.
    """
    text = text.strip()
    if "@" in text or ">" in text:
        return parse_morphism(text)
    m = _PERIODIC_RE.match(text)
    if not m:
        raise SequenceFormatError(f"cannot parse sequence literal {text!r}")
    return DigitSequence.periodic(_digits(m.group(1)), _digits(m.group(2)), name=text)


def parse_morphism(text: str) -> DigitSequence:
    try:
        rules_part, seed = text.split("@")
        rules = {}
        for rule in rules_part.split(";"):
            if not rule.strip():
                continue
            lhs, rhs = rule.split(">")
            rules[int(lhs)] = _digits(rhs)
        return DigitSequence.morphic(Morphism(rules), int(seed), name=text.strip())
    except ValueError as exc:
        raise SequenceFormatError(f"cannot parse morphism literal {text!r}: {exc}") from None


def _digits(chunk: str) -> list[int]:
    parts = chunk.split()
    if len(parts) == 1 and len(parts[0]) > 1:
        return [int(c) for c in parts[0]]
    return [int(p) for p in parts]


# catalog -----------------------------------------------------------------

SIGMA1 = Morphism({3: (3, 0, 0, 3, 2), 2: (2,), 0: (0, 0)})
SIGMA2 = Morphism({3: (3, 1, 2, 3, 2), 2: (2,), 1: (1,)})


def _prop11_digits() -> Iterator[int]:
    yield 3
    for k in count(1):
        yield from [0] * (2 * k - 1)
        yield 1


def prop11_sequence() -> DigitSequence:
    """3 0 1 0^3 1 0^5 1 ...: blocks 0^(2k-1) 1 after the leading 3."""
    return DigitSequence(_prop11_digits, alphabet_max=3, name="prop11")


def prop12_sequence() -> DigitSequence:
    return DigitSequence.morphic(SIGMA1, 3, name="prop12")


def prop13_sequence() -> DigitSequence:
    return DigitSequence.morphic(SIGMA2, 3, name="prop13")


def sigma3_sequence(image_of_3: Sequence[int], name: str | None = None) -> DigitSequence:
    """sigma_3(sigma_2^inf(3)) with sigma_3: 3 -> image_of_3, 2 -> 2, 1 -> 1."""
    image_of_3 = tuple(image_of_3)
    if len(image_of_3) % 2 == 0:
        raise SequenceFormatError("sigma_3(3) must have odd length")
    sigma3 = Morphism({3: image_of_3, 2: (2,), 1: (1,), **{d: (d,) for d in image_of_3 if d not in (1, 2, 3)}})
    return prop13_sequence().image(sigma3, name=name or f"sigma3[{''.join(map(str, image_of_3))}]")


def builtin_sequences() -> dict[str, object]:
    """Named generators for the counterexample sequences, plus the sigma_3 constructor."""
    return {
        "prop11": prop11_sequence(),
        "prop12": prop12_sequence(),
        "prop13": prop13_sequence(),
        "sigma3": sigma3_sequence,
    }
