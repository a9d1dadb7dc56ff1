"""Generator sets and words (exponent multisets) over them.

Word equality (`==`) is *raw* multiset equality, deliberately distinct from
monoid equality, which is decided by the rewriting oracle (rewrite.decide_equal).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)


_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class GeneratorSet:
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        seen = set()
        for name in self.names:
            if not _IDENT.match(name):
                raise ParseError(f"invalid generator name {name!r}")
            if name in seen:
                raise ParseError(f"duplicate generator {name!r}")
            seen.add(name)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ParseError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.names


@dataclass(frozen=True)
class Word:
    """Sparse exponent map, stored as a sorted tuple of (gen index, exponent>0)."""

    exps: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def of(pairs: Iterable[tuple[int, int]] = ()) -> "Word":
        acc: dict[int, int] = {}
        for idx, exp in pairs:
            if exp < 0:
                raise ValueError("negative exponent")
            if exp:
                acc[idx] = acc.get(idx, 0) + exp
        return Word(tuple(sorted(acc.items())))

    @staticmethod
    def single(idx: int, exp: int = 1) -> "Word":
        return Word.of([(idx, exp)])

    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def exponent(self, idx: int) -> int:
        for i, e in self.exps:
            if i == idx:
                return e
        return 0

    def add(self, other: "Word") -> "Word":
        return Word.of(list(self.exps) + list(other.exps))

    def contains(self, other: "Word") -> bool:
        """Componentwise >= (the rewrite-applicability test)."""
        mine = dict(self.exps)
        return all(mine.get(i, 0) >= e for i, e in other.exps)

    def sub(self, other: "Word") -> "Word":
        """Componentwise difference; requires self.contains(other)."""
        mine = dict(self.exps)
        for i, e in other.exps:
            mine[i] = mine.get(i, 0) - e
            if mine[i] < 0:
                raise ValueError("word subtraction underflow")
        return Word(tuple(sorted((i, e) for i, e in mine.items() if e)))

    def scale(self, m: int) -> "Word":
        if m < 0:
            raise ValueError("negative multiplier")
        return Word(tuple((i, e * m) for i, e in self.exps)) if m else Word()

    def is_zero(self) -> bool:
        return not self.exps

    def meet(self, other: "Word") -> "Word":
        """Componentwise minimum."""
        ot = dict(other.exps)
        return Word(tuple((i, min(e, ot[i])) for i, e in self.exps if i in ot and min(e, ot[i])))

    def subwords(self) -> Iterator["Word"]:
        """All componentwise-dominated words, in lexicographic order."""
        idxs = [i for i, _ in self.exps]
        caps = [e for _, e in self.exps]

        def rec(pos: int, acc: list[tuple[int, int]]) -> Iterator[Word]:
            if pos == len(idxs):
                yield Word(tuple(p for p in acc if p[1]))
                return
            for e in range(caps[pos] + 1):
                acc.append((idxs[pos], e))
                yield from rec(pos + 1, acc)
                acc.pop()

        yield from rec(0, [])

    def format(self, gens: GeneratorSet) -> str:
        if not self.exps:
            return "0"
        parts = []
        for i, e in self.exps:
            name = gens.names[i]
            parts.append(name if e == 1 else f"{e}*{name}")
        return " + ".join(parts)

    def sort_key(self) -> tuple:
        return (self.degree(), self.exps)


def add_words(u: Word, v: Word) -> Word:
    return u.add(v)


def parse_term(text: str, gens: GeneratorSet, line: int | None = None) -> Word:
    """Parse `k*<id> + ...` (coefficient 1 may be omitted; `0` is the empty word)."""
    text = text.strip()
    if text == "0" or text == "":
        return Word()
    pairs: list[tuple[int, int]] = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError("empty summand in term", line)
        if "*" in chunk:
            coeff_s, _, name = chunk.partition("*")
            try:
                coeff = int(coeff_s.strip())
            except ValueError:
                raise ParseError(f"bad coefficient {coeff_s.strip()!r}", line) from None
            if coeff < 0:
                raise ParseError("negative coefficient", line)
            name = name.strip()
        else:
            m = re.match(r"^(\d+)\s+(\S+)$", chunk)
            if m:
                coeff, name = int(m.group(1)), m.group(2)
            else:
                coeff, name = 1, chunk
        if name not in gens:
            raise ParseError(f"unknown generator {name!r}", line)
        pairs.append((gens.index(name), coeff))
    return Word.of(pairs)
